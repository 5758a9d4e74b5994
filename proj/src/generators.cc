#include "stabgibbs/generators.h"

#include <algorithm>
#include <cmath>
#include <deque>
#include <map>
#include <set>
#include <stdexcept>

namespace stabgibbs {

namespace {

void require_L(int L, const char *who) {
    if (L < 2) {
        throw std::invalid_argument(std::string(who) + ": L must be >= 2");
    }
}

std::vector<size_t> single_sites(const Hamiltonian &h, bool x_type) {
    std::vector<size_t> out;
    for (const auto &t : h.terms) {
        if (t.weight() == 1 && (x_type ? t.is_x_type() : t.is_z_type())) {
            out.push_back(t.support()[0]);
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

}  // namespace

MappingPlan gen_rsc_mapping(int L) {
    require_L(L, "gen_rsc_mapping");
    size_t n = static_cast<size_t>((L + 1) * (L + 1));
    auto q = [L](int x, int y) {
        return static_cast<size_t>(y * (L + 1) + x);
    };

    // Fan-out from one corner of every X square in row j (plus the X boundary pairs on that row).
    // Bottom half rows use the lower corners, top half rows the pi-rotated choice.
    auto row_gates = [&](int j, bool top, std::vector<Gate> &out) {
        for (int i = (j % 2); i < L; i += 2) {
            std::pair<int, int> ctrl;
            if (!top) {
                ctrl = j % 2 == 0 ? std::pair{i, j} : std::pair{i + 1, j};
            } else {
                ctrl = (L - 1 - j) % 2 == 0 ? std::pair{i + 1, j + 1} : std::pair{i, j + 1};
            }
            for (auto [x, y] : {std::pair{i, j}, std::pair{i + 1, j}, std::pair{i, j + 1}, std::pair{i + 1, j + 1}}) {
                if (std::pair{x, y} != ctrl) {
                    out.push_back(Gate::cx(q(ctrl.first, ctrl.second), q(x, y)));
                }
            }
        }
        for (int x : {0, L}) {
            bool has = x == 0 ? (j % 2 == 1) : ((L + j) % 2 == 0);
            if (has) {
                size_t lo = q(x, j), hi = q(x, j + 1);
                out.push_back(top ? Gate::cx(hi, lo) : Gate::cx(lo, hi));
            }
        }
    };

    MappingPlan plan;
    plan.quantum.num_qubits = n;
    int jm = (L - 1) / 2;
    int paired = L % 2 == 0 ? L / 2 : jm;
    for (int k = 0; k < paired; k++) {
        Layer layer;
        row_gates(k, false, layer.gates);
        row_gates(L - 1 - k, true, layer.gates);
        plan.quantum.layers.push_back(std::move(layer));
    }
    if (L % 2 == 1) {
        Layer layer;
        row_gates(jm, true, layer.gates);
        plan.quantum.layers.push_back(std::move(layer));
    }

    // Classical sweeps along the middle row, from both ends towards its centre.
    int c = L / 2;
    auto m = [&](int k) {
        return q(k, c);
    };
    plan.classical.num_qubits = n;
    for (int s = 1; s <= std::max(c, L - c); s++) {
        Layer layer{{}, Stage::Classical};
        if (s <= c) {
            layer.gates.push_back(Gate::cx(m(s), m(s - 1)));
        }
        if (s <= L - c) {
            layer.gates.push_back(Gate::cx(m(L - s), m(L - s + 1)));
        }
        plan.classical.layers.push_back(std::move(layer));
    }

    Hamiltonian mid = apply_to_hamiltonian(plan.quantum, build_rsc(L));
    plan.frame.q_x = single_sites(mid, true);
    std::set<size_t> xs(plan.frame.q_x.begin(), plan.frame.q_x.end());
    for (size_t k = 0; k < n; k++) {
        if (!xs.count(k)) {
            plan.frame.q_z.push_back(k);
        }
    }
    plan.hadamard_sites = plan.frame.q_x;
    return plan;
}

ToricSchedule toric_schedule(int L) {
    require_L(L, "toric_schedule");
    Hamiltonian code = build_toric(L);
    const QubitLayout &lay = code.layout;
    size_t n = lay.size();
    auto h_edge = [&](int i, int j) {
        return lay.index_of(2 * i + 2, 2 * j);
    };
    auto e_edge = [&](int i, int j) {
        return lay.index_of(2 * i + 1, 2 * j + 1);
    };
    auto star = [&](int i, int j) -> const PauliTerm & {
        return code.terms[static_cast<size_t>(((j % L + L) % L) * L + ((i % L + L) % L))];
    };

    ToricSchedule s;
    s.L = L;
    s.root_star = 0;
    int right = (L + 1) / 2;  // row 0: stars 1..right hang to the right of the root
    int up = L / 2;           // columns: rows 1..up hang upwards
    auto hdepth = [&](int i) {
        return i <= right ? i : L - i;
    };
    auto vdepth = [&](int j) {
        return j <= up ? j : L - j;
    };

    s.star_layers.num_qubits = n;
    s.star_layers.layers.resize(static_cast<size_t>(L));
    std::set<size_t> tree;
    for (int j = 0; j < L; j++) {
        for (int i = 0; i < L; i++) {
            if (i == 0 && j == 0) {
                continue;
            }
            size_t ctrl;
            if (j == 0) {
                ctrl = i <= right ? h_edge(i - 1, 0) : h_edge(i, 0);
            } else {
                ctrl = j <= up ? e_edge(i, j - 1) : e_edge(i, j);
            }
            tree.insert(ctrl);
            auto &layer = s.star_layers.layers[static_cast<size_t>(hdepth(i) + vdepth(j) - 1)];
            for (size_t t : star(i, j).support()) {
                if (t != ctrl) {
                    layer.gates.push_back(Gate::cx(ctrl, t));
                }
            }
        }
    }
    s.tree_sites.assign(tree.begin(), tree.end());
    s.g1 = h_edge(right, 0);
    s.g2 = e_edge(0, up);

    Hamiltonian mid = apply_to_hamiltonian(s.star_layers, code);
    if (mid.logical("Z1").support() != std::vector<size_t>{s.g1} ||
        mid.logical("Z2").support() != std::vector<size_t>{s.g2}) {
        throw std::logic_error("toric_schedule: Z logicals did not collapse");
    }

    // Dual tree over faces, joined through the non-tree sites other than g1 and g2.
    size_t nf = static_cast<size_t>(L * L);
    std::vector<std::vector<size_t>> image(nf);
    std::map<size_t, std::vector<size_t>> faces_of;
    for (size_t f = 0; f < nf; f++) {
        image[f] = mid.terms[nf + f].support();
        for (size_t e : image[f]) {
            if (tree.count(e)) {
                throw std::logic_error("toric_schedule: face image touches the tree");
            }
            if (e != s.g1 && e != s.g2) {
                faces_of[e].push_back(f);
            }
        }
    }
    std::vector<std::vector<std::pair<size_t, size_t>>> adj(nf);
    for (auto &[e, fs] : faces_of) {
        if (fs.size() != 2) {
            throw std::logic_error("toric_schedule: dual edge without two faces");
        }
        adj[fs[0]].push_back({fs[1], e});
        adj[fs[1]].push_back({fs[0], e});
    }
    std::vector<int> best_dist;
    std::vector<std::pair<size_t, size_t>> best_parent;
    int best_ecc = -1;
    for (size_t r = 0; r < nf; r++) {
        std::vector<int> dist(nf, -1);
        std::vector<std::pair<size_t, size_t>> parent(nf);
        std::deque<size_t> queue{r};
        dist[r] = 0;
        while (!queue.empty()) {
            size_t u = queue.front();
            queue.pop_front();
            for (auto [w, e] : adj[u]) {
                if (dist[w] < 0) {
                    dist[w] = dist[u] + 1;
                    parent[w] = {u, e};
                    queue.push_back(w);
                }
            }
        }
        int ecc = *std::max_element(dist.begin(), dist.end());
        if (std::count(dist.begin(), dist.end(), -1) > 0) {
            throw std::logic_error("toric_schedule: dual graph disconnected");
        }
        if (best_ecc < 0 || ecc < best_ecc) {
            best_ecc = ecc;
            best_dist = dist;
            best_parent = parent;
            s.root_face = r;
        }
    }
    s.face_layers.num_qubits = n;
    s.face_layers.layers.resize(static_cast<size_t>(best_ecc));
    std::set<size_t> kept;
    for (size_t f = 0; f < nf; f++) {
        if (f == s.root_face) {
            continue;
        }
        size_t e = best_parent[f].second;
        kept.insert(e);
        auto &layer = s.face_layers.layers[static_cast<size_t>(best_dist[f] - 1)];
        for (size_t c : image[f]) {
            if (c != e) {
                layer.gates.push_back(Gate::cx(c, e));
            }
        }
    }
    std::erase_if(s.face_layers.layers, [](const Layer &l) {
        return l.gates.empty();
    });
    s.kept_sites.assign(kept.begin(), kept.end());
    return s;
}

MappingPlan gen_toric_mapping(int L) {
    require_L(L, "gen_toric_mapping");
    ToricSchedule s = toric_schedule(L);
    size_t n = s.star_layers.num_qubits;
    MappingPlan plan;
    plan.quantum = s.star_layers;
    // g1 still appears in face images after the star peeling, so it sits on the Z side.
    plan.frame.q_x = s.tree_sites;
    plan.frame.q_z = s.kept_sites;
    plan.frame.q_z.push_back(s.g1);
    plan.frame.q_z.push_back(s.g2);
    std::sort(plan.frame.q_z.begin(), plan.frame.q_z.end());
    plan.hadamard_sites = plan.frame.q_x;

    plan.classical = s.face_layers;
    plan.classical.append(embed(gen_chain_join(static_cast<int>(s.kept_sites.size())), s.kept_sites, n));
    // Closing the chain through g2 turns its two end fields into couplings.
    Layer close;
    for (size_t k : s.kept_sites) {
        close.gates.push_back(Gate::cx(s.g2, k));
    }
    plan.classical.layers.push_back(std::move(close));
    for (auto &l : plan.classical.layers) {
        l.stage = Stage::Classical;
    }
    return plan;
}

Circuit gen_toric_groundstate(int L) {
    require_L(L, "gen_toric_groundstate");
    ToricSchedule s = toric_schedule(L);
    Circuit c = hadamard_layer(s.star_layers.num_qubits, s.tree_sites);
    c.append(s.star_layers.reversed());
    return c;
}

Circuit gen_w_gateset(int L) {
    require_L(L, "gen_w_gateset");
    ToricSchedule s = toric_schedule(L);
    Circuit c = s.star_layers;
    c.append(s.face_layers);
    c.append(hadamard_layer(c.num_qubits, s.tree_sites));
    return c;
}

Circuit gen_pseudo_parity(const QubitLayout &layout, const std::vector<size_t> &sites, size_t ancilla) {
    const double radius = std::sqrt(2.0) + 1e-9;
    std::vector<size_t> nodes = sites;
    nodes.push_back(ancilla);
    std::map<size_t, int> dist{{ancilla, 0}};
    std::map<size_t, size_t> parent;
    std::deque<size_t> queue{ancilla};
    while (!queue.empty()) {
        size_t u = queue.front();
        queue.pop_front();
        for (size_t w : nodes) {
            if (!dist.count(w) && layout.distance(u, w) <= radius) {
                dist[w] = dist[u] + 1;
                parent[w] = u;
                queue.push_back(w);
            }
        }
    }
    if (dist.size() != std::set<size_t>(nodes.begin(), nodes.end()).size()) {
        throw std::invalid_argument("gen_pseudo_parity: sites are not connected to the ancilla");
    }
    int depth = 0;
    for (auto [q, d] : dist) {
        depth = std::max(depth, d);
    }
    // Farthest sites forward first; a site fires only after all of its children have.
    Circuit c{layout.size(), std::vector<Layer>(static_cast<size_t>(depth))};
    for (auto [q, d] : dist) {
        if (q != ancilla) {
            c.layers[static_cast<size_t>(depth - d)].gates.push_back(Gate::cx(q, parent[q]));
        }
    }
    return c;
}

Circuit gen_chain_join(int n) {
    if (n < 2) {
        throw std::invalid_argument("gen_chain_join: n must be >= 2");
    }
    // Chains as [start, length); merging A then B: CX(last of A, every site of B).
    std::vector<std::pair<int, int>> chains;
    for (int i = 0; i < n; i++) {
        chains.emplace_back(i, 1);
    }
    Circuit c{static_cast<size_t>(n), {}};
    while (chains.size() > 1) {
        Layer layer;
        std::vector<std::pair<int, int>> next;
        for (size_t k = 0; k + 1 < chains.size(); k += 2) {
            auto [a0, alen] = chains[k];
            auto [b0, blen] = chains[k + 1];
            for (int t = b0; t < b0 + blen; t++) {
                layer.gates.push_back(Gate::cx(static_cast<size_t>(a0 + alen - 1), static_cast<size_t>(t)));
            }
            next.emplace_back(a0, alen + blen);
        }
        if (chains.size() % 2 == 1) {
            next.push_back(chains.back());
        }
        chains = std::move(next);
        c.layers.push_back(std::move(layer));
    }
    return c;
}

CanonicalPattern rsc_pattern(int L, bool diagonal) {
    require_L(L, "rsc_pattern");
    char xb = diagonal ? 'Z' : 'X';
    size_t Lz = static_cast<size_t>(L);
    CanonicalPattern p;
    p.name = "rsc-" + std::to_string(L);
    if (L % 2 == 0) {
        p.entries = {{ComponentKind::Field, xb, 1, (Lz * Lz + 2 * Lz) / 2},
                     {ComponentKind::ChainOneEnd, 'Z', Lz / 2 + 1, Lz},
                     {ComponentKind::Free, '-', 1, 1}};
    } else {
        size_t k = (Lz - 1) / 2;
        p.entries = {{ComponentKind::Field, xb, 1, (Lz * Lz + 2 * Lz - 1) / 2},
                     {ComponentKind::Field, 'Z', 1, k + 2},
                     {ComponentKind::ChainOneEnd, 'Z', k + 1, k},
                     {ComponentKind::ChainOneEnd, 'Z', k + 2, k},
                     {ComponentKind::Free, '-', 1, 1}};
    }
    return p;
}

CanonicalPattern toric_pattern(int L, bool diagonal) {
    require_L(L, "toric_pattern");
    size_t m = static_cast<size_t>(L * L);
    CanonicalPattern p;
    p.name = "toric-" + std::to_string(L);
    p.entries = {{ComponentKind::ParityCheck, diagonal ? 'Z' : 'X', m - 1, 1},
                 {ComponentKind::Loop, 'Z', m, 1},
                 {ComponentKind::Free, '-', 1, 1}};
    return p;
}

CanonicalPattern w_pattern(int L) {
    require_L(L, "w_pattern");
    size_t m = static_cast<size_t>(L * L);
    CanonicalPattern p;
    p.name = "w-" + std::to_string(L);
    p.entries = {{ComponentKind::ParityCheck, 'Z', m - 1, 2}, {ComponentKind::Free, '-', 1, 2}};
    return p;
}

}  // namespace stabgibbs
