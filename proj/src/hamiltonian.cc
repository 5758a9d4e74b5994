#include "stabgibbs/hamiltonian.h"

#include <algorithm>
#include <cmath>
#include <functional>
#include <map>
#include <numeric>
#include <set>
#include <stdexcept>

#include "stabgibbs/gf2.h"

namespace stabgibbs {

double QubitLayout::distance(size_t a, size_t b) const {
    double dx = std::abs(coords[a].first - coords[b].first);
    double dy = std::abs(coords[a].second - coords[b].second);
    if (kind == LayoutKind::Torus) {
        dx = std::min(dx, width - dx);
        dy = std::min(dy, height - dy);
        return std::sqrt((dx * dx + dy * dy) / 2.0);
    }
    return std::sqrt(dx * dx + dy * dy);
}

size_t QubitLayout::index_of(int x, int y) const {
    if (kind == LayoutKind::Torus) {
        x = ((x % width) + width) % width;
        y = ((y % height) + height) % height;
    }
    for (size_t k = 0; k < coords.size(); k++) {
        if (coords[k].first == x && coords[k].second == y) {
            return k;
        }
    }
    throw std::out_of_range("no qubit at (" + std::to_string(x) + "," + std::to_string(y) + ")");
}

QubitLayout QubitLayout::line(size_t n) {
    QubitLayout layout;
    layout.kind = LayoutKind::OpenGrid;
    for (size_t i = 0; i < n; i++) {
        layout.coords.emplace_back(static_cast<int>(i), 0);
    }
    layout.width = static_cast<int>(n);
    layout.height = 1;
    return layout;
}

const PauliTerm &Hamiltonian::logical(const std::string &name) const {
    for (const auto &[k, v] : logicals) {
        if (k == name) {
            return v;
        }
    }
    throw std::out_of_range("no logical named " + name);
}

namespace {

PauliTerm term_on(size_t n, const std::vector<size_t> &sites, char letter) {
    std::vector<std::pair<size_t, char>> f;
    for (size_t s : sites) {
        f.emplace_back(s, letter);
    }
    return make_pauli(n, f);
}

}  // namespace

Hamiltonian build_rsc(int L) {
    if (L < 2) {
        throw std::invalid_argument("build_rsc: L must be >= 2");
    }
    Hamiltonian h;
    h.layout.kind = LayoutKind::OpenGrid;
    h.layout.width = h.layout.height = L + 1;
    for (int y = 0; y <= L; y++) {
        for (int x = 0; x <= L; x++) {
            h.layout.coords.emplace_back(x, y);
        }
    }
    size_t n = h.layout.size();
    auto q = [L](int x, int y) {
        return static_cast<size_t>(y * (L + 1) + x);
    };
    // Square (i, j) is named by its lower-left corner; (0, 0) carries X.
    for (int j = 0; j < L; j++) {
        for (int i = 0; i < L; i++) {
            if ((i + j) % 2 == 0) {
                h.terms.push_back(term_on(n, {q(i, j), q(i + 1, j), q(i, j + 1), q(i + 1, j + 1)}, 'X'));
            }
        }
    }
    for (int j = 0; j < L; j++) {
        if (j % 2 == 1) {
            h.terms.push_back(term_on(n, {q(0, j), q(0, j + 1)}, 'X'));
        }
        if ((L + j) % 2 == 0) {
            h.terms.push_back(term_on(n, {q(L, j), q(L, j + 1)}, 'X'));
        }
    }
    for (int j = 0; j < L; j++) {
        for (int i = 0; i < L; i++) {
            if ((i + j) % 2 == 1) {
                h.terms.push_back(term_on(n, {q(i, j), q(i + 1, j), q(i, j + 1), q(i + 1, j + 1)}, 'Z'));
            }
        }
    }
    for (int i = 0; i < L; i++) {
        if (i % 2 == 0) {
            h.terms.push_back(term_on(n, {q(i, 0), q(i + 1, 0)}, 'Z'));
        }
        if ((i + L) % 2 == 1) {
            h.terms.push_back(term_on(n, {q(i, L), q(i + 1, L)}, 'Z'));
        }
    }
    std::vector<size_t> zline, xline;
    for (int t = 0; t <= L; t++) {
        zline.push_back(q(L / 2, t));
        xline.push_back(q(t, L / 2));
    }
    h.logicals.emplace_back("ZL", term_on(n, zline, 'Z'));
    h.logicals.emplace_back("XL", term_on(n, xline, 'X'));
    return h;
}

Hamiltonian build_toric(int L) {
    if (L < 2) {
        throw std::invalid_argument("build_toric: L must be >= 2");
    }
    Hamiltonian h;
    h.layout.kind = LayoutKind::Torus;
    h.layout.width = h.layout.height = 2 * L;
    for (int y = 0; y < 2 * L; y++) {
        for (int x = 0; x < 2 * L; x++) {
            if ((x + y) % 2 == 0) {
                h.layout.coords.emplace_back(x, y);
            }
        }
    }
    size_t n = h.layout.size();
    auto q = [&](int x, int y) {
        return h.layout.index_of(x, y);
    };
    auto plaquette = [&](int cx, int cy, char letter) {
        return term_on(n, {q(cx - 1, cy), q(cx + 1, cy), q(cx, cy - 1), q(cx, cy + 1)}, letter);
    };
    for (int j = 0; j < L; j++) {
        for (int i = 0; i < L; i++) {
            h.terms.push_back(plaquette(2 * i + 1, 2 * j, 'X'));
        }
    }
    // Z plaquettes sit on the (even, odd) centres; (even, even) points are qubits.
    for (int j = 0; j < L; j++) {
        for (int i = 0; i < L; i++) {
            h.terms.push_back(plaquette(2 * i, 2 * j + 1, 'Z'));
        }
    }
    std::vector<size_t> z1, z2, x1, x2;
    for (int k = 0; k < L; k++) {
        z1.push_back(q(2 * k, 0));
        z2.push_back(q(1, 2 * k + 1));
        x1.push_back(q(2, 2 * k));
        x2.push_back(q(2 * k + 1, 1));
    }
    h.logicals.emplace_back("Z1", term_on(n, z1, 'Z'));
    h.logicals.emplace_back("Z2", term_on(n, z2, 'Z'));
    h.logicals.emplace_back("X1", term_on(n, x1, 'X'));
    h.logicals.emplace_back("X2", term_on(n, x2, 'X'));
    return h;
}

ClassicalKind parse_classical_kind(const std::string &name) {
    static const std::map<std::string, ClassicalKind> kinds = {
        {"UMF", ClassicalKind::UMF}, {"H0", ClassicalKind::H0}, {"H1", ClassicalKind::H1}, {"H2", ClassicalKind::H2},
        {"H3", ClassicalKind::H3},   {"H4", ClassicalKind::H4}, {"Loops", ClassicalKind::Loops}};
    auto it = kinds.find(name);
    if (it == kinds.end()) {
        throw std::invalid_argument("unknown classical kind '" + name + "'");
    }
    return it->second;
}

std::string to_string(ClassicalKind kind) {
    switch (kind) {
        case ClassicalKind::UMF:
            return "UMF";
        case ClassicalKind::H0:
            return "H0";
        case ClassicalKind::H1:
            return "H1";
        case ClassicalKind::H2:
            return "H2";
        case ClassicalKind::H3:
            return "H3";
        case ClassicalKind::H4:
            return "H4";
        case ClassicalKind::Loops:
            return "Loops";
    }
    return "?";
}

Hamiltonian build_classical(ClassicalKind kind, int n) {
    int min_n = 2;
    if (kind == ClassicalKind::H1) {
        min_n = 1;
    } else if (kind == ClassicalKind::H0 || kind == ClassicalKind::H3 || kind == ClassicalKind::H4) {
        min_n = 3;
    } else if (kind == ClassicalKind::Loops) {
        min_n = 6;
    }
    if (n < min_n) {
        throw std::invalid_argument("build_classical(" + to_string(kind) + "): n must be >= " + std::to_string(min_n));
    }
    if (kind == ClassicalKind::Loops && n % 2 != 0) {
        throw std::invalid_argument("build_classical(Loops): n must be even");
    }
    Hamiltonian h;
    h.layout = QubitLayout::line(n);
    size_t N = n;
    auto z = [N](std::vector<size_t> s) {
        return term_on(N, s, 'Z');
    };
    auto loop = [&](size_t start, size_t len) {
        for (size_t i = 0; i + 1 < len; i++) {
            h.terms.push_back(z({start + i, start + i + 1}));
        }
        h.terms.push_back(z({start + len - 1, start}));
    };
    switch (kind) {
        case ClassicalKind::UMF:
            for (size_t i = 0; i + 1 < N; i++) {
                h.terms.push_back(z({i}));
            }
            break;
        case ClassicalKind::H1:
            for (size_t i = 0; i < N; i++) {
                h.terms.push_back(z({i}));
            }
            break;
        case ClassicalKind::H2:
            for (size_t i = 0; i + 1 < N; i++) {
                h.terms.push_back(z({i, i + 1}));
            }
            h.terms.push_back(z({N - 1}));
            break;
        case ClassicalKind::H0:
            for (size_t i = 0; i + 2 < N; i++) {
                h.terms.push_back(z({i, i + 1}));
            }
            h.terms.push_back(z({N - 2}));
            h.terms.push_back(z({0}));
            break;
        case ClassicalKind::H3:
            loop(0, N);
            break;
        case ClassicalKind::H4: {
            std::vector<size_t> all;
            for (size_t i = 0; i + 1 < N; i++) {
                h.terms.push_back(z({i}));
                all.push_back(i);
            }
            h.terms.push_back(z(all));
            break;
        }
        case ClassicalKind::Loops:
            loop(0, N / 2);
            loop(N / 2, N / 2);
            break;
    }
    return h;
}

GeneratorSplit independent_generators(const Hamiltonian &h) {
    GeneratorSplit out;
    PauliBasis basis(h.num_qubits());
    for (size_t k = 0; k < h.terms.size(); k++) {
        if (basis.insert(h.terms[k])) {
            out.independent.push_back(k);
        } else {
            out.dependencies.emplace_back(k, *basis.decompose(h.terms[k]));
        }
    }
    return out;
}

bool is_commuting(const Hamiltonian &h) {
    for (size_t a = 0; a < h.terms.size(); a++) {
        for (size_t b = a + 1; b < h.terms.size(); b++) {
            if (!commutes(h.terms[a], h.terms[b])) {
                return false;
            }
        }
        for (const auto &[name, op] : h.logicals) {
            if (!commutes(h.terms[a], op)) {
                return false;
            }
        }
    }
    return true;
}

Hamiltonian permute_qubits(const Hamiltonian &h, const std::vector<size_t> &perm) {
    size_t n = h.num_qubits();
    if (perm.size() != n) {
        throw std::invalid_argument("permute_qubits: permutation size mismatch");
    }
    std::vector<bool> seen(n, false);
    for (size_t p : perm) {
        if (p >= n || seen[p]) {
            throw std::invalid_argument("permute_qubits: not a permutation");
        }
        seen[p] = true;
    }
    auto move = [&](const PauliTerm &t) {
        PauliTerm out(n);
        for (size_t q : t.support()) {
            out.set_x(perm[q], t.x(q));
            out.set_z(perm[q], t.z(q));
        }
        out.set_negative(t.negative());
        return out;
    };
    Hamiltonian out;
    out.layout = h.layout;
    for (size_t q = 0; q < n; q++) {
        out.layout.coords[perm[q]] = h.layout.coords[q];
    }
    for (const auto &t : h.terms) {
        out.terms.push_back(move(t));
    }
    for (const auto &[name, t] : h.logicals) {
        out.logicals.emplace_back(name, move(t));
    }
    return out;
}

std::string to_string(ComponentKind kind) {
    switch (kind) {
        case ComponentKind::Free:
            return "free";
        case ComponentKind::Field:
            return "field";
        case ComponentKind::ChainOneEnd:
            return "chain-field-one-end";
        case ComponentKind::ChainBothEnds:
            return "chain-field-both-ends";
        case ComponentKind::Loop:
            return "loop";
        case ComponentKind::ParityCheck:
            return "parity-check";
    }
    return "?";
}

namespace {

struct Block {
    std::vector<size_t> sites;
    std::vector<size_t> terms;
    char basis = '-';
    bool mixed = false;
};

// Walks a path or cycle given adjacency lists with degrees <= 2.
std::vector<size_t> walk(size_t start, const std::map<size_t, std::vector<size_t>> &adj) {
    std::vector<size_t> order{start};
    size_t prev = start, cur = start;
    while (true) {
        const auto &nb = adj.at(cur);
        size_t next = SIZE_MAX;
        for (size_t v : nb) {
            if (v != prev && v != start) {
                next = v;
                break;
            }
        }
        if (next == SIZE_MAX) {
            break;
        }
        order.push_back(next);
        prev = cur;
        cur = next;
    }
    return order;
}

// All (kind, ordered sites) readings a block admits.
std::vector<MatchedComponent> readings(const Block &b, const Hamiltonian &h) {
    std::vector<MatchedComponent> out;
    size_t k = b.sites.size();
    if (b.terms.empty()) {
        out.push_back({ComponentKind::Free, '-', b.sites, {}});
        return out;
    }
    if (b.mixed) {
        return out;
    }
    std::vector<size_t> singles;
    std::vector<std::pair<size_t, size_t>> pairs;
    std::vector<size_t> bigs;
    for (size_t t : b.terms) {
        auto s = h.terms[t].support();
        if (s.size() == 1) {
            singles.push_back(s[0]);
        } else if (s.size() == 2) {
            pairs.emplace_back(s[0], s[1]);
        } else {
            bigs.push_back(t);
        }
    }
    std::vector<size_t> sorted_singles = singles;
    std::sort(sorted_singles.begin(), sorted_singles.end());
    bool distinct_singles = std::adjacent_find(sorted_singles.begin(), sorted_singles.end()) == sorted_singles.end();

    if (k == 1) {
        if (b.terms.size() == 1 && singles.size() == 1) {
            out.push_back({ComponentKind::Field, b.basis, b.sites, b.terms});
        }
        return out;
    }

    // Parity check: every site has its own field plus one term on the whole block.
    if (singles.size() == k && distinct_singles && b.terms.size() == k + 1 &&
        (bigs.size() == 1 || (k == 2 && pairs.size() == 1))) {
        out.push_back({ComponentKind::ParityCheck, b.basis, sorted_singles, b.terms});
    }

    if (!bigs.empty()) {
        return out;
    }
    std::map<size_t, std::vector<size_t>> adj;
    for (size_t s : b.sites) {
        adj[s];
    }
    std::set<std::pair<size_t, size_t>> seen_edges;
    for (auto [a, c] : pairs) {
        if (!seen_edges.insert({std::min(a, c), std::max(a, c)}).second) {
            return out;  // repeated coupling
        }
        adj[a].push_back(c);
        adj[c].push_back(a);
    }
    std::vector<size_t> ends;
    for (auto &[s, nb] : adj) {
        if (nb.size() > 2) {
            return out;
        }
        if (nb.size() == 1) {
            ends.push_back(s);
        }
    }
    bool is_path = pairs.size() == k - 1 && ends.size() == 2;
    bool is_cycle = pairs.size() == k && ends.empty() && k >= 3;
    if (is_cycle && singles.empty()) {
        out.push_back({ComponentKind::Loop, b.basis, walk(b.sites.front(), adj), b.terms});
    }
    if (is_path && singles.size() == 1 && (singles[0] == ends[0] || singles[0] == ends[1])) {
        size_t other = singles[0] == ends[0] ? ends[1] : ends[0];
        out.push_back({ComponentKind::ChainOneEnd, b.basis, walk(other, adj), b.terms});
    }
    if (is_path && singles.size() == 2 && distinct_singles &&
        std::is_permutation(singles.begin(), singles.end(), ends.begin())) {
        out.push_back({ComponentKind::ChainBothEnds, b.basis, walk(ends[0], adj), b.terms});
    }
    return out;
}

}  // namespace

MatchResult canonical_match(const Hamiltonian &h, const CanonicalPattern &pattern) {
    size_t n = h.num_qubits();
    std::vector<size_t> parent(n);
    std::iota(parent.begin(), parent.end(), 0);
    std::function<size_t(size_t)> find = [&](size_t a) {
        while (parent[a] != a) {
            parent[a] = parent[parent[a]];
            a = parent[a];
        }
        return a;
    };
    for (const auto &t : h.terms) {
        if (!t.is_x_type() && !t.is_z_type()) {
            throw std::invalid_argument("canonical_match: term " + t.str() + " mixes X and Z");
        }
        auto s = t.support();
        for (size_t i = 1; i < s.size(); i++) {
            parent[find(s[i])] = find(s[0]);
        }
    }
    std::map<size_t, Block> blocks;
    for (size_t q = 0; q < n; q++) {
        blocks[find(q)].sites.push_back(q);
    }
    for (size_t t = 0; t < h.terms.size(); t++) {
        auto s = h.terms[t].support();
        if (s.empty()) {
            continue;
        }
        Block &b = blocks[find(s[0])];
        b.terms.push_back(t);
        char basis = h.terms[t].is_x_type() ? 'X' : 'Z';
        if (b.basis == '-') {
            b.basis = basis;
        } else if (b.basis != basis) {
            b.mixed = true;
        }
    }

    // Pattern slots, one per component instance.
    std::vector<const PatternEntry *> slots;
    for (const auto &e : pattern.entries) {
        for (size_t c = 0; c < e.count; c++) {
            slots.push_back(&e);
        }
    }
    std::vector<std::vector<MatchedComponent>> options;
    for (auto &[root, b] : blocks) {
        options.push_back(readings(b, h));
    }

    MatchResult result;
    if (options.size() != slots.size()) {
        result.reason = "component count " + std::to_string(options.size()) + " != pattern count " +
                        std::to_string(slots.size());
        return result;
    }
    auto fits = [&](const MatchedComponent &m, const PatternEntry &e) {
        return m.kind == e.kind && m.basis == e.basis && m.sites.size() == e.length;
    };
    // Bipartite matching (augmenting paths) between blocks and slots.
    std::vector<int> slot_owner(slots.size(), -1);
    std::vector<int> block_slot(options.size(), -1);
    std::function<bool(size_t, std::vector<bool> &)> augment = [&](size_t bi, std::vector<bool> &visited) {
        for (size_t s = 0; s < slots.size(); s++) {
            if (visited[s]) {
                continue;
            }
            bool ok = false;
            for (const auto &m : options[bi]) {
                ok |= fits(m, *slots[s]);
            }
            if (!ok) {
                continue;
            }
            visited[s] = true;
            if (slot_owner[s] < 0 || augment(slot_owner[s], visited)) {
                slot_owner[s] = static_cast<int>(bi);
                block_slot[bi] = static_cast<int>(s);
                return true;
            }
        }
        return false;
    };
    for (size_t bi = 0; bi < options.size(); bi++) {
        std::vector<bool> visited(slots.size(), false);
        if (!augment(bi, visited)) {
            std::string desc = options[bi].empty() ? "unrecognised block"
                                                   : to_string(options[bi][0].kind) + " of length " +
                                                         std::to_string(options[bi][0].sites.size());
            result.reason = "no pattern slot for " + desc;
            return result;
        }
    }
    for (size_t bi = 0; bi < options.size(); bi++) {
        const PatternEntry &e = *slots[block_slot[bi]];
        for (const auto &m : options[bi]) {
            if (fits(m, e)) {
                result.components.push_back(m);
                break;
            }
        }
    }
    result.matched = true;
    return result;
}

}  // namespace stabgibbs
