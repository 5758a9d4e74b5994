#include "stabgibbs/measurement.h"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "stabgibbs/circuit.h"
#include "stabgibbs/generators.h"
#include "stabgibbs/hamiltonian.h"

namespace stabgibbs {

namespace {

void require_even_n(int n, const char *who) {
    if (n < 2 || n % 2 != 0) {
        throw std::invalid_argument(std::string(who) + ": n must be even and >= 2");
    }
}

// P(product of m field-beta spins = r).
double parity_prob(int m, double beta, int r) {
    return (1 + r * std::pow(std::tanh(beta), m)) / 2;
}

std::vector<uint8_t> to_bits(const Spins &s) {
    std::vector<uint8_t> b(s.size());
    for (size_t i = 0; i < s.size(); i++) {
        b[i] = s[i] < 0;
    }
    return b;
}

Spins to_spins(const std::vector<uint8_t> &b) {
    Spins s(b.size());
    for (size_t i = 0; i < b.size(); i++) {
        s[i] = b[i] ? -1 : +1;
    }
    return s;
}

int product(const Spins &s) {
    int p = 1;
    for (int v : s) {
        p *= v;
    }
    return p;
}

// Parity check on m sites drawn from its Gibbs law directly.
Spins draw_parity_check_exact(int m, double beta, Coin &coin) {
    Spins s = draw_h4(m + 1, beta, coin);
    s.pop_back();
    return s;
}

}  // namespace

double rotation_angle(double beta) {
    if (!std::isfinite(beta)) {
        throw std::invalid_argument("rotation_angle: beta must be finite");
    }
    return std::atan(std::exp(-beta));
}

BranchWeights branch_probabilities(int n_plus_1, double beta) {
    if (n_plus_1 < 1) {
        throw std::invalid_argument("branch_probabilities: need at least one site");
    }
    double p0 = parity_prob(n_plus_1, beta, +1);
    return {p0, 1 - p0};
}

int classical_extend(const Spins &x, double beta, Coin &coin) {
    // log-ratio 2 beta (1 + pi) means a field of beta (1 + pi)
    return draw_field_spin(coin, beta * (1 + product(x)));
}

Spins draw_parity_conditioned(int m, double beta, int parity, Coin &coin) {
    if (m < 1 || (parity != 1 && parity != -1)) {
        throw std::invalid_argument("draw_parity_conditioned: bad arguments");
    }
    Spins s(static_cast<size_t>(m));
    int need = parity;
    double p1 = 1 / (1 + std::exp(-2 * beta));
    for (int i = 0; i + 1 < m; i++) {
        // P(s_i = +1 | rest has product need * s_i)
        double up = p1 * parity_prob(m - i - 1, beta, need);
        double down = (1 - p1) * parity_prob(m - i - 1, beta, -need);
        s[i] = coin.flip(up / (up + down)) ? +1 : -1;
        need *= s[i];
    }
    s[m - 1] = need;
    return s;
}

MeasurementBudget parity_check_budget(int n) {
    require_even_n(n, "parity_check_budget");
    // ancilla and collapsed site read one after the other, the n kept sites together
    size_t un = static_cast<size_t>(n);
    return {un + 2, un, 2};
}

MeasurementBudget ising_loop_budget(int n_plus_2) {
    require_even_n(n_plus_2 - 2, "ising_loop_budget");
    size_t N = static_cast<size_t>(n_plus_2);
    return {N + 1, N - 1, 2};
}

MeasurementBudget toric_budget(int L) {
    if (L < 2) {
        throw std::invalid_argument("toric_budget: L must be >= 2");
    }
    // Per subsystem: L^2-1 data readouts together, one ancilla readout, and for odd L one more readout
    // for the extension site.
    size_t m = static_cast<size_t>(L * L - 1);
    size_t extra = L % 2 == 0 ? 1 : 2;
    return {2 * (m + extra), 2 * m, 2 * extra};
}

QuantumSample draw_parity_check_quantum(int n, double beta, Coin &coin) {
    require_even_n(n, "draw_parity_check_quantum");
    BranchWeights w = branch_probabilities(n + 1, beta);
    int branch = coin.flip(w.pi0) ? +1 : -1;
    Spins z = draw_parity_conditioned(n + 1, beta, branch, coin);
    z.pop_back();  // the collapsed site is reset and re-drawn
    QuantumSample out;
    if (branch == +1) {
        z.push_back(classical_extend(z, beta, coin));
    } else {
        for (int &v : z) {
            v = -v;
        }
        z.push_back(classical_extend(z, -beta, coin));
        for (int &v : z) {
            v = -v;
        }
    }
    out.spins = std::move(z);
    out.branches = {branch};
    out.budget = parity_check_budget(n);
    return out;
}

QuantumSample sample_parity_check_quantum(int n, const SamplerConfig &cfg, uint64_t stream, uint64_t draw) {
    RngCoin coin(CounterRng(cfg.seed, stream, draw));
    return draw_parity_check_quantum(n, cfg.beta, coin);
}

Distribution parity_check_quantum_law(int n, double beta) {
    require_even_n(n, "parity_check_quantum_law");
    if (n > 15) {
        throw std::invalid_argument("parity_check_quantum_law: n must be <= 15");
    }
    return enumerate_law(static_cast<size_t>(n + 1), [&](Coin &c) {
        return draw_parity_check_quantum(n, beta, c).spins;
    });
}

QuantumSample draw_ising_loop_quantum(int n_plus_2, double beta, Coin &coin, ParityStep step) {
    int n = n_plus_2 - 2;
    require_even_n(n, "draw_ising_loop_quantum");
    QuantumSample out;
    if (step == ParityStep::Protocol) {
        out = draw_parity_check_quantum(n, beta, coin);
    } else {
        out.spins = draw_parity_check_exact(n + 1, beta, coin);
    }
    Circuit join = gen_chain_join(n + 1);
    std::vector<uint8_t> bits = to_bits(out.spins);
    run_xor(join, bits);
    uint8_t s = coin.flip(0.5) ? 0 : 1;
    for (auto &b : bits) {
        b ^= s;
    }
    bits.push_back(s);
    out.spins = to_spins(bits);
    out.budget = ising_loop_budget(n_plus_2);
    out.depth = join.depth() + 1;
    return out;
}

QuantumSample draw_ising_loop_quantum(int n_plus_2, double beta, Coin &coin) {
    return draw_ising_loop_quantum(n_plus_2, beta, coin, ParityStep::Protocol);
}

QuantumSample sample_ising_loop_quantum(int n_plus_2, const SamplerConfig &cfg, uint64_t stream, uint64_t draw) {
    RngCoin coin(CounterRng(cfg.seed, stream, draw));
    return draw_ising_loop_quantum(n_plus_2, cfg.beta, coin);
}

Distribution ising_loop_quantum_law(int n_plus_2, double beta) {
    if (n_plus_2 > 16) {
        throw std::invalid_argument("ising_loop_quantum_law: at most 16 sites");
    }
    return enumerate_law(static_cast<size_t>(n_plus_2), [&](Coin &c) {
        return draw_ising_loop_quantum(n_plus_2, beta, c).spins;
    });
}

ToricFrameLayout toric_frame_layout(int L) {
    if (L < 2) {
        throw std::invalid_argument("toric_frame_layout: L must be >= 2");
    }
    Hamiltonian h = apply_to_hamiltonian(gen_w_gateset(L), build_toric(L));
    MatchResult r = canonical_match(h, w_pattern(L));
    if (!r.matched) {
        throw std::logic_error("toric_frame_layout: W frame does not match: " + r.reason);
    }
    for (const auto &t : h.terms) {
        if (t.sign() < 0) {
            throw std::logic_error("toric_frame_layout: negative term in the W frame");
        }
    }
    ToricSchedule s = toric_schedule(L);
    ToricFrameLayout out;
    out.L = L;
    out.num_qubits = h.num_qubits();
    out.g1 = s.g1;
    out.g2 = s.g2;
    std::vector<size_t> free_sites;
    for (const auto &c : r.components) {
        if (c.kind == ComponentKind::Free) {
            free_sites.push_back(c.sites[0]);
        } else if (c.sites == s.tree_sites) {
            out.x_sites = c.sites;
        } else {
            out.z_sites = c.sites;
        }
    }
    std::sort(free_sites.begin(), free_sites.end());
    std::vector<size_t> want{s.g1, s.g2};
    std::sort(want.begin(), want.end());
    if (out.x_sites.empty() || out.z_sites.empty() || free_sites != want) {
        throw std::logic_error("toric_frame_layout: unexpected W frame components");
    }
    return out;
}

ToricFrameSample draw_toric_frame(const ToricFrameLayout &layout, double beta, Coin &coin, ParityStep step) {
    ToricFrameSample out;
    out.frame.assign(layout.num_qubits, +1);
    for (const auto *sites : {&layout.x_sites, &layout.z_sites}) {
        int m = static_cast<int>(sites->size());
        Spins s;
        if (step == ParityStep::Exact) {
            s = draw_parity_check_exact(m, beta, coin);
        } else if (m % 2 == 1) {
            QuantumSample q = draw_parity_check_quantum(m - 1, beta, coin);
            s = std::move(q.spins);
            out.branches.push_back(q.branches[0]);
        } else {
            QuantumSample q = draw_parity_check_quantum(m - 2, beta, coin);
            s = std::move(q.spins);
            s.push_back(classical_extend(s, beta, coin));
            out.branches.push_back(q.branches[0]);
        }
        for (size_t k = 0; k < sites->size(); k++) {
            out.frame[(*sites)[k]] = s[k];
        }
    }
    out.frame[layout.g1] = draw_field_spin(coin, 0.0);
    out.frame[layout.g2] = draw_field_spin(coin, 0.0);
    return out;
}

Distribution toric_frame_law(int L, double beta, ParityStep step) {
    ToricFrameLayout layout = toric_frame_layout(L);
    if (layout.num_qubits > 16) {
        throw std::invalid_argument("toric_frame_law: at most 16 sites");
    }
    return enumerate_law(layout.num_qubits, [&](Coin &c) {
        return draw_toric_frame(layout, beta, c, step).frame;
    });
}

ToricQuantumSampler::ToricQuantumSampler(int L) : layout_(toric_frame_layout(L)), budget_(toric_budget(L)) {
    Circuit w = gen_w_gateset(L);
    Circuit w_inv = w.reversed();
    size_t n = layout_.num_qubits;
    for (size_t k = 0; k < n; k++) {
        PauliTerm z = make_pauli(n, {{k, 'Z'}});
        apply_circuit_to_term(w_inv, z);
        preimages_.push_back(z);
    }
    for (auto t : build_toric(L).terms) {
        apply_circuit_to_term(w, t);
        if (!t.is_z_type()) {
            throw std::logic_error("ToricQuantumSampler: code term not diagonal in the W frame");
        }
        diag_.emplace_back(t.sign(), t.support());
    }
}

GibbsSampleRecord ToricQuantumSampler::record(double beta, const ToricFrameSample &s) const {
    GibbsSampleRecord r;
    r.code = CodeKind::Toric;
    r.L = layout_.L;
    r.beta = beta;
    r.state = preimages_;
    for (size_t k = 0; k < s.frame.size(); k++) {
        if (s.frame[k] < 0) {
            r.state[k].flip_sign();
        }
    }
    for (const auto &[sign, support] : diag_) {
        int v = sign;
        for (size_t q : support) {
            v *= s.frame[q];
        }
        r.syndrome.push_back(v);
        r.energy -= v;
    }
    r.branches = s.branches;
    r.budget = budget_;
    return r;
}

GibbsSampleRecord ToricQuantumSampler::draw(double beta, Coin &coin, ParityStep step) const {
    return record(beta, draw_toric_frame(layout_, beta, coin, step));
}

GibbsSampleRecord ToricQuantumSampler::sample(double beta, uint64_t seed, uint64_t stream, uint64_t draw) const {
    RngCoin coin(CounterRng(seed, stream, draw));
    return this->draw(beta, coin);
}

GibbsSampleRecord sample_toric_quantum(int L, double beta, uint64_t seed, uint64_t stream, uint64_t draw) {
    return ToricQuantumSampler(L).sample(beta, seed, stream, draw);
}

}  // namespace stabgibbs
