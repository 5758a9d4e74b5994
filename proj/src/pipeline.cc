#include "stabgibbs/pipeline.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <json.hpp>
#include <stdexcept>
#include <thread>

#include "stabgibbs/generators.h"
#include "stabgibbs/gf2.h"

namespace stabgibbs {

namespace {

Hamiltonian build_code(CodeKind code, int L) {
    return code == CodeKind::RSC ? build_rsc(L) : build_toric(L);
}

MappingPlan build_plan(CodeKind code, int L) {
    return code == CodeKind::RSC ? gen_rsc_mapping(L) : gen_toric_mapping(L);
}

CanonicalPattern diagonal_pattern(CodeKind code, int L) {
    return code == CodeKind::RSC ? rsc_pattern(L, true) : toric_pattern(L, true);
}

void place(Spins &frame, const std::vector<size_t> &sites, const Spins &s) {
    for (size_t k = 0; k < sites.size(); k++) {
        frame[sites[k]] = s[k];
    }
}

int term_value(const std::pair<int, std::vector<size_t>> &term, const Spins &frame) {
    int v = term.first;
    for (size_t q : term.second) {
        v *= frame[q];
    }
    return v;
}

}  // namespace

HybridSampler::HybridSampler(CodeKind code, int L)
    : code_(code), L_(L), h_(build_code(code, L)), plan_(build_plan(code, L)) {
    Hamiltonian diag = apply_plan_diagonal(plan_, h_);
    MatchResult m = canonical_match(diag, diagonal_pattern(code, L));
    if (!m.matched) {
        throw std::logic_error("HybridSampler: diagonal model does not match: " + m.reason);
    }
    components_ = std::move(m.components);
    for (const auto &t : diag.terms) {
        if (!t.is_z_type() || t.sign() < 0) {
            throw std::logic_error("HybridSampler: unexpected diagonal term " + t.str());
        }
        diag_.emplace_back(t.sign(), t.support());
    }
    size_t n = h_.num_qubits();
    Circuit back = hadamard_layer(n, plan_.hadamard_sites);
    back.append(plan_.quantum.reversed());
    for (size_t k = 0; k < n; k++) {
        PauliTerm z = make_pauli(n, {{k, 'Z'}});
        apply_circuit_to_term(back, z);
        preimages_.push_back(std::move(z));
    }
}

Spins HybridSampler::draw_frame(double beta, Coin &coin) const {
    Spins frame(h_.num_qubits(), +1);
    for (const auto &c : components_) {
        int len = static_cast<int>(c.sites.size());
        Spins s;
        switch (c.kind) {
            case ComponentKind::Free:
                s = draw_h1(0, len, beta, coin);
                break;
            case ComponentKind::Field:
                s = draw_h1(len, len, beta, coin);
                break;
            case ComponentKind::ChainOneEnd:
                s = draw_h2(len, beta, coin);
                break;
            case ComponentKind::ChainBothEnds:
                s = draw_h0(len + 1, beta, coin);
                s.pop_back();
                break;
            case ComponentKind::Loop:
                s = draw_h3(len, beta, coin);
                break;
            case ComponentKind::ParityCheck:
                s = draw_h4(len + 1, beta, coin);
                s.pop_back();
                break;
        }
        place(frame, c.sites, s);
    }
    return frame;
}

GibbsSampleRecord HybridSampler::record(double beta, const Spins &frame) const {
    GibbsSampleRecord r;
    r.code = code_;
    r.L = L_;
    r.beta = beta;
    for (const auto &t : diag_) {
        int v = term_value(t, frame);
        r.syndrome.push_back(v);
        r.energy -= v;
    }
    std::vector<uint8_t> bits(frame.size());
    for (size_t k = 0; k < frame.size(); k++) {
        bits[k] = frame[k] < 0;
    }
    run_xor_inverse(plan_.classical, bits);
    r.state = preimages_;
    for (size_t k = 0; k < bits.size(); k++) {
        if (bits[k]) {
            r.state[k].flip_sign();
        }
    }
    return r;
}

GibbsSampleRecord HybridSampler::draw(double beta, Coin &coin) const {
    return record(beta, draw_frame(beta, coin));
}

GibbsSampleRecord HybridSampler::sample(double beta, uint64_t seed, uint64_t stream, uint64_t draw) const {
    RngCoin coin(CounterRng(seed, stream, draw));
    return this->draw(beta, coin);
}

std::vector<GibbsSampleRecord> gibbs_sample_code(CodeKind code, int L, double beta, size_t n_samples,
                                                 uint64_t seed, unsigned threads) {
    if (L < 2) {
        throw std::invalid_argument("gibbs_sample_code: L must be >= 2");
    }
    HybridSampler sampler(code, L);
    std::vector<GibbsSampleRecord> out(n_samples);
    threads = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(std::max<size_t>(n_samples, 1))));
    auto work = [&](unsigned t) {
        for (size_t j = t; j < n_samples; j += threads) {
            out[j] = sampler.sample(beta, seed, 0, j);
        }
    };
    if (threads == 1) {
        work(0);
        return out;
    }
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < threads; t++) {
        pool.emplace_back(work, t);
    }
    for (auto &th : pool) {
        th.join();
    }
    return out;
}

Distribution hybrid_syndrome_law(CodeKind code, int L, double beta) {
    HybridSampler sampler(code, L);
    size_t T = sampler.code_hamiltonian().terms.size();
    if (T > 20) {
        throw std::invalid_argument("hybrid_syndrome_law: too many terms");
    }
    // enumerate_law works on spin vectors, so encode the syndrome as spins
    return enumerate_law(T, [&](Coin &c) {
        return Spins(sampler.draw(beta, c).syndrome);
    });
}

Distribution exact_syndrome_law(CodeKind code, int L, double beta) {
    Hamiltonian h = build_code(code, L);
    size_t T = h.terms.size();
    if (T > 20) {
        throw std::invalid_argument("exact_syndrome_law: too many terms");
    }
    // Every syndrome consistent with the relations among the terms has the same degeneracy.
    PauliBasis basis(h.num_qubits());
    std::vector<size_t> independent;
    std::vector<std::pair<size_t, std::pair<int, std::vector<size_t>>>> relations;
    for (size_t k = 0; k < T; k++) {
        auto combo = basis.decompose(h.terms[k]);
        basis.insert(h.terms[k]);
        if (!combo) {
            independent.push_back(k);
            continue;
        }
        PauliTerm prod(h.num_qubits());
        for (size_t j : *combo) {
            prod = multiply(prod, h.terms[j]);
        }
        PauliTerm unsigned_prod = prod, unsigned_term = h.terms[k];
        unsigned_prod.set_negative(false);
        unsigned_term.set_negative(false);
        if (!(unsigned_prod == unsigned_term)) {
            throw std::logic_error("exact_syndrome_law: bad decomposition");
        }
        relations.push_back({k, {prod.sign() * h.terms[k].sign(), *combo}});
    }
    Distribution out(size_t{1} << T, 0.0);
    double total = 0;
    for (size_t idx = 0; idx < out.size(); idx++) {
        Spins s = index_to_spins(idx, T);
        bool ok = true;
        for (const auto &[k, rel] : relations) {
            int v = rel.first;
            for (size_t j : rel.second) {
                v *= s[j];
            }
            ok &= v == s[k];
        }
        if (!ok) {
            continue;
        }
        double e = 0;
        for (int v : s) {
            e += v;
        }
        out[idx] = std::exp(beta * (e - static_cast<double>(T)));
        total += out[idx];
    }
    for (double &p : out) {
        p /= total;
    }
    return out;
}

EnergyEstimate estimate_energy(const std::vector<double> &energies) {
    if (energies.size() < 2) {
        throw std::invalid_argument("estimate_energy: need at least two samples");
    }
    double n = static_cast<double>(energies.size());
    double mean = 0;
    for (double e : energies) {
        mean += e;
    }
    mean /= n;
    double var = 0;
    for (double e : energies) {
        var += (e - mean) * (e - mean);
    }
    var /= n - 1;
    return {mean, std::sqrt(var / n), energies.size()};
}

EnergyEstimate estimate_energy(const std::vector<GibbsSampleRecord> &records) {
    std::vector<double> e;
    e.reserve(records.size());
    for (const auto &r : records) {
        e.push_back(r.energy);
    }
    return estimate_energy(e);
}

double exact_code_energy(CodeKind code, int L, double beta) {
    if (L < 2) {
        throw std::invalid_argument("exact_code_energy: L must be >= 2");
    }
    if (code == CodeKind::RSC) {
        return -((L + 1) * (L + 1) - 1) * std::tanh(beta);
    }
    return exact_mean_energy(ClassicalKind::Loops, 2 * L * L, beta);
}

std::string summary_json(const EnergyEstimate &e, CodeKind code, int L, double beta, std::optional<double> exact) {
    nlohmann::ordered_json j;
    j["mean_energy"] = e.mean;
    j["se"] = e.se;
    j["n"] = e.n;
    j["beta"] = beta;
    j["code"] = to_string(code);
    j["L"] = L;
    if (exact) {
        j["exact"] = *exact;
        j["z"] = e.se > 0 ? (e.mean - *exact) / e.se : 0.0;
    }
    return j.dump();
}

GroundStateReport ground_state_check(CodeKind code, int L) {
    HybridSampler sampler(code, L);
    const Hamiltonian &h = sampler.code_hamiltonian();
    GibbsSampleRecord r = sampler.record(std::numeric_limits<double>::infinity(), Spins(h.num_qubits(), +1));
    GroundStateReport rep;
    std::vector<int> syn = syndrome_of(r.state, h.terms);
    rep.stabilizers_ok = std::all_of(syn.begin(), syn.end(), [](int v) {
        return v == 1;
    });
    std::vector<std::string> names = code == CodeKind::RSC ? std::vector<std::string>{"ZL"}
                                                           : std::vector<std::string>{"Z1", "Z2"};
    rep.logicals_ok = true;
    for (const auto &[name, term] : h.logicals) {
        if (std::find(names.begin(), names.end(), name) != names.end()) {
            int v = stabilizer_expectation(r.state, term);
            if (v != 1) {
                rep.logicals_ok = false;
                rep.detail += name + " reads " + std::to_string(v) + "; ";
            }
        }
    }
    if (code == CodeKind::Toric) {
        Circuit g = gen_toric_groundstate(L);
        for (size_t k = 0; k < h.num_qubits(); k++) {
            PauliTerm z = make_pauli(h.num_qubits(), {{k, 'Z'}});
            apply_circuit_to_term(g, z);
            if (stabilizer_expectation(r.state, z) != 1) {
                rep.matches_circuit = false;
                rep.detail += "circuit stabilizer " + z.str() + " not fixed; ";
                break;
            }
        }
    }
    if (!rep.stabilizers_ok) {
        rep.detail += "some stabilizer reads -1; ";
    }
    return rep;
}

}  // namespace stabgibbs
