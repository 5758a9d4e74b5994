#include "stabgibbs/verify.h"

#include <chrono>
#include <cmath>
#include <complex>
#include <cstdio>
#include <functional>
#include <stdexcept>

#include "stabgibbs/densesim.h"
#include "stabgibbs/generators.h"
#include "stabgibbs/gf2.h"
#include "stabgibbs/measurement.h"
#include "stabgibbs/pipeline.h"

namespace stabgibbs {

namespace {

const double kRadius = std::sqrt(2.0);

std::string fmt(const char *f, double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, f, v);
    return buf;
}

// Runs `body`, which fills pass/detail, and fails it if it overruns `limit` seconds or throws.
CheckResult timed(const std::string &name, double limit, const std::function<void(CheckResult &)> &body) {
    CheckResult r;
    r.name = name;
    auto t0 = std::chrono::steady_clock::now();
    try {
        r.pass = true;
        body(r);
    } catch (const std::exception &e) {
        r.pass = false;
        r.detail += std::string("exception: ") + e.what();
    }
    r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (limit > 0 && r.seconds > limit) {
        r.pass = false;
        r.detail += "; took " + fmt("%.2f", r.seconds) + " s, limit " + fmt("%.0f", limit) + " s";
    }
    return r;
}

void fail(CheckResult &r, const std::string &why) {
    r.pass = false;
    if (!r.detail.empty()) {
        r.detail += "; ";
    }
    r.detail += why;
}

void note(CheckResult &r, const std::string &what) {
    if (!r.detail.empty()) {
        r.detail += "; ";
    }
    r.detail += what;
}

size_t ceil_log2(size_t n) {
    size_t k = 0;
    while ((size_t{1} << k) < n) {
        k++;
    }
    return k;
}

using Mat4 = Eigen::Matrix4cd;

Mat4 dense_two_qubit(char q0, char q1) {
    using cd = std::complex<double>;
    auto one = [](char c) {
        Eigen::Matrix2cd m;
        switch (c) {
            case 'X':
                m << 0, 1, 1, 0;
                break;
            case 'Y':
                m << 0, cd(0, -1), cd(0, 1), 0;
                break;
            case 'Z':
                m << 1, 0, 0, -1;
                break;
            default:
                m << 1, 0, 0, 1;
        }
        return m;
    };
    // qubit 0 is the low bit of the basis index
    Eigen::Matrix2cd a = one(q1), b = one(q0);
    Mat4 out;
    for (int i = 0; i < 2; i++) {
        for (int j = 0; j < 2; j++) {
            out.block<2, 2>(2 * i, 2 * j) = a(i, j) * b;
        }
    }
    return out;
}

Hamiltonian parity_check_hamiltonian(int m) {
    Hamiltonian h;
    h.layout = QubitLayout::line(static_cast<size_t>(m));
    PauliTerm prod(static_cast<size_t>(m));
    for (int i = 0; i < m; i++) {
        h.terms.push_back(make_pauli(static_cast<size_t>(m), {{static_cast<size_t>(i), 'Z'}}));
        multiply_into(prod, h.terms.back());
    }
    h.terms.push_back(prod);
    return h;
}

}  // namespace

CheckResult check_cx_conjugation_table() {
    return timed("cx-conjugation-table", 1.0, [](CheckResult &r) {
        const char *rules[6][2] = {{"X0", "X0*X1"}, {"X1", "X1"}, {"Z0", "Z0"},
                                   {"Z1", "Z0*Z1"}, {"Z0*Z1", "Z1"}, {"X0*X1", "X0"}};
        for (auto &rule : rules) {
            PauliTerm got = conjugate_cx(parse_pauli(rule[0], 2), 0, 1);
            if (got.str() != rule[1]) {
                fail(r, std::string("CX ") + rule[0] + " CX gave " + got.str());
            }
        }
        Mat4 cx = Mat4::Zero();
        for (int b = 0; b < 4; b++) {
            int t = (b & 1) ? b ^ 2 : b;
            cx(t, b) = 1;
        }
        const char letters[4] = {'I', 'X', 'Y', 'Z'};
        double worst = 0;
        for (char a : letters) {
            for (char b : letters) {
                std::vector<std::pair<size_t, char>> f;
                if (a != 'I') {
                    f.push_back({0, a});
                }
                if (b != 'I') {
                    f.push_back({1, b});
                }
                PauliTerm p = make_pauli(2, f);
                PauliTerm img = conjugate_cx(p, 0, 1);
                Mat4 want = cx * dense_two_qubit(a, b) * cx;
                Mat4 have = dense_two_qubit(img.letter(0), img.letter(1)) * static_cast<double>(img.sign());
                worst = std::max(worst, (want - have).cwiseAbs().maxCoeff());
            }
        }
        if (worst > 1e-15) {
            fail(r, "dense oracle disagrees by " + fmt("%.3g", worst));
        }
        note(r, "6 rules, 16 Paulis vs dense 4x4, max deviation " + fmt("%.1g", worst));
    });
}

CheckResult check_decoupling() {
    return timed("decoupling", 10.0, [](CheckResult &r) {
        auto one = [&](const char *code, int L, const MappingPlan &plan, const Hamiltonian &h,
                       const CanonicalPattern &pat) {
            Hamiltonian d = apply_plan_decoupled(plan, h);
            std::vector<int> x_use(h.num_qubits(), 0), z_use(h.num_qubits(), 0);
            for (const auto &t : d.terms) {
                if (!t.is_x_type() && !t.is_z_type()) {
                    fail(r, std::string(code) + " L=" + std::to_string(L) + ": mixed term " + t.str());
                    return;
                }
                for (size_t q : t.support()) {
                    (t.is_x_type() ? x_use : z_use)[q] = 1;
                }
            }
            for (size_t q = 0; q < h.num_qubits(); q++) {
                if (x_use[q] && z_use[q]) {
                    fail(r, std::string(code) + " L=" + std::to_string(L) + ": site " + std::to_string(q) +
                                " carries X and Z terms");
                    return;
                }
            }
            MatchResult m = canonical_match(d, pat);
            if (!m.matched) {
                fail(r, std::string(code) + " L=" + std::to_string(L) + ": " + m.reason);
            }
        };
        for (int L = 2; L <= 6; L++) {
            one("rsc", L, gen_rsc_mapping(L), build_rsc(L), rsc_pattern(L));
        }
        for (int L = 2; L <= 4; L++) {
            one("toric", L, gen_toric_mapping(L), build_toric(L), toric_pattern(L));
        }
        if (r.pass) {
            note(r, "rsc L=2..6, toric L=2..4 decoupled and matched");
        }
    });
}

CheckResult check_depth_and_locality() {
    return timed("depth-locality", 0, [](CheckResult &r) {
        auto local = [&](const std::string &what, const Circuit &c, const QubitLayout &layout) {
            auto v = audit_locality(c, layout, kRadius);
            if (!v.empty()) {
                fail(r, what + ": " + v[0].detail);
            }
        };
        auto bound = [&](const std::string &what, size_t depth, size_t limit, bool exact) {
            if (exact ? depth != limit : depth > limit) {
                fail(r, what + " depth " + std::to_string(depth) + (exact ? " != " : " > ") + std::to_string(limit));
            }
        };
        for (int L = 2; L <= 12; L++) {
            std::string tag = " L=" + std::to_string(L);
            size_t uL = static_cast<size_t>(L);
            MappingPlan rsc = gen_rsc_mapping(L);
            const auto &rl = build_rsc(L).layout;
            bound("rsc quantum" + tag, rsc.quantum.depth(), (uL + 1) / 2 + 2, false);
            local("rsc quantum" + tag, rsc.quantum, rl);
            local("rsc classical" + tag, rsc.classical, rl);

            const auto &tl = build_toric(L).layout;
            MappingPlan toric = gen_toric_mapping(L);
            bound("toric quantum" + tag, toric.quantum.depth(), uL, true);
            local("toric quantum" + tag, toric.quantum, tl);
            Circuit gs = gen_toric_groundstate(L);
            bound("groundstate" + tag, gs.depth(), uL + 1, true);
            local("groundstate" + tag, gs, tl);
            Circuit w = gen_w_gateset(L);
            bound("W" + tag, w.depth(), 3 * uL - 1, false);
            local("W" + tag, w, tl);
            ToricSchedule s = toric_schedule(L);
            for (auto [sites, anc] : {std::pair{s.tree_sites, s.g1}, std::pair{s.kept_sites, s.g2}}) {
                Circuit v = gen_pseudo_parity(tl, sites, anc);
                bound("pseudo parity" + tag, v.depth(), std::max<size_t>(1, 2 * uL - 3), false);
                local("pseudo parity" + tag, v, tl);
            }
        }
        for (int n = 2; n <= 1024; n++) {
            bound("chain join n=" + std::to_string(n), gen_chain_join(n).depth(), ceil_log2(static_cast<size_t>(n)),
                  false);
        }
        if (r.pass) {
            note(r, "all bounds hold for L<=12 and chain join n<=1024, no locality violations");
        }
    });
}

CheckResult check_classical_samplers() {
    return timed("classical-samplers", 5.0, [](CheckResult &r) {
        double worst = 0;
        for (ClassicalKind kind : {ClassicalKind::H0, ClassicalKind::H1, ClassicalKind::H2, ClassicalKind::H3,
                                   ClassicalKind::H4}) {
            int lo = kind == ClassicalKind::H1 ? 1 : kind == ClassicalKind::H2 ? 2 : 3;
            for (int n = lo; n <= 4; n++) {
                for (double b : {-1.0, 0.0, 0.3, 1.0}) {
                    double tv = total_variation(induced_distribution(kind, n, b), exact_distribution(kind, n, b));
                    worst = std::max(worst, tv);
                    if (tv >= 1e-12) {
                        fail(r, to_string(kind) + " n=" + std::to_string(n) + " TV " + fmt("%.3g", tv));
                    }
                }
            }
        }
        note(r, "max TV " + fmt("%.2g", worst));
    });
}

CheckResult check_parity_check_protocol() {
    return timed("parity-check-protocol", 30.0, [](CheckResult &r) {
        for (int n : {2, 4}) {
            for (double b : {0.3, 1.0}) {
                Distribution law = parity_check_quantum_law(n, b);
                Distribution target = boltzmann_distribution(parity_check_hamiltonian(n + 1), b);
                double tv = total_variation(law, target);
                std::string tag = "n=" + std::to_string(n) + " beta=" + fmt("%g", b);
                if (tv >= 1e-12) {
                    fail(r, tag + " TV " + fmt("%.4f", tv));
                }
                DenseMatrix rho = parity_check_protocol_density(n, b);
                double td = trace_distance(rho, exact_gibbs(parity_check_hamiltonian(n + 1), b));
                if (td >= 1e-10) {
                    fail(r, tag + " ensemble TD " + fmt("%.4f", td));
                }
                double self = trace_distance(rho, diagonal_density(law));
                note(r, tag + " circuit ensemble vs branch law TD " + fmt("%.1g", self));
            }
        }
    });
}

CheckResult check_toric_quantum_sampler() {
    return timed("toric-quantum-sampler", 0, [](CheckResult &r) {
        for (double b : {0.3, 1.0}) {
            DenseMatrix gibbs = exact_gibbs(build_toric(2), b);
            double td = trace_distance(toric_protocol_density(2, b), gibbs);
            double td_exact = trace_distance(toric_protocol_density(2, b, ParityStep::Exact), gibbs);
            std::string tag = "beta=" + fmt("%g", b);
            if (td >= 1e-9) {
                fail(r, tag + " TD " + fmt("%.4f", td));
            }
            note(r, tag + " TD with exact parity stage " + fmt("%.1g", td_exact));
        }
        for (int L = 2; L <= 6; L++) {
            size_t uL = static_cast<size_t>(L);
            MeasurementBudget want{L % 2 == 0 ? 2 * uL * uL : 2 * uL * uL + 2, 2 * uL * uL - 2, 0};
            want.sequential = want.total - want.simultaneous;
            MeasurementBudget got = toric_budget(L);
            GibbsSampleRecord rec = ToricQuantumSampler(L).sample(0.5, 1, 0, 0);
            if (!(got == want) || !rec.budget || !(*rec.budget == want)) {
                fail(r, "budget L=" + std::to_string(L) + " is (" + std::to_string(got.total) + ", " +
                            std::to_string(got.simultaneous) + ")");
            }
        }
        note(r, "budgets L=2..6 checked");
    });
}

CheckResult check_energy_estimates() {
    return timed("energy-estimates", 60.0, [](CheckResult &r) {
        struct Case {
            CodeKind code;
            int L;
            double beta;
        };
        for (Case c : {Case{CodeKind::RSC, 4, 0.8}, Case{CodeKind::Toric, 3, 1.0}}) {
            EnergyEstimate e = estimate_energy(gibbs_sample_code(c.code, c.L, c.beta, 100000, 2024));
            double exact = exact_code_energy(c.code, c.L, c.beta);
            double z = (e.mean - exact) / e.se;
            std::string tag = to_string(c.code) + " L=" + std::to_string(c.L);
            if (!(std::abs(z) < 4)) {
                fail(r, tag + " z=" + fmt("%.2f", z));
            }
            note(r, tag + " mean " + fmt("%.4f", e.mean) + " exact " + fmt("%.4f", exact) + " z " + fmt("%.2f", z));
        }
    });
}

CheckResult check_ground_and_logical_states() {
    return timed("ground-logical-states", 0, [](CheckResult &r) {
        for (int L = 2; L <= 4; L++) {
            Circuit g = gen_toric_groundstate(L);
            Hamiltonian h = build_toric(L);
            std::vector<PauliTerm> gens;
            for (size_t k = 0; k < h.num_qubits(); k++) {
                PauliTerm z = make_pauli(h.num_qubits(), {{k, 'Z'}});
                apply_circuit_to_term(g, z);
                gens.push_back(z);
            }
            std::vector<PauliTerm> want = h.terms;
            want.push_back(h.logical("Z1"));
            want.push_back(h.logical("Z2"));
            for (const auto &t : want) {
                if (stabilizer_expectation(gens, t) != 1) {
                    fail(r, "toric L=" + std::to_string(L) + ": " + t.str() + " not +1");
                    break;
                }
            }
        }
        for (int L = 3; L <= 11; L += 2) {
            Hamiltonian code = build_rsc(L);
            Hamiltonian dec = apply_plan_decoupled(gen_rsc_mapping(L), code);
            size_t centre = static_cast<size_t>((L / 2) * (L + 1) + L / 2);
            size_t n = code.num_qubits();
            if (dec.logical("XL").support() != std::vector<size_t>{centre}) {
                fail(r, "rsc L=" + std::to_string(L) + ": XL maps to " + dec.logical("XL").str());
            }
            PauliBasis basis(n);
            for (const auto &t : dec.terms) {
                basis.insert(t);
            }
            if (!basis.decompose(multiply(dec.logical("ZL"), make_pauli(n, {{centre, 'Z'}})))) {
                fail(r, "rsc L=" + std::to_string(L) + ": ZL is not Z at the centre up to stabilizers");
            }
        }
        if (r.pass) {
            note(r, "toric L=2..4 groundstate fixes all terms and Z1, Z2; rsc odd L=3..11 logicals at the centre");
        }
    });
}

const std::vector<std::string> &suite_names() {
    static const std::vector<std::string> names{"conjugation", "decoupling", "depth", "classical",
                                                "gibbs",       "energy",     "ground", "all"};
    return names;
}

namespace {

std::vector<CheckResult> conjugation_suite(size_t max_qubits) {
    std::vector<CheckResult> out{check_cx_conjugation_table()};
    out.push_back(timed("dense-conjugation", 0, [&](CheckResult &r) {
        size_t checked = 0;
        auto run = [&](const std::string &what, const Circuit &c, const Hamiltonian &h) {
            if (c.num_qubits > std::min(max_qubits, kMaxDenseQubits)) {
                return;
            }
            ConjugationReport rep = verify_conjugation(c, h);
            checked += rep.terms_checked;
            if (rep.max_deviation > 1e-12) {
                fail(r, what + " deviates by " + fmt("%.3g", rep.max_deviation));
            }
        };
        for (int L = 2; L <= 3; L++) {
            Hamiltonian rsc = build_rsc(L);
            MappingPlan p = gen_rsc_mapping(L);
            run("rsc mapping", p.quantum, rsc);
            Hamiltonian toric = build_toric(L);
            MappingPlan t = gen_toric_mapping(L);
            run("toric mapping", t.quantum, toric);
            run("toric classical", t.classical, toric);
            run("W", gen_w_gateset(L), toric);
            run("groundstate", gen_toric_groundstate(L), toric);
        }
        for (int n = 2; n <= 10; n++) {
            Hamiltonian h;
            h.layout = QubitLayout::line(static_cast<size_t>(n));
            for (int i = 0; i < n; i++) {
                h.terms.push_back(make_pauli(static_cast<size_t>(n), {{static_cast<size_t>(i), 'Z'}}));
            }
            run("chain join", gen_chain_join(n), h);
        }
        note(r, std::to_string(checked) + " term images checked against dense U P U^dagger");
    }));
    return out;
}

std::vector<CheckResult> gibbs_suite(const VerifyOptions &opts) {
    std::vector<CheckResult> out;
    for (CodeKind code : {CodeKind::RSC, CodeKind::Toric}) {
        out.push_back(timed("hybrid-syndrome-law-" + to_string(code), 0, [&](CheckResult &r) {
            for (double b : {0.3, 1.0}) {
                double tv = total_variation(hybrid_syndrome_law(code, opts.L, b), exact_syndrome_law(code, opts.L, b));
                if (tv >= 1e-12) {
                    fail(r, "beta=" + fmt("%g", b) + " TV " + fmt("%.3g", tv));
                }
                note(r, "L=" + std::to_string(opts.L) + " beta=" + fmt("%g", b) + " TV " + fmt("%.1g", tv));
            }
        }));
    }
    if (opts.max_qubits >= 8) {
        out.push_back(timed("hybrid-toric-dense", 0, [&](CheckResult &r) {
            // Ensemble of hybrid records at L=2 against the dense Gibbs state.
            HybridSampler s(CodeKind::Toric, 2);
            for (double b : {0.3, 1.0}) {
                std::vector<std::pair<double, StateVector>> members;
                Distribution law = enumerate_law(8, [&](Coin &c) {
                    return s.draw_frame(b, c);
                });
                // undo the classical stage, the Hadamard layer and the quantum stage on |x>
                const MappingPlan &plan = s.plan();
                Circuit back{8, {}};
                back.append(plan.classical.reversed());
                back.append(hadamard_layer(8, plan.hadamard_sites));
                back.append(plan.quantum.reversed());
                for (size_t i = 0; i < law.size(); i++) {
                    if (law[i] > 0) {
                        members.emplace_back(law[i], apply_circuit(StateVector::basis(8, i), back));
                    }
                }
                double td = trace_distance(ensemble_density(members), exact_gibbs(build_toric(2), b));
                if (td >= 1e-9) {
                    fail(r, "beta=" + fmt("%g", b) + " TD " + fmt("%.3g", td));
                }
                note(r, "beta=" + fmt("%g", b) + " TD " + fmt("%.1g", td));
            }
        }));
    }
    if (opts.L == 2 && opts.max_qubits >= 8) {
        out.push_back(check_parity_check_protocol());
        out.push_back(check_toric_quantum_sampler());
    }
    return out;
}

}  // namespace

std::vector<CheckResult> run_suite(const std::string &suite, const VerifyOptions &opts) {
    if (suite == "conjugation") {
        return conjugation_suite(opts.max_qubits);
    }
    if (suite == "decoupling") {
        return {check_decoupling()};
    }
    if (suite == "depth") {
        return {check_depth_and_locality()};
    }
    if (suite == "classical") {
        return {check_classical_samplers()};
    }
    if (suite == "gibbs") {
        if (opts.L < 2 || opts.L > 3) {
            throw std::invalid_argument("gibbs suite: L must be 2 or 3");
        }
        return gibbs_suite(opts);
    }
    if (suite == "energy") {
        return {check_energy_estimates()};
    }
    if (suite == "ground") {
        return {check_ground_and_logical_states()};
    }
    if (suite == "all") {
        std::vector<CheckResult> out;
        for (const auto &s : suite_names()) {
            if (s != "all") {
                auto part = run_suite(s, opts);
                out.insert(out.end(), part.begin(), part.end());
            }
        }
        return out;
    }
    throw std::invalid_argument("unknown suite '" + suite + "'");
}

}  // namespace stabgibbs
