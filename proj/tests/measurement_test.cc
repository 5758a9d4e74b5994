#include <cmath>
#include <gtest/gtest.h>
#include <numbers>

#include "stabgibbs/generators.h"
#include "stabgibbs/gf2.h"
#include "stabgibbs/measurement.h"

using namespace stabgibbs;

namespace {

// Law of field-beta spins on m sites, optionally restricted to one parity, normalized.
Distribution field_law(int m, double beta, int parity) {
    Distribution p(size_t{1} << m, 0.0);
    double total = 0;
    for (size_t i = 0; i < p.size(); i++) {
        Spins s = index_to_spins(i, static_cast<size_t>(m));
        int prod = 1, sum = 0;
        for (int v : s) {
            prod *= v;
            sum += v;
        }
        if (parity != 0 && prod != parity) {
            continue;
        }
        p[i] = std::exp(beta * sum);
        total += p[i];
    }
    for (double &v : p) {
        v /= total;
    }
    return p;
}

// Parity-check law on m sites: exp(beta sum z + beta prod z).
Distribution parity_check_law(int m, double beta) {
    Distribution p = exact_distribution(ClassicalKind::H4, m + 1, beta);
    Distribution out(size_t{1} << m, 0.0);
    for (size_t i = 0; i < p.size(); i++) {
        out[i & (out.size() - 1)] += p[i];
    }
    return out;
}

// Output law of the protocol written as a closed form over its two branches.
Distribution protocol_closed_form(int n, double beta) {
    double t = std::tanh(beta);
    double pi0 = (1 + std::pow(t, n + 1)) / 2;
    Distribution rho_plus = parity_check_law(n, beta);
    Distribution rho_minus = parity_check_law(n, -beta);
    auto ext = [](const Spins &x, double b, int z) {
        int prod = 1;
        for (int v : x) {
            prod *= v;
        }
        double f = b * (1 + prod);
        return 1 / (1 + std::exp(-2 * f * z));
    };
    Distribution out(size_t{1} << (n + 1), 0.0);
    size_t half = size_t{1} << n;
    for (size_t i = 0; i < half; i++) {
        Spins x = index_to_spins(i, static_cast<size_t>(n));
        Spins nx = x;
        for (int &v : nx) {
            v = -v;
        }
        size_t neg = spins_to_index(nx);
        for (int z : {+1, -1}) {
            size_t idx = i | (z < 0 ? half : 0);
            out[idx] += pi0 * rho_plus[i] * ext(x, beta, z);
            out[idx] += (1 - pi0) * rho_minus[neg] * ext(nx, -beta, -z);
        }
    }
    return out;
}

}  // namespace

TEST(rotation_angle, values_and_marginal) {
    EXPECT_NEAR(rotation_angle(0), std::numbers::pi / 4, 1e-15);
    EXPECT_NEAR(rotation_angle(1), 0.3525134218, 1e-10);
    EXPECT_LT(rotation_angle(40), 1e-17);
    for (double b : {-1.0, 0.0, 0.4, 2.0}) {
        double s = std::sin(rotation_angle(b));
        EXPECT_NEAR(s * s, 1 / (1 + std::exp(2 * b)), 1e-15);
    }
    EXPECT_THROW(rotation_angle(INFINITY), std::invalid_argument);
}

TEST(branch_probabilities, values) {
    auto w = branch_probabilities(3, 0);
    EXPECT_DOUBLE_EQ(w.pi0, 0.5);
    EXPECT_DOUBLE_EQ(w.pi1, 0.5);
    EXPECT_NEAR(branch_probabilities(2, 1).pi0, 0.7900128292, 1e-10);
    EXPECT_NEAR(branch_probabilities(5, 60).pi0, 1, 1e-15);
    for (int m : {1, 2, 5}) {
        Distribution p = field_law(m, 0.45, 0);
        double even = 0;
        for (size_t i = 0; i < p.size(); i++) {
            even += std::popcount(i) % 2 == 0 ? p[i] : 0;
        }
        auto b = branch_probabilities(m, 0.45);
        EXPECT_NEAR(b.pi0, even, 1e-14);
        EXPECT_NEAR(b.pi0 + b.pi1, 1, 1e-15);
    }
    EXPECT_THROW(branch_probabilities(0, 1), std::invalid_argument);
}

TEST(classical_extend, probabilities) {
    auto p_up = [](const Spins &x, double b) {
        Distribution d = enumerate_law(1, [&](Coin &c) {
            return Spins{classical_extend(x, b, c)};
        });
        return d[0];
    };
    EXPECT_NEAR(p_up({1, -1}, 1.3), 0.5, 1e-15);
    EXPECT_NEAR(p_up({1, 1}, 0), 0.5, 1e-15);
    EXPECT_NEAR(p_up({-1, -1}, 1), 0.9820138, 1e-7);
    EXPECT_NEAR(p_up({1, 1, -1}, -0.8), 0.5, 1e-15);
}

TEST(parity_conditioned, matches_restricted_field_law) {
    for (int m : {1, 2, 3, 5}) {
        for (double b : {-0.6, 0.0, 0.9}) {
            for (int r : {+1, -1}) {
                if (m == 1 && b == 0) {
                    continue;
                }
                Distribution got = enumerate_law(static_cast<size_t>(m), [&](Coin &c) {
                    return draw_parity_conditioned(m, b, r, c);
                });
                EXPECT_LT(total_variation(got, field_law(m, b, r)), 1e-13) << m << " " << b << " " << r;
            }
        }
    }
}

TEST(parity_conditioned, even_branch_is_the_parity_check_law) {
    // On even strings the field law equals exp(beta sum + beta prod); odd strings get nothing.
    for (int n : {2, 4}) {
        for (double b : {0.3, 1.0}) {
            Distribution got = enumerate_law(static_cast<size_t>(n + 1), [&](Coin &c) {
                return draw_parity_conditioned(n + 1, b, +1, c);
            });
            Distribution target = parity_check_law(n + 1, b);
            for (size_t i = 0; i < got.size(); i++) {
                if (std::popcount(i) % 2 == 1) {
                    EXPECT_EQ(got[i], 0.0);
                } else {
                    EXPECT_NEAR(got[i] / target[i], got[0] / target[0], 1e-12);
                }
            }
            // keeping the first n sites leaves the parity-check law on n sites
            Distribution kept(size_t{1} << n, 0.0);
            for (size_t i = 0; i < got.size(); i++) {
                kept[i & (kept.size() - 1)] += got[i];
            }
            EXPECT_LT(total_variation(kept, parity_check_law(n, b)), 1e-13);
        }
    }
}

TEST(parity_check_quantum, law_is_the_two_branch_mixture) {
    for (int n : {2, 4, 6}) {
        for (double b : {-0.5, 0.0, 0.3, 1.0}) {
            EXPECT_LT(total_variation(parity_check_quantum_law(n, b), protocol_closed_form(n, b)), 1e-13)
                << n << " " << b;
        }
    }
}

TEST(parity_check_quantum, beta_zero_is_uniform) {
    Distribution p = parity_check_quantum_law(2, 0);
    for (double v : p) {
        EXPECT_NEAR(v, 1.0 / 8, 1e-15);
    }
}

TEST(parity_check_quantum, record_fields_and_errors) {
    SamplerConfig cfg{0.7, 11, 0};
    QuantumSample a = sample_parity_check_quantum(4, cfg, 2, 9);
    QuantumSample b = sample_parity_check_quantum(4, cfg, 2, 9);
    EXPECT_EQ(a.spins, b.spins);
    EXPECT_EQ(a.spins.size(), 5u);
    ASSERT_EQ(a.branches.size(), 1u);
    EXPECT_TRUE(a.branches[0] == 1 || a.branches[0] == -1);
    EXPECT_EQ(a.budget, (MeasurementBudget{6, 4, 2}));
    EXPECT_THROW(sample_parity_check_quantum(3, cfg, 0, 0), std::invalid_argument);
    EXPECT_THROW(parity_check_quantum_law(0, 1), std::invalid_argument);
}

TEST(ising_loop_quantum, exact_with_exact_parity_stage) {
    for (int N : {4, 6, 8}) {
        for (double b : {0.8, -0.3}) {
            Distribution got = enumerate_law(static_cast<size_t>(N), [&](Coin &c) {
                return draw_ising_loop_quantum(N, b, c, ParityStep::Exact).spins;
            });
            EXPECT_LT(total_variation(got, exact_distribution(ClassicalKind::H3, N, b)), 1e-12) << N;
            EXPECT_LT(total_variation(got, induced_distribution(ClassicalKind::H3, N, b)), 1e-12) << N;
        }
    }
}

TEST(ising_loop_quantum, pushforward_of_the_parity_stage) {
    // Every parity-check spin becomes one bond of the loop and the last bond closes the product, so the
    // number of broken bonds is fixed by the parity-stage sample.
    int N = 6;
    double b = 0.8;
    Distribution loop = ising_loop_quantum_law(N, b);
    Distribution parity = parity_check_quantum_law(N - 2, b);
    std::vector<double> from_loop(N + 1, 0.0), from_parity(N + 1, 0.0);
    for (size_t i = 0; i < loop.size(); i++) {
        Spins y = index_to_spins(i, static_cast<size_t>(N));
        int broken = 0;
        for (int k = 0; k < N; k++) {
            broken += y[k] * y[(k + 1) % N] < 0;
        }
        from_loop[broken] += loop[i];
    }
    for (size_t i = 0; i < parity.size(); i++) {
        int c = std::popcount(i);
        from_parity[c + c % 2] += parity[i];
    }
    for (int k = 0; k <= N; k++) {
        EXPECT_NEAR(from_loop[k], from_parity[k], 1e-13) << k;
    }
}

TEST(ising_loop_quantum, depth_and_budget) {
    SamplerConfig cfg{0.5, 3, 0};
    QuantumSample s = sample_ising_loop_quantum(10, cfg, 0, 4);
    EXPECT_EQ(s.spins.size(), 10u);
    EXPECT_LE(s.depth, 3u + 2u);  // ceil(log2 8) + 2
    EXPECT_EQ(s.budget, (MeasurementBudget{11, 9, 2}));
    EXPECT_THROW(sample_ising_loop_quantum(5, cfg, 0, 0), std::invalid_argument);
    EXPECT_THROW(sample_ising_loop_quantum(2, cfg, 0, 0), std::invalid_argument);
}

TEST(toric_budget, counts) {
    EXPECT_EQ(toric_budget(2), (MeasurementBudget{8, 6, 2}));
    EXPECT_EQ(toric_budget(3), (MeasurementBudget{20, 16, 4}));
    for (size_t L = 2; L <= 6; L++) {
        auto b = toric_budget(static_cast<int>(L));
        EXPECT_EQ(b.total, L % 2 == 0 ? 2 * L * L : 2 * L * L + 2);
        EXPECT_EQ(b.simultaneous, 2 * L * L - 2);
        EXPECT_EQ(b.simultaneous + b.sequential, b.total);
    }
    EXPECT_THROW(toric_budget(1), std::invalid_argument);
}

TEST(toric_frame, layout_matches_schedule) {
    for (int L = 2; L <= 5; L++) {
        ToricFrameLayout f = toric_frame_layout(L);
        ToricSchedule s = toric_schedule(L);
        EXPECT_EQ(f.num_qubits, static_cast<size_t>(2 * L * L));
        EXPECT_EQ(f.x_sites, s.tree_sites);
        EXPECT_EQ(f.z_sites.size(), static_cast<size_t>(L * L - 1));
        EXPECT_EQ(f.g1, s.g1);
        EXPECT_EQ(f.g2, s.g2);
    }
}

TEST(toric_frame, exact_step_gives_two_parity_checks) {
    ToricFrameLayout f = toric_frame_layout(2);
    Distribution law = toric_frame_law(2, 0.6, ParityStep::Exact);
    Distribution target = parity_check_law(3, 0.6);
    for (const auto *sites : {&f.x_sites, &f.z_sites}) {
        Distribution marg(8, 0.0);
        for (size_t i = 0; i < law.size(); i++) {
            size_t j = 0;
            for (size_t k = 0; k < 3; k++) {
                j |= ((i >> (*sites)[k]) & 1) << k;
            }
            marg[j] += law[i];
        }
        EXPECT_LT(total_variation(marg, target), 1e-13);
    }
}

TEST(toric_quantum, records_are_consistent) {
    for (int L : {2, 3, 4}) {
        ToricQuantumSampler sampler(L);
        Hamiltonian h = build_toric(L);
        for (uint64_t d = 0; d < 5; d++) {
            GibbsSampleRecord r = sampler.sample(0.7, 5, 0, d);
            EXPECT_EQ(r.syndrome, syndrome_of(r.state, h.terms));
            EXPECT_EQ(gf2_rank(r.state), h.num_qubits());
            double e = 0;
            for (int v : r.syndrome) {
                e -= v;
            }
            EXPECT_EQ(r.energy, e);
            ASSERT_TRUE(r.budget);
            EXPECT_EQ(*r.budget, toric_budget(L));
            EXPECT_EQ(r.branches.size(), 2u);
        }
    }
    GibbsSampleRecord a = sample_toric_quantum(3, 0.7, 1, 0, 4);
    GibbsSampleRecord b = sample_toric_quantum(3, 0.7, 1, 0, 4);
    EXPECT_EQ(record_jsonl(a, 4), record_jsonl(b, 4));
    EXPECT_THROW(sample_toric_quantum(1, 0.7, 1, 0, 0), std::invalid_argument);
}

TEST(toric_quantum, jsonl_carries_branch_and_budget) {
    GibbsSampleRecord r = sample_toric_quantum(2, 0.5, 3, 0, 0);
    std::string line = record_jsonl(r, 0);
    EXPECT_NE(line.find("\"branch\":["), std::string::npos);
    EXPECT_NE(line.find("\"budget\":{\"total\":8,\"simultaneous\":6,\"sequential\":2}"), std::string::npos);
}
