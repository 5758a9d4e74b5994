#include <cmath>
#include <gtest/gtest.h>
#include <map>

#include "stabgibbs/classical.h"

using namespace stabgibbs;

namespace {

const ClassicalKind kSamplerKinds[] = {ClassicalKind::H0, ClassicalKind::H1, ClassicalKind::H2,
                                       ClassicalKind::H3, ClassicalKind::H4};

double brute_mean_energy(ClassicalKind kind, int n, double beta) {
    Hamiltonian h = build_classical(kind, n);
    Distribution p = boltzmann_distribution(h, beta);
    double e = 0;
    for (size_t i = 0; i < p.size(); i++) {
        e += p[i] * classical_energy(h, index_to_spins(i, h.num_qubits()));
    }
    return e;
}

}  // namespace

TEST(classical, induced_law_equals_boltzmann) {
    for (ClassicalKind kind : kSamplerKinds) {
        int lo = kind == ClassicalKind::H1 ? 1 : kind == ClassicalKind::H2 ? 2 : 3;
        for (int n = lo; n <= 5; n++) {
            for (double beta : {-1.0, 0.0, 0.3, 0.5, 0.7, 1.0}) {
                double tv = total_variation(induced_distribution(kind, n, beta), exact_distribution(kind, n, beta));
                EXPECT_LT(tv, 1e-12) << to_string(kind) << " n=" << n << " beta=" << beta;
            }
        }
    }
}

TEST(classical, umf_and_loops_laws) {
    EXPECT_LT(total_variation(induced_distribution(ClassicalKind::UMF, 4, 0.6),
                              exact_distribution(ClassicalKind::UMF, 4, 0.6)),
              1e-12);
    EXPECT_LT(total_variation(induced_distribution(ClassicalKind::Loops, 8, -0.4),
                              exact_distribution(ClassicalKind::Loops, 8, -0.4)),
              1e-12);
}

TEST(classical, field_spin_probability) {
    auto p = induced_distribution(ClassicalKind::H1, 1, 1.0);
    EXPECT_NEAR(p[1], 1 / (1 + std::exp(2.0)), 1e-15);
    EXPECT_NEAR(p[1], 0.1192029, 1e-7);
    auto flat = induced_distribution(ClassicalKind::H1, 3, 0.0);
    for (double v : flat) {
        EXPECT_DOUBLE_EQ(v, 0.125);
    }
    auto cold = exact_distribution(ClassicalKind::H1, 1, 1.0);
    EXPECT_NEAR(cold[0], std::exp(1.0) / (std::exp(1.0) + std::exp(-1.0)), 1e-15);
}

TEST(classical, extreme_beta_is_stable) {
    for (ClassicalKind kind : kSamplerKinds) {
        auto p = induced_distribution(kind, 4, 50.0);
        double total = 0;
        for (double v : p) {
            EXPECT_TRUE(std::isfinite(v));
            total += v;
        }
        EXPECT_NEAR(total, 1.0, 1e-12);
        EXPECT_LT(total_variation(p, exact_distribution(kind, 4, 50.0)), 1e-12);
    }
    // Loop ground states: all aligned.
    auto loop = induced_distribution(ClassicalKind::H3, 3, 40.0);
    EXPECT_NEAR(loop[0] + loop[7], 1.0, 1e-12);
    // H2 ground state at n=2: both spins +1 (the field fixes the end, the coupling the rest).
    auto h2 = induced_distribution(ClassicalKind::H2, 2, 40.0);
    EXPECT_NEAR(h2[0], 1.0, 1e-12);
}

TEST(classical, normalization_and_symmetric_cases) {
    auto p = exact_distribution(ClassicalKind::H3, 3, 0.0);
    for (double v : p) {
        EXPECT_DOUBLE_EQ(v, 0.125);
    }
    auto q = exact_distribution(ClassicalKind::H0, 6, 0.9);
    double total = 0;
    for (double v : q) {
        total += v;
    }
    EXPECT_NEAR(total, 1.0, 1e-14);
    EXPECT_THROW(exact_distribution(ClassicalKind::H1, 21, 0.1), std::invalid_argument);
    EXPECT_THROW(induced_distribution(ClassicalKind::H1, 17, 0.1), std::invalid_argument);
}

TEST(classical, mean_energy_closed_forms) {
    EXPECT_NEAR(exact_mean_energy(ClassicalKind::UMF, 6, 0.4), -5 * std::tanh(0.4), 1e-15);
    EXPECT_NEAR(exact_mean_energy(ClassicalKind::H3, 3, 0.0), 0.0, 1e-15);
    for (ClassicalKind kind : {ClassicalKind::H0, ClassicalKind::H1, ClassicalKind::H2, ClassicalKind::H3,
                               ClassicalKind::H4, ClassicalKind::UMF}) {
        for (int n = 3; n <= 7; n++) {
            for (double beta : {-1.0, 0.3, 1.0}) {
                EXPECT_NEAR(exact_mean_energy(kind, n, beta), brute_mean_energy(kind, n, beta), 1e-12)
                    << to_string(kind) << " " << n << " " << beta;
            }
        }
    }
    EXPECT_NEAR(exact_mean_energy(ClassicalKind::Loops, 8, 0.7), brute_mean_energy(ClassicalKind::Loops, 8, 0.7),
                1e-12);
}

TEST(classical, log_partition_functions) {
    for (int m : {2, 3, 5}) {
        Hamiltonian h = build_classical(ClassicalKind::H4, m + 1);
        double z = 0;
        for (size_t i = 0; i < (size_t{1} << (m + 1)); i++) {
            z += std::exp(-0.8 * classical_energy(h, index_to_spins(i, m + 1)));
        }
        EXPECT_NEAR(log_z_parity_check(m, 0.8) + std::log(2.0), std::log(z), 1e-12);
    }
    Hamiltonian loop = build_classical(ClassicalKind::H3, 5);
    double z = 0;
    for (size_t i = 0; i < 32; i++) {
        z += std::exp(0.8 * -classical_energy(loop, index_to_spins(i, 5)));
    }
    EXPECT_NEAR(log_z_loop(5, 0.8), std::log(z), 1e-12);
}

TEST(classical, parity_statistic_matches_tanh_form) {
    // For H4 on n sites the first n-1 spins carry fields and their product is coupled:
    // E[prod] = d ln Z / d(coupling) evaluated in closed form through the two parity sectors.
    int n = 5, m = n - 1;
    double beta = 0.7;
    auto p = induced_distribution(ClassicalKind::H4, n, beta);
    double got = 0;
    for (size_t i = 0; i < p.size(); i++) {
        Spins s = index_to_spins(i, n);
        int prod = 1;
        for (int k = 0; k < m; k++) {
            prod *= s[k];
        }
        got += p[i] * prod;
    }
    double t = std::tanh(beta);
    double tm = std::pow(t, m);
    double want = (std::sinh(beta) + std::cosh(beta) * tm) / (std::cosh(beta) + std::sinh(beta) * tm);
    EXPECT_NEAR(got, want, 1e-12);
}

TEST(classical, seeded_sampling_is_deterministic) {
    SamplerConfig cfg{0.5, 42, 6};
    for (uint64_t d = 0; d < 20; d++) {
        EXPECT_EQ(sample_h3(cfg, 0, d), sample_h3(cfg, 0, d));
    }
    EXPECT_NE(sample_h1({0.0, 1, 64}, 64), sample_h1({0.0, 2, 64}, 64));
    EXPECT_NE(sample_h1({0.0, 1, 64}, 64, 0, 0), sample_h1({0.0, 1, 64}, 64, 0, 1));
    EXPECT_NE(sample_h1({0.0, 1, 64}, 64, 0, 0), sample_h1({0.0, 1, 64}, 64, 1, 0));
    EXPECT_THROW(sample_h1({0.0, 1, 4}, 3), std::invalid_argument);
}

TEST(classical, h0_chi_square_against_brute_force) {
    const int n = 4, draws = 200000;
    SamplerConfig cfg{0.3, 7, n};
    std::vector<double> counts(16, 0);
    for (int d = 0; d < draws; d++) {
        counts[spins_to_index(sample_h0(cfg, 0, static_cast<uint64_t>(d)))]++;
    }
    auto p = exact_distribution(ClassicalKind::H0, n, 0.3);
    double chi2 = 0;
    for (size_t i = 0; i < 16; i++) {
        double e = p[i] * draws;
        chi2 += (counts[i] - e) * (counts[i] - e) / e;
    }
    // 15 degrees of freedom: the 0.999 quantile is 37.7.
    EXPECT_LT(chi2, 37.7);
}

TEST(classical, loop_energy_monte_carlo) {
    const int n = 6, draws = 100000;
    double beta = 0.5;
    SamplerConfig cfg{beta, 11, n};
    Hamiltonian h = build_classical(ClassicalKind::H3, n);
    double sum = 0, sq = 0;
    for (int d = 0; d < draws; d++) {
        double e = classical_energy(h, sample_h3(cfg, 0, static_cast<uint64_t>(d)));
        sum += e;
        sq += e * e;
    }
    double mean = sum / draws;
    double se = std::sqrt((sq / draws - mean * mean) / draws);
    EXPECT_LT(std::abs(mean - exact_mean_energy(ClassicalKind::H3, n, beta)), 3 * se);
}

TEST(classical, jsonl_format) {
    EXPECT_EQ(spins_jsonl({1, -1}, -2.0, 0, 3), R"({"spins":[1,-1],"energy":-2.0,"stream":0,"draw":3})");
}

TEST(classical, rng_uniform_range_and_mix) {
    CounterRng r(1, 2, 3);
    double lo = 1, hi = 0, sum = 0;
    for (int i = 0; i < 10000; i++) {
        double u = r.uniform();
        lo = std::min(lo, u);
        hi = std::max(hi, u);
        sum += u;
    }
    EXPECT_GE(lo, 0.0);
    EXPECT_LT(hi, 1.0);
    EXPECT_NEAR(sum / 10000, 0.5, 0.02);
    EXPECT_EQ(r.counter(), 10000u);
}
