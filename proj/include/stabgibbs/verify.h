#ifndef STABGIBBS_VERIFY_H
#define STABGIBBS_VERIFY_H

#include <string>
#include <vector>

namespace stabgibbs {

struct CheckResult {
    std::string name;
    bool pass = false;
    std::string detail;
    double seconds = 0;
};

struct VerifyOptions {
    int L = 2;                // code size for the gibbs suite
    size_t max_qubits = 10;   // cap for dense checks
};

// Acceptance properties with their tolerances and time limits fixed here.
CheckResult check_cx_conjugation_table();   // six CX rules and the dense 4x4 oracle
CheckResult check_decoupling();             // RSC L<=6, toric L<=4 reach their canonical forms
CheckResult check_depth_and_locality();     // depth bounds and radius-sqrt(2) locality, L<=12
CheckResult check_classical_samplers();     // H0..H4 induced laws, n<=4
CheckResult check_parity_check_protocol();  // measurement protocol against the parity-check Gibbs law
CheckResult check_toric_quantum_sampler();  // toric measurement ensemble at L=2 and budgets for L<=6
CheckResult check_energy_estimates();       // Monte Carlo energies against exact values
CheckResult check_ground_and_logical_states();

/// Suites: conjugation, decoupling, depth, classical, gibbs, energy, ground, all.
/// Throws std::invalid_argument for an unknown suite.
std::vector<CheckResult> run_suite(const std::string &suite, const VerifyOptions &opts);
const std::vector<std::string> &suite_names();

}  // namespace stabgibbs

#endif
