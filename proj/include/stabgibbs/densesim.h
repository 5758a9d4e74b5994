#ifndef STABGIBBS_DENSESIM_H
#define STABGIBBS_DENSESIM_H

#include <Eigen/Dense>
#include <string>
#include <utility>
#include <vector>

#include "stabgibbs/circuit.h"
#include "stabgibbs/hamiltonian.h"
#include "stabgibbs/measurement.h"

namespace stabgibbs {

constexpr size_t kMaxDenseQubits = 10;

using DenseMatrix = Eigen::MatrixXcd;

/// Amplitudes indexed by basis state, bit k of the index being qubit k (|1> = spin -1).
struct StateVector {
    size_t num_qubits = 0;
    Eigen::VectorXcd amp;

    static StateVector basis(size_t num_qubits, size_t index);
    double norm() const {
        return amp.norm();
    }
};

void apply_gate(StateVector &s, const Gate &g);
StateVector apply_circuit(StateVector s, const Circuit &c);

/// Probability and normalized post-measurement state of each Z outcome on qubit q (0 then 1).
/// Outcomes with zero probability are omitted.
struct MeasurementOutcome {
    int bit;
    double probability;
    StateVector state;
};
std::vector<MeasurementOutcome> measure_qubit(const StateVector &s, size_t q);

DenseMatrix pauli_matrix(const PauliTerm &p);
/// P * m and m * P without forming P densely.
DenseMatrix pauli_left(const PauliTerm &p, const DenseMatrix &m);
DenseMatrix pauli_right(const DenseMatrix &m, const PauliTerm &p);
DenseMatrix density(const StateVector &s);
DenseMatrix circuit_unitary(const Circuit &c);

/// exp(-beta H)/Z for H = -sum terms, via prod_k (I + tanh(beta) P_k). Requires commuting terms.
DenseMatrix exact_gibbs(const Hamiltonian &h, double beta);

/// sum_k p_k |psi_k><psi_k|.
DenseMatrix ensemble_density(const std::vector<std::pair<double, StateVector>> &members);

double trace_distance(const DenseMatrix &a, const DenseMatrix &b);

struct ConjugationReport {
    size_t terms_checked = 0;
    double max_deviation = 0;
};

/// Compares the tracked image of every term and logical with the dense U P U^dagger.
ConjugationReport verify_conjugation(const Circuit &c, const Hamiltonian &h);

/// Diagonal density matrix of a law over basis states.
DenseMatrix diagonal_density(const Distribution &p);

/// Circuit-level run of the parity-check measurement protocol on n+1 data qubits and one ancilla: every
/// measurement outcome is enumerated as a branch and the ancilla is traced out at the end.
DenseMatrix parity_check_protocol_density(int n, double beta);

/// Ensemble of the toric measurement sampler: W^dagger diag(frame law) W.
DenseMatrix toric_protocol_density(int L, double beta, ParityStep step = ParityStep::Protocol);

}  // namespace stabgibbs

#endif
