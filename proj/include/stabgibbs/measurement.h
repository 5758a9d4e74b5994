#ifndef STABGIBBS_MEASUREMENT_H
#define STABGIBBS_MEASUREMENT_H

#include <cstdint>
#include <vector>

#include "stabgibbs/classical.h"
#include "stabgibbs/record.h"

namespace stabgibbs {

/// theta = atan(e^{-beta}); RY(theta)|0> then gives P(-1) = sin^2(theta) = 1/(1+e^{2 beta}).
double rotation_angle(double beta);

struct BranchWeights {
    double pi0 = 0.5;  // even parity
    double pi1 = 0.5;
};

/// Parity statistics of n_plus_1 independent field-beta spins.
BranchWeights branch_probabilities(int n_plus_1, double beta);

/// Spin for one more site with P(+1)/P(-1) = exp(2 beta (1 + prod x)).
int classical_extend(const Spins &x, double beta, Coin &coin);

/// m field-beta spins conditioned on their product being `parity`.
Spins draw_parity_conditioned(int m, double beta, int parity, Coin &coin);

struct QuantumSample {
    Spins spins;
    std::vector<int> branches;
    MeasurementBudget budget;
    size_t depth = 0;  // classical post-processing depth, loop sampler only
};

/// Parity-check protocol on n+1 sites (n even): rotate, read the parity ancilla, read the data
/// conditioned on that parity, then extend the first n spins by one site. The odd branch flips the
/// data, extends at -beta and flips everything back.
QuantumSample draw_parity_check_quantum(int n, double beta, Coin &coin);
QuantumSample sample_parity_check_quantum(int n, const SamplerConfig &cfg, uint64_t stream, uint64_t draw);

/// Exact output law over n+1 spins by enumerating every branch.
Distribution parity_check_quantum_law(int n, double beta);

/// Ising loop on n_plus_2 sites: parity check on n+1 sites, chain join, then fan-out from a fair
/// last site.
QuantumSample draw_ising_loop_quantum(int n_plus_2, double beta, Coin &coin);
QuantumSample sample_ising_loop_quantum(int n_plus_2, const SamplerConfig &cfg, uint64_t stream, uint64_t draw);
Distribution ising_loop_quantum_law(int n_plus_2, double beta);

MeasurementBudget parity_check_budget(int n);
MeasurementBudget ising_loop_budget(int n_plus_2);
MeasurementBudget toric_budget(int L);

/// How each toric subsystem's parity check is drawn. Exact replaces the measurement protocol with a
/// direct draw from the parity-check law; it is only used to localize errors of the protocol.
enum class ParityStep { Protocol, Exact };

/// Loop sampler with the parity-check stage swapped per `step`.
QuantumSample draw_ising_loop_quantum(int n_plus_2, double beta, Coin &coin, ParityStep step);

/// Where gen_w_gateset leaves the two parity checks and the two free sites.
struct ToricFrameLayout {
    int L = 0;
    size_t num_qubits = 0;
    std::vector<size_t> x_sites;  // parity check coming from the stars
    std::vector<size_t> z_sites;  // parity check coming from the faces
    size_t g1 = 0;
    size_t g2 = 0;
};
ToricFrameLayout toric_frame_layout(int L);

/// Sample in the frame of gen_w_gateset: each subsystem holds a parity-check sample, g1 and g2 are fair.
/// Drawing the parity checks stands in for V, the ancilla readout and V^dagger with the pseudo parity
/// circuits of each subsystem: on basis states they only reveal the parity.
struct ToricFrameSample {
    Spins frame;
    std::vector<int> branches;
};
ToricFrameSample draw_toric_frame(const ToricFrameLayout &layout, double beta, Coin &coin,
                                  ParityStep step = ParityStep::Protocol);

/// Frame law over 2L^2 spins (L = 2 only in practice; capped at 16 sites).
Distribution toric_frame_law(int L, double beta, ParityStep step = ParityStep::Protocol);

/// Precomputed W-frame data for turning frame samples into toric records.
class ToricQuantumSampler {
   public:
    explicit ToricQuantumSampler(int L);

    GibbsSampleRecord draw(double beta, Coin &coin, ParityStep step = ParityStep::Protocol) const;
    GibbsSampleRecord sample(double beta, uint64_t seed, uint64_t stream, uint64_t draw) const;
    /// Record for a given frame sample.
    GibbsSampleRecord record(double beta, const ToricFrameSample &s) const;
    const ToricFrameLayout &layout() const {
        return layout_;
    }

   private:
    ToricFrameLayout layout_;
    std::vector<PauliTerm> preimages_;                         // W^dagger Z_k W
    std::vector<std::pair<int, std::vector<size_t>>> diag_;    // code terms in the frame: sign, support
    MeasurementBudget budget_;
};

GibbsSampleRecord sample_toric_quantum(int L, double beta, uint64_t seed, uint64_t stream, uint64_t draw);

}  // namespace stabgibbs

#endif
