#ifndef STABGIBBS_PIPELINE_H
#define STABGIBBS_PIPELINE_H

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "stabgibbs/circuit.h"
#include "stabgibbs/classical.h"
#include "stabgibbs/hamiltonian.h"
#include "stabgibbs/record.h"

namespace stabgibbs {

/// Hybrid sampler for one code: draws the diagonal classical model of the code's MappingPlan, undoes
/// the classical stage on the bits and reports the stabilizer state reached by the inverse quantum
/// stage. All per-code work happens in the constructor.
class HybridSampler {
   public:
    HybridSampler(CodeKind code, int L);

    GibbsSampleRecord draw(double beta, Coin &coin) const;
    GibbsSampleRecord sample(double beta, uint64_t seed, uint64_t stream, uint64_t draw) const;

    /// Record of the sample whose diagonal-frame spins are `frame`.
    GibbsSampleRecord record(double beta, const Spins &frame) const;
    /// Diagonal-frame spins of one draw.
    Spins draw_frame(double beta, Coin &coin) const;

    const Hamiltonian &code_hamiltonian() const {
        return h_;
    }
    const MappingPlan &plan() const {
        return plan_;
    }

   private:
    CodeKind code_;
    int L_;
    Hamiltonian h_;
    MappingPlan plan_;
    std::vector<MatchedComponent> components_;
    std::vector<PauliTerm> preimages_;                       // state generator for bit k before the classical stage
    std::vector<std::pair<int, std::vector<size_t>>> diag_;  // code terms in the diagonal frame
};

/// Draws j = 0..n_samples-1 use stream 0, draw j; output does not depend on `threads`.
std::vector<GibbsSampleRecord> gibbs_sample_code(CodeKind code, int L, double beta, size_t n_samples,
                                                 uint64_t seed, unsigned threads = 1);

/// Exact law of the syndrome vector (bit k set when term k reads -1) of the hybrid sampler.
Distribution hybrid_syndrome_law(CodeKind code, int L, double beta);
/// Boltzmann law of the syndrome vector, by summing exp(-beta E) over all frame configurations.
Distribution exact_syndrome_law(CodeKind code, int L, double beta);

struct EnergyEstimate {
    double mean = 0;
    double se = 0;
    size_t n = 0;
};

/// Sample mean and standard error. Throws std::invalid_argument for fewer than two energies.
EnergyEstimate estimate_energy(const std::vector<double> &energies);
EnergyEstimate estimate_energy(const std::vector<GibbsSampleRecord> &records);

/// Mean energy of the code's Gibbs state (independent terms for the RSC, two loops for the toric code).
double exact_code_energy(CodeKind code, int L, double beta);

/// {mean_energy, se, n, beta, code, L} plus exact and z when given.
std::string summary_json(const EnergyEstimate &e, CodeKind code, int L, double beta,
                         std::optional<double> exact = std::nullopt);

struct GroundStateReport {
    bool stabilizers_ok = false;  // every code term reads +1
    bool logicals_ok = false;     // ZL (rsc) or Z1, Z2 (toric) read +1
    bool matches_circuit = true;  // toric: same state as gen_toric_groundstate
    std::string detail;
    bool ok() const {
        return stabilizers_ok && logicals_ok && matches_circuit;
    }
};

GroundStateReport ground_state_check(CodeKind code, int L);

}  // namespace stabgibbs

#endif
