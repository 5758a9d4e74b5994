#ifndef STABGIBBS_CLASSICAL_H
#define STABGIBBS_CLASSICAL_H

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "stabgibbs/hamiltonian.h"
#include "stabgibbs/rng.h"

namespace stabgibbs {

/// +1/-1 per qubit.
using Spins = std::vector<int>;

/// Source of biased coins. Samplers draw all their randomness through it, which lets the same code
/// either sample (RngCoin) or have its output law enumerated exactly (induced_distribution).
class Coin {
   public:
    virtual ~Coin() = default;
    /// Returns true with probability p.
    virtual bool flip(double p) = 0;
};

class RngCoin : public Coin {
   public:
    explicit RngCoin(CounterRng rng) : rng_(rng) {
    }
    bool flip(double p) override {
        return rng_.uniform() < p;
    }

   private:
    CounterRng rng_;
};

struct SamplerConfig {
    double beta = 0;
    uint64_t seed = 0;
    int n = 1;
};

/// Spin in {+1,-1} with P(+1) = e^{b}/(e^{b}+e^{-b}) for log-weight difference 2b.
int draw_field_spin(Coin &coin, double b);

/// n spins with field beta, then M-n fair spins.
Spins draw_h1(int n, int M, double beta, Coin &coin);
/// Chain on n sites with the field on the last one.
Spins draw_h2(int n, double beta, Coin &coin);
/// Chain on the first n-1 sites with fields at both ends; the last site is fair.
Spins draw_h0(int n, double beta, Coin &coin);
/// Fields on the first n-1 sites plus their product; the last site is fair.
Spins draw_h4(int n, double beta, Coin &coin);
/// Ferromagnetic loop on n sites.
Spins draw_h3(int n, double beta, Coin &coin);
/// Any ClassicalKind on n sites, laid out as build_classical(kind, n).
Spins draw_classical(ClassicalKind kind, int n, double beta, Coin &coin);

Spins sample_h1(const SamplerConfig &cfg, int M, uint64_t stream = 0, uint64_t draw = 0);
Spins sample_h2(const SamplerConfig &cfg, uint64_t stream = 0, uint64_t draw = 0);
Spins sample_h0(const SamplerConfig &cfg, uint64_t stream = 0, uint64_t draw = 0);
Spins sample_h4(const SamplerConfig &cfg, uint64_t stream = 0, uint64_t draw = 0);
Spins sample_h3(const SamplerConfig &cfg, uint64_t stream = 0, uint64_t draw = 0);
Spins sample_classical(ClassicalKind kind, const SamplerConfig &cfg, uint64_t stream = 0, uint64_t draw = 0);

/// In-place spin XOR: s_target *= s_control (bit b_target ^= b_control).
void spin_xor(Spins &s, size_t control, size_t target);

/// Probability tables are indexed by basis state: bit k set means qubit k has spin -1.
using Distribution = std::vector<double>;

/// -sum_k sign_k prod_{q in term k} s_q for Z-type terms. Throws on any X or Y factor.
double classical_energy(const Hamiltonian &h, const Spins &s);

/// Boltzmann law of a Z-type Hamiltonian by enumeration (n <= 20).
Distribution boltzmann_distribution(const Hamiltonian &h, double beta);
Distribution exact_distribution(ClassicalKind kind, int n, double beta);

/// Exact output law of a coin-driven sampler: every coin sequence is replayed and weighted.
Distribution enumerate_law(size_t num_qubits, const std::function<Spins(Coin &)> &sampler);
/// Output law of draw_classical(kind, n, beta) (n <= 16).
Distribution induced_distribution(ClassicalKind kind, int n, double beta);

double total_variation(const Distribution &a, const Distribution &b);
size_t spins_to_index(const Spins &s);
Spins index_to_spins(size_t index, size_t n);

/// Closed-form ln Z for the parity check on m sites and the loop on n sites.
double log_z_parity_check(int m, double beta);
double log_z_loop(int n, double beta);
/// Mean energy from transfer-matrix closed forms.
double exact_mean_energy(ClassicalKind kind, int n, double beta);

/// {"spins":[...],"energy":e,"stream":k,"draw":j}
std::string spins_jsonl(const Spins &s, double energy, uint64_t stream, uint64_t draw);

}  // namespace stabgibbs

#endif
