#ifndef STABGIBBS_CIRCUIT_H
#define STABGIBBS_CIRCUIT_H

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "stabgibbs/hamiltonian.h"
#include "stabgibbs/pauli.h"

namespace stabgibbs {

enum class GateKind { CX, H, X, RY };

/// For RY, `angle` is theta in exp(-i Y theta), so |0> -> cos(theta)|0> + sin(theta)|1>.
struct Gate {
    GateKind kind;
    size_t a;       // control for CX, the acted-on site otherwise
    size_t b = 0;   // CX target
    double angle = 0;

    static Gate cx(size_t control, size_t target) {
        return {GateKind::CX, control, target, 0};
    }
    static Gate h(size_t q) {
        return {GateKind::H, q, 0, 0};
    }
    static Gate x(size_t q) {
        return {GateKind::X, q, 0, 0};
    }
    static Gate ry(size_t q, double theta) {
        return {GateKind::RY, q, 0, theta};
    }
    bool operator==(const Gate &) const = default;
};

enum class Stage { Quantum, Classical };

struct Layer {
    std::vector<Gate> gates;
    Stage stage = Stage::Quantum;
    bool operator==(const Layer &) const = default;
};

struct Circuit {
    size_t num_qubits = 0;
    std::vector<Layer> layers;

    size_t depth() const {
        return layers.size();
    }
    size_t gate_count() const;
    void append(const Circuit &other);
    /// Same gates with layer order reversed; the inverse for self-inverse gate sets.
    Circuit reversed() const;
    bool operator==(const Circuit &) const = default;
};

struct DecoupledFrame {
    std::vector<size_t> q_x;
    std::vector<size_t> q_z;
};

struct MappingPlan {
    Circuit quantum;
    Circuit classical;
    std::vector<size_t> hadamard_sites;
    DecoupledFrame frame;
};

/// Conjugates one term gate by gate in layer order (P -> U P U^dagger). Throws on RY.
void apply_circuit_to_term(const Circuit &c, PauliTerm &term);

/// Conjugates every term and logical. Throws std::invalid_argument on RY or size mismatch.
Hamiltonian apply_to_hamiltonian(const Circuit &c, const Hamiltonian &h);

/// The Hadamard layer of a plan as a one-layer circuit.
Circuit hadamard_layer(size_t num_qubits, const std::vector<size_t> &sites);

/// Quantum stage then classical stage, leaving X-type terms as X.
Hamiltonian apply_plan_decoupled(const MappingPlan &plan, const Hamiltonian &h);

/// Quantum stage, Hadamard layer, classical stage: the diagonal classical model.
Hamiltonian apply_plan_diagonal(const MappingPlan &plan, const Hamiltonian &h);

/// Runs CX/X gates on a computational basis state (CX: b_t ^= b_c). Throws on H or RY.
void run_xor(const Circuit &c, std::vector<uint8_t> &bits);
/// Same as run_xor on the reversed circuit: inverts run_xor.
void run_xor_inverse(const Circuit &c, std::vector<uint8_t> &bits);

/// Relabels a circuit on k qubits onto `sites` of a larger register.
Circuit embed(const Circuit &c, const std::vector<size_t> &sites, size_t num_qubits);

struct Violation {
    size_t layer;
    std::string detail;
};

std::vector<Violation> audit_locality(const Circuit &c, const QubitLayout &layout, double radius);
/// Flags layers whose gates are neither disjoint nor commuting CX sets (controls and targets disjoint).
std::vector<Violation> audit_layer_commutation(const Circuit &c);

/// Line-oriented text format:
///   QUBITS n
///   LAYER quantum|classical
///   CX c t | H q | X q | RY q angle
/// with '#' comments.
std::string export_circuit(const Circuit &c);
Circuit parse_circuit(std::string_view text);

/// Clifford-only export with TICK between layers. Throws on RY.
std::string export_stim(const Circuit &c);

}  // namespace stabgibbs

#endif
