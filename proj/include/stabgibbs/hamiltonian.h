#ifndef STABGIBBS_HAMILTONIAN_H
#define STABGIBBS_HAMILTONIAN_H

#include <string>
#include <utility>
#include <vector>

#include "stabgibbs/pauli.h"

namespace stabgibbs {

enum class LayoutKind { OpenGrid, Torus };

/// Integer coordinates per qubit plus the metric used for locality audits.
///
/// Open grids use plain Euclidean distance. Tori wrap both axes and measure in units of the
/// plaquette diagonal (Euclidean distance divided by sqrt(2)), so that every pair of qubits sharing
/// a plaquette is within distance sqrt(2) on both lattices.
struct QubitLayout {
    LayoutKind kind = LayoutKind::OpenGrid;
    std::vector<std::pair<int, int>> coords;
    int width = 0;
    int height = 0;

    size_t size() const {
        return coords.size();
    }
    double distance(size_t a, size_t b) const;
    /// Index of the qubit at (x, y), wrapping on a torus. Throws if no qubit sits there.
    size_t index_of(int x, int y) const;

    static QubitLayout line(size_t n);
};

/// H = -sum(terms). Logicals are carried along for bookkeeping.
struct Hamiltonian {
    QubitLayout layout;
    std::vector<PauliTerm> terms;
    std::vector<std::pair<std::string, PauliTerm>> logicals;

    size_t num_qubits() const {
        return layout.size();
    }
    const PauliTerm &logical(const std::string &name) const;
};

Hamiltonian build_rsc(int L);
Hamiltonian build_toric(int L);

enum class ClassicalKind { UMF, H0, H1, H2, H3, H4, Loops };

ClassicalKind parse_classical_kind(const std::string &name);
std::string to_string(ClassicalKind kind);

/// Classical Hamiltonians on a line of n qubits (0-based sites).
///   UMF:   -sum_{i<n-1} Z_i, last qubit free
///   H1:    -sum Z_i
///   H2:    -sum Z_i Z_{i+1} - Z_{n-1}
///   H0:    chain over the first n-1 qubits with fields on both ends, last qubit free
///   H3:    ferromagnetic loop
///   H4:    -sum_{i<n-1} Z_i - prod_{i<n-1} Z_i, last qubit free
///   Loops: two loops of n/2 qubits each
Hamiltonian build_classical(ClassicalKind kind, int n);

/// Indices of a maximal independent subset, plus each dependent term written as a product of them.
struct GeneratorSplit {
    std::vector<size_t> independent;
    std::vector<std::pair<size_t, std::vector<size_t>>> dependencies;
};
GeneratorSplit independent_generators(const Hamiltonian &h);

/// Checks pairwise commutation of terms and that logicals commute with every term.
bool is_commuting(const Hamiltonian &h);

Hamiltonian permute_qubits(const Hamiltonian &h, const std::vector<size_t> &perm);

// ---------------------------------------------------------------------------
// Structural matching of decoupled Hamiltonians.

enum class ComponentKind { Free, Field, ChainOneEnd, ChainBothEnds, Loop, ParityCheck };

std::string to_string(ComponentKind kind);

struct PatternEntry {
    ComponentKind kind;
    char basis;  // 'X', 'Z', or '-' for free sites
    size_t length;
    size_t count;
};

struct CanonicalPattern {
    std::string name;
    std::vector<PatternEntry> entries;
};

/// A connected block of the interaction hypergraph.
///
/// Sites are ordered so that the block reads as its classical model: chains run towards the field
/// (ChainOneEnd ends on the field site), loops follow the cycle, parity checks list the sites whose
/// single-site terms appear.
struct MatchedComponent {
    ComponentKind kind;
    char basis;
    std::vector<size_t> sites;
    std::vector<size_t> terms;
};

struct MatchResult {
    bool matched = false;
    std::string reason;
    std::vector<MatchedComponent> components;
};

/// Throws std::invalid_argument if some term mixes X and Z.
MatchResult canonical_match(const Hamiltonian &h, const CanonicalPattern &pattern);

}  // namespace stabgibbs

#endif
