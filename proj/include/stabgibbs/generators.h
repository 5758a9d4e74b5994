#ifndef STABGIBBS_GENERATORS_H
#define STABGIBBS_GENERATORS_H

#include <vector>

#include "stabgibbs/circuit.h"
#include "stabgibbs/hamiltonian.h"

namespace stabgibbs {

/// Row sweep on the rotated surface code: layer k collapses the X plaquettes of rows k and L-1-k onto a
/// single corner each, followed by classical XOR sweeps along the middle row towards its centre.
MappingPlan gen_rsc_mapping(int L);

/// Site bookkeeping of the toric constructions.
///
/// Stars are peeled along a spanning tree rooted at star (0,0): row 0 is covered by a path that runs
/// ceil(L/2) steps one way, each column hangs off row 0 with at most floor(L/2) steps. Every non-root
/// star collapses onto the tree edge joining it to its parent. The face images then live on the
/// non-tree edges, and are peeled the same way along the dual tree.
struct ToricSchedule {
    int L = 0;
    Circuit star_layers;             // exactly L local layers
    Circuit face_layers;             // local layers peeling the faces
    std::vector<size_t> tree_sites;  // X subsystem, L^2-1 sites
    std::vector<size_t> kept_sites;  // Z subsystem after face peeling, L^2-1 sites
    size_t g1 = 0;                   // Z1 lands here; free in the decoupled forms
    size_t g2 = 0;                   // Z2 lands here
    size_t root_star = 0;
    size_t root_face = 0;
};

ToricSchedule toric_schedule(int L);

/// Quantum stage of exactly L layers; classical stage brings the X subsystem to a parity check and the
/// Z subsystem to a loop over L^2 sites.
MappingPlan gen_toric_mapping(int L);

/// L+1 layers preparing the common +1 eigenstate of all plaquettes and both Z logicals from |0...0>.
Circuit gen_toric_groundstate(int L);

/// Star peeling, face peeling, then Hadamards on the X subsystem: two diagonal parity checks.
Circuit gen_w_gateset(int L);

/// Local CX tree funnelling the parity of `sites` onto `ancilla`; each site is a control exactly once.
/// Throws std::invalid_argument if the sites are not connected within distance sqrt(2).
Circuit gen_pseudo_parity(const QubitLayout &layout, const std::vector<size_t> &sites, size_t ancilla);

/// Pairwise merges of field-led chains, ceil(log2 n) layers on n qubits.
Circuit gen_chain_join(int n);

CanonicalPattern rsc_pattern(int L, bool diagonal = false);
CanonicalPattern toric_pattern(int L, bool diagonal = false);
CanonicalPattern w_pattern(int L);

}  // namespace stabgibbs

#endif
