#ifndef STABGIBBS_GF2_H
#define STABGIBBS_GF2_H

#include <cstdint>
#include <optional>
#include <vector>

#include "stabgibbs/pauli.h"

namespace stabgibbs {

/// Incremental row echelon basis over the symplectic vectors (x|z) of Pauli terms.
///
/// Every row remembers which inserted terms it is a product of, so dependent terms can be
/// expressed in terms of the independent ones.
class PauliBasis {
   public:
    explicit PauliBasis(size_t num_qubits);

    /// Inserts a term. Returns true if it was independent of the existing rows.
    /// Labels are assigned in insertion order, counting every call.
    bool insert(const PauliTerm &p);

    /// Labels of inserted terms whose product equals `p` up to sign, or nullopt if `p` is outside the span.
    std::optional<std::vector<size_t>> decompose(const PauliTerm &p) const;

    size_t rank() const {
        return rows_.size();
    }
    size_t num_inserted() const {
        return inserted_;
    }

   private:
    struct Row {
        std::vector<uint64_t> bits;
        std::vector<uint64_t> combo;
        size_t pivot;
    };
    std::vector<uint64_t> pack(const PauliTerm &p) const;
    void reduce(std::vector<uint64_t> &bits, std::vector<uint64_t> &combo) const;

    size_t n_;
    size_t inserted_ = 0;
    std::vector<Row> rows_;
};

size_t gf2_rank(const std::vector<PauliTerm> &terms);

/// Eigenvalue (+1/-1) of `p` on the stabilizer state fixed by `generators`, or 0 if `p` is not in the
/// group generated by them up to sign. Generators must commute pairwise.
int stabilizer_expectation(const std::vector<PauliTerm> &generators, const PauliTerm &p);

}  // namespace stabgibbs

#endif
