#ifndef STABGIBBS_PAULI_H
#define STABGIBBS_PAULI_H

#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace stabgibbs {

/// Signed Hermitian Pauli string stored as packed X and Z bit planes.
///
/// Site q carries X if only the x bit is set, Z if only the z bit is set and Y if both are set.
/// The overall coefficient is +1 or -1.
class PauliTerm {
   public:
    PauliTerm() = default;
    explicit PauliTerm(size_t num_qubits);

    size_t num_qubits() const {
        return n_;
    }
    bool x(size_t q) const {
        return (xs_[q >> 6] >> (q & 63)) & 1;
    }
    bool z(size_t q) const {
        return (zs_[q >> 6] >> (q & 63)) & 1;
    }
    bool negative() const {
        return neg_;
    }
    int sign() const {
        return neg_ ? -1 : +1;
    }

    void set_x(size_t q, bool v);
    void set_z(size_t q, bool v);
    void set_negative(bool v) {
        neg_ = v;
    }
    void flip_sign() {
        neg_ = !neg_;
    }

    /// Letter at a site: one of 'I', 'X', 'Y', 'Z'.
    char letter(size_t q) const;

    size_t weight() const;
    std::vector<size_t> support() const;
    bool is_identity() const;
    bool is_x_type() const;  // no Z or Y factors
    bool is_z_type() const;  // no X or Y factors

    const std::vector<uint64_t> &x_words() const {
        return xs_;
    }
    const std::vector<uint64_t> &z_words() const {
        return zs_;
    }
    std::vector<uint64_t> &x_words() {
        return xs_;
    }
    std::vector<uint64_t> &z_words() {
        return zs_;
    }

    /// Renders e.g. "-Z0*Z3"; the identity renders as "I" (or "-I").
    std::string str() const;

    bool operator==(const PauliTerm &other) const = default;

   private:
    size_t n_ = 0;
    std::vector<uint64_t> xs_;
    std::vector<uint64_t> zs_;
    bool neg_ = false;
};

PauliTerm make_pauli(size_t num_qubits, const std::vector<std::pair<size_t, char>> &factors, int sign = +1);

/// Parses the `str()` grammar. Factors may come in any order but sites must be distinct.
PauliTerm parse_pauli(std::string_view text, size_t num_qubits);

// In-place conjugation P -> g P g for the self-inverse gates CX, H and X.
void apply_cx(PauliTerm &term, size_t control, size_t target);
void apply_h(PauliTerm &term, size_t site);
void apply_x(PauliTerm &term, size_t site);

PauliTerm conjugate_cx(PauliTerm term, size_t control, size_t target);
PauliTerm conjugate_h(PauliTerm term, size_t site);
PauliTerm conjugate_x(PauliTerm term, size_t site);

bool commutes(const PauliTerm &a, const PauliTerm &b);

/// Product a*b. Throws std::domain_error if the product carries an imaginary phase.
PauliTerm multiply(const PauliTerm &a, const PauliTerm &b);

/// In-place a = a*b.
void multiply_into(PauliTerm &a, const PauliTerm &b);

}  // namespace stabgibbs

#endif
