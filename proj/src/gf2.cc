#include "stabgibbs/gf2.h"

#include <bit>
#include <stdexcept>

namespace stabgibbs {

PauliBasis::PauliBasis(size_t num_qubits) : n_(num_qubits) {
}

std::vector<uint64_t> PauliBasis::pack(const PauliTerm &p) const {
    if (p.num_qubits() != n_) {
        throw std::invalid_argument("PauliBasis: size mismatch");
    }
    std::vector<uint64_t> bits = p.x_words();
    bits.insert(bits.end(), p.z_words().begin(), p.z_words().end());
    return bits;
}

void PauliBasis::reduce(std::vector<uint64_t> &bits, std::vector<uint64_t> &combo) const {
    for (const Row &r : rows_) {
        if ((bits[r.pivot >> 6] >> (r.pivot & 63)) & 1) {
            for (size_t k = 0; k < bits.size(); k++) {
                bits[k] ^= r.bits[k];
            }
            if (combo.size() < r.combo.size()) {
                combo.resize(r.combo.size(), 0);
            }
            for (size_t k = 0; k < r.combo.size(); k++) {
                combo[k] ^= r.combo[k];
            }
        }
    }
}

bool PauliBasis::insert(const PauliTerm &p) {
    size_t label = inserted_++;
    std::vector<uint64_t> bits = pack(p);
    std::vector<uint64_t> combo(label / 64 + 1, 0);
    combo[label / 64] |= uint64_t{1} << (label % 64);
    reduce(bits, combo);
    for (size_t k = 0; k < bits.size(); k++) {
        if (bits[k]) {
            size_t pivot = k * 64 + std::countr_zero(bits[k]);
            rows_.push_back(Row{std::move(bits), std::move(combo), pivot});
            return true;
        }
    }
    return false;
}

std::optional<std::vector<size_t>> PauliBasis::decompose(const PauliTerm &p) const {
    std::vector<uint64_t> bits = pack(p);
    std::vector<uint64_t> combo;
    reduce(bits, combo);
    for (uint64_t w : bits) {
        if (w) {
            return std::nullopt;
        }
    }
    std::vector<size_t> labels;
    for (size_t k = 0; k < combo.size(); k++) {
        uint64_t m = combo[k];
        while (m) {
            labels.push_back(k * 64 + std::countr_zero(m));
            m &= m - 1;
        }
    }
    return labels;
}

size_t gf2_rank(const std::vector<PauliTerm> &terms) {
    if (terms.empty()) {
        return 0;
    }
    PauliBasis b(terms.front().num_qubits());
    for (const auto &t : terms) {
        b.insert(t);
    }
    return b.rank();
}

int stabilizer_expectation(const std::vector<PauliTerm> &generators, const PauliTerm &p) {
    PauliBasis b(p.num_qubits());
    for (const auto &g : generators) {
        b.insert(g);
    }
    auto labels = b.decompose(p);
    if (!labels) {
        return 0;
    }
    PauliTerm prod(p.num_qubits());
    for (size_t k : *labels) {
        multiply_into(prod, generators[k]);
    }
    return prod.negative() == p.negative() ? +1 : -1;
}

}  // namespace stabgibbs
