#ifndef STABGIBBS_RECORD_H
#define STABGIBBS_RECORD_H

#include <optional>
#include <string>
#include <vector>

#include "stabgibbs/pauli.h"

namespace stabgibbs {

enum class CodeKind { RSC, Toric };

std::string to_string(CodeKind code);
/// Accepts "rsc" and "toric". Throws std::invalid_argument otherwise.
CodeKind parse_code(const std::string &s);

struct MeasurementBudget {
    size_t total = 0;
    size_t simultaneous = 0;
    size_t sequential = 0;
    bool operator==(const MeasurementBudget &) const = default;
};

/// One member of the Gibbs ensemble: a stabilizer state given by signed generators.
struct GibbsSampleRecord {
    CodeKind code = CodeKind::RSC;
    int L = 0;
    double beta = 0;
    std::vector<int> syndrome;         // eigenvalue of every code term, in build order
    std::vector<PauliTerm> state;      // full-rank signed generators
    double energy = 0;                 // -sum(syndrome)
    std::vector<int> branches;         // parity readouts of the measurement sampler, if any
    std::optional<MeasurementBudget> budget;
};

/// Syndrome of `terms` on the state, via stabilizer_expectation. Throws std::logic_error if a term is
/// not determined by the state.
std::vector<int> syndrome_of(const std::vector<PauliTerm> &state, const std::vector<PauliTerm> &terms);

/// One JSON object per line: code, L, beta, energy, syndrome, state, and branch/budget when present.
std::string record_jsonl(const GibbsSampleRecord &r, unsigned long long draw);

}  // namespace stabgibbs

#endif
