#include "stabgibbs/record.h"

#include <json.hpp>
#include <stdexcept>

#include "stabgibbs/gf2.h"

namespace stabgibbs {

std::string to_string(CodeKind code) {
    return code == CodeKind::RSC ? "rsc" : "toric";
}

CodeKind parse_code(const std::string &s) {
    if (s == "rsc") {
        return CodeKind::RSC;
    }
    if (s == "toric") {
        return CodeKind::Toric;
    }
    throw std::invalid_argument("unknown code '" + s + "' (expected rsc or toric)");
}

std::vector<int> syndrome_of(const std::vector<PauliTerm> &state, const std::vector<PauliTerm> &terms) {
    std::vector<int> out;
    out.reserve(terms.size());
    for (const auto &t : terms) {
        int v = stabilizer_expectation(state, t);
        if (v == 0) {
            throw std::logic_error("syndrome_of: " + t.str() + " is not fixed by the state");
        }
        out.push_back(v);
    }
    return out;
}

std::string record_jsonl(const GibbsSampleRecord &r, unsigned long long draw) {
    nlohmann::ordered_json j;
    j["code"] = to_string(r.code);
    j["L"] = r.L;
    j["beta"] = r.beta;
    j["draw"] = draw;
    j["energy"] = r.energy;
    j["syndrome"] = r.syndrome;
    std::vector<std::string> gens;
    gens.reserve(r.state.size());
    for (const auto &g : r.state) {
        gens.push_back(g.str());
    }
    j["state"] = gens;
    if (r.budget) {
        std::vector<std::string> branches;
        for (int b : r.branches) {
            branches.push_back(b > 0 ? "+1" : "-1");
        }
        if (branches.size() == 1) {
            j["branch"] = branches[0];
        } else {
            j["branch"] = branches;
        }
        j["budget"] = {{"total", r.budget->total},
                       {"simultaneous", r.budget->simultaneous},
                       {"sequential", r.budget->sequential}};
    }
    return j.dump();
}

}  // namespace stabgibbs
