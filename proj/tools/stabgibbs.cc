// Command-line front end: circuit generation, sampling, verification and statistics.

#include <CLI11.hpp>
#include <fstream>
#include <iostream>
#include <json.hpp>

#include "stabgibbs/generators.h"
#include "stabgibbs/measurement.h"
#include "stabgibbs/pipeline.h"
#include "stabgibbs/verify.h"

using namespace stabgibbs;

namespace {

constexpr int kOk = 0;
constexpr int kVerifyFailed = 1;
constexpr int kUsage = 2;

struct RunConfig {
    std::string kind;
    std::string code = "toric";
    int L = 2;
    int n = 0;
    double beta = 0.5;
    size_t n_samples = 100;
    uint64_t seed = 0;
    std::string method = "hybrid";
    std::string out = "-";
    std::string in;
    std::string format = "text";
    std::string subsystem = "z";
    std::string suite = "all";
    size_t max_qubits = 10;
    unsigned threads = 1;
    bool exact = false;
};

class Output {
   public:
    explicit Output(const std::string &path) {
        if (path != "-") {
            file_.open(path, std::ios::binary);
            if (!file_) {
                throw std::invalid_argument("cannot open '" + path + "' for writing");
            }
        }
    }
    std::ostream &os() {
        return file_.is_open() ? static_cast<std::ostream &>(file_) : std::cout;
    }

   private:
    std::ofstream file_;
};

Circuit plan_circuit(const MappingPlan &plan) {
    Circuit c = plan.quantum;
    c.append(hadamard_layer(c.num_qubits, plan.hadamard_sites));
    c.append(plan.classical);
    return c;
}

int cmd_gen_circuit(const RunConfig &cfg) {
    Circuit c;
    if (cfg.kind == "rsc-mapping") {
        c = plan_circuit(gen_rsc_mapping(cfg.L));
    } else if (cfg.kind == "toric-mapping") {
        c = plan_circuit(gen_toric_mapping(cfg.L));
    } else if (cfg.kind == "toric-groundstate") {
        c = gen_toric_groundstate(cfg.L);
    } else if (cfg.kind == "w-gateset") {
        c = gen_w_gateset(cfg.L);
    } else if (cfg.kind == "pseudo-parity") {
        ToricSchedule s = toric_schedule(cfg.L);
        const auto &layout = build_toric(cfg.L).layout;
        c = cfg.subsystem == "x" ? gen_pseudo_parity(layout, s.tree_sites, s.g1)
                                 : gen_pseudo_parity(layout, s.kept_sites, s.g2);
    } else {
        c = gen_chain_join(cfg.n > 0 ? cfg.n : 2 * cfg.L * cfg.L);
    }
    std::string text = cfg.format == "stim" ? export_stim(c) : export_circuit(c);
    Output out(cfg.out);
    out.os() << text;
    return kOk;
}

int cmd_sample(const RunConfig &cfg) {
    CodeKind code = parse_code(cfg.code);
    if (cfg.method == "measurement" && code != CodeKind::Toric) {
        throw std::invalid_argument("--method measurement is available for the toric code only");
    }
    if (cfg.L < 2) {
        throw std::invalid_argument("--L must be >= 2");
    }
    std::vector<GibbsSampleRecord> recs;
    if (cfg.method == "hybrid") {
        recs = gibbs_sample_code(code, cfg.L, cfg.beta, cfg.n_samples, cfg.seed, cfg.threads);
    } else {
        ToricQuantumSampler sampler(cfg.L);
        recs.reserve(cfg.n_samples);
        for (size_t j = 0; j < cfg.n_samples; j++) {
            recs.push_back(sampler.sample(cfg.beta, cfg.seed, 0, j));
        }
    }
    Output out(cfg.out);
    for (size_t j = 0; j < recs.size(); j++) {
        out.os() << record_jsonl(recs[j], j) << '\n';
    }
    return kOk;
}

int cmd_verify(const RunConfig &cfg) {
    VerifyOptions opts;
    opts.L = cfg.L;
    opts.max_qubits = cfg.max_qubits;
    auto results = run_suite(cfg.suite, opts);
    bool all = true;
    Output out(cfg.out);
    for (const auto &r : results) {
        out.os() << (r.pass ? "PASS " : "FAIL ") << r.name << ": " << r.detail << '\n';
        all &= r.pass;
    }
    return all ? kOk : kVerifyFailed;
}

int cmd_stats(const RunConfig &cfg) {
    std::ifstream in(cfg.in, std::ios::binary);
    if (!in) {
        throw std::invalid_argument("cannot read '" + cfg.in + "'");
    }
    std::vector<double> energies;
    std::string line, code;
    int L = 0;
    double beta = 0;
    size_t lineno = 0;
    while (std::getline(in, line)) {
        lineno++;
        if (line.empty()) {
            continue;
        }
        nlohmann::json j = nlohmann::json::parse(line, nullptr, false);
        if (j.is_discarded() || !j.contains("energy") || !j["energy"].is_number()) {
            throw std::invalid_argument(cfg.in + ":" + std::to_string(lineno) + ": not a sample record");
        }
        if (energies.empty()) {
            code = j.value("code", "");
            L = j.value("L", 0);
            beta = j.value("beta", 0.0);
        } else if (j.value("code", "") != code || j.value("L", 0) != L || j.value("beta", 0.0) != beta) {
            throw std::invalid_argument(cfg.in + ":" + std::to_string(lineno) + ": records mix runs");
        }
        energies.push_back(j["energy"].get<double>());
    }
    if (energies.size() < 2) {
        throw std::invalid_argument(cfg.in + ": need at least two records");
    }
    EnergyEstimate e = estimate_energy(energies);
    CodeKind kind = parse_code(code);
    std::optional<double> exact;
    if (cfg.exact) {
        exact = exact_code_energy(kind, L, beta);
    }
    Output out(cfg.out);
    out.os() << summary_json(e, kind, L, beta, exact) << '\n';
    return kOk;
}

}  // namespace

int main(int argc, char **argv) {
    CLI::App app{"Gibbs sampling of stabilizer codes via decoupling circuits"};
    app.require_subcommand(1);
    RunConfig cfg;

    auto *gen = app.add_subcommand("gen-circuit", "Write a generated circuit");
    gen->add_option("--kind", cfg.kind, "Circuit to generate")
        ->required()
        ->check(CLI::IsMember({"rsc-mapping", "toric-mapping", "toric-groundstate", "w-gateset", "pseudo-parity",
                               "chain-join"}));
    gen->add_option("--L", cfg.L, "Lattice size")->check(CLI::Range(2, 1 << 12));
    gen->add_option("--n", cfg.n, "Chain join width (default 2L^2)")->check(CLI::Range(2, 1 << 20));
    gen->add_option("--subsystem", cfg.subsystem, "Pseudo parity subsystem")->check(CLI::IsMember({"x", "z"}));
    gen->add_option("--format", cfg.format, "Output format")->check(CLI::IsMember({"text", "stim"}));
    gen->add_option("--out", cfg.out, "Output path, - for stdout");

    auto *sample = app.add_subcommand("sample", "Draw Gibbs samples as JSONL records");
    sample->add_option("--code", cfg.code, "Code")->check(CLI::IsMember({"rsc", "toric"}));
    sample->add_option("--L", cfg.L, "Lattice size")->check(CLI::Range(2, 1 << 12));
    sample->add_option("--beta", cfg.beta, "Inverse temperature");
    sample->add_option("--n", cfg.n_samples, "Number of samples");
    sample->add_option("--seed", cfg.seed, "Seed")->envname("STABGIBBS_SEED");
    sample->add_option("--method", cfg.method, "Sampler")->check(CLI::IsMember({"hybrid", "measurement"}));
    sample->add_option("--threads", cfg.threads, "Worker threads")->check(CLI::Range(1, 256));
    sample->add_option("--out", cfg.out, "Output path, - for stdout");

    auto *verify = app.add_subcommand("verify", "Run a verification suite");
    verify->add_option("--suite", cfg.suite, "Suite")->check(CLI::IsMember(suite_names()));
    verify->add_option("--L", cfg.L, "Code size for the gibbs suite")->check(CLI::Range(2, 3));
    verify->add_option("--max-qubits", cfg.max_qubits, "Cap for dense checks")->check(CLI::Range(1, 10));
    verify->add_option("--out", cfg.out, "Report path, - for stdout");

    auto *stats = app.add_subcommand("stats", "Summarize energies of a JSONL sample file");
    stats->add_option("input", cfg.in, "Sample file")->required();
    stats->add_flag("--exact", cfg.exact, "Add the exact mean energy and z-score");
    stats->add_option("--out", cfg.out, "Output path, - for stdout");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp &e) {
        return app.exit(e);
    } catch (const CLI::ParseError &e) {
        app.exit(e);
        return kUsage;
    }

    try {
        if (*gen) {
            return cmd_gen_circuit(cfg);
        }
        if (*sample) {
            return cmd_sample(cfg);
        }
        if (*verify) {
            return cmd_verify(cfg);
        }
        return cmd_stats(cfg);
    } catch (const std::invalid_argument &e) {
        std::cerr << "error: " << e.what() << '\n';
        return kUsage;
    } catch (const std::exception &e) {
        std::cerr << "error: " << e.what() << '\n';
        return kVerifyFailed;
    }
}
