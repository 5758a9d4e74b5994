#include <array>
#include <cstdio>
#include <fstream>
#include <gtest/gtest.h>
#include <string>
#include <sys/wait.h>

namespace {

struct Captured {
    int status = -1;
    std::string out;
};

Captured cli(const std::string &args, const std::string &env = "") {
    Captured c;
    std::string cmd = env + " '" + STABGIBBS_CLI + "' " + args;
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

size_t count_lines(const std::string &s) {
    size_t n = 0;
    for (char ch : s) {
        n += ch == '\n';
    }
    return n;
}

std::string temp_path(const std::string &name) {
    return testing::TempDir() + "stabgibbs_" + name;
}

}  // namespace

TEST(cli, gen_circuit_text_and_stim) {
    std::string path = temp_path("c.txt");
    ASSERT_EQ(cli("gen-circuit --kind toric-mapping --L 4 --out '" + path + "'").status, 0);
    std::ifstream f(path);
    std::string first;
    std::getline(f, first);
    EXPECT_EQ(first, "QUBITS 32");
    Captured stim = cli("gen-circuit --kind toric-groundstate --L 3 --format stim");
    ASSERT_EQ(stim.status, 0);
    EXPECT_NE(stim.out.find("TICK\n"), std::string::npos);
    EXPECT_EQ(stim.out.find("LAYER"), std::string::npos);
    for (const char *kind : {"rsc-mapping", "w-gateset", "pseudo-parity", "chain-join"}) {
        Captured c = cli(std::string("gen-circuit --L 3 --kind ") + kind);
        EXPECT_EQ(c.status, 0) << kind;
        EXPECT_EQ(c.out.rfind("QUBITS ", 0), 0u) << kind;
    }
}

TEST(cli, usage_errors_exit_2) {
    EXPECT_EQ(cli("gen-circuit --kind toric-mapping --L 1 2>/dev/null").status, 2);
    EXPECT_EQ(cli("gen-circuit --kind nonsense 2>/dev/null").status, 2);
    EXPECT_EQ(cli("frobnicate 2>/dev/null").status, 2);
    EXPECT_EQ(cli("sample --code rsc --L 2 --method measurement 2>/dev/null").status, 2);
    EXPECT_EQ(cli("sample --code color 2>/dev/null").status, 2);
    EXPECT_EQ(cli("2>/dev/null").status, 2);
}

TEST(cli, sample_count_and_determinism) {
    std::string args = "sample --code toric --L 3 --beta 0.7 --n 1000 --seed 7 --method hybrid";
    Captured a = cli(args), b = cli(args), t = cli(args + " --threads 3");
    ASSERT_EQ(a.status, 0);
    EXPECT_EQ(count_lines(a.out), 1000u);
    EXPECT_EQ(a.out, b.out);
    EXPECT_EQ(a.out, t.out);
    Captured other = cli("sample --code toric --L 3 --beta 0.7 --n 1000 --seed 8 --method hybrid");
    EXPECT_NE(a.out, other.out);
}

TEST(cli, seed_from_environment_and_flag_precedence) {
    std::string base = "sample --code rsc --L 2 --beta 0.4 --n 50";
    Captured flag = cli(base + " --seed 5");
    Captured env = cli(base);
    Captured env5 = cli(base, "STABGIBBS_SEED=5");
    EXPECT_EQ(flag.out, env5.out);
    EXPECT_NE(flag.out, env.out);
    EXPECT_EQ(cli(base + " --seed 5", "STABGIBBS_SEED=9").out, flag.out);
}

TEST(cli, measurement_records_carry_budget) {
    Captured c = cli("sample --code toric --L 2 --beta 0.5 --n 3 --seed 1 --method measurement");
    ASSERT_EQ(c.status, 0);
    EXPECT_EQ(count_lines(c.out), 3u);
    EXPECT_NE(c.out.find("\"budget\":{\"total\":8,\"simultaneous\":6"), std::string::npos);
    EXPECT_NE(c.out.find("\"branch\":"), std::string::npos);
}

TEST(cli, verify_suites) {
    Captured conj = cli("verify --suite conjugation --max-qubits 8");
    EXPECT_EQ(conj.status, 0) << conj.out;
    EXPECT_EQ(conj.out.find("FAIL"), std::string::npos);
    Captured depth = cli("verify --suite depth");
    EXPECT_EQ(depth.status, 0) << depth.out;
    Captured gibbs = cli("verify --suite gibbs --L 2");
    EXPECT_NE(gibbs.out.find("PASS hybrid-syndrome-law-toric"), std::string::npos);
    bool any_fail = gibbs.out.find("FAIL") != std::string::npos;
    EXPECT_EQ(gibbs.status, any_fail ? 1 : 0);
    EXPECT_EQ(cli("verify --suite nope 2>/dev/null").status, 2);
}

TEST(cli, stats) {
    std::string path = temp_path("s.jsonl");
    ASSERT_EQ(cli("sample --code rsc --L 3 --beta 0 --n 400 --seed 3 --out '" + path + "'").status, 0);
    Captured s = cli("stats '" + path + "' --exact");
    ASSERT_EQ(s.status, 0);
    EXPECT_EQ(s.out.rfind("{\"mean_energy\":", 0), 0u) << s.out;
    EXPECT_NE(s.out.find("\"exact\":-0.0"), std::string::npos) << s.out;
    EXPECT_NE(s.out.find("\"z\":"), std::string::npos);
    EXPECT_EQ(cli("stats '" + path + "'").out.find("\"z\""), std::string::npos);

    std::string empty = temp_path("empty.jsonl");
    std::ofstream(empty).close();
    EXPECT_EQ(cli("stats '" + empty + "' 2>/dev/null").status, 2);
    std::string bad = temp_path("bad.jsonl");
    std::ofstream(bad) << "{\"energy\": 1}\nnot json\n";
    EXPECT_EQ(cli("stats '" + bad + "' 2>/dev/null").status, 2);
    EXPECT_EQ(cli("stats /nonexistent/file 2>/dev/null").status, 2);
}
