#include <array>
#include <complex>
#include <gtest/gtest.h>

#include "stabgibbs/gf2.h"
#include "stabgibbs/pauli.h"

using namespace stabgibbs;

namespace {

using cd = std::complex<double>;
using Mat4 = std::array<std::array<cd, 4>, 4>;

// Independent dense oracle: qubit 0 is the most significant bit of the basis index.
std::array<std::array<cd, 2>, 2> pauli2(char c) {
    const cd i{0, 1};
    switch (c) {
        case 'X':
            return {{{0, 1}, {1, 0}}};
        case 'Y':
            return {{{0, -i}, {i, 0}}};
        case 'Z':
            return {{{1, 0}, {0, -1}}};
        default:
            return {{{1, 0}, {0, 1}}};
    }
}

Mat4 kron(char a, char b) {
    auto A = pauli2(a), B = pauli2(b);
    Mat4 m{};
    for (int r = 0; r < 4; r++) {
        for (int c = 0; c < 4; c++) {
            m[r][c] = A[r >> 1][c >> 1] * B[r & 1][c & 1];
        }
    }
    return m;
}

Mat4 mul(const Mat4 &a, const Mat4 &b) {
    Mat4 m{};
    for (int r = 0; r < 4; r++) {
        for (int c = 0; c < 4; c++) {
            for (int k = 0; k < 4; k++) {
                m[r][c] += a[r][k] * b[k][c];
            }
        }
    }
    return m;
}

Mat4 cx01() {
    Mat4 m{};
    m[0][0] = m[1][1] = 1;
    m[2][3] = m[3][2] = 1;
    return m;
}

double diff(const Mat4 &a, const Mat4 &b, double sign) {
    double d = 0;
    for (int r = 0; r < 4; r++) {
        for (int c = 0; c < 4; c++) {
            d = std::max(d, std::abs(a[r][c] - sign * b[r][c]));
        }
    }
    return d;
}

}  // namespace

TEST(pauli, make_pauli_encoding) {
    auto p = make_pauli(2, {{0, 'X'}});
    EXPECT_TRUE(p.x(0));
    EXPECT_FALSE(p.x(1));
    EXPECT_FALSE(p.z(0) || p.z(1));
    auto id = make_pauli(2, {});
    EXPECT_TRUE(id.is_identity());
    EXPECT_EQ(id.weight(), 0u);
    auto q = make_pauli(4, {{2, 'Z'}, {3, 'Z'}}, -1);
    EXPECT_EQ(q.sign(), -1);
    EXPECT_EQ(q.support(), (std::vector<size_t>{2, 3}));
    EXPECT_TRUE(q.is_z_type());
}

TEST(pauli, make_pauli_rejects_bad_input) {
    EXPECT_THROW(make_pauli(2, {{2, 'X'}}), std::out_of_range);
    EXPECT_THROW(make_pauli(2, {{0, 'X'}, {0, 'Z'}}), std::invalid_argument);
    EXPECT_THROW(make_pauli(2, {{0, 'Q'}}), std::invalid_argument);
    EXPECT_THROW(make_pauli(2, {}, 2), std::invalid_argument);
}

TEST(pauli, parse_and_str_round_trip) {
    for (std::string s : {"-Z0*Z3", "X1*Y2", "I", "-I", "Y0"}) {
        EXPECT_EQ(parse_pauli(s, 5).str(), s);
    }
    EXPECT_THROW(parse_pauli("Z9", 5), std::out_of_range);
    EXPECT_THROW(parse_pauli("Z0**Z1", 5), std::invalid_argument);
}

TEST(pauli, cx_rules) {
    auto cx = [](const char *in) {
        return conjugate_cx(parse_pauli(in, 2), 0, 1).str();
    };
    EXPECT_EQ(cx("X0"), "X0*X1");
    EXPECT_EQ(cx("X1"), "X1");
    EXPECT_EQ(cx("Z0"), "Z0");
    EXPECT_EQ(cx("Z1"), "Z0*Z1");
    EXPECT_EQ(cx("X0*X1"), "X0");
    EXPECT_EQ(cx("Z0*Z1"), "Z1");
}

TEST(pauli, cx_matches_dense_oracle_on_all_two_qubit_paulis) {
    const char letters[] = {'I', 'X', 'Y', 'Z'};
    Mat4 U = cx01();
    for (char a : letters) {
        for (char b : letters) {
            std::vector<std::pair<size_t, char>> f;
            if (a != 'I') {
                f.push_back({0, a});
            }
            if (b != 'I') {
                f.push_back({1, b});
            }
            PauliTerm out = conjugate_cx(make_pauli(2, f), 0, 1);
            Mat4 want = mul(mul(U, kron(a, b)), U);
            Mat4 got = kron(out.letter(0), out.letter(1));
            EXPECT_LT(diff(want, got, out.sign()), 1e-12) << a << b;
        }
    }
}

TEST(pauli, hadamard_and_x) {
    EXPECT_EQ(conjugate_h(parse_pauli("X0", 1), 0).str(), "Z0");
    EXPECT_EQ(conjugate_h(parse_pauli("Y0", 1), 0).str(), "-Y0");
    EXPECT_EQ(conjugate_h(parse_pauli("I", 1), 0).str(), "I");
    EXPECT_EQ(conjugate_x(parse_pauli("Z0", 1), 0).str(), "-Z0");
    EXPECT_EQ(conjugate_x(parse_pauli("X0", 1), 0).str(), "X0");
    EXPECT_EQ(conjugate_x(parse_pauli("Z0*Z1", 2), 1).str(), "-Z0*Z1");
}

TEST(pauli, commutation) {
    EXPECT_TRUE(commutes(parse_pauli("X0*X1", 2), parse_pauli("Z0*Z1", 2)));
    EXPECT_FALSE(commutes(parse_pauli("X0", 2), parse_pauli("Z0", 2)));
    EXPECT_TRUE(commutes(parse_pauli("Y0*Z1", 2), parse_pauli("I", 2)));
}

TEST(pauli, multiplication) {
    EXPECT_EQ(multiply(parse_pauli("X0", 2), parse_pauli("X1", 2)).str(), "X0*X1");
    EXPECT_EQ(multiply(parse_pauli("Z0*Z1", 3), parse_pauli("Z1*Z2", 3)).str(), "Z0*Z2");
    EXPECT_EQ(multiply(parse_pauli("-Z0", 1), parse_pauli("-Z0", 1)).str(), "I");
    // XZ = -iY is not Hermitian.
    EXPECT_THROW(multiply(parse_pauli("X0", 1), parse_pauli("Z0", 1)), std::domain_error);
    // (X0 Z1)(Z0 X1) = (XZ)(ZX) = (-iY)(iY) = +1 * Y0 Y1
    EXPECT_EQ(multiply(parse_pauli("X0*Z1", 2), parse_pauli("Z0*X1", 2)).str(), "Y0*Y1");
}

TEST(pauli, wide_terms_cross_word_boundaries) {
    auto p = make_pauli(130, {{63, 'X'}, {64, 'Z'}, {129, 'Y'}});
    apply_cx(p, 63, 129);
    EXPECT_EQ(p.weight(), 3u);
    EXPECT_EQ(p.letter(129), 'Z');
    EXPECT_EQ(p.str(), parse_pauli(p.str(), 130).str());
}

TEST(gf2, rank_and_decompose) {
    std::vector<PauliTerm> ts{parse_pauli("Z0*Z1", 3), parse_pauli("Z1*Z2", 3), parse_pauli("Z0*Z2", 3)};
    EXPECT_EQ(gf2_rank(ts), 2u);
    PauliBasis b(3);
    EXPECT_TRUE(b.insert(ts[0]));
    EXPECT_TRUE(b.insert(ts[1]));
    EXPECT_FALSE(b.insert(ts[2]));
    auto d = b.decompose(parse_pauli("Z0*Z2", 3));
    ASSERT_TRUE(d.has_value());
    EXPECT_EQ(*d, (std::vector<size_t>{0, 1}));
    EXPECT_FALSE(b.decompose(parse_pauli("Z0", 3)).has_value());
}

TEST(gf2, stabilizer_expectation_signs) {
    std::vector<PauliTerm> gens{parse_pauli("Z0*Z1", 3), parse_pauli("-Z1*Z2", 3)};
    EXPECT_EQ(stabilizer_expectation(gens, parse_pauli("Z0*Z1", 3)), 1);
    EXPECT_EQ(stabilizer_expectation(gens, parse_pauli("Z0*Z2", 3)), -1);
    EXPECT_EQ(stabilizer_expectation(gens, parse_pauli("Z0", 3)), 0);
    EXPECT_EQ(stabilizer_expectation(gens, parse_pauli("I", 3)), 1);
}
