#include "stabgibbs/pauli.h"

#include <bit>
#include <stdexcept>

namespace stabgibbs {

namespace {

size_t num_words(size_t n) {
    return (n + 63) / 64;
}

void check_site(const PauliTerm &t, size_t q) {
    if (q >= t.num_qubits()) {
        throw std::out_of_range("site " + std::to_string(q) + " out of range for " + std::to_string(t.num_qubits()) +
                                " qubits");
    }
}

void check_same_size(const PauliTerm &a, const PauliTerm &b) {
    if (a.num_qubits() != b.num_qubits()) {
        throw std::invalid_argument("Pauli size mismatch");
    }
}

// X=0, Y=1, Z=2 so that XY=iZ, YZ=iX, ZX=iY are the +1 steps of a 3-cycle.
int cyc(bool x, bool z) {
    return x ? (z ? 1 : 0) : 2;
}

}  // namespace

PauliTerm::PauliTerm(size_t num_qubits) : n_(num_qubits), xs_(num_words(num_qubits), 0), zs_(num_words(num_qubits), 0) {
}

void PauliTerm::set_x(size_t q, bool v) {
    uint64_t m = uint64_t{1} << (q & 63);
    if (v) {
        xs_[q >> 6] |= m;
    } else {
        xs_[q >> 6] &= ~m;
    }
}

void PauliTerm::set_z(size_t q, bool v) {
    uint64_t m = uint64_t{1} << (q & 63);
    if (v) {
        zs_[q >> 6] |= m;
    } else {
        zs_[q >> 6] &= ~m;
    }
}

char PauliTerm::letter(size_t q) const {
    return "IXZY"[x(q) + 2 * z(q)];
}

size_t PauliTerm::weight() const {
    size_t w = 0;
    for (size_t k = 0; k < xs_.size(); k++) {
        w += std::popcount(xs_[k] | zs_[k]);
    }
    return w;
}

std::vector<size_t> PauliTerm::support() const {
    std::vector<size_t> out;
    for (size_t k = 0; k < xs_.size(); k++) {
        uint64_t m = xs_[k] | zs_[k];
        while (m) {
            out.push_back(k * 64 + std::countr_zero(m));
            m &= m - 1;
        }
    }
    return out;
}

bool PauliTerm::is_identity() const {
    return weight() == 0;
}

bool PauliTerm::is_x_type() const {
    for (uint64_t w : zs_) {
        if (w) {
            return false;
        }
    }
    return true;
}

bool PauliTerm::is_z_type() const {
    for (uint64_t w : xs_) {
        if (w) {
            return false;
        }
    }
    return true;
}

std::string PauliTerm::str() const {
    std::string out = neg_ ? "-" : "";
    bool first = true;
    for (size_t q : support()) {
        if (!first) {
            out += '*';
        }
        first = false;
        out += letter(q);
        out += std::to_string(q);
    }
    if (first) {
        out += 'I';
    }
    return out;
}

PauliTerm make_pauli(size_t num_qubits, const std::vector<std::pair<size_t, char>> &factors, int sign) {
    if (sign != 1 && sign != -1) {
        throw std::invalid_argument("sign must be +1 or -1");
    }
    PauliTerm t(num_qubits);
    for (auto [q, c] : factors) {
        check_site(t, q);
        if (t.x(q) || t.z(q)) {
            throw std::invalid_argument("duplicate site " + std::to_string(q));
        }
        switch (c) {
            case 'X':
                t.set_x(q, true);
                break;
            case 'Z':
                t.set_z(q, true);
                break;
            case 'Y':
                t.set_x(q, true);
                t.set_z(q, true);
                break;
            default:
                throw std::invalid_argument(std::string("bad Pauli letter '") + c + "'");
        }
    }
    t.set_negative(sign < 0);
    return t;
}

PauliTerm parse_pauli(std::string_view text, size_t num_qubits) {
    size_t pos = 0;
    int sign = +1;
    if (pos < text.size() && (text[pos] == '+' || text[pos] == '-')) {
        sign = text[pos] == '-' ? -1 : +1;
        pos++;
    }
    std::vector<std::pair<size_t, char>> factors;
    if (text.substr(pos) == "I") {
        return make_pauli(num_qubits, factors, sign);
    }
    while (true) {
        if (pos >= text.size()) {
            throw std::invalid_argument("truncated Pauli string '" + std::string(text) + "'");
        }
        char c = text[pos++];
        size_t start = pos;
        size_t q = 0;
        while (pos < text.size() && text[pos] >= '0' && text[pos] <= '9') {
            q = q * 10 + (text[pos] - '0');
            pos++;
        }
        if (pos == start) {
            throw std::invalid_argument("missing site index in '" + std::string(text) + "'");
        }
        factors.emplace_back(q, c);
        if (pos == text.size()) {
            break;
        }
        if (text[pos] != '*') {
            throw std::invalid_argument("expected '*' in '" + std::string(text) + "'");
        }
        pos++;
    }
    return make_pauli(num_qubits, factors, sign);
}

void apply_cx(PauliTerm &t, size_t c, size_t tg) {
    check_site(t, c);
    check_site(t, tg);
    if (c == tg) {
        throw std::invalid_argument("CX control equals target");
    }
    bool xc = t.x(c), zc = t.z(c), xt = t.x(tg), zt = t.z(tg);
    if (xc && zt && (xt == zc)) {
        t.flip_sign();
    }
    t.set_x(tg, xt ^ xc);
    t.set_z(c, zc ^ zt);
}

void apply_h(PauliTerm &t, size_t q) {
    check_site(t, q);
    bool x = t.x(q), z = t.z(q);
    if (x && z) {
        t.flip_sign();
    }
    t.set_x(q, z);
    t.set_z(q, x);
}

void apply_x(PauliTerm &t, size_t q) {
    check_site(t, q);
    if (t.z(q)) {
        t.flip_sign();
    }
}

PauliTerm conjugate_cx(PauliTerm term, size_t control, size_t target) {
    apply_cx(term, control, target);
    return term;
}

PauliTerm conjugate_h(PauliTerm term, size_t site) {
    apply_h(term, site);
    return term;
}

PauliTerm conjugate_x(PauliTerm term, size_t site) {
    apply_x(term, site);
    return term;
}

bool commutes(const PauliTerm &a, const PauliTerm &b) {
    check_same_size(a, b);
    uint64_t acc = 0;
    const auto &ax = a.x_words(), &az = a.z_words(), &bx = b.x_words(), &bz = b.z_words();
    for (size_t k = 0; k < ax.size(); k++) {
        acc ^= (ax[k] & bz[k]) ^ (az[k] & bx[k]);
    }
    return std::popcount(acc) % 2 == 0;
}

void multiply_into(PauliTerm &a, const PauliTerm &b) {
    check_same_size(a, b);
    int log_i = 0;
    auto &ax = a.x_words();
    auto &az = a.z_words();
    const auto &bx = b.x_words();
    const auto &bz = b.z_words();
    for (size_t k = 0; k < ax.size(); k++) {
        uint64_t both = (ax[k] | az[k]) & (bx[k] | bz[k]);
        // Only sites where both factors are non-identity and differ contribute.
        both &= (ax[k] ^ bx[k]) | (az[k] ^ bz[k]);
        while (both) {
            int s = std::countr_zero(both);
            both &= both - 1;
            int pa = cyc((ax[k] >> s) & 1, (az[k] >> s) & 1);
            int pb = cyc((bx[k] >> s) & 1, (bz[k] >> s) & 1);
            log_i += ((pb - pa + 3) % 3 == 1) ? 1 : 3;
        }
        ax[k] ^= bx[k];
        az[k] ^= bz[k];
    }
    log_i &= 3;
    if (log_i & 1) {
        throw std::domain_error("product of anticommuting Paulis has imaginary phase");
    }
    bool neg = a.negative() ^ b.negative() ^ (log_i == 2);
    a.set_negative(neg);
}

PauliTerm multiply(const PauliTerm &a, const PauliTerm &b) {
    PauliTerm out = a;
    multiply_into(out, b);
    return out;
}

}  // namespace stabgibbs
