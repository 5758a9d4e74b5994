#include "stabgibbs/classical.h"

#include <algorithm>
#include <cmath>
#include <json.hpp>
#include <stdexcept>

namespace stabgibbs {

namespace {

double log_sum_exp(double a, double b) {
    double m = std::max(a, b);
    return m + std::log(std::exp(a - m) + std::exp(b - m));
}

// Draws a spin whose log-weights are lp for +1 and lm for -1.
int draw_weighted(Coin &coin, double lp, double lm) {
    return draw_field_spin(coin, (lp - lm) / 2);
}

void require_n(int n, int min_n, const char *who) {
    if (n < min_n) {
        throw std::invalid_argument(std::string(who) + ": n must be >= " + std::to_string(min_n));
    }
}

}  // namespace

int draw_field_spin(Coin &coin, double b) {
    return coin.flip(1.0 / (1.0 + std::exp(-2 * b))) ? +1 : -1;
}

void spin_xor(Spins &s, size_t control, size_t target) {
    s.at(target) *= s.at(control);
}

// Pushforwards below use spin_xor(s, control, target), the classical CX. Update order matters:
// descending sweeps read already-updated neighbours, the ascending one reads original values.

Spins draw_h1(int n, int M, double beta, Coin &coin) {
    require_n(n, 0, "draw_h1");
    if (M < n) {
        throw std::invalid_argument("draw_h1: M must be >= n");
    }
    Spins s(static_cast<size_t>(M));
    for (int i = 0; i < M; i++) {
        s[i] = draw_field_spin(coin, i < n ? beta : 0.0);
    }
    return s;
}

Spins draw_h2(int n, double beta, Coin &coin) {
    require_n(n, 2, "draw_h2");
    Spins s = draw_h1(n, n, beta, coin);
    for (int j = n - 2; j >= 0; j--) {
        spin_xor(s, j + 1, j);
    }
    return s;
}

Spins draw_h0(int n, double beta, Coin &coin) {
    require_n(n, 3, "draw_h0");
    // Chain z_0..z_{m-1} with fields on both ends; lr[i](z) is the log of the suffix sum given z_i = z.
    size_t m = static_cast<size_t>(n - 1);
    std::vector<std::pair<double, double>> lr(m);
    lr[m - 1] = {beta, -beta};
    for (size_t i = m - 1; i-- > 0;) {
        auto [np, nm] = lr[i + 1];
        lr[i] = {log_sum_exp(beta + np, -beta + nm), log_sum_exp(-beta + np, beta + nm)};
    }
    Spins s(static_cast<size_t>(n));
    s[0] = draw_weighted(coin, beta + lr[0].first, -beta + lr[0].second);
    for (size_t i = 1; i < m; i++) {
        double c = beta * s[i - 1];
        s[i] = draw_weighted(coin, c + lr[i].first, -c + lr[i].second);
    }
    s[m] = draw_field_spin(coin, 0.0);
    return s;
}

Spins draw_h4(int n, double beta, Coin &coin) {
    Spins s = draw_h0(n, beta, coin);
    for (int i = 0; i + 2 < n; i++) {
        spin_xor(s, i + 1, i);
    }
    return s;
}

Spins draw_h3(int n, double beta, Coin &coin) {
    Spins s = draw_h4(n, beta, coin);
    for (int j = n - 2; j >= 0; j--) {
        spin_xor(s, j + 1, j);
    }
    return s;
}

Spins draw_classical(ClassicalKind kind, int n, double beta, Coin &coin) {
    switch (kind) {
        case ClassicalKind::UMF:
            require_n(n, 2, "draw_classical(UMF)");
            return draw_h1(n - 1, n, beta, coin);
        case ClassicalKind::H1:
            return draw_h1(n, n, beta, coin);
        case ClassicalKind::H2:
            return draw_h2(n, beta, coin);
        case ClassicalKind::H0:
            return draw_h0(n, beta, coin);
        case ClassicalKind::H3:
            return draw_h3(n, beta, coin);
        case ClassicalKind::H4:
            return draw_h4(n, beta, coin);
        case ClassicalKind::Loops: {
            if (n < 6 || n % 2 != 0) {
                throw std::invalid_argument("draw_classical(Loops): n must be even and >= 6");
            }
            Spins a = draw_h3(n / 2, beta, coin);
            Spins b = draw_h3(n / 2, beta, coin);
            a.insert(a.end(), b.begin(), b.end());
            return a;
        }
    }
    throw std::invalid_argument("draw_classical: unknown kind");
}

namespace {

Spins sample_with(const SamplerConfig &cfg, uint64_t stream, uint64_t draw,
                  const std::function<Spins(Coin &)> &f) {
    RngCoin coin(CounterRng(cfg.seed, stream, draw));
    return f(coin);
}

}  // namespace

Spins sample_h1(const SamplerConfig &cfg, int M, uint64_t stream, uint64_t draw) {
    return sample_with(cfg, stream, draw, [&](Coin &c) {
        return draw_h1(cfg.n, M, cfg.beta, c);
    });
}

Spins sample_h2(const SamplerConfig &cfg, uint64_t stream, uint64_t draw) {
    return sample_with(cfg, stream, draw, [&](Coin &c) {
        return draw_h2(cfg.n, cfg.beta, c);
    });
}

Spins sample_h0(const SamplerConfig &cfg, uint64_t stream, uint64_t draw) {
    return sample_with(cfg, stream, draw, [&](Coin &c) {
        return draw_h0(cfg.n, cfg.beta, c);
    });
}

Spins sample_h4(const SamplerConfig &cfg, uint64_t stream, uint64_t draw) {
    return sample_with(cfg, stream, draw, [&](Coin &c) {
        return draw_h4(cfg.n, cfg.beta, c);
    });
}

Spins sample_h3(const SamplerConfig &cfg, uint64_t stream, uint64_t draw) {
    return sample_with(cfg, stream, draw, [&](Coin &c) {
        return draw_h3(cfg.n, cfg.beta, c);
    });
}

Spins sample_classical(ClassicalKind kind, const SamplerConfig &cfg, uint64_t stream, uint64_t draw) {
    return sample_with(cfg, stream, draw, [&](Coin &c) {
        return draw_classical(kind, cfg.n, cfg.beta, c);
    });
}

double classical_energy(const Hamiltonian &h, const Spins &s) {
    if (s.size() != h.num_qubits()) {
        throw std::invalid_argument("classical_energy: size mismatch");
    }
    double e = 0;
    for (const auto &t : h.terms) {
        if (!t.is_z_type()) {
            throw std::invalid_argument("classical_energy: term " + t.str() + " is not diagonal");
        }
        int v = t.sign();
        for (size_t q : t.support()) {
            v *= s[q];
        }
        e -= v;
    }
    return e;
}

size_t spins_to_index(const Spins &s) {
    size_t idx = 0;
    for (size_t k = 0; k < s.size(); k++) {
        if (s[k] < 0) {
            idx |= size_t{1} << k;
        }
    }
    return idx;
}

Spins index_to_spins(size_t index, size_t n) {
    Spins s(n);
    for (size_t k = 0; k < n; k++) {
        s[k] = (index >> k) & 1 ? -1 : +1;
    }
    return s;
}

Distribution boltzmann_distribution(const Hamiltonian &h, double beta) {
    size_t n = h.num_qubits();
    if (n > 20) {
        throw std::invalid_argument("boltzmann_distribution: n must be <= 20");
    }
    size_t N = size_t{1} << n;
    Distribution logw(N);
    for (size_t i = 0; i < N; i++) {
        logw[i] = -beta * classical_energy(h, index_to_spins(i, n));
    }
    double m = *std::max_element(logw.begin(), logw.end());
    double total = 0;
    for (double &w : logw) {
        w = std::exp(w - m);
        total += w;
    }
    for (double &w : logw) {
        w /= total;
    }
    return logw;
}

Distribution exact_distribution(ClassicalKind kind, int n, double beta) {
    return boltzmann_distribution(build_classical(kind, n), beta);
}

namespace {

// Replays a fixed prefix of coin outcomes and extends it with "false"; records the path weight.
class ReplayCoin : public Coin {
   public:
    explicit ReplayCoin(std::vector<bool> &path) : path_(path) {
    }
    bool flip(double p) override {
        if (pos_ == path_.size()) {
            path_.push_back(false);
        }
        bool v = path_[pos_++];
        weight_ *= v ? p : 1 - p;
        return v;
    }
    double weight() const {
        return weight_;
    }
    size_t used() const {
        return pos_;
    }

   private:
    std::vector<bool> &path_;
    size_t pos_ = 0;
    double weight_ = 1;
};

}  // namespace

Distribution enumerate_law(size_t num_qubits, const std::function<Spins(Coin &)> &sampler) {
    Distribution out(size_t{1} << num_qubits, 0.0);
    std::vector<bool> path;
    while (true) {
        ReplayCoin coin(path);
        Spins s = sampler(coin);
        if (s.size() != num_qubits) {
            throw std::logic_error("enumerate_law: sampler returned wrong size");
        }
        path.resize(coin.used());
        out[spins_to_index(s)] += coin.weight();
        while (!path.empty() && path.back()) {
            path.pop_back();
        }
        if (path.empty()) {
            break;
        }
        path.back() = true;
    }
    return out;
}

Distribution induced_distribution(ClassicalKind kind, int n, double beta) {
    if (n > 16) {
        throw std::invalid_argument("induced_distribution: n must be <= 16");
    }
    return enumerate_law(static_cast<size_t>(n), [&](Coin &c) {
        return draw_classical(kind, n, beta, c);
    });
}

double total_variation(const Distribution &a, const Distribution &b) {
    if (a.size() != b.size()) {
        throw std::invalid_argument("total_variation: size mismatch");
    }
    double d = 0;
    for (size_t i = 0; i < a.size(); i++) {
        d += std::abs(a[i] - b[i]);
    }
    return d / 2;
}

double log_z_parity_check(int m, double beta) {
    double c = std::cosh(beta), s = std::sinh(beta), t = std::tanh(beta);
    return m * std::log(2 * c) + std::log(c + s * std::pow(t, m));
}

double log_z_loop(int n, double beta) {
    double t = std::tanh(beta);
    return n * std::log(2 * std::cosh(beta)) + std::log1p(std::pow(t, n));
}

namespace {

double parity_check_energy(int m, double beta) {
    double c = std::cosh(beta), s = std::sinh(beta), t = std::tanh(beta);
    double tm = std::pow(t, m);
    double num = s + c * tm + s * m * std::pow(t, m - 1) * (1 - t * t);
    return -(m * t + num / (c + s * tm));
}

double loop_energy(int n, double beta) {
    double t = std::tanh(beta);
    double tn = std::pow(t, n);
    return -(n * t + n * std::pow(t, n - 1) * (1 - t * t) / (1 + tn));
}

}  // namespace

double exact_mean_energy(ClassicalKind kind, int n, double beta) {
    build_classical(kind, n);  // validates n
    double t = std::tanh(beta);
    switch (kind) {
        case ClassicalKind::UMF:
            return -(n - 1) * t;
        case ClassicalKind::H1:
        case ClassicalKind::H2:
            return -n * t;
        case ClassicalKind::H0:
        case ClassicalKind::H4:
            return parity_check_energy(n - 1, beta);
        case ClassicalKind::H3:
            return loop_energy(n, beta);
        case ClassicalKind::Loops:
            return 2 * loop_energy(n / 2, beta);
    }
    throw std::invalid_argument("exact_mean_energy: unknown kind");
}

std::string spins_jsonl(const Spins &s, double energy, uint64_t stream, uint64_t draw) {
    nlohmann::ordered_json j;
    j["spins"] = s;
    j["energy"] = energy;
    j["stream"] = stream;
    j["draw"] = draw;
    return j.dump();
}

}  // namespace stabgibbs
