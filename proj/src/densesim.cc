#include "stabgibbs/densesim.h"

#include <algorithm>
#include <bit>
#include <cmath>
#include <complex>
#include <functional>
#include <stdexcept>

#include "stabgibbs/generators.h"

namespace stabgibbs {

namespace {

using cd = std::complex<double>;

void require_small(size_t n, const char *who) {
    if (n > kMaxDenseQubits) {
        throw std::invalid_argument(std::string(who) + ": at most " + std::to_string(kMaxDenseQubits) +
                                    " qubits");
    }
}

}  // namespace

StateVector StateVector::basis(size_t num_qubits, size_t index) {
    require_small(num_qubits, "StateVector::basis");
    StateVector s;
    s.num_qubits = num_qubits;
    s.amp = Eigen::VectorXcd::Zero(Eigen::Index{1} << num_qubits);
    s.amp(static_cast<Eigen::Index>(index)) = 1;
    return s;
}

void apply_gate(StateVector &s, const Gate &g) {
    const Eigen::Index dim = s.amp.size();
    const Eigen::Index ma = Eigen::Index{1} << g.a;
    switch (g.kind) {
        case GateKind::CX: {
            const Eigen::Index mb = Eigen::Index{1} << g.b;
            for (Eigen::Index i = 0; i < dim; i++) {
                if ((i & ma) && !(i & mb)) {
                    std::swap(s.amp(i), s.amp(i | mb));
                }
            }
            break;
        }
        case GateKind::X:
            for (Eigen::Index i = 0; i < dim; i++) {
                if (!(i & ma)) {
                    std::swap(s.amp(i), s.amp(i | ma));
                }
            }
            break;
        case GateKind::H: {
            const double r = 1 / std::sqrt(2.0);
            for (Eigen::Index i = 0; i < dim; i++) {
                if (!(i & ma)) {
                    cd a0 = s.amp(i), a1 = s.amp(i | ma);
                    s.amp(i) = r * (a0 + a1);
                    s.amp(i | ma) = r * (a0 - a1);
                }
            }
            break;
        }
        case GateKind::RY: {
            // exp(-i Y theta) = [[cos, -sin], [sin, cos]]
            const double c = std::cos(g.angle), sn = std::sin(g.angle);
            for (Eigen::Index i = 0; i < dim; i++) {
                if (!(i & ma)) {
                    cd a0 = s.amp(i), a1 = s.amp(i | ma);
                    s.amp(i) = c * a0 - sn * a1;
                    s.amp(i | ma) = sn * a0 + c * a1;
                }
            }
            break;
        }
    }
}

StateVector apply_circuit(StateVector s, const Circuit &c) {
    require_small(c.num_qubits, "apply_circuit");
    if (s.num_qubits != c.num_qubits) {
        throw std::invalid_argument("apply_circuit: size mismatch");
    }
    for (const auto &l : c.layers) {
        for (const auto &g : l.gates) {
            apply_gate(s, g);
        }
    }
    return s;
}

std::vector<MeasurementOutcome> measure_qubit(const StateVector &s, size_t q) {
    const Eigen::Index m = Eigen::Index{1} << q;
    std::vector<MeasurementOutcome> out;
    for (int bit : {0, 1}) {
        StateVector post = s;
        for (Eigen::Index i = 0; i < post.amp.size(); i++) {
            if (((i & m) != 0) != (bit == 1)) {
                post.amp(i) = 0;
            }
        }
        double p = post.amp.squaredNorm();
        if (p > 0) {
            post.amp /= std::sqrt(p);
            out.push_back({bit, p, std::move(post)});
        }
    }
    return out;
}

namespace {

// P|b> = phase(b) |b ^ flip>.
struct PauliAction {
    size_t flip = 0;
    std::vector<cd> phase;
};

PauliAction pauli_action(const PauliTerm &p) {
    size_t n = p.num_qubits();
    require_small(n, "pauli_action");
    size_t zm = 0;
    int ny = 0;
    PauliAction a;
    for (size_t q = 0; q < n; q++) {
        a.flip |= size_t{p.x(q)} << q;
        zm |= size_t{p.z(q)} << q;
        ny += p.x(q) && p.z(q);
    }
    // P = sign * i^ny * X^x Z^z
    const cd iy[4] = {1.0, cd(0, 1), -1.0, cd(0, -1)};
    cd base = iy[ny % 4] * static_cast<double>(p.sign());
    a.phase.resize(size_t{1} << n);
    for (size_t b = 0; b < a.phase.size(); b++) {
        a.phase[b] = std::popcount(b & zm) % 2 ? -base : base;
    }
    return a;
}

}  // namespace

DenseMatrix pauli_matrix(const PauliTerm &p) {
    PauliAction a = pauli_action(p);
    auto dim = static_cast<Eigen::Index>(a.phase.size());
    DenseMatrix m = DenseMatrix::Zero(dim, dim);
    for (size_t b = 0; b < a.phase.size(); b++) {
        m(static_cast<Eigen::Index>(b ^ a.flip), static_cast<Eigen::Index>(b)) = a.phase[b];
    }
    return m;
}

DenseMatrix pauli_left(const PauliTerm &p, const DenseMatrix &m) {
    PauliAction a = pauli_action(p);
    if (static_cast<size_t>(m.rows()) != a.phase.size()) {
        throw std::invalid_argument("pauli_left: dimension mismatch");
    }
    DenseMatrix out(m.rows(), m.cols());
    for (size_t b = 0; b < a.phase.size(); b++) {
        out.row(static_cast<Eigen::Index>(b ^ a.flip)) = a.phase[b] * m.row(static_cast<Eigen::Index>(b));
    }
    return out;
}

DenseMatrix pauli_right(const DenseMatrix &m, const PauliTerm &p) {
    PauliAction a = pauli_action(p);
    if (static_cast<size_t>(m.cols()) != a.phase.size()) {
        throw std::invalid_argument("pauli_right: dimension mismatch");
    }
    DenseMatrix out(m.rows(), m.cols());
    for (size_t b = 0; b < a.phase.size(); b++) {
        out.col(static_cast<Eigen::Index>(b)) = a.phase[b] * m.col(static_cast<Eigen::Index>(b ^ a.flip));
    }
    return out;
}

DenseMatrix density(const StateVector &s) {
    return s.amp * s.amp.adjoint();
}

DenseMatrix circuit_unitary(const Circuit &c) {
    require_small(c.num_qubits, "circuit_unitary");
    size_t dim = size_t{1} << c.num_qubits;
    DenseMatrix u(static_cast<Eigen::Index>(dim), static_cast<Eigen::Index>(dim));
    for (size_t b = 0; b < dim; b++) {
        u.col(static_cast<Eigen::Index>(b)) = apply_circuit(StateVector::basis(c.num_qubits, b), c).amp;
    }
    return u;
}

DenseMatrix exact_gibbs(const Hamiltonian &h, double beta) {
    size_t n = h.num_qubits();
    require_small(n, "exact_gibbs");
    if (!is_commuting(h)) {
        throw std::invalid_argument("exact_gibbs: terms must commute");
    }
    Eigen::Index dim = Eigen::Index{1} << n;
    DenseMatrix rho = DenseMatrix::Identity(dim, dim);
    double t = std::tanh(beta);
    for (const auto &term : h.terms) {
        rho += t * pauli_right(rho, term);
    }
    return rho / rho.trace();
}

DenseMatrix ensemble_density(const std::vector<std::pair<double, StateVector>> &members) {
    if (members.empty()) {
        throw std::invalid_argument("ensemble_density: no members");
    }
    require_small(members[0].second.num_qubits, "ensemble_density");
    Eigen::Index dim = members[0].second.amp.size();
    DenseMatrix rho = DenseMatrix::Zero(dim, dim);
    for (const auto &[p, s] : members) {
        if (s.amp.size() != dim) {
            throw std::invalid_argument("ensemble_density: size mismatch");
        }
        rho += p * density(s);
    }
    return rho;
}

double trace_distance(const DenseMatrix &a, const DenseMatrix &b) {
    if (a.rows() != b.rows() || a.cols() != b.cols()) {
        throw std::invalid_argument("trace_distance: dimension mismatch");
    }
    DenseMatrix d = a - b;
    d = (d + d.adjoint()) / 2.0;
    Eigen::SelfAdjointEigenSolver<DenseMatrix> es(d, Eigen::EigenvaluesOnly);
    return es.eigenvalues().cwiseAbs().sum() / 2;
}

ConjugationReport verify_conjugation(const Circuit &c, const Hamiltonian &h) {
    for (const auto &l : c.layers) {
        for (const auto &g : l.gates) {
            if (g.kind == GateKind::RY) {
                throw std::invalid_argument("verify_conjugation: Clifford circuits only");
            }
        }
    }
    require_small(c.num_qubits, "verify_conjugation");
    Hamiltonian mapped = apply_to_hamiltonian(c, h);
    Circuit inv = c.reversed();
    for (auto &l : inv.layers) {
        std::reverse(l.gates.begin(), l.gates.end());
    }
    ConjugationReport r;
    // Column b of U P U^dagger is U P U^dagger |b>.
    auto check = [&](const PauliTerm &before, const PauliTerm &after) {
        PauliAction pb = pauli_action(before), pa = pauli_action(after);
        for (size_t b = 0; b < pa.phase.size(); b++) {
            StateVector s = apply_circuit(StateVector::basis(c.num_qubits, b), inv);
            StateVector t = s;
            for (size_t k = 0; k < pb.phase.size(); k++) {
                t.amp(static_cast<Eigen::Index>(k ^ pb.flip)) = pb.phase[k] * s.amp(static_cast<Eigen::Index>(k));
            }
            t = apply_circuit(std::move(t), c);
            t.amp(static_cast<Eigen::Index>(b ^ pa.flip)) -= pa.phase[b];
            r.max_deviation = std::max(r.max_deviation, t.amp.cwiseAbs().maxCoeff());
        }
        r.terms_checked++;
    };
    for (size_t k = 0; k < h.terms.size(); k++) {
        check(h.terms[k], mapped.terms[k]);
    }
    for (size_t k = 0; k < h.logicals.size(); k++) {
        check(h.logicals[k].second, mapped.logicals[k].second);
    }
    return r;
}

}  // namespace stabgibbs

namespace stabgibbs {

DenseMatrix diagonal_density(const Distribution &p) {
    Eigen::VectorXcd d(static_cast<Eigen::Index>(p.size()));
    for (size_t i = 0; i < p.size(); i++) {
        d(static_cast<Eigen::Index>(i)) = p[i];
    }
    return d.asDiagonal();
}

namespace {

// Measures q, applies `then` to each post-measurement state and collects the weighted leaves.
template <class F>
void branch_on(const StateVector &s, size_t q, double weight, F &&then) {
    for (auto &o : measure_qubit(s, q)) {
        then(o.bit, weight * o.probability, o.state);
    }
}

void reset_to_zero(StateVector &s, size_t q, int bit) {
    if (bit) {
        apply_gate(s, Gate::x(q));
    }
}

}  // namespace

DenseMatrix parity_check_protocol_density(int n, double beta) {
    if (n < 2 || n % 2 != 0 || n + 2 > static_cast<int>(kMaxDenseQubits)) {
        throw std::invalid_argument("parity_check_protocol_density: n must be even with n + 2 <= 10");
    }
    size_t data = static_cast<size_t>(n + 1);
    size_t anc = data;
    size_t N = data + 1;
    StateVector s = StateVector::basis(N, 0);
    double theta = rotation_angle(beta);
    for (size_t q = 0; q < data; q++) {
        apply_gate(s, Gate::ry(q, theta));
    }
    for (size_t q = 0; q < data; q++) {
        apply_gate(s, Gate::cx(q, anc));
    }

    std::vector<std::pair<double, StateVector>> leaves;
    branch_on(s, anc, 1.0, [&](int a, double pa, StateVector sa) {
        reset_to_zero(sa, anc, a);
        // read all data qubits; the recursion enumerates every outcome string
        std::function<void(size_t, double, StateVector)> read = [&](size_t q, double w, StateVector st) {
            if (q == data) {
                if (a == 1) {
                    for (size_t k = 0; k + 1 < data; k++) {
                        apply_gate(st, Gate::x(k));
                    }
                }
                // parity of the first n qubits onto the ancilla, rotate the reset qubit, uncompute
                for (size_t k = 0; k + 1 < data; k++) {
                    apply_gate(st, Gate::cx(k, anc));
                }
                int pi = measure_qubit(st, anc)[0].bit ? -1 : +1;
                double b_eff = (a == 1 ? -beta : beta) * (1 + pi);
                apply_gate(st, Gate::ry(data - 1, std::atan(std::exp(-b_eff))));
                for (size_t k = 0; k + 1 < data; k++) {
                    apply_gate(st, Gate::cx(k, anc));
                }
                // the re-drawn qubit is read out like the rest
                branch_on(st, data - 1, w, [&](int, double pf, StateVector sf) {
                    if (a == 1) {
                        for (size_t k = 0; k < data; k++) {
                            apply_gate(sf, Gate::x(k));
                        }
                    }
                    leaves.emplace_back(pf, std::move(sf));
                });
                return;
            }
            branch_on(st, q, w, [&](int bit, double pq, StateVector sq) {
                if (q + 1 == data) {
                    reset_to_zero(sq, q, bit);
                }
                read(q + 1, pq, std::move(sq));
            });
        };
        read(0, pa, std::move(sa));
    });

    // the ancilla is |0> on every leaf: keep the data block
    Eigen::Index dim = Eigen::Index{1} << data;
    DenseMatrix rho = DenseMatrix::Zero(dim, dim);
    for (const auto &[p, st] : leaves) {
        if (st.amp.tail(dim).norm() > 1e-12) {
            throw std::logic_error("parity_check_protocol_density: ancilla not reset");
        }
        Eigen::VectorXcd v = st.amp.head(dim);
        rho += p * v * v.adjoint();
    }
    return rho;
}

DenseMatrix toric_protocol_density(int L, double beta, ParityStep step) {
    Circuit w = gen_w_gateset(L);
    if (w.num_qubits > kMaxDenseQubits) {
        throw std::invalid_argument("toric_protocol_density: too many qubits");
    }
    DenseMatrix u = circuit_unitary(w.reversed());
    return u * diagonal_density(toric_frame_law(L, beta, step)) * u.adjoint();
}

}  // namespace stabgibbs
