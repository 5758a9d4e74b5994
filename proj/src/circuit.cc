#include "stabgibbs/circuit.h"

#include <cstdio>
#include <set>
#include <sstream>
#include <stdexcept>

namespace stabgibbs {

size_t Circuit::gate_count() const {
    size_t n = 0;
    for (const auto &l : layers) {
        n += l.gates.size();
    }
    return n;
}

void Circuit::append(const Circuit &other) {
    if (other.num_qubits != num_qubits) {
        throw std::invalid_argument("Circuit::append: size mismatch");
    }
    layers.insert(layers.end(), other.layers.begin(), other.layers.end());
}

Circuit Circuit::reversed() const {
    Circuit out{num_qubits, {layers.rbegin(), layers.rend()}};
    return out;
}

namespace {

void check_gate(const Gate &g, size_t n) {
    if (g.a >= n || (g.kind == GateKind::CX && g.b >= n)) {
        throw std::invalid_argument("gate site out of range");
    }
    if (g.kind == GateKind::CX && g.a == g.b) {
        throw std::invalid_argument("CX control equals target");
    }
}

void conjugate(const Gate &g, PauliTerm &t) {
    switch (g.kind) {
        case GateKind::CX:
            apply_cx(t, g.a, g.b);
            break;
        case GateKind::H:
            apply_h(t, g.a);
            break;
        case GateKind::X:
            apply_x(t, g.a);
            break;
        case GateKind::RY:
            throw std::invalid_argument("RY is not Clifford; cannot conjugate Pauli terms");
    }
}

std::string gate_text(const Gate &g) {
    switch (g.kind) {
        case GateKind::CX:
            return "CX " + std::to_string(g.a) + " " + std::to_string(g.b);
        case GateKind::H:
            return "H " + std::to_string(g.a);
        case GateKind::X:
            return "X " + std::to_string(g.a);
        case GateKind::RY: {
            char buf[64];
            std::snprintf(buf, sizeof buf, "%.17g", g.angle);
            return "RY " + std::to_string(g.a) + " " + buf;
        }
    }
    return "";
}

}  // namespace

void apply_circuit_to_term(const Circuit &c, PauliTerm &term) {
    if (term.num_qubits() != c.num_qubits) {
        throw std::invalid_argument("apply: circuit/term size mismatch");
    }
    for (const auto &layer : c.layers) {
        for (const auto &g : layer.gates) {
            conjugate(g, term);
        }
    }
}

Hamiltonian apply_to_hamiltonian(const Circuit &c, const Hamiltonian &h) {
    if (h.num_qubits() != c.num_qubits) {
        throw std::invalid_argument("apply_to_hamiltonian: size mismatch");
    }
    for (const auto &layer : c.layers) {
        for (const auto &g : layer.gates) {
            check_gate(g, c.num_qubits);
            if (g.kind == GateKind::RY) {
                throw std::invalid_argument("apply_to_hamiltonian: RY gates are not supported");
            }
        }
    }
    Hamiltonian out = h;
    for (auto &t : out.terms) {
        apply_circuit_to_term(c, t);
    }
    for (auto &[name, t] : out.logicals) {
        apply_circuit_to_term(c, t);
    }
    return out;
}

Circuit hadamard_layer(size_t num_qubits, const std::vector<size_t> &sites) {
    Circuit c{num_qubits, {}};
    Layer l;
    for (size_t q : sites) {
        l.gates.push_back(Gate::h(q));
    }
    c.layers.push_back(std::move(l));
    return c;
}

Hamiltonian apply_plan_decoupled(const MappingPlan &plan, const Hamiltonian &h) {
    return apply_to_hamiltonian(plan.classical, apply_to_hamiltonian(plan.quantum, h));
}

Hamiltonian apply_plan_diagonal(const MappingPlan &plan, const Hamiltonian &h) {
    Hamiltonian mid = apply_to_hamiltonian(plan.quantum, h);
    mid = apply_to_hamiltonian(hadamard_layer(h.num_qubits(), plan.hadamard_sites), mid);
    return apply_to_hamiltonian(plan.classical, mid);
}

namespace {

void xor_gate(const Gate &g, std::vector<uint8_t> &bits) {
    switch (g.kind) {
        case GateKind::CX:
            bits[g.b] ^= bits[g.a];
            break;
        case GateKind::X:
            bits[g.a] ^= 1;
            break;
        default:
            throw std::invalid_argument("run_xor: only CX and X act on basis states");
    }
}

}  // namespace

void run_xor(const Circuit &c, std::vector<uint8_t> &bits) {
    if (bits.size() != c.num_qubits) {
        throw std::invalid_argument("run_xor: size mismatch");
    }
    for (const auto &l : c.layers) {
        for (const auto &g : l.gates) {
            xor_gate(g, bits);
        }
    }
}

void run_xor_inverse(const Circuit &c, std::vector<uint8_t> &bits) {
    if (bits.size() != c.num_qubits) {
        throw std::invalid_argument("run_xor: size mismatch");
    }
    for (auto l = c.layers.rbegin(); l != c.layers.rend(); ++l) {
        for (auto g = l->gates.rbegin(); g != l->gates.rend(); ++g) {
            xor_gate(*g, bits);
        }
    }
}

Circuit embed(const Circuit &c, const std::vector<size_t> &sites, size_t num_qubits) {
    if (sites.size() != c.num_qubits) {
        throw std::invalid_argument("embed: site list size mismatch");
    }
    Circuit out{num_qubits, c.layers};
    for (auto &l : out.layers) {
        for (auto &g : l.gates) {
            g.a = sites.at(g.a);
            if (g.kind == GateKind::CX) {
                g.b = sites.at(g.b);
            }
        }
    }
    return out;
}

std::vector<Violation> audit_locality(const Circuit &c, const QubitLayout &layout, double radius) {
    std::vector<Violation> out;
    for (size_t k = 0; k < c.layers.size(); k++) {
        for (const auto &g : c.layers[k].gates) {
            if (g.kind != GateKind::CX) {
                continue;
            }
            double d = layout.distance(g.a, g.b);
            if (d > radius + 1e-9) {
                out.push_back({k, gate_text(g) + " spans distance " + std::to_string(d)});
            }
        }
    }
    return out;
}

std::vector<Violation> audit_layer_commutation(const Circuit &c) {
    std::vector<Violation> out;
    for (size_t k = 0; k < c.layers.size(); k++) {
        const auto &gs = c.layers[k].gates;
        for (size_t i = 0; i < gs.size(); i++) {
            for (size_t j = i + 1; j < gs.size(); j++) {
                const Gate &g = gs[i], &h = gs[j];
                std::set<size_t> sg{g.a}, sh{h.a};
                if (g.kind == GateKind::CX) {
                    sg.insert(g.b);
                }
                if (h.kind == GateKind::CX) {
                    sh.insert(h.b);
                }
                bool overlap = false;
                for (size_t q : sg) {
                    overlap |= sh.count(q) > 0;
                }
                if (!overlap) {
                    continue;
                }
                bool ok = g.kind == GateKind::CX && h.kind == GateKind::CX && g.a != h.b && h.a != g.b;
                if (!ok) {
                    out.push_back({k, gate_text(g) + " and " + gate_text(h) + " do not commute"});
                }
            }
        }
    }
    return out;
}

std::string export_circuit(const Circuit &c) {
    std::string out = "QUBITS " + std::to_string(c.num_qubits) + "\n";
    for (const auto &l : c.layers) {
        out += l.stage == Stage::Quantum ? "LAYER quantum\n" : "LAYER classical\n";
        for (const auto &g : l.gates) {
            out += gate_text(g);
            out += '\n';
        }
    }
    return out;
}

Circuit parse_circuit(std::string_view text) {
    Circuit c;
    bool have_header = false;
    std::istringstream in{std::string(text)};
    std::string line;
    size_t lineno = 0;
    auto fail = [&](const std::string &msg) {
        throw std::invalid_argument("line " + std::to_string(lineno) + ": " + msg);
    };
    auto site = [&](std::istringstream &ss) {
        long long v;
        if (!(ss >> v) || v < 0) {
            fail("expected a qubit index");
        }
        if (static_cast<size_t>(v) >= c.num_qubits) {
            fail("qubit " + std::to_string(v) + " out of range");
        }
        return static_cast<size_t>(v);
    };
    while (std::getline(in, line)) {
        lineno++;
        if (auto hash = line.find('#'); hash != std::string::npos) {
            line.erase(hash);
        }
        std::istringstream ss(line);
        std::string word;
        if (!(ss >> word)) {
            continue;
        }
        if (!have_header) {
            long long n;
            if (word != "QUBITS" || !(ss >> n) || n < 0) {
                fail("expected 'QUBITS <n>' header");
            }
            c.num_qubits = static_cast<size_t>(n);
            have_header = true;
        } else if (word == "LAYER") {
            std::string stage;
            ss >> stage;
            if (stage == "quantum") {
                c.layers.push_back({{}, Stage::Quantum});
            } else if (stage == "classical") {
                c.layers.push_back({{}, Stage::Classical});
            } else {
                fail("layer stage must be quantum or classical");
            }
        } else {
            if (c.layers.empty()) {
                fail("gate before first LAYER");
            }
            Gate g;
            if (word == "CX") {
                size_t a = site(ss);
                size_t b = site(ss);
                if (a == b) {
                    fail("CX control equals target");
                }
                g = Gate::cx(a, b);
            } else if (word == "H") {
                g = Gate::h(site(ss));
            } else if (word == "X") {
                g = Gate::x(site(ss));
            } else if (word == "RY") {
                size_t a = site(ss);
                double theta;
                if (!(ss >> theta)) {
                    fail("expected an angle");
                }
                g = Gate::ry(a, theta);
            } else {
                fail("unknown instruction '" + word + "'");
            }
            std::string extra;
            if (ss >> extra) {
                fail("trailing text '" + extra + "'");
            }
            c.layers.back().gates.push_back(g);
        }
    }
    if (!have_header) {
        throw std::invalid_argument("line " + std::to_string(lineno) + ": missing QUBITS header");
    }
    return c;
}

std::string export_stim(const Circuit &c) {
    std::string out;
    for (size_t k = 0; k < c.layers.size(); k++) {
        if (k > 0) {
            out += "TICK\n";
        }
        for (const auto &g : c.layers[k].gates) {
            if (g.kind == GateKind::RY) {
                throw std::invalid_argument("stim export supports Clifford gates only");
            }
            out += gate_text(g);
            out += '\n';
        }
    }
    return out;
}

}  // namespace stabgibbs
