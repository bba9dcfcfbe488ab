// Copyright 2026 The zlgt Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "zlgt/gate.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>

#include "zlgt/stator.hpp"

namespace zlgt {

namespace {

const std::vector<std::string> kMarkers = {"start", "idle", "move_right", "move_back"};

void expect(bool ok, const std::string &name, const char *what) {
    if (!ok) {
        throw std::invalid_argument("gate " + name + ": " + what);
    }
}

RegisterKind kind_of(const RegisterLayout &layout, std::size_t r) {
    if (r >= layout.size()) {
        throw std::out_of_range("gate target out of range");
    }
    return layout.registers()[r].kind;
}

Eigen::MatrixXcd diag_number_phase(double phase) {
    Eigen::MatrixXcd m = Eigen::MatrixXcd::Identity(2, 2);
    m(1, 1) = std::polar(1.0, -phase);
    return m;
}

Eigen::MatrixXcd hop_matrix(std::size_t modes, double phi) {
    // c^dag on the first mode, c on the last, parity string on the modes in between.
    const Eigen::Index D = Eigen::Index(1) << modes;
    Eigen::MatrixXcd H = Eigen::MatrixXcd::Zero(D, D);
    const Eigen::Index first = 1;
    const Eigen::Index last = Eigen::Index(1) << (modes - 1);
    for (Eigen::Index s = 0; s < D; ++s) {
        if ((s & last) && !(s & first)) {
            Eigen::Index t = (s ^ last) | first;
            int between = 0;
            for (std::size_t b = 1; b + 1 < modes; ++b) {
                between += static_cast<int>((s >> b) & 1);
            }
            double sign = (between % 2 == 0) ? 1.0 : -1.0;
            H(t, s) += sign;
            H(s, t) += sign;
        }
    }
    return expm_hermitian(H, phi);
}

}  // namespace

GateOp make_marker(const std::string &label, int stage) {
    if (std::find(kMarkers.begin(), kMarkers.end(), label) == kMarkers.end()) {
        throw std::invalid_argument("unknown marker " + label);
    }
    GateOp g;
    g.name = label;
    g.stage = stage;
    g.matrix = Eigen::MatrixXcd::Identity(1, 1);
    return g;
}

GateOp make_gate(const RegisterLayout &layout, const std::string &name, std::vector<std::size_t> targets,
                 std::vector<double> params, int stage) {
    if (targets.empty()) {
        expect(params.empty(), name, "markers take no parameters");
        return make_marker(name, stage);
    }
    const LinkAlgebra alg = make_link_algebra(layout.N());
    const int N = layout.N();
    GateOp g;
    g.name = name;
    g.targets = targets;
    g.params = params;
    g.stage = stage;

    auto arity = [&](std::size_t nt, std::size_t np) {
        expect(targets.size() == nt, name, "wrong number of targets");
        expect(params.size() == np, name, "wrong number of parameters");
    };
    auto kinds = [&](std::initializer_list<RegisterKind> ks) {
        std::size_t i = 0;
        for (RegisterKind k : ks) {
            expect(kind_of(layout, targets[i]) == k, name, "target register of the wrong kind");
            ++i;
        }
    };

    if (name == "entangler" || name == "entangler_dag") {
        arity(2, 0);
        kinds({RegisterKind::link, RegisterKind::ancilla});
        g.matrix = stator_entangler(alg, name == "entangler" ? Direction::forward : Direction::inverse);
    } else if (name == "collision" || name == "collision_dag") {
        arity(2, 0);
        kinds({RegisterKind::link, RegisterKind::ancilla});
        expect(N == 3, name, "requires N = 3");
        g.matrix = z3_collision_entangler();
        if (name == "collision_dag") {
            g.matrix.adjointInPlace();
        }
    } else if (name == "link_fourier" || name == "link_fourier_dag") {
        arity(1, 0);
        kinds({RegisterKind::link});
        g.matrix = name == "link_fourier" ? alg.VD : Eigen::MatrixXcd(alg.VD.adjoint());
    } else if (name == "ancilla_fourier" || name == "ancilla_fourier_dag") {
        arity(1, 0);
        kinds({RegisterKind::ancilla});
        g.matrix = name == "ancilla_fourier" ? ancilla_fourier(alg) : Eigen::MatrixXcd(ancilla_fourier(alg).adjoint());
    } else if (name == "ancilla_flip") {
        arity(1, 0);
        kinds({RegisterKind::ancilla});
        g.matrix = ancilla_flip(N);
    } else if (name == "fermion_ancilla_collision" || name == "fermion_ancilla_collision_dag") {
        arity(2, 0);
        kinds({RegisterKind::fermion, RegisterKind::ancilla});
        Eigen::MatrixXcd n0 = Eigen::MatrixXcd::Zero(2, 2);
        Eigen::MatrixXcd n1 = Eigen::MatrixXcd::Zero(2, 2);
        n0(0, 0) = 1.0;
        n1(1, 1) = 1.0;
        g.matrix = kron(alg.identity, n0) + kron(alg.P, n1);
        if (name == "fermion_ancilla_collision_dag") {
            g.matrix.adjointInPlace();
        }
    } else if (name == "spurious_phase") {
        arity(1, 1);
        kinds({RegisterKind::fermion});
        g.matrix = diag_number_phase(params[0]);
    } else if (name == "gauge_matter_coupling" || name == "gauge_matter_coupling_dag") {
        arity(2, 0);
        kinds({RegisterKind::link, RegisterKind::fermion});
        Eigen::MatrixXcd n0 = Eigen::MatrixXcd::Zero(2, 2);
        Eigen::MatrixXcd n1 = Eigen::MatrixXcd::Zero(2, 2);
        n0(0, 0) = 1.0;
        n1(1, 1) = 1.0;
        g.matrix = kron(n0, alg.identity) + kron(n1, alg.Q);
        if (name == "gauge_matter_coupling_dag") {
            g.matrix.adjointInPlace();
        }
    } else if (name == "hop") {
        expect(targets.size() >= 2, name, "needs at least two fermion modes");
        expect(params.size() == 1, name, "wrong number of parameters");
        for (std::size_t i = 0; i < targets.size(); ++i) {
            expect(kind_of(layout, targets[i]) == RegisterKind::fermion, name, "target register of the wrong kind");
            expect(i == 0 || targets[i] == targets[i - 1] + 1, name, "modes must be contiguous");
        }
        g.matrix = hop_matrix(targets.size(), params[0]);
    } else if (name == "control_field") {
        arity(1, 2);
        kinds({RegisterKind::ancilla});
        g.matrix = control_field_rotation(alg, params[0], params[1]);
    } else if (name == "electric") {
        arity(1, 3);
        kinds({RegisterKind::link});
        ElectricVariant v = params[2] == 0.0 ? ElectricVariant::group : ElectricVariant::z3_implementation;
        Eigen::MatrixXcd h = electric_link_matrix(alg, v);
        g.matrix = Eigen::MatrixXcd::Zero(N, N);
        for (int m = 0; m < N; ++m) {
            g.matrix(m, m) = std::polar(1.0, -params[0] * params[1] * h(m, m).real());
        }
    } else if (name == "mass") {
        arity(1, 3);
        kinds({RegisterKind::fermion});
        g.matrix = diag_number_phase(params[0] * params[1] * params[2]);
    } else {
        throw std::invalid_argument("unknown gate " + name);
    }
    return g;
}

GateOp adjoint_gate(const RegisterLayout &layout, const GateOp &g) {
    if (g.is_marker()) {
        return g;
    }
    static const std::map<std::string, std::string> swap = {
        {"entangler", "entangler_dag"},
        {"entangler_dag", "entangler"},
        {"collision", "collision_dag"},
        {"collision_dag", "collision"},
        {"link_fourier", "link_fourier_dag"},
        {"link_fourier_dag", "link_fourier"},
        {"ancilla_fourier", "ancilla_fourier_dag"},
        {"ancilla_fourier_dag", "ancilla_fourier"},
        {"ancilla_flip", "ancilla_flip"},
        {"fermion_ancilla_collision", "fermion_ancilla_collision_dag"},
        {"fermion_ancilla_collision_dag", "fermion_ancilla_collision"},
        {"gauge_matter_coupling", "gauge_matter_coupling_dag"},
        {"gauge_matter_coupling_dag", "gauge_matter_coupling"},
    };
    auto it = swap.find(g.name);
    if (it != swap.end()) {
        return make_gate(layout, it->second, g.targets, g.params, g.stage);
    }
    std::vector<double> p = g.params;
    // The first parameter is the angle or duration in every parametrized gate.
    p.at(0) = -p.at(0);
    return make_gate(layout, g.name, g.targets, p, g.stage);
}

}  // namespace zlgt
