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

#include "zlgt/stator.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace zlgt {

using std::numbers::pi;

Eigen::MatrixXcd stator_entangler(const LinkAlgebra &alg, Direction direction) {
    const int N = alg.N;
    Eigen::MatrixXcd U = Eigen::MatrixXcd::Zero(N * N, N * N);
    Eigen::MatrixXcd Qm = alg.identity;
    for (int m = 0; m < N; ++m) {
        U.block(m * N, m * N, N, N) = Qm;
        Qm = alg.Q * Qm;
    }
    return direction == Direction::forward ? U : Eigen::MatrixXcd(U.adjoint());
}

Eigen::VectorXcd ancilla_in_state(int N) {
    return Eigen::VectorXcd::Constant(N, cplx(1.0 / std::sqrt(static_cast<double>(N)), 0.0));
}

Eigen::MatrixXcd stator_isometry(const LinkAlgebra &alg) {
    Eigen::MatrixXcd embed = kron(ancilla_in_state(alg.N), alg.identity);
    return stator_entangler(alg, Direction::forward) * embed;
}

Eigen::MatrixXcd z3_collision_entangler() {
    SpinOne s = spin_one();
    Eigen::MatrixXcd G = kron(s.Fz, s.Fz);
    Eigen::MatrixXcd U = Eigen::MatrixXcd::Zero(9, 9);
    for (int i = 0; i < 9; ++i) {
        U(i, i) = std::polar(1.0, -2.0 * pi / 3.0 * G(i, i).real());
    }
    return U;
}

Eigen::MatrixXcd ancilla_flip(int N) {
    Eigen::MatrixXcd F = Eigen::MatrixXcd::Zero(N, N);
    for (int m = 0; m < N; ++m) {
        F((N - m) % N, m) = 1.0;
    }
    return F;
}

Eigen::MatrixXcd ancilla_fourier(const LinkAlgebra &alg) { return alg.VD; }

Eigen::MatrixXcd control_field_rotation(const LinkAlgebra &alg, double tau, double lambda_B) {
    Eigen::MatrixXcd H = alg.Q + alg.Q.adjoint();
    return expm_hermitian(H, tau * lambda_B);
}

Eigen::MatrixXcd collision_generator(const CollisionCouplings &g) {
    SpinOne s = spin_one();
    Eigen::MatrixXcd FF = kron(s.Fx, s.Fx) + kron(s.Fy, s.Fy) + kron(s.Fz, s.Fz);
    return g.g0 * Eigen::MatrixXcd::Identity(9, 9) + g.g1 * FF + g.g2 * FF * FF;
}

Eigen::MatrixXcd collision_unitary(const CollisionCouplings &g, double alpha) {
    return expm_hermitian(collision_generator(g), alpha);
}

Eigen::MatrixXcd rwa_project(const Eigen::MatrixXcd &generator) {
    if (generator.rows() != 9 || generator.cols() != 9) {
        throw std::invalid_argument("rwa_project expects a spin-1 pair generator");
    }
    // Each (m_F, m~_F) pair is one basis state, so the preserved block is the diagonal.
    return generator.diagonal().asDiagonal();
}

Eigen::MatrixXcd rwa_collision_unitary(const CollisionCouplings &g, double alpha) {
    return expm_hermitian(rwa_project(collision_generator(g)), alpha);
}

EtaCoefficients eta_printed(const CollisionCouplings &g) {
    return {g.g0 + 1.5 * g.g2, g.g1 - 0.5 * g.g2, 3.0 * g.g2, 0.0};
}

namespace {

// Diagonal basis {1, Fz Fz~, N0 N0~, N0 + N0~} as columns over the 9 pair states.
Eigen::Matrix<double, 9, 4> eta_basis() {
    SpinOne s = spin_one();
    Eigen::MatrixXcd I3 = Eigen::MatrixXcd::Identity(3, 3);
    Eigen::MatrixXcd cols[4] = {Eigen::MatrixXcd::Identity(9, 9), kron(s.Fz, s.Fz), kron(s.N0, s.N0),
                                kron(s.N0, I3) + kron(I3, s.N0)};
    Eigen::Matrix<double, 9, 4> B;
    for (int c = 0; c < 4; ++c) {
        B.col(c) = cols[c].diagonal().real();
    }
    return B;
}

}  // namespace

EtaCoefficients eta_exact(const CollisionCouplings &g) {
    Eigen::Matrix<double, 9, 4> B = eta_basis();
    Eigen::VectorXd d = rwa_project(collision_generator(g)).diagonal().real();
    Eigen::Vector4d c = B.colPivHouseholderQr().solve(d);
    return {c(0), c(1), c(2), c(3)};
}

Eigen::MatrixXcd eta_unitary(const EtaCoefficients &eta, double alpha) {
    Eigen::Matrix<double, 9, 4> B = eta_basis();
    Eigen::Vector4d c(eta.eta0, eta.eta1, eta.eta2, eta.eta3);
    Eigen::VectorXd d = B * c;
    Eigen::MatrixXcd U = Eigen::MatrixXcd::Zero(9, 9);
    for (int i = 0; i < 9; ++i) {
        U(i, i) = std::polar(1.0, -alpha * d(i));
    }
    return U;
}

CollisionComposition compose_z3_entangler(const EtaCoefficients &eta, bool compensate_single) {
    if (eta.eta1 == 0.0) {
        throw std::invalid_argument("eta1 = 0: the entangling duration is undefined");
    }
    CollisionComposition out;
    out.alpha = 2.0 * pi / (3.0 * eta.eta1);
    const double r = eta.eta2 / (3.0 * eta.eta1);
    out.kappa = static_cast<int>(std::floor(r)) + 1;
    out.beta = 2.0 * pi * (out.kappa - r);
    SpinOne s = spin_one();
    Eigen::MatrixXcd N0N0 = kron(s.N0, s.N0);
    Eigen::MatrixXcd U = eta_unitary(eta, out.alpha);
    Eigen::MatrixXcd Vs = Eigen::MatrixXcd::Identity(9, 9);
    for (int i = 0; i < 9; ++i) {
        Vs(i, i) = std::polar(1.0, -out.beta * N0N0(i, i).real());
    }
    U = Vs * U;
    if (compensate_single) {
        Eigen::MatrixXcd I3 = Eigen::MatrixXcd::Identity(3, 3);
        Eigen::MatrixXcd single = kron(s.N0, I3) + kron(I3, s.N0);
        Eigen::MatrixXcd Vl = Eigen::MatrixXcd::Identity(9, 9);
        for (int i = 0; i < 9; ++i) {
            Vl(i, i) = std::polar(1.0, out.alpha * eta.eta3 * single(i, i).real());
        }
        U = Vl * U;
    }
    out.unitary = U;
    return out;
}

std::vector<GateOp> plaquette_stator_sequence(const RegisterLayout &layout, Vertex plaquette, Direction direction) {
    const LatticeGeometry &g = layout.geometry();
    if (!g.has_plaquette(plaquette)) {
        throw std::out_of_range("unknown plaquette");
    }
    const std::size_t anc = layout.ancilla_for(plaquette);
    auto links = g.plaquette_links(plaquette);
    std::vector<GateOp> seq;
    // Application order U4^dag, U3^dag, U2, U1 (the factors commute).
    for (int i = 3; i >= 0; --i) {
        const bool dag = i >= 2;
        seq.push_back(make_gate(layout, dag ? "entangler_dag" : "entangler",
                                {layout.link_register(links[static_cast<std::size_t>(i)]), anc}));
    }
    if (direction == Direction::inverse) {
        std::vector<GateOp> inv;
        for (auto it = seq.rbegin(); it != seq.rend(); ++it) {
            inv.push_back(adjoint_gate(layout, *it));
        }
        return inv;
    }
    return seq;
}

GaugeMatterBundle gauge_matter_gates(const RegisterLayout &layout, const Link &link, double theta,
                                     double theta_prime) {
    if (!layout.geometry().has_link(link.origin, link.k)) {
        throw std::out_of_range("nonexistent link");
    }
    LinkAlgebra alg = make_link_algebra(layout.N());
    GaugeMatterBundle b;
    b.link = link;
    b.theta = theta;
    b.theta_prime = theta_prime;
    const std::size_t lr = layout.link_register(link);
    const std::size_t fr = layout.fermion_register(link.origin);
    Eigen::MatrixXcd n0 = Eigen::MatrixXcd::Zero(2, 2);
    Eigen::MatrixXcd n1 = Eigen::MatrixXcd::Zero(2, 2);
    n0(0, 0) = 1.0;
    n1(1, 1) = 1.0;
    b.U_W = {{lr, fr}, kron(n0, alg.identity) + kron(n1, alg.Q)};
    b.U_W_tilde_dag = kron(alg.identity, n0) + kron(alg.P, n1);
    b.V_theta = Eigen::MatrixXcd::Identity(2, 2);
    b.V_theta(1, 1) = std::polar(1.0, -theta);
    b.V_theta_prime = Eigen::MatrixXcd::Identity(2, 2);
    b.V_theta_prime(1, 1) = std::polar(1.0, -theta_prime);
    LocalOperator h = hopping_op(layout, link.origin, link.end());
    b.tunneling = {h.support, h.matrix + h.matrix.adjoint()};
    return b;
}

}  // namespace zlgt
