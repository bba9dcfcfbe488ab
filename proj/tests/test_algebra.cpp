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

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "zlgt/algebra.hpp"
#include "zlgt/lattice.hpp"
#include "zlgt/oracle.hpp"

namespace zlgt {
namespace {

using std::numbers::pi;

double max_abs(const Eigen::MatrixXcd &m) { return m.cwiseAbs().maxCoeff(); }

Eigen::MatrixXcd dense(const RegisterLayout &L, const LocalOperator &op) {
    Eigen::MatrixXcd M = Eigen::MatrixXcd::Zero(static_cast<Eigen::Index>(L.total_dim()),
                                                static_cast<Eigen::Index>(L.total_dim()));
    accumulate_dense(L, op, M);
    return M;
}

TEST(LinkAlgebra, ClockShift) {
    for (int N = 2; N <= 5; ++N) {
        LinkAlgebra a = make_link_algebra(N);
        Eigen::MatrixXcd PN = a.identity;
        Eigen::MatrixXcd QN = a.identity;
        for (int i = 0; i < N; ++i) {
            PN = PN * a.P;
            QN = QN * a.Q;
        }
        EXPECT_LT(max_abs(PN - a.identity), 1e-12) << N;
        EXPECT_LT(max_abs(QN - a.identity), 1e-12) << N;
        EXPECT_LT(max_abs(a.P * a.Q * a.P.adjoint() - a.omega * a.Q), 1e-12) << N;
        EXPECT_LT(max_abs(a.VD.adjoint() * a.P * a.VD - a.Q), 1e-12) << N;
        EXPECT_LT(max_abs(expm_normal(a.logP) - a.P), 1e-12) << N;
        EXPECT_LT(max_abs(expm_normal(a.logQ) - a.Q), 1e-12) << N;
        EXPECT_LT(unitarity_residual(a.VD), 1e-12);
    }
}

TEST(LinkAlgebra, Z3Specifics) {
    LinkAlgebra a = make_link_algebra(3);
    const cplx w = std::polar(1.0, 2 * pi / 3);
    EXPECT_LT(std::abs(a.P(1, 1) - w), 1e-15);
    EXPECT_LT(std::abs(a.P(2, 2) - w * w), 1e-15);
    EXPECT_LT(max_abs(a.P * a.Q * a.P.adjoint() - w * a.Q), 1e-14);
    EXPECT_LT(max_abs(a.logP - (2 * pi / (3 * std::sqrt(3.0))) * (a.P - a.P.adjoint())), 1e-14);
    Eigen::MatrixXcd Fz = cplx(0, -1.0 / std::sqrt(3.0)) * (a.P - a.P.adjoint());
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(Fz);
    EXPECT_NEAR(es.eigenvalues()(0), -1.0, 1e-14);
    EXPECT_NEAR(es.eigenvalues()(1), 0.0, 1e-14);
    EXPECT_NEAR(es.eigenvalues()(2), 1.0, 1e-14);
}

TEST(Fermions, SingleMode) {
    RegisterLayout L = build_layout(LatticeGeometry(2, 2), 2, AncillaPolicy::none);
    LocalOperator c = fermion_op(L, {0, 0}, FermionKind::create);
    Eigen::MatrixXcd C = dense(L, c);
    std::size_t s = L.strides()[L.fermion_register({0, 0})];
    Eigen::VectorXcd vac = Eigen::VectorXcd::Zero(static_cast<Eigen::Index>(L.total_dim()));
    vac(0) = 1.0;
    Eigen::VectorXcd one = C * vac;
    EXPECT_NEAR(std::abs(one(static_cast<Eigen::Index>(s))), 1.0, 1e-15);
    EXPECT_LT((C * one).norm(), 1e-15);
}

TEST(Fermions, Anticommutation) {
    RegisterLayout L = build_layout(LatticeGeometry(2, 2), 2, AncillaPolicy::none);
    Eigen::MatrixXcd a = dense(L, fermion_op(L, {0, 0}, FermionKind::create));
    Eigen::MatrixXcd b = dense(L, fermion_op(L, {1, 1}, FermionKind::create));
    Eigen::MatrixXcd bd = dense(L, fermion_op(L, {1, 1}, FermionKind::annihilate));
    EXPECT_LT(max_abs(a * b + b * a), 1e-14);
    EXPECT_LT(max_abs(a * bd + bd * a), 1e-14);
    Eigen::MatrixXcd ad = a.adjoint();
    EXPECT_LT(max_abs(a * ad + ad * a - Eigen::MatrixXcd::Identity(a.rows(), a.cols())), 1e-14);
    Eigen::MatrixXcd n = dense(L, number_op(L, {1, 0}));
    EXPECT_LT(max_abs(n * n - n), 1e-14);
    EXPECT_LT(max_abs(n - Eigen::MatrixXcd(n.diagonal().asDiagonal())), 1e-15);
}

TEST(Fermions, HoppingMatchesProduct) {
    RegisterLayout L = build_layout(LatticeGeometry(2, 2), 2, AncillaPolicy::none);
    Eigen::MatrixXcd cd = dense(L, fermion_op(L, {0, 0}, FermionKind::create));
    Eigen::MatrixXcd c = dense(L, fermion_op(L, {1, 1}, FermionKind::annihilate));
    EXPECT_LT(max_abs(dense(L, hopping_op(L, {0, 0}, {1, 1})) - cd * c), 1e-14);
}

TEST(Gauss, SingletAndMeson) {
    RegisterLayout L = build_layout(LatticeGeometry(2, 2), 3, AncillaPolicy::none);
    StateVector s = build_global_singlet(L);
    LinkAlgebra a = make_link_algebra(3);
    LocalOperator hop = hopping_op(L, {0, 0}, {1, 0});
    LocalOperator q = tensor_operator(L, {L.link_register({0, 0}, 1)}, {{L.link_register({0, 0}, 1), a.Q}});
    StateVector meson = s;
    apply_operator(meson, multiply(L, q, hop));
    ASSERT_NEAR(meson.norm(), 1.0, 1e-12);
    for (const Vertex &v : L.geometry().vertices()) {
        Eigen::VectorXcd d = gauss_law_diagonal(L, v);
        EXPECT_LT((d.cwiseProduct(s.amplitudes()) - s.amplitudes()).norm(), 1e-12);
        EXPECT_LT((d.cwiseProduct(meson.amplitudes()) - meson.amplitudes()).norm(), 1e-12);
        Eigen::VectorXcd d3 = d.cwiseProduct(d).cwiseProduct(d);
        EXPECT_LT((d3 - Eigen::VectorXcd::Ones(d.size())).norm(), 1e-12);
    }
}

TEST(Hamiltonian, ElectricSpectrum) {
    LinkAlgebra a = make_link_algebra(3);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(electric_link_matrix(a, ElectricVariant::group));
    EXPECT_NEAR(es.eigenvalues()(0), -1.0, 1e-12);
    EXPECT_NEAR(es.eigenvalues()(1), 2.0, 1e-12);
    EXPECT_NEAR(es.eigenvalues()(2), 2.0, 1e-12);
}

TEST(Hamiltonian, PlaquetteSpectrumBruteForce) {
    RegisterLayout L = build_layout(LatticeGeometry(2, 2), 3, AncillaPolicy::none);
    LinkAlgebra a = make_link_algebra(3);
    LocalOperator hb = plaquette_piece(L, a, {0, 0}, 1.0);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(hb.matrix);
    // Brute force over the 81 Q-eigenlabel configurations.
    std::vector<double> expected;
    for (int m1 = 0; m1 < 3; ++m1) {
        for (int m2 = 0; m2 < 3; ++m2) {
            for (int m3 = 0; m3 < 3; ++m3) {
                for (int m4 = 0; m4 < 3; ++m4) {
                    expected.push_back(2 * std::cos(2 * pi * (m1 + m2 - m3 - m4) / 3.0));
                }
            }
        }
    }
    std::sort(expected.begin(), expected.end());
    ASSERT_EQ(es.eigenvalues().size(), 81);
    for (int i = 0; i < 81; ++i) {
        EXPECT_NEAR(es.eigenvalues()(i), expected[static_cast<std::size_t>(i)], 1e-12);
    }
}

TEST(Hamiltonian, MassOnDiracSea) {
    RegisterLayout L = build_layout(LatticeGeometry(2, 2), 3, AncillaPolicy::none);
    Couplings c;
    HamiltonianTerm m = build_hamiltonian_term(L, TermName::M, c);
    StateVector s = build_global_singlet(L);
    Eigen::MatrixXcd H = dense_term(L, m);
    EXPECT_NEAR((s.amplitudes().adjoint() * H * s.amplitudes())(0).real(), -2.0, 1e-12);
}

TEST(Hamiltonian, ZeroCouplings) {
    RegisterLayout L = build_layout(LatticeGeometry(2, 2), 2, AncillaPolicy::none);
    Couplings c{0, 0, 0, 0, ElectricVariant::group};
    EXPECT_LT(total_hamiltonian(L, c).dense(L).cwiseAbs().maxCoeff(), 1e-15);
}

TEST(Hamiltonian, HermitianAndGaugeInvariant) {
    RegisterLayout L = build_layout(LatticeGeometry(2, 2), 3, AncillaPolicy::none);
    Couplings c;
    Eigen::MatrixXcd H = total_hamiltonian(L, c).dense(L);
    EXPECT_LT(max_abs(H - H.adjoint()), 1e-12);
    for (const Vertex &v : L.geometry().vertices()) {
        Eigen::VectorXcd d = gauss_law_diagonal(L, v);
        Eigen::MatrixXcd C = H * d.asDiagonal();
        C -= d.asDiagonal() * H;
        EXPECT_LT(spectral_norm(C), 1e-10);
    }
    for (const HamiltonianTerm &term : total_hamiltonian(L, c).terms) {
        Eigen::MatrixXcd Ht = dense_term(L, term);
        EXPECT_LT(max_abs(Ht - Ht.adjoint()), 1e-12) << term_name_string(term.name);
    }
    // No odd plaquette on 2x2.
    EXPECT_ANY_THROW(build_hamiltonian_term(L, TermName::Bo, c));
}

TEST(Hamiltonian, PlaquettesCommute) {
    RegisterLayout L = build_layout(LatticeGeometry(3, 3), 2, AncillaPolicy::none);
    LinkAlgebra a = make_link_algebra(2);
    const auto &ps = L.geometry().plaquettes();
    for (std::size_t i = 0; i < ps.size(); ++i) {
        for (std::size_t j = i + 1; j < ps.size(); ++j) {
            LocalOperator x = plaquette_piece(L, a, ps[i], 1.0);
            LocalOperator y = plaquette_piece(L, a, ps[j], 1.0);
            LocalOperator xy = multiply(L, x, y);
            LocalOperator yx = multiply(L, y, x);
            EXPECT_LT(max_abs(xy.matrix - extend_operator(L, yx, xy.support).matrix), 1e-12);
        }
    }
}

TEST(Hamiltonian, Z3ImplementationVariant) {
    LinkAlgebra a = make_link_algebra(3);
    Eigen::MatrixXcd E = electric_link_matrix(a, ElectricVariant::z3_implementation);
    Eigen::MatrixXcd G = electric_link_matrix(a, ElectricVariant::group);
    // Both are diagonal in the P basis and share the gap pattern {low, high, high}.
    EXPECT_LT(max_abs(E - Eigen::MatrixXcd(E.diagonal().asDiagonal())), 1e-15);
    EXPECT_NEAR(E(1, 1).real(), E(2, 2).real(), 1e-15);
    EXPECT_LT(E(0, 0).real(), E(1, 1).real());
    EXPECT_LT(G(0, 0).real(), G(1, 1).real());
}

TEST(Terms, ParseRoundTrip) {
    for (TermName t : all_term_names()) {
        EXPECT_EQ(parse_term_name(term_name_string(t)), t);
    }
    EXPECT_ANY_THROW(parse_term_name("nope"));
}

}  // namespace
}  // namespace zlgt
