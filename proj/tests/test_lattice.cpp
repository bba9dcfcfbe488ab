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
#include <random>
#include <set>

#include "zlgt/algebra.hpp"
#include "zlgt/lattice.hpp"

namespace zlgt {
namespace {

// Register-count oracle: dims multiplied out by hand from the counting formulas.
std::size_t counted_dim(int Lx, int Ly, int N, int ancillas) {
    const int links = Lx * (Ly - 1) + (Lx - 1) * Ly;
    std::size_t d = 1;
    for (int i = 0; i < links + ancillas; ++i) {
        d *= static_cast<std::size_t>(N);
    }
    return d << (Lx * Ly);
}

TEST(Geometry, Counts) {
    for (auto [Lx, Ly] : std::vector<std::pair<int, int>>{{2, 2}, {2, 3}, {3, 3}, {4, 2}}) {
        LatticeGeometry g(Lx, Ly);
        EXPECT_EQ(g.vertices().size(), static_cast<std::size_t>(Lx * Ly));
        EXPECT_EQ(g.links().size(), static_cast<std::size_t>(Lx * (Ly - 1) + (Lx - 1) * Ly));
        EXPECT_EQ(g.plaquettes().size(), static_cast<std::size_t>((Lx - 1) * (Ly - 1)));
    }
}

TEST(Geometry, ParityPartitions) {
    LatticeGeometry g(3, 4);
    int even = 0;
    int odd = 0;
    for (const Vertex &v : g.vertices()) {
        (is_even(v) ? even : odd)++;
    }
    EXPECT_EQ(even + odd, 12);
    EXPECT_EQ(even, 6);
    EXPECT_TRUE(is_even({0, 0}));
    EXPECT_FALSE(is_even({1, 0}));
    EXPECT_TRUE(is_even({1, 1}));
}

TEST(Geometry, PlaquetteLinksCounterclockwise) {
    LatticeGeometry g(3, 3);
    auto ls = g.plaquette_links({1, 1});
    ASSERT_EQ(ls.size(), 4u);
    EXPECT_EQ(ls[0], (Link{{1, 1}, 1}));
    EXPECT_EQ(ls[1], (Link{{2, 1}, 2}));
    EXPECT_EQ(ls[2], (Link{{1, 2}, 1}));
    EXPECT_EQ(ls[3], (Link{{1, 1}, 2}));
}

TEST(Geometry, Extents) {
    EXPECT_ANY_THROW(LatticeGeometry(0, 3));
    LatticeGeometry chain(1, 3);
    EXPECT_EQ(chain.links().size(), 2u);
    EXPECT_TRUE(chain.plaquettes().empty());
}

TEST(Layout, RegistersAppearOnce) {
    LatticeGeometry g(3, 3);
    RegisterLayout L = build_layout(g, 3, AncillaPolicy::per_plaquette);
    std::set<std::size_t> seen;
    for (const Link &l : g.links()) {
        EXPECT_TRUE(seen.insert(L.link_register(l)).second);
    }
    for (const Vertex &v : g.vertices()) {
        EXPECT_TRUE(seen.insert(L.fermion_register(v)).second);
    }
    for (std::size_t a : L.ancilla_registers()) {
        EXPECT_TRUE(seen.insert(a).second);
    }
    EXPECT_EQ(seen.size(), L.size());
}

TEST(Layout, Dimensions) {
    EXPECT_EQ(build_layout(LatticeGeometry(2, 2), 3, AncillaPolicy::per_plaquette).total_dim(), 3888u);
    EXPECT_EQ(build_layout(LatticeGeometry(2, 2), 3, AncillaPolicy::per_plaquette).total_dim(),
              counted_dim(2, 2, 3, 1));
    EXPECT_EQ(build_layout(LatticeGeometry(2, 3), 3, AncillaPolicy::per_plaquette).total_dim(),
              counted_dim(2, 3, 3, 2));
    EXPECT_EQ(build_layout(LatticeGeometry(2, 2), 2, AncillaPolicy::per_plaquette).total_dim(), 512u);
    EXPECT_EQ(build_layout(LatticeGeometry(2, 2), 3, AncillaPolicy::per_plaquette).physical_dim(), 1296u);
}

TEST(Layout, PhysicalOnlyDropsAncillas) {
    RegisterLayout L = build_layout(LatticeGeometry(2, 3), 3, AncillaPolicy::per_plaquette);
    RegisterLayout P = L.physical_only();
    EXPECT_EQ(P.total_dim(), L.physical_dim());
    EXPECT_TRUE(P.ancilla_registers().empty());
    EXPECT_ANY_THROW(P.ancilla_for({0, 0}));
}

TEST(Singlet, Amplitudes2x2) {
    RegisterLayout L = build_layout(LatticeGeometry(2, 2), 3, AncillaPolicy::per_plaquette);
    StateVector s = build_global_singlet(L);
    EXPECT_NEAR(s.norm(), 1.0, 1e-12);
    // Independent enumeration: odd vertices occupied, links 0, any ancilla label.
    std::size_t base = L.strides()[L.fermion_register({1, 0})] + L.strides()[L.fermion_register({0, 1})];
    std::size_t a = L.ancilla_registers().front();
    int nonzero = 0;
    for (Eigen::Index i = 0; i < s.amplitudes().size(); ++i) {
        if (std::abs(s.amplitudes()(i)) > 1e-14) {
            ++nonzero;
        }
    }
    EXPECT_EQ(nonzero, 3);
    for (std::size_t m = 0; m < 3; ++m) {
        EXPECT_NEAR(std::abs(s.amplitudes()(static_cast<Eigen::Index>(base + m * L.strides()[a])) -
                             1.0 / std::sqrt(3.0)),
                    0.0, 1e-14);
    }
}

TEST(Singlet, GaugeInvariant) {
    RegisterLayout L = build_layout(LatticeGeometry(2, 2), 3, AncillaPolicy::per_plaquette);
    StateVector s = build_global_singlet(L);
    for (const Vertex &v : L.geometry().vertices()) {
        Eigen::VectorXcd d = gauss_law_diagonal(L, v);
        EXPECT_LT((d.cwiseProduct(s.amplitudes()) - s.amplitudes()).norm(), 1e-12);
    }
}

TEST(Gates, IdentityAndShift) {
    RegisterLayout L = build_layout(LatticeGeometry(2, 2), 3, AncillaPolicy::per_plaquette);
    StateVector s = build_global_singlet(L);
    StateVector t = s;
    std::size_t link = L.link_register({0, 0}, 1);
    std::vector<std::size_t> tg = {link};
    apply_gate(t, Eigen::MatrixXcd::Identity(3, 3), tg);
    EXPECT_LT((t.amplitudes() - s.amplitudes()).norm(), 1e-15);

    LinkAlgebra a = make_link_algebra(3);
    StateVector basis(L);
    basis.amplitudes().setZero();
    basis.amplitudes()(2 * static_cast<Eigen::Index>(L.strides()[link])) = 1.0;  // |m=2>
    apply_gate(basis, a.Q, tg);
    EXPECT_NEAR(std::abs(basis.amplitudes()(0)), 1.0, 1e-15);  // cyclic back to |0>
}

TEST(Gates, UnitaryRoundTrip) {
    RegisterLayout L = build_layout(LatticeGeometry(2, 2), 3, AncillaPolicy::per_plaquette);
    std::mt19937_64 rng(7);
    std::normal_distribution<double> nd;
    Eigen::VectorXcd v(static_cast<Eigen::Index>(L.total_dim()));
    for (Eigen::Index i = 0; i < v.size(); ++i) {
        v(i) = cplx(nd(rng), nd(rng));
    }
    StateVector s(L, v.normalized());
    Eigen::MatrixXcd H = Eigen::MatrixXcd::Random(6, 6);
    H = (H + H.adjoint()).eval();
    Eigen::MatrixXcd U = expm_hermitian(H, 0.7);
    std::vector<std::size_t> tg = {L.fermion_register({1, 1}), L.link_register({0, 0}, 2)};
    StateVector t = s;
    apply_gate(t, U, tg);
    EXPECT_NEAR(t.norm(), 1.0, 1e-12);
    apply_gate(t, U.adjoint(), tg);
    EXPECT_LT((t.amplitudes() - s.amplitudes()).norm(), 1e-12);
}

TEST(Fidelity, Basics) {
    Eigen::VectorXcd a = Eigen::VectorXcd::Random(10).normalized();
    EXPECT_NEAR(fidelity_up_to_phase(a, a), 1.0, 1e-14);
    EXPECT_NEAR(fidelity_up_to_phase(a, std::polar(1.0, 0.8) * a), 1.0, 1e-14);
    Eigen::VectorXcd e0 = Eigen::VectorXcd::Unit(4, 0);
    Eigen::VectorXcd e1 = Eigen::VectorXcd::Unit(4, 1);
    EXPECT_NEAR(fidelity_up_to_phase(e0, e1), 0.0, 1e-15);
}

}  // namespace
}  // namespace zlgt
