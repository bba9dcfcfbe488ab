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

#ifndef ZLGT_ALGEBRA_HPP_
#define ZLGT_ALGEBRA_HPP_

#include <string>
#include <vector>

#include "zlgt/lattice.hpp"

namespace zlgt {

/// Single-link Z_N operators.  P|m> = w^m |m>, Q|m> = |m+1 mod N>, Q = VD^dag P VD.
struct LinkAlgebra {
    int N = 0;
    cplx omega;
    Eigen::MatrixXcd identity;
    Eigen::MatrixXcd P;
    Eigen::MatrixXcd Q;
    Eigen::MatrixXcd VD;
    Eigen::MatrixXcd logP;
    Eigen::MatrixXcd logQ;
    /// Symmetric representative of each label m.
    std::vector<int> symmetric_label;
};

LinkAlgebra make_link_algebra(int N);

/// Symmetric representative: odd N in [-(N-1)/2, (N-1)/2]; even N in [-N/2+1, N/2].
int symmetric_label(int m, int N);

/// Spin-1 matrices on the three-level basis index m <-> m_F = symmetric_label(m, 3),
/// i.e. index 0,1,2 <-> m_F = 0,+1,-1.  N0 projects onto m_F = 0.
struct SpinOne {
    Eigen::MatrixXcd Fx, Fy, Fz, N0;
};
SpinOne spin_one();

/// Hermitian-generator exponential exp(-i t H) through a dense eigendecomposition.
Eigen::MatrixXcd expm_hermitian(const Eigen::MatrixXcd &H, double t);
/// Exponential of a normal matrix A (exp(A)) through a complex Schur/eigen decomposition.
Eigen::MatrixXcd expm_normal(const Eigen::MatrixXcd &A);
/// Kronecker product with b as the least significant factor: index = i_a * dim(b) + i_b.
Eigen::MatrixXcd kron(const Eigen::MatrixXcd &a, const Eigen::MatrixXcd &b);

enum class FermionKind { create, annihilate };

/// psi or psi^dag at a vertex including the ordering string over all lower modes.
LocalOperator fermion_op(const RegisterLayout &layout, Vertex v, FermionKind kind);
/// psi^dag psi at a vertex.
LocalOperator number_op(const RegisterLayout &layout, Vertex v);
/// psi^dag(x) psi(y), x != y, on the contiguous fermion registers between the two modes.
LocalOperator hopping_op(const RegisterLayout &layout, Vertex x, Vertex y);

/// Theta(x): outgoing P, incoming P^dag, and the staggered fermion phase.  Diagonal.
LocalOperator gauss_law_operator(const RegisterLayout &layout, Vertex x);
/// Diagonal of Theta(x) over the full layout basis.
Eigen::VectorXcd gauss_law_diagonal(const RegisterLayout &layout, Vertex x);

enum class TermName { E, M, Be, Bo, GM_eh, GM_ev, GM_oh, GM_ov };
enum class ElectricVariant { group, z3_implementation };

const std::vector<TermName> &all_term_names();
std::string term_name_string(TermName name);
TermName parse_term_name(const std::string &s);

struct Couplings {
    double lambda_E = 1.0;
    double lambda_B = 1.0;
    double lambda_GM = 1.0;
    double mass = 1.0;
    ElectricVariant electric = ElectricVariant::group;
    double lambda_max() const;
};

struct HamiltonianTerm {
    TermName name;
    double coupling = 0.0;
    /// The term is the sum of these Hermitian local pieces (one per link, vertex or plaquette).
    std::vector<LocalOperator> pieces;
    std::vector<std::size_t> support() const;
};

/// Links of the gauge-matter class: horizontal (k=1) or vertical (k=2), even or odd origin.
std::vector<Link> gauge_matter_links(const LatticeGeometry &g, TermName name);
/// Plaquettes of one parity.
std::vector<Vertex> plaquettes_of_parity(const LatticeGeometry &g, bool even);

/// Single-link electric energy diagonal for the chosen variant.
Eigen::MatrixXcd electric_link_matrix(const LinkAlgebra &alg, ElectricVariant variant);
/// lambda_B (Q1 Q2 Q3^dag Q4^dag + h.c.) for one plaquette.
LocalOperator plaquette_piece(const RegisterLayout &layout, const LinkAlgebra &alg, Vertex x, double lambda_B);
/// lambda_GM (psi^dag(x) Q(x,k) psi(x+k) + h.c.) for one link.
LocalOperator gauge_matter_piece(const RegisterLayout &layout, const LinkAlgebra &alg, const Link &l,
                                 double lambda_GM);

HamiltonianTerm build_hamiltonian_term(const RegisterLayout &layout, TermName name, const Couplings &c);

struct Hamiltonian {
    std::vector<HamiltonianTerm> terms;
    /// Dense matrix on the full space of layout (intended for the physical-only layout).
    Eigen::MatrixXcd dense(const RegisterLayout &layout) const;
};

/// Sum of the eight terms.  Terms with empty support on the geometry are skipped.
Hamiltonian total_hamiltonian(const RegisterLayout &layout, const Couplings &c);

Eigen::MatrixXcd dense_term(const RegisterLayout &layout, const HamiltonianTerm &term);

}  // namespace zlgt

#endif  // ZLGT_ALGEBRA_HPP_
