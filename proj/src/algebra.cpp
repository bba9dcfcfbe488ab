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

#include "zlgt/algebra.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace zlgt {

using std::numbers::pi;

int symmetric_label(int m, int N) {
    if (N % 2 == 1) {
        return m <= (N - 1) / 2 ? m : m - N;
    }
    return m <= N / 2 ? m : m - N;
}

LinkAlgebra make_link_algebra(int N) {
    if (N < 2) {
        throw std::invalid_argument("N must be at least 2");
    }
    LinkAlgebra a;
    a.N = N;
    a.omega = std::polar(1.0, 2.0 * pi / N);
    a.identity = Eigen::MatrixXcd::Identity(N, N);
    a.P = Eigen::MatrixXcd::Zero(N, N);
    a.Q = Eigen::MatrixXcd::Zero(N, N);
    a.VD = Eigen::MatrixXcd::Zero(N, N);
    a.logP = Eigen::MatrixXcd::Zero(N, N);
    for (int m = 0; m < N; ++m) {
        a.P(m, m) = std::polar(1.0, 2.0 * pi * m / N);
        a.Q((m + 1) % N, m) = 1.0;
        int s = symmetric_label(m, N);
        a.symmetric_label.push_back(s);
        a.logP(m, m) = cplx(0.0, 2.0 * pi * s / N);
        for (int k = 0; k < N; ++k) {
            a.VD(k, m) = std::polar(1.0 / std::sqrt(static_cast<double>(N)), 2.0 * pi * ((k * m) % N) / N);
        }
    }
    a.logQ = a.VD.adjoint() * a.logP * a.VD;
    return a;
}

SpinOne spin_one() {
    const int mf[3] = {0, 1, -1};
    Eigen::MatrixXcd Fp = Eigen::MatrixXcd::Zero(3, 3);
    for (int i = 0; i < 3; ++i) {
        for (int j = 0; j < 3; ++j) {
            if (mf[i] == mf[j] + 1) {
                Fp(i, j) = std::sqrt(2.0 - mf[j] * (mf[j] + 1.0));
            }
        }
    }
    Eigen::MatrixXcd Fm = Fp.adjoint();
    SpinOne s;
    s.Fx = 0.5 * (Fp + Fm);
    s.Fy = cplx(0.0, -0.5) * (Fp - Fm);
    s.Fz = Eigen::MatrixXcd::Zero(3, 3);
    s.N0 = Eigen::MatrixXcd::Zero(3, 3);
    for (int i = 0; i < 3; ++i) {
        s.Fz(i, i) = mf[i];
    }
    s.N0(0, 0) = 1.0;
    return s;
}

Eigen::MatrixXcd expm_hermitian(const Eigen::MatrixXcd &H, double t) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(H);
    if (es.info() != Eigen::Success) {
        throw std::runtime_error("eigendecomposition failed");
    }
    Eigen::VectorXcd ph(H.rows());
    for (Eigen::Index i = 0; i < H.rows(); ++i) {
        ph(i) = std::polar(1.0, -t * es.eigenvalues()(i));
    }
    return es.eigenvectors() * ph.asDiagonal() * es.eigenvectors().adjoint();
}

Eigen::MatrixXcd expm_normal(const Eigen::MatrixXcd &A) {
    Eigen::ComplexSchur<Eigen::MatrixXcd> schur(A);
    const Eigen::MatrixXcd &T = schur.matrixT();
    const Eigen::MatrixXcd &U = schur.matrixU();
    // Normal input: T is diagonal up to roundoff.
    Eigen::VectorXcd d(A.rows());
    for (Eigen::Index i = 0; i < A.rows(); ++i) {
        d(i) = std::exp(T(i, i));
    }
    return U * d.asDiagonal() * U.adjoint();
}

Eigen::MatrixXcd kron(const Eigen::MatrixXcd &a, const Eigen::MatrixXcd &b) {
    Eigen::MatrixXcd out(a.rows() * b.rows(), a.cols() * b.cols());
    for (Eigen::Index i = 0; i < a.rows(); ++i) {
        for (Eigen::Index j = 0; j < a.cols(); ++j) {
            out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
        }
    }
    return out;
}

namespace {

Eigen::MatrixXcd ladder(FermionKind kind) {
    Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(2, 2);
    if (kind == FermionKind::create) {
        m(1, 0) = 1.0;
    } else {
        m(0, 1) = 1.0;
    }
    return m;
}

Eigen::MatrixXcd parity() {
    Eigen::MatrixXcd z = Eigen::MatrixXcd::Zero(2, 2);
    z(0, 0) = 1.0;
    z(1, 1) = -1.0;
    return z;
}

// Mode operator with the ordering string restricted to the given contiguous fermion registers.
LocalOperator mode_operator(const RegisterLayout &layout, const std::vector<std::size_t> &support,
                            std::size_t target, FermionKind kind) {
    std::vector<std::pair<std::size_t, Eigen::MatrixXcd>> f;
    for (std::size_t r : support) {
        if (r < target) {
            f.emplace_back(r, parity());
        } else if (r == target) {
            f.emplace_back(r, ladder(kind));
        }
    }
    return tensor_operator(layout, support, f);
}

}  // namespace

LocalOperator fermion_op(const RegisterLayout &layout, Vertex v, FermionKind kind) {
    if (!layout.geometry().has_vertex(v)) {
        throw std::out_of_range("unknown vertex");
    }
    const std::size_t target = layout.fermion_register(v);
    std::vector<std::size_t> support;
    for (std::size_t r = layout.fermion_register(Vertex{0, 0}); r <= target; ++r) {
        support.push_back(r);
    }
    return mode_operator(layout, support, target, kind);
}

LocalOperator number_op(const RegisterLayout &layout, Vertex v) {
    Eigen::MatrixXcd n = Eigen::MatrixXcd::Zero(2, 2);
    n(1, 1) = 1.0;
    return {{layout.fermion_register(v)}, n};
}

LocalOperator hopping_op(const RegisterLayout &layout, Vertex x, Vertex y) {
    const std::size_t rx = layout.fermion_register(x);
    const std::size_t ry = layout.fermion_register(y);
    if (rx == ry) {
        throw std::invalid_argument("hopping requires distinct vertices");
    }
    std::vector<std::size_t> support;
    for (std::size_t r = std::min(rx, ry); r <= std::max(rx, ry); ++r) {
        support.push_back(r);
    }
    LocalOperator cdag = mode_operator(layout, support, rx, FermionKind::create);
    LocalOperator c = mode_operator(layout, support, ry, FermionKind::annihilate);
    return {support, cdag.matrix * c.matrix};
}

LocalOperator gauss_law_operator(const RegisterLayout &layout, Vertex x) {
    const LatticeGeometry &g = layout.geometry();
    if (!g.has_vertex(x)) {
        throw std::out_of_range("unknown vertex");
    }
    const int N = layout.N();
    LinkAlgebra alg = make_link_algebra(N);
    std::vector<std::pair<std::size_t, Eigen::MatrixXcd>> f;
    std::vector<std::size_t> support;
    for (int k = 1; k <= 2; ++k) {
        if (g.has_link(x, k)) {
            std::size_t r = layout.link_register(x, k);
            f.emplace_back(r, alg.P);
            support.push_back(r);
        }
        Vertex back = k == 1 ? Vertex{x.x1 - 1, x.x2} : Vertex{x.x1, x.x2 - 1};
        if (g.has_link(back, k)) {
            std::size_t r = layout.link_register(back, k);
            f.emplace_back(r, alg.P.adjoint());
            support.push_back(r);
        }
    }
    const double stagger = is_even(x) ? 0.0 : 1.0;
    Eigen::MatrixXcd ferm = Eigen::MatrixXcd::Zero(2, 2);
    for (int n = 0; n < 2; ++n) {
        ferm(n, n) = std::polar(1.0, -2.0 * pi / N * (n - stagger));
    }
    std::size_t rf = layout.fermion_register(x);
    f.emplace_back(rf, ferm);
    support.push_back(rf);
    return tensor_operator(layout, support, f);
}

Eigen::VectorXcd gauss_law_diagonal(const RegisterLayout &layout, Vertex x) {
    LocalOperator op = gauss_law_operator(layout, x);
    const std::size_t D = layout.total_dim();
    Eigen::VectorXcd out(static_cast<Eigen::Index>(D));
    for (std::size_t i = 0; i < D; ++i) {
        std::size_t local = 0;
        std::size_t mult = 1;
        for (std::size_t t : op.support) {
            std::size_t dt = static_cast<std::size_t>(layout.dims()[t]);
            local += ((i / layout.strides()[t]) % dt) * mult;
            mult *= dt;
        }
        out(static_cast<Eigen::Index>(i)) = op.matrix(static_cast<Eigen::Index>(local), static_cast<Eigen::Index>(local));
    }
    return out;
}

const std::vector<TermName> &all_term_names() {
    static const std::vector<TermName> names = {TermName::E,     TermName::M,     TermName::Be,    TermName::Bo,
                                                TermName::GM_eh, TermName::GM_ev, TermName::GM_oh, TermName::GM_ov};
    return names;
}

std::string term_name_string(TermName name) {
    switch (name) {
        case TermName::E: return "E";
        case TermName::M: return "M";
        case TermName::Be: return "Be";
        case TermName::Bo: return "Bo";
        case TermName::GM_eh: return "GM_eh";
        case TermName::GM_ev: return "GM_ev";
        case TermName::GM_oh: return "GM_oh";
        case TermName::GM_ov: return "GM_ov";
    }
    return "?";
}

TermName parse_term_name(const std::string &s) {
    for (TermName t : all_term_names()) {
        if (term_name_string(t) == s) {
            return t;
        }
    }
    throw std::invalid_argument("unknown Hamiltonian term: " + s);
}

double Couplings::lambda_max() const {
    return std::max({std::abs(lambda_E), std::abs(lambda_B), std::abs(lambda_GM), std::abs(mass)});
}

std::vector<std::size_t> HamiltonianTerm::support() const {
    std::vector<std::size_t> s;
    for (const auto &p : pieces) {
        s = merge_supports(s, p.support);
    }
    return s;
}

std::vector<Link> gauge_matter_links(const LatticeGeometry &g, TermName name) {
    int k = 0;
    bool even = true;
    switch (name) {
        case TermName::GM_eh: k = 1; even = true; break;
        case TermName::GM_ev: k = 2; even = true; break;
        case TermName::GM_oh: k = 1; even = false; break;
        case TermName::GM_ov: k = 2; even = false; break;
        default: throw std::invalid_argument("not a gauge-matter term");
    }
    std::vector<Link> out;
    for (const Link &l : g.links()) {
        if (l.k == k && is_even(l.origin) == even) {
            out.push_back(l);
        }
    }
    return out;
}

std::vector<Vertex> plaquettes_of_parity(const LatticeGeometry &g, bool even) {
    std::vector<Vertex> out;
    for (const Vertex &p : g.plaquettes()) {
        if (is_even(p) == even) {
            out.push_back(p);
        }
    }
    return out;
}

Eigen::MatrixXcd electric_link_matrix(const LinkAlgebra &alg, ElectricVariant variant) {
    Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(alg.N, alg.N);
    for (int k = 0; k < alg.N; ++k) {
        if (variant == ElectricVariant::group) {
            m(k, k) = 1.0 - 2.0 * std::cos(2.0 * pi * k / alg.N);
        } else {
            m(k, k) = 1.0 + std::abs(alg.symmetric_label[static_cast<std::size_t>(k)]);
        }
    }
    return m;
}

LocalOperator plaquette_piece(const RegisterLayout &layout, const LinkAlgebra &alg, Vertex x, double lambda_B) {
    auto links = layout.geometry().plaquette_links(x);
    std::vector<std::size_t> support;
    std::vector<std::pair<std::size_t, Eigen::MatrixXcd>> f;
    for (int i = 0; i < 4; ++i) {
        std::size_t r = layout.link_register(links[static_cast<std::size_t>(i)]);
        support.push_back(r);
        f.emplace_back(r, i < 2 ? alg.Q : Eigen::MatrixXcd(alg.Q.adjoint()));
    }
    LocalOperator X = tensor_operator(layout, support, f);
    return {X.support, lambda_B * (X.matrix + X.matrix.adjoint())};
}

LocalOperator gauge_matter_piece(const RegisterLayout &layout, const LinkAlgebra &alg, const Link &l,
                                 double lambda_GM) {
    if (!layout.geometry().has_link(l.origin, l.k)) {
        throw std::out_of_range("nonexistent link");
    }
    LocalOperator hop = hopping_op(layout, l.origin, l.end());
    std::size_t lr = layout.link_register(l);
    auto support = merge_supports(hop.support, {lr});
    LocalOperator q = tensor_operator(layout, support, {{lr, alg.Q}});
    LocalOperator fwd = multiply(layout, q, hop);
    return {support, lambda_GM * (fwd.matrix + fwd.matrix.adjoint())};
}

HamiltonianTerm build_hamiltonian_term(const RegisterLayout &layout, TermName name, const Couplings &c) {
    const LatticeGeometry &g = layout.geometry();
    LinkAlgebra alg = make_link_algebra(layout.N());
    HamiltonianTerm t;
    t.name = name;
    switch (name) {
        case TermName::E: {
            t.coupling = c.lambda_E;
            Eigen::MatrixXcd e = c.lambda_E * electric_link_matrix(alg, c.electric);
            for (const Link &l : g.links()) {
                t.pieces.push_back({{layout.link_register(l)}, e});
            }
            break;
        }
        case TermName::M: {
            t.coupling = c.mass;
            for (const Vertex &v : g.vertices()) {
                LocalOperator n = number_op(layout, v);
                n.matrix *= c.mass * (is_even(v) ? 1.0 : -1.0);
                t.pieces.push_back(std::move(n));
            }
            break;
        }
        case TermName::Be:
        case TermName::Bo: {
            t.coupling = c.lambda_B;
            for (const Vertex &p : plaquettes_of_parity(g, name == TermName::Be)) {
                t.pieces.push_back(plaquette_piece(layout, alg, p, c.lambda_B));
            }
            break;
        }
        default: {
            t.coupling = c.lambda_GM;
            for (const Link &l : gauge_matter_links(g, name)) {
                t.pieces.push_back(gauge_matter_piece(layout, alg, l, c.lambda_GM));
            }
            break;
        }
    }
    if (t.pieces.empty()) {
        throw std::invalid_argument("Hamiltonian term " + term_name_string(name) + " has empty support");
    }
    return t;
}

Eigen::MatrixXcd dense_term(const RegisterLayout &layout, const HamiltonianTerm &term) {
    const auto D = static_cast<Eigen::Index>(layout.total_dim());
    Eigen::MatrixXcd H = Eigen::MatrixXcd::Zero(D, D);
    for (const auto &p : term.pieces) {
        accumulate_dense(layout, p, H);
    }
    return H;
}

Eigen::MatrixXcd Hamiltonian::dense(const RegisterLayout &layout) const {
    const auto D = static_cast<Eigen::Index>(layout.total_dim());
    Eigen::MatrixXcd H = Eigen::MatrixXcd::Zero(D, D);
    for (const auto &t : terms) {
        for (const auto &p : t.pieces) {
            accumulate_dense(layout, p, H);
        }
    }
    return H;
}

Hamiltonian total_hamiltonian(const RegisterLayout &layout, const Couplings &c) {
    Hamiltonian h;
    const LatticeGeometry &g = layout.geometry();
    for (TermName name : all_term_names()) {
        bool empty = false;
        if (name == TermName::Be || name == TermName::Bo) {
            empty = plaquettes_of_parity(g, name == TermName::Be).empty();
        } else if (name != TermName::E && name != TermName::M) {
            empty = gauge_matter_links(g, name).empty();
        } else if (name == TermName::E) {
            empty = g.links().empty();
        }
        if (!empty) {
            h.terms.push_back(build_hamiltonian_term(layout, name, c));
        }
    }
    return h;
}

}  // namespace zlgt
