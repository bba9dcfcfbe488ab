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

#include "zlgt/oracle.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <stdexcept>

namespace zlgt {

SpectralPropagator::SpectralPropagator(const Eigen::MatrixXcd &H) {
    if (H.rows() > kMaxDenseDim) {
        throw std::invalid_argument("dimension " + std::to_string(H.rows()) + " too large for dense evolution");
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(H);
    if (es.info() != Eigen::Success) {
        throw std::runtime_error("eigendecomposition failed");
    }
    energies_ = es.eigenvalues();
    vectors_ = es.eigenvectors();
}

Eigen::MatrixXcd SpectralPropagator::unitary(double t) const {
    Eigen::VectorXcd ph(energies_.size());
    for (Eigen::Index i = 0; i < energies_.size(); ++i) {
        ph(i) = std::polar(1.0, -t * energies_(i));
    }
    return vectors_ * ph.asDiagonal() * vectors_.adjoint();
}

Eigen::VectorXcd SpectralPropagator::evolve(const Eigen::VectorXcd &psi, double t) const {
    Eigen::VectorXcd c = vectors_.adjoint() * psi;
    for (Eigen::Index i = 0; i < c.size(); ++i) {
        c(i) *= std::polar(1.0, -t * energies_(i));
    }
    return vectors_ * c;
}

Eigen::VectorXcd exact_evolve(const Eigen::MatrixXcd &H, double t, const Eigen::VectorXcd &psi) {
    return SpectralPropagator(H).evolve(psi, t);
}

double spectral_norm(const Eigen::MatrixXcd &A, double rel_tol, int max_iter) {
    if (A.size() == 0) {
        return 0.0;
    }
    std::mt19937_64 rng(0x5eed);
    std::normal_distribution<double> nd;
    Eigen::VectorXcd v(A.cols());
    for (Eigen::Index i = 0; i < v.size(); ++i) {
        v(i) = cplx(nd(rng), nd(rng));
    }
    v.normalize();
    double prev = -1.0;
    for (int it = 0; it < max_iter; ++it) {
        Eigen::VectorXcd w = A.adjoint() * (A * v);
        double rq = v.dot(w).real();
        double nw = w.norm();
        if (nw == 0.0) {
            return 0.0;
        }
        if (prev >= 0.0 && std::abs(rq - prev) <= rel_tol * rq) {
            return std::sqrt(std::max(rq, 0.0));
        }
        prev = rq;
        v = w / nw;
    }
    throw std::runtime_error("power iteration did not converge in " + std::to_string(max_iter) + " iterations");
}

double diamond_surrogate_distance(const Eigen::MatrixXcd &A, const Eigen::MatrixXcd &B) {
    if (A.rows() != B.rows() || A.cols() != B.cols()) {
        throw std::invalid_argument("maps of different shape");
    }
    return spectral_norm(A - B);
}

PhaseAlignedDistance phase_aligned_distance(const Eigen::MatrixXcd &A, const Eigen::MatrixXcd &B) {
    using std::numbers::pi;
    if (A.rows() != B.rows() || A.cols() != B.cols()) {
        throw std::invalid_argument("maps of different shape");
    }
    Eigen::MatrixXcd U = B.adjoint() * A;
    const cplx tr = U.trace();
    const double pre = std::abs(tr) > 0.0 ? std::arg(tr) : 0.0;
    U *= std::polar(1.0, -pre);

    std::vector<double> phases;
    Eigen::MatrixXcd S = (U - U.adjoint()) / cplx(0.0, 2.0);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(S, Eigen::EigenvaluesOnly);
    bool small = es.info() == Eigen::Success && es.eigenvalues().cwiseAbs().maxCoeff() < 0.9 &&
                 U.diagonal().real().minCoeff() > -0.5;
    if (small) {
        // A normal U with every phase inside (-pi/2, pi/2) has eigenvalues sin(phase) here.
        for (Eigen::Index i = 0; i < es.eigenvalues().size(); ++i) {
            phases.push_back(std::asin(std::clamp(es.eigenvalues()(i), -1.0, 1.0)));
        }
    } else {
        Eigen::ComplexEigenSolver<Eigen::MatrixXcd> ce(U, false);
        for (Eigen::Index i = 0; i < ce.eigenvalues().size(); ++i) {
            phases.push_back(std::arg(ce.eigenvalues()(i)));
        }
    }
    std::sort(phases.begin(), phases.end());
    // Smallest arc: complement of the largest gap between consecutive phases on the circle.
    double best_gap = phases.front() + 2.0 * pi - phases.back();
    double center = phases.back() + 0.5 * best_gap + pi;
    for (std::size_t i = 1; i < phases.size(); ++i) {
        double gap = phases[i] - phases[i - 1];
        if (gap > best_gap) {
            best_gap = gap;
            center = phases[i - 1] + 0.5 * gap + pi;
        }
    }
    PhaseAlignedDistance out;
    out.alpha = std::remainder(center + pre, 2.0 * pi);
    out.distance = spectral_norm(A - std::polar(1.0, out.alpha) * B);
    return out;
}

Eigen::MatrixXcd matrix_power(const Eigen::MatrixXcd &U, long M) {
    if (M < 0) {
        throw std::invalid_argument("negative power");
    }
    Eigen::MatrixXcd result = Eigen::MatrixXcd::Identity(U.rows(), U.cols());
    Eigen::MatrixXcd base = U;
    while (M > 0) {
        if (M & 1) {
            result = result * base;
        }
        M >>= 1;
        if (M > 0) {
            base = base * base;
        }
    }
    return result;
}

double trotter_bound(int order, int L, double lambda_max, double T, long M) {
    if (L <= 0 || T < 0.0 || M <= 0) {
        throw std::invalid_argument("trotter_bound needs positive L and M");
    }
    const double l = std::abs(lambda_max);
    const double Md = static_cast<double>(M);
    if (order == 1) {
        return 45.0 * std::pow(L, 4) * T * T * l * l / Md;
    }
    if (order == 2) {
        return 60.0 * T * T * T * std::pow(L, 6) * l * l * l / (Md * Md);
    }
    throw std::invalid_argument("unsupported Trotter order");
}

long steps_required(int order, int L, double lambda_max, double T, double eps) {
    if (eps <= 0.0) {
        throw std::invalid_argument("eps must be positive");
    }
    const double l = std::abs(lambda_max);
    double M = 0.0;
    if (order == 1) {
        M = 45.0 * std::pow(L, 4) * l * l * T * T / eps;
    } else if (order == 2) {
        M = 60.0 * std::pow(L, 3) * std::pow(l, 1.5) * std::pow(T, 1.5) / std::sqrt(eps);
    } else {
        throw std::invalid_argument("unsupported Trotter order");
    }
    // Guard against M landing a rounding error above an integer.
    return std::max(1L, static_cast<long>(std::ceil(M * (1.0 - 1e-12))));
}

ValidityReport trotter_validity(const RegisterLayout &layout, const Couplings &c, double T, long M) {
    if (M <= 0) {
        throw std::invalid_argument("M must be positive");
    }
    const LatticeGeometry &g = layout.geometry();
    ValidityReport r;
    RegisterLayout phys = layout.physical_only();
    r.exact = static_cast<Eigen::Index>(phys.physical_dim()) <= kMaxDenseDim;
    Hamiltonian h = total_hamiltonian(phys, c);
    LinkAlgebra alg = make_link_algebra(layout.N());
    for (TermName name : all_term_names()) {
        double norm = 0.0;
        const HamiltonianTerm *term = nullptr;
        for (const auto &t : h.terms) {
            if (t.name == name) {
                term = &t;
            }
        }
        if (term != nullptr) {
            if (r.exact) {
                Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(dense_term(phys, *term), Eigen::EigenvaluesOnly);
                norm = es.eigenvalues().cwiseAbs().maxCoeff();
            } else {
                switch (name) {
                    case TermName::E:
                        norm = std::abs(c.lambda_E) * electric_link_matrix(alg, c.electric).cwiseAbs().maxCoeff() *
                               static_cast<double>(g.links().size());
                        break;
                    case TermName::M:
                        norm = std::abs(c.mass) * static_cast<double>(g.vertices().size());
                        break;
                    case TermName::Be:
                    case TermName::Bo:
                        norm = 2.0 * std::abs(c.lambda_B) *
                               static_cast<double>(plaquettes_of_parity(g, name == TermName::Be).size());
                        break;
                    default:
                        norm = std::abs(c.lambda_GM) * static_cast<double>(gauge_matter_links(g, name).size());
                        break;
                }
            }
        }
        r.term_norms.push_back(norm);
        r.step_sum += norm;
    }
    r.step_sum *= T / static_cast<double>(M);
    r.valid = r.step_sum <= 1.0;
    return r;
}

double wallclock_model(int order, double T, long M, double A, double B, double C) {
    if (A < 0.0 || B < 0.0 || C < 0.0) {
        throw std::invalid_argument("time constants must be nonnegative");
    }
    if (order == 1) {
        const double Md = static_cast<double>(M);
        return Md * (A + B * T / Md);
    }
    if (order == 2) {
        return B * T + 2.0 * C * std::pow(T, 1.5);
    }
    throw std::invalid_argument("unsupported Trotter order");
}

double error_budget(double eps, double lambda_max, int L, double T) {
    return std::pow(eps, 1.5) / (120.0 * std::pow(std::abs(lambda_max), 2.5) * std::pow(L, 5) * std::pow(T, 1.5));
}

}  // namespace zlgt
