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

#ifndef ZLGT_ORACLE_HPP_
#define ZLGT_ORACLE_HPP_

#include <vector>

#include "zlgt/algebra.hpp"

namespace zlgt {

/// Largest dimension accepted by the dense diagonalization path.
inline constexpr Eigen::Index kMaxDenseDim = 5000;

/// exp(-iHt) through one dense eigendecomposition, reusable for many t.
class SpectralPropagator {
  public:
    explicit SpectralPropagator(const Eigen::MatrixXcd &H);
    Eigen::MatrixXcd unitary(double t) const;
    Eigen::VectorXcd evolve(const Eigen::VectorXcd &psi, double t) const;
    const Eigen::VectorXd &energies() const { return energies_; }

  private:
    Eigen::VectorXd energies_;
    Eigen::MatrixXcd vectors_;
};

Eigen::VectorXcd exact_evolve(const Eigen::MatrixXcd &H, double t, const Eigen::VectorXcd &psi);

/// Spectral norm by power iteration on A^dag A.  Stops when the Rayleigh quotient changes by
/// less than rel_tol (relative); throws std::runtime_error when max_iter is reached first.
double spectral_norm(const Eigen::MatrixXcd &A, double rel_tol = 1e-6, int max_iter = 20000);

/// ||A - B|| in the spectral norm.
double diamond_surrogate_distance(const Eigen::MatrixXcd &A, const Eigen::MatrixXcd &B);

struct PhaseAlignedDistance {
    double distance = 0.0;
    double alpha = 0.0;
};
/// min over alpha of ||A - e^{i alpha} B|| for unitary A, B.  alpha is the center of the
/// smallest arc holding the eigenphases of B^dag A; the norm is then evaluated by power iteration.
PhaseAlignedDistance phase_aligned_distance(const Eigen::MatrixXcd &A, const Eigen::MatrixXcd &B);

/// U^M by repeated squaring.
Eigen::MatrixXcd matrix_power(const Eigen::MatrixXcd &U, long M);

/// Analytic Trotter error bounds: order 1: 45 L^4 T^2 l^2 / M, order 2: 60 T^3 L^6 l^3 / M^2.
double trotter_bound(int order, int L, double lambda_max, double T, long M);
/// Step counts as printed: order 1: ceil(45 L^4 l^2 T^2 / eps), order 2: ceil(60 L^3 l^1.5 T^1.5 / sqrt(eps)).
long steps_required(int order, int L, double lambda_max, double T, double eps);

struct ValidityReport {
    std::vector<double> term_norms;  // in all_term_names() order; zero for absent terms
    bool exact = false;              // true when norms come from diagonalization
    double step_sum = 0.0;           // (T/M) sum_j ||H_j||
    bool valid = false;              // step_sum <= 1
};
/// Norms exact by dense diagonalization when the physical dimension allows, analytic bounds otherwise.
ValidityReport trotter_validity(const RegisterLayout &layout, const Couplings &c, double T, long M);

/// Experimental time: order 1 M (A + B T / M); order 2 B T + 2 C T^{3/2}.
double wallclock_model(int order, double T, long M, double A, double B, double C);
/// Tolerated experimental error rate: eps^{3/2} / (120 l^{5/2} L^5 T^{3/2}).
double error_budget(double eps, double lambda_max, int L, double T);

}  // namespace zlgt

#endif  // ZLGT_ORACLE_HPP_
