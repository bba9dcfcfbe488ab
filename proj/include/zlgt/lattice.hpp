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

#ifndef ZLGT_LATTICE_HPP_
#define ZLGT_LATTICE_HPP_

#include <Eigen/Dense>
#include <complex>
#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace zlgt {

using cplx = std::complex<double>;

struct Vertex {
    int x1 = 0;
    int x2 = 0;
    bool operator==(const Vertex &) const = default;
};

inline bool is_even(Vertex v) { return ((v.x1 + v.x2) % 2) == 0; }

/// Unit step x + k̂ for k in {1, 2}.
inline Vertex step(Vertex v, int k) { return k == 1 ? Vertex{v.x1 + 1, v.x2} : Vertex{v.x1, v.x2 + 1}; }

/// A link (x, k) emanating from vertex x in direction k.
struct Link {
    Vertex origin;
    int k = 1;
    Vertex end() const { return step(origin, k); }
    bool operator==(const Link &) const = default;
};

/// Open-boundary Lx x Ly square lattice.
class LatticeGeometry {
  public:
    LatticeGeometry(int Lx, int Ly);

    int Lx() const { return Lx_; }
    int Ly() const { return Ly_; }

    /// Row-major order: x2 major, x1 minor.
    const std::vector<Vertex> &vertices() const { return vertices_; }
    /// Ordered by origin (row-major), then k.
    const std::vector<Link> &links() const { return links_; }
    /// Labeled by bottom-left vertex, row-major.
    const std::vector<Vertex> &plaquettes() const { return plaquettes_; }

    bool has_vertex(Vertex v) const;
    bool has_link(Vertex origin, int k) const;
    bool has_plaquette(Vertex v) const;

    std::size_t vertex_index(Vertex v) const;
    std::size_t link_index(Vertex origin, int k) const;

    /// (x,1), (x+1̂,2), (x+2̂,1), (x,2): counterclockwise from the bottom link.
    std::vector<Link> plaquette_links(Vertex x) const;

  private:
    int Lx_;
    int Ly_;
    std::vector<Vertex> vertices_;
    std::vector<Link> links_;
    std::vector<Vertex> plaquettes_;
    std::vector<long> link_lookup_;
};

enum class RegisterKind { link, fermion, ancilla };
enum class AncillaPolicy { per_plaquette, shared, none };

struct Register {
    RegisterKind kind;
    Vertex site;  // link origin, fermion vertex, or owning plaquette
    int k = 0;    // link direction, 0 otherwise
    int dim = 0;
};

class RegisterLayout {
  public:
    const LatticeGeometry &geometry() const { return geometry_; }
    int N() const { return N_; }
    AncillaPolicy policy() const { return policy_; }

    const std::vector<Register> &registers() const { return registers_; }
    std::size_t size() const { return registers_.size(); }
    const std::vector<int> &dims() const { return dims_; }
    const std::vector<std::size_t> &strides() const { return strides_; }

    std::size_t total_dim() const { return total_dim_; }
    /// Dimension of links and fermions; ancillas are the most significant digits.
    std::size_t physical_dim() const { return physical_dim_; }
    std::size_t num_physical_registers() const { return num_links_ + num_fermions_; }

    std::size_t link_register(Vertex origin, int k) const;
    std::size_t link_register(const Link &l) const { return link_register(l.origin, l.k); }
    std::size_t fermion_register(Vertex v) const;
    /// Ancilla serving plaquette x under the layout's policy.
    std::size_t ancilla_for(Vertex plaquette) const;
    /// The plaquette's own ancilla, if it has one.
    std::optional<std::size_t> owned_ancilla(Vertex plaquette) const;
    std::vector<std::size_t> ancilla_registers() const;

    std::string describe(std::size_t reg) const;

    /// Same geometry and N with the ancilla registers dropped.
    RegisterLayout physical_only() const;

  private:
    friend RegisterLayout build_layout(const LatticeGeometry &, int, AncillaPolicy);
    explicit RegisterLayout(const LatticeGeometry &g) : geometry_(g) {}

    LatticeGeometry geometry_;
    int N_ = 0;
    AncillaPolicy policy_ = AncillaPolicy::none;
    std::vector<Register> registers_;
    std::vector<int> dims_;
    std::vector<std::size_t> strides_;
    std::size_t total_dim_ = 1;
    std::size_t physical_dim_ = 1;
    std::size_t num_links_ = 0;
    std::size_t num_fermions_ = 0;
    std::vector<long> plaquette_ancilla_;  // indexed by plaquette order
    std::vector<long> owned_ancilla_;
};

/// Registers are ordered links, fermions, ancillas.  Digit i of a basis index
/// addresses register i with register 0 least significant.
RegisterLayout build_layout(const LatticeGeometry &geometry, int N, AncillaPolicy policy);

/// Decomposes a basis index into per-register digits.
void index_to_digits(const RegisterLayout &layout, std::size_t index, std::vector<int> &digits);

class StateVector {
  public:
    explicit StateVector(const RegisterLayout &layout);
    StateVector(const RegisterLayout &layout, Eigen::VectorXcd amplitudes);

    const RegisterLayout &layout() const { return layout_; }
    Eigen::VectorXcd &amplitudes() { return amp_; }
    const Eigen::VectorXcd &amplitudes() const { return amp_; }
    double norm() const { return amp_.norm(); }

  private:
    RegisterLayout layout_;
    Eigen::VectorXcd amp_;
};

/// Links |0>, Dirac sea on odd vertices, ancillas in |in> = N^{-1/2} sum_m |m>.
StateVector build_global_singlet(const RegisterLayout &layout);

/// Embeds a physical-register vector with every ancilla in |in>.
Eigen::VectorXcd attach_ancillas(const RegisterLayout &layout, const Eigen::VectorXcd &physical);
/// Contracts every ancilla with <in|; the norm of the result is the restoration amplitude.
Eigen::VectorXcd project_ancillas(const RegisterLayout &layout, const Eigen::VectorXcd &full);

/// Unitary check (max-entry residual of U^dag U - 1) used by apply_gate.
double unitarity_residual(const Eigen::MatrixXcd &U);

/// Applies a unitary on the listed registers.  The first target is the least
/// significant digit of the local index.  Throws on non-unitary input or bad targets.
void apply_gate(StateVector &state, const Eigen::MatrixXcd &gate, std::span<const std::size_t> targets);

/// Unchecked kernel.  Works on a batch of column states (rows = full dimension).
void apply_local(Eigen::Ref<Eigen::MatrixXcd> states, const std::vector<int> &dims,
                 const std::vector<std::size_t> &strides, const Eigen::MatrixXcd &op,
                 std::span<const std::size_t> targets);

double fidelity_up_to_phase(const Eigen::VectorXcd &a, const Eigen::VectorXcd &b);
double fidelity_up_to_phase(const StateVector &a, const StateVector &b);

/// An operator acting on a sorted list of registers.
struct LocalOperator {
    std::vector<std::size_t> support;
    Eigen::MatrixXcd matrix;
};

/// Tensor product of single-register factors; identity on support registers not listed.
LocalOperator tensor_operator(const RegisterLayout &layout, std::vector<std::size_t> support,
                              const std::vector<std::pair<std::size_t, Eigen::MatrixXcd>> &factors);
/// Re-expresses op on a superset support.
LocalOperator extend_operator(const RegisterLayout &layout, const LocalOperator &op,
                              std::vector<std::size_t> support);
std::vector<std::size_t> merge_supports(const std::vector<std::size_t> &a, const std::vector<std::size_t> &b);
LocalOperator multiply(const RegisterLayout &layout, const LocalOperator &a, const LocalOperator &b);
LocalOperator add(const RegisterLayout &layout, const LocalOperator &a, const LocalOperator &b);
LocalOperator adjoint(const LocalOperator &a);

/// Applies a (not necessarily unitary) local operator.
void apply_operator(StateVector &state, const LocalOperator &op);
/// Adds scale * op, embedded in the full space of layout, to out.
void accumulate_dense(const RegisterLayout &layout, const LocalOperator &op, Eigen::MatrixXcd &out,
                      cplx scale = 1.0);

}  // namespace zlgt

#endif  // ZLGT_LATTICE_HPP_
