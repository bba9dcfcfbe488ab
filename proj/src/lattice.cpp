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

#include "zlgt/lattice.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace zlgt {

LatticeGeometry::LatticeGeometry(int Lx, int Ly) : Lx_(Lx), Ly_(Ly) {
    if (Lx < 1 || Ly < 1) {
        throw std::invalid_argument("lattice extents must be positive");
    }
    for (int x2 = 0; x2 < Ly; ++x2) {
        for (int x1 = 0; x1 < Lx; ++x1) {
            vertices_.push_back({x1, x2});
        }
    }
    link_lookup_.assign(static_cast<std::size_t>(2 * Lx * Ly), -1);
    for (const Vertex &v : vertices_) {
        for (int k = 1; k <= 2; ++k) {
            if (has_vertex(step(v, k))) {
                link_lookup_[2 * vertex_index(v) + (k - 1)] = static_cast<long>(links_.size());
                links_.push_back({v, k});
            }
        }
        if (v.x1 + 1 < Lx && v.x2 + 1 < Ly) {
            plaquettes_.push_back(v);
        }
    }
}

bool LatticeGeometry::has_vertex(Vertex v) const {
    return v.x1 >= 0 && v.x2 >= 0 && v.x1 < Lx_ && v.x2 < Ly_;
}

bool LatticeGeometry::has_link(Vertex origin, int k) const {
    return (k == 1 || k == 2) && has_vertex(origin) && has_vertex(step(origin, k));
}

bool LatticeGeometry::has_plaquette(Vertex v) const {
    return has_vertex(v) && v.x1 + 1 < Lx_ && v.x2 + 1 < Ly_;
}

std::size_t LatticeGeometry::vertex_index(Vertex v) const {
    if (!has_vertex(v)) {
        throw std::out_of_range("vertex outside lattice");
    }
    return static_cast<std::size_t>(v.x2 * Lx_ + v.x1);
}

std::size_t LatticeGeometry::link_index(Vertex origin, int k) const {
    if (!has_link(origin, k)) {
        throw std::out_of_range("link outside lattice");
    }
    return static_cast<std::size_t>(link_lookup_[2 * vertex_index(origin) + (k - 1)]);
}

std::vector<Link> LatticeGeometry::plaquette_links(Vertex x) const {
    if (!has_plaquette(x)) {
        throw std::out_of_range("plaquette outside lattice");
    }
    return {Link{x, 1}, Link{step(x, 1), 2}, Link{step(x, 2), 1}, Link{x, 2}};
}

RegisterLayout build_layout(const LatticeGeometry &geometry, int N, AncillaPolicy policy) {
    if (N < 2) {
        throw std::invalid_argument("N must be at least 2");
    }
    if (policy != AncillaPolicy::none && (geometry.Lx() < 2 || geometry.Ly() < 2)) {
        throw std::invalid_argument("ancilla policy requires plaquettes (Lx, Ly >= 2)");
    }
    RegisterLayout layout(geometry);
    layout.N_ = N;
    layout.policy_ = policy;
    for (const Link &l : geometry.links()) {
        layout.registers_.push_back({RegisterKind::link, l.origin, l.k, N});
    }
    for (const Vertex &v : geometry.vertices()) {
        layout.registers_.push_back({RegisterKind::fermion, v, 0, 2});
    }
    layout.num_links_ = geometry.links().size();
    layout.num_fermions_ = geometry.vertices().size();

    const auto &plaqs = geometry.plaquettes();
    layout.plaquette_ancilla_.assign(plaqs.size(), -1);
    layout.owned_ancilla_.assign(plaqs.size(), -1);
    if (policy == AncillaPolicy::per_plaquette) {
        for (std::size_t p = 0; p < plaqs.size(); ++p) {
            long reg = static_cast<long>(layout.registers_.size());
            layout.registers_.push_back({RegisterKind::ancilla, plaqs[p], 0, N});
            layout.plaquette_ancilla_[p] = reg;
            layout.owned_ancilla_[p] = reg;
        }
    } else if (policy == AncillaPolicy::shared) {
        for (std::size_t p = 0; p < plaqs.size(); ++p) {
            if (is_even(plaqs[p])) {
                long reg = static_cast<long>(layout.registers_.size());
                layout.registers_.push_back({RegisterKind::ancilla, plaqs[p], 0, N});
                layout.plaquette_ancilla_[p] = reg;
                layout.owned_ancilla_[p] = reg;
            }
        }
        for (std::size_t p = 0; p < plaqs.size(); ++p) {
            if (is_even(plaqs[p])) {
                continue;
            }
            Vertex left{plaqs[p].x1 - 1, plaqs[p].x2};
            if (!geometry.has_plaquette(left)) {
                throw std::invalid_argument("shared ancilla policy: odd plaquette (" + std::to_string(plaqs[p].x1) +
                                            "," + std::to_string(plaqs[p].x2) +
                                            ") has no even plaquette to its left");
            }
            std::size_t q = static_cast<std::size_t>(
                std::find(plaqs.begin(), plaqs.end(), left) - plaqs.begin());
            layout.plaquette_ancilla_[p] = layout.plaquette_ancilla_[q];
        }
    }

    std::size_t stride = 1;
    for (const Register &r : layout.registers_) {
        layout.dims_.push_back(r.dim);
        layout.strides_.push_back(stride);
        stride *= static_cast<std::size_t>(r.dim);
        if (r.kind != RegisterKind::ancilla) {
            layout.physical_dim_ = stride;
        }
    }
    layout.total_dim_ = stride;
    return layout;
}

std::size_t RegisterLayout::link_register(Vertex origin, int k) const {
    return geometry_.link_index(origin, k);
}

std::size_t RegisterLayout::fermion_register(Vertex v) const {
    return num_links_ + geometry_.vertex_index(v);
}

static std::size_t plaquette_position(const LatticeGeometry &g, Vertex p) {
    const auto &plaqs = g.plaquettes();
    auto it = std::find(plaqs.begin(), plaqs.end(), p);
    if (it == plaqs.end()) {
        throw std::out_of_range("no such plaquette");
    }
    return static_cast<std::size_t>(it - plaqs.begin());
}

std::size_t RegisterLayout::ancilla_for(Vertex plaquette) const {
    long reg = plaquette_ancilla_[plaquette_position(geometry_, plaquette)];
    if (reg < 0) {
        throw std::logic_error("plaquette has no ancilla in this layout");
    }
    return static_cast<std::size_t>(reg);
}

std::optional<std::size_t> RegisterLayout::owned_ancilla(Vertex plaquette) const {
    long reg = owned_ancilla_[plaquette_position(geometry_, plaquette)];
    if (reg < 0) {
        return std::nullopt;
    }
    return static_cast<std::size_t>(reg);
}

std::vector<std::size_t> RegisterLayout::ancilla_registers() const {
    std::vector<std::size_t> out;
    for (std::size_t i = num_physical_registers(); i < registers_.size(); ++i) {
        out.push_back(i);
    }
    return out;
}

std::string RegisterLayout::describe(std::size_t reg) const {
    const Register &r = registers_.at(reg);
    std::string site = "(" + std::to_string(r.site.x1) + "," + std::to_string(r.site.x2) + ")";
    switch (r.kind) {
        case RegisterKind::link:
            return "link" + site + "k" + std::to_string(r.k);
        case RegisterKind::fermion:
            return "fermion" + site;
        case RegisterKind::ancilla:
            return "ancilla" + site;
    }
    return "?";
}

RegisterLayout RegisterLayout::physical_only() const {
    return build_layout(geometry_, N_, AncillaPolicy::none);
}

void index_to_digits(const RegisterLayout &layout, std::size_t index, std::vector<int> &digits) {
    const auto &dims = layout.dims();
    digits.resize(dims.size());
    for (std::size_t i = 0; i < dims.size(); ++i) {
        digits[i] = static_cast<int>(index % static_cast<std::size_t>(dims[i]));
        index /= static_cast<std::size_t>(dims[i]);
    }
}

StateVector::StateVector(const RegisterLayout &layout)
    : layout_(layout), amp_(Eigen::VectorXcd::Zero(static_cast<Eigen::Index>(layout.total_dim()))) {
    amp_(0) = 1.0;
}

StateVector::StateVector(const RegisterLayout &layout, Eigen::VectorXcd amplitudes)
    : layout_(layout), amp_(std::move(amplitudes)) {
    if (static_cast<std::size_t>(amp_.size()) != layout_.total_dim()) {
        throw std::invalid_argument("amplitude vector does not match layout dimension");
    }
}

Eigen::VectorXcd attach_ancillas(const RegisterLayout &layout, const Eigen::VectorXcd &physical) {
    const std::size_t pd = layout.physical_dim();
    if (static_cast<std::size_t>(physical.size()) != pd) {
        throw std::invalid_argument("physical vector has wrong dimension");
    }
    const std::size_t blocks = layout.total_dim() / pd;
    const double w = 1.0 / std::sqrt(static_cast<double>(blocks));
    Eigen::VectorXcd out(static_cast<Eigen::Index>(layout.total_dim()));
    for (std::size_t b = 0; b < blocks; ++b) {
        out.segment(static_cast<Eigen::Index>(b * pd), static_cast<Eigen::Index>(pd)) = w * physical;
    }
    return out;
}

Eigen::VectorXcd project_ancillas(const RegisterLayout &layout, const Eigen::VectorXcd &full) {
    const std::size_t pd = layout.physical_dim();
    const std::size_t blocks = layout.total_dim() / pd;
    const double w = 1.0 / std::sqrt(static_cast<double>(blocks));
    Eigen::VectorXcd out = Eigen::VectorXcd::Zero(static_cast<Eigen::Index>(pd));
    for (std::size_t b = 0; b < blocks; ++b) {
        out += w * full.segment(static_cast<Eigen::Index>(b * pd), static_cast<Eigen::Index>(pd));
    }
    return out;
}

StateVector build_global_singlet(const RegisterLayout &layout) {
    const LatticeGeometry &g = layout.geometry();
    std::size_t index = 0;
    for (const Vertex &v : g.vertices()) {
        if (!is_even(v)) {
            index += layout.strides()[layout.fermion_register(v)];
        }
    }
    Eigen::VectorXcd phys = Eigen::VectorXcd::Zero(static_cast<Eigen::Index>(layout.physical_dim()));
    phys(static_cast<Eigen::Index>(index)) = 1.0;
    return StateVector(layout, attach_ancillas(layout, phys));
}

double unitarity_residual(const Eigen::MatrixXcd &U) {
    if (U.rows() != U.cols()) {
        return INFINITY;
    }
    return (U.adjoint() * U - Eigen::MatrixXcd::Identity(U.rows(), U.cols())).cwiseAbs().maxCoeff();
}

static void check_targets(const std::vector<int> &dims, const Eigen::MatrixXcd &op,
                          std::span<const std::size_t> targets) {
    std::size_t d = 1;
    for (std::size_t i = 0; i < targets.size(); ++i) {
        if (targets[i] >= dims.size()) {
            throw std::out_of_range("gate target out of range");
        }
        for (std::size_t j = 0; j < i; ++j) {
            if (targets[j] == targets[i]) {
                throw std::invalid_argument("repeated gate target");
            }
        }
        d *= static_cast<std::size_t>(dims[targets[i]]);
    }
    if (static_cast<std::size_t>(op.rows()) != d || static_cast<std::size_t>(op.cols()) != d) {
        throw std::invalid_argument("gate dimension does not match targets");
    }
}

void apply_local(Eigen::Ref<Eigen::MatrixXcd> states, const std::vector<int> &dims,
                 const std::vector<std::size_t> &strides, const Eigen::MatrixXcd &op,
                 std::span<const std::size_t> targets) {
    const std::size_t d = static_cast<std::size_t>(op.rows());
    std::vector<std::size_t> offset(d, 0);
    for (std::size_t l = 0; l < d; ++l) {
        std::size_t rest = l;
        for (std::size_t t : targets) {
            std::size_t digit = rest % static_cast<std::size_t>(dims[t]);
            rest /= static_cast<std::size_t>(dims[t]);
            offset[l] += digit * strides[t];
        }
    }
    std::vector<int> odo_dim;
    std::vector<std::size_t> odo_stride;
    for (std::size_t r = 0; r < dims.size(); ++r) {
        if (std::find(targets.begin(), targets.end(), r) == targets.end()) {
            odo_dim.push_back(dims[r]);
            odo_stride.push_back(strides[r]);
        }
    }
    bool diagonal = true;
    for (Eigen::Index i = 0; i < op.rows() && diagonal; ++i) {
        for (Eigen::Index j = 0; j < op.cols(); ++j) {
            if (i != j && op(i, j) != cplx(0.0)) {
                diagonal = false;
                break;
            }
        }
    }
    const Eigen::Index cols = states.cols();
    std::vector<int> digit(odo_dim.size(), 0);
    std::size_t base = 0;
    Eigen::MatrixXcd tmp(static_cast<Eigen::Index>(d), cols);
    Eigen::MatrixXcd res(static_cast<Eigen::Index>(d), cols);
    while (true) {
        if (diagonal) {
            for (std::size_t l = 0; l < d; ++l) {
                const cplx f = op(static_cast<Eigen::Index>(l), static_cast<Eigen::Index>(l));
                if (f != cplx(1.0)) {
                    states.row(static_cast<Eigen::Index>(base + offset[l])) *= f;
                }
            }
        } else {
            for (std::size_t l = 0; l < d; ++l) {
                tmp.row(static_cast<Eigen::Index>(l)) = states.row(static_cast<Eigen::Index>(base + offset[l]));
            }
            res.noalias() = op * tmp;
            for (std::size_t l = 0; l < d; ++l) {
                states.row(static_cast<Eigen::Index>(base + offset[l])) = res.row(static_cast<Eigen::Index>(l));
            }
        }
        std::size_t i = 0;
        for (; i < odo_dim.size(); ++i) {
            ++digit[i];
            base += odo_stride[i];
            if (digit[i] < odo_dim[i]) {
                break;
            }
            base -= static_cast<std::size_t>(digit[i]) * odo_stride[i];
            digit[i] = 0;
        }
        if (i == odo_dim.size()) {
            break;
        }
    }
}

void apply_gate(StateVector &state, const Eigen::MatrixXcd &gate, std::span<const std::size_t> targets) {
    const RegisterLayout &layout = state.layout();
    check_targets(layout.dims(), gate, targets);
    if (unitarity_residual(gate) > 1e-12) {
        throw std::invalid_argument("gate matrix is not unitary");
    }
    apply_local(state.amplitudes(), layout.dims(), layout.strides(), gate, targets);
}

double fidelity_up_to_phase(const Eigen::VectorXcd &a, const Eigen::VectorXcd &b) {
    if (a.size() != b.size()) {
        throw std::invalid_argument("state length mismatch");
    }
    return std::min(1.0, std::abs(a.dot(b)));
}

double fidelity_up_to_phase(const StateVector &a, const StateVector &b) {
    return fidelity_up_to_phase(a.amplitudes(), b.amplitudes());
}

std::vector<std::size_t> merge_supports(const std::vector<std::size_t> &a, const std::vector<std::size_t> &b) {
    std::vector<std::size_t> out;
    std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
    return out;
}

static std::size_t support_dim(const RegisterLayout &layout, const std::vector<std::size_t> &support) {
    std::size_t d = 1;
    for (std::size_t r : support) {
        d *= static_cast<std::size_t>(layout.dims().at(r));
    }
    return d;
}

LocalOperator tensor_operator(const RegisterLayout &layout, std::vector<std::size_t> support,
                              const std::vector<std::pair<std::size_t, Eigen::MatrixXcd>> &factors) {
    std::sort(support.begin(), support.end());
    Eigen::MatrixXcd m = Eigen::MatrixXcd::Identity(1, 1);
    // Least significant register first: new factors go on the left of the Kronecker product.
    for (std::size_t r : support) {
        const int d = layout.dims().at(r);
        Eigen::MatrixXcd f = Eigen::MatrixXcd::Identity(d, d);
        for (const auto &[reg, mat] : factors) {
            if (reg == r) {
                f = mat * f;
            }
        }
        Eigen::MatrixXcd next(m.rows() * d, m.cols() * d);
        for (int i = 0; i < d; ++i) {
            for (int j = 0; j < d; ++j) {
                next.block(i * m.rows(), j * m.cols(), m.rows(), m.cols()) = f(i, j) * m;
            }
        }
        m = std::move(next);
    }
    for (const auto &[reg, mat] : factors) {
        if (!std::binary_search(support.begin(), support.end(), reg)) {
            throw std::invalid_argument("factor register outside support");
        }
    }
    return {std::move(support), std::move(m)};
}

LocalOperator extend_operator(const RegisterLayout &layout, const LocalOperator &op,
                              std::vector<std::size_t> support) {
    std::sort(support.begin(), support.end());
    if (support == op.support) {
        return op;
    }
    // Position of each old support register inside the new support.
    std::vector<std::size_t> local_stride(support.size());
    std::size_t s = 1;
    for (std::size_t i = 0; i < support.size(); ++i) {
        local_stride[i] = s;
        s *= static_cast<std::size_t>(layout.dims().at(support[i]));
    }
    const std::size_t new_dim = s;
    std::vector<std::size_t> old_pos;
    for (std::size_t r : op.support) {
        auto it = std::lower_bound(support.begin(), support.end(), r);
        if (it == support.end() || *it != r) {
            throw std::invalid_argument("support is not a superset");
        }
        old_pos.push_back(static_cast<std::size_t>(it - support.begin()));
    }
    std::vector<std::size_t> extra_pos;
    for (std::size_t i = 0; i < support.size(); ++i) {
        if (std::find(old_pos.begin(), old_pos.end(), i) == old_pos.end()) {
            extra_pos.push_back(i);
        }
    }
    const std::size_t old_dim = static_cast<std::size_t>(op.matrix.rows());
    std::vector<std::size_t> old_offset(old_dim, 0);
    for (std::size_t l = 0; l < old_dim; ++l) {
        std::size_t rest = l;
        for (std::size_t i = 0; i < old_pos.size(); ++i) {
            std::size_t d = static_cast<std::size_t>(layout.dims()[support[old_pos[i]]]);
            old_offset[l] += (rest % d) * local_stride[old_pos[i]];
            rest /= d;
        }
    }
    std::size_t extra_dim = new_dim / old_dim;
    std::vector<std::size_t> extra_offset(extra_dim, 0);
    for (std::size_t e = 0; e < extra_dim; ++e) {
        std::size_t rest = e;
        for (std::size_t p : extra_pos) {
            std::size_t d = static_cast<std::size_t>(layout.dims()[support[p]]);
            extra_offset[e] += (rest % d) * local_stride[p];
            rest /= d;
        }
    }
    Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(static_cast<Eigen::Index>(new_dim), static_cast<Eigen::Index>(new_dim));
    for (std::size_t e = 0; e < extra_dim; ++e) {
        for (std::size_t r = 0; r < old_dim; ++r) {
            for (std::size_t c = 0; c < old_dim; ++c) {
                m(static_cast<Eigen::Index>(extra_offset[e] + old_offset[r]),
                  static_cast<Eigen::Index>(extra_offset[e] + old_offset[c])) =
                    op.matrix(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c));
            }
        }
    }
    return {std::move(support), std::move(m)};
}

LocalOperator multiply(const RegisterLayout &layout, const LocalOperator &a, const LocalOperator &b) {
    auto s = merge_supports(a.support, b.support);
    LocalOperator ea = extend_operator(layout, a, s);
    LocalOperator eb = extend_operator(layout, b, s);
    return {s, ea.matrix * eb.matrix};
}

LocalOperator add(const RegisterLayout &layout, const LocalOperator &a, const LocalOperator &b) {
    auto s = merge_supports(a.support, b.support);
    LocalOperator ea = extend_operator(layout, a, s);
    LocalOperator eb = extend_operator(layout, b, s);
    return {s, ea.matrix + eb.matrix};
}

LocalOperator adjoint(const LocalOperator &a) { return {a.support, a.matrix.adjoint()}; }

void apply_operator(StateVector &state, const LocalOperator &op) {
    const RegisterLayout &layout = state.layout();
    check_targets(layout.dims(), op.matrix, op.support);
    apply_local(state.amplitudes(), layout.dims(), layout.strides(), op.matrix, op.support);
}

void accumulate_dense(const RegisterLayout &layout, const LocalOperator &op, Eigen::MatrixXcd &out, cplx scale) {
    const std::size_t D = layout.total_dim();
    if (static_cast<std::size_t>(out.rows()) != D || static_cast<std::size_t>(out.cols()) != D) {
        throw std::invalid_argument("dense target has wrong dimension");
    }
    const std::size_t d = support_dim(layout, op.support);
    std::vector<std::size_t> offset(d, 0);
    for (std::size_t l = 0; l < d; ++l) {
        std::size_t rest = l;
        for (std::size_t t : op.support) {
            std::size_t dt = static_cast<std::size_t>(layout.dims()[t]);
            offset[l] += (rest % dt) * layout.strides()[t];
            rest /= dt;
        }
    }
    for (std::size_t col = 0; col < D; ++col) {
        std::size_t local = 0;
        std::size_t mult = 1;
        for (std::size_t t : op.support) {
            std::size_t dt = static_cast<std::size_t>(layout.dims()[t]);
            local += ((col / layout.strides()[t]) % dt) * mult;
            mult *= dt;
        }
        const std::size_t base = col - offset[local];
        for (std::size_t r = 0; r < d; ++r) {
            const cplx v = op.matrix(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(local));
            if (v != cplx(0.0)) {
                out(static_cast<Eigen::Index>(base + offset[r]), static_cast<Eigen::Index>(col)) += scale * v;
            }
        }
    }
}

}  // namespace zlgt
