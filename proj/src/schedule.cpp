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

#include "zlgt/schedule.hpp"

#include <cmath>
#include <cstdio>
#include <deque>
#include <map>
#include <sstream>
#include <stdexcept>

#include "zlgt/stator.hpp"

namespace zlgt {

std::string compile_mode_string(CompileMode m) { return m == CompileMode::direct ? "direct" : "choreography"; }

CompileMode parse_compile_mode(const std::string &s) {
    if (s == "direct") {
        return CompileMode::direct;
    }
    if (s == "choreography") {
        return CompileMode::choreography;
    }
    throw std::invalid_argument("unknown mode: " + s);
}

namespace {

enum class BlockKind { ent, act, marker };

struct Block {
    Block() = default;
    Block(BlockKind k, std::vector<GateOp> g) : kind(k), gates(std::move(g)) {}

    BlockKind kind = BlockKind::marker;
    std::vector<GateOp> gates;
    // Stage-35 (or direct M/E) content, applied once at full tau in order 2.
    bool final_stage = false;
    // Net entangler power per (link, ancilla) register pair.
    std::map<std::pair<std::size_t, std::size_t>, int> net;
};

Block adjoint_block(const RegisterLayout &layout, const Block &b) {
    Block out;
    out.kind = b.kind;
    out.final_stage = b.final_stage;
    for (auto it = b.gates.rbegin(); it != b.gates.rend(); ++it) {
        out.gates.push_back(adjoint_gate(layout, *it));
    }
    for (const auto &[key, v] : b.net) {
        out.net[key] = -v;
    }
    return out;
}

struct Entangle {
    std::size_t link;
    std::size_t anc;
    bool dagger;
};

class Builder {
  public:
    Builder(const RegisterLayout &layout, const Couplings &c, double tau, const CompileOptions &opt)
        : L_(layout), g_(layout.geometry()), c_(c), tau_(tau), opt_(opt) {
        collision_form_ = opt.mode == CompileMode::choreography && layout.N() == 3;
    }

    std::vector<Block> build() {
        if (opt_.mode == CompileMode::choreography) {
            choreography();
        } else {
            direct();
        }
        return std::move(blocks_);
    }

  private:
    GateOp gate(const std::string &name, std::vector<std::size_t> targets, int stage, std::vector<double> params = {}) {
        return make_gate(L_, name, std::move(targets), std::move(params), stage);
    }

    void advance(int stage) {
        for (int s = last_stage_ + 1; s < stage; ++s) {
            Block b{BlockKind::marker, {make_marker("idle", s)}};
            blocks_.push_back(std::move(b));
        }
        if (stage > last_stage_) {
            last_stage_ = stage;
        }
    }

    void marker(const std::string &label, int stage) {
        advance(stage);
        blocks_.push_back(Block{BlockKind::marker, {make_marker(label, stage)}});
    }

    void act(std::vector<GateOp> gates, int stage, bool final_stage = false) {
        if (gates.empty()) {
            return;
        }
        advance(stage);
        Block b{BlockKind::act, std::move(gates)};
        b.final_stage = final_stage;
        blocks_.push_back(std::move(b));
    }

    void ent(const std::vector<Entangle> &items, int stage) {
        if (items.empty()) {
            return;
        }
        advance(stage);
        Block b{BlockKind::ent, {}};
        for (const Entangle &e : items) {
            if (collision_form_) {
                // E = V_D^dag (F U' F) V_D and E^dag = V_D^dag U' V_D on the link.
                b.gates.push_back(gate("link_fourier", {e.link}, stage));
                if (!e.dagger) {
                    b.gates.push_back(gate("ancilla_flip", {e.anc}, stage));
                }
                b.gates.push_back(gate("collision", {e.link, e.anc}, stage));
                if (!e.dagger) {
                    b.gates.push_back(gate("ancilla_flip", {e.anc}, stage));
                }
                b.gates.push_back(gate("link_fourier_dag", {e.link}, stage));
            } else {
                b.gates.push_back(gate(e.dagger ? "entangler_dag" : "entangler", {e.link, e.anc}, stage));
            }
            b.net[{e.link, e.anc}] += e.dagger ? -1 : 1;
        }
        blocks_.push_back(std::move(b));
    }

    std::size_t link_reg(Vertex origin, int k) const { return L_.link_register(origin, k); }
    std::size_t ferm(Vertex v) const { return L_.fermion_register(v); }

    std::vector<std::size_t> hop_targets(const Link &l) const {
        std::vector<std::size_t> t;
        for (std::size_t r = ferm(l.origin); r <= ferm(l.end()); ++r) {
            t.push_back(r);
        }
        return t;
    }

    // Ancilla carrying the stator of a link in each gauge-matter set, if any.
    std::optional<std::size_t> serving(TermName set, const Link &l) const {
        const Vertex o = l.origin;
        switch (set) {
            case TermName::GM_ev:
            case TermName::GM_eh:
                if (g_.has_plaquette(o)) {
                    return L_.ancilla_for(o);
                }
                return std::nullopt;
            case TermName::GM_ov: {
                Vertex left{o.x1 - 1, o.x2};
                if (g_.has_plaquette(left)) {
                    return L_.ancilla_for(left);
                }
                if (g_.has_plaquette(o)) {
                    return L_.ancilla_for(o);
                }
                return std::nullopt;
            }
            case TermName::GM_oh:
                if (g_.has_plaquette(o)) {
                    return odd_serving(o);
                }
                return std::nullopt;
            default:
                throw std::logic_error("not a gauge-matter set");
        }
    }

    std::size_t odd_serving(Vertex y) const {
        Vertex left{y.x1 - 1, y.x2};
        if (g_.has_plaquette(left)) {
            return L_.ancilla_for(left);
        }
        return L_.ancilla_for(y);
    }

    struct Stages {
        int fourier, collide, hop, uncollide, fourier_dag;
    };

    // Collision-mediated gauge-matter bracket on a stator already attached to every covered link.
    void gm_bracket(TermName set, const Stages &st) {
        const bool even = set == TermName::GM_eh || set == TermName::GM_ev;
        std::vector<std::pair<Link, std::size_t>> covered;
        std::vector<Link> uncovered;
        for (const Link &l : gauge_matter_links(g_, set)) {
            if (auto a = serving(set, l)) {
                covered.emplace_back(l, *a);
            } else {
                uncovered.push_back(l);
            }
        }
        std::vector<Vertex> cls;
        for (const Vertex &v : g_.vertices()) {
            if (is_even(v) == even) {
                cls.push_back(v);
            }
        }
        const double phi = tau_ * c_.lambda_GM;

        std::vector<GateOp> a;
        for (const auto &[l, anc] : covered) {
            a.push_back(gate("ancilla_fourier", {anc}, st.fourier));
        }
        act(std::move(a), st.fourier);

        a.clear();
        for (const auto &[l, anc] : covered) {
            a.push_back(gate("fermion_ancilla_collision", {ferm(l.origin), anc}, st.collide));
        }
        for (const Link &l : uncovered) {
            a.push_back(gate("gauge_matter_coupling_dag", {link_reg(l.origin, l.k), ferm(l.origin)}, st.collide));
        }
        for (const Vertex &v : cls) {
            a.push_back(gate("spurious_phase", {ferm(v)}, st.collide, {opt_.theta}));
        }
        act(std::move(a), st.collide);

        a.clear();
        for (const auto &[l, anc] : covered) {
            a.push_back(gate("hop", hop_targets(l), st.hop, {phi}));
        }
        for (const Link &l : uncovered) {
            a.push_back(gate("hop", hop_targets(l), st.hop, {phi}));
        }
        act(std::move(a), st.hop);

        a.clear();
        for (const auto &[l, anc] : covered) {
            a.push_back(gate("ancilla_flip", {anc}, st.uncollide));
            a.push_back(gate("fermion_ancilla_collision", {ferm(l.origin), anc}, st.uncollide));
            a.push_back(gate("ancilla_flip", {anc}, st.uncollide));
        }
        for (const Link &l : uncovered) {
            a.push_back(gate("gauge_matter_coupling", {link_reg(l.origin, l.k), ferm(l.origin)}, st.uncollide));
        }
        for (const Vertex &v : cls) {
            a.push_back(gate("spurious_phase", {ferm(v)}, st.uncollide, {opt_.theta_prime}));
        }
        for (const auto &[l, anc] : covered) {
            if (st.fourier_dag == st.uncollide) {
                a.push_back(gate("ancilla_fourier_dag", {anc}, st.uncollide));
            }
        }
        act(std::move(a), st.uncollide);

        if (st.fourier_dag != st.uncollide) {
            a.clear();
            for (const auto &[l, anc] : covered) {
                a.push_back(gate("ancilla_fourier_dag", {anc}, st.fourier_dag));
            }
            act(std::move(a), st.fourier_dag);
        }
    }

    std::vector<Entangle> covered_entangles(TermName set, bool dagger, bool only_own_odd = false) const {
        std::vector<Entangle> out;
        for (const Link &l : gauge_matter_links(g_, set)) {
            if (only_own_odd && g_.has_plaquette(Vertex{l.origin.x1 - 1, l.origin.x2})) {
                continue;
            }
            if (auto a = serving(set, l)) {
                out.push_back({link_reg(l.origin, l.k), *a, dagger});
            }
        }
        return out;
    }

    // Entangle link number i (0-based, counterclockwise from the bottom) of each plaquette.
    std::vector<Entangle> plaquette_entangles(bool even, int i, bool dagger) const {
        std::vector<Entangle> out;
        for (const Vertex &p : plaquettes_of_parity(g_, even)) {
            Link l = g_.plaquette_links(p)[static_cast<std::size_t>(i)];
            std::size_t anc = even ? L_.ancilla_for(p) : odd_serving(p);
            out.push_back({link_reg(l.origin, l.k), anc, dagger});
        }
        return out;
    }

    void control(bool even, int stage) {
        std::vector<GateOp> a;
        for (const Vertex &p : plaquettes_of_parity(g_, even)) {
            std::size_t anc = even ? L_.ancilla_for(p) : odd_serving(p);
            a.push_back(gate("control_field", {anc}, stage, {tau_, c_.lambda_B}));
        }
        act(std::move(a), stage);
    }

    std::vector<GateOp> local_terms(int mass_stage, int electric_stage) {
        std::vector<GateOp> a;
        for (const Vertex &v : g_.vertices()) {
            a.push_back(gate("mass", {ferm(v)}, mass_stage, {tau_, c_.mass, is_even(v) ? 1.0 : -1.0}));
        }
        const double variant = c_.electric == ElectricVariant::group ? 0.0 : 1.0;
        for (const Link &l : g_.links()) {
            a.push_back(gate("electric", {link_reg(l.origin, l.k)}, electric_stage, {tau_, c_.lambda_E, variant}));
        }
        return a;
    }

    void choreography() {
        if (L_.policy() == AncillaPolicy::none) {
            throw std::invalid_argument("choreography mode requires ancillas");
        }
        marker("start", 1);
        // Even vertical gauge-matter terms on P-stators of the even plaquettes.
        ent(covered_entangles(TermName::GM_ev, false), 2);
        gm_bracket(TermName::GM_ev, {2, 3, 4, 5, 6});
        ent(covered_entangles(TermName::GM_ev, true), 6);
        // Even horizontal; the stator stays for the plaquette.
        ent(covered_entangles(TermName::GM_eh, false), 7);
        gm_bracket(TermName::GM_eh, {7, 8, 9, 10, 10});
        // Even plaquettes.
        ent(plaquette_entangles(true, 1, false), 11);
        ent(plaquette_entangles(true, 2, true), 12);
        ent(plaquette_entangles(true, 3, true), 13);
        control(true, 14);
        ent(plaquette_entangles(true, 3, false), 15);
        ent(plaquette_entangles(true, 2, false), 16);
        ent(plaquette_entangles(true, 0, true), 17);
        marker("move_right", 18);
        // Odd vertical; carried ancillas already hold the stator.
        ent(covered_entangles(TermName::GM_ov, false, true), 19);
        gm_bracket(TermName::GM_ov, {19, 20, 21, 22, 23});
        ent(covered_entangles(TermName::GM_ov, true), 23);
        // Odd horizontal.
        ent(covered_entangles(TermName::GM_oh, false), 24);
        gm_bracket(TermName::GM_oh, {24, 25, 26, 27, 27});
        // Odd plaquettes.
        ent(plaquette_entangles(false, 1, false), 28);
        ent(plaquette_entangles(false, 2, true), 29);
        ent(plaquette_entangles(false, 3, true), 30);
        control(false, 31);
        ent(plaquette_entangles(false, 3, false), 32);
        ent(plaquette_entangles(false, 2, false), 33);
        {
            std::vector<Entangle> last = plaquette_entangles(false, 1, true);
            for (const Entangle &e : plaquette_entangles(false, 0, true)) {
                last.push_back(e);
            }
            ent(last, 34);
        }
        advance(35);
        Block m{BlockKind::marker, {make_marker("move_back", 35)}};
        m.final_stage = true;
        blocks_.push_back(std::move(m));
        act(local_terms(35, 35), 35, true);
    }

    void direct_gm(TermName set, int stage) {
        std::vector<GateOp> a;
        const double phi = tau_ * c_.lambda_GM;
        for (const Link &l : gauge_matter_links(g_, set)) {
            a.push_back(gate("gauge_matter_coupling_dag", {link_reg(l.origin, l.k), ferm(l.origin)}, stage));
            a.push_back(gate("hop", hop_targets(l), stage, {phi}));
            a.push_back(gate("gauge_matter_coupling", {link_reg(l.origin, l.k), ferm(l.origin)}, stage));
        }
        act(std::move(a), stage);
    }

    void direct_plaquettes(bool even, int stage) {
        for (const Vertex &p : plaquettes_of_parity(g_, even)) {
            advance(stage);
            Block up{BlockKind::ent, {}};
            for (GateOp gop : plaquette_stator_sequence(L_, p, Direction::forward)) {
                gop.stage = stage;
                up.net[{gop.targets[0], gop.targets[1]}] += gop.name == "entangler" ? 1 : -1;
                up.gates.push_back(std::move(gop));
            }
            Block down = adjoint_block(L_, up);
            blocks_.push_back(std::move(up));
            act({gate("control_field", {L_.ancilla_for(p)}, stage, {tau_, c_.lambda_B})}, stage);
            blocks_.push_back(std::move(down));
        }
    }

    void direct() {
        direct_gm(TermName::GM_ev, 1);
        direct_gm(TermName::GM_eh, 2);
        direct_plaquettes(true, 3);
        direct_gm(TermName::GM_ov, 4);
        direct_gm(TermName::GM_oh, 5);
        direct_plaquettes(false, 6);
        std::vector<GateOp> terms = local_terms(7, 8);
        std::vector<GateOp> m(terms.begin(), terms.begin() + static_cast<long>(g_.vertices().size()));
        std::vector<GateOp> e(terms.begin() + static_cast<long>(g_.vertices().size()), terms.end());
        act(std::move(m), 7, true);
        act(std::move(e), 8, true);
    }

    const RegisterLayout &L_;
    const LatticeGeometry &g_;
    const Couplings &c_;
    double tau_;
    CompileOptions opt_;
    bool collision_form_ = false;
    int last_stage_ = 0;
    std::vector<Block> blocks_;
};

bool net_clear(const std::map<std::pair<std::size_t, std::size_t>, int> &net) {
    for (const auto &[k, v] : net) {
        if (v != 0) {
            return false;
        }
    }
    return true;
}

}  // namespace

Schedule compile_step(const RegisterLayout &layout, const Couplings &couplings, double tau,
                      const CompileOptions &options) {
    if (options.order != 1 && options.order != 2) {
        throw std::invalid_argument("unsupported Trotter order " + std::to_string(options.order));
    }
    std::vector<Block> blocks;
    if (options.order == 1) {
        blocks = Builder(layout, couplings, tau, options).build();
    } else {
        // Mirrored half: the adjoint of the half step at -tau/2 runs the same term
        // exponentials in reverse order, each frame undone by its own entanglers.
        std::vector<Block> half = Builder(layout, couplings, tau / 2.0, options).build();
        std::vector<Block> full = Builder(layout, couplings, tau, options).build();
        std::vector<Block> back = Builder(layout, couplings, -tau / 2.0, options).build();
        for (const Block &b : half) {
            if (!b.final_stage) {
                blocks.push_back(b);
            }
        }
        for (const Block &b : full) {
            if (b.final_stage) {
                blocks.push_back(b);
            }
        }
        for (auto it = back.rbegin(); it != back.rend(); ++it) {
            if (!it->final_stage) {
                blocks.push_back(adjoint_block(layout, *it));
            }
        }
    }

    Schedule s;
    s.mode = options.mode;
    s.order = options.order;
    s.tau = tau;
    if (options.mode == CompileMode::choreography) {
        s.theta = options.theta;
        s.theta_prime = options.theta_prime;
    }
    std::map<std::pair<std::size_t, std::size_t>, int> net;
    bool pending = false;
    for (const Block &b : blocks) {
        for (const GateOp &g : b.gates) {
            s.gates.push_back(g);
            pending = pending || !g.is_marker();
            // Ancilla-free gauge-matter frames also have to close before a checkpoint.
            if (g.name == "gauge_matter_coupling" || g.name == "gauge_matter_coupling_dag") {
                net[{g.targets[0], g.targets[1]}] += g.name == "gauge_matter_coupling" ? -1 : 1;
            }
        }
        for (const auto &[k, v] : b.net) {
            net[k] += v;
        }
        if (pending && net_clear(net)) {
            s.checkpoints.push_back(s.gates.size());
            pending = false;
        }
    }
    if (!net_clear(net)) {
        throw std::logic_error("compiled step leaves ancillas entangled");
    }
    if (s.checkpoints.empty() || s.checkpoints.back() != s.gates.size()) {
        s.checkpoints.push_back(s.gates.size());
    }
    return s;
}

Schedule adjoint_schedule(const RegisterLayout &layout, const Schedule &s) {
    Schedule out = s;
    out.gates.clear();
    for (auto it = s.gates.rbegin(); it != s.gates.rend(); ++it) {
        out.gates.push_back(adjoint_gate(layout, *it));
    }
    out.checkpoints.clear();
    for (auto it = s.checkpoints.rbegin(); it != s.checkpoints.rend(); ++it) {
        if (*it != s.gates.size()) {
            out.checkpoints.push_back(s.gates.size() - *it);
        }
    }
    out.checkpoints.push_back(out.gates.size());
    return out;
}

void apply_gates(const RegisterLayout &layout, const std::vector<GateOp> &gates, std::size_t begin, std::size_t end,
                 Eigen::Ref<Eigen::MatrixXcd> states) {
    if (static_cast<std::size_t>(states.rows()) != layout.total_dim()) {
        throw std::invalid_argument("state batch does not match the layout");
    }
    for (std::size_t i = begin; i < end; ++i) {
        const GateOp &g = gates[i];
        if (g.is_marker()) {
            continue;
        }
        apply_local(states, layout.dims(), layout.strides(), g.matrix, g.targets);
    }
}

void execute(const Schedule &schedule, StateVector &state) {
    Eigen::Map<Eigen::MatrixXcd> m(state.amplitudes().data(), state.amplitudes().size(), 1);
    apply_gates(state.layout(), schedule.gates, 0, schedule.gates.size(), m);
}

namespace {

Eigen::MatrixXcd attached_identity(const RegisterLayout &layout) {
    const auto pd = static_cast<Eigen::Index>(layout.physical_dim());
    const auto D = static_cast<Eigen::Index>(layout.total_dim());
    const Eigen::Index blocks = D / pd;
    const double w = 1.0 / std::sqrt(static_cast<double>(blocks));
    Eigen::MatrixXcd X = Eigen::MatrixXcd::Zero(D, pd);
    for (Eigen::Index b = 0; b < blocks; ++b) {
        X.block(b * pd, 0, pd, pd).diagonal().setConstant(w);
    }
    return X;
}

Eigen::MatrixXcd project_batch(const RegisterLayout &layout, const Eigen::MatrixXcd &X) {
    const auto pd = static_cast<Eigen::Index>(layout.physical_dim());
    const Eigen::Index blocks = X.rows() / pd;
    const double w = 1.0 / std::sqrt(static_cast<double>(blocks));
    Eigen::MatrixXcd out = Eigen::MatrixXcd::Zero(pd, X.cols());
    for (Eigen::Index b = 0; b < blocks; ++b) {
        out += w * X.block(b * pd, 0, pd, X.cols());
    }
    return out;
}

}  // namespace

Eigen::MatrixXcd physical_map(const RegisterLayout &layout, const Schedule &schedule) {
    Eigen::MatrixXcd X = attached_identity(layout);
    apply_gates(layout, schedule.gates, 0, schedule.gates.size(), X);
    return project_batch(layout, X);
}

std::vector<Eigen::MatrixXcd> segment_maps(const RegisterLayout &layout, const Schedule &schedule) {
    std::vector<Eigen::MatrixXcd> out;
    std::size_t begin = 0;
    for (std::size_t end : schedule.checkpoints) {
        Eigen::MatrixXcd X = attached_identity(layout);
        apply_gates(layout, schedule.gates, begin, end, X);
        out.push_back(project_batch(layout, X));
        begin = end;
    }
    return out;
}

StateVector trotter_evolve(const RegisterLayout &layout, const Couplings &couplings, double T, int n_steps,
                           const CompileOptions &options, const StateVector &initial,
                           const std::function<void(int, const StateVector &)> &observer) {
    if (n_steps < 1) {
        throw std::invalid_argument("n_steps must be at least 1");
    }
    Schedule s = compile_step(layout, couplings, T / n_steps, options);
    StateVector state = initial;
    for (int step = 1; step <= n_steps; ++step) {
        execute(s, state);
        if (observer) {
            observer(step, state);
        }
    }
    return state;
}

std::vector<double> spurious_phase_field(const LatticeGeometry &geometry, double theta, double theta_prime) {
    // Push every phase gate of W'_oh W'_ov W'_eh W'_ev to the far left.  A set's hopping
    // picks up Phi(origin) - Phi(end), with Phi the phase accumulated on each vertex so far.
    const std::vector<Vertex> &verts = geometry.vertices();
    std::vector<double> Phi(verts.size(), 0.0);
    std::vector<double> field(geometry.links().size(), 0.0);
    const TermName order[4] = {TermName::GM_ev, TermName::GM_eh, TermName::GM_ov, TermName::GM_oh};
    for (TermName set : order) {
        const bool even = set == TermName::GM_ev || set == TermName::GM_eh;
        auto bump = [&](double a) {
            for (std::size_t i = 0; i < verts.size(); ++i) {
                if (is_even(verts[i]) == even) {
                    Phi[i] += a;
                }
            }
        };
        bump(theta);
        for (const Link &l : gauge_matter_links(geometry, set)) {
            field[geometry.link_index(l.origin, l.k)] =
                Phi[geometry.vertex_index(l.origin)] - Phi[geometry.vertex_index(l.end())];
        }
        bump(theta_prime);
    }
    return field;
}

double spurious_central_phase(double theta, double theta_prime) { return 2.0 * theta + 2.0 * theta_prime; }

std::vector<double> plaquette_curl(const LatticeGeometry &geometry, const std::vector<double> &field) {
    std::vector<double> out;
    for (const Vertex &p : geometry.plaquettes()) {
        auto ls = geometry.plaquette_links(p);
        auto f = [&](int i) {
            const Link &l = ls[static_cast<std::size_t>(i)];
            return field.at(geometry.link_index(l.origin, l.k));
        };
        out.push_back(f(0) + f(1) - f(2) - f(3));
    }
    return out;
}

std::vector<double> solve_vertex_potential(const LatticeGeometry &geometry, const std::vector<double> &field) {
    if (field.size() != geometry.links().size()) {
        throw std::invalid_argument("field size does not match the link count");
    }
    const std::size_t nv = geometry.vertices().size();
    std::vector<double> Lambda(nv, 0.0);
    std::vector<bool> seen(nv, false);
    std::deque<Vertex> queue{Vertex{0, 0}};
    seen[0] = true;
    while (!queue.empty()) {
        Vertex v = queue.front();
        queue.pop_front();
        const double here = Lambda[geometry.vertex_index(v)];
        for (int k = 1; k <= 2; ++k) {
            if (geometry.has_link(v, k)) {
                Vertex w = step(v, k);
                std::size_t wi = geometry.vertex_index(w);
                if (!seen[wi]) {
                    seen[wi] = true;
                    Lambda[wi] = here + field[geometry.link_index(v, k)];
                    queue.push_back(w);
                }
            }
            Vertex u = k == 1 ? Vertex{v.x1 - 1, v.x2} : Vertex{v.x1, v.x2 - 1};
            if (geometry.has_link(u, k)) {
                std::size_t ui = geometry.vertex_index(u);
                if (!seen[ui]) {
                    seen[ui] = true;
                    Lambda[ui] = here - field[geometry.link_index(u, k)];
                    queue.push_back(u);
                }
            }
        }
    }
    double scale = 1.0;
    for (double f : field) {
        scale = std::max(scale, std::abs(f));
    }
    for (const Link &l : geometry.links()) {
        double r = Lambda[geometry.vertex_index(l.end())] - Lambda[geometry.vertex_index(l.origin)] -
                   field[geometry.link_index(l.origin, l.k)];
        if (std::abs(r) > 1e-9 * scale) {
            throw std::invalid_argument("phase field has non-zero curl; no vertex potential exists");
        }
    }
    return Lambda;
}

Eigen::VectorXcd gauge_away_phases(const RegisterLayout &layout, const std::vector<double> &Lambda) {
    const LatticeGeometry &g = layout.geometry();
    if (Lambda.size() != g.vertices().size()) {
        throw std::invalid_argument("Lambda size does not match the vertex count");
    }
    const std::size_t D = layout.total_dim();
    Eigen::VectorXcd d(static_cast<Eigen::Index>(D));
    std::vector<std::size_t> regs;
    for (const Vertex &v : g.vertices()) {
        regs.push_back(layout.fermion_register(v));
    }
    for (std::size_t i = 0; i < D; ++i) {
        double phase = 0.0;
        for (std::size_t j = 0; j < regs.size(); ++j) {
            if ((i / layout.strides()[regs[j]]) % 2 == 1) {
                phase += Lambda[j];
            }
        }
        d(static_cast<Eigen::Index>(i)) = std::polar(1.0, phase);
    }
    return d;
}

namespace {

std::string fmt17(double x) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

std::vector<std::string> split(const std::string &s, char sep) {
    std::vector<std::string> out;
    if (s.empty()) {
        return out;
    }
    std::string cur;
    std::istringstream in(s);
    while (std::getline(in, cur, sep)) {
        out.push_back(cur);
    }
    if (s.back() == sep) {
        out.emplace_back();
    }
    return out;
}

}  // namespace

std::string dump_schedule(const Schedule &s) {
    std::string out = "# mode=" + compile_mode_string(s.mode) + " order=" + std::to_string(s.order) +
                      " tau=" + fmt17(s.tau) + " theta=" + fmt17(s.theta) + " theta_prime=" + fmt17(s.theta_prime) +
                      "\n";
    for (const GateOp &g : s.gates) {
        out += std::to_string(g.stage) + "\t" + g.name + "\t";
        for (std::size_t i = 0; i < g.targets.size(); ++i) {
            out += (i ? "," : "") + std::to_string(g.targets[i]);
        }
        out += "\t";
        for (std::size_t i = 0; i < g.params.size(); ++i) {
            out += (i ? "," : "") + fmt17(g.params[i]);
        }
        out += "\n";
    }
    return out;
}

Schedule parse_schedule(const RegisterLayout &layout, const std::string &text) {
    Schedule s;
    std::istringstream in(text);
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty()) {
            continue;
        }
        if (line[0] == '#') {
            std::istringstream h(line.substr(1));
            std::string kv;
            while (h >> kv) {
                auto eq = kv.find('=');
                if (eq == std::string::npos) {
                    throw std::invalid_argument("bad schedule header field: " + kv);
                }
                std::string k = kv.substr(0, eq);
                std::string v = kv.substr(eq + 1);
                if (k == "mode") {
                    s.mode = parse_compile_mode(v);
                } else if (k == "order") {
                    s.order = std::stoi(v);
                } else if (k == "tau") {
                    s.tau = std::stod(v);
                } else if (k == "theta") {
                    s.theta = std::stod(v);
                } else if (k == "theta_prime") {
                    s.theta_prime = std::stod(v);
                } else {
                    throw std::invalid_argument("unknown schedule header field: " + k);
                }
            }
            continue;
        }
        std::vector<std::string> f = split(line, '\t');
        if (f.size() != 4) {
            throw std::invalid_argument("schedule line " + std::to_string(lineno) + ": expected 4 fields");
        }
        std::vector<std::size_t> targets;
        for (const std::string &t : split(f[2], ',')) {
            targets.push_back(static_cast<std::size_t>(std::stoul(t)));
        }
        std::vector<double> params;
        for (const std::string &p : split(f[3], ',')) {
            params.push_back(std::stod(p));
        }
        s.gates.push_back(make_gate(layout, f[1], targets, params, std::stoi(f[0])));
    }
    s.checkpoints.push_back(s.gates.size());
    return s;
}

}  // namespace zlgt
