#include "monoblock/monotone.hpp"

#include "monoblock/blocksolve.hpp"
#include "monoblock/error.hpp"
#include "monoblock/parallel.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <sstream>

namespace monoblock {

namespace {

std::string node_text(int alpha, int i, int j, double amount) {
    std::ostringstream os;
    os << "component " << alpha + 1 << " node (" << i << "," << j << ") off by " << amount;
    return os.str();
}

bool is_nondecreasing(const ProblemSpec& p) {
    return p.cls == QuasiMonotone::Nondecreasing;
}

}  // namespace

std::string to_string(Sweep s) {
    return s == Sweep::Jacobi ? "jacobi" : "gauss-seidel";
}

TauStatus check_tau_restriction(const ProblemSpec& problem, const Mesh& mesh) {
    TauStatus st;
    st.tau = mesh.tau();
    for (int m = 1; m <= mesh.nt(); ++m) {
        const double t = mesh.t(m);
        double clow = INFINITY;
        double q = 0.0;
        for (int a = 0; a < 2; ++a) {
            for (int i = 0; i <= mesh.nx(); ++i) {
                for (int j = 0; j <= mesh.ny(); ++j) {
                    clow = std::min(clow, problem.comp[a].c_lower(mesh.x(i), mesh.y(j), t));
                    q = std::max(q, std::abs(problem.comp[a].q_bound(mesh.x(i), mesh.y(j), t)));
                }
            }
        }
        const double beta = std::max(0.0, q - clow);
        st.beta.push_back(beta);
        st.beta_max = std::max(st.beta_max, beta);
    }
    st.ok = !(st.beta_max > 0.0 && st.tau * st.beta_max >= 1.0);
    return st;
}

PairCheck check_ordered_pair(const ProblemSpec& problem, const Mesh& mesh, const FieldPair& upper,
                             const FieldPair& lower, int m, const FieldPair& prev_upper, const FieldPair& prev_lower,
                             double slack) {
    PairCheck out;
    auto fail = [&out](bool& flag, double amount, const std::string& what) {
        if (flag) {
            flag = false;
            if (out.detail.empty()) {
                out.detail = what;
            }
        }
        out.worst = std::max(out.worst, amount);
    };
    const bool nd = is_nondecreasing(problem);
    for (int a = 0; a < 2; ++a) {
        for (int i = 0; i <= mesh.nx(); ++i) {
            for (int j = 0; j <= mesh.ny(); ++j) {
                const double gap = lower[a](i, j) - upper[a](i, j);
                if (gap > slack) {
                    fail(out.ordered, gap, "lower above upper, " + node_text(a, i, j, gap));
                }
                if (mesh.classify(i, j) == NodeKind::Boundary) {
                    const double g = problem.comp[a].g(mesh.x(i), mesh.y(j), mesh.t(m));
                    if (g - upper[a](i, j) > slack) {
                        fail(out.boundary, g - upper[a](i, j), "upper below boundary data, " + node_text(a, i, j, 0));
                    }
                    if (lower[a](i, j) - g > slack) {
                        fail(out.boundary, lower[a](i, j) - g, "lower above boundary data, " + node_text(a, i, j, 0));
                    }
                }
                if (m == 1) {
                    const double psi = problem.comp[a].psi(mesh.x(i), mesh.y(j));
                    if (psi - prev_upper[a](i, j) > slack || prev_lower[a](i, j) - psi > slack) {
                        fail(out.boundary, 0.0, "initial data not bracketed, " + node_text(a, i, j, 0));
                    }
                }
            }
        }
        const LevelOperator op = assemble_level(problem, mesh, a, m);
        const Field& up_partner = nd ? upper[1 - a] : lower[1 - a];
        const Field& lo_partner = nd ? lower[1 - a] : upper[1 - a];
        const Field ru = residual_field(problem, mesh, op, upper[a], prev_upper[a], up_partner);
        const Field rl = residual_field(problem, mesh, op, lower[a], prev_lower[a], lo_partner);
        for (int i = 1; i < mesh.nx(); ++i) {
            for (int j = 1; j < mesh.ny(); ++j) {
                if (ru(i, j) < -slack) {
                    fail(out.upper_residual, -ru(i, j), "negative upper residual, " + node_text(a, i, j, -ru(i, j)));
                }
                if (rl(i, j) > slack) {
                    fail(out.lower_residual, rl(i, j), "positive lower residual, " + node_text(a, i, j, rl(i, j)));
                }
            }
        }
    }
    if (out.ok()) {
        out.worst = 0.0;
    }
    return out;
}

bool verify_ordered_pair(const ProblemSpec& problem, const Mesh& mesh, const FieldPair& upper, const FieldPair& lower,
                         int m, const FieldPair& prev, double slack) {
    return check_ordered_pair(problem, mesh, upper, lower, m, prev, prev, slack).ok();
}

bool verify_ordered_pair(const ProblemSpec& problem, const Mesh& mesh, const FieldPair& upper, const FieldPair& lower,
                         int m, const FieldPair& prev_upper, const FieldPair& prev_lower, double slack) {
    return check_ordered_pair(problem, mesh, upper, lower, m, prev_upper, prev_lower, slack).ok();
}

int SolveReport::total_violations() const {
    int n = 0;
    for (const auto& l : levels) {
        n += l.sandwich_violations + l.sign_violations;
    }
    return n;
}

int SolveReport::total_structure_failures() const {
    int n = 0;
    for (const auto& l : levels) {
        n += l.structure_failures;
    }
    return n;
}

LevelSetup prepare_level(const ProblemSpec& problem, const Mesh& mesh, int m, const TimeStepPolicy& policy) {
    LevelSetup s;
    s.m = m;
    s.c = c_level(problem, mesh, m);
    for (int a = 0; a < 2; ++a) {
        s.ops[a] = assemble_level(problem, mesh, a, m, policy.assembly);
        s.shifted[a].reserve(s.ops[a].lines.size());
        for (const auto& line : s.ops[a].lines) {
            s.shifted[a].push_back(line.A.shifted(s.c[a]));
        }
    }
    if (!policy.check_structure) {
        return s;
    }
    for (int a = 0; a < 2; ++a) {
        for (std::size_t k = 0; k < s.ops[a].lines.size(); ++k) {
            const auto& line = s.ops[a].lines[k];
            const bool couplings_ok = std::all_of(line.left.begin(), line.left.end(), [](double v) { return v >= 0.0; }) &&
                                      std::all_of(line.right.begin(), line.right.end(), [](double v) { return v >= 0.0; });
            const bool ok = couplings_ok && is_m_matrix(line.A) && is_m_matrix(s.shifted[a][k]) &&
                            inverse_positivity_check(s.shifted[a][k], policy.positivity_trials,
                                                     static_cast<std::uint64_t>(1000 * m + 10 * a) + k);
            if (!ok) {
                ++s.structure_failures;
                if (s.structure_detail.empty()) {
                    s.structure_detail = "component " + std::to_string(a + 1) + " line " + std::to_string(line.i) +
                                         " at level " + std::to_string(m) + " is not an M-matrix";
                }
            }
        }
    }
    if (s.structure_failures > 0 && policy.on_structure_failure == ViolationPolicy::Throw) {
        raise(ErrorCode::DominanceViolation, s.structure_detail);
    }
    return s;
}

LevelIteration::LevelIteration(const ProblemSpec& problem, const Mesh& mesh, const LevelSetup& setup, Sweep sweep,
                               const TimeStepPolicy& policy, FieldPair upper0, FieldPair lower0,
                               const FieldPair& prev_upper, const FieldPair& prev_lower)
    : problem_(problem),
      mesh_(mesh),
      setup_(setup),
      sweep_(sweep),
      policy_(policy),
      upper_(std::move(upper0)),
      lower_(std::move(lower0)),
      prev_upper_(prev_upper),
      prev_lower_(prev_lower) {
    if (!(policy.delta > 0.0) || policy.max_iters < 1) {
        raise(ErrorCode::InvalidArgument, "policy needs delta > 0 and max_iters >= 1");
    }
    for (const Field* f : {&upper_[0], &upper_[1], &lower_[0], &lower_[1], &prev_upper_[0], &prev_upper_[1],
                           &prev_lower_[0], &prev_lower_[1]}) {
        if (f->nx() != mesh.nx() || f->ny() != mesh.ny()) {
            raise(ErrorCode::DimensionMismatch, "level iterate does not match the mesh");
        }
        if (!f->all_finite()) {
            raise(ErrorCode::NonFinite, "level iterate has non-finite entries");
        }
    }
    for (int a = 0; a < 2; ++a) {
        boundary_[a] = sample_boundary(problem, a, mesh, setup.m);
    }
    compute_residuals();
}

const Field& LevelIteration::partner(bool upper_seq, int alpha) const {
    const bool same = upper_seq == is_nondecreasing(problem_);
    return same ? upper_[1 - alpha] : lower_[1 - alpha];
}

void LevelIteration::compute_residuals() {
    for (int s = 0; s < 4; ++s) {
        const int a = s % 2;
        const bool up = s < 2;
        const Field& self = up ? upper_[a] : lower_[a];
        const Field& prev = up ? prev_upper_[a] : prev_lower_[a];
        res_[s] = residual_field(problem_, mesh_, setup_.ops[a], self, prev, partner(up, a));
        res_norm_[s] = max_abs(res_[s]);
    }
    residual_ = *std::max_element(res_norm_.begin(), res_norm_.end());
}

void LevelIteration::violation(int& counter, const std::string& what) {
    ++counter;
    if (policy_.on_violation == ViolationPolicy::Throw) {
        raise(ErrorCode::SandwichViolation, "level " + std::to_string(setup_.m) + " iteration " + std::to_string(n_) +
                                                ": " + what);
    }
}

void LevelIteration::audit(const FieldPair& old_upper, const FieldPair& old_lower) {
    const double eps = policy_.slack;
    for (int a = 0; a < 2; ++a) {
        for (int i = 0; i <= mesh_.nx(); ++i) {
            for (int j = 0; j <= mesh_.ny(); ++j) {
                const double lo_old = old_lower[a](i, j);
                const double lo = lower_[a](i, j);
                const double up = upper_[a](i, j);
                const double up_old = old_upper[a](i, j);
                if (lo_old - lo > eps) {
                    violation(sandwich_violations_, "lower sequence decreased, " + node_text(a, i, j, lo_old - lo));
                }
                if (lo - up > eps) {
                    violation(sandwich_violations_, "lower above upper, " + node_text(a, i, j, lo - up));
                }
                if (up - up_old > eps) {
                    violation(sandwich_violations_, "upper sequence increased, " + node_text(a, i, j, up - up_old));
                }
            }
        }
    }
    for (int s = 0; s < 4; ++s) {
        const bool up = s < 2;
        const Field& r = res_[s];
        for (int i = 1; i < mesh_.nx(); ++i) {
            for (int j = 1; j < mesh_.ny(); ++j) {
                if (up && r(i, j) < -eps) {
                    violation(sign_violations_, "negative upper residual, " + node_text(s % 2, i, j, -r(i, j)));
                } else if (!up && r(i, j) > eps) {
                    violation(sign_violations_, "positive lower residual, " + node_text(s % 2, i, j, r(i, j)));
                }
            }
        }
    }
}

void LevelIteration::step() {
    const int nx = mesh_.nx();
    const int ny = mesh_.ny();
    const auto n_line = static_cast<std::size_t>(ny - 1);
    const bool first = n_ == 0;
    const double eta = sweep_ == Sweep::GaussSeidel ? 1.0 : 0.0;

    FieldPair old_upper, old_lower;
    if (policy_.audit) {
        old_upper = upper_;
        old_lower = lower_;
    }

    auto solve_line = [&](int s, int i, std::span<const double> z_left, std::span<double> z, TridiagWorkspace& ws,
                          std::vector<double>& rhs) {
        const int a = s % 2;
        Field& u = s < 2 ? upper_[a] : lower_[a];
        const LineBlockSystem& sys = setup_.ops[a].line(i);
        const Field& r = res_[s];
        for (std::size_t k = 0; k < n_line; ++k) {
            rhs[k] = -r(i, static_cast<int>(k) + 1) + eta * sys.left[k] * z_left[k];
        }
        ws.solve(setup_.shifted[a][static_cast<std::size_t>(i - 1)], rhs, z);
        auto line = u.interior_line(i);
        for (std::size_t k = 0; k < n_line; ++k) {
            line[k] += z[k];
        }
    };

    // increment on the left boundary column: g - U^(0) on the first iteration, zero afterwards
    auto left_increment = [&](int s, std::vector<double>& z0) {
        const int a = s % 2;
        const Field& u = s < 2 ? upper_[a] : lower_[a];
        for (std::size_t k = 0; k < n_line; ++k) {
            const int j = static_cast<int>(k) + 1;
            z0[k] = first ? boundary_[a](0, j) - u(0, j) : 0.0;
        }
    };

    if (sweep_ == Sweep::GaussSeidel) {
        parallel_for(4, policy_.threads, [&](std::size_t sk) {
            const int s = static_cast<int>(sk);
            TridiagWorkspace ws;
            std::vector<double> rhs(n_line), z_left(n_line), z(n_line);
            left_increment(s, z_left);
            for (int i = 1; i < nx; ++i) {
                solve_line(s, i, z_left, z, ws, rhs);
                std::swap(z_left, z);
            }
        });
    } else {
        const std::size_t lines = static_cast<std::size_t>(nx - 1);
        parallel_for(4 * lines, policy_.threads, [&](std::size_t task) {
            const int s = static_cast<int>(task / lines);
            const int i = static_cast<int>(task % lines) + 1;
            TridiagWorkspace ws;
            std::vector<double> rhs(n_line), z_left(n_line, 0.0), z(n_line);
            solve_line(s, i, z_left, z, ws, rhs);
        });
    }

    if (first) {
        for (int a = 0; a < 2; ++a) {
            for (Field* f : {&upper_[a], &lower_[a]}) {
                for (int i = 0; i <= nx; ++i) {
                    for (int j = 0; j <= ny; ++j) {
                        if (mesh_.classify(i, j) == NodeKind::Boundary) {
                            (*f)(i, j) = boundary_[a](i, j);
                        }
                    }
                }
            }
        }
    }

    ++n_;
    compute_residuals();
    if (policy_.audit) {
        audit(old_upper, old_lower);
    }
    if (!stopped() && converged()) {
        stop_n_ = n_;
        stop_upper_ = upper_;
        stop_lower_ = lower_;
        stop_res_norm_ = res_norm_;
    }
}

void LevelIteration::run() {
    while (!converged()) {
        if (n_ >= policy_.max_iters) {
            raise(ErrorCode::NotConverged, "level " + std::to_string(setup_.m) + " did not reach delta after " +
                                               std::to_string(n_) + " iterations (residual " +
                                               std::to_string(residual_) + ")");
        }
        step();
    }
}

FieldPair LevelIteration::accepted() const {
    if (is_nondecreasing(problem_)) {
        return upper_;
    }
    return {upper_[0], lower_[1]};
}

FieldPair LevelIteration::stopped_accepted() const {
    if (!stopped()) {
        return accepted();
    }
    if (is_nondecreasing(problem_)) {
        return stop_upper_;
    }
    return {stop_upper_[0], stop_lower_[1]};
}

LevelReport LevelIteration::report() const {
    LevelReport r;
    r.m = setup_.m;
    r.method = sweep_;
    r.c = setup_.c;
    r.iterations = stopped() ? stop_n_ : n_;
    r.residuals = stopped() ? stop_res_norm_ : res_norm_;
    r.residual = *std::max_element(r.residuals.begin(), r.residuals.end());
    r.sandwich_violations = sandwich_violations_;
    r.sign_violations = sign_violations_;
    r.structure_failures = setup_.structure_failures;
    const FieldPair& up = stopped() ? stop_upper_ : upper_;
    const FieldPair& lo = stopped() ? stop_lower_ : lower_;
    r.upper_lower_gap = max_abs_diff(up, lo);
    return r;
}

namespace {

StepResult solve_level(const ProblemSpec& problem, const Mesh& mesh, Sweep sweep, const TimeStepPolicy& policy,
                       const FieldPair& upper0, const FieldPair& lower0, const FieldPair& prev, int m) {
    const auto start = std::chrono::steady_clock::now();
    const LevelSetup setup = prepare_level(problem, mesh, m, policy);
    LevelIteration it(problem, mesh, setup, sweep, policy, upper0, lower0, prev, prev);
    it.run();
    StepResult out;
    out.upper = it.upper();
    out.lower = it.lower();
    out.accepted = it.accepted();
    out.report = it.report();
    out.report.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return out;
}

void check_bracket(const Mesh& mesh, const Bracket& bracket) {
    const auto levels = static_cast<std::size_t>(mesh.nt() + 1);
    if (bracket.lower.size() != levels || bracket.upper.size() != levels) {
        raise(ErrorCode::DimensionMismatch, "bracket must hold nt+1 levels");
    }
}

TauStatus tau_gate(const ProblemSpec& problem, const Mesh& mesh, const TimeStepPolicy& policy) {
    TauStatus tau;
    if (policy.tau_check == TauCheck::Off) {
        return tau;
    }
    tau = check_tau_restriction(problem, mesh);
    if (!tau.ok && policy.tau_check == TauCheck::Enforce) {
        std::ostringstream os;
        os << "time step " << tau.tau << " violates the restriction tau*beta < 1 (beta = " << tau.beta_max << ")";
        raise(ErrorCode::InvalidArgument, os.str());
    }
    return tau;
}

FieldPair initial_pair(const ProblemSpec& problem, const Mesh& mesh) {
    return {sample_initial(problem, 0, mesh), sample_initial(problem, 1, mesh)};
}

}  // namespace

StepResult step_nondecreasing(const ProblemSpec& problem, const Mesh& mesh, Sweep sweep,
                              const TimeStepPolicy& policy, const FieldPair& upper0, const FieldPair& lower0,
                              const FieldPair& prev, int m) {
    if (!is_nondecreasing(problem)) {
        raise(ErrorCode::InvalidArgument, "step_nondecreasing called on a nonincreasing problem");
    }
    return solve_level(problem, mesh, sweep, policy, upper0, lower0, prev, m);
}

StepResult step_nonincreasing(const ProblemSpec& problem, const Mesh& mesh, Sweep sweep,
                              const TimeStepPolicy& policy, const FieldPair& upper0, const FieldPair& lower0,
                              const FieldPair& prev, int m) {
    if (is_nondecreasing(problem)) {
        raise(ErrorCode::InvalidArgument, "step_nonincreasing called on a nondecreasing problem");
    }
    return solve_level(problem, mesh, sweep, policy, upper0, lower0, prev, m);
}

MarchResult march(const ProblemSpec& problem, const Mesh& mesh, Sweep sweep, const TimeStepPolicy& policy,
                  const Bracket& bracket) {
    validate(problem);
    check_bracket(mesh, bracket);
    MarchResult out;
    out.report.method = sweep;
    out.report.cls = problem.cls;
    out.report.tau = tau_gate(problem, mesh, policy);
    out.solution.push_back(initial_pair(problem, mesh));
    out.upper.push_back(bracket.upper[0]);
    out.lower.push_back(bracket.lower[0]);
    for (int m = 1; m <= mesh.nt(); ++m) {
        const auto mm = static_cast<std::size_t>(m);
        const bool warm = policy.warm_start && m > 1;
        const FieldPair& up0 = warm ? out.upper[mm - 1] : bracket.upper[mm];
        const FieldPair& lo0 = warm ? out.lower[mm - 1] : bracket.lower[mm];
        StepResult r = solve_level(problem, mesh, sweep, policy, up0, lo0, out.solution[mm - 1], m);
        out.solution.push_back(std::move(r.accepted));
        out.upper.push_back(std::move(r.upper));
        out.lower.push_back(std::move(r.lower));
        out.report.levels.push_back(r.report);
    }
    return out;
}

CompareResult compare_sweeps(const ProblemSpec& problem, const Mesh& mesh, const TimeStepPolicy& policy,
                             const Bracket& bracket) {
    validate(problem);
    check_bracket(mesh, bracket);
    CompareResult out;
    MarchResult* runs[2] = {&out.jacobi, &out.gauss_seidel};
    const TauStatus tau = tau_gate(problem, mesh, policy);
    for (MarchResult* r : runs) {
        r->report.cls = problem.cls;
        r->report.tau = tau;
        r->solution.push_back(initial_pair(problem, mesh));
        r->upper.push_back(bracket.upper[0]);
        r->lower.push_back(bracket.lower[0]);
    }
    out.jacobi.report.method = Sweep::Jacobi;
    out.gauss_seidel.report.method = Sweep::GaussSeidel;
    const double eps = policy.slack;

    for (int m = 1; m <= mesh.nt(); ++m) {
        const auto mm = static_cast<std::size_t>(m);
        const auto start = std::chrono::steady_clock::now();
        const LevelSetup setup = prepare_level(problem, mesh, m, policy);
        const FieldPair prev = out.gauss_seidel.solution[mm - 1];
        LevelIteration jac(problem, mesh, setup, Sweep::Jacobi, policy, bracket.upper[mm], bracket.lower[mm], prev,
                           prev);
        LevelIteration gs(problem, mesh, setup, Sweep::GaussSeidel, policy, bracket.upper[mm], bracket.lower[mm],
                          prev, prev);
        CompareRow row;
        row.m = m;
        while (!(jac.stopped() && gs.stopped())) {
            if (jac.iterations() >= policy.max_iters) {
                raise(ErrorCode::NotConverged, "comparison at level " + std::to_string(m) + " hit max_iters");
            }
            jac.step();
            gs.step();
            for (int a = 0; a < 2; ++a) {
                for (int i = 0; i <= mesh.nx(); ++i) {
                    for (int j = 0; j <= mesh.ny(); ++j) {
                        const double chain[4] = {jac.lower()[a](i, j), gs.lower()[a](i, j), gs.upper()[a](i, j),
                                                 jac.upper()[a](i, j)};
                        for (int k = 0; k < 3; ++k) {
                            const double d = chain[k] - chain[k + 1];
                            if (d > eps) {
                                ++row.ordering_violations;
                                row.worst_violation = std::max(row.worst_violation, d);
                            }
                        }
                    }
                }
            }
        }
        row.n_jacobi = jac.stop_iterations();
        row.n_gauss_seidel = gs.stop_iterations();
        out.rows.push_back(row);
        const double wall = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        const LevelIteration* its[2] = {&jac, &gs};
        for (int k = 0; k < 2; ++k) {
            MarchResult& r = *runs[k];
            r.solution.push_back(its[k]->stopped_accepted());
            r.upper.push_back(its[k]->stopped_upper());
            r.lower.push_back(its[k]->stopped_lower());
            LevelReport rep = its[k]->report();
            rep.wall_seconds = wall;
            r.report.levels.push_back(rep);
        }
    }
    return out;
}

}  // namespace monoblock
