#pragma once

#include "monoblock/discretization.hpp"
#include "monoblock/mesh.hpp"
#include "monoblock/reaction.hpp"

#include <array>
#include <string>
#include <vector>

namespace monoblock {

/// Block Jacobi solves every line from the previous sweep; Gauss-Seidel feeds
/// the freshly updated left neighbour into the next line (increasing i).
enum class Sweep { Jacobi, GaussSeidel };

enum class TauCheck { Enforce, Warn, Off };

/// What to do when an audit finds an ordering or residual-sign violation
enum class ViolationPolicy { Throw, Record };

std::string to_string(Sweep s);

struct TimeStepPolicy {
    double delta = 1e-8;
    int max_iters = 10000;
    TauCheck tau_check = TauCheck::Warn;
    /// Check the sandwich ordering and residual signs after every iteration
    bool audit = true;
    ViolationPolicy on_violation = ViolationPolicy::Throw;
    /// M-matrix and inverse-positivity checks on every assembled line
    bool check_structure = true;
    ViolationPolicy on_structure_failure = ViolationPolicy::Throw;
    int positivity_trials = 2;
    double slack = 1e-10;
    /// Worker threads for independent line solves; 0 picks hardware concurrency
    int threads = 1;
    /// Start level m from the final iterates of level m-1 instead of the bracket.
    /// The ordering guarantees do not cover this mode.
    bool warm_start = false;
    AssemblyOptions assembly;
};

/// Time-step restriction status. beta[m-1] = max(0, q_m - clow_m) for m = 1..nt.
struct TauStatus {
    bool ok = true;
    double beta_max = 0.0;
    double tau = 0.0;
    std::vector<double> beta;
};

TauStatus check_tau_restriction(const ProblemSpec& problem, const Mesh& mesh);

/// Ordered lower and upper fields for every level m = 0..nt
struct Bracket {
    std::vector<FieldPair> lower;
    std::vector<FieldPair> upper;
};

/// Detailed outcome of an ordered-pair check
struct PairCheck {
    bool ordered = true;        ///< lower <= upper entrywise
    bool upper_residual = true; ///< upper residual >= -slack
    bool lower_residual = true; ///< lower residual <= +slack
    bool boundary = true;       ///< lower <= g <= upper on the boundary, and psi bracketed at m = 1
    double worst = 0.0;
    std::string detail;

    bool ok() const noexcept { return ordered && upper_residual && lower_residual && boundary; }
};

/// Ordered upper/lower check at level m. Residual partners follow the class:
/// nondecreasing pairs upper with upper, nonincreasing pairs upper with lower.
PairCheck check_ordered_pair(const ProblemSpec& problem, const Mesh& mesh, const FieldPair& upper,
                             const FieldPair& lower, int m, const FieldPair& prev_upper, const FieldPair& prev_lower,
                             double slack = 1e-10);

bool verify_ordered_pair(const ProblemSpec& problem, const Mesh& mesh, const FieldPair& upper, const FieldPair& lower,
                         int m, const FieldPair& prev, double slack = 1e-10);
bool verify_ordered_pair(const ProblemSpec& problem, const Mesh& mesh, const FieldPair& upper, const FieldPair& lower,
                         int m, const FieldPair& prev_upper, const FieldPair& prev_lower, double slack = 1e-10);

/// Per-level record
struct LevelReport {
    int m = 0;
    int iterations = 0;
    Sweep method = Sweep::GaussSeidel;
    /// final residual max-norms: upper component 1, 2, lower component 1, 2
    std::array<double, 4> residuals{};
    double residual = 0.0;
    std::array<double, 2> c{};
    int sandwich_violations = 0;
    int sign_violations = 0;
    int structure_failures = 0;
    double upper_lower_gap = 0.0;
    double wall_seconds = 0.0;
};

struct SolveReport {
    Sweep method = Sweep::GaussSeidel;
    QuasiMonotone cls = QuasiMonotone::Nondecreasing;
    TauStatus tau;
    std::vector<LevelReport> levels;

    int total_violations() const;
    int total_structure_failures() const;
};

/// Assembled operators and shifts for one level, shareable between sweeps
struct LevelSetup {
    int m = 0;
    std::array<LevelOperator, 2> ops;
    std::array<double, 2> c{};
    /// Shifted line matrices A + c I, indexed [alpha][i-1]
    std::array<std::vector<TriDiag>, 2> shifted;
    int structure_failures = 0;
    std::string structure_detail;
};

/// Assemble both components at level m and run the structural checks requested by the policy
LevelSetup prepare_level(const ProblemSpec& problem, const Mesh& mesh, int m, const TimeStepPolicy& policy);

/// One level of the block monotone iteration, advanced one step at a time.
///
/// Holds the four sequences upper_1, upper_2, lower_1, lower_2. For the
/// nondecreasing class the upper sequences couple to each other, as do the
/// lower ones. For the nonincreasing class the coupled pairs are
/// (upper_1, lower_2) and (lower_1, upper_2).
class LevelIteration {
public:
    LevelIteration(const ProblemSpec& problem, const Mesh& mesh, const LevelSetup& setup, Sweep sweep,
                   const TimeStepPolicy& policy, FieldPair upper0, FieldPair lower0, const FieldPair& prev_upper,
                   const FieldPair& prev_lower);

    /// Advance every sequence by one iteration and audit the result
    void step();

    /// Step until the stopping test holds. Throws NotConverged past max_iters.
    void run();

    /// Stopping test met at the current iterate (requires at least one step)
    bool converged() const noexcept { return n_ >= 1 && residual_ <= policy_.delta; }
    /// True once the stopping test has been met at some iterate
    bool stopped() const noexcept { return stop_n_ > 0; }

    int iterations() const noexcept { return n_; }
    int stop_iterations() const noexcept { return stop_n_; }
    const FieldPair& upper() const noexcept { return upper_; }
    const FieldPair& lower() const noexcept { return lower_; }
    /// Iterates at the first n meeting the stopping test
    const FieldPair& stopped_upper() const noexcept { return stop_upper_; }
    const FieldPair& stopped_lower() const noexcept { return stop_lower_; }
    double residual() const noexcept { return residual_; }
    const std::array<double, 4>& residuals() const noexcept { return res_norm_; }
    int sandwich_violations() const noexcept { return sandwich_violations_; }
    int sign_violations() const noexcept { return sign_violations_; }

    /// Accepted level solution: the upper pair when nondecreasing, (upper_1, lower_2) otherwise
    FieldPair accepted() const;
    FieldPair stopped_accepted() const;

    LevelReport report() const;

private:
    const Field& partner(bool upper_seq, int alpha) const;
    void compute_residuals();
    void audit(const FieldPair& old_upper, const FieldPair& old_lower);
    void violation(int& counter, const std::string& what);

    const ProblemSpec& problem_;
    const Mesh& mesh_;
    const LevelSetup& setup_;
    Sweep sweep_;
    TimeStepPolicy policy_;
    FieldPair upper_, lower_;
    FieldPair prev_upper_, prev_lower_;
    FieldPair boundary_;
    /// residual fields for upper_1, upper_2, lower_1, lower_2
    std::array<Field, 4> res_;
    std::array<double, 4> res_norm_{};
    double residual_ = 0.0;
    int n_ = 0;
    int stop_n_ = 0;
    FieldPair stop_upper_, stop_lower_;
    std::array<double, 4> stop_res_norm_{};
    int sandwich_violations_ = 0;
    int sign_violations_ = 0;
};

/// Result of one level solved to the stopping test
struct StepResult {
    FieldPair upper;
    FieldPair lower;
    FieldPair accepted;
    LevelReport report;

    /// (upper_1, lower_2) and (lower_1, upper_2) views for the nonincreasing class
    FieldPair pair_a() const { return {upper[0], lower[1]}; }
    FieldPair pair_b() const { return {lower[0], upper[1]}; }
};

StepResult step_nondecreasing(const ProblemSpec& problem, const Mesh& mesh, Sweep sweep,
                              const TimeStepPolicy& policy, const FieldPair& upper0, const FieldPair& lower0,
                              const FieldPair& prev, int m);

StepResult step_nonincreasing(const ProblemSpec& problem, const Mesh& mesh, Sweep sweep,
                              const TimeStepPolicy& policy, const FieldPair& upper0, const FieldPair& lower0,
                              const FieldPair& prev, int m);

struct MarchResult {
    /// accepted solution for m = 0..nt (m = 0 holds the initial data)
    std::vector<FieldPair> solution;
    /// final iterates per level, m = 0..nt (m = 0 copies the bracket)
    std::vector<FieldPair> upper;
    std::vector<FieldPair> lower;
    SolveReport report;
};

/// Solve every level in sequence, starting each from the bracket
MarchResult march(const ProblemSpec& problem, const Mesh& mesh, Sweep sweep, const TimeStepPolicy& policy,
                  const Bracket& bracket);

/// One row of the Jacobi vs Gauss-Seidel comparison
struct CompareRow {
    int m = 0;
    int n_jacobi = 0;
    int n_gauss_seidel = 0;
    int ordering_violations = 0;
    double worst_violation = 0.0;
};

struct CompareResult {
    std::vector<CompareRow> rows;
    MarchResult jacobi;
    MarchResult gauss_seidel;
};

/// Run both sweeps in lockstep from the same bracket and the same previous level,
/// checking lower_J <= lower_GS <= upper_GS <= upper_J after every iteration.
/// The Gauss-Seidel solution feeds the next level of both runs.
CompareResult compare_sweeps(const ProblemSpec& problem, const Mesh& mesh, const TimeStepPolicy& policy,
                             const Bracket& bracket);

}  // namespace monoblock
