#pragma once

#include "cornerlab/ratlin.hpp"
#include "cornerlab/rational.hpp"

#include <optional>
#include <vector>

namespace cornerlab::exactlp {

enum class Sense { Eq, Le, Ge };

struct Row {
    std::vector<Rat> coeffs;
    Sense sense = Sense::Eq;
    Rat rhs;
};

/// min objective . x  subject to rows and per-variable bounds.
/// Lower bounds default to 0; nullopt means the side is unbounded.
struct LinearProgram {
    std::vector<Rat> objective;
    std::vector<Row> rows;
    std::vector<std::optional<Rat>> lower;
    std::vector<std::optional<Rat>> upper;

    static LinearProgram with_vars(size_t n) {
        LinearProgram lp;
        lp.objective.assign(n, Rat(0));
        lp.lower.assign(n, Rat(0));
        lp.upper.assign(n, std::nullopt);
        return lp;
    }
    size_t num_vars() const { return objective.size(); }
    void add_row(std::vector<Rat> coeffs, Sense sense, Rat rhs) {
        rows.push_back({std::move(coeffs), sense, std::move(rhs)});
    }
};

enum class Status { Optimal, Infeasible, Unbounded, CapExceeded };

/// Optimality evidence: row multipliers y (>= 0 on Ge rows, <= 0 on Le rows,
/// free on Eq rows) and bound multipliers with
///   c_j - sum_i y_i a_ij - mu_lower_j - mu_upper_j = 0 for every j,
/// complementary slackness, and objective equality.
struct DualCertificate {
    std::vector<Rat> row_duals;
    std::vector<Rat> lower_duals;  // >= 0, zero where no lower bound
    std::vector<Rat> upper_duals;  // <= 0, zero where no upper bound
};

/// Infeasibility evidence: same shape and signs, but the aggregated
/// combination yields 0 >= positive:
///   sum_i y_i a_ij + mu_lower_j + mu_upper_j = 0 for every j, and
///   sum_i y_i rhs_i + sum_j mu_lower_j lb_j + sum_j mu_upper_j ub_j > 0.
struct FarkasCertificate {
    std::vector<Rat> row_duals;
    std::vector<Rat> lower_duals;
    std::vector<Rat> upper_duals;
};

/// Unboundedness evidence: a feasible point and an improving feasible ray.
struct RayCertificate {
    std::vector<Rat> point;
    std::vector<Rat> direction;
};

struct SolveOutcome {
    Status status = Status::Infeasible;
    Rat objective;
    std::vector<Rat> solution;
    std::optional<DualCertificate> dual;
    std::optional<FarkasCertificate> farkas;
    std::optional<RayCertificate> ray;
    // Branch-and-bound bookkeeping.
    long long nodes_processed = 0;
    std::optional<Rat> best_bound;  // proven lower bound on the optimum
};

/// Exact primal simplex (two phases, Bland's rule, dense rational tableau).
/// Every returned outcome carries a certificate that has been re-verified
/// against the input; a verification failure is a bug and throws.
SolveOutcome solve_lp(const LinearProgram& lp);

struct MipProblem {
    LinearProgram lp;
    std::vector<bool> integral;
};

/// Exact branch and bound over solve_lp. Deterministic: best-first on the
/// node bound with FIFO tie-break, branching on the lowest-index fractional
/// integer variable. Exceeding node_cap is a reported status, never a silent
/// approximation. An unbounded node relaxation is reported as Unbounded with
/// the relaxation ray.
SolveOutcome solve_mip(const MipProblem& mip, long long node_cap = 1000000);

/// Periodicity reduction for congruence-style group-feasibility models: the
/// caller asserts that shifting any listed variable by q preserves
/// feasibility (its column times q is integral and enters only congruences);
/// minimizing a nonnegative objective then loses nothing by restricting the
/// variable to {0, ..., q-1}. Only valid for such models, hence opt-in.
/// Validates lb = 0, integrality of the scaled column and a nonnegative
/// objective coefficient for every listed variable.
void box_periodic_columns(MipProblem& mip, const std::vector<size_t>& vars, const Int& q);

bool is_feasible(const LinearProgram& lp, const std::vector<Rat>& x);
void verify_optimal(const LinearProgram& lp, const SolveOutcome& out);
void verify_farkas(const LinearProgram& lp, const FarkasCertificate& cert);
void verify_ray(const LinearProgram& lp, const RayCertificate& cert);

}  // namespace cornerlab::exactlp
