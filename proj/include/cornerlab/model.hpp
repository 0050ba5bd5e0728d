#pragma once

#include "cornerlab/numctx.hpp"

#include <optional>
#include <vector>

namespace cornerlab::model {

using numctx::GroupReal;
using numctx::GroupVector;

/// The data (n, b, P) of a finite canonical face of the pure integer group
/// relaxation: nonnegative integer combinations of the columns in P that land
/// in b + Z^n. Enforced at construction: b is not an integer vector, the
/// columns are distinct and everything shares one number context.
class PureInstance {
public:
    PureInstance(size_t n, GroupVector b, std::vector<GroupVector> columns);

    size_t n() const { return n_; }
    const GroupVector& b() const { return b_; }
    const std::vector<GroupVector>& P() const { return P_; }
    size_t p_count() const { return P_.size(); }
    numctx::ContextPtr context() const;

private:
    size_t n_;
    GroupVector b_;
    std::vector<GroupVector> P_;
};

/// Mixed counterpart: adds continuous columns R.
class MixedInstance {
public:
    MixedInstance(PureInstance pure, std::vector<GroupVector> rays);

    const PureInstance& pure() const { return pure_; }
    size_t n() const { return pure_.n(); }
    const GroupVector& b() const { return pure_.b(); }
    const std::vector<GroupVector>& P() const { return pure_.P(); }
    const std::vector<GroupVector>& R() const { return R_; }

private:
    PureInstance pure_;
    std::vector<GroupVector> R_;
};

/// y indexed by the instance's P; finite support is structural.
struct PureSolution {
    std::vector<long long> y;
};

/// (s, y) indexed by (R, P). s-values are rational so that every certificate
/// stays exact.
struct MixedSolution {
    std::vector<Rat> s;
    std::vector<long long> y;
};

/// Restriction of a tuple (psi, pi, alpha) to the face: h on R (absent in the
/// pure case), d on P, and the right-hand side alpha.
struct TupleRestriction {
    std::optional<std::vector<Rat>> h;
    std::vector<Rat> d;
    Rat alpha;
};

/// true iff sum_r r s(r) + sum_p p y(p) - b is an integer vector.
bool check_feasible(const PureInstance& inst, const PureSolution& sol);
bool check_feasible(const MixedInstance& inst, const MixedSolution& sol);

/// Enclosure of |s(0)| + sum ||r|| |s(r)| + |y(0)| + sum ||p|| |y(p)| of
/// width <= `width`; exact when every Euclidean norm involved is rational.
RatInterval star_norm(const MixedInstance& inst, const MixedSolution& sol, const Rat& width);
RatInterval star_norm(const PureInstance& inst, const PureSolution& sol, const Rat& width);

/// Exact value of sum h s + sum d y - alpha.
Rat tuple_violation(const MixedInstance& inst, const TupleRestriction& tup, const MixedSolution& sol);
Rat tuple_violation(const PureInstance& inst, const TupleRestriction& tup, const PureSolution& sol);

}  // namespace cornerlab::model
