#include "cornerlab/model.hpp"

namespace cornerlab::model {

namespace {

void require_dim(const GroupVector& v, size_t n, const char* what) {
    if (v.dim() != n) throw InputError(std::string(what) + ": expected dimension " + std::to_string(n));
}

}  // namespace

PureInstance::PureInstance(size_t n, GroupVector b, std::vector<GroupVector> columns)
    : n_(n), b_(std::move(b)), P_(std::move(columns)) {
    if (n_ == 0) throw InputError("instance dimension must be positive");
    require_dim(b_, n_, "b");
    if (b_.is_integral()) throw InputError("b must not be an integer vector");
    for (size_t i = 0; i < P_.size(); ++i) {
        require_dim(P_[i], n_, "P entry");
        for (size_t j = 0; j < i; ++j)
            if (P_[i] == P_[j]) throw InputError("P entries must be distinct");
    }
    context();  // validates shared context
}

numctx::ContextPtr PureInstance::context() const {
    numctx::ContextPtr ctx = b_.context();
    for (const GroupVector& p : P_) {
        numctx::ContextPtr c = p.context();
        if (!c) continue;
        if (ctx && ctx != c) throw numctx::ContextMismatchError("instance vectors from different contexts");
        if (!ctx) ctx = c;
    }
    return ctx;
}

MixedInstance::MixedInstance(PureInstance pure, std::vector<GroupVector> rays)
    : pure_(std::move(pure)), R_(std::move(rays)) {
    for (size_t i = 0; i < R_.size(); ++i) {
        require_dim(R_[i], pure_.n(), "R entry");
        for (size_t j = 0; j < i; ++j)
            if (R_[i] == R_[j]) throw InputError("R entries must be distinct");
    }
}

namespace {

GroupVector weighted_sum(size_t n, const std::vector<GroupVector>& cols, const std::vector<Rat>& w) {
    std::vector<GroupReal> acc(n, GroupReal(Rat(0)));
    for (size_t j = 0; j < cols.size(); ++j) {
        if (w[j] == 0) continue;
        for (size_t i = 0; i < n; ++i) acc[i] = acc[i] + cols[j][i].scaled(w[j]);
    }
    return GroupVector(std::move(acc));
}

std::vector<Rat> to_rats(const std::vector<long long>& y) {
    std::vector<Rat> out;
    out.reserve(y.size());
    for (long long v : y) out.emplace_back(v);
    return out;
}

}  // namespace

bool check_feasible(const PureInstance& inst, const PureSolution& sol) {
    if (sol.y.size() != inst.p_count()) throw InputError("solution index mismatch with P");
    for (long long v : sol.y)
        if (v < 0) throw InputError("y values must be nonnegative");
    GroupVector total = weighted_sum(inst.n(), inst.P(), to_rats(sol.y));
    return (total - inst.b()).is_integral();
}

bool check_feasible(const MixedInstance& inst, const MixedSolution& sol) {
    if (sol.s.size() != inst.R().size() || sol.y.size() != inst.P().size())
        throw InputError("solution index mismatch with (R, P)");
    for (const Rat& v : sol.s)
        if (v < 0) throw InputError("s values must be nonnegative");
    for (long long v : sol.y)
        if (v < 0) throw InputError("y values must be nonnegative");
    GroupVector total =
        weighted_sum(inst.n(), inst.R(), sol.s) + weighted_sum(inst.n(), inst.P(), to_rats(sol.y));
    return (total - inst.b()).is_integral();
}

namespace {

bool is_zero_vector(const GroupVector& v) {
    for (const GroupReal& e : v.entries())
        if (!(e.is_rational() && e.rat() == 0)) return false;
    return true;
}

/// Accumulates |w| * ||col|| terms; the |w(0)| convention of the norm is the
/// weight at the zero column, which contributes with factor 1.
RatInterval norm_terms(const std::vector<GroupVector>& cols, const std::vector<Rat>& w, const Rat& width) {
    RatInterval acc = RatInterval::point(Rat(0));
    size_t terms = 0;
    for (size_t j = 0; j < cols.size(); ++j)
        if (w[j] != 0) ++terms;
    if (terms == 0) return acc;
    Rat per = width / Rat(static_cast<long long>(terms));
    for (size_t j = 0; j < cols.size(); ++j) {
        if (w[j] == 0) continue;
        Rat aw = abs_rat(w[j]);
        if (is_zero_vector(cols[j])) {
            acc = acc + RatInterval::point(aw);
        } else {
            acc = acc + numctx::norm_enclosure(cols[j], per / aw).scaled(aw);
        }
    }
    return acc;
}

}  // namespace

RatInterval star_norm(const MixedInstance& inst, const MixedSolution& sol, const Rat& width) {
    if (width <= 0) throw std::domain_error("width must be positive");
    return norm_terms(inst.R(), sol.s, width / 2) + norm_terms(inst.P(), to_rats(sol.y), width / 2);
}

RatInterval star_norm(const PureInstance& inst, const PureSolution& sol, const Rat& width) {
    if (width <= 0) throw std::domain_error("width must be positive");
    return norm_terms(inst.P(), to_rats(sol.y), width);
}

Rat tuple_violation(const MixedInstance& inst, const TupleRestriction& tup, const MixedSolution& sol) {
    if (!tup.h || tup.h->size() != inst.R().size() || tup.d.size() != inst.P().size())
        throw InputError("tuple index mismatch with (R, P)");
    if (sol.s.size() != inst.R().size() || sol.y.size() != inst.P().size())
        throw InputError("solution index mismatch with (R, P)");
    Rat v = -tup.alpha;
    for (size_t j = 0; j < sol.s.size(); ++j) v += (*tup.h)[j] * sol.s[j];
    for (size_t j = 0; j < sol.y.size(); ++j) v += tup.d[j] * Rat(sol.y[j]);
    return v;
}

Rat tuple_violation(const PureInstance& inst, const TupleRestriction& tup, const PureSolution& sol) {
    if (tup.d.size() != inst.p_count() || sol.y.size() != inst.p_count())
        throw InputError("tuple/solution index mismatch with P");
    Rat v = -tup.alpha;
    for (size_t j = 0; j < sol.y.size(); ++j) v += tup.d[j] * Rat(sol.y[j]);
    return v;
}

}  // namespace cornerlab::model
