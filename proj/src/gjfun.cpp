#include "cornerlab/gjfun.hpp"

#include <algorithm>
#include <set>

namespace cornerlab::gjfun {

namespace {

Rat frac(const Rat& x) { return x - Rat(floor_rat(x)); }

}  // namespace

PwlPeriodic::PwlPeriodic(std::vector<Rat> breakpoints, std::vector<Rat> values)
    : xs_(std::move(breakpoints)), vs_(std::move(values)) {
    if (xs_.empty() || xs_.size() != vs_.size())
        throw InputError("breakpoints and values must be nonempty and aligned");
    if (xs_.front() != 0) throw InputError("the first breakpoint must be 0");
    for (size_t i = 0; i + 1 < xs_.size(); ++i)
        if (xs_[i] >= xs_[i + 1]) throw InputError("breakpoints must be strictly increasing");
    if (xs_.back() >= 1) throw InputError("breakpoints must stay below 1");
}

Rat PwlPeriodic::slope(size_t i) const {
    if (i + 1 < xs_.size()) return (vs_[i + 1] - vs_[i]) / (xs_[i + 1] - xs_[i]);
    return (vs_[0] - vs_.back()) / (Rat(1) - xs_.back());
}

Rat PwlPeriodic::operator()(const Rat& x) const {
    Rat r = frac(x);
    size_t i = std::upper_bound(xs_.begin(), xs_.end(), r) - xs_.begin() - 1;
    return vs_[i] + slope(i) * (r - xs_[i]);
}

Rat PwlPeriodic::max_value() const { return *std::max_element(vs_.begin(), vs_.end()); }
Rat PwlPeriodic::min_value() const { return *std::min_element(vs_.begin(), vs_.end()); }

PwlPeriodic PwlPeriodic::scaled(const Rat& c) const {
    std::vector<Rat> vs = vs_;
    for (Rat& v : vs) v *= c;
    return PwlPeriodic(xs_, std::move(vs));
}

PwlPeriodic gmic(const Rat& b) {
    Rat br = frac(b);
    if (br == 0) throw InputError("gmic requires a non-integral b");
    return PwlPeriodic({Rat(0), br}, {Rat(0), Rat(1)});
}

Rat AdditiveFunction::operator()(const GroupReal& x) const {
    Rat v = 0;
    for (const auto& [t, coeff] : x.coeffs()) {
        const std::string& symbol = x.context()->tag(t).symbol;
        auto it = c.find(symbol);
        if (it != c.end()) v += coeff * it->second;
    }
    return v;
}

ShiftedFunction::ShiftedFunction(PwlPeriodic base_fn, AdditiveFunction shift_fn)
    : base(std::move(base_fn)), shift(std::move(shift_fn)) {
    if (base.min_value() < 0) throw InputError("shifted function requires a nonnegative base");
}

GroupReal evaluate(const PwlPeriodic& f, const GroupReal& x) {
    if (x.is_rational()) return GroupReal(f(x.rat()));
    GroupReal r = numctx::fractional_part(x);
    // r is irrational, so it never ties a rational breakpoint.
    const std::vector<Rat>& xs = f.breakpoints();
    size_t i = xs.size() - 1;
    while (i > 0 && numctx::lt(r, GroupReal(xs[i]))) --i;
    return GroupReal(f.values()[i]) + (r - GroupReal(xs[i])).scaled(f.slope(i));
}

GroupReal evaluate(const ShiftedFunction& g, const GroupReal& x) {
    return evaluate(g.base, x) + GroupReal(g.shift(x));
}

SubadditivityResult check_subadditive(const PwlPeriodic& f) {
    const std::vector<Rat>& xs = f.breakpoints();
    std::set<std::pair<Rat, Rat>> vertices;
    for (const Rat& u : xs)
        for (const Rat& v : xs) vertices.emplace(u, v);
    for (const Rat& u : xs)
        for (const Rat& w : xs) vertices.emplace(u, frac(w - u));
    for (const Rat& v : xs)
        for (const Rat& w : xs) vertices.emplace(frac(w - v), v);

    SubadditivityResult res;
    res.subadditive = true;
    for (const auto& [u, v] : vertices) {
        if (f(u) + f(v) < f(u + v)) {
            res.subadditive = false;
            res.witness = {u, v};
            return res;
        }
    }
    return res;
}

namespace {

/// f(x) + f(b - x) - 1 is PWL with breakpoints {x_i} union {b - x_i}; it
/// vanishes identically iff it vanishes at all of them.
std::vector<Rat> symmetry_points(const PwlPeriodic& f, const Rat& b) {
    std::set<Rat> pts;
    for (const Rat& x : f.breakpoints()) {
        pts.insert(x);
        pts.insert(frac(b - x));
    }
    return {pts.begin(), pts.end()};
}

}  // namespace

MinimalityReport check_minimal_pure(const PwlPeriodic& f, const Rat& b) {
    if (frac(b) == 0) throw InputError("b must not be integral");
    MinimalityReport rep;
    rep.nonnegative = f.min_value() >= 0;
    rep.zero_at_zero = f.values()[0] == 0;
    rep.subadditivity = check_subadditive(f);
    rep.symmetric = true;
    for (const Rat& x : symmetry_points(f, b)) {
        if (f(x) + f(b - x) != 1) {
            rep.symmetric = false;
            rep.symmetry_witness = x;
            break;
        }
    }
    return rep;
}

SublinearOneD slope_lift(const PwlPeriodic& f) {
    if (f.values()[0] != 0) throw InputError("slope lift requires f(0) = 0");
    if (f.segments() == 1) return {Rat(0), Rat(0)};
    Rat s_plus = f.slope(0);
    Rat s_minus = -f.slope(f.segments() - 1);
    return {s_plus, s_minus};
}

LiftabilityResult check_liftable(const PwlPeriodic& f, const Rat& b) {
    LiftabilityResult res;
    res.minimality = check_minimal_pure(f, b);
    if (!res.minimality.minimal()) return res;
    // Continuous PWL minimal functions have finite slopes at the origin, so
    // the sup defining psi is finite and the lift always exists.
    res.liftable = true;
    res.psi = slope_lift(f);
    return res;
}

MixedMinimalReport check_mixed_minimal(const SublinearOneD& psi, const PwlPeriodic& f, const Rat& b,
                                       const Rat& alpha) {
    MixedMinimalReport rep;
    MinimalityReport pure = check_minimal_pure(f, b);
    rep.subadditive = pure.subadditivity.subadditive;
    rep.psi_is_slope_lift = pure.zero_at_zero && psi == slope_lift(f);
    rep.lipschitz_constant = psi.lipschitz();
    rep.lipschitz_within = true;
    for (size_t i = 0; i < f.segments(); ++i) {
        Rat s = f.slope(i);
        if (s > rep.lipschitz_constant || s < -rep.lipschitz_constant) rep.lipschitz_within = false;
    }
    rep.nonneg_zero_alpha = pure.nonnegative && pure.zero_at_zero && alpha == 1;
    rep.symmetric = pure.symmetric;
    return rep;
}

std::vector<ThetaScan> extract_theta(const ShiftedFunction& g, const ContextPtr& ctx, long long K) {
    if (K <= 0) throw InputError("scan length K must be positive");
    if (!ctx) throw InputError("theta extraction needs a number context");
    std::vector<ThetaScan> out;
    for (size_t t = 0; t < ctx->tag_count(); ++t) {
        GroupReal a = GroupReal::tag_unit(ctx, t);
        ThetaScan scan;
        scan.symbol = ctx->tag(t).symbol;
        auto it = g.shift.c.find(scan.symbol);
        scan.exact = it == g.shift.c.end() ? Rat(0) : it->second;
        scan.error_bound = g.base.max_value() / Rat(K);
        GroupReal exact_value = GroupReal(scan.exact);
        bool sandwich = true;
        std::optional<GroupReal> inf, sup;
        for (long long k = 1; k <= K; ++k) {
            GroupReal up = evaluate(g, a.scaled(Rat(k))).scaled(Rat(1, k));
            GroupReal down = evaluate(g, a.scaled(Rat(-k))).scaled(Rat(-1, k));
            if (!inf || numctx::lt(up, *inf)) inf = up;
            if (!sup || numctx::lt(*sup, down)) sup = down;
            // Lemma-level sandwich: inf-scan >= exact >= sup-scan at every K.
            sandwich = sandwich && numctx::le(exact_value, *inf) && numctx::le(*sup, exact_value);
        }
        scan.scan_inf = *inf;
        scan.scan_sup = *sup;
        scan.sandwich_ok = sandwich;
        out.push_back(std::move(scan));
    }
    return out;
}

}  // namespace cornerlab::gjfun
