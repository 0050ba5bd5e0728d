#pragma once

#include "cornerlab/numctx.hpp"

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace cornerlab::gjfun {

using numctx::ContextPtr;
using numctx::GroupReal;

/// Continuous piecewise-linear function on [0,1) with rational breakpoints
/// 0 = x_0 < ... < x_k < 1 and values v_0 ... v_k, the last segment wrapping
/// back to v_0 at 1, extended to all of R with period 1.
class PwlPeriodic {
public:
    PwlPeriodic(std::vector<Rat> breakpoints, std::vector<Rat> values);

    const std::vector<Rat>& breakpoints() const { return xs_; }
    const std::vector<Rat>& values() const { return vs_; }
    size_t segments() const { return xs_.size(); }

    /// Exact value at a rational point (reduced modulo 1).
    Rat operator()(const Rat& x) const;

    /// Slope of segment i; segment k wraps from (x_k, v_k) to (1, v_0).
    Rat slope(size_t i) const;

    Rat max_value() const;
    Rat min_value() const;
    PwlPeriodic scaled(const Rat& c) const;

private:
    std::vector<Rat> xs_, vs_;
};

/// The classical one-dimensional Gomory fractional cut function for b:
/// x/b on [0, b], (1-x)/(1-b) on [b, 1].
PwlPeriodic gmic(const Rat& b);

/// One-dimensional sublinear function psi(r) = s_plus r for r >= 0 and
/// psi(r) = s_minus (-r) for r <= 0. Sublinear iff s_plus + s_minus >= 0.
struct SublinearOneD {
    Rat s_plus;
    Rat s_minus;

    Rat operator()(const Rat& r) const { return r >= 0 ? Rat(s_plus * r) : Rat(s_minus * -r); }
    bool is_sublinear() const { return s_plus + s_minus >= 0; }
    Rat lipschitz() const { return s_plus > s_minus ? s_plus : s_minus; }
    bool operator==(const SublinearOneD& o) const = default;
};

/// Additive shift vanishing on the rationals: theta(x) depends only on the
/// tag coefficients of x, theta(x) = sum_t coeff_t(x) c(tag_t).
struct AdditiveFunction {
    std::map<std::string, Rat> c;

    Rat operator()(const GroupReal& x) const;
    bool operator==(const AdditiveFunction& o) const = default;
};

/// pi = pi0 + theta with pi0 a nonnegative periodic PWL function.
struct ShiftedFunction {
    PwlPeriodic base;
    AdditiveFunction shift;

    ShiftedFunction(PwlPeriodic base_fn, AdditiveFunction shift_fn);
};

/// Exact evaluation: rational arguments give rationals; for irrational
/// arguments the fractional part is located among the breakpoints by
/// enclosure refinement and the result is an exact context value.
GroupReal evaluate(const PwlPeriodic& f, const GroupReal& x);
GroupReal evaluate(const ShiftedFunction& g, const GroupReal& x);

struct SubadditivityResult {
    bool subadditive = false;
    std::optional<std::pair<Rat, Rat>> witness;  // f(u) + f(v) < f(u+v)
};

/// Exact decision via the vertex set of the two-dimensional breakpoint
/// complex: u, v, or u+v on the breakpoint lattice, pairwise intersections.
/// Delta f is affine on each cell, so the minimum is attained at a vertex.
SubadditivityResult check_subadditive(const PwlPeriodic& f);

struct MinimalityReport {
    bool nonnegative = false;
    bool zero_at_zero = false;
    SubadditivityResult subadditivity;
    bool symmetric = false;
    std::optional<Rat> symmetry_witness;  // x with f(x) + f(b-x) != 1

    bool minimal() const {
        return nonnegative && zero_at_zero && subadditivity.subadditive && symmetric;
    }
};

/// Gomory-Johnson minimality of (f, 1) for nonnegative f: subadditivity,
/// f(0) = 0 and the symmetry condition f(x) + f(b-x) = 1, each decided
/// exactly on the finite refinement of the breakpoints.
MinimalityReport check_minimal_pure(const PwlPeriodic& f, const Rat& b);

/// psi(r) = sup_{eps>0} f(eps r)/eps: for subadditive PWL f with f(0) = 0
/// the sup equals the limiting slopes at 0+ and 1-.
SublinearOneD slope_lift(const PwlPeriodic& f);

struct LiftabilityResult {
    MinimalityReport minimality;
    bool liftable = false;
    std::optional<SublinearOneD> psi;
};

/// A minimal continuous PWL function always has finite one-sided slopes at
/// the origin, hence is liftable with psi = slope_lift(f). Discontinuous
/// minimal functions (not representable here) are the ones that fail.
LiftabilityResult check_liftable(const PwlPeriodic& f, const Rat& b);

struct MixedMinimalReport {
    bool subadditive = false;          // (a)
    bool psi_is_slope_lift = false;    // (b)
    bool lipschitz_within = false;     // (c) all slopes within [-L, L]
    bool nonneg_zero_alpha = false;    // (d) f >= 0, f(0) = 0, alpha = 1
    bool symmetric = false;            // (e)
    Rat lipschitz_constant;

    bool minimal() const {
        return subadditive && psi_is_slope_lift && lipschitz_within && nonneg_zero_alpha &&
               symmetric;
    }
};

/// The five-condition characterization of nontrivial minimal mixed tuples
/// (psi, f, alpha), decided exactly for PWL data.
MixedMinimalReport check_mixed_minimal(const SublinearOneD& psi, const PwlPeriodic& f, const Rat& b,
                                       const Rat& alpha);

struct ThetaScan {
    std::string symbol;
    Rat exact;           // the shift coefficient stored in the representation
    GroupReal scan_inf;  // min_{k <= K} pi(k a)/k
    GroupReal scan_sup;  // max_{k <= K} -pi(-k a)/k
    Rat error_bound;     // max(base)/K
    bool sandwich_ok;    // scan_inf >= exact >= scan_sup held at every prefix
};

/// Finite-scan recovery of the additive shift: for every context tag a the
/// scans sandwich the exact coefficient and converge at rate max(base)/K.
std::vector<ThetaScan> extract_theta(const ShiftedFunction& g, const ContextPtr& ctx, long long K);

}  // namespace cornerlab::gjfun
