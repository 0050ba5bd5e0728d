#pragma once

#include "cornerlab/ratlin.hpp"
#include "cornerlab/rational.hpp"

#include <compare>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

namespace cornerlab::numctx {

class ContextMismatchError : public std::runtime_error {
public:
    explicit ContextMismatchError(const std::string& what) : std::runtime_error(what) {}
};

/// Raised when enclosure refinement hits the doubling cap without separating
/// the compared values. Soundness over availability: we never guess.
class ComparisonCapError : public std::runtime_error {
public:
    explicit ComparisonCapError(const std::string& what) : std::runtime_error(what) {}
};

/// Produces nested rational enclosures of one real number. Implementations
/// must be monotone: every returned interval contains the value, and
/// narrower requests return intervals inside earlier answers.
class TagOracle {
public:
    virtual ~TagOracle() = default;
    virtual RatInterval enclose(const Rat& width) const = 0;
    /// Sign of the value: -1, 0 or +1 (metadata, used for quick bounds).
    virtual int sign() const = 0;
};

/// Continued-fraction enclosures of sqrt(k) for a square-free integer k >= 2.
/// Consecutive convergents straddle the value, so each step gives a valid
/// interval; refinement is cached behind a mutex and only ever shrinks.
class SqrtOracle final : public TagOracle {
public:
    explicit SqrtOracle(long long k);
    RatInterval enclose(const Rat& width) const override;
    int sign() const override { return 1; }
    long long radicand() const { return k_; }

private:
    void step() const;  // one more continued-fraction convergent

    long long k_;
    Int a0_;
    mutable std::mutex mu_;
    mutable Int m_, d_, a_;          // CF state for sqrt(k)
    mutable Int h_prev_, h_, q_prev_, q_;  // convergents h/q
    mutable RatInterval cur_;
};

struct TagInfo {
    std::string symbol;
    std::string kind;  // currently only "sqrt"
    long long of = 0;
};

/// A finite set of named reals declared Q-linearly independent together with
/// 1. The independence is an axiom of the context, not something we verify:
/// deciding Q-linear independence of arbitrary reals is not computable.
/// In particular multiplicative relations are the caller's responsibility:
/// sqrt2, sqrt3 and sqrt6 must not be declared in one context.
class NumberContext {
public:
    static std::shared_ptr<const NumberContext> make(std::vector<TagInfo> tags);

    size_t tag_count() const { return tags_.size(); }
    const TagInfo& tag(size_t i) const { return tags_.at(i); }
    std::optional<size_t> find(const std::string& symbol) const;
    RatInterval enclose_tag(size_t i, const Rat& width) const { return oracles_.at(i)->enclose(width); }
    int tag_sign(size_t i) const { return oracles_.at(i)->sign(); }

private:
    NumberContext() = default;
    std::vector<TagInfo> tags_;
    std::vector<std::unique_ptr<TagOracle>> oracles_;
};

using ContextPtr = std::shared_ptr<const NumberContext>;

/// Convenience: a context of sqrt tags named "sqrt<k>".
ContextPtr sqrt_context(const std::vector<long long>& radicands);

/// An exact real: rational part plus a finite rational combination of the
/// context's tags, kept in canonical form (no zero coefficients stored).
/// Equality is coefficient-wise, valid by the declared independence.
/// Values are immutable after construction and safe to share across threads.
class GroupReal {
public:
    GroupReal() : rat_(0) {}
    GroupReal(Rat r) : rat_(std::move(r)) {}  // NOLINT: implicit by design
    GroupReal(long long r) : rat_(r) {}       // NOLINT
    static GroupReal tag_unit(ContextPtr ctx, size_t tag_index, const Rat& coeff = Rat(1));

    const Rat& rat() const { return rat_; }
    const std::map<size_t, Rat>& coeffs() const { return coeffs_; }
    const ContextPtr& context() const { return ctx_; }

    bool is_rational() const { return coeffs_.empty(); }
    bool is_integer() const { return coeffs_.empty() && cornerlab::is_integer(rat_); }
    /// The exact rational value; throws unless is_rational().
    const Rat& as_rational() const;
    /// Coefficient of tag i (0 when absent).
    Rat coeff(size_t tag_index) const;

    GroupReal operator+(const GroupReal& o) const;
    GroupReal operator-(const GroupReal& o) const;
    GroupReal operator-() const;
    GroupReal scaled(const Rat& c) const;

    bool operator==(const GroupReal& o) const;
    bool operator!=(const GroupReal& o) const { return !(*this == o); }

    std::string to_string() const;

private:
    friend GroupReal combine(const GroupReal&, const GroupReal&, const Rat&);
    Rat rat_;
    std::map<size_t, Rat> coeffs_;
    ContextPtr ctx_;  // null for plain rationals
};

/// Shared context of two operands; throws on a genuine mismatch.
ContextPtr merged_context(const GroupReal& a, const GroupReal& b);

/// Interval of length <= width containing the exact value. Exact point
/// interval for rationals.
RatInterval enclose(const GroupReal& x, const Rat& width);

/// Exact three-way comparison. Equality is decided on canonical forms; a
/// strict order is decided by refining enclosures of the difference until 0
/// is excluded (sound because distinct values really differ, by the declared
/// independence). Gives up after `max_doublings` refinements.
std::strong_ordering compare(const GroupReal& x, const GroupReal& y, int max_doublings = 64);

inline bool lt(const GroupReal& x, const GroupReal& y) { return compare(x, y) == std::strong_ordering::less; }
inline bool le(const GroupReal& x, const GroupReal& y) { return compare(x, y) != std::strong_ordering::greater; }

/// Exact floor; refines enclosures for irrational values (cap as in compare).
Int floor_of(const GroupReal& x, int max_doublings = 64);

/// x - floor(x), in [0, 1).
GroupReal fractional_part(const GroupReal& x, int max_doublings = 64);

/// Vector of exact reals; all entries share one context.
class GroupVector {
public:
    GroupVector() = default;
    explicit GroupVector(std::vector<GroupReal> entries);

    size_t dim() const { return entries_.size(); }
    const GroupReal& operator[](size_t i) const { return entries_.at(i); }
    const std::vector<GroupReal>& entries() const { return entries_; }
    ContextPtr context() const;

    GroupVector operator+(const GroupVector& o) const;
    GroupVector operator-(const GroupVector& o) const;
    GroupVector scaled(const Rat& c) const;
    bool operator==(const GroupVector& o) const;

    bool is_rational() const;
    /// true iff every entry is an integer rational.
    bool is_integral() const;

    std::string to_string() const;

private:
    std::vector<GroupReal> entries_;
};

/// Exact rational basis of {lambda : sum_i lambda_i vs[i] has empty tag part},
/// i.e. the kernel of the matrix whose i-th column stacks the tag coefficients
/// of the entries of vs[i].
ratlin::Mat qlin_kernel(const std::vector<GroupVector>& vs);

/// Enclosure of the Euclidean norm of v with width <= `width`; exact point
/// interval when the norm is rational.
RatInterval norm_enclosure(const GroupVector& v, const Rat& width);

}  // namespace cornerlab::numctx
