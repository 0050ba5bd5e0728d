#include "cornerlab/numctx.hpp"

#include <algorithm>
#include <set>

namespace cornerlab::numctx {

namespace {

bool is_square_free(long long k) {
    for (long long p = 2; p * p <= k; ++p) {
        if (k % (p * p) == 0) return false;
        while (k % p == 0) k /= p;
    }
    return true;
}

}  // namespace

SqrtOracle::SqrtOracle(long long k) : k_(k) {
    if (k < 2) throw InputError("sqrt tag radicand must be >= 2");
    if (!is_square_free(k)) throw InputError("sqrt tag radicand must be square-free: " + std::to_string(k));
    a0_ = sqrt(Int(k));
    // CF state after the leading term a0: value = a0 + 1/(...)
    m_ = a0_;
    d_ = Int(k) - a0_ * a0_;
    a_ = (a0_ + m_) / d_;
    h_prev_ = 1;
    h_ = a0_;
    q_prev_ = 0;
    q_ = 1;
    cur_ = RatInterval(Rat(a0_), Rat(a0_ + 1));
}

void SqrtOracle::step() const {
    Int h_next = a_ * h_ + h_prev_;
    Int q_next = a_ * q_ + q_prev_;
    h_prev_ = h_;
    h_ = h_next;
    q_prev_ = q_;
    q_ = q_next;
    m_ = d_ * a_ - m_;
    d_ = (Int(k_) - m_ * m_) / d_;
    a_ = (a0_ + m_) / d_;
    // Consecutive convergents straddle the value.
    Rat c1(h_prev_, q_prev_), c2(h_, q_);
    RatInterval next = c1 <= c2 ? RatInterval(c1, c2) : RatInterval(c2, c1);
    if (cur_.contains(next)) cur_ = next;
}

RatInterval SqrtOracle::enclose(const Rat& width) const {
    if (width <= 0) throw std::domain_error("enclosure width must be positive");
    std::lock_guard<std::mutex> lock(mu_);
    while (cur_.width() > width) step();
    return cur_;
}

std::shared_ptr<const NumberContext> NumberContext::make(std::vector<TagInfo> tags) {
    auto ctx = std::shared_ptr<NumberContext>(new NumberContext());
    std::set<std::string> seen;
    for (const TagInfo& t : tags) {
        if (!seen.insert(t.symbol).second) throw InputError("duplicate tag symbol: " + t.symbol);
        if (t.kind != "sqrt") throw InputError("unknown tag kind: " + t.kind);
        ctx->oracles_.push_back(std::make_unique<SqrtOracle>(t.of));
    }
    ctx->tags_ = std::move(tags);
    return ctx;
}

std::optional<size_t> NumberContext::find(const std::string& symbol) const {
    for (size_t i = 0; i < tags_.size(); ++i)
        if (tags_[i].symbol == symbol) return i;
    return std::nullopt;
}

ContextPtr sqrt_context(const std::vector<long long>& radicands) {
    std::vector<TagInfo> tags;
    for (long long k : radicands) tags.push_back({"sqrt" + std::to_string(k), "sqrt", k});
    return NumberContext::make(std::move(tags));
}

GroupReal GroupReal::tag_unit(ContextPtr ctx, size_t tag_index, const Rat& coeff) {
    if (!ctx || tag_index >= ctx->tag_count()) throw InputError("tag index out of range");
    GroupReal x;
    x.ctx_ = std::move(ctx);
    if (coeff != 0) x.coeffs_[tag_index] = coeff;
    return x;
}

const Rat& GroupReal::as_rational() const {
    if (!is_rational()) throw std::logic_error("value is not rational: " + to_string());
    return rat_;
}

Rat GroupReal::coeff(size_t tag_index) const {
    auto it = coeffs_.find(tag_index);
    return it == coeffs_.end() ? Rat(0) : it->second;
}

ContextPtr merged_context(const GroupReal& a, const GroupReal& b) {
    if (a.context() && b.context() && a.context() != b.context())
        throw ContextMismatchError("operands belong to different number contexts");
    return a.context() ? a.context() : b.context();
}

GroupReal combine(const GroupReal& a, const GroupReal& b, const Rat& sign) {
    GroupReal out;
    out.ctx_ = merged_context(a, b);
    out.rat_ = a.rat_ + sign * b.rat_;
    out.coeffs_ = a.coeffs_;
    for (const auto& [t, c] : b.coeffs_) {
        Rat v = sign * c;
        if (out.coeffs_.count(t)) v += out.coeffs_[t];
        if (v == 0)
            out.coeffs_.erase(t);
        else
            out.coeffs_[t] = v;
    }
    return out;
}

GroupReal GroupReal::operator+(const GroupReal& o) const { return combine(*this, o, Rat(1)); }
GroupReal GroupReal::operator-(const GroupReal& o) const { return combine(*this, o, Rat(-1)); }

GroupReal GroupReal::operator-() const { return scaled(Rat(-1)); }

GroupReal GroupReal::scaled(const Rat& c) const {
    GroupReal out;
    out.ctx_ = ctx_;
    if (c == 0) return out;
    out.rat_ = rat_ * c;
    for (const auto& [t, v] : coeffs_) out.coeffs_[t] = v * c;
    return out;
}

bool GroupReal::operator==(const GroupReal& o) const {
    merged_context(*this, o);  // reject cross-context comparisons
    return rat_ == o.rat_ && coeffs_ == o.coeffs_;
}

std::string GroupReal::to_string() const {
    std::string s = format_rat(rat_);
    for (const auto& [t, c] : coeffs_) {
        std::string sym = ctx_ ? ctx_->tag(t).symbol : "tag" + std::to_string(t);
        s += (c < 0 ? " - " : " + ") + format_rat(abs_rat(c)) + "*" + sym;
    }
    return s;
}

RatInterval enclose(const GroupReal& x, const Rat& width) {
    if (width <= 0) throw std::domain_error("enclosure width must be positive");
    if (x.is_rational()) return RatInterval::point(x.rat());
    Rat per_tag = width / Rat(static_cast<long long>(x.coeffs().size()));
    RatInterval acc = RatInterval::point(x.rat());
    for (const auto& [t, c] : x.coeffs()) {
        Rat w = per_tag / abs_rat(c);
        acc = acc + x.context()->enclose_tag(t, w).scaled(c);
    }
    return acc;
}

std::strong_ordering compare(const GroupReal& x, const GroupReal& y, int max_doublings) {
    if (x == y) return std::strong_ordering::equal;
    GroupReal diff = x - y;
    if (diff.is_rational()) return diff.rat() < 0 ? std::strong_ordering::less : std::strong_ordering::greater;
    Rat width(1);
    for (int i = 0; i <= max_doublings; ++i) {
        RatInterval iv = enclose(diff, width);
        if (iv.excludes_zero()) return iv.lo > 0 ? std::strong_ordering::greater : std::strong_ordering::less;
        width /= 2;
    }
    throw ComparisonCapError("compare: values not separated after " + std::to_string(max_doublings) +
                             " refinements of " + diff.to_string());
}

Int floor_of(const GroupReal& x, int max_doublings) {
    if (x.is_rational()) return floor_rat(x.rat());
    Rat width(1);
    for (int i = 0; i <= max_doublings; ++i) {
        RatInterval iv = enclose(x, width);
        Int flo = floor_rat(iv.lo), fhi = floor_rat(iv.hi);
        if (flo == fhi) return flo;
        width /= 2;
    }
    throw ComparisonCapError("floor: value not separated from an integer: " + x.to_string());
}

GroupReal fractional_part(const GroupReal& x, int max_doublings) {
    return x - GroupReal(Rat(floor_of(x, max_doublings)));
}

GroupVector::GroupVector(std::vector<GroupReal> entries) : entries_(std::move(entries)) {
    context();  // validates that entries agree
}

ContextPtr GroupVector::context() const {
    ContextPtr ctx;
    for (const GroupReal& e : entries_) {
        if (!e.context()) continue;
        if (ctx && ctx != e.context()) throw ContextMismatchError("vector entries from different contexts");
        ctx = e.context();
    }
    return ctx;
}

GroupVector GroupVector::operator+(const GroupVector& o) const {
    if (dim() != o.dim()) throw std::logic_error("vector dimension mismatch");
    std::vector<GroupReal> out;
    for (size_t i = 0; i < dim(); ++i) out.push_back(entries_[i] + o.entries_[i]);
    return GroupVector(std::move(out));
}

GroupVector GroupVector::operator-(const GroupVector& o) const {
    if (dim() != o.dim()) throw std::logic_error("vector dimension mismatch");
    std::vector<GroupReal> out;
    for (size_t i = 0; i < dim(); ++i) out.push_back(entries_[i] - o.entries_[i]);
    return GroupVector(std::move(out));
}

GroupVector GroupVector::scaled(const Rat& c) const {
    std::vector<GroupReal> out;
    for (const GroupReal& e : entries_) out.push_back(e.scaled(c));
    return GroupVector(std::move(out));
}

bool GroupVector::operator==(const GroupVector& o) const {
    if (dim() != o.dim()) return false;
    for (size_t i = 0; i < dim(); ++i)
        if (entries_[i] != o.entries_[i]) return false;
    return true;
}

bool GroupVector::is_rational() const {
    return std::all_of(entries_.begin(), entries_.end(), [](const GroupReal& e) { return e.is_rational(); });
}

bool GroupVector::is_integral() const {
    return std::all_of(entries_.begin(), entries_.end(), [](const GroupReal& e) { return e.is_integer(); });
}

std::string GroupVector::to_string() const {
    std::string s = "(";
    for (size_t i = 0; i < entries_.size(); ++i) s += (i ? ", " : "") + entries_[i].to_string();
    return s + ")";
}

ratlin::Mat qlin_kernel(const std::vector<GroupVector>& vs) {
    ContextPtr ctx;
    for (const GroupVector& v : vs) {
        ContextPtr c = v.context();
        if (!c) continue;
        if (ctx && ctx != c) throw ContextMismatchError("qlin_kernel: mixed contexts");
        ctx = c;
    }
    size_t tags = ctx ? ctx->tag_count() : 0;
    size_t n = vs.empty() ? 0 : vs[0].dim();
    ratlin::Mat m;  // one row per (coordinate, tag); columns indexed by vs
    for (size_t i = 0; i < n; ++i) {
        for (size_t t = 0; t < tags; ++t) {
            ratlin::Vec row;
            for (const GroupVector& v : vs) row.push_back(v[i].coeff(t));
            m.push_back(std::move(row));
        }
    }
    return ratlin::kernel_basis(std::move(m), vs.size());
}

RatInterval norm_enclosure(const GroupVector& v, const Rat& width) {
    if (width <= 0) throw std::domain_error("enclosure width must be positive");
    if (v.is_rational()) {
        Rat s = 0;
        for (const GroupReal& e : v.entries()) s += e.rat() * e.rat();
        return sqrt_enclosure(s, width);
    }
    Rat w = width;
    for (;;) {
        RatInterval sq = RatInterval::point(Rat(0));
        for (const GroupReal& e : v.entries()) sq = sq + enclose(e, w).squared();
        RatInterval lo = sqrt_enclosure(sq.lo, w), hi = sqrt_enclosure(sq.hi, w);
        RatInterval out(lo.lo, hi.hi);
        if (out.width() <= width) return out;
        w /= 2;
    }
}

}  // namespace cornerlab::numctx
