#include "cornerlab/hull.hpp"

#include <algorithm>
#include <map>
#include <set>

namespace cornerlab::hull {

using model::PureInstance;
using numctx::GroupReal;
using numctx::GroupVector;

AffineHull affine_hull(const PureInstance& inst) {
    numctx::ContextPtr ctx = inst.context();
    size_t tags = ctx ? ctx->tag_count() : 0;
    ratlin::Mat rows;  // [theta | d] rows, one per (tag, coordinate)
    for (size_t i = 0; i < inst.n(); ++i) {
        for (size_t t = 0; t < tags; ++t) {
            ratlin::Vec row;
            bool nonzero = false;
            for (const GroupVector& p : inst.P()) {
                row.push_back(p[i].coeff(t));
                if (row.back() != 0) nonzero = true;
            }
            row.push_back(inst.b()[i].coeff(t));
            if (nonzero || row.back() != 0) rows.push_back(std::move(row));
        }
    }
    AffineHull out;
    if (rows.empty()) return out;
    ratlin::rref(rows);
    size_t cols = inst.p_count();
    for (const ratlin::Vec& row : rows) {
        bool coeff_nonzero = false;
        for (size_t j = 0; j < cols; ++j)
            if (row[j] != 0) coeff_nonzero = true;
        if (coeff_nonzero) {
            out.theta.push_back(ratlin::Vec(row.begin(), row.begin() + cols));
            out.d.push_back(row[cols]);
        } else if (row[cols] != 0) {
            out.b_reachable = false;  // b has a tag component P cannot produce
        }
    }
    return out;
}

namespace {

// Extended integer system for the completion search: columns for y, the
// split integer translation z = z+ - z-, and the homogenization variable.
struct DioSystem {
    size_t ny = 0;
    size_t ncols = 0;  // ny + 2n + 1
    size_t x0 = 0;     // index of the homogenization column
    std::vector<std::vector<Int>> cols;
};

DioSystem build_system(const PureInstance& inst) {
    numctx::ContextPtr ctx = inst.context();
    size_t tags = ctx ? ctx->tag_count() : 0;
    size_t ny = inst.p_count(), n = inst.n();

    ratlin::Mat rows;  // columns: y | z+ | z- | x0
    size_t width = ny + 2 * n + 1;
    auto blank = [&] { return ratlin::Vec(width, Rat(0)); };
    for (size_t i = 0; i < n; ++i) {
        for (size_t t = 0; t < tags; ++t) {
            ratlin::Vec row = blank();
            bool nonzero = false;
            for (size_t j = 0; j < ny; ++j) {
                row[j] = inst.P()[j][i].coeff(t);
                if (row[j] != 0) nonzero = true;
            }
            row[width - 1] = -inst.b()[i].coeff(t);
            if (nonzero || row[width - 1] != 0) rows.push_back(std::move(row));
        }
    }
    for (size_t i = 0; i < n; ++i) {
        ratlin::Vec row = blank();
        for (size_t j = 0; j < ny; ++j) row[j] = inst.P()[j][i].rat();
        row[ny + i] = -1;     // z+
        row[ny + n + i] = 1;  // z-
        row[width - 1] = -inst.b()[i].rat();
        rows.push_back(std::move(row));
    }

    DioSystem sys;
    sys.ny = ny;
    sys.ncols = width;
    sys.x0 = width - 1;
    sys.cols.assign(width, std::vector<Int>(rows.size(), Int(0)));
    for (size_t r = 0; r < rows.size(); ++r) {
        Int scale = common_denominator(rows[r]);
        for (size_t c = 0; c < width; ++c) {
            Rat v = rows[r][c] * Rat(scale);
            sys.cols[c][r] = num(v);
        }
    }
    return sys;
}

using XVec = std::vector<long long>;

bool dominates(const XVec& small, const XVec& big) {
    for (size_t i = 0; i < small.size(); ++i)
        if (small[i] > big[i]) return false;
    return true;
}

/// Keeps the componentwise-minimal elements (an antichain) of a deduped set.
std::vector<YVec> antichain(std::vector<YVec> items) {
    std::sort(items.begin(), items.end());
    items.erase(std::unique(items.begin(), items.end()), items.end());
    std::vector<YVec> kept;
    for (const YVec& y : items) {
        bool dominated = false;
        for (const YVec& other : items) {
            if (&other == &y || other == y) continue;
            if (dominates(other, y)) {
                dominated = true;
                break;
            }
        }
        if (!dominated) kept.push_back(y);
    }
    return kept;
}

}  // namespace

Enumeration enumerate_minimal(const PureInstance& inst, long long degree_cap, long long node_cap) {
    DioSystem sys = build_system(inst);
    size_t nrows = sys.cols.empty() ? 0 : sys.cols[0].size();

    auto defect_of = [&](const XVec& x) {
        std::vector<Int> d(nrows, Int(0));
        for (size_t c = 0; c < sys.ncols; ++c) {
            if (x[c] == 0) continue;
            for (size_t r = 0; r < nrows; ++r) d[r] += Int(x[c]) * sys.cols[c][r];
        }
        return d;
    };
    auto inner = [&](const std::vector<Int>& d, size_t col) {
        Int s = 0;
        for (size_t r = 0; r < nrows; ++r) s += d[r] * sys.cols[col][r];
        return s;
    };

    Enumeration out;
    std::vector<XVec> basis;
    std::set<XVec> frontier;
    for (size_t c = 0; c < sys.ncols; ++c) {
        XVec unit(sys.ncols, 0);
        unit[c] = 1;
        frontier.insert(std::move(unit));
    }

    long long processed = 0;
    bool capped = false;
    for (long long layer = 1; !frontier.empty(); ++layer) {
        if (layer > degree_cap) {
            capped = true;
            break;
        }
        std::vector<std::pair<XVec, std::vector<Int>>> pending;
        for (const XVec& x : frontier) {
            std::vector<Int> d = defect_of(x);
            bool zero = std::all_of(d.begin(), d.end(), [](const Int& v) { return v == 0; });
            if (zero)
                basis.push_back(x);
            else
                pending.emplace_back(x, std::move(d));
        }
        frontier.clear();
        for (const auto& [x, d] : pending) {
            if (++processed > node_cap) {
                capped = true;
                break;
            }
            for (size_t c = 0; c < sys.ncols; ++c) {
                if (c == sys.x0 && x[sys.x0] >= 1) continue;
                if (inner(d, c) >= 0) continue;
                XVec next = x;
                ++next[c];
                bool pruned = false;
                for (const XVec& b : basis) {
                    if (dominates(b, next)) {
                        pruned = true;
                        break;
                    }
                }
                if (!pruned) frontier.insert(std::move(next));
            }
        }
        if (capped) break;
    }
    out.complete = !capped;
    out.nodes = processed;

    std::vector<YVec> points, rays;
    for (const XVec& x : basis) {
        YVec y(x.begin(), x.begin() + sys.ny);
        if (x[sys.x0] == 1) {
            points.push_back(std::move(y));
        } else if (std::any_of(y.begin(), y.end(), [](long long v) { return v != 0; })) {
            rays.push_back(std::move(y));
        }
    }
    out.minimal_points = antichain(std::move(points));
    out.minimal_rays = antichain(std::move(rays));
    return out;
}

CornerPolyhedron corner_polyhedron(const PureInstance& inst, long long degree_cap,
                                   long long node_cap) {
    CornerPolyhedron cp{inst, affine_hull(inst), {}, {}, false};
    Enumeration e = enumerate_minimal(inst, degree_cap, node_cap);
    cp.E = std::move(e.minimal_points);
    cp.rays = std::move(e.minimal_rays);
    cp.complete = e.complete;
    return cp;
}

namespace {

ratlin::Vec to_rat(const YVec& y) {
    ratlin::Vec v;
    v.reserve(y.size());
    for (long long x : y) v.emplace_back(x);
    return v;
}

}  // namespace

RecessionCone recession_cone(const CornerPolyhedron& cp) {
    if (cp.E.empty()) throw InputError("recession cone undefined: the corner polyhedron is empty");
    RecessionCone rc;
    rc.theta = cp.aff.theta;
    for (size_t k = 0; k < cp.rays.size(); ++k) {
        // Extreme iff not a nonnegative combination of the other rays.
        exactlp::LinearProgram lp = exactlp::LinearProgram::with_vars(cp.rays.size() - 1);
        for (size_t p = 0; p < cp.instance.p_count(); ++p) {
            std::vector<Rat> row;
            for (size_t j = 0; j < cp.rays.size(); ++j)
                if (j != k) row.emplace_back(cp.rays[j][p]);
            lp.add_row(std::move(row), exactlp::Sense::Eq, Rat(cp.rays[k][p]));
        }
        if (exactlp::solve_lp(lp).status != exactlp::Status::Optimal)
            rc.generators.push_back(cp.rays[k]);
    }
    return rc;
}

namespace {

size_t generated_dim(const CornerPolyhedron& cp) {
    if (cp.E.empty()) return 0;
    ratlin::Mat span;
    ratlin::Vec base = to_rat(cp.E[0]);
    for (size_t i = 1; i < cp.E.size(); ++i) {
        ratlin::Vec v = to_rat(cp.E[i]);
        for (size_t j = 0; j < v.size(); ++j) v[j] -= base[j];
        span.push_back(std::move(v));
    }
    for (const YVec& r : cp.rays) span.push_back(to_rat(r));
    return ratlin::rank(std::move(span));
}

}  // namespace

RationalityReport rationality_report(const CornerPolyhedron& cp) {
    if (!cp.complete) throw InputError("rationality report requires a complete enumeration");
    if (cp.E.empty()) throw InputError("rationality report undefined: empty corner polyhedron");
    RationalityReport rep;
    rep.p_rational = std::all_of(cp.instance.P().begin(), cp.instance.P().end(),
                                 [](const GroupVector& p) { return p.is_rational(); });
    rep.rec_is_orthant = cp.aff.theta.empty();
    rep.dim = generated_dim(cp);
    rep.full_dimensional = rep.dim == cp.instance.p_count();
    rep.agree =
        (rep.p_rational == rep.rec_is_orthant) && (rep.rec_is_orthant == rep.full_dimensional);
    return rep;
}

namespace {

Membership run_membership(const CornerPolyhedron& cp, const ratlin::Vec& y, bool closure) {
    if (!cp.complete) throw InputError("membership requires a complete corner polyhedron");
    if (y.size() != cp.instance.p_count()) throw InputError("membership query dimension mismatch");

    size_t ne = cp.E.size(), nr = cp.rays.size();
    exactlp::LinearProgram lp = exactlp::LinearProgram::with_vars(ne + nr);
    for (size_t p = 0; p < y.size(); ++p) {
        std::vector<Rat> row;
        for (const YVec& e : cp.E) row.emplace_back(e[p]);
        for (const YVec& r : cp.rays) row.emplace_back(r[p]);
        lp.add_row(std::move(row), closure ? exactlp::Sense::Le : exactlp::Sense::Eq, y[p]);
    }
    {
        std::vector<Rat> row(ne, Rat(1));
        row.resize(ne + nr, Rat(0));
        lp.add_row(std::move(row), exactlp::Sense::Eq, Rat(1));
    }

    exactlp::SolveOutcome out = exactlp::solve_lp(lp);
    Membership m;
    if (out.status == exactlp::Status::Optimal) {
        m.member = true;
        m.point_multipliers.assign(out.solution.begin(), out.solution.begin() + ne);
        m.ray_multipliers.assign(out.solution.begin() + ne, out.solution.end());
        return m;
    }
    if (out.status != exactlp::Status::Infeasible || !out.farkas)
        throw std::logic_error("membership LP must be optimal or infeasible");

    // Farkas row duals give the separating inequality a.y >= c.
    const auto& fk = *out.farkas;
    ratlin::Vec a(y.size());
    for (size_t p = 0; p < y.size(); ++p) a[p] = -fk.row_duals[p];
    Rat c = fk.row_duals[y.size()];
    for (const YVec& e : cp.E)
        if (ratlin::dot(a, to_rat(e)) < c) throw std::logic_error("separator fails a minimal point");
    for (const YVec& r : cp.rays)
        if (ratlin::dot(a, to_rat(r)) < 0) throw std::logic_error("separator fails a ray");
    if (closure)
        for (const Rat& v : a)
            if (v < 0) throw std::logic_error("closure separator must be nonnegative");
    if (ratlin::dot(a, y) >= c) throw std::logic_error("separator does not cut the query point");
    m.member = false;
    m.separator_a = std::move(a);
    m.separator_c = c;
    return m;
}

}  // namespace

Membership member_conv(const CornerPolyhedron& cp, const ratlin::Vec& y) {
    return run_membership(cp, y, false);
}

Membership member_closure(const CornerPolyhedron& cp, const ratlin::Vec& y) {
    return run_membership(cp, y, true);
}

namespace {

struct QuotientBasis {
    ratlin::Mat rows;            // RREF basis of the space parallel to aff
    std::vector<size_t> pivots;  // coords(v)_i = v[pivots[i]]
};

QuotientBasis quotient_basis(const CornerPolyhedron& cp) {
    QuotientBasis qb;
    ratlin::Mat span;
    ratlin::Vec base = to_rat(cp.E.at(0));
    for (size_t i = 1; i < cp.E.size(); ++i) {
        ratlin::Vec v = to_rat(cp.E[i]);
        for (size_t j = 0; j < v.size(); ++j) v[j] -= base[j];
        span.push_back(std::move(v));
    }
    for (const YVec& r : cp.rays) span.push_back(to_rat(r));
    if (span.empty()) return qb;
    qb.pivots = ratlin::rref(span);
    span.resize(qb.pivots.size());
    qb.rows = std::move(span);
    return qb;
}

ratlin::Vec coords_in(const QuotientBasis& qb, const ratlin::Vec& v, bool* inside = nullptr) {
    ratlin::Vec c(qb.rows.size());
    for (size_t i = 0; i < qb.rows.size(); ++i) c[i] = v[qb.pivots[i]];
    if (inside) {
        ratlin::Vec rec(v.size(), Rat(0));
        for (size_t i = 0; i < qb.rows.size(); ++i)
            for (size_t j = 0; j < v.size(); ++j) rec[j] += c[i] * qb.rows[i][j];
        *inside = rec == v;
    }
    return c;
}

ratlin::Vec canonical_primitive(ratlin::Vec v) {
    Int scale = common_denominator(v);
    Int g = 0;
    for (Rat& x : v) {
        x *= Rat(scale);
        g = gcd(g, num(x));
    }
    if (g > 1)
        for (Rat& x : v) x /= Rat(g);
    return v;
}

}  // namespace

std::vector<FacetIneq> facets(const CornerPolyhedron& cp, size_t dim_cap) {
    if (!cp.complete) throw InputError("facets require a complete corner polyhedron");
    if (cp.E.empty()) throw InputError("facets undefined: empty corner polyhedron");
    if (cp.instance.p_count() > dim_cap)
        throw CapExceededError("facet enumeration dimension cap exceeded");

    QuotientBasis qb = quotient_basis(cp);
    size_t dw = qb.rows.size();
    if (dw == 0) return {};

    ratlin::Vec base = to_rat(cp.E[0]);
    ratlin::Mat gens;  // homogenized generators in quotient coordinates
    for (const YVec& e : cp.E) {
        ratlin::Vec diff = to_rat(e);
        for (size_t j = 0; j < diff.size(); ++j) diff[j] -= base[j];
        bool ok = false;
        ratlin::Vec c = coords_in(qb, diff, &ok);
        if (!ok) throw std::logic_error("generator outside its own span");
        c.push_back(Rat(1));
        gens.push_back(std::move(c));
    }
    for (const YVec& r : cp.rays) {
        bool ok = false;
        ratlin::Vec c = coords_in(qb, to_rat(r), &ok);
        if (!ok) throw std::logic_error("ray outside its own span");
        c.push_back(Rat(0));
        gens.push_back(std::move(c));
    }
    if (gens.size() < dw) return {};

    // Candidate facets: normals of hyperplanes spanned by dw generators.
    std::set<ratlin::Vec> normals;
    std::vector<size_t> idx(dw);
    for (size_t i = 0; i < dw; ++i) idx[i] = i;
    auto advance = [&]() {
        size_t k = dw;
        while (k > 0) {
            --k;
            if (++idx[k] <= gens.size() - (dw - k)) {
                for (size_t j = k + 1; j < dw; ++j) idx[j] = idx[j - 1] + 1;
                return true;
            }
        }
        return false;
    };
    do {
        ratlin::Mat sub;
        for (size_t i : idx) sub.push_back(gens[i]);
        ratlin::Mat ker = ratlin::kernel_basis(std::move(sub), dw + 1);
        if (ker.size() != 1) continue;
        ratlin::Vec kappa = ker[0];
        bool pos = false, neg = false;
        for (const ratlin::Vec& g : gens) {
            Rat v = ratlin::dot(kappa, g);
            if (v > 0) pos = true;
            if (v < 0) neg = true;
        }
        if (pos && neg) continue;
        if (neg)
            for (Rat& v : kappa) v = -v;
        bool nontrivial = false;
        for (size_t i = 0; i < dw; ++i)
            if (kappa[i] != 0) nontrivial = true;
        if (!nontrivial) continue;
        ratlin::Mat tight;
        for (const ratlin::Vec& g : gens)
            if (ratlin::dot(kappa, g) == 0) tight.push_back(g);
        if (ratlin::rank(std::move(tight)) != dw) continue;
        normals.insert(canonical_primitive(std::move(kappa)));
    } while (advance());

    std::vector<FacetIneq> out;
    for (const ratlin::Vec& kappa : normals) {
        // kappa . (coords(y - e0), 1) >= 0 pulled back to a . y >= rhs.
        ratlin::Vec a(cp.instance.p_count(), Rat(0));
        for (size_t i = 0; i < dw; ++i) a[qb.pivots[i]] = kappa[i];
        Rat rhs = ratlin::dot(a, base) - kappa[dw];
        if (rhs != 0) {
            Rat scale = abs_rat(rhs);
            for (Rat& v : a) v /= scale;
            rhs /= scale;
        } else {
            a = canonical_primitive(std::move(a));
        }
        out.push_back({std::move(a), rhs});
    }
    std::sort(out.begin(), out.end(), [](const FacetIneq& x, const FacetIneq& y) {
        return x.a < y.a || (x.a == y.a && x.rhs < y.rhs);
    });
    return out;
}

bool in_generated_aff(const CornerPolyhedron& cp, const ratlin::Vec& y) {
    if (cp.E.empty()) return false;
    QuotientBasis qb = quotient_basis(cp);
    ratlin::Vec diff = y;
    ratlin::Vec base = to_rat(cp.E[0]);
    for (size_t j = 0; j < diff.size(); ++j) diff[j] -= base[j];
    if (qb.rows.empty())
        return std::all_of(diff.begin(), diff.end(), [](const Rat& v) { return v == 0; });
    bool inside = false;
    coords_in(qb, diff, &inside);
    return inside;
}

bool check_aff_intersection(const CornerPolyhedron& cp, const std::vector<ratlin::Vec>& samples) {
    for (const ratlin::Vec& y : samples) {
        bool conv = member_conv(cp, y).member;
        bool closure = member_closure(cp, y).member;
        bool aff = in_generated_aff(cp, y);
        if (conv != (closure && aff)) return false;
    }
    return true;
}

}  // namespace cornerlab::hull
