#pragma once

#include "cornerlab/exactlp.hpp"
#include "cornerlab/model.hpp"

#include <optional>
#include <vector>

namespace cornerlab::hull {

using YVec = std::vector<long long>;

/// The rational equations Theta y = d cutting out aff(I_b) within the face:
/// one independent row per Q-linear tag relation among the columns.
/// `b_reachable` is false when b has a tag component that no combination of
/// the columns can produce; the face is then empty and the equation system,
/// extended by the impossible row, is inconsistent.
struct AffineHull {
    ratlin::Mat theta;  // rows x |P|, independent, all rows nonzero
    ratlin::Vec d;
    bool b_reachable = true;

    size_t rows() const { return theta.size(); }
};

AffineHull affine_hull(const model::PureInstance& inst);

struct Enumeration {
    std::vector<YVec> minimal_points;
    std::vector<YVec> minimal_rays;
    bool complete = false;
    long long nodes = 0;
};

/// All componentwise-minimal feasible points and minimal rays of the face,
/// by completion over the integer system (tag equations plus residue
/// congruences with explicit integer translations). The search certifies its
/// own completeness by exhausting the frontier; hitting `degree_cap` BFS
/// layers or `node_cap` frontier nodes is reported via `complete = false`,
/// never silently.
Enumeration enumerate_minimal(const model::PureInstance& inst, long long degree_cap = 10000,
                              long long node_cap = 20000000);

struct CornerPolyhedron {
    model::PureInstance instance;
    AffineHull aff;
    std::vector<YVec> E;
    std::vector<YVec> rays;
    bool complete = false;

    bool empty() const { return E.empty(); }
};

CornerPolyhedron corner_polyhedron(const model::PureInstance& inst, long long degree_cap = 10000,
                                   long long node_cap = 20000000);

/// {y >= 0 : theta y = 0} together with the extreme subset of the minimal
/// rays as generators. Undefined (throws) on an empty face.
struct RecessionCone {
    ratlin::Mat theta;
    std::vector<YVec> generators;
};

RecessionCone recession_cone(const CornerPolyhedron& cp);

/// The equivalent rationality conditions: P rational, recession cone equal
/// to the orthant, full dimension. `agree` records that they were checked to
/// coincide; the closure characterization is implied and reported as such.
struct RationalityReport {
    bool p_rational = false;
    bool rec_is_orthant = false;
    bool full_dimensional = false;
    bool agree = false;
    size_t dim = 0;
};

RationalityReport rationality_report(const CornerPolyhedron& cp);

/// Membership outcome with an exact certificate: convex/conic multipliers on
/// the generators, or a separating inequality a.y >= c violated by the query.
struct Membership {
    bool member = false;
    std::vector<Rat> point_multipliers;  // over E, sums to 1
    std::vector<Rat> ray_multipliers;    // over rays (then unit rays for closure)
    ratlin::Vec separator_a;
    Rat separator_c;
};

Membership member_conv(const CornerPolyhedron& cp, const ratlin::Vec& y);
Membership member_closure(const CornerPolyhedron& cp, const ratlin::Vec& y);

/// Facet a.y >= rhs with rhs normalized into {1, 0, -1}; homogeneous facets
/// carry a primitive integer normal. Valid on the face's affine hull.
struct FacetIneq {
    ratlin::Vec a;
    Rat rhs;
};

std::vector<FacetIneq> facets(const CornerPolyhedron& cp, size_t dim_cap = 8);

/// aff(C^P) computed from the generators themselves (base point plus span of
/// E - e0 and the rays); used by the finite membership equivalence check.
bool in_generated_aff(const CornerPolyhedron& cp, const ratlin::Vec& y);

/// For every sample: member_conv(y) iff member_closure(y) and y in aff(C^P).
bool check_aff_intersection(const CornerPolyhedron& cp, const std::vector<ratlin::Vec>& samples);

}  // namespace cornerlab::hull
