#pragma once

// Brute-force oracles for the enumeration modules. Deliberately independent
// of the production search: plain bounded enumeration plus the exact
// feasibility predicate from the model layer.

#include "cornerlab/model.hpp"

#include <random>
#include <vector>

namespace oracle {

using cornerlab::Int;
using cornerlab::Rat;
using cornerlab::model::PureInstance;
using cornerlab::model::PureSolution;
using cornerlab::numctx::GroupReal;
using cornerlab::numctx::GroupVector;
using YVec = std::vector<long long>;

inline bool dominated_by_other(const std::vector<YVec>& all, const YVec& y) {
    for (const YVec& o : all) {
        if (o == y) continue;
        bool le = true;
        for (size_t i = 0; i < y.size(); ++i)
            if (o[i] > y[i]) le = false;
        if (le) return true;
    }
    return false;
}

inline std::vector<YVec> keep_minimal(std::vector<YVec> all) {
    std::vector<YVec> out;
    for (const YVec& y : all)
        if (!dominated_by_other(all, y)) out.push_back(y);
    return out;
}

inline void enumerate_rec(size_t k, long long left, YVec& cur, std::vector<YVec>& out) {
    if (k == cur.size()) {
        out.push_back(cur);
        return;
    }
    for (long long v = 0; v <= left; ++v) {
        cur[k] = v;
        enumerate_rec(k + 1, left - v, cur, out);
    }
    cur[k] = 0;
}

/// All y >= 0 with sum(y) <= bound, in lexicographic order.
inline std::vector<YVec> all_up_to(size_t dims, long long bound) {
    std::vector<YVec> out;
    YVec cur(dims, 0);
    enumerate_rec(0, bound, cur, out);
    return out;
}

/// sum_p p d(p) is an integer vector (the ray condition), d nonzero.
inline bool is_ray(const PureInstance& inst, const YVec& d) {
    bool nonzero = false;
    for (long long v : d) nonzero |= v != 0;
    if (!nonzero) return false;
    for (size_t i = 0; i < inst.n(); ++i) {
        GroupReal acc = GroupReal(Rat(0));
        for (size_t j = 0; j < inst.p_count(); ++j) acc = acc + inst.P()[j][i].scaled(Rat(d[j]));
        if (!acc.is_integer()) return false;
    }
    return true;
}

struct BruteSets {
    std::vector<YVec> feasible;  // all feasible y with sum <= bound
    std::vector<YVec> minimal_points;
    std::vector<YVec> minimal_rays;
};

inline BruteSets brute_force(const PureInstance& inst, long long bound) {
    BruteSets bs;
    std::vector<YVec> rays;
    for (const YVec& y : all_up_to(inst.p_count(), bound)) {
        if (cornerlab::model::check_feasible(inst, PureSolution{y})) bs.feasible.push_back(y);
        if (is_ray(inst, y)) rays.push_back(y);
    }
    bs.minimal_points = keep_minimal(bs.feasible);
    bs.minimal_rays = keep_minimal(rays);
    return bs;
}

/// Degree bound sum(y) <= q^n certifying completeness for rational data.
inline long long degree_bound(const PureInstance& inst) {
    std::vector<Rat> parts;
    for (const GroupVector& p : inst.P())
        for (const GroupReal& e : p.entries()) parts.push_back(e.rat());
    for (const GroupReal& e : inst.b().entries()) parts.push_back(e.rat());
    Int q = cornerlab::common_denominator(parts);
    Int bound = 1;
    for (size_t i = 0; i < inst.n(); ++i) bound *= q;
    return static_cast<long long>(bound);
}

// --- deterministic random rational instances ---------------------------------

struct InstanceParams {
    size_t max_n = 2;
    size_t max_p = 4;
    long long max_den = 7;
    bool include_b_in_p = false;
};

inline PureInstance random_rational_instance(std::mt19937& rng, const InstanceParams& params) {
    std::uniform_int_distribution<size_t> ndist(1, params.max_n);
    std::uniform_int_distribution<long long> dendist(2, params.max_den);
    for (;;) {
        size_t n = ndist(rng);
        std::uniform_int_distribution<size_t> pdist(1, params.max_p);
        size_t np = pdist(rng);
        auto rand_vec = [&](bool nonzero_frac) {
            std::vector<GroupReal> entries;
            bool frac = false;
            for (size_t i = 0; i < n; ++i) {
                long long d = dendist(rng);
                std::uniform_int_distribution<long long> numdist(0, d - 1);
                long long num = numdist(rng);
                frac |= num != 0;
                entries.emplace_back(Rat(num, d));
            }
            if (nonzero_frac && !frac) entries[0] = GroupReal(Rat(1, dendist(rng)));
            return GroupVector(std::move(entries));
        };
        GroupVector b = rand_vec(true);
        std::vector<GroupVector> P;
        if (params.include_b_in_p) P.push_back(b);
        int attempts = 0;
        while (P.size() < np && attempts++ < 64) {
            GroupVector cand = rand_vec(false);
            bool dup = false, zero = true;
            for (const GroupVector& p : P) dup |= p == cand;
            for (const GroupReal& e : cand.entries()) zero &= e.rat() == 0;
            if (!dup && !zero) P.push_back(cand);
        }
        if (P.empty()) continue;
        return PureInstance(n, b, P);
    }
}

}  // namespace oracle
