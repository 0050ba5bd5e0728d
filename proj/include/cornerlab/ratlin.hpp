#pragma once

#include "cornerlab/rational.hpp"

#include <optional>
#include <vector>

namespace cornerlab::ratlin {

using Vec = std::vector<Rat>;
using Mat = std::vector<Vec>;

inline Rat dot(const Vec& a, const Vec& b) {
    Rat s = 0;
    for (size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

/// In-place reduced row echelon form. Returns the pivot column of each
/// surviving row, in order; zero rows are moved to the bottom.
inline std::vector<size_t> rref(Mat& m) {
    std::vector<size_t> pivots;
    if (m.empty()) return pivots;
    size_t rows = m.size(), cols = m[0].size();
    size_t r = 0;
    for (size_t c = 0; c < cols && r < rows; ++c) {
        size_t sel = r;
        while (sel < rows && m[sel][c] == 0) ++sel;
        if (sel == rows) continue;
        std::swap(m[r], m[sel]);
        Rat inv = m[r][c];
        for (size_t j = c; j < cols; ++j) m[r][j] /= inv;
        for (size_t i = 0; i < rows; ++i) {
            if (i == r || m[i][c] == 0) continue;
            Rat f = m[i][c];
            for (size_t j = c; j < cols; ++j) m[i][j] -= f * m[r][j];
        }
        pivots.push_back(c);
        ++r;
    }
    return pivots;
}

inline size_t rank(Mat m) { return rref(m).size(); }

/// Basis of {x : m x = 0}, one vector per free column, in column order.
/// Each basis vector has entry 1 at its free column.
inline Mat kernel_basis(Mat m, size_t cols) {
    if (m.empty()) m.push_back(Vec(cols, Rat(0)));
    std::vector<size_t> pivots = rref(m);
    std::vector<bool> is_pivot(cols, false);
    for (size_t c : pivots) is_pivot[c] = true;
    Mat basis;
    for (size_t f = 0; f < cols; ++f) {
        if (is_pivot[f]) continue;
        Vec v(cols, Rat(0));
        v[f] = 1;
        for (size_t i = 0; i < pivots.size(); ++i) v[pivots[i]] = -m[i][f];
        basis.push_back(std::move(v));
    }
    return basis;
}

/// One solution of m x = b, or nullopt when inconsistent.
inline std::optional<Vec> solve(Mat m, Vec b) {
    size_t rows = m.size();
    size_t cols = rows == 0 ? 0 : m[0].size();
    for (size_t i = 0; i < rows; ++i) m[i].push_back(b[i]);
    if (m.empty()) return Vec();
    std::vector<size_t> pivots = rref(m);
    for (size_t i = pivots.size(); i < rows; ++i)
        if (m[i][cols] != 0) return std::nullopt;
    if (!pivots.empty() && pivots.back() == cols) return std::nullopt;
    Vec x(cols, Rat(0));
    for (size_t i = 0; i < pivots.size(); ++i) x[pivots[i]] = m[i][cols];
    return x;
}

}  // namespace cornerlab::ratlin
