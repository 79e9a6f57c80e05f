#ifndef qwalk_linsolve_hpp
#define qwalk_linsolve_hpp

#include <optional>
#include <vector>

#include "qwalk/ratfunc.hpp"

namespace qwalk {

// solves A x = rhs over the rational function field by Gaussian elimination;
// underdetermined systems get free variables set to zero, inconsistent
// systems return nullopt
inline std::optional<std::vector<RatFunc>> linsolve(std::vector<std::vector<RatFunc>> a,
                                                    std::vector<RatFunc> rhs) {
    size_t rows = a.size();
    size_t cols = rows ? a[0].size() : 0;
    for (const auto& row : a)
        if (row.size() != cols) fail(Err::BadInput, "ragged matrix");
    if (rhs.size() != rows) fail(Err::BadInput, "rhs size mismatch");

    std::vector<size_t> pivot_of_col(cols, SIZE_MAX);
    size_t rank = 0;
    for (size_t col = 0; col < cols && rank < rows; ++col) {
        size_t sel = SIZE_MAX;
        size_t best = SIZE_MAX;
        for (size_t r = rank; r < rows; ++r) {
            if (a[r][col].is_zero()) continue;
            size_t sz = a[r][col].num().n_terms() + a[r][col].den().n_terms();
            if (sz < best) {
                best = sz;
                sel = r;
            }
        }
        if (sel == SIZE_MAX) continue;
        std::swap(a[sel], a[rank]);
        std::swap(rhs[sel], rhs[rank]);
        RatFunc inv = RatFunc(1) / a[rank][col];
        for (size_t c = col; c < cols; ++c) a[rank][c] *= inv;
        rhs[rank] *= inv;
        for (size_t r = 0; r < rows; ++r) {
            if (r == rank || a[r][col].is_zero()) continue;
            RatFunc f = a[r][col];
            for (size_t c = col; c < cols; ++c) a[r][c] -= f * a[rank][c];
            rhs[r] -= f * rhs[rank];
        }
        pivot_of_col[col] = rank;
        ++rank;
    }
    for (size_t r = rank; r < rows; ++r)
        if (!rhs[r].is_zero()) return std::nullopt;

    std::vector<RatFunc> x(cols);
    for (size_t col = 0; col < cols; ++col)
        if (pivot_of_col[col] != SIZE_MAX) x[col] = rhs[pivot_of_col[col]];
    return x;
}

}

#endif
