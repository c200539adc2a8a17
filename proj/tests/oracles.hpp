#pragma once

// Independent oracles used to freeze expected values. These deliberately
// avoid the library's implementation paths: binomials come from the Pascal
// triangle, valuations from trial division, and the Smith-form oracle is a
// plain dense textbook reduction with no pivot heuristics.

#include <map>
#include <random>
#include <vector>

#include "symext/arith.hpp"
#include "symext/sparse_matrix.hpp"

namespace oracles {

using symext::Int;

inline Int pascal_binomial(int n, int r) {
    if (r < 0 || r > n) return 0;
    std::vector<Int> row{1};
    for (int i = 1; i <= n; ++i) {
        std::vector<Int> next(static_cast<std::size_t>(i) + 1, 1);
        for (int j = 1; j < i; ++j)
            next[static_cast<std::size_t>(j)] = row[static_cast<std::size_t>(j - 1)] +
                                                row[static_cast<std::size_t>(j)];
        row = std::move(next);
    }
    return row[static_cast<std::size_t>(r)];
}

inline int trial_division_valuation(std::int64_t p, Int n) {
    int e = 0;
    n = abs(n);
    while (n != 0 && n % p == 0) { n /= p; ++e; }
    return e;
}

inline std::vector<std::int64_t> base_p_digits(std::int64_t p, std::int64_t n) {
    std::vector<std::int64_t> digits;
    while (n > 0) { digits.push_back(n % p); n /= p; }
    return digits;
}

// plain dense Smith reduction: repeatedly move the smallest nonzero entry to
// the corner, clear its row and column, fix divisibility, recurse
inline std::vector<Int> dense_smith_diagonal(std::vector<std::vector<Int>> a) {
    const int rows = static_cast<int>(a.size());
    const int cols = rows ? static_cast<int>(a[0].size()) : 0;
    std::vector<Int> diag;
    int top = 0;
    while (top < rows && top < cols) {
        int pi = -1, pj = -1;
        for (int i = top; i < rows; ++i)
            for (int j = top; j < cols; ++j)
                if (a[i][j] != 0 &&
                    (pi < 0 || abs(a[i][j]) < abs(a[pi][pj]))) { pi = i; pj = j; }
        if (pi < 0) break;
        std::swap(a[top], a[pi]);
        for (int i = top; i < rows; ++i) std::swap(a[i][top], a[i][pj]);
        bool clean = true;
        for (int i = top + 1; i < rows; ++i) {
            if (a[i][top] == 0) continue;
            Int q = a[i][top] / a[top][top];
            for (int j = top; j < cols; ++j) a[i][j] -= q * a[top][j];
            if (a[i][top] != 0) clean = false;
        }
        for (int j = top + 1; j < cols; ++j) {
            if (a[top][j] == 0) continue;
            Int q = a[top][j] / a[top][top];
            for (int i = top; i < rows; ++i) a[i][j] -= q * a[i][top];
            if (a[top][j] != 0) clean = false;
        }
        if (!clean) continue;
        // divisibility of the rest by the pivot
        int bi = -1, bj = -1;
        for (int i = top + 1; i < rows && bi < 0; ++i)
            for (int j = top + 1; j < cols; ++j)
                if (a[i][j] % a[top][top] != 0) { bi = i; bj = j; break; }
        if (bi >= 0) {
            for (int j = top; j < cols; ++j) a[top][j] += a[bi][j];
            continue;
        }
        diag.push_back(abs(a[top][top]));
        ++top;
    }
    return diag;
}

inline std::vector<std::vector<Int>> to_dense(const symext::SparseIntMatrix& m) {
    std::vector<std::vector<Int>> out(static_cast<std::size_t>(m.rows),
                                      std::vector<Int>(static_cast<std::size_t>(m.cols), 0));
    for (const auto& [r, c, v] : m.triplets()) out[static_cast<std::size_t>(r)][static_cast<std::size_t>(c)] = v;
    return out;
}

inline symext::SparseIntMatrix random_sparse(std::mt19937_64& rng, int max_dim, double density,
                                             int max_abs) {
    std::uniform_int_distribution<int> dim(1, max_dim);
    std::uniform_int_distribution<int> entry(-max_abs, max_abs);
    std::uniform_real_distribution<double> coin(0.0, 1.0);
    int rows = dim(rng), cols = dim(rng);
    symext::SparseIntMatrix m(rows, cols);
    for (int i = 0; i < rows; ++i)
        for (int j = 0; j < cols; ++j)
            if (coin(rng) < density) {
                int v = entry(rng);
                if (v != 0) m.set(i, j, v);
            }
    return m;
}

}  // namespace oracles
