#pragma once

// Sparse Gaussian elimination over a prime field F_p with machine-word
// arithmetic. Used as the certified lower-bound half of the rank squeeze in
// homology.hpp: rank over F_p never exceeds rank over Q.

#include <cstdint>
#include <map>
#include <set>
#include <stdexcept>
#include <vector>

#include "symext/sparse_matrix.hpp"

namespace symext::detail {

inline std::int64_t inv_mod(std::int64_t a, std::int64_t p) {
    std::int64_t x0 = 1, x1 = 0, r0 = a % p, r1 = p;
    if (r0 < 0) r0 += p;
    while (r1) {
        std::int64_t q = r0 / r1, t;
        t = r0 - q * r1; r0 = r1; r1 = t;
        t = x0 - q * x1; x0 = x1; x1 = t;
    }
    if (r0 != 1) throw std::domain_error("inv_mod: not invertible");
    x0 %= p;
    if (x0 < 0) x0 += p;
    return x0;
}

inline int rank_mod_p(const SparseIntMatrix& a, std::int64_t p) {
    if (p < 2 || p >= (std::int64_t(1) << 31)) throw std::invalid_argument("rank_mod_p: bad prime");
    const int rows = a.rows, cols = a.cols;
    std::vector<std::map<int, std::int64_t>> w(static_cast<std::size_t>(rows));
    std::vector<std::set<int>> colrows(static_cast<std::size_t>(cols));
    for (int i = 0; i < rows; ++i)
        for (const auto& [j, v] : a.row_data[static_cast<std::size_t>(i)]) {
            std::int64_t r = static_cast<std::int64_t>(v % p);
            if (r < 0) r += p;
            if (r != 0) {
                w[static_cast<std::size_t>(i)].emplace(j, r);
                colrows[static_cast<std::size_t>(j)].insert(i);
            }
        }
    std::vector<char> row_active(static_cast<std::size_t>(rows), 1);
    int rank = 0;
    while (true) {
        // Markowitz-style pivot: smallest (row_nnz-1)*(col_nnz-1)
        int pi = -1, pj = -1;
        std::size_t best = 0;
        bool zero_fill = false;
        for (int i = 0; i < rows && !zero_fill; ++i) {
            if (!row_active[static_cast<std::size_t>(i)] || w[static_cast<std::size_t>(i)].empty())
                continue;
            for (const auto& [j, v] : w[static_cast<std::size_t>(i)]) {
                std::size_t fill = (w[static_cast<std::size_t>(i)].size() - 1) *
                                   (colrows[static_cast<std::size_t>(j)].size() - 1);
                if (pi < 0 || fill < best) { pi = i; pj = j; best = fill; }
                if (best == 0) { zero_fill = true; break; }
            }
        }
        if (pi < 0) break;
        ++rank;
        std::int64_t piv_inv = inv_mod(w[static_cast<std::size_t>(pi)].at(pj), p);
        std::vector<int> members(colrows[static_cast<std::size_t>(pj)].begin(),
                                 colrows[static_cast<std::size_t>(pj)].end());
        for (int i : members) {
            if (i == pi) continue;
            auto& row = w[static_cast<std::size_t>(i)];
            auto it = row.find(pj);
            if (it == row.end()) continue;
            std::int64_t factor = it->second % p * piv_inv % p;  // row_i -= factor * row_pi
            for (const auto& [j, v] : w[static_cast<std::size_t>(pi)]) {
                auto jt = row.find(j);
                std::int64_t nv = ((jt == row.end() ? 0 : jt->second) - factor * v) % p;
                if (nv < 0) nv += p;
                if (nv == 0) {
                    if (jt != row.end()) {
                        row.erase(jt);
                        colrows[static_cast<std::size_t>(j)].erase(i);
                    }
                } else {
                    if (jt == row.end()) {
                        row.emplace(j, nv);
                        colrows[static_cast<std::size_t>(j)].insert(i);
                    } else jt->second = nv;
                }
            }
        }
        // retire the pivot row and column
        for (const auto& [j, v] : w[static_cast<std::size_t>(pi)])
            colrows[static_cast<std::size_t>(j)].erase(pi);
        w[static_cast<std::size_t>(pi)].clear();
        row_active[static_cast<std::size_t>(pi)] = 0;
    }
    return rank;
}

}  // namespace symext::detail
