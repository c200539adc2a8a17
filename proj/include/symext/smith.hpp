#pragma once

// Smith normal form of sparse integer matrices, with optional unimodular
// transforms, plus the derived solvers: exact rank, integer linear systems,
// kernel bases, and the order of a vector in the cokernel of a matrix.
//
// The elimination works on a row-map + column-index structure. Pivots are
// chosen to minimize (absolute value, then Markowitz fill estimate); rows
// and columns are never physically moved, a final permutation places the
// pivots on the diagonal. In rank-only mode rows may be divided by their
// content to limit coefficient growth (this changes the invariant factors
// but not the rank, so it is disabled everywhere else).

#include <algorithm>
#include <cstdint>
#include <limits>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <vector>

#include "symext/sparse_matrix.hpp"

namespace symext {

struct SmithForm {
    std::vector<Int> diagonal;  // divisor chain d_1 | d_2 | ... | d_r, positive
    int rank = 0;
    std::optional<SparseIntMatrix> u;  // rows x rows, unimodular
    std::optional<SparseIntMatrix> v;  // cols x cols, unimodular; u*A*v = diag
};

namespace detail {

// quotient minimizing |a - q*b|
inline Int round_div(const Int& a, const Int& b) {
    Int q = a / b;
    Int r = a - q * b;
    if (r != 0 && 2 * abs(r) > abs(b)) q += ((r > 0) == (b > 0)) ? 1 : -1;
    return q;
}

class SmithEngine {
public:
    struct Options {
        bool keep_u = false;
        bool keep_v = false;
        bool rank_only = false;     // allow content division, skip divisor chain
        bool enforce_chain = true;  // d_i | d_{i+1}
    };

    SmithEngine(const SparseIntMatrix& a, Options opt)
        : rows_(a.rows), cols_(a.cols), opt_(opt) {
        if (opt_.rank_only) opt_.enforce_chain = false;
        w_.resize(static_cast<std::size_t>(rows_));
        colrows_.resize(static_cast<std::size_t>(cols_));
        for (int i = 0; i < rows_; ++i) {
            w_[su(i)] = a.row_data[su(i)];
            for (const auto& [j, v] : w_[su(i)]) colrows_[su(j)].insert(i);
        }
        row_active_.assign(static_cast<std::size_t>(rows_), 1);
        col_active_.assign(static_cast<std::size_t>(cols_), 1);
        if (opt_.keep_u) {
            u_.resize(static_cast<std::size_t>(rows_));
            for (int i = 0; i < rows_; ++i) u_[su(i)][i] = 1;
        }
        if (opt_.keep_v) {
            vt_.resize(static_cast<std::size_t>(cols_));
            for (int j = 0; j < cols_; ++j) vt_[su(j)][j] = 1;
        }
    }

    // extra column that undergoes the same row operations (yields U*c)
    void add_carried(std::vector<Int> c) {
        if (static_cast<int>(c.size()) != rows_)
            throw std::invalid_argument("SmithEngine: carried column size mismatch");
        carried_.push_back(std::move(c));
    }

    void run() {
        while (true) {
            auto piv = pick_pivot();
            if (!piv) break;
            int i0 = piv->first, j0 = piv->second;
            if (opt_.rank_only) reduce_row_content(i0);
            isolate(i0, j0);
        }
    }

    int rank() const { return static_cast<int>(diag_.size()); }
    const std::vector<Int>& diagonal() const { return diag_; }

    // final row order: pivot rows first, then remaining rows ascending
    std::vector<int> final_row_order() const {
        std::vector<int> order = piv_row_;
        std::vector<char> used(static_cast<std::size_t>(rows_), 0);
        for (int i : piv_row_) used[su(i)] = 1;
        for (int i = 0; i < rows_; ++i)
            if (!used[su(i)]) order.push_back(i);
        return order;
    }

    std::vector<int> final_col_order() const {
        std::vector<int> order = piv_col_;
        std::vector<char> used(static_cast<std::size_t>(cols_), 0);
        for (int j : piv_col_) used[su(j)] = 1;
        for (int j = 0; j < cols_; ++j)
            if (!used[su(j)]) order.push_back(j);
        return order;
    }

    SparseIntMatrix extract_u() const {
        auto order = final_row_order();
        SparseIntMatrix out(rows_, rows_);
        for (int s = 0; s < rows_; ++s) out.row_data[su(s)] = u_[su(order[su(s)])];
        return out;
    }

    SparseIntMatrix extract_v() const {
        auto order = final_col_order();
        SparseIntMatrix vt(cols_, cols_);
        for (int s = 0; s < cols_; ++s) vt.row_data[su(s)] = vt_[su(order[su(s)])];
        return vt.transposed();
    }

    // row s of V^T in final column order = column s of V
    std::vector<Int> v_column(int s) const {
        auto order = final_col_order();
        std::vector<Int> col(static_cast<std::size_t>(cols_), 0);
        for (const auto& [j, val] : vt_[su(order[su(s)])]) col[su(j)] = val;
        return col;
    }

    std::vector<Int> carried_result(std::size_t idx) const {
        auto order = final_row_order();
        std::vector<Int> out(static_cast<std::size_t>(rows_), 0);
        for (int s = 0; s < rows_; ++s) out[su(s)] = carried_[idx][su(order[su(s)])];
        return out;
    }

private:
    static std::size_t su(int i) { return static_cast<std::size_t>(i); }

    int rows_, cols_;
    Options opt_;
    std::vector<std::map<int, Int>> w_;
    std::vector<std::set<int>> colrows_;
    std::vector<char> row_active_, col_active_;
    std::vector<int> piv_row_, piv_col_;
    std::vector<Int> diag_;
    std::vector<std::map<int, Int>> u_, vt_;
    std::vector<std::vector<Int>> carried_;

    void row_axpy(int dst, int src, const Int& q) {
        if (q == 0) return;
        for (const auto& [c, v] : w_[su(src)]) {
            auto& row = w_[su(dst)];
            auto it = row.find(c);
            if (it == row.end()) {
                row.emplace(c, -q * v);
                colrows_[su(c)].insert(dst);
            } else {
                it->second -= q * v;
                if (it->second == 0) {
                    row.erase(it);
                    colrows_[su(c)].erase(dst);
                }
            }
        }
        if (opt_.keep_u)
            for (const auto& [c, v] : u_[su(src)]) {
                auto it = u_[su(dst)].find(c);
                if (it == u_[su(dst)].end()) u_[su(dst)].emplace(c, -q * v);
                else {
                    it->second -= q * v;
                    if (it->second == 0) u_[su(dst)].erase(it);
                }
            }
        for (auto& c : carried_) c[su(dst)] -= q * c[su(src)];
        if (opt_.rank_only) maybe_reduce_content(dst);
    }

    void row_negate(int i) {
        for (auto& [c, v] : w_[su(i)]) v = -v;
        if (opt_.keep_u)
            for (auto& [c, v] : u_[su(i)]) v = -v;
        for (auto& c : carried_) c[su(i)] = -c[su(i)];
    }

    void col_axpy(int dst, int src, const Int& q) {
        if (q == 0) return;
        std::vector<int> members(colrows_[su(src)].begin(), colrows_[su(src)].end());
        for (int i : members) {
            const Int& v = w_[su(i)].at(src);
            auto& row = w_[su(i)];
            auto it = row.find(dst);
            if (it == row.end()) {
                row.emplace(dst, -q * v);
                colrows_[su(dst)].insert(i);
            } else {
                it->second -= q * v;
                if (it->second == 0) {
                    row.erase(it);
                    colrows_[su(dst)].erase(i);
                }
            }
        }
        if (opt_.keep_v) {
            for (const auto& [c, v] : vt_[su(src)]) {
                auto it = vt_[su(dst)].find(c);
                if (it == vt_[su(dst)].end()) vt_[su(dst)].emplace(c, -q * v);
                else {
                    it->second -= q * v;
                    if (it->second == 0) vt_[su(dst)].erase(it);
                }
            }
        }
    }

    void reduce_row_content(int i) {
        Int g = 0;
        for (const auto& [c, v] : w_[su(i)]) {
            g = gcd(g, v);
            if (g == 1) return;
        }
        if (g > 1)
            for (auto& [c, v] : w_[su(i)]) v /= g;
    }

    void maybe_reduce_content(int i) {
        for (const auto& [c, v] : w_[su(i)])
            if (msb(abs(v)) > 120) { reduce_row_content(i); return; }
    }

    std::optional<std::pair<int, int>> pick_pivot() const {
        std::optional<std::pair<int, int>> best;
        Int best_abs = 0;
        std::size_t best_fill = 0;
        for (int i = 0; i < rows_; ++i) {
            if (!row_active_[su(i)]) continue;
            for (const auto& [j, v] : w_[su(i)]) {
                Int a = abs(v);
                std::size_t fill = (w_[su(i)].size() - 1) * (colrows_[su(j)].size() - 1);
                if (!best || a < best_abs || (a == best_abs && fill < best_fill)) {
                    best = std::make_pair(i, j);
                    best_abs = a;
                    best_fill = fill;
                    if (best_abs == 1 && best_fill == 0) return best;
                }
            }
        }
        return best;
    }

    // reduce until (i0, j0) is the only entry in its row and column; the
    // pivot location may migrate while remainders shrink. The pivot row is
    // cleared first so that the subsequent column clearing works against a
    // singleton row and produces no fill.
    void isolate(int i0, int j0) {
        while (true) {
            Int pivv = w_[su(i0)].at(j0);

            // clear row i0 via column operations
            std::vector<std::pair<int, Int>> row_snapshot;
            for (const auto& [j, v] : w_[su(i0)])
                if (j != j0) row_snapshot.emplace_back(j, v);
            for (const auto& [j, v] : row_snapshot)
                col_axpy(j, j0, round_div(v, pivv));
            // a leftover remainder becomes the new (smaller) pivot
            int best_j = -1;
            Int best_abs = 0;
            for (const auto& [j, v] : w_[su(i0)]) {
                if (j == j0) continue;
                Int a = abs(v);
                if (best_j < 0 || a < best_abs) { best_j = j; best_abs = a; }
            }
            if (best_j >= 0) { j0 = best_j; continue; }

            // clear column j0 via row operations (row i0 is now a singleton)
            std::vector<int> col_members(colrows_[su(j0)].begin(), colrows_[su(j0)].end());
            for (int i : col_members) {
                if (i == i0) continue;
                auto it = w_[su(i)].find(j0);
                if (it == w_[su(i)].end()) continue;
                row_axpy(i, i0, round_div(it->second, pivv));
            }
            int best_i = -1;
            best_abs = 0;
            for (int i : colrows_[su(j0)]) {
                if (i == i0) continue;
                Int a = abs(w_[su(i)].at(j0));
                if (best_i < 0 || a < best_abs) { best_i = i; best_abs = a; }
            }
            if (best_i >= 0) { i0 = best_i; continue; }

            // lone pivot; for the divisor chain every remaining active entry
            // must be divisible by it
            pivv = w_[su(i0)].at(j0);
            if (opt_.enforce_chain) {
                int bad = -1;
                for (int i = 0; i < rows_ && bad < 0; ++i) {
                    if (!row_active_[su(i)] || i == i0) continue;
                    for (const auto& [j, v] : w_[su(i)])
                        if (v % pivv != 0) { bad = i; break; }
                }
                if (bad >= 0) {
                    row_axpy(i0, bad, Int(-1));  // merge offending row into pivot row
                    continue;
                }
            }

            if (pivv < 0) row_negate(i0);
            piv_row_.push_back(i0);
            piv_col_.push_back(j0);
            diag_.push_back(w_[su(i0)].at(j0));
            row_active_[su(i0)] = 0;
            col_active_[su(j0)] = 0;
            return;
        }
    }
};

}  // namespace detail

inline SmithForm smith_normal_form(const SparseIntMatrix& a, bool keep_transforms = false) {
    detail::SmithEngine::Options opt;
    opt.keep_u = opt.keep_v = keep_transforms;
    detail::SmithEngine eng(a, opt);
    eng.run();
    SmithForm out;
    out.diagonal = eng.diagonal();
    out.rank = eng.rank();
    if (keep_transforms) {
        out.u = eng.extract_u();
        out.v = eng.extract_v();
    }
    return out;
}

inline int matrix_rank(const SparseIntMatrix& a) {
    detail::SmithEngine::Options opt;
    opt.rank_only = true;
    detail::SmithEngine eng(a, opt);
    eng.run();
    return eng.rank();
}

// x with A x = b over the integers, if any
inline std::optional<std::vector<Int>> solve_integer_system(const SparseIntMatrix& a,
                                                            const std::vector<Int>& b) {
    if (static_cast<int>(b.size()) != a.rows)
        throw std::invalid_argument("solve_integer_system: size mismatch");
    detail::SmithEngine::Options opt;
    opt.keep_v = true;
    detail::SmithEngine eng(a, opt);
    eng.add_carried(b);
    eng.run();
    const auto& d = eng.diagonal();
    int r = eng.rank();
    std::vector<Int> w = eng.carried_result(0);
    for (int s = r; s < a.rows; ++s)
        if (w[static_cast<std::size_t>(s)] != 0) return std::nullopt;
    std::vector<Int> x(static_cast<std::size_t>(a.cols), 0);
    for (int s = 0; s < r; ++s) {
        const Int& ds = d[static_cast<std::size_t>(s)];
        const Int& ws = w[static_cast<std::size_t>(s)];
        if (ws % ds != 0) return std::nullopt;
        Int ys = ws / ds;
        if (ys == 0) continue;
        auto vcol = eng.v_column(s);
        for (int j = 0; j < a.cols; ++j)
            x[static_cast<std::size_t>(j)] += ys * vcol[static_cast<std::size_t>(j)];
    }
    return x;
}

// columns span ker(A) over Z (a saturated sublattice basis)
inline SparseIntMatrix kernel_basis(const SparseIntMatrix& a) {
    detail::SmithEngine::Options opt;
    opt.keep_v = true;
    detail::SmithEngine eng(a, opt);
    eng.run();
    int r = eng.rank();
    SparseIntMatrix out(a.cols, a.cols - r);
    for (int t = r; t < a.cols; ++t) {
        auto vcol = eng.v_column(t);
        for (int j = 0; j < a.cols; ++j)
            if (vcol[static_cast<std::size_t>(j)] != 0)
                out.set(j, t - r, vcol[static_cast<std::size_t>(j)]);
    }
    return out;
}

// order of b in Z^rows / colspace(A): least t >= 1 with t b in im(A);
// nullopt when no multiple of b lies in the image
inline std::optional<Int> column_space_order(const SparseIntMatrix& a, const std::vector<Int>& b) {
    if (static_cast<int>(b.size()) != a.rows)
        throw std::invalid_argument("column_space_order: size mismatch");
    detail::SmithEngine::Options opt;
    detail::SmithEngine eng(a, opt);
    eng.add_carried(b);
    eng.run();
    const auto& d = eng.diagonal();
    int r = eng.rank();
    std::vector<Int> w = eng.carried_result(0);
    for (int s = r; s < a.rows; ++s)
        if (w[static_cast<std::size_t>(s)] != 0) return std::nullopt;
    Int t = 1;
    for (int s = 0; s < r; ++s) {
        const Int& ds = d[static_cast<std::size_t>(s)];
        Int g = gcd(ds, w[static_cast<std::size_t>(s)]);
        Int need = ds / g;
        t = t / gcd(t, need) * need;  // lcm
    }
    return t;
}

}  // namespace symext
