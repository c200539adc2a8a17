#pragma once

// Sparse matrix with arbitrary-precision integer entries, stored row-major
// as column->value maps. No zero entries are ever stored.

#include <cstdint>
#include <map>
#include <stdexcept>
#include <tuple>
#include <vector>

#include "symext/arith.hpp"

namespace symext {

struct SparseIntMatrix {
    int rows = 0;
    int cols = 0;
    std::vector<std::map<int, Int>> row_data;

    SparseIntMatrix() = default;
    SparseIntMatrix(int r, int c) : rows(r), cols(c), row_data(static_cast<std::size_t>(r)) {
        if (r < 0 || c < 0) throw std::invalid_argument("SparseIntMatrix: negative dimension");
    }

    static SparseIntMatrix identity(int n) {
        SparseIntMatrix m(n, n);
        for (int i = 0; i < n; ++i) m.row_data[static_cast<std::size_t>(i)][i] = 1;
        return m;
    }

    void check_index(int r, int c) const {
        if (r < 0 || r >= rows || c < 0 || c >= cols)
            throw std::out_of_range("SparseIntMatrix: index out of range");
    }

    Int get(int r, int c) const {
        check_index(r, c);
        const auto& row = row_data[static_cast<std::size_t>(r)];
        auto it = row.find(c);
        return it == row.end() ? Int(0) : it->second;
    }

    void set(int r, int c, Int v) {
        check_index(r, c);
        auto& row = row_data[static_cast<std::size_t>(r)];
        if (v == 0) row.erase(c);
        else row[c] = std::move(v);
    }

    void add_to(int r, int c, const Int& v) {
        if (v == 0) return;
        check_index(r, c);
        auto& row = row_data[static_cast<std::size_t>(r)];
        auto it = row.find(c);
        if (it == row.end()) row.emplace(c, v);
        else {
            it->second += v;
            if (it->second == 0) row.erase(it);
        }
    }

    std::int64_t nnz() const {
        std::int64_t n = 0;
        for (const auto& row : row_data) n += static_cast<std::int64_t>(row.size());
        return n;
    }

    bool is_zero() const { return nnz() == 0; }

    friend bool operator==(const SparseIntMatrix& a, const SparseIntMatrix& b) {
        return a.rows == b.rows && a.cols == b.cols && a.row_data == b.row_data;
    }

    SparseIntMatrix multiply(const SparseIntMatrix& other) const {
        if (cols != other.rows) throw std::invalid_argument("SparseIntMatrix: dimension mismatch");
        SparseIntMatrix out(rows, other.cols);
        for (int i = 0; i < rows; ++i)
            for (const auto& [j, a] : row_data[static_cast<std::size_t>(i)])
                for (const auto& [l, b] : other.row_data[static_cast<std::size_t>(j)])
                    out.add_to(i, l, a * b);
        return out;
    }

    SparseIntMatrix transposed() const {
        SparseIntMatrix out(cols, rows);
        for (int i = 0; i < rows; ++i)
            for (const auto& [j, v] : row_data[static_cast<std::size_t>(i)])
                out.row_data[static_cast<std::size_t>(j)].emplace(i, v);
        return out;
    }

    // entries normalized into [0, m), zeros dropped
    SparseIntMatrix reduced_mod(const Int& m) const {
        if (m <= 0) throw std::invalid_argument("reduced_mod: modulus must be positive");
        SparseIntMatrix out(rows, cols);
        for (int i = 0; i < rows; ++i)
            for (const auto& [j, v] : row_data[static_cast<std::size_t>(i)]) {
                Int r = v % m;
                if (r < 0) r += m;
                if (r != 0) out.row_data[static_cast<std::size_t>(i)].emplace(j, r);
            }
        return out;
    }

    std::vector<Int> apply(const std::vector<Int>& x) const {
        if (static_cast<int>(x.size()) != cols)
            throw std::invalid_argument("SparseIntMatrix::apply: size mismatch");
        std::vector<Int> y(static_cast<std::size_t>(rows), 0);
        for (int i = 0; i < rows; ++i)
            for (const auto& [j, v] : row_data[static_cast<std::size_t>(i)])
                y[static_cast<std::size_t>(i)] += v * x[static_cast<std::size_t>(j)];
        return y;
    }

    // (row, col, value) in row-major order
    std::vector<std::tuple<int, int, Int>> triplets() const {
        std::vector<std::tuple<int, int, Int>> out;
        for (int i = 0; i < rows; ++i)
            for (const auto& [j, v] : row_data[static_cast<std::size_t>(i)])
                out.emplace_back(i, j, v);
        return out;
    }

    // horizontal concatenation [A | B]
    static SparseIntMatrix hconcat(const SparseIntMatrix& a, const SparseIntMatrix& b) {
        if (a.rows != b.rows) throw std::invalid_argument("hconcat: row mismatch");
        SparseIntMatrix out(a.rows, a.cols + b.cols);
        for (int i = 0; i < a.rows; ++i) {
            out.row_data[static_cast<std::size_t>(i)] = a.row_data[static_cast<std::size_t>(i)];
            for (const auto& [j, v] : b.row_data[static_cast<std::size_t>(i)])
                out.row_data[static_cast<std::size_t>(i)].emplace(a.cols + j, v);
        }
        return out;
    }

    SparseIntMatrix scaled(const Int& s) const {
        SparseIntMatrix out(rows, cols);
        if (s == 0) return out;
        for (int i = 0; i < rows; ++i)
            for (const auto& [j, v] : row_data[static_cast<std::size_t>(i)])
                out.row_data[static_cast<std::size_t>(i)].emplace(j, s * v);
        return out;
    }
};

}  // namespace symext
