#pragma once

// Basis combinatorics for the cochain complex: degree-k basis vectors are
// strictly increasing k-tuples in the open interval (0, d), ordered
// lexicographically. That order is the canonical row/column indexing for
// every matrix in the project.

#include <algorithm>
#include <compare>
#include <cstdint>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "symext/arith.hpp"

namespace symext {

struct BasisElement {
    int d = 0;                 // ambient degree parameter
    std::vector<int> entries;  // strictly increasing, all in (0, d)

    BasisElement() = default;
    BasisElement(int d_, std::vector<int> e) : d(d_), entries(std::move(e)) { validate(); }

    int k() const { return static_cast<int>(entries.size()); }

    void validate() const {
        int prev = 0;
        for (int v : entries) {
            if (v <= prev || v >= d)
                throw std::invalid_argument("BasisElement: entries must be strictly increasing in (0, d)");
            prev = v;
        }
    }

    std::string to_string() const {
        std::ostringstream os;
        os << '<';
        for (std::size_t i = 0; i < entries.size(); ++i) {
            if (i) os << ' ';
            os << entries[i];
        }
        os << '>';
        return os.str();
    }

    friend bool operator==(const BasisElement& a, const BasisElement& b) {
        return a.d == b.d && a.entries == b.entries;
    }
    friend std::strong_ordering operator<=>(const BasisElement& a, const BasisElement& b) {
        if (auto c = a.d <=> b.d; c != 0) return c;
        if (auto c = a.entries.size() <=> b.entries.size(); c != 0) return c;
        return a.entries <=> b.entries;
    }
};

namespace detail {
// C(n, r) in 64 bits; throws on overflow (jobs that large are refused upstream)
inline std::int64_t binomial_i64(std::int64_t n, std::int64_t r) {
    if (r < 0 || r > n) return 0;
    Int v = binomial(n, r);
    if (v > std::numeric_limits<std::int64_t>::max())
        throw std::overflow_error("basis index does not fit in 64 bits");
    return static_cast<std::int64_t>(v);
}
}  // namespace detail

// all strictly increasing k-tuples in (0, d), lexicographic; C(d-1, k) of them
inline std::vector<BasisElement> enumerate_basis(int d, int k) {
    if (d < 1) throw std::invalid_argument("enumerate_basis: need d >= 1");
    if (k < 0) throw std::invalid_argument("enumerate_basis: need k >= 0");
    std::vector<BasisElement> out;
    if (k > d - 1) return out;  // empty when k >= d
    std::vector<int> cur(static_cast<std::size_t>(k));
    // iterative k-subset enumeration of {1, ..., d-1}
    for (int i = 0; i < k; ++i) cur[static_cast<std::size_t>(i)] = i + 1;
    while (true) {
        out.emplace_back(d, cur);
        int i = k - 1;
        while (i >= 0 && cur[static_cast<std::size_t>(i)] == d - 1 - (k - 1 - i)) --i;
        if (i < 0) break;
        ++cur[static_cast<std::size_t>(i)];
        for (int j = i + 1; j < k; ++j)
            cur[static_cast<std::size_t>(j)] = cur[static_cast<std::size_t>(j - 1)] + 1;
    }
    if (k == 0) { out.clear(); out.emplace_back(d, std::vector<int>{}); }
    return out;
}

// position of elem in enumerate_basis(d, k), via combinatorial ranking
inline std::int64_t basis_index(const BasisElement& elem) {
    elem.validate();
    const int d = elem.d, k = elem.k();
    std::int64_t idx = 0;
    int prev = 0;
    for (int i = 0; i < k; ++i) {
        int e = elem.entries[static_cast<std::size_t>(i)];
        for (int v = prev + 1; v < e; ++v)
            idx += detail::binomial_i64(d - 1 - v, k - 1 - i);
        prev = e;
    }
    return idx;
}

inline std::int64_t basis_rank(int d, int k) { return detail::binomial_i64(d - 1, k); }

// the basis element on {1, ..., d-1} \ marks
inline BasisElement complement_element(int d, const std::vector<int>& marks) {
    std::vector<bool> used(static_cast<std::size_t>(d), false);
    for (int m : marks) {
        if (m <= 0 || m >= d) throw std::invalid_argument("complement_element: mark out of range");
        if (used[static_cast<std::size_t>(m)]) throw std::invalid_argument("complement_element: repeated mark");
        used[static_cast<std::size_t>(m)] = true;
    }
    std::vector<int> rest;
    for (int v = 1; v < d; ++v)
        if (!used[static_cast<std::size_t>(v)]) rest.push_back(v);
    return BasisElement(d, std::move(rest));
}

}  // namespace symext
