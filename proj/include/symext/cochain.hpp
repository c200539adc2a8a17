#pragma once

// Sparse cochains: a degree plus a map from basis elements to coefficients.
// Coefficients are exact integers, or residues when working mod p^N.
// Canonical text form: `coeff*<n1 n2 ...>` terms joined by " + " in basis
// order (used by the CLI dump and golden tests).

#include <map>
#include <sstream>
#include <stdexcept>
#include <string>

#include "symext/basis.hpp"

namespace symext {

template <class Coeff>
struct BasicCochain {
    int d = 0;
    int k = 0;
    std::map<BasisElement, Coeff> coeffs;  // zero coefficients are not stored

    BasicCochain() = default;
    BasicCochain(int d_, int k_) : d(d_), k(k_) {}

    void add(const BasisElement& e, const Coeff& c) {
        if (e.d != d || e.k() != k)
            throw std::invalid_argument("Cochain::add: element does not match (d, k)");
        auto it = coeffs.find(e);
        if (it == coeffs.end()) {
            if (!is_zero(c)) coeffs.emplace(e, c);
        } else {
            it->second = it->second + c;
            if (is_zero(it->second)) coeffs.erase(it);
        }
    }

    bool is_zero_cochain() const { return coeffs.empty(); }

    friend bool operator==(const BasicCochain& a, const BasicCochain& b) {
        return a.d == b.d && a.k == b.k && a.coeffs == b.coeffs;
    }

    friend BasicCochain operator+(const BasicCochain& a, const BasicCochain& b) {
        if (a.d != b.d || a.k != b.k) throw std::invalid_argument("cochain degree mismatch");
        BasicCochain out = a;
        for (const auto& [e, c] : b.coeffs) out.add(e, c);
        return out;
    }

    friend BasicCochain operator-(const BasicCochain& a, const BasicCochain& b) {
        if (a.d != b.d || a.k != b.k) throw std::invalid_argument("cochain degree mismatch");
        BasicCochain out = a;
        for (const auto& [e, c] : b.coeffs) out.add(e, negate(c));
        return out;
    }

    std::string to_string() const {
        if (coeffs.empty()) return "0";
        std::ostringstream os;
        bool first = true;
        for (const auto& [e, c] : coeffs) {
            if (!first) os << " + ";
            os << coeff_str(c) << '*' << e.to_string();
            first = false;
        }
        return os.str();
    }

private:
    static bool is_zero(const Int& c) { return c == 0; }
    static bool is_zero(const Residue& c) { return c.value == 0; }
    static Int negate(const Int& c) { return -c; }
    static Residue negate(const Residue& c) { return Residue(-c.value, c.modulus); }
    static std::string coeff_str(const Int& c) { return c.str(); }
    static std::string coeff_str(const Residue& c) { return std::to_string(c.value); }
};

using Cochain = BasicCochain<Int>;
using ModCochain = BasicCochain<Residue>;

// scalar multiple
inline Cochain operator*(const Int& s, const Cochain& z) {
    Cochain out(z.d, z.k);
    if (s == 0) return out;
    for (const auto& [e, c] : z.coeffs) out.coeffs.emplace(e, s * c);
    return out;
}

}  // namespace symext
