#pragma once

// Finitely generated abelian groups in invariant-factor normal form
// (free rank + divisor chain), with tensor and Tor, and the two renderings
// used by the output layer: prime-power form ("Z/2 + Z/5") and divisor-chain
// form ("Z/10").

#include <algorithm>
#include <cstdint>
#include <map>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "symext/arith.hpp"

namespace symext {

struct AbelianGroup {
    std::int64_t rank = 0;
    std::vector<Int> torsion;  // divisor chain, each >= 2, d_i | d_{i+1}

    AbelianGroup() = default;
    explicit AbelianGroup(std::int64_t r) : rank(r) {}

    // canonicalize an arbitrary list of cyclic orders into a divisor chain
    static AbelianGroup from_cyclic_orders(std::int64_t r, const std::vector<Int>& orders) {
        // split each order into prime powers, bucket exponents per prime
        std::map<Int, std::vector<int>> exps;  // prime -> exponents, one per cyclic piece
        for (Int n : orders) {
            if (n < 1) throw std::invalid_argument("AbelianGroup: cyclic order must be positive");
            if (n == 1) continue;
            for (Int p = 2; p * p <= n; ++p) {
                if (n % p != 0) continue;
                int e = 0;
                while (n % p == 0) { n /= p; ++e; }
                exps[p].push_back(e);
            }
            if (n > 1) exps[n].push_back(1);
        }
        std::size_t pieces = 0;
        for (auto& [p, es] : exps) {
            std::sort(es.begin(), es.end(), std::greater<int>());
            pieces = std::max(pieces, es.size());
        }
        // chain entry i (counting from the largest) collects the i-th largest
        // exponent of every prime
        std::vector<Int> chain(pieces, 1);
        for (const auto& [p, es] : exps)
            for (std::size_t i = 0; i < es.size(); ++i) {
                Int pw = 1;
                for (int t = 0; t < es[i]; ++t) pw *= p;
                chain[i] *= pw;
            }
        std::reverse(chain.begin(), chain.end());
        AbelianGroup g(r);
        g.torsion = std::move(chain);
        return g;
    }

    bool is_trivial() const { return rank == 0 && torsion.empty(); }

    Int torsion_order() const {
        Int o = 1;
        for (const Int& t : torsion) o *= t;
        return o;
    }

    // cyclic prime-power pieces, ascending
    std::vector<Int> prime_power_pieces() const {
        std::vector<Int> out;
        for (Int n : torsion) {
            for (Int p = 2; p * p <= n; ++p) {
                if (n % p != 0) continue;
                Int pw = 1;
                while (n % p == 0) { n /= p; pw *= p; }
                out.push_back(pw);
            }
            if (n > 1) out.push_back(n);
        }
        std::sort(out.begin(), out.end());
        return out;
    }

    friend bool operator==(const AbelianGroup& a, const AbelianGroup& b) {
        return a.rank == b.rank && a.torsion == b.torsion;
    }

    friend AbelianGroup operator+(const AbelianGroup& a, const AbelianGroup& b) {  // direct sum
        std::vector<Int> orders = a.torsion;
        orders.insert(orders.end(), b.torsion.begin(), b.torsion.end());
        return from_cyclic_orders(a.rank + b.rank, orders);
    }

    std::string to_string_prime_power() const { return render(prime_power_pieces()); }
    std::string to_string_divisor_chain() const { return render(torsion); }

private:
    std::string render(const std::vector<Int>& pieces) const {
        if (rank == 0 && pieces.empty()) return "0";
        std::ostringstream os;
        bool first = true;
        if (rank == 1) { os << "Z"; first = false; }
        else if (rank > 1) { os << "Z^" << rank; first = false; }
        for (const Int& t : pieces) {
            if (!first) os << " + ";
            os << "Z/" << t;
            first = false;
        }
        return os.str();
    }
};

inline AbelianGroup group_tensor(const AbelianGroup& a, const AbelianGroup& b) {
    std::vector<Int> orders;
    // Z^rA (x) B and A (x) Z^rB contribute copies of the torsion
    for (std::int64_t i = 0; i < a.rank; ++i)
        orders.insert(orders.end(), b.torsion.begin(), b.torsion.end());
    for (std::int64_t i = 0; i < b.rank; ++i)
        orders.insert(orders.end(), a.torsion.begin(), a.torsion.end());
    for (const Int& m : a.torsion)
        for (const Int& n : b.torsion) orders.push_back(gcd(m, n));
    return AbelianGroup::from_cyclic_orders(a.rank * b.rank, orders);
}

inline AbelianGroup group_tor(const AbelianGroup& a, const AbelianGroup& b) {
    std::vector<Int> orders;
    for (const Int& m : a.torsion)
        for (const Int& n : b.torsion) orders.push_back(gcd(m, n));
    return AbelianGroup::from_cyclic_orders(0, orders);
}

// finitely supported map degree -> group; unsupported degrees are zero
struct GradedGroup {
    std::map<int, AbelianGroup> parts;

    AbelianGroup at(int degree) const {
        auto it = parts.find(degree);
        return it == parts.end() ? AbelianGroup() : it->second;
    }

    void set(int degree, AbelianGroup g) {
        if (g.is_trivial()) parts.erase(degree);
        else parts[degree] = std::move(g);
    }

    void add(int degree, const AbelianGroup& g) { set(degree, at(degree) + g); }

    friend bool operator==(const GradedGroup& a, const GradedGroup& b) { return a.parts == b.parts; }

    std::string to_string() const {
        if (parts.empty()) return "0";
        std::ostringstream os;
        bool first = true;
        for (const auto& [deg, g] : parts) {
            if (!first) os << "; ";
            os << deg << ": " << g.to_string_prime_power();
            first = false;
        }
        return os.str();
    }
};

}  // namespace symext
