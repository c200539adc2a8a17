#pragma once

// Binomial and p-adic arithmetic: valuations, digit sums, p-factors of
// binomial coefficients, the unit products F_p / F~_{p,N} behind the
// prime-power congruence for binomial cofactors, and the classification
// predicates (prime powers, A(p), B(p), J_d) used by the verifiers.
//
// Everything here is exact integer arithmetic; no floating point.

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace symext {

using Int = boost::multiprecision::cpp_int;

// ---------------------------------------------------------------------------
// primes (desk scale, trial division)

inline bool is_prime(std::int64_t n) {
    if (n < 2) return false;
    for (std::int64_t q = 2; q * q <= n; ++q)
        if (n % q == 0) return false;
    return true;
}

inline void require_prime(std::int64_t p) {
    if (!is_prime(p)) throw std::invalid_argument("expected a prime, got " + std::to_string(p));
}

inline std::vector<std::int64_t> primes_up_to(std::int64_t n) {
    std::vector<std::int64_t> out;
    if (n < 2) return out;
    std::vector<bool> sieve(static_cast<std::size_t>(n) + 1, true);
    for (std::int64_t i = 2; i <= n; ++i) {
        if (!sieve[static_cast<std::size_t>(i)]) continue;
        out.push_back(i);
        for (std::int64_t j = i * i; j <= n; j += i) sieve[static_cast<std::size_t>(j)] = false;
    }
    return out;
}

// ---------------------------------------------------------------------------
// domain types

struct PrimePower {
    std::int64_t p = 0;  // prime
    int l = 0;           // exponent >= 1

    std::int64_t value() const {
        std::int64_t v = 1;
        for (int i = 0; i < l; ++i) v *= p;
        return v;
    }
};

// An element of Z/m, normalized into [0, m). Moduli here are prime powers
// small enough for 64-bit arithmetic (desk scale).
struct Residue {
    std::int64_t value = 0;
    std::int64_t modulus = 1;

    Residue() = default;
    Residue(std::int64_t v, std::int64_t m) : modulus(m) {
        if (m <= 0) throw std::invalid_argument("Residue modulus must be positive");
        value = v % m;
        if (value < 0) value += m;
    }

    static Residue from(const Int& v, std::int64_t m) {
        if (m <= 0) throw std::invalid_argument("Residue modulus must be positive");
        Int r = v % m;
        if (r < 0) r += m;
        return Residue(static_cast<std::int64_t>(r), m);
    }

    bool is_unit() const {
        std::int64_t a = value, b = modulus;
        while (b) { std::int64_t t = a % b; a = b; b = t; }
        return a == 1;
    }

    Residue inverse() const {
        // extended Euclid; throws when not a unit
        std::int64_t a = value, m = modulus;
        std::int64_t x0 = 1, x1 = 0, r0 = a, r1 = m;
        while (r1) {
            std::int64_t q = r0 / r1;
            std::int64_t t = r0 - q * r1; r0 = r1; r1 = t;
            t = x0 - q * x1; x0 = x1; x1 = t;
        }
        if (r0 != 1) throw std::domain_error("Residue::inverse: not a unit");
        return Residue(x0, modulus);
    }

    friend Residue operator+(const Residue& a, const Residue& b) {
        if (a.modulus != b.modulus) throw std::invalid_argument("Residue modulus mismatch");
        return Residue(a.value + b.value, a.modulus);
    }
    friend Residue operator-(const Residue& a, const Residue& b) {
        if (a.modulus != b.modulus) throw std::invalid_argument("Residue modulus mismatch");
        return Residue(a.value - b.value, a.modulus);
    }
    friend Residue operator*(const Residue& a, const Residue& b) {
        if (a.modulus != b.modulus) throw std::invalid_argument("Residue modulus mismatch");
        return Residue(a.value * b.value, a.modulus);
    }
    friend bool operator==(const Residue& a, const Residue& b) {
        return a.modulus == b.modulus && a.value == b.value;
    }
};

// base-p digits, least significant first
struct DigitExpansion {
    std::int64_t p = 2;
    std::vector<std::int64_t> digits;

    static DigitExpansion of(std::int64_t n, std::int64_t p) {
        require_prime(p);
        if (n < 0) throw std::invalid_argument("DigitExpansion: negative input");
        DigitExpansion e;
        e.p = p;
        while (n > 0) { e.digits.push_back(n % p); n /= p; }
        return e;
    }

    std::int64_t digit(std::size_t k) const { return k < digits.size() ? digits[k] : 0; }

    std::int64_t value() const {
        std::int64_t v = 0;
        for (std::size_t k = digits.size(); k-- > 0;) v = v * p + digits[k];
        return v;
    }
};

// ---------------------------------------------------------------------------
// valuations and binomials

// largest e with p^e | n; rejects n = 0 (infinite valuation)
inline int valuation(std::int64_t p, const Int& n) {
    require_prime(p);
    if (n == 0) throw std::domain_error("valuation: v_p(0) is infinite");
    Int m = abs(n);
    int e = 0;
    while (m % p == 0) { m /= p; ++e; }
    return e;
}

inline std::int64_t digit_sum(std::int64_t p, std::int64_t n) {
    require_prime(p);
    if (n < 0) throw std::invalid_argument("digit_sum: negative input");
    std::int64_t s = 0;
    while (n > 0) { s += n % p; n /= p; }
    return s;
}

// exact C(n, r); 0 when r > n. Multiplicative form, division is exact at
// every step.
inline Int binomial(std::int64_t n, std::int64_t r) {
    if (n < 0 || r < 0) throw std::invalid_argument("binomial: negative argument");
    if (r > n) return 0;
    if (r > n - r) r = n - r;
    Int acc = 1;
    for (std::int64_t i = 1; i <= r; ++i) {
        acc *= (n - r + i);
        acc /= i;
    }
    return acc;
}

// v_p(C(n,r)) by the digit-sum formula (S_p(r) + S_p(n-r) - S_p(n)) / (p-1)
inline std::int64_t kummer_valuation(std::int64_t p, std::int64_t n, std::int64_t r) {
    require_prime(p);
    if (r < 0 || r > n) throw std::invalid_argument("kummer_valuation: need 0 <= r <= n");
    std::int64_t num = digit_sum(p, r) + digit_sum(p, n - r) - digit_sum(p, n);
    return num / (p - 1);
}

// p^{v_p(C(n,r))}, the exact power of p dividing C(n,r)
inline Int p_factor(std::int64_t p, std::int64_t n, std::int64_t r) {
    std::int64_t v = kummer_valuation(p, n, r);
    Int out = 1;
    for (std::int64_t i = 0; i < v; ++i) out *= p;
    return out;
}

// min over 0<k<d of v_p(C(d,k)); 0 for d = 1
inline std::int64_t mu(std::int64_t p, std::int64_t d) {
    require_prime(p);
    if (d < 1) throw std::invalid_argument("mu: need d >= 1");
    if (d == 1) return 0;
    std::int64_t best = -1;
    for (std::int64_t k = 1; k < d; ++k) {
        std::int64_t v = kummer_valuation(p, d, k);
        if (best < 0 || v < best) best = v;
        if (best == 0) break;
    }
    return best;
}

// min of v_p(C(d,k)) + v_p(C(k,r)) over 0<r<k<d with exactly one of k, r
// divisible by p; 0 when no such pair exists
inline std::int64_t theta(std::int64_t p, std::int64_t d) {
    require_prime(p);
    if (d < 2) throw std::invalid_argument("theta: need d >= 2");
    std::int64_t best = -1;
    for (std::int64_t k = 1; k < d; ++k) {
        for (std::int64_t r = 1; r < k; ++r) {
            bool kp = (k % p == 0), rp = (r % p == 0);
            if (kp == rp) continue;
            std::int64_t v = kummer_valuation(p, d, k) + kummer_valuation(p, k, r);
            if (best < 0 || v < best) best = v;
            if (best == 0) return 0;
        }
    }
    return best < 0 ? 0 : best;
}

// gcd{C(d,k) : 0<k<d}
inline Int binomial_row_gcd(std::int64_t d) {
    if (d < 2) throw std::invalid_argument("binomial_row_gcd: need d >= 2");
    Int g = 0, c = 1;
    for (std::int64_t k = 1; k < d; ++k) {
        c = c * (d - k + 1) / k;  // C(d,k) row-iterative, divisions exact
        g = gcd(g, c);
        if (g == 1) break;
    }
    return g;
}

// F_p(m): product of positive integers <= m coprime to p; F_p(0) = 1
inline Int odd_part_product(std::int64_t p, std::int64_t m) {
    require_prime(p);
    if (m < 0) throw std::invalid_argument("odd_part_product: negative input");
    Int acc = 1;
    for (std::int64_t i = 1; i <= m; ++i)
        if (i % p != 0) acc *= i;
    return acc;
}

namespace detail {
// F_p(m) mod m0, avoiding the big exact product
inline std::int64_t f_p_mod(std::int64_t p, std::int64_t m, std::int64_t m0) {
    std::int64_t acc = 1 % m0;
    for (std::int64_t i = 1; i <= m; ++i)
        if (i % p != 0) acc = (acc * (i % m0)) % m0;
    return acc;
}
}  // namespace detail

// F~_{p,N}(n) mod p^N: (s)^{alpha_{p,N}(n)} * prod_j F_p(tau^(N)_j(n)) where
// tau^(N)_j(n) = sum_{k<N} n_{k+j} p^k and alpha_{p,N}(n) = sum_{j>=N} floor(n/p^j).
// The sign base s is +1 exactly when p = 2 and N >= 3, else -1.
inline Residue tilde_f(std::int64_t p, int N, std::int64_t n) {
    require_prime(p);
    if (N < 1) throw std::invalid_argument("tilde_f: need N >= 1");
    if (n < 0) throw std::invalid_argument("tilde_f: negative input");
    std::int64_t mod = 1;
    for (int i = 0; i < N; ++i) mod *= p;

    auto e = DigitExpansion::of(n, p);
    std::int64_t acc = 1 % mod;
    for (std::size_t j = 0; j < std::max<std::size_t>(e.digits.size(), 1); ++j) {
        std::int64_t tau = 0, pw = 1;
        for (int k = 0; k < N; ++k) { tau += e.digit(j + static_cast<std::size_t>(k)) * pw; pw *= p; }
        acc = (acc * detail::f_p_mod(p, tau, mod)) % mod;
    }

    std::int64_t alpha = 0;
    std::int64_t q = n;
    for (int j = 0; j < N; ++j) q /= p;
    while (q > 0) { alpha += q; q /= p; }

    bool plus_sign = (p == 2 && N >= 3);
    if (!plus_sign && (alpha % 2 != 0)) acc = (mod - acc) % mod;
    return Residue(acc, mod);
}

// self-test of tilde_f: the p-coprime cofactor of C(n,r) agrees with
// F~(n) / (F~(r) F~(n-r)) mod p^N
inline bool granville_check(std::int64_t p, int N, std::int64_t n, std::int64_t r) {
    if (r < 0 || r > n) throw std::invalid_argument("granville_check: need 0 <= r <= n");
    Int cof = binomial(n, r) / p_factor(p, n, r);
    std::int64_t mod = tilde_f(p, N, n).modulus;
    Residue lhs = Residue::from(cof, mod);
    Residue rhs = tilde_f(p, N, n) * (tilde_f(p, N, r) * tilde_f(p, N, n - r)).inverse();
    return lhs == rhs;
}

// (p, l) with d = p^l, if d is a prime power
inline std::optional<PrimePower> prime_power_decomposition(std::int64_t d) {
    if (d < 2) throw std::invalid_argument("prime_power_decomposition: need d >= 2");
    for (std::int64_t p = 2; p * p <= d; ++p) {
        if (d % p != 0) continue;
        int l = 0;
        std::int64_t m = d;
        while (m % p == 0) { m /= p; ++l; }
        if (m == 1) return PrimePower{p, l};
        return std::nullopt;
    }
    return PrimePower{d, 1};  // d itself is prime
}

struct ABMembership {
    bool in_a = false;  // d = p^n (p^m + 1), n >= 0, m >= 1
    bool in_b = false;  // d = p^n, n >= 1
};

// (n, m) with d = p^n (p^m + 1); unique when it exists since n = v_p(d)
inline std::optional<std::pair<int, int>> a_decomposition(std::int64_t p, std::int64_t d) {
    require_prime(p);
    if (d < 1) return std::nullopt;
    int n = 0;
    std::int64_t q = d;
    while (q % p == 0) { q /= p; ++n; }
    // need q = p^m + 1 with m >= 1
    std::int64_t t = q - 1;
    if (t < p) return std::nullopt;
    int m = 0;
    while (t % p == 0) { t /= p; ++m; }
    if (t != 1) return std::nullopt;
    return std::make_pair(n, m);
}

inline ABMembership membership_ab(std::int64_t p, std::int64_t d) {
    require_prime(p);
    if (d < 1) throw std::invalid_argument("membership_ab: need d >= 1");
    ABMembership out;
    out.in_a = a_decomposition(p, d).has_value();
    std::int64_t q = d;
    while (q % p == 0) q /= p;
    out.in_b = (q == 1 && d > 1);
    if (out.in_a && out.in_b)
        throw std::logic_error("membership_ab: A(p) and B(p) must be disjoint");
    return out;
}

// all primes p with d = p^n (p^m + 1); p^m + 1 <= d forces p < d
inline std::vector<std::int64_t> j_set(std::int64_t d) {
    if (d < 1) throw std::invalid_argument("j_set: need d >= 1");
    std::vector<std::int64_t> out;
    for (std::int64_t p : primes_up_to(d - 1))
        if (a_decomposition(p, d)) out.push_back(p);
    return out;
}

}  // namespace symext
