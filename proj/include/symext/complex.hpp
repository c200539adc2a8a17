#pragma once

// The bounded cochain complex computing Ext-groups from the abelianization
// functor into d-th symmetric powers: basis enumeration, the signed
// binomial-weighted differential, its reduction mod p^N, the localized
// variant with p-factor coefficients, the conjugating diagonal isomorphism,
// and the explicit generator cochains appearing in the closed-form theorems.

#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <stdexcept>
#include <vector>

#include "symext/arith.hpp"
#include "symext/basis.hpp"
#include "symext/cochain.hpp"
#include "symext/sparse_matrix.hpp"

namespace symext {

inline Int int_pow(std::int64_t p, int e) {
    Int out = 1;
    for (int i = 0; i < e; ++i) out *= p;
    return out;
}

// delta^k <n_1 ... n_k> = sum_{j=1}^{k+1} sum_{m=n_{j-1}+1}^{n_j - 1}
//   (-1)^j C(n_j - n_{j-1}, m - n_{j-1}) <n_1 ... n_{j-1} m n_j ... n_k>
// with n_0 = 0, n_{k+1} = d.
inline Cochain differential(int d, int k, const BasisElement& element) {
    if (element.d != d || element.k() != k)
        throw std::invalid_argument("differential: element does not match (d, k)");
    element.validate();
    Cochain out(d, k + 1);
    const auto& n = element.entries;
    for (int j = 1; j <= k + 1; ++j) {
        int lo = (j == 1) ? 0 : n[static_cast<std::size_t>(j - 2)];
        int hi = (j == k + 1) ? d : n[static_cast<std::size_t>(j - 1)];
        int sign = (j % 2 == 0) ? 1 : -1;
        for (int m = lo + 1; m <= hi - 1; ++m) {
            std::vector<int> entries;
            entries.reserve(static_cast<std::size_t>(k + 1));
            entries.insert(entries.end(), n.begin(), n.begin() + (j - 1));
            entries.push_back(m);
            entries.insert(entries.end(), n.begin() + (j - 1), n.end());
            out.add(BasisElement(d, std::move(entries)), sign * binomial(hi - lo, m - lo));
        }
    }
    return out;
}

inline Cochain differential(const Cochain& z) {
    Cochain out(z.d, z.k + 1);
    for (const auto& [e, c] : z.coeffs) {
        Cochain de = differential(z.d, z.k, e);
        for (const auto& [f, w] : de.coeffs) out.add(f, c * w);
    }
    return out;
}

// columns indexed by enumerate_basis(d, k), rows by enumerate_basis(d, k+1)
inline SparseIntMatrix differential_matrix(int d, int k) {
    if (k < 0 || k > d - 1) throw std::invalid_argument("differential_matrix: need 0 <= k <= d-1");
    auto domain = enumerate_basis(d, k);
    int rows = static_cast<int>(basis_rank(d, k + 1));
    SparseIntMatrix m(rows, static_cast<int>(domain.size()));
    for (std::size_t col = 0; col < domain.size(); ++col) {
        Cochain image = differential(d, k, domain[col]);
        for (const auto& [e, c] : image.coeffs)
            m.set(static_cast<int>(basis_index(e)), static_cast<int>(col), c);
    }
    return m;
}

// same sparsity pattern with each binomial replaced by its p-factor,
// entries reduced mod p^N
inline SparseIntMatrix localized_differential_matrix(std::int64_t p, int N, int d, int k) {
    require_prime(p);
    if (k < 0 || k > d - 1)
        throw std::invalid_argument("localized_differential_matrix: need 0 <= k <= d-1");
    Int mod = int_pow(p, N);
    auto domain = enumerate_basis(d, k);
    int rows = static_cast<int>(basis_rank(d, k + 1));
    SparseIntMatrix m(rows, static_cast<int>(domain.size()));
    for (std::size_t col = 0; col < domain.size(); ++col) {
        const auto& n = domain[col].entries;
        for (int j = 1; j <= k + 1; ++j) {
            int lo = (j == 1) ? 0 : n[static_cast<std::size_t>(j - 2)];
            int hi = (j == k + 1) ? d : n[static_cast<std::size_t>(j - 1)];
            int sign = (j % 2 == 0) ? 1 : -1;
            for (int md = lo + 1; md <= hi - 1; ++md) {
                std::vector<int> entries;
                entries.insert(entries.end(), n.begin(), n.begin() + (j - 1));
                entries.push_back(md);
                entries.insert(entries.end(), n.begin() + (j - 1), n.end());
                Int v = sign * p_factor(p, hi - lo, md - lo);
                Int r = v % mod;
                if (r < 0) r += mod;
                if (r != 0)
                    m.add_to(static_cast<int>(basis_index(BasisElement(d, std::move(entries)))),
                             static_cast<int>(col), r);
            }
        }
    }
    return m.reduced_mod(mod);
}

// diagonal conjugator: entry at a basis element is the product of
// F~_{p,N}(gap) over its consecutive gaps (n_0 = 0, n_{k+1} = d); all
// entries are units mod p^N
inline SparseIntMatrix phi_matrix(std::int64_t p, int N, int d, int k) {
    require_prime(p);
    if (k < 0 || k > d - 1) throw std::invalid_argument("phi_matrix: need 0 <= k <= d-1");
    Int mod = int_pow(p, N);
    auto basis = enumerate_basis(d, k);
    SparseIntMatrix m(static_cast<int>(basis.size()), static_cast<int>(basis.size()));
    for (std::size_t i = 0; i < basis.size(); ++i) {
        const auto& n = basis[i].entries;
        Int prod = 1;
        int prev = 0;
        for (std::size_t t = 0; t <= n.size(); ++t) {
            int next = (t == n.size()) ? d : n[t];
            prod = prod * tilde_f(p, N, next - prev).value % mod;
            prev = next;
        }
        m.set(static_cast<int>(i), static_cast<int>(i), prod);
    }
    return m;
}

// u_m = (-1)^m <m>^c + <1>^c, a (d-2)-cochain
inline Cochain u_cochain(int d, int m) {
    if (d < 3) throw std::invalid_argument("u_cochain: need d >= 3");
    if (m < 2 || m > d - 1) throw std::invalid_argument("u_cochain: need 2 <= m <= d-1");
    Cochain out(d, d - 2);
    out.add(complement_element(d, {m}), (m % 2 == 0) ? 1 : -1);
    out.add(complement_element(d, {1}), 1);
    return out;
}

// 1-cocycle generating H^1 for d = p^l: coefficient of <k> is C(d,k)/p
inline Cochain h1_generator(int d) {
    auto pp = prime_power_decomposition(d);
    if (!pp) throw std::invalid_argument("h1_generator: d must be a prime power");
    Cochain out(d, 1);
    Int c = 1;
    for (int k = 1; k < d; ++k) {
        c = c * (d - k + 1) / k;  // C(d, k)
        if (c % pp->p != 0) throw std::logic_error("h1_generator: division by p not exact");
        out.add(BasisElement(d, {k}), c / pp->p);
    }
    return out;
}

// 2-cocycle generating the p-torsion of H^2 for d = p^n (p^m + 1):
//   -sum_{k<p^n} (1/p) C(p^n, k) <k p^n> + sum_{l<p^{n+m}} (1/p) C(p^{n+m}, l) <p^n (p^n+l)>
inline Cochain h2_generator(int d, std::int64_t p, int n, int m) {
    require_prime(p);
    if (m < 1 || n < 0) throw std::invalid_argument("h2_generator: need n >= 0, m >= 1");
    Int pn = int_pow(p, n), pnm = int_pow(p, n + m);
    if (Int(d) != pn * (pnm / pn + 1))
        throw std::invalid_argument("h2_generator: d != p^n (p^m + 1)");
    std::int64_t pni = static_cast<std::int64_t>(pn);
    std::int64_t pnmi = static_cast<std::int64_t>(pnm);
    Cochain out(d, 2);
    for (std::int64_t k = 1; k < pni; ++k) {
        Int c = binomial(pni, k);
        if (c % p != 0) throw std::logic_error("h2_generator: division by p not exact");
        out.add(BasisElement(d, {static_cast<int>(k), static_cast<int>(pni)}), -(c / p));
    }
    for (std::int64_t l = 1; l < pnmi; ++l) {
        Int c = binomial(pnmi, l);
        if (c % p != 0) throw std::logic_error("h2_generator: division by p not exact");
        out.add(BasisElement(d, {static_cast<int>(pni), static_cast<int>(pni + l)}), c / p);
    }
    return out;
}

// generator of H^1 of the complex reduced mod p^N, for d in A(p) or B(p):
// A-case a single spike p^{N-1} <p^n> with n = v_p(d); B-case the
// binomial row divided by p, reduced mod p^N
inline ModCochain h1_modpn_generator(std::int64_t p, int N, int d) {
    require_prime(p);
    if (N < 1) throw std::invalid_argument("h1_modpn_generator: need N >= 1");
    auto ab = membership_ab(p, d);
    std::int64_t mod = 1;
    for (int i = 0; i < N; ++i) mod *= p;
    ModCochain out(d, 1);
    if (ab.in_a) {
        int n = 0;
        std::int64_t q = d;
        while (q % p == 0) { q /= p; ++n; }
        std::int64_t pn = 1;
        for (int i = 0; i < n; ++i) pn *= p;
        std::int64_t spike = 1;
        for (int i = 0; i < N - 1; ++i) spike *= p;
        out.add(BasisElement(d, {static_cast<int>(pn)}), Residue(spike, mod));
        return out;
    }
    if (ab.in_b) {
        Int c = 1;
        for (int k = 1; k < d; ++k) {
            c = c * (d - k + 1) / k;
            out.add(BasisElement(d, {k}), Residue::from(c / p, mod));
        }
        return out;
    }
    throw std::invalid_argument("h1_modpn_generator: d lies in neither A(p) nor B(p)");
}

// dimensions of the exterior-power analogue: concentrated in cohomological
// degree d-1 with dimension 1
inline std::vector<std::int64_t> exterior_cross_effect_dims(int d) {
    if (d < 1) throw std::invalid_argument("exterior_cross_effect_dims: need d >= 1");
    std::vector<std::int64_t> dims(static_cast<std::size_t>(d), 0);
    dims[static_cast<std::size_t>(d - 1)] = 1;
    return dims;
}

// Lazily memoized differential matrices for one ambient degree d, optionally
// reduced mod a prime power. Matrices are immutable once built; a mutex
// guards first construction so distinct readers may share a handle.
class ComplexHandle {
public:
    explicit ComplexHandle(int d) : d_(d) {
        if (d < 1) throw std::invalid_argument("ComplexHandle: need d >= 1");
        matrices_.resize(static_cast<std::size_t>(d));
        built_.resize(static_cast<std::size_t>(d), false);
    }

    ComplexHandle(int d, std::int64_t p, int N) : ComplexHandle(d) {
        require_prime(p);
        modulus_ = int_pow(p, N);
    }

    int degree() const { return d_; }
    const std::optional<Int>& modulus() const { return modulus_; }

    std::int64_t dim(int k) const { return (k < 0 || k > d_ - 1) ? 0 : basis_rank(d_, k); }

    // delta^k as a matrix; k = -1 and k = d-1 yield the appropriate empty maps
    const SparseIntMatrix& matrix(int k) const {
        if (k == -1) {
            std::call_once(zero_in_once_, [&] {
                zero_in_ = SparseIntMatrix(static_cast<int>(dim(0)), 0);
            });
            return zero_in_;
        }
        if (k < 0 || k > d_ - 1) throw std::invalid_argument("ComplexHandle::matrix: bad degree");
        std::lock_guard<std::mutex> lock(mutex_);
        if (!built_[static_cast<std::size_t>(k)]) {
            SparseIntMatrix m = differential_matrix(d_, k);
            if (modulus_) m = m.reduced_mod(*modulus_);
            matrices_[static_cast<std::size_t>(k)] = std::move(m);
            built_[static_cast<std::size_t>(k)] = true;
        }
        return matrices_[static_cast<std::size_t>(k)];
    }

private:
    int d_;
    std::optional<Int> modulus_;
    mutable std::mutex mutex_;
    mutable std::vector<SparseIntMatrix> matrices_;
    mutable std::vector<bool> built_;
    mutable std::once_flag zero_in_once_;
    mutable SparseIntMatrix zero_in_;
};

}  // namespace symext
