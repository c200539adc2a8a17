#pragma once

// Cohomology of the complex over Z and over Z/p^N.
//
// Over Z, degree k is read off Smith forms: free rank = dim - rank(delta^k)
// - rank(delta^{k-1}), torsion = the nontrivial invariant factors of
// delta^{k-1} (the complex law delta o delta = 0 makes the cokernel torsion
// coincide with the homology torsion, and it is asserted).
//
// Mod p^N the module structure is computed along two independent routes
// that must agree: (a) universal coefficients from the integer Smith data,
// (b) a direct lattice quotient over Z of lifted kernels/images. A
// discrepancy aborts with a diagnostic dump.

#include <algorithm>
#include <cstdint>
#include <map>
#include <mutex>
#include <sstream>
#include <stdexcept>
#include <vector>

#include "symext/abelian_group.hpp"
#include "symext/complex.hpp"
#include "symext/modp.hpp"
#include "symext/smith.hpp"

namespace symext {

namespace detail {

inline std::int64_t next_prime_after(std::int64_t n) {
    std::int64_t p = n + 1;
    while (!is_prime(p)) ++p;
    return p;
}

// Per-handle cache of differential ranks and Smith diagonals.
//
// Ranks are certified by a squeeze: the verified law delta^k o delta^{k-1}=0
// gives rank(delta^k) <= dim_k - rank(delta^{k-1}) exactly, while elimination
// over F_p gives rank(delta^k) >= rank_p for every prime. When the bounds
// meet the rank is exact; if no tried prime closes the gap, the exact integer
// engine decides. This sidesteps coefficient blowup on the large degrees.
class HomologyCache {
public:
    explicit HomologyCache(const ComplexHandle& h) : handle_(h) {}

    const ComplexHandle& handle() const { return handle_; }

    int rank_of(int k) {
        const int d = handle_.degree();
        if (k < 0 || k > d - 1) return 0;
        std::lock_guard<std::mutex> lock(mutex_);
        compute_rank(k);
        return rank_.at(k);
    }

    const std::vector<Int>& diagonal_of(int k) {
        std::lock_guard<std::mutex> lock(mutex_);
        auto it = diag_.find(k);
        if (it == diag_.end()) {
            SmithForm s = smith_normal_form(handle_.matrix(k));
            auto rit = rank_.find(k);
            if (rit != rank_.end() && rit->second != s.rank)
                throw std::logic_error("rank squeeze and Smith form disagree");
            rank_[k] = s.rank;
            it = diag_.emplace(k, std::move(s.diagonal)).first;
        }
        return it->second;
    }

    void assert_complex_law(int k) {
        if (k <= 0 || k > handle_.degree() - 1) return;
        std::lock_guard<std::mutex> lock(mutex_);
        check_law(k);
    }

private:
    void check_law(int k) {
        if (law_checked_.count(k)) return;
        if (!handle_.matrix(k).multiply(handle_.matrix(k - 1)).is_zero())
            throw std::logic_error("complex law violated: delta^k o delta^{k-1} != 0");
        law_checked_.insert(k);
    }

    void compute_rank(int j) {
        if (rank_.count(j)) return;
        if (auto it = diag_.find(j); it != diag_.end()) {
            rank_[j] = static_cast<int>(it->second.size());
            return;
        }
        const SparseIntMatrix& a = handle_.matrix(j);
        if (a.rows == 0 || a.cols == 0 || a.is_zero()) {
            rank_[j] = 0;
            return;
        }
        // exact upper bound from im delta^{j-1} (resp. ker delta^{j+1})
        // containing im delta^j; recurse toward the nearer end of the complex
        const int d = handle_.degree();
        int upper;
        if (j <= d - 1 - j) {
            upper = static_cast<int>(handle_.dim(j));
            if (j >= 1) {
                compute_rank(j - 1);
                check_law(j);
                upper -= rank_.at(j - 1);
            }
        } else {
            compute_rank(j + 1);
            check_law(j + 1);
            upper = static_cast<int>(handle_.dim(j + 1)) - rank_.at(j + 1);
        }
        int best = 0;
        std::int64_t p = next_prime_after(d);
        for (int tries = 0; tries < 8 && best < upper; ++tries) {
            best = std::max(best, rank_mod_p(a, p));
            p = next_prime_after(p);
        }
        rank_[j] = (best == upper) ? best : matrix_rank(a);
    }

    const ComplexHandle& handle_;
    std::mutex mutex_;
    std::map<int, int> rank_;
    std::map<int, std::vector<Int>> diag_;
    std::set<int> law_checked_;
};

}  // namespace detail

class Homology {
public:
    explicit Homology(int d) : handle_(d), cache_(handle_) {}

    const ComplexHandle& handle() const { return handle_; }
    int degree() const { return handle_.degree(); }

    AbelianGroup at(int k) {
        const int d = handle_.degree();
        if (k < 0) throw std::invalid_argument("homology_at: need k >= 0");
        if (k > d - 1) return AbelianGroup();
        cache_.assert_complex_law(k);
        std::int64_t n_k = handle_.dim(k);
        int rank_out = (k == d - 1) ? 0 : cache_.rank_of(k);
        int rank_in = 0;
        std::vector<Int> torsion;
        if (k > 0) {
            const auto& diag = cache_.diagonal_of(k - 1);
            rank_in = static_cast<int>(diag.size());
            for (const Int& v : diag)
                if (v > 1) torsion.push_back(v);
        }
        AbelianGroup g = AbelianGroup::from_cyclic_orders(n_k - rank_out - rank_in, torsion);
        return g;
    }

    GradedGroup all() {
        GradedGroup out;
        for (int k = 0; k <= degree() - 1; ++k) out.set(k, at(k));
        return out;
    }

    // least t >= 1 with t z a coboundary; throws when z is not a cocycle
    std::optional<Int> class_order(int k, const Cochain& z) {
        if (z.d != degree() || z.k != k)
            throw std::invalid_argument("class_order: cochain does not match (d, k)");
        if (k < degree() - 1 && !differential(z).is_zero_cochain())
            throw std::invalid_argument("class_order: input is not a cocycle");
        std::vector<Int> vec = to_vector(z);
        const SparseIntMatrix& b = handle_.matrix(k - 1);
        return column_space_order(b, vec);
    }

    std::vector<Int> to_vector(const Cochain& z) const {
        std::vector<Int> vec(static_cast<std::size_t>(handle_.dim(z.k)), 0);
        for (const auto& [e, c] : z.coeffs) vec[static_cast<std::size_t>(basis_index(e))] = c;
        return vec;
    }

private:
    ComplexHandle handle_;
    detail::HomologyCache cache_;
};

inline AbelianGroup homology_at(int d, int k) { return Homology(d).at(k); }

inline GradedGroup homology_all(int d) { return Homology(d).all(); }

// ---------------------------------------------------------------------------
// mod p^N

namespace detail {

// H^k(C x Z/p^N) computed as a lattice quotient L/M with
//   L = { x : delta^k x = 0 mod p^N }  (lifted kernel)
//   M = im(delta^{k-1}) + p^N Z^{n_k}
inline std::vector<Int> mod_pn_homology_direct(const ComplexHandle& handle, std::int64_t p,
                                               int N, int k) {
    const int d = handle.degree();
    Int mod = int_pow(p, N);
    int n_k = static_cast<int>(handle.dim(k));
    int n_k1 = static_cast<int>(handle.dim(k + 1));

    // L: project ker[delta^k | p^N I] onto the first n_k coordinates
    SparseIntMatrix stacked =
        SparseIntMatrix::hconcat(k == d - 1 ? SparseIntMatrix(0, n_k) : handle.matrix(k),
                                 SparseIntMatrix::identity(k == d - 1 ? 0 : n_k1).scaled(mod));
    SparseIntMatrix ker = kernel_basis(stacked);
    SparseIntMatrix lat(n_k, ker.cols);
    for (int i = 0; i < n_k; ++i) lat.row_data[static_cast<std::size_t>(i)] = ker.row_data[static_cast<std::size_t>(i)];
    if (lat.cols != n_k) throw std::logic_error("mod_pn_homology_direct: kernel lattice not full rank");

    // M's generators, in the coordinates n_k
    SparseIntMatrix gens = SparseIntMatrix::hconcat(handle.matrix(k - 1),
                                                    SparseIntMatrix::identity(n_k).scaled(mod));

    // express each generator of M in the basis of L, then read the quotient
    // off the Smith form of the coefficient matrix
    detail::SmithEngine::Options opt;
    opt.keep_v = true;
    detail::SmithEngine eng(lat, opt);
    std::vector<std::vector<Int>> cols;
    for (int j = 0; j < gens.cols; ++j) cols.emplace_back(static_cast<std::size_t>(n_k), 0);
    for (int i = 0; i < n_k; ++i)
        for (const auto& [j, v] : gens.row_data[static_cast<std::size_t>(i)])
            cols[static_cast<std::size_t>(j)][static_cast<std::size_t>(i)] = v;
    for (auto& c : cols) eng.add_carried(std::move(c));
    eng.run();
    if (eng.rank() != n_k) throw std::logic_error("mod_pn_homology_direct: kernel basis degenerate");

    SparseIntMatrix coeff(n_k, gens.cols);
    for (int j = 0; j < gens.cols; ++j) {
        std::vector<Int> w = eng.carried_result(static_cast<std::size_t>(j));
        for (int s = 0; s < n_k; ++s) {
            const Int& ds = eng.diagonal()[static_cast<std::size_t>(s)];
            if (w[static_cast<std::size_t>(s)] % ds != 0)
                throw std::logic_error("mod_pn_homology_direct: image not inside kernel lattice");
            Int ys = w[static_cast<std::size_t>(s)] / ds;
            if (ys == 0) continue;
            auto vcol = eng.v_column(s);
            for (int t = 0; t < n_k; ++t)
                if (vcol[static_cast<std::size_t>(t)] != 0)
                    coeff.add_to(t, j, ys * vcol[static_cast<std::size_t>(t)]);
        }
    }

    SmithForm q = smith_normal_form(coeff);
    if (q.rank != n_k) throw std::logic_error("mod_pn_homology_direct: quotient has free part");
    std::vector<Int> orders;
    for (const Int& v : q.diagonal)
        if (v > 1) orders.push_back(v);
    std::sort(orders.begin(), orders.end());
    return orders;
}

// universal coefficients: H^k x Z/p^N (+) Tor(H^{k+1}, Z/p^N)
inline std::vector<Int> mod_pn_homology_uct(const AbelianGroup& hk, const AbelianGroup& hk1,
                                            std::int64_t p, int N) {
    Int mod = int_pow(p, N);
    std::vector<Int> orders;
    for (std::int64_t i = 0; i < hk.rank; ++i) orders.push_back(mod);
    for (const Int& t : hk.torsion) {
        Int g = gcd(t, mod);
        if (g > 1) orders.push_back(g);
    }
    for (const Int& t : hk1.torsion) {
        Int g = gcd(t, mod);
        if (g > 1) orders.push_back(g);
    }
    std::sort(orders.begin(), orders.end());
    return orders;
}

}  // namespace detail

// cyclic orders (each a power of p, ascending) of H^k of the complex
// tensored with Z/p^N; both routes are computed and compared
inline std::vector<Int> homology_mod_pn(Homology& h, std::int64_t p, int N, int k) {
    require_prime(p);
    const int d = h.degree();
    if (N < 1) throw std::invalid_argument("homology_mod_pn: need N >= 1");
    if (k < 0 || k > d - 1) throw std::invalid_argument("homology_mod_pn: need 0 <= k <= d-1");
    std::vector<Int> via_uct = detail::mod_pn_homology_uct(h.at(k), h.at(k + 1), p, N);
    std::vector<Int> via_direct = detail::mod_pn_homology_direct(h.handle(), p, N, k);
    if (via_uct != via_direct) {
        std::ostringstream os;
        os << "homology_mod_pn: independent routes disagree (p=" << p << ", N=" << N
           << ", d=" << d << ", k=" << k << "): uct=[";
        for (const Int& v : via_uct) os << v << ' ';
        os << "] direct=[";
        for (const Int& v : via_direct) os << v << ' ';
        os << "]";
        throw std::logic_error(os.str());
    }
    return via_direct;
}

inline std::vector<Int> homology_mod_pn(std::int64_t p, int N, int d, int k) {
    Homology h(d);
    return homology_mod_pn(h, p, N, k);
}

}  // namespace symext
