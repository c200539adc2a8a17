#pragma once

// Reconciles computed cohomology with every closed-form statement:
// expected value vs computed value plus mandatory witness certification
// (a named generator must be a cocycle of the exact class order before a
// report may pass). Reports serialize to JSON.

#include <cstdint>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "symext/arith.hpp"
#include "symext/complex.hpp"
#include "symext/homology.hpp"
#include "symext/smith.hpp"

namespace symext {

struct TheoremReport {
    std::string theorem;
    std::vector<std::pair<std::string, std::int64_t>> params;
    std::string expected;
    std::string computed;
    std::vector<std::string> witnesses;
    bool pass = false;

    nlohmann::json to_json() const {
        nlohmann::json p = nlohmann::json::object();
        for (const auto& [k, v] : params) p[k] = v;
        return nlohmann::json{{"theorem", theorem},   {"params", p},
                              {"expected", expected}, {"computed", computed},
                              {"witnesses", witnesses}, {"verdict", pass ? "pass" : "fail"}};
    }
};

namespace detail {

inline std::string order_str(const std::optional<Int>& o) {
    return o ? o->str() : std::string("infinite");
}

}  // namespace detail

// first cohomology: Z/p exactly for prime powers d = p^l, else 0; the
// explicit generator must be a cocycle of class order exactly p, and the
// group must equal Z/gcd{C(d,k)}
inline TheoremReport verify_h1(int d) {
    TheoremReport rep;
    rep.theorem = "h1";
    rep.params = {{"d", d}};
    if (d == 1) {
        AbelianGroup h0 = homology_at(1, 0);
        rep.expected = "Z";
        rep.computed = h0.to_string_prime_power();
        rep.witnesses.push_back("d=1 routes to the degree-0 group");
        rep.pass = (h0 == AbelianGroup(1));
        return rep;
    }
    Homology h(d);
    AbelianGroup computed = h.at(1);
    auto pp = prime_power_decomposition(d);
    AbelianGroup expected =
        pp ? AbelianGroup::from_cyclic_orders(0, {Int(pp->p)}) : AbelianGroup();
    rep.expected = expected.to_string_prime_power();
    rep.computed = computed.to_string_prime_power();
    bool ok = (computed == expected);

    Int g = binomial_row_gcd(d);
    AbelianGroup via_gcd = AbelianGroup::from_cyclic_orders(0, {g});
    bool gcd_ok = (computed == via_gcd);
    rep.witnesses.push_back("gcd{C(d,k)} = " + g.str() + (gcd_ok ? " (group matches)" : " (MISMATCH)"));
    ok = ok && gcd_ok;

    if (pp) {
        Cochain z = h1_generator(d);
        auto order = h.class_order(1, z);
        bool w_ok = order && *order == pp->p;
        rep.witnesses.push_back("generator " + z.to_string() + " has class order " +
                                detail::order_str(order) + (w_ok ? "" : " (MISMATCH)"));
        ok = ok && w_ok;
    }
    rep.pass = ok;
    return rep;
}

// second cohomology: direct sum of Z/p over the primes with
// d = p^n (p^m + 1); each p-part generator certified, including the lifting
// identity p*y = delta^1(<p^n>)
inline TheoremReport verify_h2(int d) {
    TheoremReport rep;
    rep.theorem = "h2";
    rep.params = {{"d", d}};
    Homology h(d);
    AbelianGroup computed = h.at(2);
    std::vector<Int> primes;
    for (std::int64_t p : j_set(d)) primes.push_back(p);
    AbelianGroup expected = AbelianGroup::from_cyclic_orders(0, primes);
    rep.expected = expected.to_string_prime_power();
    rep.computed = computed.to_string_prime_power();
    bool ok = (computed == expected);

    for (std::int64_t p : j_set(d)) {
        auto nm = a_decomposition(p, d);
        if (!nm) continue;
        auto [n, m] = *nm;
        Cochain y = h2_generator(d, p, n, m);
        auto order = h.class_order(2, y);
        bool w_ok = order && *order == p;
        std::int64_t pn = 1;
        for (int i = 0; i < n; ++i) pn *= p;
        Cochain lift = differential(d, 1, BasisElement(d, {static_cast<int>(pn)}));
        bool lift_ok = (Int(p) * y == lift);
        std::ostringstream os;
        os << "p=" << p << " generator has class order " << detail::order_str(order)
           << (w_ok ? "" : " (MISMATCH)") << "; p*y = delta^1(<p^n>) "
           << (lift_ok ? "holds" : "FAILS");
        rep.witnesses.push_back(os.str());
        ok = ok && w_ok && lift_ok;
    }
    rep.pass = ok;
    return rep;
}

// top two degrees: H^{d-1} = Z/2 generated by the full-complement class,
// H^{d-2} = Z/3 exactly for d in {3, 4}
inline TheoremReport verify_top_degrees(int d) {
    if (d < 2) throw std::invalid_argument("verify_top_degrees: need d >= 2");
    TheoremReport rep;
    rep.theorem = "top_degrees";
    rep.params = {{"d", d}};
    Homology h(d);

    AbelianGroup top = h.at(d - 1);
    AbelianGroup z2 = AbelianGroup::from_cyclic_orders(0, {Int(2)});
    bool ok = (top == z2);
    {
        Cochain z(d, d - 1);
        z.add(complement_element(d, {}), 1);
        auto order = h.class_order(d - 1, z);
        bool w_ok = order && *order == 2;
        rep.witnesses.push_back("<>^c has class order " + detail::order_str(order) +
                                (w_ok ? "" : " (MISMATCH)"));
        ok = ok && w_ok;
    }

    AbelianGroup sub = h.at(d - 2);
    AbelianGroup sub_expected =
        (d == 3 || d == 4) ? AbelianGroup::from_cyclic_orders(0, {Int(3)}) : AbelianGroup();
    ok = ok && (sub == sub_expected);
    if (d == 3 || d == 4) {
        Cochain u2 = u_cochain(d, 2);
        auto order = h.class_order(d - 2, u2);
        bool w_ok = order && *order == 3;
        rep.witnesses.push_back("u_2 has class order " + detail::order_str(order) +
                                (w_ok ? "" : " (MISMATCH)"));
        ok = ok && w_ok;
    }

    rep.expected = "H^" + std::to_string(d - 1) + " = " + z2.to_string_prime_power() + ", H^" +
                   std::to_string(d - 2) + " = " + sub_expected.to_string_prime_power();
    rep.computed = "H^" + std::to_string(d - 1) + " = " + top.to_string_prime_power() + ", H^" +
                   std::to_string(d - 2) + " = " + sub.to_string_prime_power();
    rep.pass = ok;
    return rep;
}

// the quadratic 1-cocycle system C(k,r) a_k = C(d-r, d-k) a_r
inline bool verify_cocycle_system(int d, const std::vector<Int>& v) {
    if (static_cast<int>(v.size()) != d - 1)
        throw std::invalid_argument("verify_cocycle_system: vector must have length d-1");
    for (int k = 2; k < d; ++k)
        for (int r = 1; r < k; ++r)
            if (binomial(k, r) * v[static_cast<std::size_t>(k - 1)] !=
                binomial(d - r, d - k) * v[static_cast<std::size_t>(r - 1)])
                return false;
    return true;
}

namespace detail {

// lattice of solutions of delta^1 x = 0 mod p^N inside Z^{d-1}
inline SparseIntMatrix z1_solution_lattice(int d, const Int& mod) {
    SparseIntMatrix a = differential_matrix(d, 1);
    SparseIntMatrix stacked =
        SparseIntMatrix::hconcat(a, SparseIntMatrix::identity(a.rows).scaled(mod));
    SparseIntMatrix ker = kernel_basis(stacked);
    SparseIntMatrix lat(a.cols, ker.cols);
    for (int i = 0; i < a.cols; ++i)
        lat.row_data[static_cast<std::size_t>(i)] = ker.row_data[static_cast<std::size_t>(i)];
    return lat;
}

// index [Z^n : colspace(A)] for a full-rank-n lattice; nullopt if rank < n
inline std::optional<Int> lattice_index(const SparseIntMatrix& a) {
    SmithForm s = smith_normal_form(a);
    if (s.rank != a.rows) return std::nullopt;
    Int idx = 1;
    for (const Int& v : s.diagonal) idx *= v;
    return idx;
}

}  // namespace detail

// the kernel of delta^1 mod p^N equals the span of the listed generators:
// A-case a p^{N-1} spike plus the binomial row, B-case the binomial row over
// p, otherwise the binomial row alone
inline TheoremReport verify_z1_modpn(std::int64_t p, int N, int d) {
    if (d < 2) throw std::invalid_argument("verify_z1_modpn: need d >= 2");
    TheoremReport rep;
    rep.theorem = "z1_modpn";
    rep.params = {{"p", p}, {"N", N}, {"d", d}};
    Int mod = int_pow(p, N);
    const int n1 = d - 1;

    auto ab = membership_ab(p, d);
    std::vector<std::vector<Int>> gens;
    std::string case_name;
    std::vector<Int> row(static_cast<std::size_t>(n1));
    Int c = 1;
    for (int k = 1; k < d; ++k) {
        c = c * (d - k + 1) / k;
        row[static_cast<std::size_t>(k - 1)] = c;
    }
    if (ab.in_a) {
        case_name = "A";
        int vp = 0;
        std::int64_t q = d;
        while (q % p == 0) { q /= p; ++vp; }
        std::vector<Int> spike(static_cast<std::size_t>(n1), 0);
        std::int64_t pn = 1;
        for (int i = 0; i < vp; ++i) pn *= p;
        spike[static_cast<std::size_t>(pn - 1)] = int_pow(p, N - 1);
        gens.push_back(spike);
        gens.push_back(row);
    } else if (ab.in_b) {
        case_name = "B";
        std::vector<Int> scaled = row;
        for (auto& v : scaled) v /= p;
        gens.push_back(scaled);
    } else {
        case_name = "otherwise";
        gens.push_back(row);
    }

    // solution lattice and the span lattice must coincide inside Z^{d-1}
    SparseIntMatrix sol = detail::z1_solution_lattice(d, mod);
    SparseIntMatrix span(n1, static_cast<int>(gens.size()) + n1);
    for (std::size_t j = 0; j < gens.size(); ++j)
        for (int i = 0; i < n1; ++i)
            if (gens[j][static_cast<std::size_t>(i)] != 0)
                span.set(i, static_cast<int>(j), gens[j][static_cast<std::size_t>(i)]);
    for (int i = 0; i < n1; ++i) span.set(i, static_cast<int>(gens.size()) + i, mod);

    // containment: every generator solves the system mod p^N
    SparseIntMatrix a = differential_matrix(d, 1);
    bool contained = true;
    for (const auto& g : gens) {
        for (const Int& y : a.apply(g))
            if (y % mod != 0) { contained = false; break; }
        if (!contained) break;
    }

    auto idx_sol = detail::lattice_index(sol);
    auto idx_span = detail::lattice_index(span);
    bool equal = contained && idx_sol && idx_span && *idx_sol == *idx_span;

    rep.expected = "kernel spanned by the " + case_name + "-case generators";
    rep.computed = std::string("containment ") + (contained ? "holds" : "FAILS") +
                   ", lattice indices " + (idx_sol ? idx_sol->str() : "?") + " vs " +
                   (idx_span ? idx_span->str() : "?");
    for (const auto& g : gens) {
        Cochain z(d, 1);
        for (int i = 0; i < n1; ++i)
            if (g[static_cast<std::size_t>(i)] != 0) z.add(BasisElement(d, {i + 1}), g[static_cast<std::size_t>(i)]);
        rep.witnesses.push_back("generator " + z.to_string());
    }
    rep.pass = equal;
    return rep;
}

// H^1 mod p^N is Z/p exactly on A(p) u B(p), independent of N; the listed
// generator must be a nonzero class
inline TheoremReport verify_h1_modpn(std::int64_t p, int N, int d) {
    if (d < 2) throw std::invalid_argument("verify_h1_modpn: need d >= 2");
    TheoremReport rep;
    rep.theorem = "h1_modpn";
    rep.params = {{"p", p}, {"N", N}, {"d", d}};
    Homology h(d);
    std::vector<Int> orders = homology_mod_pn(h, p, N, 1);
    auto ab = membership_ab(p, d);
    bool member = ab.in_a || ab.in_b;
    std::vector<Int> expected_orders;
    if (member) expected_orders.push_back(p);
    rep.expected = member ? ("[" + Int(p).str() + "]") : "[]";
    {
        std::ostringstream os;
        os << '[';
        for (std::size_t i = 0; i < orders.size(); ++i) {
            if (i) os << ' ';
            os << orders[i];
        }
        os << ']';
        rep.computed = os.str();
    }
    bool ok = (orders == expected_orders);

    if (member) {
        Int mod = int_pow(p, N);
        ModCochain z = h1_modpn_generator(p, N, d);
        std::vector<Int> vec(static_cast<std::size_t>(d - 1), 0);
        for (const auto& [e, r] : z.coeffs)
            vec[static_cast<std::size_t>(basis_index(e))] = r.value;
        SparseIntMatrix a = differential_matrix(d, 1);
        bool cocycle = true;
        for (const Int& y : a.apply(vec))
            if (y % mod != 0) { cocycle = false; break; }
        // nonzero class: not in im(delta^0) + p^N Z^{d-1}
        SparseIntMatrix cob = SparseIntMatrix::hconcat(
            differential_matrix(d, 0), SparseIntMatrix::identity(d - 1).scaled(mod));
        bool nonzero = !solve_integer_system(cob, vec).has_value();
        rep.witnesses.push_back("generator " + z.to_string() +
                                (cocycle ? " is a cocycle mod p^N" : " FAILS cocycle test") +
                                (nonzero ? ", class nonzero" : ", class IS a coboundary"));
        ok = ok && cocycle && nonzero;
    }
    rep.pass = ok;
    return rep;
}

// closed-form reference for Ext in the free-abelian-groups source category:
// d = 1 gives Z at 0 and Z/l at 2l; prime powers d = p^l give Z/p in degrees
// i = 1 mod 2d; everything else vanishes
inline AbelianGroup franjou_pirashvili_reference(int d, int i) {
    if (d < 1 || i < 0) throw std::invalid_argument("franjou_pirashvili_reference: bad input");
    if (d == 1) {
        if (i == 0) return AbelianGroup(1);
        if (i % 2 == 0) return AbelianGroup::from_cyclic_orders(0, {Int(i / 2)});
        return AbelianGroup();
    }
    auto pp = prime_power_decomposition(d);
    if (pp && i % (2 * d) == 1) return AbelianGroup::from_cyclic_orders(0, {Int(pp->p)});
    return AbelianGroup();
}

// the two Ext^1 closed forms coincide
inline TheoremReport verify_ext1_comparison(int d) {
    if (d < 2) throw std::invalid_argument("verify_ext1_comparison: need d >= 2");
    TheoremReport rep;
    rep.theorem = "ext1_comparison";
    rep.params = {{"d", d}};
    AbelianGroup reference = franjou_pirashvili_reference(d, 1);
    AbelianGroup computed = homology_at(d, 1);
    rep.expected = reference.to_string_prime_power();
    rep.computed = computed.to_string_prime_power();
    rep.pass = (reference == computed);
    return rep;
}

}  // namespace symext
