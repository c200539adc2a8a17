#include <catch2/catch_amalgamated.hpp>

#include "oracles.hpp"
#include "symext/complex.hpp"

using namespace symext;

namespace {

Cochain make_cochain(int d, int k, std::initializer_list<std::pair<std::vector<int>, Int>> terms) {
    Cochain z(d, k);
    for (const auto& [e, c] : terms) z.add(BasisElement(d, e), c);
    return z;
}

}  // namespace

TEST_CASE("enumerate_basis") {
    auto b42 = enumerate_basis(4, 2);
    REQUIRE(b42.size() == 3);
    CHECK(b42[0].entries == std::vector<int>{1, 2});
    CHECK(b42[1].entries == std::vector<int>{1, 3});
    CHECK(b42[2].entries == std::vector<int>{2, 3});
    auto b0 = enumerate_basis(7, 0);
    REQUIRE(b0.size() == 1);
    CHECK(b0[0].entries.empty());
    auto b65 = enumerate_basis(6, 5);
    REQUIRE(b65.size() == 1);
    CHECK(b65[0].entries == std::vector<int>{1, 2, 3, 4, 5});
    CHECK(enumerate_basis(4, 4).empty());
    CHECK(enumerate_basis(4, 9).empty());
    for (int d = 1; d <= 10; ++d)
        for (int k = 0; k <= d - 1; ++k) {
            auto basis = enumerate_basis(d, k);
            CHECK(Int(static_cast<std::int64_t>(basis.size())) == binomial(d - 1, k));
            for (std::size_t i = 0; i < basis.size(); ++i)
                CHECK(basis_index(basis[i]) == static_cast<std::int64_t>(i));
        }
}

TEST_CASE("complement_element") {
    CHECK(complement_element(5, {1, 3}).entries == std::vector<int>{2, 4});
    CHECK(complement_element(4, {}).entries == std::vector<int>{1, 2, 3});
    CHECK(complement_element(3, {1, 2}).entries.empty());
    CHECK_THROWS_AS(complement_element(4, {5}), std::invalid_argument);
    CHECK_THROWS_AS(complement_element(4, {0}), std::invalid_argument);
}

TEST_CASE("differential on basis elements") {
    CHECK(differential(3, 0, BasisElement(3, {})) ==
          make_cochain(3, 1, {{{1}, -3}, {{2}, -3}}));
    CHECK(differential(3, 1, BasisElement(3, {1})) == make_cochain(3, 2, {{{1, 2}, 2}}));
    CHECK(differential(4, 1, BasisElement(4, {2})) ==
          make_cochain(4, 2, {{{1, 2}, -2}, {{2, 3}, 2}}));
    CHECK_THROWS_AS(differential(4, 1, BasisElement(3, {1})), std::invalid_argument);
}

TEST_CASE("differential_matrix") {
    auto m30 = differential_matrix(3, 0);
    CHECK(m30.rows == 2);
    CHECK(m30.cols == 1);
    CHECK(m30.get(0, 0) == -3);
    CHECK(m30.get(1, 0) == -3);
    auto m31 = differential_matrix(3, 1);
    CHECK(m31.rows == 1);
    CHECK(m31.cols == 2);
    CHECK(m31.get(0, 0) == 2);
    CHECK(m31.get(0, 1) == -2);
    // the top differential is the empty matrix
    auto m32 = differential_matrix(3, 2);
    CHECK(m32.rows == 0);
    CHECK(m32.cols == 1);
}

TEST_CASE("complex law and dimensions") {
    for (int d = 2; d <= 12; ++d) {
        Int alternating = 0;
        for (int k = 0; k <= d - 1; ++k) {
            CHECK(basis_rank(d, k) == static_cast<std::int64_t>(binomial(d - 1, k)));
            alternating += (k % 2 == 0 ? 1 : -1) * binomial(d - 1, k);
            if (k + 1 <= d - 1)
                CHECK(differential_matrix(d, k + 1).multiply(differential_matrix(d, k)).is_zero());
        }
        CHECK(alternating == 0);
    }
}

TEST_CASE("localized differential") {
    // C(2,1)_2 = 2
    auto m = localized_differential_matrix(2, 2, 3, 1);
    CHECK(m.get(0, 0) == 2);
    // column (-3, -3) vanishes mod 3
    auto m0 = localized_differential_matrix(3, 1, 3, 0);
    CHECK(m0.is_zero());
    for (int d = 2; d <= 8; ++d)
        for (std::int64_t p : {2, 3})
            for (int N = 1; N <= 2; ++N) {
                Int mod = int_pow(p, N);
                for (int k = 0; k + 1 <= d - 1; ++k)
                    CHECK(localized_differential_matrix(p, N, d, k + 1)
                              .multiply(localized_differential_matrix(p, N, d, k))
                              .reduced_mod(mod)
                              .is_zero());
            }
}

TEST_CASE("phi conjugates the reduced differential into the localized one") {
    CHECK(phi_matrix(2, 2, 4, 0).get(0, 0) == tilde_f(2, 2, 4).value);
    {
        auto phi = phi_matrix(2, 2, 4, 1);
        std::int64_t idx = basis_index(BasisElement(4, {2}));
        CHECK(phi.get(static_cast<int>(idx), static_cast<int>(idx)) == 1);
    }
    for (int d = 2; d <= 10; ++d)
        for (std::int64_t p : {2, 3, 5})
            for (int N = 1; N <= 3; ++N) {
                Int mod = int_pow(p, N);
                for (int k = 0; k <= d - 2; ++k) {
                    auto lhs = phi_matrix(p, N, d, k + 1)
                                   .multiply(differential_matrix(d, k))
                                   .reduced_mod(mod);
                    auto rhs = localized_differential_matrix(p, N, d, k)
                                   .multiply(phi_matrix(p, N, d, k))
                                   .reduced_mod(mod);
                    CHECK(lhs == rhs);
                }
            }
}

TEST_CASE("u_cochain and the top-degree identities") {
    CHECK(u_cochain(3, 2) == make_cochain(3, 1, {{{1}, 1}, {{2}, 1}}));
    CHECK(u_cochain(4, 2) == make_cochain(4, 2, {{{1, 3}, 1}, {{2, 3}, 1}}));
    CHECK(u_cochain(4, 3) == make_cochain(4, 2, {{{1, 2}, -1}, {{2, 3}, 1}}));
    CHECK_THROWS_AS(u_cochain(4, 1), std::invalid_argument);
    CHECK_THROWS_AS(u_cochain(4, 4), std::invalid_argument);

    // delta^{d-2}(<m>^c) = 2 (-1)^m <>^c
    for (int d = 2; d <= 12; ++d)
        for (int m = 1; m <= d - 1; ++m) {
            Cochain z(d, d - 2);
            z.add(complement_element(d, {m}), 1);
            Cochain expected(d, d - 1);
            expected.add(complement_element(d, {}), (m % 2 == 0) ? 2 : -2);
            CHECK(differential(z) == expected);
        }

    for (int d = 3; d <= 12; ++d) {
        for (int m = 2; m <= d - 1; ++m)
            CHECK(differential(u_cochain(d, m)).is_zero_cochain());

        // 3 u_2 = -delta(<1 2>^c)
        {
            Cochain w(d, d - 3);
            w.add(complement_element(d, {1, 2}), -1);
            CHECK(differential(w) == Int(3) * u_cochain(d, 2));
        }
        // u_3 = -delta(<1 2>^c + <2 3>^c + <1 3>^c)
        if (d >= 4) {
            Cochain w(d, d - 3);
            w.add(complement_element(d, {1, 2}), -1);
            w.add(complement_element(d, {2, 3}), -1);
            w.add(complement_element(d, {1, 3}), -1);
            CHECK(differential(w) == u_cochain(d, 3));
        }
        // u_{m+1} - u_m = (-1)^{m+1} delta(<1 m>^c + <1 m+1>^c + (-1)^m <m m+1>^c)
        for (int m = 3; m + 1 <= d - 1; ++m) {
            Cochain w(d, d - 3);
            int sign_m1 = (m % 2 == 0) ? -1 : 1;  // (-1)^{m+1}
            int sign_m = -sign_m1;                // (-1)^m
            w.add(complement_element(d, {1, m}), sign_m1);
            w.add(complement_element(d, {1, m + 1}), sign_m1);
            w.add(complement_element(d, {m, m + 1}), sign_m1 * sign_m);
            CHECK(differential(w) == u_cochain(d, m + 1) - u_cochain(d, m));
        }
    }
}

TEST_CASE("h1_generator") {
    auto h4 = h1_generator(4);
    CHECK(h4 == make_cochain(4, 1, {{{1}, 2}, {{2}, 3}, {{3}, 2}}));
    CHECK(h4.to_string() == "2*<1> + 3*<2> + 2*<3>");
    CHECK(h1_generator(2) == make_cochain(2, 1, {{{1}, 1}}));
    auto h9 = h1_generator(9);
    std::vector<Int> expected9{3, 12, 28, 42, 42, 28, 12, 3};
    for (int k = 1; k <= 8; ++k)
        CHECK(h9.coeffs.at(BasisElement(9, {k})) == expected9[static_cast<std::size_t>(k - 1)]);
    CHECK_THROWS_AS(h1_generator(6), std::invalid_argument);
    for (int d : {2, 3, 4, 8, 9, 25})
        CHECK(differential(h1_generator(d)).is_zero_cochain());
}

TEST_CASE("h2_generator") {
    CHECK(h2_generator(3, 2, 0, 1) == make_cochain(3, 2, {{{1, 2}, 1}}));
    CHECK(h2_generator(6, 2, 1, 1) ==
          make_cochain(6, 2, {{{1, 2}, -1}, {{2, 3}, 2}, {{2, 4}, 3}, {{2, 5}, 2}}));
    CHECK(h2_generator(4, 3, 0, 1) == make_cochain(4, 2, {{{1, 2}, 1}, {{1, 3}, 1}}));
    CHECK_THROWS_AS(h2_generator(7, 2, 0, 1), std::invalid_argument);

    for (auto [d, p, n, m] : std::vector<std::array<int, 4>>{
             {3, 2, 0, 1}, {6, 2, 1, 1}, {4, 3, 0, 1}, {12, 2, 2, 1}, {12, 3, 1, 1}, {10, 3, 0, 2}}) {
        Cochain y = h2_generator(d, p, n, m);
        CHECK(differential(y).is_zero_cochain());
        std::int64_t pn = 1;
        for (int i = 0; i < n; ++i) pn *= p;
        CHECK(Int(p) * y == differential(d, 1, BasisElement(d, {static_cast<int>(pn)})));
    }
}

TEST_CASE("h1_modpn_generator") {
    auto g1 = h1_modpn_generator(2, 1, 3);
    REQUIRE(g1.coeffs.size() == 1);
    CHECK(g1.coeffs.at(BasisElement(3, {1})) == Residue(1, 2));
    auto g2 = h1_modpn_generator(2, 2, 6);
    REQUIRE(g2.coeffs.size() == 1);
    CHECK(g2.coeffs.at(BasisElement(6, {2})) == Residue(2, 4));
    // (1/2)(C(4,1), C(4,2), C(4,3)) = (2,3,2), which reduces to <2> mod 2
    auto g3 = h1_modpn_generator(2, 1, 4);
    REQUIRE(g3.coeffs.size() == 1);
    CHECK(g3.coeffs.at(BasisElement(4, {2})) == Residue(1, 2));
    auto g4 = h1_modpn_generator(2, 2, 4);
    CHECK(g4.coeffs.at(BasisElement(4, {1})) == Residue(2, 4));
    CHECK(g4.coeffs.at(BasisElement(4, {2})) == Residue(3, 4));
    CHECK(g4.coeffs.at(BasisElement(4, {3})) == Residue(2, 4));
    CHECK_THROWS_AS(h1_modpn_generator(3, 1, 7), std::invalid_argument);
}

TEST_CASE("complex handle memoizes matrices, optionally reduced") {
    ComplexHandle h(5);
    CHECK(h.dim(2) == 6);
    CHECK(&h.matrix(1) == &h.matrix(1));
    CHECK(h.matrix(1) == differential_matrix(5, 1));

    ComplexHandle hm(5, 2, 2);
    REQUIRE(hm.modulus().has_value());
    CHECK(*hm.modulus() == 4);
    CHECK(hm.matrix(0) == differential_matrix(5, 0).reduced_mod(4));
}

TEST_CASE("exterior cross-effect dimensions") {
    CHECK(exterior_cross_effect_dims(2) == std::vector<std::int64_t>{0, 1});
    CHECK(exterior_cross_effect_dims(1) == std::vector<std::int64_t>{1});
    CHECK(exterior_cross_effect_dims(4) == std::vector<std::int64_t>{0, 0, 0, 1});
}

TEST_CASE("cochain serialization") {
    Cochain z = make_cochain(4, 2, {{{1, 2}, -1}, {{2, 3}, 2}});
    CHECK(z.to_string() == "-1*<1 2> + 2*<2 3>");
    CHECK(Cochain(4, 1).to_string() == "0");
    Cochain e(5, 0);
    e.add(BasisElement(5, {}), 7);
    CHECK(e.to_string() == "7*<>");
}
