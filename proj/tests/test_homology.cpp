#include <catch2/catch_amalgamated.hpp>

#include "symext/homology.hpp"

using namespace symext;

namespace {

AbelianGroup cyc(std::initializer_list<int> orders) {
    std::vector<Int> v;
    for (int o : orders) v.push_back(o);
    return AbelianGroup::from_cyclic_orders(0, v);
}

}  // namespace

TEST_CASE("homology_at known values") {
    CHECK(homology_at(3, 1) == cyc({3}));
    CHECK(homology_at(3, 2) == cyc({2}));
    CHECK(homology_at(5, 3).is_trivial());
    CHECK(homology_at(5, 4) == cyc({2}));
}

TEST_CASE("homology_all rows") {
    GradedGroup d1 = homology_all(1);
    CHECK(d1.at(0) == AbelianGroup(1));
    CHECK(d1.parts.size() == 1);

    GradedGroup d6 = homology_all(6);
    CHECK(d6.at(0).is_trivial());
    CHECK(d6.at(1).is_trivial());
    CHECK(d6.at(2) == cyc({10}));
    CHECK(d6.at(3) == cyc({6}));
    CHECK(d6.at(4).is_trivial());
    CHECK(d6.at(5) == cyc({2}));

    GradedGroup d8 = homology_all(8);
    CHECK(d8.at(1) == cyc({2}));
    CHECK(d8.at(2) == cyc({7}));
    CHECK(d8.at(3) == cyc({2}));
    CHECK(d8.at(4) == cyc({2}));
    CHECK(d8.at(5) == cyc({2}));
    CHECK(d8.at(6).is_trivial());
    CHECK(d8.at(7) == cyc({2}));
}

TEST_CASE("finiteness and vanishing") {
    for (int d = 2; d <= 10; ++d) {
        GradedGroup g = homology_all(d);
        for (const auto& [deg, grp] : g.parts) CHECK(grp.rank == 0);
        Homology h(d);
        CHECK(h.at(d).is_trivial());
        CHECK(h.at(d + 3).is_trivial());
    }
}

TEST_CASE("first cohomology equals the binomial row gcd") {
    for (int d = 2; d <= 24; ++d) {
        Int g = binomial_row_gcd(d);
        AbelianGroup expected = (g == 1) ? AbelianGroup() : AbelianGroup::from_cyclic_orders(0, {g});
        CHECK(homology_at(d, 1) == expected);
    }
}

TEST_CASE("class_order") {
    {
        Homology h(4);
        auto o = h.class_order(1, h1_generator(4));
        REQUIRE(o.has_value());
        CHECK(*o == 2);
    }
    {
        Homology h(6);
        auto o = h.class_order(2, h2_generator(6, 2, 1, 1));
        REQUIRE(o.has_value());
        CHECK(*o == 2);
    }
    {
        // a coboundary has order 1
        Homology h(5);
        Cochain b = differential(5, 1, BasisElement(5, {2}));
        auto o = h.class_order(2, b);
        REQUIRE(o.has_value());
        CHECK(*o == 1);
    }
    {
        Homology h(4);
        Cochain not_cocycle(4, 1);
        not_cocycle.add(BasisElement(4, {1}), 1);
        CHECK_THROWS_AS(h.class_order(1, not_cocycle), std::invalid_argument);
    }
}

TEST_CASE("homology mod p^N") {
    CHECK(homology_mod_pn(2, 1, 3, 1) == std::vector<Int>{2});
    CHECK(homology_mod_pn(2, 3, 4, 1) == std::vector<Int>{2});
    CHECK(homology_mod_pn(2, 2, 7, 1).empty());
    // boundary degrees
    CHECK(homology_mod_pn(2, 1, 3, 0).empty());
    CHECK(homology_mod_pn(2, 1, 3, 2) == std::vector<Int>{2});
    CHECK(homology_mod_pn(3, 1, 3, 2).empty());
    CHECK(homology_mod_pn(2, 2, 1, 0) == std::vector<Int>{4});  // H^0 = Z reduced mod 4
}

TEST_CASE("universal coefficient cardinality identity") {
    for (std::int64_t p : {2, 3})
        for (int N = 1; N <= 2; ++N)
            for (int d = 2; d <= 10; ++d) {
                Homology h(d);
                Int mod = int_pow(p, N);
                Int lhs = 1;
                for (const Int& o : homology_mod_pn(h, p, N, 1)) lhs *= o;
                Int rhs = 1;
                for (const Int& t : h.at(1).torsion) rhs *= gcd(t, mod);
                for (const Int& t : h.at(2).torsion) rhs *= gcd(t, mod);
                CHECK(lhs == rhs);
            }
}
