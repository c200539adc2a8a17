#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "symext/kunneth.hpp"

using namespace symext;

namespace {

AbelianGroup cyc(std::initializer_list<int> orders) {
    std::vector<Int> v;
    for (int o : orders) v.push_back(o);
    return AbelianGroup::from_cyclic_orders(0, v);
}

GradedGroup random_graded(std::mt19937_64& rng) {
    std::uniform_int_distribution<int> deg(0, 3), pieces(0, 2), order(2, 12), rank(0, 1);
    GradedGroup g;
    int n = pieces(rng) + 1;
    for (int i = 0; i < n; ++i) {
        std::vector<Int> v;
        for (int j = pieces(rng); j > 0; --j) v.push_back(order(rng));
        g.add(deg(rng), AbelianGroup::from_cyclic_orders(rank(rng), v));
    }
    return g;
}

}  // namespace

TEST_CASE("compositions") {
    auto c42 = compositions(4, 2);
    REQUIRE(c42.size() == 3);
    CHECK(c42[0].parts == std::vector<int>{1, 3});
    CHECK(c42[1].parts == std::vector<int>{2, 2});
    CHECK(c42[2].parts == std::vector<int>{3, 1});
    CHECK(compositions(7, 1).size() == 1);
    CHECK(compositions(7, 1)[0].parts == std::vector<int>{7});
    CHECK(compositions(3, 3)[0].parts == std::vector<int>{1, 1, 1});
    CHECK(compositions(2, 3).empty());
    for (int d = 1; d <= 10; ++d)
        for (int c = 1; c <= d; ++c)
            CHECK(Int(static_cast<std::int64_t>(compositions(d, c).size())) ==
                  binomial(d - 1, c - 1));
}

TEST_CASE("kunneth product") {
    GradedGroup z2_at_1;
    z2_at_1.set(1, cyc({2}));
    GradedGroup square = kunneth_product(z2_at_1, z2_at_1);
    CHECK(square.at(1) == cyc({2}));
    CHECK(square.at(2) == cyc({2}));
    CHECK(square.parts.size() == 2);

    GradedGroup unit;
    unit.set(0, AbelianGroup(1));
    GradedGroup h = homology_all(5);
    CHECK(kunneth_product(unit, h) == h);
    CHECK(kunneth_product(h, unit) == h);
}

TEST_CASE("kunneth product is associative and commutative") {
    std::mt19937_64 rng(5150);
    for (int trial = 0; trial < 80; ++trial) {
        GradedGroup a = random_graded(rng), b = random_graded(rng), c = random_graded(rng);
        CHECK(kunneth_product(a, b) == kunneth_product(b, a));
        CHECK(kunneth_product(kunneth_product(a, b), c) ==
              kunneth_product(a, kunneth_product(b, c)));
    }
}

TEST_CASE("tensor-square results") {
    {
        GradedGroup g = ext_tensorpower_sd(2, 2);
        CHECK(g.at(0) == AbelianGroup(1));
        CHECK(g.parts.size() == 1);
    }
    {
        GradedGroup g = ext_tensorpower_sd(2, 3);
        CHECK(g.at(1) == cyc({2, 2}));
        CHECK(g.parts.size() == 1);
    }
    {
        GradedGroup g = ext_tensorpower_sd(2, 4);
        CHECK(g.at(1) == cyc({3, 3, 2}));
        CHECK(g.at(2) == cyc({2, 2, 2}));
        CHECK(g.parts.size() == 2);
    }
    {
        GradedGroup g = ext_tensorpower_sd(2, 5);
        CHECK(g.at(1) == cyc({2, 2}));
        CHECK(g.at(2) == cyc({3, 3, 2, 2}));
        CHECK(g.at(3) == cyc({2, 2, 2, 2}));
        CHECK(g.parts.size() == 3);
    }
    CHECK(ext_tensorpower_sd(1, 5) == homology_all(5));
}

TEST_CASE("tensor-power results are torsion except on the diagonal") {
    for (int c = 1; c <= 4; ++c)
        for (int d = 2; d <= 6; ++d) {
            GradedGroup g = ext_tensorpower_sd(c, d);
            std::int64_t total_rank = 0;
            for (const auto& [deg, grp] : g.parts) total_rank += grp.rank;
            if (c == d) {
                CHECK(total_rank == 1);
                CHECK(g.at(0).rank == 1);
            } else {
                CHECK(total_rank == 0);
            }
        }
}

TEST_CASE("exterior-power closed form") {
    {
        GradedGroup g = ext_tensorpower_lambda(2, 4);
        CHECK(g.at(2) == AbelianGroup(3));
        CHECK(g.parts.size() == 1);
    }
    for (int d = 1; d <= 6; ++d) {
        GradedGroup g = ext_tensorpower_lambda(1, d);
        CHECK(g.at(d - 1) == AbelianGroup(1));
    }
    CHECK(ext_tensorpower_lambda(3, 2).parts.empty());
    for (int d = 1; d <= 12; ++d)
        for (int c = 1; c <= d; ++c) {
            GradedGroup g = ext_tensorpower_lambda(c, d);
            CHECK(Int(g.at(d - c).rank) == binomial(d - 1, c - 1));
            CHECK(g.at(d - c).torsion.empty());
            CHECK(g.parts.size() == 1);
        }
}

TEST_CASE("exterior concentration matches the cross-effect dimensions") {
    for (int d = 1; d <= 8; ++d) {
        auto dims = exterior_cross_effect_dims(d);
        GradedGroup g = ext_tensorpower_lambda(1, d);
        for (int k = 0; k < d; ++k)
            CHECK(g.at(k).rank == dims[static_cast<std::size_t>(k)]);
    }
}
