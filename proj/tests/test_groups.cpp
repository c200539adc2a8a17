#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "symext/abelian_group.hpp"

using namespace symext;

namespace {

AbelianGroup cyc(std::initializer_list<int> orders, std::int64_t rank = 0) {
    std::vector<Int> v;
    for (int o : orders) v.push_back(o);
    return AbelianGroup::from_cyclic_orders(rank, v);
}

AbelianGroup random_group(std::mt19937_64& rng) {
    std::uniform_int_distribution<int> rank(0, 2), pieces(0, 3), order(2, 24);
    std::vector<Int> v;
    int n = pieces(rng);
    for (int i = 0; i < n; ++i) v.push_back(order(rng));
    return AbelianGroup::from_cyclic_orders(rank(rng), v);
}

}  // namespace

TEST_CASE("canonical form") {
    AbelianGroup g = cyc({4, 6});
    CHECK(g.torsion == std::vector<Int>{2, 12});
    CHECK(cyc({1, 1}).is_trivial());
    CHECK(cyc({2, 3}).torsion == std::vector<Int>{6});
    CHECK(cyc({10}).to_string_divisor_chain() == "Z/10");
    CHECK(cyc({10}).to_string_prime_power() == "Z/2 + Z/5");
    CHECK(cyc({}).to_string_prime_power() == "0");
    CHECK(AbelianGroup(1).to_string_prime_power() == "Z");
    CHECK(AbelianGroup(3).to_string_prime_power() == "Z^3");
    CHECK(cyc({2, 4}, 1).to_string_prime_power() == "Z + Z/2 + Z/4");
}

TEST_CASE("tensor and tor examples") {
    CHECK(group_tensor(cyc({2}), cyc({3})).is_trivial());
    CHECK(group_tor(cyc({4}), cyc({6})) == cyc({2}));
    CHECK(group_tensor(cyc({2}, 1), cyc({2})) == cyc({2, 2}));
    CHECK(group_tor(AbelianGroup(5), cyc({7})).is_trivial());
    CHECK(group_tensor(AbelianGroup(2), AbelianGroup(3)) == AbelianGroup(6));
}

TEST_CASE("tensor and tor are commutative and distribute over direct sums") {
    std::mt19937_64 rng(424242);
    for (int trial = 0; trial < 200; ++trial) {
        AbelianGroup a = random_group(rng), b = random_group(rng), c = random_group(rng);
        CHECK(group_tensor(a, b) == group_tensor(b, a));
        CHECK(group_tor(a, b) == group_tor(b, a));
        CHECK(group_tensor(a + b, c) == group_tensor(a, c) + group_tensor(b, c));
        CHECK(group_tor(a + b, c) == group_tor(a, c) + group_tor(b, c));
    }
}

TEST_CASE("graded groups") {
    GradedGroup g;
    g.set(1, cyc({2}));
    g.add(1, cyc({3}));
    CHECK(g.at(1) == cyc({6}));
    CHECK(g.at(5).is_trivial());
    g.set(1, AbelianGroup());
    CHECK(g.parts.empty());
}
