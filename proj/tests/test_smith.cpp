#include <catch2/catch_amalgamated.hpp>

#include "oracles.hpp"
#include "symext/complex.hpp"
#include "symext/smith.hpp"

using namespace symext;

namespace {

SparseIntMatrix from_dense(const std::vector<std::vector<Int>>& rows) {
    SparseIntMatrix m(static_cast<int>(rows.size()),
                      rows.empty() ? 0 : static_cast<int>(rows[0].size()));
    for (std::size_t i = 0; i < rows.size(); ++i)
        for (std::size_t j = 0; j < rows[i].size(); ++j)
            if (rows[i][j] != 0) m.set(static_cast<int>(i), static_cast<int>(j), rows[i][j]);
    return m;
}

SparseIntMatrix diag_matrix(int rows, int cols, const std::vector<Int>& diag) {
    SparseIntMatrix m(rows, cols);
    for (std::size_t i = 0; i < diag.size(); ++i)
        m.set(static_cast<int>(i), static_cast<int>(i), diag[i]);
    return m;
}

}  // namespace

TEST_CASE("smith normal form examples") {
    auto f = smith_normal_form(from_dense({{2, 4}, {6, 8}}));
    CHECK(f.diagonal == std::vector<Int>{2, 4});
    CHECK(f.rank == 2);

    auto zero = smith_normal_form(SparseIntMatrix(3, 4));
    CHECK(zero.diagonal.empty());
    CHECK(zero.rank == 0);

    auto ident = smith_normal_form(SparseIntMatrix::identity(5));
    CHECK(ident.diagonal == std::vector<Int>(5, 1));
}

TEST_CASE("smith agrees with the dense oracle and transforms are exact") {
    std::mt19937_64 rng(20250809);
    for (int trial = 0; trial < 150; ++trial) {
        SparseIntMatrix a = oracles::random_sparse(rng, 40, 0.2, 50);
        SmithForm f = smith_normal_form(a, true);
        // divisor chain
        for (std::size_t i = 0; i + 1 < f.diagonal.size(); ++i)
            CHECK(f.diagonal[i + 1] % f.diagonal[i] == 0);
        // dense naive oracle
        CHECK(f.diagonal == oracles::dense_smith_diagonal(oracles::to_dense(a)));
        // U*A*V = D exactly
        REQUIRE(f.u.has_value());
        REQUIRE(f.v.has_value());
        CHECK(f.u->multiply(a).multiply(*f.v) == diag_matrix(a.rows, a.cols, f.diagonal));
    }
}

TEST_CASE("matrix_rank matches smith rank") {
    std::mt19937_64 rng(7);
    for (int trial = 0; trial < 60; ++trial) {
        SparseIntMatrix a = oracles::random_sparse(rng, 25, 0.3, 30);
        CHECK(matrix_rank(a) == smith_normal_form(a).rank);
    }
}

TEST_CASE("solve_integer_system") {
    auto a = from_dense({{2}});
    auto x = solve_integer_system(a, {4});
    REQUIRE(x.has_value());
    CHECK((*x)[0] == 2);
    CHECK(!solve_integer_system(a, {3}).has_value());

    // delta^1 for d=3 maps <1> to 2<1 2>
    SparseIntMatrix d1 = differential_matrix(3, 1);
    auto sol = solve_integer_system(d1, {2});
    REQUIRE(sol.has_value());
    CHECK(d1.apply(*sol) == std::vector<Int>{2});

    std::mt19937_64 rng(99);
    for (int trial = 0; trial < 60; ++trial) {
        SparseIntMatrix a2 = oracles::random_sparse(rng, 12, 0.4, 9);
        std::vector<Int> x0(static_cast<std::size_t>(a2.cols));
        std::uniform_int_distribution<int> entry(-5, 5);
        for (auto& v : x0) v = entry(rng);
        std::vector<Int> b = a2.apply(x0);
        auto got = solve_integer_system(a2, b);
        REQUIRE(got.has_value());
        CHECK(a2.apply(*got) == b);
    }
}

TEST_CASE("kernel_basis spans the kernel") {
    std::mt19937_64 rng(31);
    for (int trial = 0; trial < 40; ++trial) {
        SparseIntMatrix a = oracles::random_sparse(rng, 15, 0.3, 12);
        SparseIntMatrix k = kernel_basis(a);
        CHECK(k.cols == a.cols - smith_normal_form(a).rank);
        if (k.cols > 0) CHECK(a.multiply(k).is_zero());
    }
}

TEST_CASE("column_space_order") {
    // any column of A has order 1 in the cokernel
    auto a = from_dense({{2, 0}, {0, 3}});
    auto o1 = column_space_order(a, {2, 0});
    REQUIRE(o1.has_value());
    CHECK(*o1 == 1);
    auto o2 = column_space_order(a, {1, 1});
    REQUIRE(o2.has_value());
    CHECK(*o2 == 6);
    auto a2 = from_dense({{0}, {2}});
    CHECK(!column_space_order(a2, {1, 0}).has_value());
}
