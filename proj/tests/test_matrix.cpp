#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <random>

#include "cocyclelab/matrix.hpp"

using namespace cocyclelab;

namespace {

IntMat from_rows(std::vector<std::vector<long long>> rows) {
    IntMat m(rows.size(), rows.empty() ? 0 : rows[0].size());
    for (std::size_t i = 0; i < rows.size(); ++i)
        for (std::size_t j = 0; j < rows[i].size(); ++j) m.at(i, j) = rows[i][j];
    return m;
}

bool factorization_holds(const IntMat& m, const SnfResult& f) {
    IntMat d = f.u.mul(m).mul(f.v);
    for (std::size_t i = 0; i < d.rows(); ++i)
        for (std::size_t j = 0; j < d.cols(); ++j) {
            BigInt expect = (i == j && i < f.diag.size()) ? f.diag[i] : BigInt(0);
            if (d.at(i, j) != expect) return false;
        }
    return true;
}

bool inverses_ok(const SnfResult& f) {
    return f.u.mul(f.uinv) == IntMat::identity(f.u.rows()) &&
           f.v.mul(f.vinv) == IntMat::identity(f.v.rows());
}

} // namespace

TEST_CASE("identity matrix is its own Smith form") {
    IntMat m = IntMat::identity(4);
    SnfResult f = smith_normal_form(m);
    CHECK(f.rank == 4);
    for (int i = 0; i < 4; ++i) CHECK(f.diag[i] == 1);
    CHECK(factorization_holds(m, f));
}

TEST_CASE("textbook 2x2 example") {
    IntMat m = from_rows({{2, 4}, {6, 8}});
    SnfResult f = smith_normal_form(m);
    CHECK(f.rank == 2);
    CHECK(f.diag[0] == 2);
    CHECK(f.diag[1] == 4);
    CHECK(factorization_holds(m, f));
    CHECK(inverses_ok(f));
}

TEST_CASE("zero matrix has rank zero") {
    IntMat m(3, 5);
    SnfResult f = smith_normal_form(m);
    CHECK(f.rank == 0);
    for (const BigInt& d : f.diag) CHECK(d == 0);
}

TEST_CASE("divisibility chain and trackers on random matrices") {
    std::mt19937 rng(7);
    for (int trial = 0; trial < 50; ++trial) {
        std::size_t r = 1 + rng() % 5, c = 1 + rng() % 5;
        IntMat m(r, c);
        for (std::size_t i = 0; i < r; ++i)
            for (std::size_t j = 0; j < c; ++j) m.at(i, j) = (long long)(rng() % 21) - 10;
        SnfResult f = smith_normal_form(m);
        CHECK(factorization_holds(m, f));
        CHECK(inverses_ok(f));
        for (std::size_t i = 0; i + 1 < f.rank; ++i) {
            CHECK(f.diag[i] > 0);
            CHECK(f.diag[i + 1] % f.diag[i] == 0);
        }
        for (std::size_t i = f.rank; i < f.diag.size(); ++i) CHECK(f.diag[i] == 0);
    }
}

TEST_CASE("large entries fall back to multiprecision") {
    IntMat m(2, 2);
    m.at(0, 0) = BigInt("123456789012345678901234567890");
    m.at(0, 1) = 2;
    m.at(1, 0) = 3;
    m.at(1, 1) = BigInt("987654321098765432109876543210");
    SnfResult f = smith_normal_form(m);
    CHECK(f.rank == 2);
    CHECK(factorization_holds(m, f));
}

TEST_CASE("snf_solve finds integer solutions exactly when they exist") {
    IntMat m = from_rows({{2, 0}, {0, 3}});
    SnfResult f = smith_normal_form(m);
    auto sol = snf_solve(f, 2, 2, {4, 9});
    REQUIRE(sol.has_value());
    CHECK((*sol)[0] == 2);
    CHECK((*sol)[1] == 3);
    CHECK_FALSE(snf_solve(f, 2, 2, {1, 0}).has_value());

    // underdetermined system: any solution must verify
    IntMat m2 = from_rows({{1, 2, 3}});
    SnfResult f2 = smith_normal_form(m2);
    auto sol2 = snf_solve(f2, 1, 3, {7});
    REQUIRE(sol2.has_value());
    BigInt acc = 0;
    for (int j = 0; j < 3; ++j) acc += m2.at(0, j) * (*sol2)[j];
    CHECK(acc == 7);
}

TEST_CASE("rational rank, kernel and solve") {
    RatMat m(2, 3);
    m.at(0, 0) = Rat(1);
    m.at(0, 1) = Rat(2);
    m.at(0, 2) = Rat(3);
    m.at(1, 0) = Rat(2);
    m.at(1, 1) = Rat(4);
    m.at(1, 2) = Rat(6);
    CHECK(m.rank() == 1);
    auto ker = m.kernel_basis();
    CHECK(ker.size() == 2);
    for (const auto& k : ker) {
        Rat acc;
        for (int j = 0; j < 3; ++j) acc += m.at(0, j) * k[j];
        CHECK(acc.is_zero());
    }
    auto sol = m.solve({Rat(1), Rat(2)});
    REQUIRE(sol.has_value());
    Rat acc;
    for (int j = 0; j < 3; ++j) acc += m.at(0, j) * (*sol)[j];
    CHECK(acc == Rat(1));
    CHECK_FALSE(m.solve({Rat(1), Rat(3)}).has_value());
}

TEST_CASE("deterministic output for a fixed input") {
    IntMat m = from_rows({{6, 10, 15}, {10, 15, 6}, {15, 6, 10}});
    SnfResult a = smith_normal_form(m);
    SnfResult b = smith_normal_form(m);
    CHECK(a.diag == b.diag);
    CHECK(a.u == b.u);
    CHECK(a.v == b.v);
}
