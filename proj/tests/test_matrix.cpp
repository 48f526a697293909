#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "ltomo/matrix.hpp"
#include "test_util.hpp"

using namespace ltomo;

namespace {

RationalMatrix rand_matrix(ltest::Rng& rng, std::size_t r, std::size_t c) {
    RationalMatrix m(r, c);
    for (std::size_t i = 0; i < r; ++i)
        for (std::size_t j = 0; j < c; ++j) m(i, j) = ltest::rand_rational(rng, -3, 3, 4);
    return m;
}

}  // namespace

TEST_CASE("solve_square recovers known solutions exactly") {
    ltest::Rng rng(7);
    for (int iter = 0; iter < 50; ++iter) {
        std::size_t n = 1 + iter % 6;
        RationalMatrix m = rand_matrix(rng, n, n);
        RatVec x(n);
        for (auto& v : x) v = ltest::rand_rational(rng, -5, 5, 6);
        try {
            RatVec got = solve_square(m, m * x);
            CHECK(got == x);
        } catch (const SingularSystem&) {
            CHECK(rank(m) < n);
        }
    }
}

TEST_CASE("solve_square throws on singular input") {
    RationalMatrix m(2, 2);
    m(0, 0) = 1;
    m(0, 1) = 2;
    m(1, 0) = 2;
    m(1, 1) = 4;
    CHECK_THROWS_AS(solve_square(m, RatVec{Rational(1), Rational(1)}), SingularSystem);
}

TEST_CASE("rank of structured matrices") {
    CHECK(rank(RationalMatrix::identity(4)) == 4);
    RationalMatrix ones(3, 3);
    for (std::size_t i = 0; i < 3; ++i)
        for (std::size_t j = 0; j < 3; ++j) ones(i, j) = 1;
    CHECK(rank(ones) == 1);
}

TEST_CASE("nullspace vectors are in the kernel and count matches rank") {
    ltest::Rng rng(13);
    for (int iter = 0; iter < 40; ++iter) {
        std::size_t r = 1 + iter % 4, c = 1 + (iter * 3) % 6;
        RationalMatrix m = rand_matrix(rng, r, c);
        auto basis = nullspace(m);
        CHECK(basis.size() == c - rank(m));
        for (const auto& v : basis) CHECK(is_zero(m * v));
    }
}

TEST_CASE("IncrementalBasis accepts exactly independent vectors") {
    IncrementalBasis b(3);
    CHECK(b.try_add({Rational(1), Rational(0), Rational(0)}));
    CHECK(b.try_add({Rational(1), Rational(1), Rational(0)}));
    CHECK_FALSE(b.try_add({Rational(3), Rational(2), Rational(0)}));
    CHECK(b.try_add({Rational(0), Rational(0), Rational(5)}));
    CHECK(b.size() == 3);
}

TEST_CASE("transpose and multiplication are consistent") {
    ltest::Rng rng(17);
    RationalMatrix a = rand_matrix(rng, 3, 4), b = rand_matrix(rng, 4, 2);
    RationalMatrix ab = a * b;
    RationalMatrix btat = b.transpose() * a.transpose();
    CHECK(ab.transpose() == btat);
}
