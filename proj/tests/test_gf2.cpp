#include <random>

#include "doctest.h"
#include "mcf/gf2.hpp"
#include "mcf/errors.hpp"
#include "oracles.hpp"

using namespace mcf;
using namespace mcf::gf2;

TEST_SUITE("gf2") {

TEST_CASE("matrix basics: storage, multiply, rank") {
    Matrix m(3, 4);
    CHECK(m.is_zero());
    m.set(0, 0, true);
    m.set(1, 2, true);
    m.set(2, 3, true);
    m.set(1, 2, false);
    CHECK(m.get(0, 0));
    CHECK_FALSE(m.get(1, 2));
    CHECK(m.rank() == 2);

    // Multiplication against a hand-computed product (mod 2).
    Matrix a(2, 3), b(3, 2);
    // a = [1 1 0; 0 1 1], b = [1 0; 1 1; 0 1]
    a.set(0, 0, true); a.set(0, 1, true); a.set(1, 1, true); a.set(1, 2, true);
    b.set(0, 0, true); b.set(1, 0, true); b.set(1, 1, true); b.set(2, 1, true);
    const Matrix c = a.multiply(b);
    // c = [0 1; 1 0] over GF(2).
    CHECK_FALSE(c.get(0, 0));
    CHECK(c.get(0, 1));
    CHECK(c.get(1, 0));
    CHECK_FALSE(c.get(1, 1));

    // Rank of a random matrix agrees with exhaustive kernel counting.
    std::mt19937_64 rng(5);
    for (int trial = 0; trial < 25; ++trial) {
        const int rows = 1 + int(rng() % 8), cols = 1 + int(rng() % 8);
        Matrix x(rows, cols);
        for (int i = 0; i < rows; ++i)
            for (int j = 0; j < cols; ++j) x.set(i, j, rng() & 1u);
        CHECK(x.rank() == oracle::image_dim(x));
    }
}

TEST_CASE("wide matrices exercise multi-word rows") {
    // 130 columns spans three 64-bit words per row.
    Matrix wide(2, 130);
    wide.set(0, 0, true);
    wide.set(0, 64, true);
    wide.set(0, 129, true);
    wide.set(1, 129, true);
    CHECK(wide.rank() == 2);
    Matrix pick(130, 1);
    pick.set(129, 0, true);
    const Matrix prod = wide.multiply(pick);
    CHECK(prod.get(0, 0));
    CHECK(prod.get(1, 0));
}

TEST_CASE("complex validation enforces shapes and dd = 0") {
    GradedComplex cx;
    cx.dims = {{0, 2}, {1, 2}, {2, 1}};
    cx.diff[0] = Matrix(2, 2);
    cx.diff[1] = Matrix(1, 2);
    cx.diff[0].set(0, 0, true);
    cx.diff[0].set(1, 0, true);
    cx.diff[1].set(0, 0, true);
    cx.diff[1].set(0, 1, true);  // d1 d0 = [1+1] = 0
    CHECK_NOTHROW(validate_complex(cx));
    CHECK(cohomology_dims(cx) == oracle::cohomology_brute(cx));

    GradedComplex bad = cx;
    bad.diff[1].set(0, 1, false);  // now d1 d0 has a set bit
    CHECK_THROWS_AS(validate_complex(bad), ValidationError);

    GradedComplex misshapen = cx;
    misshapen.diff[0] = Matrix(3, 2);  // rows must equal dims[1]
    CHECK_THROWS_AS(validate_complex(misshapen), ValidationError);
}

TEST_CASE("cohomology matches exhaustive enumeration on random complexes") {
    std::mt19937_64 rng(0x5eed);
    for (int trial = 0; trial < 100; ++trial) {
        const oracle::RandomComplex rc = oracle::random_complex(rng);
        CHECK_NOTHROW(validate_complex(rc.cx));
        const auto fast = cohomology_dims(rc.cx);
        CHECK(fast == oracle::cohomology_brute(rc.cx));
        CHECK(fast == rc.expected);
    }
}

} // TEST_SUITE
