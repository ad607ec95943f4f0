// SPDX-License-Identifier: Apache-2.0
#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "rieszq/numeric.hpp"
#include "rieszq/rng.hpp"
#include "test_util.hpp"

using namespace rieszq;

namespace {

ComplexMatrix random_unit_matrix(std::int64_t n, CounterRng& rng) {
    ComplexMatrix m(n, n);
    for (std::int64_t i = 0; i < n; ++i)
        for (std::int64_t j = 0; j < n; ++j)
            m.at(i, j) = std::polar(1.0, 2.0 * M_PI * test::rand01(rng));
    return m;
}

}  // namespace

TEST_CASE("singular values of small closed-form matrices") {
    SUBCASE("scaled unitary") {
        ComplexMatrix m(2, 2, {1.0, 1.0, 1.0, -1.0});
        auto sv = singular_values(m);
        CHECK(sv[0] == doctest::Approx(std::sqrt(2.0)).epsilon(1e-14));
        CHECK(sv[1] == doctest::Approx(std::sqrt(2.0)).epsilon(1e-14));
    }
    SUBCASE("third root of unity") {
        // Gram matrix eigenvalues are 2 -+ |1+w| with |1+w| = 1, so sigmas are 1 and sqrt(3).
        cplx w = std::polar(1.0, 2.0 * M_PI / 3.0);
        double coupling = std::abs(1.0 + w);
        CHECK(coupling == doctest::Approx(1.0).epsilon(1e-14));
        ComplexMatrix m(2, 2, {1.0, 1.0, 1.0, w});
        auto sv = singular_values(m);
        CHECK(sv[0] == doctest::Approx(std::sqrt(2.0 - coupling)).epsilon(1e-13));
        CHECK(sv[1] == doctest::Approx(std::sqrt(2.0 + coupling)).epsilon(1e-13));
    }
    SUBCASE("rank one") {
        ComplexMatrix m(2, 2, {1.0, 1.0, 1.0, 1.0});
        auto sv = singular_values(m);
        CHECK(sv[0] <= 1e-12);
        CHECK(sv[1] == doctest::Approx(2.0).epsilon(1e-14));
    }
    SUBCASE("non-finite entries rejected") {
        std::vector<cplx> bad = {1.0, 1.0, 1.0, cplx(std::nan(""), 0.0)};
        CHECK_THROWS(ComplexMatrix(2, 2, bad));
    }
}

TEST_CASE("abs determinant") {
    CHECK(abs_determinant(ComplexMatrix::identity(3)) == doctest::Approx(1.0));
    cplx w = std::polar(1.0, 2.0 * M_PI / 3.0);
    ComplexMatrix m(2, 2, {1.0, 1.0, 1.0, w});
    CHECK(abs_determinant(m) == doctest::Approx(std::abs(w - 1.0)).epsilon(1e-14));
    CHECK(abs_determinant(m) == doctest::Approx(std::sqrt(3.0)).epsilon(1e-14));
    ComplexMatrix s(2, 2, {1.0, 1.0, 1.0, 1.0});
    CHECK(abs_determinant(s) == 0.0);
}

TEST_CASE("product of sigmas agrees with the elimination determinant") {
    CounterRng rng(91, 3);
    for (std::int64_t n : {2, 3, 5, 8, 16}) {
        for (int trial = 0; trial < 8; ++trial) {
            ComplexMatrix m = random_unit_matrix(n, rng);
            auto sv = singular_values(m);
            double prod = 1.0;
            for (double s : sv) prod *= s;
            double det = abs_determinant(m);
            CHECK(std::abs(prod - det) <= 1e-9 * std::max(1.0, det));
        }
    }
}

TEST_CASE("sigmas invariant under permutations and diagonal unitaries") {
    CounterRng rng(17, 8);
    for (int trial = 0; trial < 10; ++trial) {
        const std::int64_t n = 4;
        ComplexMatrix m = random_unit_matrix(n, rng);
        auto base = singular_values(m);

        ComplexMatrix permuted(n, n);
        std::vector<std::int64_t> rows = {2, 0, 3, 1}, colperm = {1, 3, 0, 2};
        for (std::int64_t i = 0; i < n; ++i)
            for (std::int64_t j = 0; j < n; ++j)
                permuted.at(i, j) = m.at(rows[static_cast<std::size_t>(i)],
                                         colperm[static_cast<std::size_t>(j)]);
        auto psv = singular_values(permuted);

        ComplexMatrix twisted(n, n);
        for (std::int64_t i = 0; i < n; ++i) {
            cplx di = std::polar(1.0, 2.0 * M_PI * test::rand01(rng));
            for (std::int64_t j = 0; j < n; ++j) twisted.at(i, j) = di * m.at(i, j);
        }
        for (std::int64_t j = 0; j < n; ++j) {
            cplx dj = std::polar(1.0, 2.0 * M_PI * test::rand01(rng));
            for (std::int64_t i = 0; i < n; ++i) twisted.at(i, j) *= dj;
        }
        auto tsv = singular_values(twisted);

        for (std::int64_t i = 0; i < n; ++i) {
            CHECK(std::abs(psv[static_cast<std::size_t>(i)] - base[static_cast<std::size_t>(i)]) <=
                  1e-10 * base.back());
            CHECK(std::abs(tsv[static_cast<std::size_t>(i)] - base[static_cast<std::size_t>(i)]) <=
                  1e-10 * base.back());
        }
    }
}

TEST_CASE("kronecker products") {
    CounterRng rng(5, 21);
    SUBCASE("identity of the product") {
        ComplexMatrix one(1, 1, {1.0});
        ComplexMatrix b = random_unit_matrix(3, rng);
        ComplexMatrix k = kron(one, b);
        CHECK(frobenius_distance(k, b) == 0.0);
    }
    SUBCASE("shape law") {
        ComplexMatrix a(2, 2), b(3, 3);
        ComplexMatrix k = kron(a, b);
        CHECK(k.rows() == 6);
        CHECK(k.cols() == 6);
    }
    SUBCASE("spectrum is the pairwise products") {
        for (int trial = 0; trial < 6; ++trial) {
            ComplexMatrix a = random_unit_matrix(2, rng);
            ComplexMatrix b = random_unit_matrix(3, rng);
            auto sa = singular_values(a);
            auto sb = singular_values(b);
            std::vector<double> expected;
            for (double x : sa)
                for (double y : sb) expected.push_back(x * y);
            std::sort(expected.begin(), expected.end());
            auto got = singular_values(kron(a, b));
            REQUIRE(got.size() == expected.size());
            for (std::size_t i = 0; i < got.size(); ++i)
                CHECK(std::abs(got[i] - expected[i]) <= 1e-10 * std::max(1.0, expected.back()));
        }
    }
    SUBCASE("entry cap") {
        ComplexMatrix a(70, 70), b(70, 70);
        CHECK_THROWS(kron(a, b, 1 << 20));
    }
}
