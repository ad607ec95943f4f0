// SPDX-License-Identifier: Apache-2.0
#include <doctest.h>

#include <cmath>

#include "rieszq/search.hpp"
#include "test_util.hpp"

using namespace rieszq;

TEST_CASE("exhaustive set quantities on the cyclic workhorse") {
    GroupSpec z3 = GroupSpec::parse("Z3");
    std::vector<Element> e = {{0}, {1}};
    auto all = set_quantities_all(z3, e);
    CHECK(all[static_cast<int>(Quantity::L)].value == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(all[static_cast<int>(Quantity::U)].value == doctest::Approx(3.0).epsilon(1e-12));
    CHECK(all[static_cast<int>(Quantity::Rho)].value == doctest::Approx(3.0).epsilon(1e-12));
    CHECK(all[static_cast<int>(Quantity::D)].value ==
          doctest::Approx(std::sqrt(3.0)).epsilon(1e-12));
    CHECK(all[static_cast<int>(Quantity::Rho)].witness == std::vector<Element>{{0}, {1}});

    auto normalized = normalized_set_values(2, all);
    CHECK(normalized[0] == doctest::Approx(2.0).epsilon(1e-11));
    CHECK(normalized[1] == doctest::Approx(1.5).epsilon(1e-11));
    CHECK(normalized[2] == doctest::Approx(3.0).epsilon(1e-11));
    CHECK(normalized[3] ==
          doctest::Approx(std::sqrt(2.0) / std::pow(3.0, 0.25)).epsilon(1e-11));
}

TEST_CASE("the square of the two-point set in Z3^2") {
    GroupSpec g = GroupSpec::parse("Z3^2");
    std::vector<Element> e = {{0, 0}, {0, 1}, {1, 0}, {1, 1}};
    SearchResult rho = set_quantity(g, e, Quantity::Rho, Strategy::Exhaustive);
    double golden = (1.0 + std::sqrt(5.0)) / 2.0;
    CHECK(rho.value == doctest::Approx(std::pow(golden, 4.0)).epsilon(1e-10));
}

TEST_CASE("the full group is spectral with the whole dual as witness") {
    GroupSpec g = GroupSpec::parse("Z2xZ3");
    std::vector<Element> e;
    for (std::int64_t i = 0; i < g.order(); ++i) e.push_back(g.element(i));
    SearchResult rho = set_quantity(g, e, Quantity::Rho, Strategy::Exhaustive);
    CHECK(rho.value == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(rho.witness == e);
}

TEST_CASE("witness reproduces the reported value") {
    CounterRng rng(400, 77);
    for (const char* name : {"Z7", "Z2^3", "Z3^2"}) {
        GroupSpec g = GroupSpec::parse(name);
        for (int trial = 0; trial < 5; ++trial) {
            std::vector<Element> e = test::random_subset(g, 3, rng);
            auto all = set_quantities_all(g, e);
            for (const SearchResult& r : all) {
                TightnessReport rep = tightness_report(SubsetPair(g, e, r.witness));
                double reproduced = 0.0;
                switch (r.quantity) {
                    case Quantity::L: reproduced = rep.L; break;
                    case Quantity::U: reproduced = rep.U; break;
                    case Quantity::Rho: reproduced = rep.rho; break;
                    case Quantity::D: reproduced = rep.D; break;
                }
                CHECK(std::abs(reproduced - r.value) <= 1e-10 * std::max(1.0, std::abs(r.value)));
            }
        }
    }
}

TEST_CASE("zero normalization does not change the optima") {
    SearchOptions with{};
    SearchOptions without{};
    without.normalize_zero = false;
    for (const char* name : {"Z6", "Z8", "Z3^2", "Z2^3"}) {
        GroupSpec g = GroupSpec::parse(name);
        CounterRng rng(5, 123);
        for (std::int64_t n : {2, 3}) {
            std::vector<Element> e = test::random_subset(g, n, rng);
            auto a = set_quantities_all(g, e, with);
            auto b = set_quantities_all(g, e, without);
            for (int q = 0; q < 4; ++q)
                CHECK(std::abs(a[static_cast<std::size_t>(q)].value -
                               b[static_cast<std::size_t>(q)].value) <= 1e-11);
        }
    }
}

TEST_CASE("serial and parallel scans return identical results") {
    GroupSpec g = GroupSpec::parse("Z3^2");
    std::vector<Element> e = {{0, 0}, {0, 1}, {1, 0}, {1, 1}};
    SearchOptions serial{};
    serial.threads = 1;
    SearchOptions parallel{};
    parallel.threads = 4;
    auto a = set_quantities_all(g, e, serial);
    auto b = set_quantities_all(g, e, parallel);
    for (int q = 0; q < 4; ++q) {
        CHECK(a[static_cast<std::size_t>(q)].value == b[static_cast<std::size_t>(q)].value);
        CHECK(a[static_cast<std::size_t>(q)].witness == b[static_cast<std::size_t>(q)].witness);
    }
}

TEST_CASE("coset-count filter keeps the basis-attained optima") {
    // The filter only discards candidates that cannot be basis partners, so
    // L, rho and D optima are unchanged; U may legitimately differ when its
    // minimizer is a singular pair, so it is not compared here.
    SearchOptions plain{};
    SearchOptions filtered{};
    filtered.coset_count_filter = true;
    CounterRng rng(64, 2);
    for (const char* name : {"Z3^2", "Z2xZ4", "Z2^3"}) {
        GroupSpec g = GroupSpec::parse(name);
        for (std::int64_t n : {2, 3, 4}) {
            std::vector<Element> e = test::random_subset(g, n, rng);
            auto a = set_quantities_all(g, e, plain);
            auto b = set_quantities_all(g, e, filtered);
            for (Quantity q : {Quantity::L, Quantity::Rho, Quantity::D}) {
                CHECK(std::abs(a[static_cast<std::size_t>(q)].value -
                               b[static_cast<std::size_t>(q)].value) <= 1e-11);
                CHECK(a[static_cast<std::size_t>(q)].witness ==
                      b[static_cast<std::size_t>(q)].witness);
            }
        }
    }
}

TEST_CASE("search cap") {
    GroupSpec g = GroupSpec::parse("Z3^2");
    SearchOptions opts{};
    opts.cap = 10;
    std::vector<Element> e = {{0, 0}, {0, 1}, {1, 0}, {1, 1}};
    CHECK_THROWS_AS(set_quantities_all(g, e, opts), cap_exceeded);
}

TEST_CASE("loop around") {
    SUBCASE("two points in Z5 follow the sine closed form") {
        GroupSpec z5 = GroupSpec::parse("Z5");
        LoopAroundResult la = loop_around(z5, {{0}, {1}}, {{0}, {1}});
        REQUIRE(la.table.size() == 4);
        for (const auto& entry : la.table)
            CHECK(entry.d ==
                  doctest::Approx(2.0 * std::sin(M_PI * static_cast<double>(entry.k) / 5.0))
                      .epsilon(1e-12));
        CHECK(la.table[0].d == doctest::Approx(1.17557050458).epsilon(1e-9));
        CHECK(la.table[0].d >= 1.0);
        // D is maximized at k = 2 (k = 3 ties and loses on the smaller-k rule)
        CHECK(la.best_k == 2);
    }
    SUBCASE("two points in Z12 need the loop") {
        GroupSpec z12 = GroupSpec::parse("Z12");
        LoopAroundResult la = loop_around(z12, {{0}, {1}}, {{0}, {1}});
        REQUIRE(la.table.size() == 4);  // units 1, 5, 7, 11
        CHECK(la.table[0].k == 1);
        CHECK(la.table[0].d == doctest::Approx(2.0 * std::sin(M_PI / 12.0)).epsilon(1e-12));
        CHECK(la.table[0].d < 1.0);
        CHECK(la.table[1].k == 5);
        CHECK(la.table[1].d ==
              doctest::Approx(2.0 * std::sin(5.0 * M_PI / 12.0)).epsilon(1e-12));
        CHECK(la.table[1].d >= 1.0);
        CHECK(la.best_k == 5);
        CHECK(la.best_d == doctest::Approx(1.93185165258).epsilon(1e-9));
    }
    SUBCASE("spectral pairs keep the maximal determinant at every unit") {
        GroupSpec z3 = GroupSpec::parse("Z3");
        std::vector<Element> full = {{0}, {1}, {2}};
        LoopAroundResult la = loop_around(z3, full, full);
        for (const auto& entry : la.table)
            CHECK(entry.d == doctest::Approx(std::pow(3.0, 1.5)).epsilon(1e-12));
    }
}

TEST_CASE("certified pairs") {
    SUBCASE("two points in Z3") {
        GroupSpec z3 = GroupSpec::parse("Z3");
        CertifiedPair cp = certified_pair(z3, {{0}, {1}}, 42);
        CHECK(cp.report.D >= 1.0 - 1e-9);
        CHECK(cp.report.rho < 4.0 * std::pow(2.0, 2.0));
        // the exhaustive optimum bounds the achieved pair from below; here
        // every basis partner of {0,1} gives exactly rho = 3
        SearchResult best = set_quantity(z3, {{0}, {1}}, Quantity::Rho, Strategy::Exhaustive);
        CHECK(best.value == doctest::Approx(3.0).epsilon(1e-10));
        CHECK(cp.report.rho >= best.value - 1e-9);
        CHECK(cp.report.rho == doctest::Approx(3.0).epsilon(1e-10));
    }
    SUBCASE("three points in Z7") {
        GroupSpec z7 = GroupSpec::parse("Z7");
        CertifiedPair cp = certified_pair(z7, {{0}, {1}, {3}}, 7);
        CHECK(cp.report.rho < 4.0 * std::pow(3.0, 3.0));
        CHECK(cp.report.D >= 1.0 - 1e-9);
        CHECK(cp.certificates[0].second == doctest::Approx(108.0));
    }
    SUBCASE("size-two sets always certify D at least one") {
        CounterRng rng(99, 1);
        for (const char* name : {"Z5", "Z8", "Z2xZ4"}) {
            GroupSpec g = GroupSpec::parse(name);
            for (std::uint64_t seed = 0; seed < 5; ++seed) {
                std::vector<Element> e = test::random_subset(g, 2, rng);
                CertifiedPair cp = certified_pair(g, e, seed);
                CHECK(cp.report.D >= 1.0 - 1e-9);
            }
        }
    }
    SUBCASE("random strategy records its seed") {
        GroupSpec z5 = GroupSpec::parse("Z5");
        SearchOptions opts{};
        opts.seed = 31337;
        SearchResult r = set_quantity(z5, {{0}, {2}}, Quantity::D, Strategy::RandomLoop, opts);
        REQUIRE(r.seed.has_value());
        CHECK(*r.seed == 31337);
        CHECK(r.value >= 1.0 - 1e-9);
        CHECK(!r.certificates.empty());
    }
}

TEST_CASE("simultaneous bases") {
    SUBCASE("the three two-element subspaces of Z2^2 have none") {
        GroupSpec g = GroupSpec::parse("Z2^2");
        std::vector<std::vector<Element>> sets = {
            {{0, 0}, {0, 1}}, {{0, 0}, {1, 0}}, {{0, 0}, {1, 1}}};
        CHECK(!simultaneous_basis(g, sets).has_value());
    }
    SUBCASE("a single set always has one") {
        CounterRng rng(3, 14);
        for (const char* name : {"Z2^2", "Z6", "Z3^2"}) {
            GroupSpec g = GroupSpec::parse(name);
            for (std::int64_t n : {2, 3}) {
                auto b = simultaneous_basis(g, {test::random_subset(g, n, rng)});
                CHECK(b.has_value());
            }
        }
    }
    SUBCASE("cyclic groups admit the first-k universal basis") {
        for (std::int64_t m : {4, 5, 6}) {
            GroupSpec g({m});
            for (std::int64_t k = 1; k <= 3 && k <= m; ++k) {
                std::vector<Element> expected = vandermonde_spectrum(m, k);
                // families of all k-subsets
                std::vector<std::vector<Element>> sets;
                std::vector<std::int32_t> comb(static_cast<std::size_t>(k));
                for (std::int64_t i = 0; i < k; ++i)
                    comb[static_cast<std::size_t>(i)] = static_cast<std::int32_t>(i);
                bool more = true;
                while (more) {
                    std::vector<Element> e;
                    for (std::int32_t c : comb) e.push_back({c});
                    sets.push_back(e);
                    more = false;
                    for (std::int64_t i = k - 1; i >= 0; --i)
                        if (comb[static_cast<std::size_t>(i)] < static_cast<std::int32_t>(m - k + i)) {
                            std::int32_t v = ++comb[static_cast<std::size_t>(i)];
                            for (std::int64_t j = i + 1; j < k; ++j)
                                comb[static_cast<std::size_t>(j)] =
                                    static_cast<std::int32_t>(v + (j - i));
                            more = true;
                            break;
                        }
                }
                auto found = simultaneous_basis(g, sets);
                REQUIRE(found.has_value());
                // the universal witness itself must also pass on every member
                for (const auto& e : sets) {
                    TightnessReport r = tightness_report(SubsetPair(g, e, expected));
                    CHECK(r.is_basis);
                }
            }
        }
    }
}

TEST_CASE("vandermonde spectrum") {
    CHECK(vandermonde_spectrum(4, 2) == std::vector<Element>{{0}, {1}});
    GroupSpec z4 = GroupSpec::parse("Z4");
    for (std::int64_t i = 0; i < 4; ++i)
        for (std::int64_t j = i + 1; j < 4; ++j) {
            TightnessReport r = tightness_report(
                SubsetPair(z4, {{i}, {j}}, vandermonde_spectrum(4, 2)));
            CHECK(r.is_basis);
        }

    GroupSpec z5 = GroupSpec::parse("Z5");
    std::vector<Element> full;
    for (std::int64_t i = 0; i < 5; ++i) full.push_back({i});
    TightnessReport dft = tightness_report(SubsetPair(z5, full, vandermonde_spectrum(5, 5)));
    CHECK(dft.is_spectral);

    CHECK(vandermonde_spectrum(9, 1) == std::vector<Element>{{0}});
    CHECK_THROWS(vandermonde_spectrum(3, 4));
}

TEST_CASE("loop products are integers") {
    GroupSpec z3 = GroupSpec::parse("Z3");
    LoopProductResult p3 = loop_product_check(z3, {{0}, {1}}, {{0}, {1}});
    CHECK(p3.product == doctest::Approx(3.0).epsilon(1e-12));
    CHECK(p3.nearest == 3);

    GroupSpec z5 = GroupSpec::parse("Z5");
    LoopProductResult p5 = loop_product_check(z5, {{0}, {1}}, {{0}, {1}});
    CHECK(p5.product == doctest::Approx(5.0).epsilon(1e-12));
    CHECK(p5.nearest == 5);

    GroupSpec z33 = GroupSpec::parse("Z3^2");
    LoopProductResult degenerate = loop_product_check(
        z33, {{0, 0}, {1, 0}}, {{0, 0}, {0, 1}});
    CHECK(degenerate.product <= 1e-9);

    GroupSpec big = GroupSpec::parse("Z61");
    CHECK_THROWS_AS(loop_product_check(big, {{0}, {1}}, {{0}, {1}}), cap_exceeded);
}

TEST_CASE("group-independent set bounds at sizes two and three") {
    for (const char* name : {"Z6", "Z2^3", "Z3^2"}) {
        GroupSpec g = GroupSpec::parse(name);
        std::vector<Element> all;
        for (std::int64_t i = 0; i < g.order(); ++i) all.push_back(g.element(i));
        for (std::int64_t n : {2, 3}) {
            std::vector<std::int32_t> comb(static_cast<std::size_t>(n));
            for (std::int64_t i = 0; i < n; ++i)
                comb[static_cast<std::size_t>(i)] = static_cast<std::int32_t>(i);
            bool more = true;
            while (more) {
                std::vector<Element> e;
                for (std::int32_t c : comb) e.push_back(all[static_cast<std::size_t>(c)]);
                auto res = set_quantities_all(g, e);
                const double dn = static_cast<double>(n);
                CHECK(res[static_cast<int>(Quantity::L)].value >
                      1.0 / (std::exp(1.0) * std::pow(dn, dn - 1.0)));
                CHECK(res[static_cast<int>(Quantity::U)].value < dn * dn - (dn - 1.0) / 4.0);
                CHECK(res[static_cast<int>(Quantity::Rho)].value < 4.0 * std::pow(dn, dn));
                CHECK(res[static_cast<int>(Quantity::D)].value >= 1.0 - 1e-9);
                more = false;
                for (std::int64_t i = n - 1; i >= 0; --i)
                    if (comb[static_cast<std::size_t>(i)] <
                        static_cast<std::int32_t>(g.order() - n + i)) {
                        std::int32_t v = ++comb[static_cast<std::size_t>(i)];
                        for (std::int64_t j = i + 1; j < n; ++j)
                            comb[static_cast<std::size_t>(j)] =
                                static_cast<std::int32_t>(v + (j - i));
                        more = true;
                        break;
                    }
            }
        }
    }
}

TEST_CASE("spectral detection agrees across quantities at set level") {
    GroupSpec z4 = GroupSpec::parse("Z4");
    for (std::int64_t i = 0; i < 4; ++i)
        for (std::int64_t j = i + 1; j < 4; ++j) {
            std::vector<Element> e = {{i}, {j}};
            auto res = set_quantities_all(z4, e);
            bool rho_one = res[static_cast<int>(Quantity::Rho)].value <= 1.0 + 1e-8;
            bool d_max = std::abs(res[static_cast<int>(Quantity::D)].value - 2.0) <= 1e-8 * 2.0;
            TightnessReport witness_report = tightness_report(
                SubsetPair(z4, e, res[static_cast<int>(Quantity::Rho)].witness));
            CHECK(rho_one == d_max);
            CHECK(rho_one == witness_report.is_spectral);
        }
    // contrast: a set with no spectral partner
    GroupSpec z3 = GroupSpec::parse("Z3");
    auto res = set_quantities_all(z3, {{0}, {1}});
    CHECK(res[static_cast<int>(Quantity::Rho)].value > 1.0 + 1e-8);
}

TEST_CASE("riesz ratios of the column-plus-point family respect the divergent bound") {
    // The optimum itself is not monotone (4, 9.8494, 8.0); the lower bound
    // (m+1)/2 is what diverges.
    for (std::int64_t m : {2, 3, 4}) {
        GroupSpec g({m, m});
        std::vector<Element> e;
        for (std::int64_t x = 0; x < m; ++x) e.push_back({x, 0});
        e.push_back({0, 1});
        SearchResult rho = set_quantity(g, e, Quantity::Rho, Strategy::Exhaustive);
        CHECK(rho.value >= (static_cast<double>(m) + 1.0) / 2.0);
    }
}

TEST_CASE("two-point sets in prime cyclic groups approach spectral") {
    double prev = 1e9;
    for (std::int64_t p : {3, 5, 7, 11, 13}) {
        GroupSpec g({p});
        SearchResult rho = set_quantity(g, {{0}, {1}}, Quantity::Rho, Strategy::Exhaustive);
        CHECK(rho.value < prev);
        CHECK(rho.witness == std::vector<Element>{{0}, {(p - 1) / 2}});
        prev = rho.value;
    }
    CHECK(prev < 1.3);  // already close to 1 at p = 13
}

TEST_CASE("families that stay away from spectral") {
    for (std::int64_t m : {3, 6, 9}) {
        GroupSpec g({m});
        SearchResult rho = set_quantity(g, {{0}, {m / 3}}, Quantity::Rho, Strategy::Exhaustive);
        CHECK(rho.value >= 1.05);
    }
    for (std::int64_t p : {5, 7, 11}) {
        GroupSpec g({p});
        SearchResult rho =
            set_quantity(g, {{0}, {1}, {3}}, Quantity::Rho, Strategy::Exhaustive);
        CHECK(rho.value >= 1.05);
    }
}
