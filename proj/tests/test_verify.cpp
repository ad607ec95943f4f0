// SPDX-License-Identifier: Apache-2.0
#include <doctest.h>

#include "rieszq/group.hpp"
#include "rieszq/verify.hpp"

using namespace rieszq;

TEST_CASE("verify suite is green and deterministic across thread counts") {
    VerifyOptions a;
    a.seed = 2718;
    a.threads = 1;
    a.random_cases = 60;
    VerifyOptions b = a;
    b.threads = 4;

    auto ra = run_verify_suite(a);
    auto rb = run_verify_suite(b);
    REQUIRE(ra.size() == rb.size());
    REQUIRE(ra.size() == verify_check_names().size());
    for (std::size_t i = 0; i < ra.size(); ++i) {
        CHECK(ra[i].name == rb[i].name);
        CHECK(ra[i].cases == rb[i].cases);
        CHECK(ra[i].failures == rb[i].failures);
        CHECK(ra[i].worst_slack == rb[i].worst_slack);
        CHECK(ra[i].failures == 0);
        CHECK(ra[i].cases > 0);
    }
}

TEST_CASE("verify suite filters and validates check names") {
    VerifyOptions o;
    o.only = {"trace-identity"};
    o.random_cases = 50;
    auto res = run_verify_suite(o);
    REQUIRE(res.size() == 1);
    CHECK(res[0].name == "trace-identity");
    CHECK(res[0].cases == 50);
    CHECK(res[0].failures == 0);

    o.only = {"not-a-check"};
    CHECK_THROWS_AS(run_verify_suite(o), parse_error);
}
