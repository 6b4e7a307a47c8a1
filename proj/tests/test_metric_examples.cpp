#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "ncg/metric_examples.hpp"

using namespace ncg;

namespace {
std::mt19937_64 rng(4242);
}

TEST_CASE("interval example: witness seminorms and no uniform comparability") {
    for (int n : {2, 3}) {
        int m = 4 * n * n;
        FiniteQcms base = interval_base_qcms(m);
        std::vector<Rational> fn = interval_witness(n, m);
        CHECK(base.lipschitz_sup(fn) == 1);

        FiniteQcms dil = interval_dilated_qcms(n, m);
        CHECK(dil.eval(fn) == Rational(1, n));
    }
    CHECK_THROWS(interval_dilated_qcms(3, 20));  // 9 does not divide 20
}

TEST_CASE("interval example report") {
    IntervalExampleReport rep = interval_example(2, 16, 8, rng);
    CHECK(rep.l_base_of_witness == 1);
    CHECK(rep.l_n_of_witness == Rational(1, 2));
    CHECK(rep.ratio == doctest::Approx(2.0));
    CHECK(rep.extent.isometry.ok);
    CHECK(rep.extent.upper_certified);
    CHECK(rep.eps_used <= 0.5 + 1e-12);
    CHECK(rep.extent.lower <= rep.eps_used + 1e-9);
    CHECK(rep.bridge.holds);
}

TEST_CASE("nbar level seminorm values") {
    for (int n : {2, 3, 4, 6}) {
        FiniteQcms level = nbar_level_qcms(n);
        std::vector<Rational> d0(n + 1, Rational(0));
        d0[0] = 1;
        CHECK(level.eval(d0) == n);
    }
    FiniteQcms limit = nbar_limit_qcms(9);
    std::vector<Rational> d0(10, Rational(0));
    d0[0] = 1;
    CHECK(limit.eval(d0) == 2);
}

TEST_CASE("nbar example report") {
    NbarExampleReport rep = nbar_example(4, 7, 8, rng);
    CHECK(rep.l_inf_delta0 == 2);
    CHECK(rep.l_n_delta0 == 4);
    CHECK(rep.obstruction == Rational(1, 4));
    CHECK(rep.eps_used == doctest::Approx(0.5));
    CHECK(rep.extent.isometry.ok);
    CHECK(rep.extent.upper_certified);
    CHECK(rep.extent.lower <= rep.extent.upper + 1e-9);

    // no bridge builder: identity fails, first witness is the normalized
    // delta_0 spike
    CHECK(!rep.bridge.holds);
    REQUIRE(!rep.bridge.witness.empty());
    CHECK(rep.bridge.witness[0] == doctest::Approx(0.5));
    for (size_t i = 1; i < rep.bridge.witness.size(); ++i)
        CHECK(std::abs(rep.bridge.witness[i]) <= 1e-12);
}
