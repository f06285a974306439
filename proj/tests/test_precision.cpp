#include <doctest.h>

#include <cmath>
#include <random>
#include <vector>

#include "core/errors.hpp"
#include "core/precision.hpp"
#include "oracles.hpp"

using namespace reprometry;

TEST_CASE("c4 closed-form values") {
    CHECK(c4(2) == doctest::Approx(std::sqrt(2.0 / M_PI)).epsilon(1e-12));
    CHECK(c4(3) == doctest::Approx(std::sqrt(M_PI) / 2.0).epsilon(1e-12));
    CHECK(c4(4) == doctest::Approx(0.9213177319).epsilon(1e-9));
    CHECK(c4(50) > 0.9948);
}

TEST_CASE("c4 is strictly increasing and below 1") {
    double prev = 0.0;
    for (int n = 2; n <= 80; ++n) {
        const double value = c4(n);
        CHECK(value > prev);
        CHECK(value < 1.0);
        prev = value;
    }
    CHECK_THROWS_AS(c4(1), DomainError);
}

TEST_CASE("unbiased standard deviation") {
    const std::vector<double> two{3.0, 4.0};
    const StdPair p = unbiased_std(two);
    CHECK(p.s == doctest::Approx(0.7071067812).epsilon(1e-9));
    CHECK(p.s_star == doctest::Approx(0.8862269255).epsilon(1e-9));

    const std::vector<double> flat{5.0, 5.0, 5.0};
    const StdPair q = unbiased_std(flat);
    CHECK(q.s == 0.0);
    CHECK(q.s_star == 0.0);

    const std::vector<double> three{1.0, 2.0, 3.0};
    const StdPair r = unbiased_std(three);
    CHECK(r.s == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(r.s_star == doctest::Approx(1.1283791671).epsilon(1e-9));
    CHECK(r.s_star >= r.s);

    CHECK_THROWS_AS(unbiased_std(std::vector<double>{1.0}), DomainError);
}

TEST_CASE("cv_star worked values") {
    const std::vector<double> v{3.0, 4.0};
    const PrecisionStats st = cv_star(v);
    CHECK(st.cv_star == doctest::Approx(28.485865461).epsilon(1e-9));
    CHECK(st.n == 2);
    CHECK(st.mean == doctest::Approx(3.5));

    CHECK(cv_star(std::vector<double>{5.0, 5.0, 5.0}).cv_star == 0.0);

    CvOptions raw;
    raw.report_as_percent = false;
    CHECK(cv_star(v, raw).cv_star == doctest::Approx(0.28485865461).epsilon(1e-9));

    CHECK_THROWS_AS(cv_star(std::vector<double>{1.0}), DomainError);
    CHECK_THROWS_AS(cv_star(std::vector<double>{-1.0, 1.0}), DomainError);  // zero mean
}

TEST_CASE("cv_star positive-scale invariance") {
    std::mt19937 rng(20240917);
    std::uniform_real_distribution<double> value(0.5, 100.0);
    std::uniform_real_distribution<double> factor(0.01, 50.0);
    for (int trial = 0; trial < 200; ++trial) {
        std::vector<double> v(2 + trial % 5);
        for (double& x : v) x = value(rng);
        const double k = factor(rng);
        std::vector<double> scaled = v;
        for (double& x : scaled) x *= k;
        CHECK(cv_star(scaled).cv_star ==
              doctest::Approx(cv_star(v).cv_star).epsilon(1e-9));
    }
}

TEST_CASE("cv_star shift sensitivity") {
    // Adding a positive constant strictly lowers CV* whenever variance > 0;
    // this is what makes the shift-to-zero convention necessary.
    std::mt19937 rng(7);
    std::uniform_real_distribution<double> value(0.5, 20.0);
    for (int trial = 0; trial < 100; ++trial) {
        std::vector<double> v{value(rng), value(rng), value(rng)};
        if (v[0] == v[1] && v[1] == v[2]) continue;
        std::vector<double> moved = v;
        for (double& x : moved) x += 3.0;
        CHECK(cv_star(moved).cv_star < cv_star(v).cv_star);
    }
}

TEST_CASE("cv_star small-sample factor is exactly 1 + 1/(4n)") {
    const std::vector<double> v{2.0, 3.0, 7.0, 4.0};
    const PrecisionStats st = cv_star(v);
    const double uncorrected = st.s_star / st.mean * 100.0;
    CHECK(st.cv_star / uncorrected == doctest::Approx(1.0 + 1.0 / 16.0).epsilon(1e-12));
    CHECK(st.cv_star > uncorrected);
}

TEST_CASE("cv_star matches the brute-force evaluation on random samples") {
    std::mt19937 rng(123456);
    std::uniform_int_distribution<int> size(2, 6);
    std::uniform_real_distribution<double> value(1e-6, 100.0);
    for (int trial = 0; trial < 1000; ++trial) {
        std::vector<double> v(size(rng));
        for (double& x : v) x = value(rng);
        CHECK(cv_star(v).cv_star == doctest::Approx(oracles::cv_star(v)).epsilon(1e-9));
    }
}

TEST_CASE("confidence interval for s*") {
    const CiBounds a = ci_for_s_star(1.0, 3, 0.95);
    CHECK(a.low == 0.0);  // clipped
    CHECK(a.high == doctest::Approx(3.1513).epsilon(1e-3));
    CHECK_FALSE(a.degenerate);

    const CiBounds zero = ci_for_s_star(0.0, 4, 0.95);
    CHECK(zero.low == 0.0);
    CHECK(zero.high == 0.0);
    CHECK(zero.degenerate);

    const CiBounds b = ci_for_s_star(2.0, 2, 0.95);
    CHECK(b.high == doctest::Approx(19.969).epsilon(1e-3));
    CHECK(b.low == 0.0);

    CHECK_THROWS_AS(ci_for_s_star(1.0, 1, 0.95), DomainError);
    CHECK_THROWS_AS(ci_for_s_star(1.0, 3, 1.5), DomainError);
}

TEST_CASE("cv_star carries its interval") {
    CvOptions opts;
    opts.confidence_level = 0.9;
    const PrecisionStats st = cv_star(std::vector<double>{2.0, 3.0, 4.0}, opts);
    CHECK(st.confidence_level == 0.9);
    CHECK(st.ci_low >= 0.0);
    CHECK(st.ci_high > st.s_star);
    CHECK_FALSE(st.degenerate_ci);
    const PrecisionStats flat = cv_star(std::vector<double>{2.0, 2.0});
    CHECK(flat.degenerate_ci);
}
