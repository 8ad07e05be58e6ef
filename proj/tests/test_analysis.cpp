#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "qballot/analysis.hpp"
#include "qballot/fastsim.hpp"
#include "qballot/protocol.hpp"
#include "qballot/verify.hpp"

using namespace qballot;

TEST_CASE("check_support accepts real post-vote states") {
    const std::vector<int> votes{1, 0};
    const QuditState post = cast_votes(build_w(3, 2), VoteVector{votes, 2},
                                       Version::PerVoterFourier);
    const SupportReport rep = check_support(post, votes);
    CHECK(rep.pass);
    CHECK(rep.support_size == 3);
    CHECK(rep.max_magnitude_deviation < 1e-9);

    // Eq. 8 route: Fourier the GHZ pair, then no shifts
    const QuditState u = cast_votes(build_w(2, 2), VoteVector{{0, 0}, 2},
                                    Version::PreFourier);
    CHECK(check_support(u, {0, 0}).pass);
}

TEST_CASE("check_support flags an off-support term") {
    Amplitudes amps;
    const double s = 1.0 / std::sqrt(2.0);
    amps[0] = Complex{s, 0.0}; // |00>, on support for shifts (0,0)
    amps[2] = Complex{s, 0.0}; // |10>, sum 1: off support
    const QuditState bad(2, 2, std::move(amps));
    const SupportReport rep = check_support(bad, {0, 0});
    CHECK_FALSE(rep.pass);
    REQUIRE(rep.offending_index.has_value());
    CHECK(*rep.offending_index == std::vector<int>{1, 0});

    CHECK_THROWS_AS(check_support(bad, {0}), std::invalid_argument);
}

TEST_CASE("check_support flags wrong magnitudes") {
    // valid support but Bell-like weights on a 3-point slice
    Amplitudes amps;
    amps[0] = Complex{std::sqrt(0.5), 0.0};        // (0,0)
    amps[5] = Complex{std::sqrt(0.25), 0.0};       // (1,2)
    amps[7] = Complex{std::sqrt(0.25), 0.0};       // (2,1)
    const QuditState skew(3, 2, std::move(amps));
    CHECK_FALSE(check_support(skew, {0, 0}).pass);
}

TEST_CASE("marginal_from_dense computes exact register distributions") {
    const std::vector<double> bell = marginal_from_dense(build_w(2, 2), 0);
    CHECK(std::abs(bell[0] - 0.5) < 1e-15);
    CHECK(std::abs(bell[1] - 0.5) < 1e-15);

    const QuditState post = cast_votes(build_w(4, 2), VoteVector{{1, 1}, 2},
                                       Version::PerVoterFourier);
    for (int r = 0; r < 2; ++r) {
        for (double p : marginal_from_dense(post, r)) {
            CHECK(std::abs(p - 0.25) < 1e-12);
        }
    }

    const std::vector<double> point =
        marginal_from_dense(QuditState::basis(4, {3}), 0);
    CHECK(point == std::vector<double>{0.0, 0.0, 0.0, 1.0});

    CHECK_THROWS_AS(marginal_from_dense(post, 2), std::invalid_argument);
}

TEST_CASE("chi-square passes on structured election samples") {
    const int n = 50;
    std::vector<int> shifts(n, 0);
    shifts[0] = 1;
    shifts[2] = 1;
    const StructuredBallotState s{4, n, shifts};
    SeededRng rng(15);
    std::vector<int> out;
    std::vector<int> first_register;
    for (int t = 0; t < 100000; ++t) {
        sample_into(s, rng, out);
        first_register.push_back(out[0]);
    }
    const UniformityReport rep = chi_square_uniform(first_register, 4);
    CHECK(rep.pass);
    CHECK(rep.sample_count == 100000);
    double total = 0.0;
    for (double p : rep.distribution) total += p;
    CHECK(std::abs(total - 1.0) < 1e-9);
}

TEST_CASE("chi-square rejects a constant stream") {
    const std::vector<int> constant(100, 0);
    const UniformityReport rep = chi_square_uniform(constant, 2);
    CHECK_FALSE(rep.pass);
    CHECK(rep.chi_square_statistic == doctest::Approx(100.0));
}

TEST_CASE("chi-square needs enough samples") {
    CHECK_THROWS_AS(chi_square_uniform(std::vector<int>(19, 0), 2),
                    std::invalid_argument);
}

TEST_CASE("chi-square significance is calibrated") {
    // alpha = 0.001, so nearly all truly-uniform batches must pass
    int passes = 0;
    const int runs = 500;
    SeededRng rng(2718);
    for (int r = 0; r < runs; ++r) {
        std::vector<int> samples(2000);
        for (int& s : samples) s = static_cast<int>(rng.uniform_below(8));
        if (chi_square_uniform(samples, 8).pass) ++passes;
    }
    CHECK(passes >= 499); // 99.8% of 500
}

TEST_CASE("total_variation on simple distributions") {
    const std::vector<double> p{0.5, 0.5};
    CHECK(total_variation(p, p) == 0.0);
    CHECK(total_variation({1.0, 0.0}, {0.0, 1.0}) == 1.0);
    CHECK_THROWS_AS(total_variation(p, {1.0}), std::invalid_argument);
    CHECK_THROWS_AS(total_variation({0.7, 0.7}, p), std::invalid_argument);
}

TEST_CASE("verification suites all pass") {
    for (const SuiteResult& r : run_verify_suites()) {
        INFO(r.name);
        CHECK(r.failures == 0);
        CHECK(r.checks > 0);
    }
}

TEST_CASE("suite filter narrows the run") {
    const auto only = run_verify_suites("support");
    REQUIRE(only.size() == 1);
    CHECK(only[0].name == "support");
}
