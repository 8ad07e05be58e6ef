#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <map>
#include <set>

#include "qballot/gates.hpp"
#include "qballot/protocol.hpp"
#include "qballot/qudit_state.hpp"

using namespace qballot;

namespace {

const double kInvSqrt2 = 1.0 / std::sqrt(2.0);

QuditState bell_pair() {
    Amplitudes amps;
    amps[0] = Complex{kInvSqrt2, 0.0}; // |00>
    amps[3] = Complex{kInvSqrt2, 0.0}; // |11>
    return QuditState(2, 2, std::move(amps));
}

Unitary random_unitary(int m, std::uint64_t seed) {
    SeededRng rng(seed);
    Eigen::MatrixXcd a(m, m);
    for (int i = 0; i < m; ++i) {
        for (int j = 0; j < m; ++j) {
            a(i, j) = Complex{rng.uniform_unit() - 0.5, rng.uniform_unit() - 0.5};
        }
    }
    Eigen::HouseholderQR<Eigen::MatrixXcd> qr(a);
    Eigen::MatrixXcd q = qr.householderQ();
    return Unitary(std::move(q));
}

} // namespace

TEST_CASE("apply_single flips the chosen register") {
    const QuditState out = apply_single(bell_pair(), shift(2, 1), 1);
    CHECK(std::abs(out.amplitude({0, 1}) - kInvSqrt2) < 1e-12);
    CHECK(std::abs(out.amplitude({1, 0}) - kInvSqrt2) < 1e-12);
    CHECK(out.amplitudes().size() == 2);
}

TEST_CASE("apply_single with identity is a no-op") {
    const Unitary id{Eigen::MatrixXcd::Identity(2, 2)};
    CHECK(states_equal(apply_single(bell_pair(), id, 0), bell_pair(), 1e-12));
}

TEST_CASE("dft(2) on |0> gives the uniform superposition") {
    const QuditState out = apply_single(QuditState::basis(2, {0}), dft(2), 0);
    CHECK(std::abs(out.amplitude({0}) - kInvSqrt2) < 1e-12);
    CHECK(std::abs(out.amplitude({1}) - kInvSqrt2) < 1e-12);
}

TEST_CASE("apply_single rejects bad arguments") {
    CHECK_THROWS_AS(apply_single(bell_pair(), dft(3), 0), std::invalid_argument);
    CHECK_THROWS_AS(apply_single(bell_pair(), dft(2), 2), std::invalid_argument);
    CHECK_THROWS_AS(apply_single(bell_pair(), dft(2), -1), std::invalid_argument);
}

TEST_CASE("constructor rejects invalid states") {
    Amplitudes amps;
    amps[0] = Complex{0.5, 0.0};
    CHECK_THROWS_AS(QuditState(2, 1, amps), std::invalid_argument); // norm
    amps[0] = Complex{1.0, 0.0};
    amps[7] = Complex{0.0, 0.0};
    CHECK_THROWS_AS(QuditState(2, 2, amps), std::invalid_argument); // index range
}

TEST_CASE("dense cap is enforced") {
    CHECK_THROWS_AS(checked_dimension(2, 25), std::invalid_argument);
    CHECK(checked_dimension(2, 24) == (std::uint64_t{1} << 24));
}

TEST_CASE("measure_all on a basis state is deterministic") {
    const QuditState s = QuditState::basis(4, {3});
    for (std::uint64_t seed : {0ULL, 1ULL, 42ULL}) {
        SeededRng rng(seed);
        CHECK(measure_all(s, rng) == std::vector<int>{3});
    }
}

TEST_CASE("measure_all follows the Born rule on a Bell pair") {
    const QuditState s = bell_pair();
    SeededRng rng(123);
    int zeros = 0;
    const int trials = 20000;
    for (int t = 0; t < trials; ++t) {
        const std::vector<int> o = measure_all(s, rng);
        CHECK(o[0] == o[1]);
        if (o[0] == 0) ++zeros;
    }
    CHECK(std::abs(zeros / static_cast<double>(trials) - 0.5) < 0.02);
}

TEST_CASE("measure_all on the m=3 all-NO post-vote state stays on the support") {
    // oracle: enumerate l1 + l2 = 0 mod 3
    std::set<std::vector<int>> support;
    for (int l1 = 0; l1 < 3; ++l1) support.insert({l1, (3 - l1) % 3});
    REQUIRE(support == std::set<std::vector<int>>{{0, 0}, {1, 2}, {2, 1}});

    const QuditState post = cast_votes(build_w(3, 2), VoteVector{{0, 0}, 2},
                                       Version::PerVoterFourier);
    SeededRng rng(9);
    for (int t = 0; t < 500; ++t) {
        CHECK(support.count(measure_all(post, rng)) == 1);
    }
}

TEST_CASE("measure_all is deterministic for identical seeds") {
    const QuditState post = cast_votes(build_w(5, 2), VoteVector{{1, 0}, 2},
                                       Version::PerVoterFourier);
    SeededRng a(77);
    SeededRng b(77);
    for (int t = 0; t < 50; ++t) CHECK(measure_all(post, a) == measure_all(post, b));
}

TEST_CASE("states_equal is global-phase blind") {
    const QuditState s = bell_pair();
    CHECK(states_equal(s, s, 1e-12));

    Amplitudes neg;
    neg[0] = Complex{-kInvSqrt2, 0.0};
    neg[3] = Complex{-kInvSqrt2, 0.0};
    CHECK(states_equal(s, QuditState(2, 2, std::move(neg)), 1e-12));

    Amplitudes plus;
    plus[0] = Complex{kInvSqrt2, 0.0};
    plus[1] = Complex{kInvSqrt2, 0.0};
    Amplitudes minus;
    minus[0] = Complex{kInvSqrt2, 0.0};
    minus[1] = Complex{-kInvSqrt2, 0.0};
    CHECK_FALSE(states_equal(QuditState(2, 1, std::move(plus)),
                             QuditState(2, 1, std::move(minus)), 1e-9));

    CHECK_THROWS_AS(states_equal(s, QuditState::basis(2, {0}), 1e-9),
                    std::invalid_argument);
}

TEST_CASE("random unitaries preserve the norm") {
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        const int m = 2 + static_cast<int>(seed % 4);
        const QuditState s = build_w(m, 2);
        const QuditState out = apply_single(s, random_unitary(m, seed), seed % 2);
        CHECK(std::abs(out.norm_squared() - 1.0) < 1e-9);
    }
}

TEST_CASE("unitaries on different registers commute") {
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
        const int m = 2 + static_cast<int>(seed % 3);
        const QuditState s = build_w(m, 3);
        const Unitary u = random_unitary(m, 2 * seed);
        const Unitary v = random_unitary(m, 2 * seed + 1);
        const QuditState uv = apply_single(apply_single(s, u, 0), v, 2);
        const QuditState vu = apply_single(apply_single(s, v, 2), u, 0);
        CHECK(states_equal(uv, vu, 1e-9));
    }
}

TEST_CASE("empirical measurement distribution matches Born probabilities") {
    for (int m : {2, 3, 4}) {
        const QuditState post = cast_votes(
            build_w(m, 2), VoteVector{{1, 0}, 2}, Version::PerVoterFourier);
        std::map<std::vector<int>, int> counts;
        SeededRng rng(static_cast<std::uint64_t>(m));
        const int trials = 100000;
        for (int t = 0; t < trials; ++t) ++counts[measure_all(post, rng)];

        double tv = 0.0;
        for (const auto& [idx, amp] : post.amplitudes()) {
            const std::vector<int> o = post.unflatten(idx);
            const double emp = counts[o] / static_cast<double>(trials);
            tv += std::abs(emp - std::norm(amp));
            counts.erase(o);
        }
        for (const auto& [o, c] : counts) tv += c / static_cast<double>(trials);
        CHECK(0.5 * tv <= 0.02);
    }
}
