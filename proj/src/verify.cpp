#include "qballot/verify.hpp"

#include <cmath>
#include <cstdint>
#include <sstream>

#include "qballot/analysis.hpp"
#include "qballot/fastsim.hpp"
#include "qballot/protocol.hpp"

namespace qballot {

namespace {

constexpr int kGridM[] = {3, 4, 5, 8};
constexpr int kGridN[] = {2, 3};

std::vector<std::vector<int>> all_vote_vectors(int n, int alphabet) {
    std::vector<std::vector<int>> all;
    std::vector<int> v(static_cast<std::size_t>(n), 0);
    while (true) {
        all.push_back(v);
        int k = n - 1;
        while (k >= 0 && ++v[static_cast<std::size_t>(k)] == alphabet) {
            v[static_cast<std::size_t>(k)] = 0;
            --k;
        }
        if (k < 0) break;
    }
    return all;
}

void record(SuiteResult& suite, bool ok, const std::string& what) {
    ++suite.checks;
    if (!ok) {
        ++suite.failures;
        suite.messages.push_back(what);
    }
}

std::string instance_tag(int m, int n, const std::vector<int>& votes) {
    std::ostringstream os;
    os << "m=" << m << " n=" << n << " votes=(";
    for (std::size_t i = 0; i < votes.size(); ++i) {
        os << (i ? "," : "") << votes[i];
    }
    os << ")";
    return os.str();
}

SuiteResult suite_support() {
    SuiteResult suite{"support"};
    for (int m : kGridM) {
        for (int n : kGridN) {
            for (const auto& votes : all_vote_vectors(n, 2)) {
                for (Version ver : {Version::PerVoterFourier, Version::PreFourier}) {
                    const QuditState post =
                        cast_votes(build_w(m, n), VoteVector{votes, 2}, ver);
                    const SupportReport rep = check_support(post, votes);
                    record(suite, rep.pass,
                           "support check failed: " + instance_tag(m, n, votes) +
                               " " + rep.detail);
                }
                // structured state reproduces the same support structure
                const StructuredBallotState s{m, n, votes};
                const SupportReport rep = check_support(to_dense(s), votes);
                record(suite, rep.pass,
                       "structured support failed: " + instance_tag(m, n, votes));
            }
        }
    }
    return suite;
}

SuiteResult suite_equivalence() {
    SuiteResult suite{"equivalence"};
    for (int m : kGridM) {
        for (int n : kGridN) {
            for (const auto& votes : all_vote_vectors(n, 2)) {
                const QuditState a = cast_votes(build_w(m, n), VoteVector{votes, 2},
                                                Version::PerVoterFourier);
                const QuditState b = cast_votes(build_w(m, n), VoteVector{votes, 2},
                                                Version::PreFourier);
                record(suite, states_equal(a, b, 1e-9),
                       "version mismatch: " + instance_tag(m, n, votes));
                const StructuredBallotState s{m, n, votes};
                record(suite, states_equal(to_dense(s), a, 1e-9),
                       "structured/dense mismatch: " + instance_tag(m, n, votes));
            }
        }
    }
    return suite;
}

SuiteResult suite_marginal() {
    SuiteResult suite{"marginal"};
    for (int m : kGridM) {
        for (int n : kGridN) {
            for (const auto& votes : all_vote_vectors(n, 2)) {
                const QuditState post = cast_votes(
                    build_w(m, n), VoteVector{votes, 2}, Version::PerVoterFourier);
                for (int r = 0; r < n; ++r) {
                    const std::vector<double> p = marginal_from_dense(post, r);
                    double dev = 0.0;
                    for (double pv : p) {
                        dev = std::max(dev, std::abs(pv - 1.0 / m));
                    }
                    record(suite, dev <= 1e-12,
                           "non-uniform marginal: " + instance_tag(m, n, votes));
                    const StructuredBallotState s{m, n, votes};
                    const std::vector<double> q = marginal(s, r);
                    record(suite, total_variation(p, q) <= 1e-12,
                           "structured marginal mismatch: " +
                               instance_tag(m, n, votes));
                }
            }
        }
    }
    return suite;
}

SuiteResult suite_tv() {
    SuiteResult suite{"tv"};
    const int m = 3;
    const int n = 3;
    const int trials = 100000;
    for (const auto& votes :
         {std::vector<int>{0, 0, 0}, std::vector<int>{1, 0, 0},
          std::vector<int>{1, 1, 0}}) {
        const StructuredBallotState s{m, n, votes};
        const QuditState dense = to_dense(s);

        // exact Born distribution over flattened indices
        std::vector<double> exact(27, 0.0);
        for (const auto& [idx, amp] : dense.amplitudes()) {
            exact[static_cast<std::size_t>(idx)] = std::norm(amp);
        }

        SeededRng rng(20240817);
        std::vector<int> out;
        std::vector<double> empirical(27, 0.0);
        bool support_ok = true;
        for (int t = 0; t < trials; ++t) {
            sample_into(s, rng, out);
            std::uint64_t flat = 0;
            for (int v : out) flat = flat * 3 + static_cast<std::uint64_t>(v);
            if (exact[static_cast<std::size_t>(flat)] == 0.0) support_ok = false;
            empirical[static_cast<std::size_t>(flat)] += 1.0 / trials;
        }
        record(suite, support_ok,
               "sample outside dense support: " + instance_tag(m, n, votes));
        record(suite, total_variation(empirical, exact) <= 0.02,
               "TV above 0.02: " + instance_tag(m, n, votes));
    }
    return suite;
}

SuiteResult suite_boxes() {
    SuiteResult suite{"boxes"};
    const int m = 16;
    const std::vector<std::vector<std::vector<int>>> partitions = {
        {{1, 0, 1, 1}},                     // N=1
        {{1, 1}, {0, 1}},                   // N=2
        {{1, 0}, {1, 1, 1}, {0}},           // N=3
    };
    for (const auto& boxes : partitions) {
        long long yes = 0;
        for (const auto& b : boxes) {
            for (int a : b) yes += a;
        }
        const BoxElectionSpec spec{m, boxes, 7};
        const QuditState post = box_post_state(spec);

        // every support index must sum to the YES total mod m
        bool all_ok = true;
        for (const auto& [idx, amp] : post.amplitudes()) {
            long long sum = 0;
            for (int v : post.unflatten(idx)) sum += v;
            if (sum % m != yes % m) all_ok = false;
        }
        record(suite, all_ok, "box support sum mismatch");
        record(suite, run_box_election(spec).sum_mod_m == yes % m,
               "box tally mismatch");
        if (boxes.size() == 1) {
            record(suite, post.amplitudes().size() == 1,
                   "N=1 state is not a single basis vector");
        }
        if (boxes.size() >= 2) {
            for (std::size_t r = 0; r < boxes.size(); ++r) {
                const std::vector<double> p =
                    marginal_from_dense(post, static_cast<int>(r));
                double dev = 0.0;
                for (double pv : p) dev = std::max(dev, std::abs(pv - 1.0 / m));
                record(suite, dev <= 1e-12, "box marginal not uniform");
            }
        }
    }
    return suite;
}

SuiteResult suite_multicandidate() {
    SuiteResult suite{"multicandidate"};
    const int m = 16;
    for (int n = 1; n <= 4; ++n) {
        for (const auto& votes : all_vote_vectors(n, 3)) {
            long long h[3] = {0, 0, 0};
            for (int v : votes) ++h[v];
            const VoteVector vv{votes, 3};
            const CandidateCounts c = run_multicandidate(m, n, vv, 11);
            const bool verbatim_ok =
                c.n_one == h[0] && c.n_two == h[1] && c.n_three == h[2];
            record(suite, verbatim_ok,
                   "three-candidate tally mismatch: " + instance_tag(m, n, votes));
            const std::vector<long long> g =
                run_multicandidate_cumulative(m, n, vv, 11);
            const bool general_ok =
                g.size() == 3 && g[0] == h[0] && g[1] == h[1] && g[2] == h[2];
            record(suite, general_ok,
                   "cumulative-rule mismatch: " + instance_tag(m, n, votes));
        }
    }
    return suite;
}

SuiteResult suite_crt() {
    SuiteResult suite{"crt"};
    // crt_solve against brute force
    for (const auto& moduli :
         {std::vector<long long>{2, 3}, std::vector<long long>{3, 5},
          std::vector<long long>{4, 9}}) {
        const long long prod = moduli[0] * moduli[1];
        for (long long c0 = 0; c0 < moduli[0]; ++c0) {
            for (long long c1 = 0; c1 < moduli[1]; ++c1) {
                long long expected = -1;
                for (long long x = 0; x < prod; ++x) {
                    if (x % moduli[0] == c0 && x % moduli[1] == c1) {
                        expected = x;
                        break;
                    }
                }
                const long long got = crt_solve({moduli, {c0, c1}});
                record(suite, got == expected, "crt_solve disagrees with brute force");
            }
        }
    }
    // full parallel election on n = 6, moduli (2,3). The unanimous full
    // slate sums to 6, which is congruent to 0 mod the product of the
    // moduli; the residues cannot distinguish it from all-NO, so that one
    // vector is checked against the wrapped value.
    for (const auto& votes : all_vote_vectors(6, 2)) {
        const VoteVector vv{votes, 2};
        const long long via_crt = run_crt_election({2, 3}, vv, 5);
        record(suite, via_crt == vv.sum() % 6,
               "crt election tally mismatch: " + instance_tag(6, 6, votes));
        if (vv.sum() < 6) {
            const ElectionSpec spec{8, 6, Version::PerVoterFourier, 5};
            record(suite, run_election(spec, vv, 6).yes_count == via_crt,
                   "crt vs direct election mismatch: " + instance_tag(8, 6, votes));
        }
    }
    return suite;
}

} // namespace

std::vector<std::string> verify_suite_names() {
    return {"support", "equivalence", "marginal", "tv",
            "boxes",   "multicandidate", "crt"};
}

std::vector<SuiteResult> run_verify_suites(const std::string& filter) {
    std::vector<SuiteResult> results;
    auto want = [&filter](const char* name) {
        return filter.empty() || filter == name;
    };
    if (want("support")) results.push_back(suite_support());
    if (want("equivalence")) results.push_back(suite_equivalence());
    if (want("marginal")) results.push_back(suite_marginal());
    if (want("tv")) results.push_back(suite_tv());
    if (want("boxes")) results.push_back(suite_boxes());
    if (want("multicandidate")) results.push_back(suite_multicandidate());
    if (want("crt")) results.push_back(suite_crt());
    return results;
}

} // namespace qballot
