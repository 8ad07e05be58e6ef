#include "qballot/protocol.hpp"

#include <cmath>
#include <numeric>
#include <stdexcept>
#include <string>

#include "qballot/fastsim.hpp"
#include "qballot/gates.hpp"

namespace qballot {

void VoteVector::validate() const {
    if (alphabet < 2) throw std::invalid_argument("alphabet must be >= 2");
    for (int a : votes) {
        if (a < 0 || a >= alphabet) {
            throw std::invalid_argument("vote out of [0, alphabet)");
        }
    }
}

long long VoteVector::sum() const {
    return std::accumulate(votes.begin(), votes.end(), 0LL);
}

QuditState build_w(int m, int copies) {
    if (copies < 1) throw std::invalid_argument("build_w requires copies >= 1");
    checked_dimension(m, copies);
    Amplitudes amps;
    const double amp = 1.0 / std::sqrt(static_cast<double>(m));
    for (int j = 0; j < m; ++j) {
        std::uint64_t flat = 0;
        for (int k = 0; k < copies; ++k) {
            flat = flat * static_cast<std::uint64_t>(m) + static_cast<std::uint64_t>(j);
        }
        amps[flat] = Complex{amp, 0.0};
    }
    return QuditState(m, copies, std::move(amps));
}

QuditState cast_shifts(const QuditState& state, const std::vector<int>& shifts,
                       Version version) {
    if (static_cast<int>(shifts.size()) != state.registers()) {
        throw std::invalid_argument("shift count must equal register count");
    }
    const int m = state.dim();
    const Unitary fourier = dft(m);
    QuditState current = state;
    if (version == Version::PerVoterFourier) {
        for (int k = 0; k < state.registers(); ++k) {
            current = apply_single(current, fourier, k);
            const int a = shifts[static_cast<std::size_t>(k)];
            if (a % m != 0) current = apply_single(current, shift(m, a), k);
        }
    } else {
        for (int k = 0; k < state.registers(); ++k) {
            current = apply_single(current, fourier, k);
        }
        for (int k = 0; k < state.registers(); ++k) {
            const int a = shifts[static_cast<std::size_t>(k)];
            if (a % m != 0) current = apply_single(current, shift(m, a), k);
        }
    }
    return current;
}

QuditState cast_votes(const QuditState& state, const VoteVector& votes,
                      Version version) {
    votes.validate();
    if (votes.alphabet != 2) {
        throw std::invalid_argument("cast_votes expects a binary alphabet");
    }
    return cast_shifts(state, votes.votes, version);
}

namespace {

TallyOutcome tally_from_outcomes(std::vector<int> outcomes, int m,
                                 int fictional) {
    TallyOutcome t;
    long long sum = 0;
    for (int o : outcomes) sum += o;
    t.outcomes = std::move(outcomes);
    t.sum_mod_m = static_cast<int>(sum % m);
    t.yes_count = t.sum_mod_m;
    t.fictional_votes = fictional;
    return t;
}

} // namespace

TallyOutcome run_election(const ElectionSpec& spec, const VoteVector& votes,
                          int real_voters) {
    votes.validate();
    if (spec.n < 2) throw std::invalid_argument("election requires n >= 2");
    if (spec.m <= spec.n) throw std::invalid_argument("election requires m > n");
    if (real_voters != static_cast<int>(votes.votes.size())) {
        throw std::invalid_argument("real_voters must match vote count");
    }
    if (real_voters > spec.n) {
        throw std::invalid_argument("more voters than slots");
    }
    VoteVector padded = votes;
    padded.votes.resize(static_cast<std::size_t>(spec.n), 0);

    const QuditState post =
        cast_votes(build_w(spec.m, spec.n), padded, spec.version);
    SeededRng rng(spec.seed);
    return tally_from_outcomes(measure_all(post, rng), spec.m,
                               spec.n - real_voters);
}

QuditState box_post_state(const BoxElectionSpec& spec) {
    const int boxes = static_cast<int>(spec.votes_per_box.size());
    if (boxes < 1) throw std::invalid_argument("need at least one ballot box");
    long long voters = 0;
    std::vector<int> per_box_sum;
    per_box_sum.reserve(static_cast<std::size_t>(boxes));
    for (const auto& box : spec.votes_per_box) {
        long long s = 0;
        for (int a : box) {
            if (a != 0 && a != 1) throw std::invalid_argument("box votes are binary");
            s += a;
        }
        voters += static_cast<long long>(box.size());
        per_box_sum.push_back(static_cast<int>(s % spec.m));
    }
    if (spec.m <= voters) {
        throw std::invalid_argument("ballot-box election requires m > total voters");
    }

    QuditState state = build_w(spec.m, boxes);
    const Unitary fourier = dft(spec.m);
    for (int b = 0; b < boxes; ++b) state = apply_single(state, fourier, b);
    const Unitary step = shift(spec.m, 1);
    for (int b = 0; b < boxes; ++b) {
        for (int applications = per_box_sum[static_cast<std::size_t>(b)];
             applications > 0; --applications) {
            state = apply_single(state, step, b);
        }
    }
    return state;
}

TallyOutcome run_box_election(const BoxElectionSpec& spec) {
    const QuditState post = box_post_state(spec);
    SeededRng rng(spec.seed);
    return tally_from_outcomes(measure_all(post, rng), spec.m, 0);
}

namespace {

/// Tally of one shifted election copy. Uses the dense simulator when the
/// instance fits, otherwise the structured sampler; both give the same
/// probability-1 sum.
int copy_tally(int m, const std::vector<int>& shifts, std::uint64_t seed) {
    const int n = static_cast<int>(shifts.size());
    bool dense_ok = true;
    std::uint64_t total = 1;
    for (int i = 0; i < n; ++i) {
        if (total > kDenseCap / static_cast<std::uint64_t>(m)) {
            dense_ok = false;
            break;
        }
        total *= static_cast<std::uint64_t>(m);
    }
    SeededRng rng(seed);
    std::vector<int> outcome;
    if (dense_ok) {
        outcome = measure_all(cast_shifts(build_w(m, n), shifts,
                                          Version::PerVoterFourier),
                              rng);
    } else {
        StructuredBallotState s{m, n, shifts};
        sample_into(s, rng, outcome);
    }
    long long sum = 0;
    for (int o : outcome) sum += o;
    return static_cast<int>(sum % m);
}

} // namespace

CandidateCounts run_multicandidate(int m, int n, const VoteVector& votes,
                                   std::uint64_t seed) {
    votes.validate();
    if (votes.alphabet != 3) {
        throw std::invalid_argument("three-candidate scheme expects alphabet 3");
    }
    if (static_cast<int>(votes.votes.size()) != n) {
        throw std::invalid_argument("vote count must equal n");
    }
    if (m <= 2 * n) throw std::invalid_argument("three candidates require m > 2n");

    std::vector<int> shifts_one(votes.votes.begin(), votes.votes.end());
    std::vector<int> shifts_two;
    shifts_two.reserve(votes.votes.size());
    for (int c : votes.votes) shifts_two.push_back(c >= 1 ? 1 : 0);

    const int tally_one = copy_tally(m, shifts_one, SeededRng::derive(seed, 0));
    const int tally_two = copy_tally(m, shifts_two, SeededRng::derive(seed, 1));

    CandidateCounts counts;
    counts.n_three = tally_one - tally_two;      // n_II + 2n_III minus n_II + n_III
    counts.n_two = tally_two - counts.n_three;
    counts.n_one = n - counts.n_two - counts.n_three;
    return counts;
}

std::vector<long long> run_multicandidate_cumulative(int m, int n,
                                                     const VoteVector& votes,
                                                     std::uint64_t seed) {
    votes.validate();
    if (static_cast<int>(votes.votes.size()) != n) {
        throw std::invalid_argument("vote count must equal n");
    }
    if (m <= n) throw std::invalid_argument("cumulative scheme requires m > n");
    const int c = votes.alphabet;

    // copy t (1-based) counts voters with vote >= t
    std::vector<long long> cumulative(static_cast<std::size_t>(c), 0);
    cumulative[0] = n;
    for (int t = 1; t < c; ++t) {
        std::vector<int> shifts;
        shifts.reserve(votes.votes.size());
        for (int v : votes.votes) shifts.push_back(v >= t ? 1 : 0);
        cumulative[static_cast<std::size_t>(t)] =
            copy_tally(m, shifts, SeededRng::derive(seed, static_cast<std::uint64_t>(t)));
    }
    std::vector<long long> counts(static_cast<std::size_t>(c), 0);
    for (int t = 0; t < c; ++t) {
        const long long upper =
            t + 1 < c ? cumulative[static_cast<std::size_t>(t + 1)] : 0;
        counts[static_cast<std::size_t>(t)] =
            cumulative[static_cast<std::size_t>(t)] - upper;
    }
    return counts;
}

namespace {

long long egcd(long long a, long long b, long long& x, long long& y) {
    if (b == 0) {
        x = 1;
        y = 0;
        return a;
    }
    long long x1 = 0;
    long long y1 = 0;
    const long long g = egcd(b, a % b, x1, y1);
    x = y1;
    y = x1 - (a / b) * y1;
    return g;
}

} // namespace

long long crt_solve(const CongruenceSystem& system) {
    const std::size_t s = system.moduli.size();
    if (s == 0 || system.residues.size() != s) {
        throw std::invalid_argument("congruence system shape mismatch");
    }
    for (std::size_t i = 0; i < s; ++i) {
        if (system.moduli[i] < 2) throw std::invalid_argument("modulus must be >= 2");
        if (system.residues[i] < 0 || system.residues[i] >= system.moduli[i]) {
            throw std::invalid_argument("residue out of range");
        }
        for (std::size_t j = i + 1; j < s; ++j) {
            if (std::gcd(system.moduli[i], system.moduli[j]) != 1) {
                throw std::invalid_argument(
                    "moduli " + std::to_string(system.moduli[i]) + " and " +
                    std::to_string(system.moduli[j]) + " are not coprime");
            }
        }
    }
    long long modulus = system.moduli[0];
    long long x = system.residues[0];
    for (std::size_t i = 1; i < s; ++i) {
        const long long mi = system.moduli[i];
        long long p = 0;
        long long q = 0;
        egcd(modulus, mi, p, q);
        // x + modulus * t = residues[i] (mod mi), t = (c - x) * p mod mi
        long long t = ((system.residues[i] - x) % mi) * (p % mi) % mi;
        t = ((t % mi) + mi) % mi;
        x += modulus * t;
        modulus *= mi;
        x %= modulus;
    }
    return x;
}

long long run_crt_election(const std::vector<long long>& moduli,
                           const VoteVector& votes, std::uint64_t seed) {
    votes.validate();
    if (votes.alphabet != 2) {
        throw std::invalid_argument("crt election expects a binary alphabet");
    }
    long long slots = 1;
    for (long long m : moduli) {
        if (m < 2) throw std::invalid_argument("modulus must be >= 2");
        slots *= m;
    }
    if (static_cast<long long>(votes.votes.size()) > slots) {
        throw std::invalid_argument("more voters than product of moduli");
    }
    std::vector<int> shifts(votes.votes.begin(), votes.votes.end());
    shifts.resize(static_cast<std::size_t>(slots), 0);

    CongruenceSystem system;
    system.moduli = moduli;
    for (std::size_t l = 0; l < moduli.size(); ++l) {
        const int tally =
            copy_tally(static_cast<int>(moduli[l]), shifts,
                       SeededRng::derive(seed, static_cast<std::uint64_t>(l)));
        system.residues.push_back(tally);
    }
    // validates coprimality as a side effect
    return crt_solve(system);
}

ClassicalRun classical_baseline(const VoteVector& votes, int m, SeededRng& rng) {
    votes.validate();
    if (votes.alphabet != 2) {
        throw std::invalid_argument("classical baseline expects a binary alphabet");
    }
    const long long n = static_cast<long long>(votes.votes.size());
    if (m <= n) throw std::invalid_argument("classical baseline requires m > n");

    ClassicalRun run;
    run.stored.reserve(votes.votes.size());
    for (int a : votes.votes) {
        const int l = static_cast<int>(rng.uniform_below(static_cast<std::uint64_t>(m)));
        run.masked_sum += l;
        run.stored.push_back((l + a) % m);
    }
    long long stored_sum = 0;
    for (int v : run.stored) stored_sum += v;
    run.recovered_yes = (((stored_sum - run.masked_sum) % m) + m) % m;
    return run;
}

} // namespace qballot
