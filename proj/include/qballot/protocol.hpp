#pragma once

#include <cstdint>
#include <vector>

#include "qballot/qudit_state.hpp"

namespace qballot {

/// Per-voter choices. alphabet = 2 for YES/NO, 3 for the three-candidate
/// scheme; every vote must lie in [0, alphabet).
struct VoteVector {
    std::vector<int> votes;
    int alphabet = 2;

    void validate() const;
    long long sum() const;
};

/// Which route the two-alternative protocol takes: apply Pi^a F per voter,
/// or Fourier every register up front and let voters apply Pi^a afterwards.
enum class Version { PerVoterFourier, PreFourier };

struct ElectionSpec {
    int m = 0;
    int n = 0;
    Version version = Version::PerVoterFourier;
    std::uint64_t seed = 0;
};

struct TallyOutcome {
    std::vector<int> outcomes; // measured l_k + a_k values
    int sum_mod_m = 0;
    long long yes_count = 0;
    int fictional_votes = 0;
};

struct BoxElectionSpec {
    int m = 0;
    std::vector<std::vector<int>> votes_per_box;
    std::uint64_t seed = 0;
};

struct CongruenceSystem {
    std::vector<long long> moduli;
    std::vector<long long> residues;
};

struct CandidateCounts {
    long long n_one = 0;
    long long n_two = 0;
    long long n_three = 0;
};

/// The shared entangled ballot state: m^{-1/2} sum_j |j>^{x copies}.
QuditState build_w(int m, int copies);

/// Applies Pi^{s_k} F to register k. Pre-fourier order applies all F's
/// first; the post-vote state is the same either way.
QuditState cast_shifts(const QuditState& state, const std::vector<int>& shifts,
                       Version version);

/// Binary-vote wrapper around cast_shifts.
QuditState cast_votes(const QuditState& state, const VoteVector& votes,
                      Version version);

/// Full two-alternative election: pads with NO votes to n slots, builds
/// |W>, casts, measures. yes_count = sum of outcomes mod m.
TallyOutcome run_election(const ElectionSpec& spec, const VoteVector& votes,
                          int real_voters);

/// Pre-measurement state of the ballot-box variant: one register per box,
/// F once per box, then Pi per YES vote in that box.
QuditState box_post_state(const BoxElectionSpec& spec);

TallyOutcome run_box_election(const BoxElectionSpec& spec);

/// Verbatim three-candidate scheme: two copies of |W>, shifts (0,1,2) on
/// copy one and (0,1,1) on copy two. Requires m > 2n.
CandidateCounts run_multicandidate(int m, int n, const VoteVector& votes,
                                   std::uint64_t seed);

/// Cumulative generalization to C candidates: C-1 copies, copy t shifted
/// by [vote >= t]; returns per-candidate counts. Requires m > n.
std::vector<long long> run_multicandidate_cumulative(int m, int n,
                                                     const VoteVector& votes,
                                                     std::uint64_t seed);

/// Unique x in [0, prod moduli) with x = residues[l] mod moduli[l].
long long crt_solve(const CongruenceSystem& system);

/// Parallel election mod each coprime m_l, recombined via crt_solve.
/// n = prod moduli slots; votes shorter than n are padded with NO. The
/// residues determine the YES count mod n, so the result is exact
/// whenever the count is below n; a unanimous full slate wraps to 0.
long long run_crt_election(const std::vector<long long>& moduli,
                           const VoteVector& votes, std::uint64_t seed);

struct ClassicalRun {
    std::vector<int> stored;  // (l_k + a_k) mod m
    long long masked_sum = 0; // y = sum l_k
    long long recovered_yes = 0;
};

/// The classical one-time-pad baseline of the same tally rule.
ClassicalRun classical_baseline(const VoteVector& votes, int m, SeededRng& rng);

} // namespace qballot
