#pragma once

#include <cstdint>
#include <vector>

#include "qballot/qudit_state.hpp"

namespace qballot {

/// Symbolic post-vote state: the uniform superposition over
/// {(l_1 + a_1, ..., l_n + a_n) : sum l_k = 0 mod m}, all amplitudes
/// +m^{-(n-1)/2}. Scales to millions of registers.
struct StructuredBallotState {
    int m = 0;
    std::int64_t n = 0;
    std::vector<int> shifts; // a_k mod m, one per register

    void validate() const; // m >= 2, n >= 2, shifts.size() == n, entries in [0, m)
};

/// One Born-rule sample, written into `out` (resized to n). Draws the first
/// n-1 digits uniformly and solves the last from the congruence.
void sample_into(const StructuredBallotState& state, SeededRng& rng,
                 std::vector<int>& out);

std::vector<std::vector<int>> sample_outcomes(const StructuredBallotState& state,
                                              SeededRng& rng, int trials);

/// Materializes the dense state; throws above the dense cap.
QuditState to_dense(const StructuredBallotState& state);

/// Exact single-register outcome distribution (uniform 1/m for n >= 2).
std::vector<double> marginal(const StructuredBallotState& state,
                             std::int64_t reg);

} // namespace qballot
