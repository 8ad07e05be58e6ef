#include "qballot/fastsim.hpp"

#include <cmath>
#include <numeric>
#include <stdexcept>

namespace qballot {

void StructuredBallotState::validate() const {
    if (m < 2) throw std::invalid_argument("modulus must be >= 2");
    if (n < 2) throw std::invalid_argument("structured state requires n >= 2");
    if (static_cast<std::int64_t>(shifts.size()) != n) {
        throw std::invalid_argument("shift count must equal register count");
    }
    for (int a : shifts) {
        if (a < 0 || a >= m) throw std::invalid_argument("shift out of [0, m)");
    }
}

void sample_into(const StructuredBallotState& state, SeededRng& rng,
                 std::vector<int>& out) {
    state.validate();
    const std::uint64_t m = static_cast<std::uint64_t>(state.m);
    out.resize(static_cast<std::size_t>(state.n));
    std::uint64_t free_sum = 0;
    for (std::int64_t k = 0; k + 1 < state.n; ++k) {
        const std::uint64_t l = rng.uniform_below(m);
        free_sum += l;
        if (free_sum >= m) free_sum -= m;
        out[static_cast<std::size_t>(k)] = static_cast<int>(
            (l + static_cast<std::uint64_t>(state.shifts[static_cast<std::size_t>(k)])) % m);
    }
    const std::uint64_t last = (m - free_sum) % m;
    out[static_cast<std::size_t>(state.n - 1)] = static_cast<int>(
        (last + static_cast<std::uint64_t>(state.shifts[static_cast<std::size_t>(state.n - 1)])) % m);
}

std::vector<std::vector<int>> sample_outcomes(const StructuredBallotState& state,
                                              SeededRng& rng, int trials) {
    if (trials < 1) throw std::invalid_argument("trials must be >= 1");
    std::vector<std::vector<int>> samples(static_cast<std::size_t>(trials));
    for (auto& s : samples) sample_into(state, rng, s);
    return samples;
}

QuditState to_dense(const StructuredBallotState& state) {
    state.validate();
    if (state.n > 64) throw std::invalid_argument("state too large for dense form");
    const int n = static_cast<int>(state.n);
    checked_dimension(state.m, n);
    const int m = state.m;
    const double amp =
        std::pow(static_cast<double>(m), -(static_cast<double>(n) - 1.0) / 2.0);

    Amplitudes out;
    // odometer over the n-1 free digits; the last digit closes the congruence
    std::vector<int> l(static_cast<std::size_t>(n), 0);
    while (true) {
        int sum = 0;
        for (int k = 0; k + 1 < n; ++k) sum += l[static_cast<std::size_t>(k)];
        l[static_cast<std::size_t>(n - 1)] = (m - sum % m) % m;
        std::uint64_t flat = 0;
        for (int k = 0; k < n; ++k) {
            const int v = (l[static_cast<std::size_t>(k)] +
                           state.shifts[static_cast<std::size_t>(k)]) % m;
            flat = flat * static_cast<std::uint64_t>(m) + static_cast<std::uint64_t>(v);
        }
        out[flat] = Complex{amp, 0.0};

        int k = n - 2;
        while (k >= 0 && ++l[static_cast<std::size_t>(k)] == m) {
            l[static_cast<std::size_t>(k)] = 0;
            --k;
        }
        if (k < 0) break;
    }
    return QuditState(m, n, std::move(out));
}

std::vector<double> marginal(const StructuredBallotState& state,
                             std::int64_t reg) {
    state.validate();
    if (reg < 0 || reg >= state.n) {
        throw std::invalid_argument("register index out of range");
    }
    // each value of one register has m^{n-2} completions out of m^{n-1}
    return std::vector<double>(static_cast<std::size_t>(state.m),
                               1.0 / static_cast<double>(state.m));
}

} // namespace qballot
