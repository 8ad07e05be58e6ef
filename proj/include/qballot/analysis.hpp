#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "qballot/qudit_state.hpp"

namespace qballot {

struct SupportReport {
    bool pass = false;
    std::uint64_t support_size = 0;
    std::uint64_t expected_size = 0;
    double max_magnitude_deviation = 0.0;
    std::optional<std::vector<int>> offending_index;
    std::string detail;
};

/// Checks the post-vote structure: every support index o satisfies
/// sum(o_k - a_k) = 0 mod m, support size is m^{n-1}, and all magnitudes
/// equal m^{-(n-1)/2} within 1e-9.
SupportReport check_support(const QuditState& state,
                            const std::vector<int>& shifts);

/// p(v) = sum of |amplitude|^2 over indices whose register value is v.
std::vector<double> marginal_from_dense(const QuditState& state, int reg);

struct UniformityReport {
    int register_index = -1;
    std::vector<double> distribution;
    double max_abs_deviation_from_uniform = 0.0;
    double chi_square_statistic = 0.0;
    double critical_value = 0.0;
    std::size_t sample_count = 0;
    bool pass = false;
};

/// Pearson chi-square against uniform on [0, m), significance 0.001.
/// Requires at least 10*m samples.
UniformityReport chi_square_uniform(const std::vector<int>& samples, int m);

/// Upper critical value of chi-square with `dof` degrees of freedom.
double chi_square_critical(int dof, double alpha);

/// (1/2) sum |p_i - q_i|. Both inputs must sum to 1 within 1e-6.
double total_variation(const std::vector<double>& p,
                       const std::vector<double>& q);

} // namespace qballot
