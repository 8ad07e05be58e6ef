#include "qballot/analysis.hpp"

#include <boost/math/distributions/chi_squared.hpp>

#include <cmath>
#include <stdexcept>

namespace qballot {

SupportReport check_support(const QuditState& state,
                            const std::vector<int>& shifts) {
    if (static_cast<int>(shifts.size()) != state.registers()) {
        throw std::invalid_argument("shift count must equal register count");
    }
    const int m = state.dim();
    const int n = state.registers();

    SupportReport report;
    report.expected_size = 1;
    for (int k = 0; k + 1 < n; ++k) {
        report.expected_size *= static_cast<std::uint64_t>(m);
    }
    const double expected_mag =
        std::pow(static_cast<double>(m), -(static_cast<double>(n) - 1.0) / 2.0);

    long long shift_sum = 0;
    for (int a : shifts) shift_sum += a;

    for (const auto& [idx, amp] : state.amplitudes()) {
        ++report.support_size;
        const std::vector<int> o = state.unflatten(idx);
        long long sum = 0;
        for (int v : o) sum += v;
        if (((sum - shift_sum) % m + m) % m != 0) {
            report.offending_index = o;
            report.detail = "support index violates the sum congruence";
            return report;
        }
        const double dev = std::abs(std::abs(amp) - expected_mag);
        report.max_magnitude_deviation =
            std::max(report.max_magnitude_deviation, dev);
        if (dev > 1e-9) {
            report.offending_index = o;
            report.detail = "amplitude magnitude deviates from m^{-(n-1)/2}";
            return report;
        }
    }
    if (report.support_size != report.expected_size) {
        report.detail = "support size differs from m^{n-1}";
        return report;
    }
    report.pass = true;
    return report;
}

std::vector<double> marginal_from_dense(const QuditState& state, int reg) {
    if (reg < 0 || reg >= state.registers()) {
        throw std::invalid_argument("register index out of range");
    }
    std::vector<double> p(static_cast<std::size_t>(state.dim()), 0.0);
    std::uint64_t stride = 1;
    for (int k = state.registers() - 1; k > reg; --k) {
        stride *= static_cast<std::uint64_t>(state.dim());
    }
    for (const auto& [idx, amp] : state.amplitudes()) {
        const std::size_t v = static_cast<std::size_t>(
            (idx / stride) % static_cast<std::uint64_t>(state.dim()));
        p[v] += std::norm(amp);
    }
    return p;
}

double chi_square_critical(int dof, double alpha) {
    const boost::math::chi_squared dist(dof);
    return boost::math::quantile(dist, 1.0 - alpha);
}

UniformityReport chi_square_uniform(const std::vector<int>& samples, int m) {
    if (m < 2) throw std::invalid_argument("modulus must be >= 2");
    if (samples.size() < 10 * static_cast<std::size_t>(m)) {
        throw std::invalid_argument("need at least 10*m samples");
    }
    std::vector<std::size_t> counts(static_cast<std::size_t>(m), 0);
    for (int s : samples) {
        if (s < 0 || s >= m) throw std::invalid_argument("sample out of [0, m)");
        ++counts[static_cast<std::size_t>(s)];
    }

    UniformityReport report;
    report.sample_count = samples.size();
    report.distribution.resize(static_cast<std::size_t>(m));
    const double expected =
        static_cast<double>(samples.size()) / static_cast<double>(m);
    for (int v = 0; v < m; ++v) {
        const double c = static_cast<double>(counts[static_cast<std::size_t>(v)]);
        report.distribution[static_cast<std::size_t>(v)] =
            c / static_cast<double>(samples.size());
        report.max_abs_deviation_from_uniform = std::max(
            report.max_abs_deviation_from_uniform,
            std::abs(report.distribution[static_cast<std::size_t>(v)] -
                     1.0 / static_cast<double>(m)));
        report.chi_square_statistic += (c - expected) * (c - expected) / expected;
    }
    report.critical_value = chi_square_critical(m - 1, 0.001);
    report.pass = report.chi_square_statistic < report.critical_value;
    return report;
}

double total_variation(const std::vector<double>& p,
                       const std::vector<double>& q) {
    if (p.size() != q.size()) {
        throw std::invalid_argument("distribution length mismatch");
    }
    double sp = 0.0;
    double sq = 0.0;
    double tv = 0.0;
    for (std::size_t i = 0; i < p.size(); ++i) {
        sp += p[i];
        sq += q[i];
        tv += std::abs(p[i] - q[i]);
    }
    if (std::abs(sp - 1.0) > 1e-6 || std::abs(sq - 1.0) > 1e-6) {
        throw std::invalid_argument("inputs must be probability distributions");
    }
    return 0.5 * tv;
}

} // namespace qballot
