#include "qballot/gates.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace qballot {

Unitary dft(int m) {
    if (m < 2) throw std::invalid_argument("dft requires m >= 2");
    Eigen::MatrixXcd mat(m, m);
    const double scale = 1.0 / std::sqrt(static_cast<double>(m));
    for (int l = 0; l < m; ++l) {
        for (int j = 0; j < m; ++j) {
            const double angle = 2.0 * std::numbers::pi *
                                 static_cast<double>(j) * static_cast<double>(l) /
                                 static_cast<double>(m);
            mat(l, j) = scale * Complex{std::cos(angle), std::sin(angle)};
        }
    }
    return Unitary(std::move(mat));
}

Unitary shift(int m, long long a) {
    if (m < 2) throw std::invalid_argument("shift requires m >= 2");
    const long long mm = m;
    const long long r = ((a % mm) + mm) % mm;
    Eigen::MatrixXcd mat = Eigen::MatrixXcd::Zero(m, m);
    for (int j = 0; j < m; ++j) {
        mat(static_cast<int>((j + r) % mm), j) = Complex{1.0, 0.0};
    }
    return Unitary(std::move(mat));
}

QuditState copy_basis(const QuditState& state) {
    const int m = state.dim();
    const int n = state.registers();
    Amplitudes out;
    for (const auto& [idx, amp] : state.amplitudes()) {
        const std::vector<int> digits = state.unflatten(idx);
        for (int k = 1; k < n; ++k) {
            if (digits[static_cast<std::size_t>(k)] != 0) {
                throw std::invalid_argument(
                    "copy_basis requires all ancilla registers in |0>");
            }
        }
        std::uint64_t flat = 0;
        for (int k = 0; k < n; ++k) {
            flat = flat * static_cast<std::uint64_t>(m) +
                   static_cast<std::uint64_t>(digits[0]);
        }
        out[flat] = amp;
    }
    return QuditState(m, n, std::move(out));
}

GateCountReport gate_counts(std::uint64_t m, std::uint64_t n) {
    if (n < 1) throw std::invalid_argument("gate_counts requires n >= 1");
    if (m < 2 || (m & (m - 1)) != 0) {
        throw std::invalid_argument("gate_counts requires m to be a power of two");
    }
    GateCountReport report;
    std::uint64_t v = m;
    while (v > 1) {
        v >>= 1;
        ++report.k;
    }
    const std::uint64_t k = static_cast<std::uint64_t>(report.k);
    report.hadamard_gates = k;
    report.copier_gates = 2 * k * (n - 1);
    report.fourier_gates_per_register = k * (k + 1) / 2;
    report.increment_gates_per_vote = k;
    report.total = report.hadamard_gates + report.copier_gates +
                   n * (report.fourier_gates_per_register +
                        report.increment_gates_per_vote);
    return report;
}

} // namespace qballot
