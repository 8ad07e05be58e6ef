#include "qballot/qudit_state.hpp"

#include <cmath>
#include <stdexcept>

namespace qballot {

namespace {

constexpr double kNormTol = 1e-9;
constexpr double kMeasureNormTol = 1e-6;
// entries below this magnitude are dropped after unitary application
constexpr double kPruneTol = 1e-12;

bool finite(const Complex& c) {
    return std::isfinite(c.real()) && std::isfinite(c.imag());
}

} // namespace

std::uint64_t checked_dimension(int m, int registers) {
    if (m < 2) throw std::invalid_argument("qudit dimension must be >= 2");
    if (registers < 1) throw std::invalid_argument("register count must be >= 1");
    std::uint64_t total = 1;
    for (int i = 0; i < registers; ++i) {
        if (total > kDenseCap / static_cast<std::uint64_t>(m)) {
            throw std::invalid_argument(
                "state space m^n exceeds the dense cap 2^24; "
                "use the structured simulator for large instances");
        }
        total *= static_cast<std::uint64_t>(m);
    }
    return total;
}

QuditState::QuditState(int m, int registers, Amplitudes amplitudes)
    : m_(m), n_(registers), amps_(std::move(amplitudes)) {
    const std::uint64_t total = checked_dimension(m, registers);
    double norm2 = 0.0;
    for (const auto& [idx, amp] : amps_) {
        if (idx >= total) throw std::invalid_argument("basis index out of range");
        if (!finite(amp)) throw std::invalid_argument("non-finite amplitude");
        norm2 += std::norm(amp);
    }
    if (std::abs(norm2 - 1.0) > kNormTol) {
        throw std::invalid_argument("state is not normalized");
    }
}

QuditState QuditState::basis(int m, const std::vector<int>& index) {
    Amplitudes amps;
    std::uint64_t flat = 0;
    for (int v : index) {
        if (v < 0 || v >= m) throw std::invalid_argument("basis value out of range");
        flat = flat * static_cast<std::uint64_t>(m) + static_cast<std::uint64_t>(v);
    }
    amps[flat] = Complex{1.0, 0.0};
    return QuditState(m, static_cast<int>(index.size()), std::move(amps));
}

std::uint64_t QuditState::flatten(const std::vector<int>& index) const {
    if (static_cast<int>(index.size()) != n_) {
        throw std::invalid_argument("index length mismatch");
    }
    std::uint64_t flat = 0;
    for (int v : index) {
        if (v < 0 || v >= m_) throw std::invalid_argument("basis value out of range");
        flat = flat * static_cast<std::uint64_t>(m_) + static_cast<std::uint64_t>(v);
    }
    return flat;
}

std::vector<int> QuditState::unflatten(std::uint64_t flat) const {
    std::vector<int> index(static_cast<std::size_t>(n_));
    for (int k = n_ - 1; k >= 0; --k) {
        index[static_cast<std::size_t>(k)] =
            static_cast<int>(flat % static_cast<std::uint64_t>(m_));
        flat /= static_cast<std::uint64_t>(m_);
    }
    return index;
}

Complex QuditState::amplitude(const std::vector<int>& index) const {
    auto it = amps_.find(flatten(index));
    return it == amps_.end() ? Complex{0.0, 0.0} : it->second;
}

double QuditState::norm_squared() const {
    double norm2 = 0.0;
    for (const auto& [idx, amp] : amps_) norm2 += std::norm(amp);
    return norm2;
}

Unitary::Unitary(Eigen::MatrixXcd matrix) : mat_(std::move(matrix)) {
    if (mat_.rows() != mat_.cols() || mat_.rows() < 2) {
        throw std::invalid_argument("unitary must be square with dimension >= 2");
    }
    if (!mat_.allFinite()) throw std::invalid_argument("non-finite matrix entry");
    const Eigen::MatrixXcd gram = mat_ * mat_.adjoint();
    const Eigen::MatrixXcd id =
        Eigen::MatrixXcd::Identity(mat_.rows(), mat_.cols());
    if ((gram - id).cwiseAbs().maxCoeff() > 1e-9) {
        throw std::invalid_argument("matrix is not unitary within 1e-9");
    }
}

QuditState apply_single(const QuditState& state, const Unitary& u, int reg) {
    if (u.dim() != state.dim()) {
        throw std::invalid_argument("unitary dimension does not match state");
    }
    if (reg < 0 || reg >= state.registers()) {
        throw std::invalid_argument("register index out of range");
    }
    const int m = state.dim();
    std::uint64_t stride = 1;
    for (int k = state.registers() - 1; k > reg; --k) {
        stride *= static_cast<std::uint64_t>(m);
    }
    const Eigen::MatrixXcd& mat = u.matrix();

    Amplitudes out;
    for (const auto& [idx, amp] : state.amplitudes()) {
        const int digit =
            static_cast<int>((idx / stride) % static_cast<std::uint64_t>(m));
        const std::uint64_t base = idx - static_cast<std::uint64_t>(digit) * stride;
        for (int l = 0; l < m; ++l) {
            const Complex c = mat(l, digit);
            if (c == Complex{0.0, 0.0}) continue;
            out[base + static_cast<std::uint64_t>(l) * stride] += c * amp;
        }
    }
    for (auto it = out.begin(); it != out.end();) {
        if (std::abs(it->second) < kPruneTol) {
            it = out.erase(it);
        } else {
            ++it;
        }
    }
    return QuditState(m, state.registers(), std::move(out));
}

std::vector<int> measure_all(const QuditState& state, SeededRng& rng) {
    const double norm2 = state.norm_squared();
    if (std::abs(norm2 - 1.0) > kMeasureNormTol) {
        throw std::invalid_argument("cannot measure an unnormalized state");
    }
    const double target = rng.uniform_unit() * norm2;
    double acc = 0.0;
    std::uint64_t chosen = 0;
    bool have = false;
    for (const auto& [idx, amp] : state.amplitudes()) {
        chosen = idx;
        have = true;
        acc += std::norm(amp);
        if (acc > target) break;
    }
    if (!have) throw std::logic_error("empty state");
    return state.unflatten(chosen);
}

bool states_equal(const QuditState& a, const QuditState& b, double tol) {
    if (a.dim() != b.dim() || a.registers() != b.registers()) {
        throw std::invalid_argument("state shape mismatch");
    }
    // pick the reference phase from a's largest amplitude
    std::uint64_t ref = 0;
    double best = -1.0;
    for (const auto& [idx, amp] : a.amplitudes()) {
        const double mag = std::abs(amp);
        if (mag > best) {
            best = mag;
            ref = idx;
        }
    }
    if (best <= 0.0) return b.amplitudes().empty();
    auto itb = b.amplitudes().find(ref);
    if (itb == b.amplitudes().end()) return false;
    const Complex ratio = itb->second / a.amplitudes().at(ref);
    if (std::abs(std::abs(ratio) - 1.0) > tol) return false;

    auto lookup = [](const Amplitudes& amps, std::uint64_t idx) {
        auto it = amps.find(idx);
        return it == amps.end() ? Complex{0.0, 0.0} : it->second;
    };
    for (const auto& [idx, amp] : a.amplitudes()) {
        if (std::abs(amp * ratio - lookup(b.amplitudes(), idx)) > tol) return false;
    }
    for (const auto& [idx, amp] : b.amplitudes()) {
        if (std::abs(lookup(a.amplitudes(), idx) * ratio - amp) > tol) return false;
    }
    return true;
}

} // namespace qballot
