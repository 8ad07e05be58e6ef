#pragma once

#include <Eigen/Dense>

#include <complex>
#include <cstdint>
#include <map>
#include <vector>

#include "qballot/rng.hpp"

namespace qballot {

using Complex = std::complex<double>;

/// Amplitudes keyed by flattened basis index, zero entries omitted.
/// std::map keeps iteration order deterministic, which the seeded
/// measurement sampler relies on.
using Amplitudes = std::map<std::uint64_t, Complex>;

/// Largest m^n a dense / sparse-map state may span. Larger instances go
/// through the structured simulator.
inline constexpr std::uint64_t kDenseCap = std::uint64_t{1} << 24;

/// Returns m^n, or throws if it exceeds kDenseCap.
std::uint64_t checked_dimension(int m, int registers);

/// Immutable state of `registers` qudits, each of dimension m.
class QuditState {
public:
    /// Validates index ranges, finiteness, and unit norm (tol 1e-9).
    QuditState(int m, int registers, Amplitudes amplitudes);

    /// Computational basis state |index[0]>|index[1]>...
    static QuditState basis(int m, const std::vector<int>& index);

    int dim() const { return m_; }
    int registers() const { return n_; }
    const Amplitudes& amplitudes() const { return amps_; }

    std::uint64_t flatten(const std::vector<int>& index) const;
    std::vector<int> unflatten(std::uint64_t flat) const;

    /// Amplitude of a basis index (zero when absent from the map).
    Complex amplitude(const std::vector<int>& index) const;

    double norm_squared() const;

private:
    int m_;
    int n_;
    Amplitudes amps_;
};

/// m x m unitary acting on a single register.
class Unitary {
public:
    /// Validates squareness, finiteness and U U^dag = I within 1e-9.
    explicit Unitary(Eigen::MatrixXcd matrix);

    int dim() const { return static_cast<int>(mat_.rows()); }
    const Eigen::MatrixXcd& matrix() const { return mat_; }

private:
    Eigen::MatrixXcd mat_;
};

/// Applies u to one register, identity on the rest.
QuditState apply_single(const QuditState& state, const Unitary& u, int reg);

/// Samples a full computational-basis outcome under the Born rule.
/// Throws if the norm is outside [1 - 1e-6, 1 + 1e-6].
std::vector<int> measure_all(const QuditState& state, SeededRng& rng);

/// True iff a = exp(i theta) b for some global phase, entrywise within tol.
bool states_equal(const QuditState& a, const QuditState& b, double tol);

} // namespace qballot
