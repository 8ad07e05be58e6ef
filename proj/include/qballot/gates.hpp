#pragma once

#include <cstdint>

#include "qballot/qudit_state.hpp"

namespace qballot {

/// m-th order discrete Fourier transform: entry (l, j) = exp(2 pi i j l / m) / sqrt(m).
Unitary dft(int m);

/// Cyclic shift |j> -> |j + a mod m>. a may be any integer.
Unitary shift(int m, long long a);

/// Linear extension of the basis-state copier: |j>|0>...|0> -> |j>|j>...|j>.
/// Every nonzero amplitude must have all non-leading registers at 0.
QuditState copy_basis(const QuditState& state);

/// Static circuit-size model for one election round, m = 2^k.
struct GateCountReport {
    int k = 0; // log2 m
    std::uint64_t hadamard_gates = 0;
    std::uint64_t copier_gates = 0;
    std::uint64_t fourier_gates_per_register = 0;
    std::uint64_t increment_gates_per_vote = 0;
    std::uint64_t total = 0;
};

/// hadamard = k, copier = 2k(n-1), fourier/register = k(k+1)/2,
/// increment/vote = k, total = hadamard + copier + n*(fourier + increment).
GateCountReport gate_counts(std::uint64_t m, std::uint64_t n);

} // namespace qballot
