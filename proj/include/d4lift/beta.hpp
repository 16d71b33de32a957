#pragma once

// Numeric side of the positivity functional on pairs. A Levi element acts
// through three real 2x2 factors (u, g1, g2); the functional in coefficient
// form is
//   beta(u, g1, g2) = sqrt(2) i [ (u00 + i u01) z1 + (u10 + i u11) z2 ],
//   z_i = (T_i, g1 W0 g2^T),  W0 = (1, i; -i, 1)/sqrt(2),
// with the polarized-determinant pairing extended C-bilinearly. W0 is the
// rank-1 outer product v u^T / sqrt(2), v = (1,-i), u = (1,i), so with
// a = g1 v, b = g2 u one has z_i = b^T adj(T_i) a / sqrt(2) and the group
// variables trade for complex vectors on Im(conj(a0) a1) = -1,
// Im(conj(b0) b1) = +1. For fixed (a, b) the infimum of |beta| over the
// remaining factor is 2 sqrt(2) sqrt(max(F, 0)), F = Im(z1 conj(z2)),
// attained exactly (value 0) when F < 0.

#include <array>
#include <complex>
#include <optional>

#include "d4lift/exact.hpp"

namespace d4l {

using cplx = std::complex<double>;

struct MPElement {
    // u mixes the two slots, (g1, g2) act on each slot by x -> g1 x g2^T
    std::array<std::array<double, 2>, 2> u{{{1, 0}, {0, 1}}};
    std::array<std::array<double, 2>, 2> g1{{{1, 0}, {0, 1}}};
    std::array<std::array<double, 2>, 2> g2{{{1, 0}, {0, 1}}};
};

cplx beta_value(const PairB& b, const MPElement& r);

struct BetaAnalysis {
    double min_f = 0;             // smallest Im(z1 conj z2) seen
    double certified_margin = 0;  // min over sampled group elements of inf_u |beta|
    bool found_zero = false;
    MPElement witness;  // meaningful when found_zero
};

// gradient-free minimization of F over the (a, b) manifolds with random
// restarts; deterministic for a fixed seed
BetaAnalysis analyze_beta(const PairB& b, int restarts = 24, unsigned seed = 2024);

}  // namespace d4l
