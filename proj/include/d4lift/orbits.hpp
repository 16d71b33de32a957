#pragma once

#include <array>
#include <stdexcept>
#include <string>

#include "d4lift/exact.hpp"
#include "d4lift/pairspace.hpp"

namespace d4l {

// vector in the 6-dim split quadratic space, basis {b2, b3, b4, b-4, b-3, b-2}
struct V33Vector {
    std::array<Rat, 6> c{};

    Rat norm() const;  // (y, y) = 2 (c0 c5 + c1 c4 + c2 c3)
    bool is_zero() const;
    bool is_integral() const;
    Int content() const;  // gcd of coordinates; integral vectors only

    bool operator==(const V33Vector& o) const { return c == o.c; }
};

// raised when a bounded reduction search exhausts its move budget
struct ReductionIncomplete : std::runtime_error {
    explicit ReductionIncomplete(const std::string& what) : std::runtime_error(what) {}
};

enum class OrbitKind { ISOTROPIC, ANISOTROPIC };

struct OrbitCanonical {
    OrbitKind kind = OrbitKind::ISOTROPIC;
    Int n;      // content of the input vector
    Int alpha;  // (y,y) / n^2 for anisotropic vectors, 0 for isotropic
    IntMatrix transform;  // g in SL4(Z) acting through the wedge square

    V33Vector canonical() const;  // n b2, or n b3 + (n alpha / 2) b-3
};

// action of g in GL4(Z) on V_{3,3} identified with skew 4x4 matrices, A -> g A g^T
V33Vector v33_apply(const IntMatrix& g, const V33Vector& y);

OrbitCanonical reduce_v33(const V33Vector& y);

// 0 iff B = 0, 4 iff q_of_B != 0, else the rank of the residual diagonal triple
int rank_of(const PairB& b);
int rank_of(const WECoord& w);

struct Rank3Canonical {
    Int alpha, n, m, r;
    // unimodular triple carrying the input to the canonical pair:
    // canonical = pair_apply(pair_mix, row, col, input)
    Mat2 pair_mix, row, col;

    PairB canonical() const;  // [y_alpha, -n b4 - m b-4 + r b-3]
};

// [T1', T2'] with S_i = pair_mix(i,0) T1 + pair_mix(i,1) T2 and T_i' = row S_i col^T
PairB pair_apply(const Mat2& pair_mix, const Mat2& row, const Mat2& col, const PairB& b);

Rank3Canonical reduce_pair_rank3(const PairB& b);

}  // namespace d4l
