#pragma once

#include <array>
#include <optional>

#include "d4lift/beta.hpp"
#include "d4lift/exact.hpp"

namespace d4l {

// basis of the 4-dim quadratic subspace as 2x2 matrices
inline Mat2 basis_b3() { return Mat2(1, 0, 0, 0); }
inline Mat2 basis_bm3() { return Mat2(0, 0, 0, 1); }
inline Mat2 basis_b4() { return Mat2(0, 0, -1, 0); }
inline Mat2 basis_bm4() { return Mat2(0, 1, 0, 0); }

inline Int qform(const Mat2& x) { return x.det(); }

// polarization of q = det, written out so it is not just q(x+y)-q(x)-q(y)
inline Int bilinear(const Mat2& x, const Mat2& y) {
    return x(0, 0) * y(1, 1) + x(1, 1) * y(0, 0) - x(0, 1) * y(1, 0) - x(1, 0) * y(0, 1);
}

struct BinaryQF {
    Rat a, b, c;
    Rat disc() const { return b * b - 4 * a * c; }
    bool operator==(const BinaryQF& o) const { return a == o.a && b == o.b && c == o.c; }
    bool is_zero() const { return a == 0 && b == 0 && c == 0; }
};

// [q(T1), -(T1,T2), q(T2)], the coefficient triple of det(x T1 - y T2)
BinaryQF t_of_B(const PairB& b);

// Gram determinant (T1,T1)(T2,T2) - (T1,T2)^2; equals -disc(t_of_B)
Int q_of_B(const PairB& b);

// gcd of the eight entries is 1; zero pair is a domain error
bool is_primitive(const PairB& b);

// all nonzero invariant factors of the stacked coordinate matrix are 1;
// zero pair is vacuously true (callers flag the degenerate case in reports)
bool is_slice_primitive(const PairB& b);

struct WECoord {
    Rat a;
    std::array<Rat, 3> beta{}, gamma{};
    Rat d;
    bool operator==(const WECoord& o) const {
        return a == o.a && beta == o.beta && gamma == o.gamma && d == o.d;
    }
};

// norm, adjoint and trace pairing of the rank-3 diagonal cubic algebra
inline Rat ne(const std::array<Rat, 3>& z) { return z[0] * z[1] * z[2]; }
inline std::array<Rat, 3> sharp(const std::array<Rat, 3>& z) {
    return {z[1] * z[2], z[2] * z[0], z[0] * z[1]};
}
inline Rat pair_e(const std::array<Rat, 3>& x, const std::array<Rat, 3>& y) {
    return x[0] * y[0] + x[1] * y[1] + x[2] * y[2];
}

WECoord to_we(const PairB& b);
// inverse of to_we; throws std::domain_error when w has non-integer coordinates
PairB from_we(const WECoord& w);

enum class PsdStatus { NOT_PSD, PSD_BOUNDARY, POS_DEF };

struct PsdResult {
    PsdStatus status;
    std::optional<MPElement> witness;  // present for NOT_PSD: |beta(witness)| < tol
    double certified_margin = 0;       // POS_DEF: observed lower bound on inf |beta|
    bool degenerate = false;           // zero pair
};

PsdResult psd_status(const PairB& b, double tol);

const char* psd_status_name(PsdStatus s);

}  // namespace d4l
