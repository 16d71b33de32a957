#pragma once

#include <array>
#include <vector>

#include "d4lift/rational.hpp"

namespace d4l {

// 2x2 integer matrix
struct Mat2 {
    std::array<std::array<Int, 2>, 2> e{};

    Mat2() = default;
    Mat2(Int a, Int b, Int c, Int d) { e = {{{std::move(a), std::move(b)}, {std::move(c), std::move(d)}}}; }

    static Mat2 identity() { return Mat2(1, 0, 0, 1); }
    static Mat2 zero() { return Mat2(); }

    const Int& operator()(int i, int j) const { return e[i][j]; }
    Int& operator()(int i, int j) { return e[i][j]; }

    bool operator==(const Mat2& o) const { return e == o.e; }

    Int det() const { return e[0][0] * e[1][1] - e[0][1] * e[1][0]; }
    Mat2 adj() const { return Mat2(e[1][1], -e[0][1], -e[1][0], e[0][0]); }
    Mat2 transpose() const { return Mat2(e[0][0], e[1][0], e[0][1], e[1][1]); }

    Mat2 operator*(const Mat2& o) const {
        Mat2 r;
        for (int i = 0; i < 2; ++i)
            for (int j = 0; j < 2; ++j) r.e[i][j] = e[i][0] * o.e[0][j] + e[i][1] * o.e[1][j];
        return r;
    }
    Mat2 operator+(const Mat2& o) const {
        Mat2 r;
        for (int i = 0; i < 2; ++i)
            for (int j = 0; j < 2; ++j) r.e[i][j] = e[i][j] + o.e[i][j];
        return r;
    }
    Mat2 operator-(const Mat2& o) const {
        Mat2 r;
        for (int i = 0; i < 2; ++i)
            for (int j = 0; j < 2; ++j) r.e[i][j] = e[i][j] - o.e[i][j];
        return r;
    }
    Mat2 operator-() const { return Mat2(-e[0][0], -e[0][1], -e[1][0], -e[1][1]); }
    friend Mat2 operator*(const Int& s, const Mat2& m) {
        return Mat2(s * m.e[0][0], s * m.e[0][1], s * m.e[1][0], s * m.e[1][1]);
    }
    bool is_zero() const { return e[0][0] == 0 && e[0][1] == 0 && e[1][0] == 0 && e[1][1] == 0; }
};

// pair of 2x2 integer matrices, the coefficient index B = [T1, T2]
struct PairB {
    Mat2 t1, t2;
    bool operator==(const PairB& o) const { return t1 == o.t1 && t2 == o.t2; }
    bool is_zero() const { return t1.is_zero() && t2.is_zero(); }
};

// dense integer matrix, row major
struct IntMatrix {
    int rows = 0, cols = 0;
    std::vector<Int> a;

    IntMatrix() = default;
    IntMatrix(int r, int c) : rows(r), cols(c), a(static_cast<size_t>(r) * c) {}
    static IntMatrix identity(int n) {
        IntMatrix m(n, n);
        for (int i = 0; i < n; ++i) m(i, i) = 1;
        return m;
    }

    const Int& operator()(int i, int j) const { return a[static_cast<size_t>(i) * cols + j]; }
    Int& operator()(int i, int j) { return a[static_cast<size_t>(i) * cols + j]; }
    bool operator==(const IntMatrix& o) const { return rows == o.rows && cols == o.cols && a == o.a; }

    IntMatrix operator*(const IntMatrix& o) const;
    Int det() const;  // square only, expansion for n <= 4
    bool is_zero() const {
        for (const auto& v : a)
            if (v != 0) return false;
        return true;
    }
};

struct HnfResult {
    IntMatrix h;  // canonical row Hermite form: echelon, positive pivots, entries above pivots in [0, pivot)
    IntMatrix u;  // unimodular, u * m = h
};

HnfResult hnf(const IntMatrix& m);

// d1 | d2 | ... , zero factors dropped
std::vector<Int> snf_invariant_factors(const IntMatrix& m);

// one representative per left coset GL2(Z)\{r : det r = n}: (a,b;0,d), ad=n, 0<=b<d
std::vector<Mat2> hecke_coset_reps(const Int& n);

struct RightDivisor {
    Mat2 r;
    PairB bprime;  // bprime * r = b
};

// sub-list of hecke_coset_reps(n) with B r^{-1} integral, paired with B' = B r^{-1}
std::vector<RightDivisor> right_divisors(const PairB& b, const Int& n);

// the pair flattened to two rows of 8 (row i = T_i row-major)
IntMatrix stacked(const PairB& b);

// gcd of all 2x2 minors of stacked(B); 0 when rank(stacked) <= 1.
// B r^{-1} integral forces det(r) | minor_gcd2, so this bounds the divisor sum.
Int minor_gcd2(const PairB& b);

}  // namespace d4l
