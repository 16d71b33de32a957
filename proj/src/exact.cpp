#include "d4lift/exact.hpp"

#include <algorithm>
#include <stdexcept>

namespace d4l {

IntMatrix IntMatrix::operator*(const IntMatrix& o) const {
    if (cols != o.rows) throw std::invalid_argument("IntMatrix::mul: shape mismatch");
    IntMatrix r(rows, o.cols);
    for (int i = 0; i < rows; ++i)
        for (int k = 0; k < cols; ++k) {
            const Int& v = (*this)(i, k);
            if (v == 0) continue;
            for (int j = 0; j < o.cols; ++j) r(i, j) += v * o(k, j);
        }
    return r;
}

Int IntMatrix::det() const {
    if (rows != cols) throw std::invalid_argument("IntMatrix::det: not square");
    if (rows == 0) return 1;
    if (rows == 1) return (*this)(0, 0);
    if (rows == 2) return (*this)(0, 0) * (*this)(1, 1) - (*this)(0, 1) * (*this)(1, 0);
    Int d = 0;
    for (int j = 0; j < cols; ++j) {
        if ((*this)(0, j) == 0) continue;
        IntMatrix minor(rows - 1, cols - 1);
        for (int i = 1; i < rows; ++i) {
            int cc = 0;
            for (int c = 0; c < cols; ++c) {
                if (c == j) continue;
                minor(i - 1, cc++) = (*this)(i, c);
            }
        }
        Int term = (*this)(0, j) * minor.det();
        d += (j % 2 == 0) ? term : -term;
    }
    return d;
}

namespace {

void swap_rows(IntMatrix& m, int i, int j) {
    if (i == j) return;
    for (int c = 0; c < m.cols; ++c) std::swap(m(i, c), m(j, c));
}

void add_row(IntMatrix& m, int dst, int src, const Int& q) {
    if (q == 0) return;
    for (int c = 0; c < m.cols; ++c) m(dst, c) += q * m(src, c);
}

void negate_row(IntMatrix& m, int i) {
    for (int c = 0; c < m.cols; ++c) m(i, c) = -m(i, c);
}

}  // namespace

HnfResult hnf(const IntMatrix& m) {
    IntMatrix h = m;
    IntMatrix u = IntMatrix::identity(m.rows);
    int pivot_row = 0;
    for (int col = 0; col < h.cols && pivot_row < h.rows; ++col) {
        // gcd elimination below the pivot
        while (true) {
            int best = -1;
            for (int i = pivot_row; i < h.rows; ++i) {
                if (h(i, col) == 0) continue;
                if (best < 0 || cmp(abs(h(i, col)), abs(h(best, col))) < 0) best = i;
            }
            if (best < 0) break;
            swap_rows(h, pivot_row, best);
            swap_rows(u, pivot_row, best);
            bool below_clear = true;
            for (int i = pivot_row + 1; i < h.rows; ++i) {
                if (h(i, col) == 0) continue;
                Int q = fdiv(h(i, col), h(pivot_row, col));
                add_row(h, i, pivot_row, -q);
                add_row(u, i, pivot_row, -q);
                if (h(i, col) != 0) below_clear = false;
            }
            if (below_clear) break;
        }
        if (h(pivot_row, col) == 0) continue;
        if (h(pivot_row, col) < 0) {
            negate_row(h, pivot_row);
            negate_row(u, pivot_row);
        }
        for (int i = 0; i < pivot_row; ++i) {
            Int q = fdiv(h(i, col), h(pivot_row, col));
            add_row(h, i, pivot_row, -q);
            add_row(u, i, pivot_row, -q);
        }
        ++pivot_row;
    }
    return {std::move(h), std::move(u)};
}

std::vector<Int> snf_invariant_factors(const IntMatrix& m) {
    IntMatrix a = m;
    auto swap_cols = [&](int i, int j) {
        if (i == j) return;
        for (int r = 0; r < a.rows; ++r) std::swap(a(r, i), a(r, j));
    };
    auto add_col = [&](int dst, int src, const Int& q) {
        if (q == 0) return;
        for (int r = 0; r < a.rows; ++r) a(r, dst) += q * a(r, src);
    };
    std::vector<Int> factors;
    int t = 0;
    const int nmin = std::min(a.rows, a.cols);
    while (t < nmin) {
        int pi = -1, pj = -1;
        for (int i = t; i < a.rows; ++i)
            for (int j = t; j < a.cols; ++j) {
                if (a(i, j) == 0) continue;
                if (pi < 0 || cmp(abs(a(i, j)), abs(a(pi, pj))) < 0) pi = i, pj = j;
            }
        if (pi < 0) break;
        swap_rows(a, t, pi);
        swap_cols(t, pj);
        bool clean = false;
        while (!clean) {
            clean = true;
            for (int i = t + 1; i < a.rows; ++i) {
                if (a(i, t) == 0) continue;
                Int q = fdiv(a(i, t), a(t, t));
                add_row(a, i, t, -q);
                if (a(i, t) != 0) {
                    swap_rows(a, t, i);
                    clean = false;
                }
            }
            for (int j = t + 1; j < a.cols; ++j) {
                if (a(t, j) == 0) continue;
                Int q = fdiv(a(t, j), a(t, t));
                add_col(j, t, -q);
                if (a(t, j) != 0) {
                    swap_cols(t, j);
                    clean = false;
                }
            }
            if (clean) {
                // divisibility fix-up: fold a bad entry into the pivot row
                for (int i = t + 1; i < a.rows && clean; ++i)
                    for (int j = t + 1; j < a.cols && clean; ++j)
                        if (!divides(a(t, t), a(i, j))) {
                            add_row(a, t, i, 1);
                            clean = false;
                        }
            }
        }
        factors.push_back(abs(a(t, t)));
        ++t;
    }
    return factors;
}

std::vector<Mat2> hecke_coset_reps(const Int& n) {
    if (n <= 0) throw std::domain_error("hecke_coset_reps: n must be positive");
    std::vector<Mat2> reps;
    for (Int a = 1; a <= n; ++a) {
        if (!divides(a, n)) continue;
        Int d = exact_div(n, a);
        for (Int b = 0; b < d; ++b) reps.emplace_back(a, b, Int(0), d);
    }
    return reps;
}

std::vector<RightDivisor> right_divisors(const PairB& b, const Int& n) {
    std::vector<RightDivisor> out;
    for (const Mat2& r : hecke_coset_reps(n)) {
        // B r^{-1} = [(d T1 - c T2)/n, (-b T1 + a T2)/n]
        Mat2 num1 = r(1, 1) * b.t1 - r(1, 0) * b.t2;
        Mat2 num2 = r(0, 0) * b.t2 - r(0, 1) * b.t1;
        bool ok = true;
        PairB bp;
        for (int i = 0; i < 2 && ok; ++i)
            for (int j = 0; j < 2 && ok; ++j) {
                if (!divides(n, num1(i, j)) || !divides(n, num2(i, j))) {
                    ok = false;
                    break;
                }
                bp.t1(i, j) = exact_div(num1(i, j), n);
                bp.t2(i, j) = exact_div(num2(i, j), n);
            }
        if (ok) out.push_back({r, std::move(bp)});
    }
    return out;
}

IntMatrix stacked(const PairB& b) {
    // rows = the two slots, columns = coordinates in the ambient 8-dim space
    // ordered (b1, b2, b3, b4, b-4, b-3, b-2, b-1); a slot (p,q;r,s) sits in the
    // middle four columns as (p, -r, q, s), the b±1, b±2 columns stay zero
    IntMatrix m(2, 8);
    const Mat2* ts[2] = {&b.t1, &b.t2};
    for (int row = 0; row < 2; ++row) {
        const Mat2& t = *ts[row];
        m(row, 2) = t(0, 0);
        m(row, 3) = -t(1, 0);
        m(row, 4) = t(0, 1);
        m(row, 5) = t(1, 1);
    }
    return m;
}

Int minor_gcd2(const PairB& b) {
    IntMatrix m = stacked(b);
    Int g = 0;
    for (int c1 = 0; c1 < 8; ++c1)
        for (int c2 = c1 + 1; c2 < 8; ++c2) g = gcd(g, m(0, c1) * m(1, c2) - m(0, c2) * m(1, c1));
    return g;
}

}  // namespace d4l
