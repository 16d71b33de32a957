#include "d4lift/orbits.hpp"

#include <algorithm>
#include <optional>
#include <utility>
#include <vector>

namespace d4l {

namespace {

// V_{3,3} as skew 4x4 matrices under the wedge-square action A -> g A g^T.
// Dictionary: b2 <-> e12, b3 <-> e13, b4 <-> e14, b-4 <-> e23, b-3 <-> -e24,
// b-2 <-> e34; then (y,y) = 2 Pf(A) and unimodular g preserves the pairing.
template <typename T>
using Skew = std::array<std::array<T, 4>, 4>;

template <typename T>
Skew<T> skew_of(const V33Vector& y) {
    Skew<T> a{};
    a[0][1] = T(y.c[0]);
    a[0][2] = T(y.c[1]);
    a[0][3] = T(y.c[2]);
    a[1][2] = T(y.c[3]);
    a[1][3] = T(-y.c[4]);
    a[2][3] = T(y.c[5]);
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < i; ++j) a[i][j] = -a[j][i];
    return a;
}

template <typename T>
V33Vector v33_of(const Skew<T>& a) {
    V33Vector y;
    y.c[0] = a[0][1];
    y.c[1] = a[0][2];
    y.c[2] = a[0][3];
    y.c[3] = a[1][2];
    y.c[4] = -a[1][3];
    y.c[5] = a[2][3];
    return y;
}

// the SL4 rotation carrying d1 e12 + d2 e34 to d1 e13 - d2 e24
IntMatrix e2e3_rotation() {
    IntMatrix g(4, 4);
    g(0, 0) = 1;
    g(1, 2) = -1;
    g(2, 1) = 1;
    g(3, 3) = 1;
    return g;
}

struct SkewReducer {
    Skew<Int> a;
    IntMatrix g = IntMatrix::identity(4);

    // row i += k row j and col i += k col j; det +1
    void addrc(int i, int j, const Int& k) {
        for (int t = 0; t < 4; ++t) a[i][t] += k * a[j][t];
        for (int t = 0; t < 4; ++t) a[t][i] += k * a[t][j];
        for (int t = 0; t < 4; ++t) g(i, t) += k * g(j, t);
    }
    // (row i, row j) <- (row j, -row i), same on columns; det +1
    void rotrc(int i, int j) {
        for (int t = 0; t < 4; ++t) std::swap(a[i][t], a[j][t]);
        for (int t = 0; t < 4; ++t) a[j][t] = -a[j][t];
        for (int t = 0; t < 4; ++t) std::swap(a[t][i], a[t][j]);
        for (int t = 0; t < 4; ++t) a[t][j] = -a[t][j];
        for (int t = 0; t < 4; ++t) std::swap(g(i, t), g(j, t));
        for (int t = 0; t < 4; ++t) g(j, t) = -g(j, t);
    }
    // negate rows/cols 0 and 2; det +1; flips the signs of a[0][1] and a[2][3]
    void flip02() {
        for (int i : {0, 2}) {
            for (int t = 0; t < 4; ++t) a[i][t] = -a[i][t];
            for (int t = 0; t < 4; ++t) a[t][i] = -a[t][i];
            for (int t = 0; t < 4; ++t) g(i, t) = -g(i, t);
        }
    }
    // a <- e a e^T, g <- e g
    void lmul(const IntMatrix& e) {
        Skew<Int> na{};
        for (int i = 0; i < 4; ++i)
            for (int j = 0; j < 4; ++j) {
                Int s = 0;
                for (int k = 0; k < 4; ++k)
                    for (int l = 0; l < 4; ++l) s += e(i, k) * a[k][l] * e(j, l);
                na[i][j] = s;
            }
        IntMatrix ng(4, 4);
        for (int i = 0; i < 4; ++i)
            for (int j = 0; j < 4; ++j) {
                Int s = 0;
                for (int k = 0; k < 4; ++k) s += e(i, k) * g(k, j);
                ng(i, j) = s;
            }
        a = na;
        g = ng;
    }
};

Int content_of(const Mat2& m) {
    Int g = 0;
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) g = gcd(g, m(i, j));
    return g;
}

// ---- rank over Q -------------------------------------------------------------

struct RM2 {
    std::array<std::array<Rat, 2>, 2> e{};
    RM2() = default;
    RM2(Rat a, Rat b, Rat c, Rat d) { e = {{{std::move(a), std::move(b)}, {std::move(c), std::move(d)}}}; }
    Rat det() const { return e[0][0] * e[1][1] - e[0][1] * e[1][0]; }
    bool is_zero() const {
        return e[0][0] == 0 && e[0][1] == 0 && e[1][0] == 0 && e[1][1] == 0;
    }
};

RM2 rmul(const RM2& x, const RM2& y) {
    RM2 r;
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) r.e[i][j] = x.e[i][0] * y.e[0][j] + x.e[i][1] * y.e[1][j];
    return r;
}

RM2 rtrans(const RM2& x) { return RM2(x.e[0][0], x.e[1][0], x.e[0][1], x.e[1][1]); }

RM2 rlin(const Rat& x, const RM2& s, const Rat& y, const RM2& t) {
    RM2 r;
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) r.e[i][j] = x * s.e[i][j] + y * t.e[i][j];
    return r;
}

Rat rbilinear(const RM2& x, const RM2& y) {
    return x.e[0][0] * y.e[1][1] + x.e[1][1] * y.e[0][0] - x.e[0][1] * y.e[1][0] -
           x.e[1][0] * y.e[0][1];
}

int rank_residual(const std::array<Rat, 3>& c, const Rat& d) {
    if (ne(c) != 0) return 3;
    auto s = sharp(c);
    if (s[0] != 0 || s[1] != 0 || s[2] != 0) return 2;
    if (c[0] != 0 || c[1] != 0 || c[2] != 0) return 1;
    return d != 0 ? 1 : 0;
}

int rank_rat(RM2 t1, RM2 t2) {
    if (t1.is_zero() && t2.is_zero()) return 0;
    Rat q1 = t1.det(), q2 = t2.det(), b12 = rbilinear(t1, t2);
    Rat q = 4 * q1 * q2 - b12 * b12;
    if (q != 0) return 4;

    // arrange det(t2) = 0: the value form x^2 q1 + xy b12 + y^2 q2 has a double
    // root since its discriminant is -q = 0
    if (q2 != 0) {
        if (q1 == 0) {
            std::swap(t1, t2);
        } else {
            RM2 nt2 = rlin(-b12, t1, 2 * q1, t2);
            t2 = nt2;
        }
    }
    if (t2.det() != 0) throw ReductionIncomplete("rank: double root step failed");

    if (t2.is_zero()) {
        // kill the bottom-right entry of t1 by shears/rotations
        if (t1.e[1][1] != 0) {
            if (t1.e[0][1] != 0) {
                Rat lam = -t1.e[1][1] / t1.e[0][1];
                for (int j = 0; j < 2; ++j) t1.e[1][j] += lam * t1.e[0][j];
            } else if (t1.e[1][0] != 0) {
                Rat lam = -t1.e[1][1] / t1.e[1][0];
                for (int i = 0; i < 2; ++i) t1.e[i][1] += lam * t1.e[i][0];
            } else if (t1.e[0][0] != 0) {
                for (int i = 0; i < 2; ++i) t1.e[i][1] += t1.e[i][0];  // make (0,1) nonzero
                Rat lam = -t1.e[1][1] / t1.e[0][1];
                for (int j = 0; j < 2; ++j) t1.e[1][j] += lam * t1.e[0][j];
            } else {
                t1 = rmul(RM2(0, 1, -1, 0), t1);  // diag(0, x) -> top row
            }
        }
        return rank_residual({t1.e[0][1], 0, -t1.e[1][0]}, t1.e[0][0]);
    }

    // t2 has rank one; rotate it onto the top-left corner
    Rat p0, p1, w0, w1;
    if (t2.e[0][0] != 0 || t2.e[1][0] != 0) {
        p0 = t2.e[0][0], p1 = t2.e[1][0];
        if (p0 != 0)
            w0 = 1, w1 = t2.e[0][1] / p0;
        else
            w0 = 1, w1 = t2.e[1][1] / p1;
    } else {
        p0 = t2.e[0][1], p1 = t2.e[1][1];
        w0 = 0, w1 = 1;
    }
    RM2 g1 = (p0 != 0) ? RM2(1, 0, -p1 / p0, 1) : RM2(0, 1, -1, 0);
    Rat r0 = w0, r1 = w1;
    RM2 g2 = (r0 != 0) ? RM2(1, 0, -r1 / r0, 1) : RM2(0, 1, -1, 0);
    t1 = rmul(rmul(g1, t1), rtrans(g2));
    t2 = rmul(rmul(g1, t2), rtrans(g2));
    if (t2.e[0][1] != 0 || t2.e[1][0] != 0 || t2.e[1][1] != 0 || t2.e[0][0] == 0)
        throw ReductionIncomplete("rank: corner normalization failed");
    if (t1.e[1][1] != 0) throw ReductionIncomplete("rank: residual shape violated");
    return rank_residual({t1.e[0][1], -t2.e[0][0], -t1.e[1][0]}, t1.e[0][0]);
}

RM2 rm2_of(const Mat2& m) {
    return RM2(Rat(m(0, 0)), Rat(m(0, 1)), Rat(m(1, 0)), Rat(m(1, 1)));
}

// ---- tracked moves on a pair --------------------------------------------------

struct Tracked {
    PairB b;
    Mat2 p = Mat2::identity(), u = Mat2::identity(), v = Mat2::identity();

    explicit Tracked(const PairB& b0) : b(b0) {}

    void pairop(const Mat2& q) {
        Mat2 t1 = q(0, 0) * b.t1 + q(0, 1) * b.t2;
        Mat2 t2 = q(1, 0) * b.t1 + q(1, 1) * b.t2;
        b.t1 = t1;
        b.t2 = t2;
        p = q * p;
    }
    void rowcol(const Mat2& lu, const Mat2& lv) {
        b.t1 = lu * b.t1 * lv.transpose();
        b.t2 = lu * b.t2 * lv.transpose();
        u = lu * u;
        v = lv * v;
    }
};

// row/col SL2 x SL2 reduction of a content-1 matrix with positive determinant h
// to diag(1, h); final parity fix keeps both factors in SL2(Z)
void snf2_sl(Tracked& tr) {
    Mat2& t = tr.b.t1;
    // nearest-integer quotient keeps the descent geometric
    auto rdiv = [](const Int& a, const Int& b) -> Int { return fdiv(2 * a + b, 2 * b); };
    auto rowshear = [&](int i, int j, const Int& k) {
        Mat2 e = Mat2::identity();
        e(i, j) = k;
        tr.rowcol(e, Mat2::identity());
    };
    auto colshear = [&](int i, int j, const Int& k) {
        // col i += k col j acting on the right; realized as v row-op
        Mat2 e = Mat2::identity();
        e(i, j) = k;
        tr.rowcol(Mat2::identity(), e);
    };
    auto rowrot = [&] { tr.rowcol(Mat2(0, 1, -1, 0), Mat2::identity()); };
    auto colrot = [&] { tr.rowcol(Mat2::identity(), Mat2(0, 1, -1, 0)); };

    for (int guard = 0;; ++guard) {
        if (guard > 128) throw ReductionIncomplete("pair reduction: slot one normal form");
        if (t(0, 0) == 0) {
            if (t(1, 0) != 0)
                rowrot();
            else if (t(0, 1) != 0)
                colrot();
            else
                throw ReductionIncomplete("pair reduction: degenerate slot one");
            continue;
        }
        if (t(1, 0) != 0) {
            Int q = rdiv(t(1, 0), t(0, 0));
            rowshear(1, 0, -q);
            if (t(1, 0) != 0) rowrot();
            continue;
        }
        if (t(0, 1) != 0) {
            Int q = rdiv(t(0, 1), t(0, 0));
            colshear(1, 0, -q);
            if (t(0, 1) != 0) colrot();
            continue;
        }
        if (!divides(t(0, 0), t(1, 1))) {
            rowshear(0, 1, 1);
            continue;
        }
        break;
    }
    if (t(0, 0) == -1) {
        // diag(-1, -h) -> diag(1, h); both factors pick up det -1, fixed below
        tr.rowcol(Mat2(-1, 0, 0, 1), Mat2(1, 0, 0, -1));
    }
    if (tr.u.det() == -1) {
        if (tr.v.det() != -1) throw ReductionIncomplete("pair reduction: parity mismatch");
        tr.rowcol(Mat2(-1, 0, 0, 1), Mat2(-1, 0, 0, 1));
    }
}

struct SliceState {
    Int n, m, r;
};

SliceState read_slice(const PairB& b) { return {b.t2(1, 0), -b.t2(0, 1), b.t2(1, 1)}; }

// shift r into the half-open window (-k, k]
Int window_shift(const Int& r, const Int& k) { return fdiv(r + k - 1, 2 * k); }

void normalize_slice(Tracked& tr, const Int& h) {
    auto kill_p = [&] {
        Int p = tr.b.t2(0, 0);
        if (p != 0) tr.pairop(Mat2(1, 0, -p, 1));
    };
    kill_p();
    Int alpha = 2 * h;
    for (int guard = 0; guard < 256; ++guard) {
        SliceState s = read_slice(tr.b);
        if (s.n > 0) {
            Int k = h * s.n;
            Int t = window_shift(s.r, k);
            if (t != 0) {
                tr.rowcol(Mat2(1, t, 0, 1), Mat2(1, 0, -t * h, 1));
                kill_p();
                continue;
            }
        }
        if (s.m > 0) {
            Int k = h * s.m;
            Int c = window_shift(s.r, k);
            if (c != 0) {
                tr.rowcol(Mat2(1, 0, h * c, 1), Mat2(1, -c, 0, 1));
                kill_p();
                continue;
            }
        }
        if (h == 1 && (s.n < s.m || (s.n == s.m && s.r < 0))) {
            tr.rowcol(Mat2(0, -1, 1, 0), Mat2(0, -1, 1, 0));
            kill_p();
            continue;
        }
        return;
    }
    throw ReductionIncomplete("pair reduction: slice normalization budget");
}

}  // namespace

Rat V33Vector::norm() const { return 2 * (c[0] * c[5] + c[1] * c[4] + c[2] * c[3]); }

bool V33Vector::is_zero() const {
    for (const auto& x : c)
        if (x != 0) return false;
    return true;
}

bool V33Vector::is_integral() const {
    for (const auto& x : c)
        if (x.get_den() != 1) return false;
    return true;
}

Int V33Vector::content() const {
    Int g = 0;
    for (const auto& x : c) {
        if (x.get_den() != 1) throw std::domain_error("content: non-integral vector");
        g = gcd(g, x.get_num());
    }
    return g;
}

V33Vector OrbitCanonical::canonical() const {
    V33Vector y;
    if (kind == OrbitKind::ISOTROPIC) {
        y.c[0] = Rat(n);
    } else {
        y.c[1] = Rat(n);
        y.c[4] = Rat(n * alpha) / 2;
    }
    return y;
}

V33Vector v33_apply(const IntMatrix& g, const V33Vector& y) {
    auto a = skew_of<Rat>(y);
    Skew<Rat> r{};
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) {
            Rat s = 0;
            for (int k = 0; k < 4; ++k)
                for (int l = 0; l < 4; ++l) s += Rat(g(i, k)) * a[k][l] * Rat(g(j, l));
            r[i][j] = s;
        }
    return v33_of<Rat>(r);
}

OrbitCanonical reduce_v33(const V33Vector& y) {
    if (!y.is_integral()) throw std::domain_error("reduce_v33: vector must be integral");
    if (y.is_zero()) throw std::domain_error("reduce_v33: zero vector");

    SkewReducer red;
    red.a = skew_of<Int>(y);

    for (int guard = 0;; ++guard) {
        if (guard > 256) throw ReductionIncomplete("reduce_v33: move budget exhausted");
        int mi = -1, mj = -1;
        for (int i = 0; i < 4; ++i)
            for (int j = i + 1; j < 4; ++j) {
                if (red.a[i][j] == 0) continue;
                if (mi < 0 || mpz_cmpabs(red.a[i][j].get_mpz_t(), red.a[mi][mj].get_mpz_t()) < 0)
                    mi = i, mj = j;
            }
        if (mi < 0) throw ReductionIncomplete("reduce_v33: vanished unexpectedly");
        if (mi != 0) {
            red.rotrc(0, mi);
            continue;
        }
        if (mj != 1) {
            red.rotrc(1, mj);
            continue;
        }
        if (red.a[0][1] < 0) {
            red.flip02();
            continue;
        }
        const Int p = red.a[0][1];
        bool dirty = false;
        for (int k = 2; k < 4; ++k) {
            if (red.a[0][k] != 0) {
                red.addrc(k, 1, -fdiv(red.a[0][k], p));
                if (red.a[0][k] != 0) dirty = true;
            }
            if (red.a[1][k] != 0) {
                red.addrc(k, 0, fdiv(red.a[1][k], p));
                if (red.a[1][k] != 0) dirty = true;
            }
        }
        if (dirty) continue;
        if (!divides(p, red.a[2][3])) {
            red.addrc(0, 2, 1);
            continue;
        }
        break;
    }

    const Int d1 = red.a[0][1];
    const Int d2 = red.a[2][3];
    OrbitCanonical out;
    out.n = d1;
    if (d2 == 0) {
        out.kind = OrbitKind::ISOTROPIC;
        out.alpha = 0;
        out.transform = red.g;
    } else {
        out.kind = OrbitKind::ANISOTROPIC;
        out.alpha = 2 * exact_div(d2, d1);
        red.lmul(e2e3_rotation());
        out.transform = red.g;
    }
    if (out.transform.det() != 1) throw ReductionIncomplete("reduce_v33: transform left SL4");
    if (!(v33_apply(out.transform, y) == out.canonical()))
        throw ReductionIncomplete("reduce_v33: reapplication mismatch");
    return out;
}

int rank_of(const PairB& b) { return rank_rat(rm2_of(b.t1), rm2_of(b.t2)); }

int rank_of(const WECoord& w) {
    RM2 t1(w.d, w.gamma[0], -w.gamma[2], -w.beta[1]);
    RM2 t2(-w.gamma[1], -w.beta[2], w.beta[0], w.a);
    return rank_rat(t1, t2);
}

PairB Rank3Canonical::canonical() const {
    PairB b;
    b.t1 = Mat2(1, 0, 0, exact_div(alpha, 2));
    b.t2 = Mat2(0, -m, n, r);
    return b;
}

PairB pair_apply(const Mat2& pair_mix, const Mat2& row, const Mat2& col, const PairB& b) {
    Mat2 s1 = pair_mix(0, 0) * b.t1 + pair_mix(0, 1) * b.t2;
    Mat2 s2 = pair_mix(1, 0) * b.t1 + pair_mix(1, 1) * b.t2;
    PairB out;
    out.t1 = row * s1 * col.transpose();
    out.t2 = row * s2 * col.transpose();
    return out;
}

Rank3Canonical reduce_pair_rank3(const PairB& b) {
    if (b.is_zero()) throw std::domain_error("reduce_pair_rank3: zero pair");
    if (!is_primitive(b)) throw std::domain_error("reduce_pair_rank3: pair must be primitive");
    const Int q = q_of_B(b);
    if (q < 0) throw std::domain_error("reduce_pair_rank3: not positive semidefinite");
    const int rk = rank_of(b);
    if (rk != 3 && rk != 4) throw std::domain_error("reduce_pair_rank3: rank must be 3 or 4");

    Tracked base(b);
    Int a0 = base.b.t1.det();
    Int b0 = bilinear(base.b.t1, base.b.t2);
    Int c0 = base.b.t2.det();
    if (q == 0 && a0 == 0) {
        base.pairop(Mat2(0, 1, -1, 0));  // (t1, t2) <- (t2, -t1)
        a0 = base.b.t1.det();
        b0 = bilinear(base.b.t1, base.b.t2);
        c0 = base.b.t2.det();
    }
    if (a0 <= 0) throw std::domain_error("reduce_pair_rank3: not positive semidefinite");

    // primitive vectors (x, y) whose combination x T1 + y T2 has minimal positive
    // determinant among content-one combinations; value form is
    // f(x, y) = a0 x^2 + b0 x y + c0 y^2
    std::vector<std::pair<Int, Int>> cands;
    Int h = 0;
    auto value = [&](const Int& x, const Int& y) -> Int { return a0 * x * x + b0 * x * y + c0 * y * y; };
    auto combo = [&](const Int& x, const Int& y) {
        return Mat2(x * base.b.t1(0, 0) + y * base.b.t2(0, 0), x * base.b.t1(0, 1) + y * base.b.t2(0, 1),
                    x * base.b.t1(1, 0) + y * base.b.t2(1, 0), x * base.b.t1(1, 1) + y * base.b.t2(1, 1));
    };
    if (q > 0) {
        const Int vcap = abs(a0) + abs(b0) + abs(c0) + 8;
        for (Int v = 1; v <= vcap && cands.empty(); ++v) {
            Int xb = sqrt(Int(4 * c0 * v / q)) + 1;
            Int yb = sqrt(Int(4 * a0 * v / q)) + 1;
            for (Int x = -xb; x <= xb; ++x)
                for (Int y = -yb; y <= yb; ++y) {
                    if (x == 0 && y == 0) continue;
                    if (value(x, y) != v) continue;
                    if (content_of(combo(x, y)) != 1) continue;
                    cands.emplace_back(x, y);
                }
            if (!cands.empty()) h = v;
        }
    } else {
        // f = (a0 x + (b0/2) y)^2 / a0; walk the level lines t = a0 x + (b0/2) y
        const Int half = exact_div(b0, 2);
        const Int g = gcd(a0, half);
        Int s, t;
        mpz_class gg;
        mpz_gcdext(gg.get_mpz_t(), s.get_mpz_t(), t.get_mpz_t(), a0.get_mpz_t(), half.get_mpz_t());
        for (Int k = 1; k <= 64 && cands.empty(); ++k) {
            for (int sign : {1, -1}) {
                Int tt = sign * k * g;
                Int x0 = s * exact_div(tt, g), y0 = t * exact_div(tt, g);
                for (Int j = -48; j <= 48; ++j) {
                    Int x = x0 - j * exact_div(half, g);
                    Int y = y0 + j * exact_div(a0, g);
                    if (content_of(combo(x, y)) != 1) continue;
                    cands.emplace_back(x, y);
                }
            }
            if (!cands.empty()) h = exact_div(k * k * g * g, a0);
        }
    }
    if (cands.empty()) throw ReductionIncomplete("reduce_pair_rank3: no unit-content combination");

    // prefer the identity direction so canonical inputs stay fixed
    std::stable_sort(cands.begin(), cands.end(), [](const auto& l, const auto& r) {
        auto key = [](const std::pair<Int, Int>& c) {
            if (c.first == 1 && c.second == 0) return 0;
            if (c.first == 0 && c.second == 1) return 1;
            return 2;
        };
        return key(l) < key(r);
    });

    std::optional<Rank3Canonical> best;
    for (const auto& [x, y] : cands) {
        Int bs, bt;
        mpz_class gg;
        mpz_gcdext(gg.get_mpz_t(), bs.get_mpz_t(), bt.get_mpz_t(), x.get_mpz_t(), y.get_mpz_t());
        if (gg != 1) continue;  // non-primitive direction cannot complete to SL2
        Tracked tr = base;
        tr.pairop(Mat2(x, y, -bt, bs));
        try {
            snf2_sl(tr);
            if (!(tr.b.t1 == Mat2(1, 0, 0, h)))
                throw ReductionIncomplete("reduce_pair_rank3: slot one normalization failed");
            normalize_slice(tr, h);
        } catch (const ReductionIncomplete&) {
            continue;  // another direction may still normalize
        }
        SliceState s2 = read_slice(tr.b);
        Rank3Canonical cand;
        cand.alpha = 2 * h;
        cand.n = s2.n;
        cand.m = s2.m;
        cand.r = s2.r;
        cand.pair_mix = tr.p;
        cand.row = tr.u;
        cand.col = tr.v;
        auto lex_less = [](const Rank3Canonical& l, const Rank3Canonical& r) {
            if (l.n != r.n) return l.n < r.n;
            if (l.m != r.m) return l.m < r.m;
            return l.r < r.r;
        };
        if (!best || lex_less(cand, *best)) best = cand;
    }
    if (!best) throw ReductionIncomplete("reduce_pair_rank3: no reducible direction");

    if (best->n < 0 || best->m < 0)
        throw std::domain_error("reduce_pair_rank3: not positive semidefinite");
    if (best->pair_mix.det() != 1 || best->row.det() != 1 || best->col.det() != 1)
        throw ReductionIncomplete("reduce_pair_rank3: transform left SL2");
    if (!(pair_apply(best->pair_mix, best->row, best->col, b) == best->canonical()))
        throw ReductionIncomplete("reduce_pair_rank3: reapplication mismatch");
    return *best;
}

}  // namespace d4l
