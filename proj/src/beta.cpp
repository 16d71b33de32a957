#include "d4lift/beta.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <random>

namespace d4l {

namespace {

struct Vec2c {
    cplx a0, a1;
};

cplx pair_with_outer(const Mat2& t, const Vec2c& a, const Vec2c& b) {
    // (T, a b^T) under the polarized-determinant pairing = b^T adj(T) a
    double t00 = t(0, 0).get_d(), t01 = t(0, 1).get_d(), t10 = t(1, 0).get_d(), t11 = t(1, 1).get_d();
    cplx w0 = t11 * a.a0 - t01 * a.a1;  // adj(T) row 0 . a
    cplx w1 = -t10 * a.a0 + t00 * a.a1;
    return b.a0 * w0 + b.a1 * w1;
}

constexpr double kInvSqrt2 = 0.70710678118654752440;

// point on the slot-1 manifold Im(conj(a0) a1) = -1 (phase dropped)
Vec2c slot1_point(double x, double logy) {
    double sy = std::exp(0.5 * logy);
    return {cplx(sy, -x / sy), cplx(0, -1.0 / sy)};
}

// point on the slot-2 manifold Im(conj(b0) b1) = +1
Vec2c slot2_point(double x, double logy) {
    double sy = std::exp(0.5 * logy);
    return {cplx(sy, x / sy), cplx(0, 1.0 / sy)};
}

struct Eval {
    double f;       // Im(z1 conj z2)
    double g;       // |z1|^2 + |z2|^2
    cplx z1, z2;
};

Eval eval_point(const PairB& b, const std::array<double, 4>& p) {
    Vec2c a = slot1_point(p[0], p[1]);
    Vec2c bb = slot2_point(p[2], p[3]);
    cplx z1 = pair_with_outer(b.t1, a, bb) * kInvSqrt2;
    cplx z2 = pair_with_outer(b.t2, a, bb) * kInvSqrt2;
    return {std::imag(z1 * std::conj(z2)), std::norm(z1) + std::norm(z2), z1, z2};
}

// minimal Nelder-Mead on R^4
template <typename Fn>
std::array<double, 4> nelder_mead(Fn&& fn, std::array<double, 4> start, double step, int iters) {
    constexpr int n = 4;
    std::array<std::array<double, 4>, n + 1> simplex;
    std::array<double, n + 1> val;
    simplex[0] = start;
    for (int i = 1; i <= n; ++i) {
        simplex[i] = start;
        simplex[i][i - 1] += step;
    }
    for (int i = 0; i <= n; ++i) val[i] = fn(simplex[i]);
    for (int it = 0; it < iters; ++it) {
        std::array<int, n + 1> order;
        for (int i = 0; i <= n; ++i) order[i] = i;
        std::sort(order.begin(), order.end(), [&](int l, int r) { return val[l] < val[r]; });
        std::array<std::array<double, 4>, n + 1> s2;
        std::array<double, n + 1> v2;
        for (int i = 0; i <= n; ++i) s2[i] = simplex[order[i]], v2[i] = val[order[i]];
        simplex = s2, val = v2;
        std::array<double, 4> centroid{};
        for (int i = 0; i < n; ++i)
            for (int k = 0; k < 4; ++k) centroid[k] += simplex[i][k] / n;
        auto blend = [&](double t) {
            std::array<double, 4> p;
            for (int k = 0; k < 4; ++k) p[k] = centroid[k] + t * (simplex[n][k] - centroid[k]);
            return p;
        };
        auto refl = blend(-1.0);
        double fr = fn(refl);
        if (fr < val[0]) {
            auto exp_p = blend(-2.0);
            double fe = fn(exp_p);
            if (fe < fr)
                simplex[n] = exp_p, val[n] = fe;
            else
                simplex[n] = refl, val[n] = fr;
        } else if (fr < val[n - 1]) {
            simplex[n] = refl, val[n] = fr;
        } else {
            auto con = blend(0.5);
            double fc = fn(con);
            if (fc < val[n]) {
                simplex[n] = con, val[n] = fc;
            } else {
                for (int i = 1; i <= n; ++i) {
                    for (int k = 0; k < 4; ++k) simplex[i][k] = 0.5 * (simplex[i][k] + simplex[0][k]);
                    val[i] = fn(simplex[i]);
                }
            }
        }
    }
    int best = 0;
    for (int i = 1; i <= n; ++i)
        if (val[i] < val[best]) best = i;
    return simplex[best];
}

MPElement witness_from_point(const std::array<double, 4>& p, const Eval& e) {
    MPElement w;
    Vec2c a = slot1_point(p[0], p[1]);
    Vec2c b = slot2_point(p[2], p[3]);
    w.g1 = {{{std::real(a.a0), -std::imag(a.a0)}, {std::real(a.a1), -std::imag(a.a1)}}};
    w.g2 = {{{std::real(b.a0), std::imag(b.a0)}, {std::real(b.a1), std::imag(b.a1)}}};
    double f = std::imag(e.z1 * std::conj(e.z2));
    if (f < 0) {
        // kill beta exactly: c1 = s, c2 = -s z1/z2 with s = 1/sqrt(-Im(z1/z2))
        cplx t = e.z1 / e.z2;
        double s = 1.0 / std::sqrt(-std::imag(t));
        cplx c1(s, 0), c2 = -s * t;
        w.u = {{{std::real(c1), std::imag(c1)}, {std::real(c2), std::imag(c2)}}};
    }
    return w;
}

double frob(const Mat2& m) {
    double s = 0;
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) {
            double v = m(i, j).get_d();
            s += v * v;
        }
    return std::sqrt(s);
}

}  // namespace

cplx beta_value(const PairB& b, const MPElement& r) {
    Vec2c v{cplx(1, 0), cplx(0, -1)}, u{cplx(1, 0), cplx(0, 1)};
    Vec2c a{r.g1[0][0] * v.a0 + r.g1[0][1] * v.a1, r.g1[1][0] * v.a0 + r.g1[1][1] * v.a1};
    Vec2c bb{r.g2[0][0] * u.a0 + r.g2[0][1] * u.a1, r.g2[1][0] * u.a0 + r.g2[1][1] * u.a1};
    cplx z1 = pair_with_outer(b.t1, a, bb) * kInvSqrt2;
    cplx z2 = pair_with_outer(b.t2, a, bb) * kInvSqrt2;
    cplx c1(r.u[0][0], r.u[0][1]), c2(r.u[1][0], r.u[1][1]);
    return std::sqrt(2.0) * cplx(0, 1) * (c1 * z1 + c2 * z2);
}

BetaAnalysis analyze_beta(const PairB& b, int restarts, unsigned seed) {
    BetaAnalysis out;
    double scale = frob(b.t1) + frob(b.t2);
    if (scale == 0) {
        out.found_zero = true;  // beta vanishes identically
        return out;
    }
    double s2 = scale * scale;
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> ux(-4.0, 4.0), uy(-3.0, 3.0);

    double best_f = 1e300;
    std::array<double, 4> best_fp{};
    double best_g = 1e300;
    std::array<double, 4> best_gp{};

    auto in_box = [](const std::array<double, 4>& p) {
        return std::abs(p[0]) <= 20 && std::abs(p[1]) <= 12 && std::abs(p[2]) <= 20 &&
               std::abs(p[3]) <= 12;
    };
    auto record = [&](const std::array<double, 4>& p) -> Eval {
        Eval e = eval_point(b, p);
        if (in_box(p)) {
            if (e.f < best_f) best_f = e.f, best_fp = p;
            if (e.g < best_g) best_g = e.g, best_gp = p;
        }
        return e;
    };

    record({0, 0, 0, 0});
    for (int r = 0; r < restarts; ++r) {
        std::array<double, 4> start{ux(rng), uy(rng), ux(rng), uy(rng)};
        // F is unbounded below off the cone; clip so the search settles inside
        // the negative region at moderate coordinates instead of running away
        nelder_mead([&](const std::array<double, 4>& p) { return std::max(record(p).f / s2, -1.0); },
                    start, 0.7, 220);
        nelder_mead([&](const std::array<double, 4>& p) { return record(p).g / s2; }, start, 0.7, 220);
        if (best_f / s2 < -1e-6) break;  // decisively negative, stop early
    }

    out.min_f = best_f / s2;
    if (best_f / s2 < -1e-12) {
        Eval e = eval_point(b, best_fp);
        out.found_zero = true;
        out.witness = witness_from_point(best_fp, e);
        return out;
    }
    if (best_g / s2 < 1e-6) {
        // possible common zero of both slots; polish hard before deciding
        auto pg = nelder_mead([&](const std::array<double, 4>& p) { return eval_point(b, p).g / s2; },
                              best_gp, 0.05, 2500);
        Eval e = eval_point(b, pg);
        if (e.g / s2 < 1e-18) {
            out.found_zero = true;
            out.witness = witness_from_point(pg, e);  // u stays identity, both z vanish
            return out;
        }
    }
    out.certified_margin = 2.0 * std::sqrt(2.0) * std::sqrt(std::max(best_f, 0.0));
    return out;
}

}  // namespace d4l
