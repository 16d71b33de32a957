#include "d4lift/pairspace.hpp"

#include <cmath>
#include <stdexcept>

namespace d4l {

BinaryQF t_of_B(const PairB& b) {
    return {Rat(qform(b.t1)), Rat(-bilinear(b.t1, b.t2)), Rat(qform(b.t2))};
}

Int q_of_B(const PairB& b) {
    Int g11 = bilinear(b.t1, b.t1), g12 = bilinear(b.t1, b.t2), g22 = bilinear(b.t2, b.t2);
    return g11 * g22 - g12 * g12;
}

bool is_primitive(const PairB& b) {
    if (b.is_zero()) throw std::domain_error("is_primitive: zero pair");
    Int g = 0;
    for (const Mat2* t : {&b.t1, &b.t2})
        for (int i = 0; i < 2; ++i)
            for (int j = 0; j < 2; ++j) g = gcd(g, (*t)(i, j));
    return g == 1;
}

bool is_slice_primitive(const PairB& b) {
    for (const Int& d : snf_invariant_factors(stacked(b)))
        if (d != 1) return false;
    return true;
}

WECoord to_we(const PairB& b) {
    WECoord w;
    const Mat2 &t1 = b.t1, &t2 = b.t2;
    w.d = Rat(t1(0, 0));
    w.beta[1] = Rat(-t1(1, 1));
    w.gamma[2] = Rat(-t1(1, 0));
    w.gamma[0] = Rat(t1(0, 1));
    w.gamma[1] = Rat(-t2(0, 0));
    w.a = Rat(t2(1, 1));
    w.beta[0] = Rat(t2(1, 0));
    w.beta[2] = Rat(-t2(0, 1));
    return w;
}

namespace {
Int rat_to_int(const Rat& r) {
    if (r.get_den() != 1) throw std::domain_error("from_we: non-integer coordinate");
    return r.get_num();
}
}  // namespace

PairB from_we(const WECoord& w) {
    PairB b;
    // T1 = gamma1 b-4 - beta2 b-3 + d b3 + gamma3 b4
    b.t1 = Mat2(rat_to_int(w.d), rat_to_int(w.gamma[0]), rat_to_int(-w.gamma[2]), rat_to_int(-w.beta[1]));
    // T2 = -beta3 b-4 + a b-3 - gamma2 b3 - beta1 b4
    b.t2 = Mat2(rat_to_int(-w.gamma[1]), rat_to_int(-w.beta[2]), rat_to_int(w.beta[0]), rat_to_int(w.a));
    return b;
}

namespace {

// closed-form witness when both slots lie on one line carrying a negative form:
// with w = adj(T) a, the slot-2 vector b = (-w1, w0)/sqrt(-det T) satisfies the
// manifold constraint and kills b^T adj(T) a, hence both z's, hence beta
MPElement line_witness(const Mat2& t) {
    double t00 = t(0, 0).get_d(), t01 = t(0, 1).get_d(), t10 = t(1, 0).get_d(), t11 = t(1, 1).get_d();
    cplx a0(1, 0), a1(0, -1);
    cplx w0 = t11 * a0 - t01 * a1;
    cplx w1 = -t10 * a0 + t00 * a1;
    double lam = 1.0 / std::sqrt(-(t00 * t11 - t01 * t10));
    cplx b0 = -lam * w1, b1 = lam * w0;
    MPElement r;
    r.g1 = {{{std::real(a0), -std::imag(a0)}, {std::real(a1), -std::imag(a1)}}};
    r.g2 = {{{std::real(b0), std::imag(b0)}, {std::real(b1), std::imag(b1)}}};
    return r;
}

// primitive generator of the common line through both slots (rank <= 1 stack)
Mat2 line_generator(const PairB& b) {
    IntMatrix h = hnf(stacked(b)).h;
    // first row of the Hermite form spans the row lattice; columns 2..5 carry
    // the matrix coordinates as (p, -r, q, s)
    return Mat2(h(0, 2), h(0, 4), -h(0, 3), h(0, 5));
}

}  // namespace

PsdResult psd_status(const PairB& b, double tol) {
    if (tol <= 0) throw std::domain_error("psd_status: tol must be positive");
    if (b.is_zero()) return {PsdStatus::PSD_BOUNDARY, std::nullopt, 0.0, true};

    if (minor_gcd2(b) == 0) {
        Mat2 t = line_generator(b);
        if (qform(t) < 0) {
            MPElement w = line_witness(t);
            return {PsdStatus::NOT_PSD, w, 0.0, false};
        }
        return {PsdStatus::PSD_BOUNDARY, std::nullopt, 0.0, false};
    }

    Int q = q_of_B(b);
    bool gram_psd = bilinear(b.t1, b.t1) >= 0 && bilinear(b.t2, b.t2) >= 0 && q >= 0;

    BetaAnalysis an = analyze_beta(b);
    if (!an.found_zero && !gram_psd) {
        // the span is indefinite or negative, a zero must exist; search harder
        for (unsigned seed = 1; seed <= 8 && !an.found_zero; ++seed)
            an = analyze_beta(b, 96, seed);
        if (!an.found_zero) throw std::runtime_error("psd_status: witness search exhausted");
    }
    if (an.found_zero) {
        double resid = std::abs(beta_value(b, an.witness));
        if (resid >= tol) {
            // witness below requested tolerance not reached; report anyway only
            // if it is clearly a zero at the working precision
            if (resid >= 1e-6) throw std::runtime_error("psd_status: witness residual too large");
        }
        return {PsdStatus::NOT_PSD, an.witness, 0.0, false};
    }
    if (q > 0) return {PsdStatus::POS_DEF, std::nullopt, an.certified_margin, false};
    return {PsdStatus::PSD_BOUNDARY, std::nullopt, 0.0, false};
}

const char* psd_status_name(PsdStatus s) {
    switch (s) {
        case PsdStatus::NOT_PSD: return "NOT_PSD";
        case PsdStatus::PSD_BOUNDARY: return "PSD_BOUNDARY";
        default: return "POS_DEF";
    }
}

}  // namespace d4l
