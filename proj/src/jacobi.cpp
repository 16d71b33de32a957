#include "d4lift/jacobi.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <string>

#include <json.hpp>

namespace d4l {

namespace {

using Cplx = std::complex<double>;

constexpr double kTwoPi = 6.283185307179586476925286766559;

long isqrt_floor(long v) {
    long r = (long)std::sqrt((double)v);
    while (r * r > v) --r;
    while ((r + 1) * (r + 1) <= v) ++r;
    return r;
}

// classical theta constituents on the (q_unit 8, z_unit 2) grid:
// which 2: sum over odd m of q^{m^2/8} zeta^{m/2}
// which 3: sum over all m of q^{m^2/2} zeta^m
// which 4: same with sign (-1)^m
ThetaSeries theta_even(int which, long trunc8) {
    ThetaSeries out;
    out.q_unit = 8;
    out.z_unit = 2;
    out.trunc = trunc8;
    if (which == 2) {
        for (long m = 1; m * m <= trunc8; m += 2) {
            out.cols[m][m * m] = 1;
            out.cols[-m][m * m] = 1;
        }
    } else {
        out.cols[0][0] = 1;
        for (long m = 1; 4 * m * m <= trunc8; ++m) {
            Rat s = (which == 4 && m % 2 != 0) ? -1 : 1;
            out.cols[2 * m][4 * m * m] = s;
            out.cols[-2 * m][4 * m * m] = s;
        }
    }
    return out;
}

int sign_odd(long m) { return ((m % 4) + 4) % 4 == 1 ? 1 : -1; }

// zeta^r column of theta(z)^2 for the constituents above, unit-8 q-keys;
// which 1 is the odd theta with its alternating signs
QSeries theta_sq_column(int which, long r, long trunc8) {
    QSeries out;
    out.unit = 8;
    out.trunc = trunc8;
    if (which == 1 || which == 2) {
        // m1 + m2 = 2r with both odd
        long bound = isqrt_floor(trunc8) + 1;
        for (long m1 = -bound; m1 <= bound; ++m1) {
            if (((m1 % 2) + 2) % 2 != 1) continue;
            long m2 = 2 * r - m1;
            long key = m1 * m1 + m2 * m2;
            if (key > trunc8) continue;
            out.c[key] += (which == 1) ? Rat(sign_odd(m1) * sign_odd(m2)) : Rat(1);
        }
    } else {
        // m1 + m2 = r over the integers; which 4 carries (-1)^{m1+m2} = (-1)^r
        long bound = isqrt_floor(trunc8 / 4) + 1;
        for (long m1 = -bound; m1 <= bound; ++m1) {
            long m2 = r - m1;
            long key = 4 * (m1 * m1 + m2 * m2);
            if (key > trunc8) continue;
            out.c[key] += 1;
        }
        if (which == 4 && ((r % 2) + 2) % 2 == 1) out = Rat(-1) * out;
    }
    out.normalize();
    return out;
}

// theta(0)^2 as a q-series: the full lattice sum over (m1, m2)
QSeries theta_sq_zero(int which, long trunc8) {
    QSeries out;
    out.unit = 8;
    out.trunc = trunc8;
    if (which == 2) {
        long bound = isqrt_floor(trunc8) + 1;
        if (bound % 2 == 0) ++bound;
        for (long m1 = -bound; m1 <= bound; m1 += 2)
            for (long m2 = -bound; m2 <= bound; m2 += 2) {
                long key = m1 * m1 + m2 * m2;
                if (key <= trunc8) out.c[key] += 1;
            }
    } else {
        long bound = isqrt_floor(trunc8 / 4) + 1;
        for (long m1 = -bound; m1 <= bound; ++m1)
            for (long m2 = -bound; m2 <= bound; ++m2) {
                long key = 4 * (m1 * m1 + m2 * m2);
                if (key > trunc8) continue;
                out.c[key] += (which == 4 && (m1 + m2) % 2 != 0) ? Rat(-1) : Rat(1);
            }
    }
    out.normalize();
    return out;
}

void require_integral_grid(const ThetaSeries& t, const char* who) {
    if (t.q_unit != 1 || t.z_unit != 1)
        throw std::logic_error(std::string(who) + ": expected an integral expansion");
}

JacobiForm make_form(long weight, ThetaSeries s, long n_max, std::optional<bool> cuspidal,
                     const char* who) {
    s.normalize();
    require_integral_grid(s, who);
    if (s.trunc < n_max) throw std::logic_error(std::string(who) + ": built window too small");
    JacobiForm out;
    out.weight = weight;
    out.index = 1;
    out.series = ts_truncated(s, n_max);
    out.cuspidal = cuspidal;
    return out;
}

// cusp forms must vanish on the singular classes 4n = r^2
void verify_singular_vanishing(const JacobiForm& phi, const char* who) {
    for (long k = 0; k * k <= phi.window(); ++k)
        for (long r : {2 * k, -2 * k})
            if (phi.raw(k * k, r) != 0)
                throw std::logic_error(std::string(who) + ": nonzero singular coefficient");
}

}  // namespace

// --- JacobiForm ---------------------------------------------------------------

long JacobiForm::window() const {
    return series.trunc >= 0 ? series.trunc / series.q_unit : -1;
}

Rat JacobiForm::raw(long n, long r) const { return series.at(n, r); }

Rat JacobiForm::coeff(long n, long r) const {
    if (n < 0) return 0;
    long disc = 4 * n - r * r;
    long rep_r = ((r % 2) + 2) % 2;
    if (disc + rep_r * rep_r < 0) return 0;  // below any weak index-1 floor
    long rep_n = (disc + rep_r * rep_r) / 4;
    if (rep_n > window()) throw InsufficientPrecision("coeff: class beyond truncation");
    return series.at(rep_n, rep_r);
}

// --- constructions --------------------------------------------------------------

std::pair<JacobiForm, JacobiForm> weak_jacobi_generators(long n_max) {
    if (n_max < 2) throw std::domain_error("weak_jacobi_generators: need n_max >= 2");
    long pad = n_max + 4;
    ThetaSeries odd = jacobi_theta_odd(pad);
    ThetaSeries m21 = ts_mul_q(ts_mul(odd, odd), eta_power(-6, pad));

    ThetaSeries sum;
    sum.trunc = pad;
    for (int which : {2, 3, 4}) {
        ThetaSeries t = theta_even(which, 8 * pad);
        ThetaSeries quot = ts_mul_q(ts_mul(t, t), qs_inverse(theta_sq_zero(which, 8 * pad)));
        sum = ts_add(sum, quot);
    }
    ThetaSeries z01 = ts_scale(Rat(4), sum);

    JacobiForm a = make_form(-2, std::move(m21), n_max, std::nullopt, "weak_jacobi_generators");
    JacobiForm b = make_form(0, std::move(z01), n_max, std::nullopt, "weak_jacobi_generators");
    return {std::move(a), std::move(b)};
}

JacobiForm jacobi_phi10(long n_max) {
    auto [m21, z01] = weak_jacobi_generators(n_max + 1);
    JacobiForm out =
        make_form(10, ts_mul_q(m21.series, delta(n_max + 1)), n_max, true, "jacobi_phi10");
    verify_singular_vanishing(out, "jacobi_phi10");
    return out;
}

JacobiForm jacobi_phi12(long n_max) {
    auto [m21, z01] = weak_jacobi_generators(n_max + 1);
    JacobiForm out =
        make_form(12, ts_mul_q(z01.series, delta(n_max + 1)), n_max, true, "jacobi_phi12");
    verify_singular_vanishing(out, "jacobi_phi12");
    return out;
}

std::vector<JacobiForm> jacobi_cusp_basis(long weight, long n_max) {
    std::vector<JacobiForm> out;
    if (weight % 2 != 0 || weight < 10) return out;
    JacobiForm p10 = jacobi_phi10(n_max + 1);
    JacobiForm p12 = jacobi_phi12(n_max + 1);
    auto push_family = [&](const JacobiForm& gen, long mod_weight) {
        if (mod_weight < 0) return;
        for (const QSeries& g : modular_basis(mod_weight, n_max + 1)) {
            JacobiForm f =
                make_form(weight, ts_mul_q(gen.series, g), n_max, true, "jacobi_cusp_basis");
            verify_singular_vanishing(f, "jacobi_cusp_basis");
            out.push_back(std::move(f));
        }
    };
    push_family(p10, weight - 10);
    push_family(p12, weight - 12);
    return out;
}

// --- restricted columns -----------------------------------------------------------

QSeries weak_m21_column(long r, long n_max) {
    if (n_max < 2) throw std::domain_error("weak_m21_column: need n_max >= 2");
    long pad8 = 8 * (n_max + 4);
    QSeries col = theta_sq_column(1, r, pad8) * eta_power(-6, n_max + 4);
    col.normalize();
    return qs_truncated(col, n_max);
}

QSeries weak_01_column(long r, long n_max) {
    if (n_max < 2) throw std::domain_error("weak_01_column: need n_max >= 2");
    long pad8 = 8 * (n_max + 4);
    QSeries sum = qs_zero(n_max + 4);
    for (int which : {2, 3, 4}) {
        QSeries term = theta_sq_column(which, r, pad8) * qs_inverse(theta_sq_zero(which, pad8));
        sum = sum + term;
    }
    QSeries out = Rat(4) * sum;
    out.normalize();
    if (out.unit != 1) throw std::logic_error("weak_01_column: fractional rows survived");
    return qs_truncated(out, n_max);
}

// --- Taylor coefficients -----------------------------------------------------------

QSeries taylor_lambda(const JacobiForm& phi, long nu, long n_max) {
    if (nu < 0) throw std::domain_error("taylor_lambda: need nu >= 0");
    if (n_max > phi.window())
        throw InsufficientPrecision("taylor_lambda: rows beyond the form's truncation");
    const ThetaSeries& s = phi.series;
    QSeries out;
    out.unit = s.q_unit;
    out.trunc = n_max * s.q_unit;
    for (const auto& [r, col] : s.cols) {
        Rat base = rat(r, s.z_unit);
        Rat w = 1;
        for (long i = 0; i < nu; ++i) w *= base;
        if (w == 0) continue;
        for (const auto& [d, x] : col) {
            if (d > out.trunc) break;
            out.c[d] += w * x;
        }
    }
    out.normalize();
    return out;
}

// --- transformation law ---------------------------------------------------------

namespace {

Cplx eval_theta(const ThetaSeries& s, Cplx tau, Cplx z) {
    const Cplx i2pi(0.0, kTwoPi);
    Cplx acc = 0.0;
    for (const auto& [r, col] : s.cols) {
        Cplx zf = std::exp(i2pi * (double(r) / double(s.z_unit)) * z);
        for (const auto& [d, x] : col)
            acc += x.get_d() * zf * std::exp(i2pi * (double(d) / double(s.q_unit)) * tau);
    }
    return acc;
}

// coefficient envelope for the dropped rows; cusp forms stay polynomial
// (Hecke-type bound, exponent above weight/2), anything else gets the
// e^{4 pi sqrt n} factor that covers weakly holomorphic index-1 rows
// (pole at most q^{-1/4} per theta column)
double row_envelope(long n, double growth_exp, bool exponential) {
    double p = std::pow(double(n), growth_exp);
    return exponential ? p * std::exp(2.0 * kTwoPi * std::sqrt(double(n))) : p;
}

// sum over n > window of scale * envelope(n) * (4 sqrt(4n+1) + 2) * e^{-2 pi n y + 4 pi sqrt(4n+1) |Im z|},
// a majorant for the dropped rows; throws when the terms fail to decay
double tail_majorant(double scale, double growth_exp, bool exponential, long window,
                     double im_tau, double im_z) {
    double total = 0.0, prev = -1.0;
    for (long n = window + 1; n <= window + 600; ++n) {
        double root = std::sqrt(4.0 * n + 1.0);
        double term = scale * row_envelope(n, growth_exp, exponential) * (4.0 * root + 2.0) *
                      std::exp(-kTwoPi * n * im_tau + 2.0 * kTwoPi * root * std::abs(im_z));
        if (!std::isfinite(term) || (prev >= 0.0 && term > 0.999 * prev))
            throw InsufficientPrecision("transformation_check: tail does not decay");
        total += term;
        prev = term;
        if (term < total * 1e-18 + 1e-300) return total;
    }
    throw InsufficientPrecision("transformation_check: tail decays too slowly");
}

}  // namespace

TransformResidual transformation_check(const JacobiForm& phi, const Mat2& gamma, Cplx tau,
                                       Cplx z, long n_max, double tol) {
    if (gamma.det() != 1) throw std::domain_error("transformation_check: gamma not in SL2(Z)");
    if (n_max > phi.window())
        throw InsufficientPrecision("transformation_check: rows beyond the form's truncation");
    long a = to_long(gamma(0, 0)), b = to_long(gamma(0, 1));
    long c = to_long(gamma(1, 0)), d = to_long(gamma(1, 1));
    const ThetaSeries& s = phi.series;

    if (c == 0) {
        // (1, b; 0, 1) shifts tau by b, which reindexes integral rows exactly;
        // (-1, b; 0, -1) also flips z, matched by the r -> -r symmetry for even weight
        bool exact = true;
        for (const auto& [r, col] : s.cols)
            for (const auto& [dd, x] : col) {
                if ((dd * b) % s.q_unit != 0) exact = false;
                if (a == -1) {
                    auto it = s.cols.find(-r);
                    if (it == s.cols.end() || it->second.count(dd) == 0 || it->second.at(dd) != x)
                        exact = false;
                }
            }
        if (a == -1 && phi.weight % 2 != 0) exact = false;
        if (exact) return {0.0, 0.0};
    }

    ThetaSeries clipped = ts_truncated(s, n_max);
    Cplx cd = double(c) * tau + double(d);
    Cplx tau2 = (double(a) * tau + double(b)) / cd;
    Cplx z2 = z / cd;
    Cplx lhs = eval_theta(clipped, tau2, z2);

    Cplx pow_cd = 1.0;
    for (long i = 0; i < phi.weight; ++i) pow_cd *= cd;
    for (long i = 0; i > phi.weight; --i) pow_cd /= cd;
    Cplx pref = std::exp(Cplx(0.0, kTwoPi) * double(phi.index) * double(c) * z * z / cd) * pow_cd;
    Cplx rhs = pref * eval_theta(clipped, tau, z);

    // data-driven majorant |c(n, r)| <= scale * envelope(n) for the dropped rows
    bool exponential = !(phi.cuspidal && *phi.cuspidal);
    double growth_exp = exponential
                            ? std::max((double(phi.weight) + 1.0) / 2.0, double(phi.weight) - 1.5) + 1.0
                            : (double(phi.weight) + 1.0) / 2.0 + 1.0;
    double scale = 0.0;
    for (const auto& [r, col] : clipped.cols)
        for (const auto& [dd, x] : col) {
            long n = dd / clipped.q_unit;
            if (n < 1) continue;
            scale = std::max(scale, std::abs(x.get_d()) / row_envelope(n, growth_exp, exponential));
        }
    scale *= 2.0;

    double tail =
        tail_majorant(scale, growth_exp, exponential, n_max, tau2.imag(), z2.imag()) +
        std::abs(pref) * tail_majorant(scale, growth_exp, exponential, n_max, tau.imag(), z.imag());
    if (tail > tol)
        throw InsufficientPrecision("transformation_check: tail estimate exceeds tolerance");
    return {std::abs(lhs - rhs), tail};
}

// --- tables and the growth classifier ---------------------------------------------

JacobiTable table_from_form(const JacobiForm& phi, long n_max) {
    if (n_max > phi.window())
        throw InsufficientPrecision("table_from_form: rows beyond the form's truncation");
    require_integral_grid(phi.series, "table_from_form");
    JacobiTable out;
    out.weight = phi.weight;
    out.index = phi.index;
    for (const auto& [r, col] : phi.series.cols)
        for (const auto& [n, x] : col) {
            if (n > n_max) break;
            out.coeffs[{n, r}] = x;
        }
    return out;
}

JacobiTable table_from_columns(long weight, const QSeries& col_r0, const QSeries& col_r1,
                               long n_max) {
    JacobiTable out;
    out.weight = weight;
    out.index = 1;
    for (long r = 0; r <= 1; ++r) {
        QSeries s = (r == 0) ? col_r0 : col_r1;
        s.normalize();
        if (s.unit != 1) throw std::domain_error("table_from_columns: fractional rows");
        if (s.trunc < n_max) throw InsufficientPrecision("table_from_columns: column too short");
        for (const auto& [n, x] : s.c) {
            if (n > n_max) break;
            if (n >= 0) out.coeffs[{n, r}] = x;
        }
    }
    return out;
}

std::string table_to_json(const JacobiTable& t) {
    nlohmann::json j;
    j["weight"] = t.weight;
    j["index"] = t.index;
    nlohmann::json coeffs = nlohmann::json::object();
    for (const auto& [key, x] : t.coeffs)
        coeffs[std::to_string(key.first) + "," + std::to_string(key.second)] = rat_str(x);
    j["coeffs"] = std::move(coeffs);
    return j.dump();
}

JacobiTable table_from_json(const std::string& text) {
    nlohmann::json j = nlohmann::json::parse(text);
    JacobiTable out;
    out.weight = j.at("weight").get<long>();
    out.index = j.at("index").get<long>();
    for (const auto& [key, val] : j.at("coeffs").items()) {
        auto comma = key.find(',');
        if (comma == std::string::npos)
            throw std::invalid_argument("table_from_json: key must be 'n,r'");
        long n = std::stol(key.substr(0, comma));
        long r = std::stol(key.substr(comma + 1));
        out.coeffs[{n, r}] = parse_rat(val.get<std::string>());
    }
    return out;
}

GrowthReport growth_scan(std::vector<std::pair<double, double>> samples, double exponent,
                         long burn_in, double margin) {
    std::sort(samples.begin(), samples.end());
    GrowthReport rep;
    rep.sample_count = (long)samples.size();

    double burn_max = 0.0, tail_max = 0.0;
    for (std::size_t i = 0; i < samples.size(); ++i) {
        double ratio = samples[i].second / std::pow(samples[i].first, exponent);
        rep.max_ratio = std::max(rep.max_ratio, ratio);
        if ((long)i < burn_in)
            burn_max = std::max(burn_max, ratio);
        else
            tail_max = std::max(tail_max, ratio);
    }

    // log-log least squares past the burn-in window, nonzero samples only
    std::size_t start = ((std::size_t)burn_in < samples.size()) ? (std::size_t)burn_in : 0;
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    long m = 0;
    for (std::size_t i = start; i < samples.size(); ++i) {
        if (samples[i].second <= 0.0) continue;
        double x = std::log(samples[i].first), y = std::log(samples[i].second);
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
        ++m;
    }
    if (m >= 8) {
        double denom = m * sxx - sx * sx;
        if (denom > 0) rep.growth_slope = (m * sxy - sx * sy) / denom;
    }

    rep.growth_detected = (m >= 8) && rep.growth_slope > exponent + margin;
    bool peak_early = tail_max <= burn_max * (1.0 + 1e-9);
    rep.is_cusp_consistent = !rep.growth_detected && peak_early;
    return rep;
}

GrowthReport cusp_classifier(const JacobiTable& table, long d_max) {
    if (table.weight < 5) throw std::domain_error("cusp_classifier: weight must be >= 5");
    if (d_max < 100) throw InsufficientData("cusp_classifier: need discriminants through 100");
    long need_n = (d_max + 1) / 4;
    long have_n = -1;
    for (const auto& [key, x] : table.coeffs) have_n = std::max(have_n, key.first);
    if (!table.coeffs.empty() && have_n + 8 < need_n)
        throw InsufficientData("cusp_classifier: table rows stop before d_max");

    std::map<long, double> by_disc;
    for (const auto& [key, x] : table.coeffs) {
        long disc = 4 * key.first - key.second * key.second;
        if (disc <= 0 || disc > d_max) continue;
        double v = std::abs(x.get_d());
        auto [it, fresh] = by_disc.try_emplace(disc, v);
        if (!fresh) it->second = std::max(it->second, v);
    }
    std::vector<std::pair<double, double>> samples;
    samples.reserve(by_disc.size());
    for (const auto& [disc, v] : by_disc) samples.emplace_back(double(disc), v);
    return growth_scan(std::move(samples), (double(table.weight) + 1.0) / 2.0);
}

}  // namespace d4l
