#include "d4lift/qseries.hpp"

#include <algorithm>
#include <cstdlib>
#include <numeric>

#include <json.hpp>

namespace d4l {

namespace {

long lgcd(long a, long b) { return std::gcd(a, b); }
long llcm(long a, long b) { return a / lgcd(a, b) * b; }

long floor_div(long a, long g) { return (a >= 0) ? a / g : -((-a + g - 1) / g); }

// --- dense helpers (index = degree, length = cap + 1) ---------------------

std::vector<Rat> dmul(const std::vector<Rat>& a, const std::vector<Rat>& b, std::size_t cap) {
    std::vector<Rat> out(cap + 1);
    for (std::size_t i = 0; i < a.size() && i <= cap; ++i) {
        if (a[i] == 0) continue;
        for (std::size_t j = 0; j < b.size() && i + j <= cap; ++j) {
            if (b[j] == 0) continue;
            out[i + j] += a[i] * b[j];
        }
    }
    return out;
}

std::vector<Rat> dpow(std::vector<Rat> base, long e, std::size_t cap) {
    std::vector<Rat> out(cap + 1);
    out[0] = 1;
    while (e > 0) {
        if (e & 1) out = dmul(out, base, cap);
        base = dmul(base, base, cap);
        e >>= 1;
    }
    return out;
}

std::vector<Rat> dinv(const std::vector<Rat>& a, std::size_t cap) {
    std::vector<Rat> out(cap + 1);
    out[0] = 1 / a[0];
    for (std::size_t n = 1; n <= cap; ++n) {
        Rat s = 0;
        for (std::size_t k = 1; k <= n && k < a.size(); ++k) {
            if (a[k] == 0) continue;
            s += a[k] * out[n - k];
        }
        out[n] = -s / a[0];
    }
    return out;
}

// prod_{n>=1} (1 - q^n), by multiplying the factors in place
std::vector<Rat> euler_product(std::size_t cap) {
    std::vector<Rat> e(cap + 1);
    e[0] = 1;
    for (std::size_t n = 1; n <= cap; ++n)
        for (std::size_t d = cap; d >= n; --d) e[d] -= e[d - n];
    return e;
}

std::vector<Rat> bernoulli_row(long k) {
    // sum_{j<=m} C(m+1, j) B_j = 0 with B_0 = 1
    std::vector<Rat> b(k + 1);
    b[0] = 1;
    std::vector<Int> binom(k + 2);  // row m+1 of Pascal's triangle, rebuilt per m
    for (long m = 1; m <= k; ++m) {
        binom.assign(m + 2, 0);
        binom[0] = 1;
        for (long i = 1; i <= m + 1; ++i)
            for (long j = i; j >= 1; --j) binom[j] += binom[j - 1];
        Rat s = 0;
        for (long j = 0; j < m; ++j) s += Rat(binom[j]) * b[j];
        b[m] = -s / Rat(binom[m]);
    }
    return b;
}

QSeries from_dense(const std::vector<Rat>& v, long trunc, long shift, long unit) {
    QSeries out;
    out.unit = unit;
    out.trunc = trunc;
    for (std::size_t i = 0; i < v.size(); ++i) {
        long d = (long)i + shift;
        if (d > trunc) break;
        if (v[i] != 0) out.c[d] = v[i];
    }
    out.normalize();
    return out;
}

std::vector<Rat> to_dense(const QSeries& a, long cap) {
    // unit-1 series only
    std::vector<Rat> out(cap + 1);
    for (const auto& [d, x] : a.c) {
        if (d < 0) throw std::domain_error("to_dense: negative degree");
        if (d <= cap) out[d] = x;
    }
    return out;
}

}  // namespace

// --- QSeries ----------------------------------------------------------------

void QSeries::normalize() {
    std::erase_if(c, [&](const auto& kv) { return kv.second == 0 || kv.first > trunc; });
    long g = unit;
    for (const auto& [d, x] : c) g = lgcd(g, std::abs(d));
    if (g == 0) g = unit;
    if (g > 1) {
        std::map<long, Rat> nc;
        for (auto& [d, x] : c) nc[d / g] = x;
        c = std::move(nc);
        trunc = floor_div(trunc, g);
        unit /= g;
    }
}

bool QSeries::is_zero() const {
    return std::all_of(c.begin(), c.end(), [](const auto& kv) { return kv.second == 0; });
}

long QSeries::valuation() const { return c.empty() ? trunc + 1 : c.begin()->first; }

Rat QSeries::at(long n) const { return at_key(n * unit); }

Rat QSeries::at_key(long d) const {
    if (d > trunc) throw InsufficientPrecision("q-series coefficient beyond truncation");
    auto it = c.find(d);
    return it == c.end() ? Rat(0) : it->second;
}

bool QSeries::operator==(const QSeries& o) const {
    QSeries a = *this, b = o;
    a.normalize();
    b.normalize();
    return a.unit == b.unit && a.trunc == b.trunc && a.c == b.c;
}

QSeries qs_zero(long trunc) {
    QSeries out;
    out.trunc = trunc;
    return out;
}

QSeries qs_one(long trunc) { return qs_monomial(Rat(1), 0, trunc); }

QSeries qs_monomial(const Rat& a, long n, long trunc) {
    QSeries out;
    out.trunc = trunc;
    if (a != 0 && n <= trunc) out.c[n] = a;
    return out;
}

namespace {

void align(QSeries& a, QSeries& b) {
    a.normalize();
    b.normalize();
    long u = llcm(a.unit, b.unit);
    for (QSeries* s : {&a, &b}) {
        long f = u / s->unit;
        if (f == 1) continue;
        std::map<long, Rat> nc;
        for (auto& [d, x] : s->c) nc[d * f] = x;
        s->c = std::move(nc);
        s->trunc *= f;
        s->unit = u;
    }
}

}  // namespace

QSeries operator+(const QSeries& a0, const QSeries& b0) {
    QSeries a = a0, b = b0;
    align(a, b);
    QSeries out;
    out.unit = a.unit;
    out.trunc = std::min(a.trunc, b.trunc);
    out.c = a.c;
    for (const auto& [d, x] : b.c) out.c[d] += x;
    out.normalize();
    return out;
}

QSeries operator-(const QSeries& a, const QSeries& b) { return a + Rat(-1) * b; }

QSeries operator*(const Rat& s, const QSeries& a) {
    QSeries out = a;
    if (s == 0) {
        out.c.clear();
        return out;
    }
    for (auto& [d, x] : out.c) x *= s;
    return out;
}

QSeries operator*(const QSeries& a0, const QSeries& b0) {
    QSeries a = a0, b = b0;
    align(a, b);
    QSeries out;
    out.unit = a.unit;
    long va = std::min(a.valuation(), 0L), vb = std::min(b.valuation(), 0L);
    out.trunc = std::min(a.trunc + vb, b.trunc + va);
    for (const auto& [d1, x1] : a.c)
        for (const auto& [d2, x2] : b.c) {
            if (d1 + d2 > out.trunc) continue;
            out.c[d1 + d2] += x1 * x2;
        }
    out.normalize();
    return out;
}

QSeries qs_inverse(const QSeries& a0) {
    QSeries a = a0;
    a.normalize();
    if (a.c.empty()) throw std::domain_error("qs_inverse: zero series");
    long v = a.valuation();
    long w = a.trunc - v;  // unit part known through this many terms
    if (w < 0) throw InsufficientPrecision("qs_inverse: nothing known past the valuation");
    std::vector<Rat> u(w + 1);
    for (const auto& [d, x] : a.c) u[d - v] = x;
    std::vector<Rat> inv = dinv(u, w);
    return from_dense(inv, w - v, -v, a.unit);
}

QSeries qs_truncated(const QSeries& a0, long n) {
    QSeries a = a0;
    a.normalize();
    if (n * a.unit > a.trunc) throw InsufficientPrecision("qs_truncated: beyond validity");
    a.trunc = n * a.unit;
    a.normalize();
    return a;
}

bool agree(const QSeries& a0, const QSeries& b0) {
    QSeries a = a0, b = b0;
    align(a, b);
    long t = std::min(a.trunc, b.trunc);
    auto get = [](const std::map<long, Rat>& m, long d) {
        auto it = m.find(d);
        return it == m.end() ? Rat(0) : it->second;
    };
    for (const auto& [d, x] : a.c)
        if (d <= t && x != get(b.c, d)) return false;
    for (const auto& [d, x] : b.c)
        if (d <= t && x != get(a.c, d)) return false;
    return true;
}

// --- ThetaSeries --------------------------------------------------------------

void ThetaSeries::normalize() {
    for (auto& [r, col] : cols)
        std::erase_if(col, [&](const auto& kv) { return kv.second == 0 || kv.first > trunc; });
    std::erase_if(cols, [](const auto& kv) { return kv.second.empty(); });
    long g = q_unit;
    for (const auto& [r, col] : cols)
        for (const auto& [d, x] : col) g = lgcd(g, std::abs(d));
    if (g == 0) g = q_unit;
    if (g > 1) {
        for (auto& [r, col] : cols) {
            std::map<long, Rat> nc;
            for (auto& [d, x] : col) nc[d / g] = x;
            col = std::move(nc);
        }
        trunc = floor_div(trunc, g);
        q_unit /= g;
    }
    long gz = z_unit;
    for (const auto& [r, col] : cols) gz = lgcd(gz, std::abs(r));
    if (gz == 0) gz = z_unit;
    if (gz > 1) {
        std::map<long, std::map<long, Rat>> nc;
        for (auto& [r, col] : cols) nc[r / gz] = std::move(col);
        cols = std::move(nc);
        z_unit /= gz;
    }
}

bool ThetaSeries::is_zero() const {
    for (const auto& [r, col] : cols)
        for (const auto& [d, x] : col)
            if (x != 0) return false;
    return true;
}

Rat ThetaSeries::at(long n, long r) const {
    long key = n * q_unit;
    if (key > trunc) throw InsufficientPrecision("theta series coefficient beyond truncation");
    auto it = cols.find(r * z_unit);
    if (it == cols.end()) return 0;
    auto jt = it->second.find(key);
    return jt == it->second.end() ? Rat(0) : jt->second;
}

bool ThetaSeries::operator==(const ThetaSeries& o) const {
    ThetaSeries a = *this, b = o;
    a.normalize();
    b.normalize();
    return a.q_unit == b.q_unit && a.z_unit == b.z_unit && a.trunc == b.trunc && a.cols == b.cols;
}

namespace {

void ts_align(ThetaSeries& a, ThetaSeries& b) {
    a.normalize();
    b.normalize();
    long qu = llcm(a.q_unit, b.q_unit), zu = llcm(a.z_unit, b.z_unit);
    for (ThetaSeries* s : {&a, &b}) {
        long fq = qu / s->q_unit, fz = zu / s->z_unit;
        if (fq == 1 && fz == 1) continue;
        std::map<long, std::map<long, Rat>> nc;
        for (auto& [r, col] : s->cols) {
            std::map<long, Rat> ncol;
            for (auto& [d, x] : col) ncol[d * fq] = x;
            nc[r * fz] = std::move(ncol);
        }
        s->cols = std::move(nc);
        s->trunc *= fq;
        s->q_unit = qu;
        s->z_unit = zu;
    }
}

long ts_q_valuation(const ThetaSeries& a) {
    long v = a.trunc + 1;
    for (const auto& [r, col] : a.cols)
        if (!col.empty()) v = std::min(v, col.begin()->first);
    return v;
}

}  // namespace

ThetaSeries ts_add(const ThetaSeries& a0, const ThetaSeries& b0) {
    ThetaSeries a = a0, b = b0;
    ts_align(a, b);
    ThetaSeries out = a;
    out.trunc = std::min(a.trunc, b.trunc);
    for (const auto& [r, col] : b.cols)
        for (const auto& [d, x] : col) out.cols[r][d] += x;
    out.normalize();
    return out;
}

ThetaSeries ts_scale(const Rat& s, const ThetaSeries& a) {
    ThetaSeries out = a;
    if (s == 0) {
        out.cols.clear();
        return out;
    }
    for (auto& [r, col] : out.cols)
        for (auto& [d, x] : col) x *= s;
    return out;
}

ThetaSeries ts_mul(const ThetaSeries& a0, const ThetaSeries& b0) {
    ThetaSeries a = a0, b = b0;
    ts_align(a, b);
    ThetaSeries out;
    out.q_unit = a.q_unit;
    out.z_unit = a.z_unit;
    long va = std::min(ts_q_valuation(a), 0L), vb = std::min(ts_q_valuation(b), 0L);
    out.trunc = std::min(a.trunc + vb, b.trunc + va);
    for (const auto& [r1, col1] : a.cols)
        for (const auto& [r2, col2] : b.cols)
            for (const auto& [d1, x1] : col1)
                for (const auto& [d2, x2] : col2) {
                    if (d1 + d2 > out.trunc) break;
                    out.cols[r1 + r2][d1 + d2] += x1 * x2;
                }
    out.normalize();
    return out;
}

ThetaSeries ts_mul_q(const ThetaSeries& a0, const QSeries& f0) {
    ThetaSeries a = a0;
    QSeries f = f0;
    a.normalize();
    f.normalize();
    long qu = llcm(a.q_unit, f.unit);
    // rescale both to the common q grid
    {
        long fq = qu / a.q_unit;
        if (fq != 1) {
            for (auto& [r, col] : a.cols) {
                std::map<long, Rat> ncol;
                for (auto& [d, x] : col) ncol[d * fq] = x;
                col = std::move(ncol);
            }
            a.trunc *= fq;
            a.q_unit = qu;
        }
        long ff = qu / f.unit;
        if (ff != 1) {
            std::map<long, Rat> nc;
            for (auto& [d, x] : f.c) nc[d * ff] = x;
            f.c = std::move(nc);
            f.trunc *= ff;
            f.unit = qu;
        }
    }
    ThetaSeries out;
    out.q_unit = qu;
    out.z_unit = a.z_unit;
    long va = std::min(ts_q_valuation(a), 0L), vf = std::min(f.valuation(), 0L);
    out.trunc = std::min(a.trunc + vf, f.trunc + va);
    for (const auto& [r, col] : a.cols)
        for (const auto& [d1, x1] : col)
            for (const auto& [d2, x2] : f.c) {
                if (d1 + d2 > out.trunc) break;
                out.cols[r][d1 + d2] += x1 * x2;
            }
    out.normalize();
    return out;
}

ThetaSeries ts_truncated(const ThetaSeries& a0, long n) {
    ThetaSeries a = a0;
    a.normalize();
    if (n * a.q_unit > a.trunc) throw InsufficientPrecision("ts_truncated: beyond validity");
    a.trunc = n * a.q_unit;
    a.normalize();
    return a;
}

QSeries ts_zeta_one(const ThetaSeries& a0) {
    ThetaSeries a = a0;
    a.normalize();
    QSeries out;
    out.unit = a.q_unit;
    out.trunc = a.trunc;
    for (const auto& [r, col] : a.cols)
        for (const auto& [d, x] : col) out.c[d] += x;
    out.normalize();
    return out;
}

// --- level-one building blocks -------------------------------------------------

QSeries eisenstein(long k, long trunc) {
    if (k < 4 || k % 2 != 0) throw std::domain_error("eisenstein: weight must be even and >= 4");
    if (trunc <= 0) throw std::domain_error("eisenstein: truncation must be positive");
    std::vector<Rat> b = bernoulli_row(k);
    Rat factor = Rat(-2 * k) / b[k];
    std::vector<Rat> sig(trunc + 1);
    for (long d = 1; d <= trunc; ++d) {
        Int pd = pow_int(Int(d), k - 1);
        for (long n = d; n <= trunc; n += d) sig[n] += Rat(pd);
    }
    QSeries out;
    out.trunc = trunc;
    out.c[0] = 1;
    for (long n = 1; n <= trunc; ++n)
        if (sig[n] != 0) out.c[n] = factor * sig[n];
    return out;
}

QSeries delta(long trunc) {
    if (trunc <= 0) throw std::domain_error("delta: truncation must be positive");
    std::vector<Rat> e24 = dpow(euler_product(trunc - 1), 24, trunc - 1);
    return from_dense(e24, trunc, 1, 1);
}

QSeries eta_power(long e, long trunc) {
    if (trunc <= 0) throw std::domain_error("eta_power: truncation must be positive");
    long cap = trunc + std::abs(e) / 24 + 2;
    std::vector<Rat> p = dpow(euler_product(cap), std::labs(e), cap);
    if (e < 0) p = dinv(p, cap);
    QSeries out;
    out.unit = 24;
    out.trunc = 24 * trunc;
    for (std::size_t j = 0; j < p.size(); ++j) {
        long d = e + 24 * (long)j;
        if (d > out.trunc) break;
        if (p[j] != 0) out.c[d] = p[j];
    }
    out.normalize();
    return out;
}

ThetaSeries jacobi_theta_odd(long trunc) {
    if (trunc <= 0) throw std::domain_error("jacobi_theta_odd: truncation must be positive");
    ThetaSeries out;
    out.q_unit = 8;
    out.z_unit = 2;
    out.trunc = 8 * trunc;
    for (long m = 1; m * m <= out.trunc; m += 2) {
        Rat s = (m % 4 == 1) ? 1 : -1;
        out.cols[m][m * m] = s;
        out.cols[-m][m * m] = -s;
    }
    return out;
}

// --- bases and membership -------------------------------------------------------

long dim_modular(long k) {
    if (k < 0 || k % 2 != 0) return 0;
    long n = 0;
    for (long a = 0; 4 * a <= k; ++a)
        if ((k - 4 * a) % 6 == 0) ++n;
    return n;
}

long dim_cusp(long k) {
    if (k < 12 || k % 2 != 0) return 0;
    return dim_modular(k) - 1;
}

long sturm_bound(long k) { return k / 12 + 1; }

namespace {

// reduced row echelon by ascending q-degree; rows are unit-1 maps valid through cap
std::vector<std::pair<long, std::map<long, Rat>>> echelonize(std::vector<std::map<long, Rat>> rows,
                                                             long cap) {
    std::vector<std::pair<long, std::map<long, Rat>>> out;
    for (long deg = 0; deg <= cap; ++deg) {
        std::size_t hit = rows.size();
        for (std::size_t i = 0; i < rows.size(); ++i) {
            auto it = rows[i].find(deg);
            if (it != rows[i].end() && it->second != 0) {
                hit = i;
                break;
            }
        }
        if (hit == rows.size()) continue;
        std::map<long, Rat> piv = std::move(rows[hit]);
        rows.erase(rows.begin() + hit);
        Rat lead = piv[deg];
        for (auto& [d, x] : piv) x /= lead;
        auto eliminate = [&](std::map<long, Rat>& row) {
            auto it = row.find(deg);
            if (it == row.end() || it->second == 0) return;
            Rat f = it->second;
            for (const auto& [d, x] : piv) {
                row[d] -= f * x;
                if (row[d] == 0) row.erase(d);
            }
        };
        for (auto& row : rows) eliminate(row);
        for (auto& [p, row] : out) eliminate(row);
        out.emplace_back(deg, std::move(piv));
    }
    return out;
}

std::map<long, Rat> clip(const QSeries& s, long cap) {
    std::map<long, Rat> out;
    for (const auto& [d, x] : s.c)
        if (d <= cap && x != 0) out[d] = x;
    return out;
}

std::vector<QSeries> monomial_span(long k, long cap, bool cusp_only) {
    std::vector<QSeries> rows;
    if (k < 0 || k % 2 != 0) return rows;
    QSeries e4 = eisenstein(4, cap), e6 = eisenstein(6, cap), dl = delta(cap);
    long cmin = cusp_only ? 1 : 0;
    for (long c = cmin; 12 * c <= k; ++c)
        for (long b = 0; 12 * c + 6 * b <= k; ++b) {
            long rem = k - 12 * c - 6 * b;
            if (rem % 4 != 0) continue;
            long a = rem / 4;
            QSeries m = qs_one(cap);
            for (long i = 0; i < a; ++i) m = m * e4;
            for (long i = 0; i < b; ++i) m = m * e6;
            for (long i = 0; i < c; ++i) m = m * dl;
            rows.push_back(std::move(m));
        }
    return rows;
}

std::vector<QSeries> echelon_basis(long k, long trunc, bool cusp_only, long expect_dim) {
    if (trunc <= 0) throw std::domain_error("basis: truncation must be positive");
    long cap = std::max(trunc, expect_dim + sturm_bound(k) + 1);
    std::vector<std::map<long, Rat>> rows;
    for (auto& s : monomial_span(k, cap, cusp_only)) rows.push_back(clip(s, cap));
    auto ech = echelonize(std::move(rows), cap);
    if ((long)ech.size() != expect_dim)
        throw std::logic_error("basis: echelon rank disagrees with the dimension count");
    std::vector<QSeries> out;
    for (auto& [p, row] : ech) {
        QSeries s;
        s.trunc = trunc;
        for (const auto& [d, x] : row)
            if (d <= trunc) s.c[d] = x;
        out.push_back(std::move(s));
    }
    return out;
}

}  // namespace

std::vector<QSeries> modular_basis(long k, long trunc) {
    if (k < 0 || k % 2 != 0) return {};
    return echelon_basis(k, trunc, false, dim_modular(k));
}

std::vector<QSeries> cusp_basis(long k, long trunc) {
    if (k < 12 || k % 2 != 0) return {};
    return echelon_basis(k, trunc, true, dim_cusp(k));
}

SpanCertificate is_in_space(const QSeries& f0, long k, long trunc) {
    QSeries f = f0;
    f.normalize();
    long f_valid = floor_div(f.trunc, f.unit);
    long bound = std::min(trunc, f_valid);
    if (bound < sturm_bound(k))
        throw InsufficientPrecision("is_in_space: need coefficients past the Sturm bound");
    if (f.unit != 1) return {false, {}};  // fractional q-powers cannot be level one
    SpanCertificate cert;
    std::vector<QSeries> basis = modular_basis(k, bound);
    QSeries g = qs_truncated(f, bound);
    for (const auto& b : basis) {
        long pivot = b.valuation();
        Rat coef = g.at(pivot);
        cert.combo.push_back(coef);
        if (coef != 0) g = g - coef * b;
    }
    cert.in_space = true;
    for (const auto& [d, x] : g.c)
        if (d <= bound && x != 0) cert.in_space = false;
    if (!cert.in_space) cert.combo.clear();
    return cert;
}

// --- JSON --------------------------------------------------------------------

std::string qs_to_json(const QSeries& a0) {
    QSeries a = a0;
    a.normalize();
    nlohmann::json j;
    j["trunc"] = floor_div(a.trunc, a.unit);
    nlohmann::json coeffs = nlohmann::json::object();
    for (const auto& [d, x] : a.c) {
        std::string key = (a.unit == 1) ? std::to_string(d) : rat_str(rat(d, a.unit));
        coeffs[key] = rat_str(x);
    }
    j["coeffs"] = std::move(coeffs);
    return j.dump();
}

QSeries qs_from_json(const std::string& text) {
    nlohmann::json j = nlohmann::json::parse(text);
    long trunc = j.at("trunc").get<long>();
    std::vector<std::pair<Rat, Rat>> entries;
    long unit = 1;
    for (const auto& [key, val] : j.at("coeffs").items()) {
        Rat deg = parse_rat(key);
        entries.emplace_back(deg, parse_rat(val.get<std::string>()));
        unit = llcm(unit, (long)deg.get_den().get_si());
    }
    QSeries out;
    out.unit = unit;
    out.trunc = trunc * unit;
    for (const auto& [deg, x] : entries) {
        Rat scaled = deg * unit;
        out.c[(long)scaled.get_num().get_si()] = x;
    }
    out.normalize();
    return out;
}

}  // namespace d4l
