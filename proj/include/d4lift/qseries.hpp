#pragma once

#include <map>
#include <string>
#include <vector>

#include "d4lift/errors.hpp"
#include "d4lift/rational.hpp"

namespace d4l {

// Truncated q-expansion with exact rational coefficients. Key d stands for
// q^{d/unit}; coefficients are complete for every degree <= trunc (same units).
// Arithmetic never claims validity beyond the minimum of the operands.
struct QSeries {
    std::map<long, Rat> c;
    long trunc = 0;
    long unit = 1;

    void normalize();
    bool is_zero() const;
    long valuation() const;  // smallest key; trunc + 1 when the series is zero
    Rat at(long n) const;    // coefficient of q^n; throws past the validity bound
    Rat at_key(long d) const;
    bool operator==(const QSeries& o) const;
};

QSeries qs_zero(long trunc);
QSeries qs_one(long trunc);
QSeries qs_monomial(const Rat& a, long n, long trunc);
QSeries operator+(const QSeries& a, const QSeries& b);
QSeries operator-(const QSeries& a, const QSeries& b);
QSeries operator*(const QSeries& a, const QSeries& b);
QSeries operator*(const Rat& s, const QSeries& a);
QSeries qs_inverse(const QSeries& a);
QSeries qs_truncated(const QSeries& a, long n);
bool agree(const QSeries& a, const QSeries& b);  // equal through the shared validity

// Two-variable (q, zeta) expansion for theta blocks and Jacobi forms; column r
// holds the q-expansion multiplying zeta^{r/z_unit}, with q-keys in q^{1/q_unit}
// units, complete through q-degree trunc.
struct ThetaSeries {
    std::map<long, std::map<long, Rat>> cols;
    long trunc = 0;
    long q_unit = 1;
    long z_unit = 1;

    void normalize();
    bool is_zero() const;
    Rat at(long n, long r) const;  // integral grid; throws past the validity bound
    bool operator==(const ThetaSeries& o) const;
};

ThetaSeries ts_add(const ThetaSeries& a, const ThetaSeries& b);
ThetaSeries ts_scale(const Rat& s, const ThetaSeries& a);
ThetaSeries ts_mul(const ThetaSeries& a, const ThetaSeries& b);
ThetaSeries ts_mul_q(const ThetaSeries& a, const QSeries& f);
ThetaSeries ts_truncated(const ThetaSeries& a, long n);
QSeries ts_zeta_one(const ThetaSeries& a);  // specialize zeta -> 1

QSeries eisenstein(long k, long trunc);
QSeries delta(long trunc);
QSeries eta_power(long e, long trunc);
ThetaSeries jacobi_theta_odd(long trunc);

long dim_modular(long k);  // by monomial count #{(a,b) >= 0 : 4a + 6b = k}
long dim_cusp(long k);
long sturm_bound(long k);
std::vector<QSeries> modular_basis(long k, long trunc);
std::vector<QSeries> cusp_basis(long k, long trunc);

struct SpanCertificate {
    bool in_space = false;
    std::vector<Rat> combo;  // coordinates in the echelonized weight-k basis
};
SpanCertificate is_in_space(const QSeries& f, long k, long trunc);

std::string qs_to_json(const QSeries& a);
QSeries qs_from_json(const std::string& text);

}  // namespace d4l
