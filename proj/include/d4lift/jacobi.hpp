#pragma once

#include <complex>
#include <optional>
#include <utility>
#include <vector>

#include "d4lift/exact.hpp"
#include "d4lift/qseries.hpp"

namespace d4l {

// index-1 Jacobi form held as a theta expansion: rows q^n, columns zeta^r
struct JacobiForm {
    long weight = 0;
    long index = 1;
    ThetaSeries series;
    std::optional<bool> cuspidal;

    // largest n with a fully known row
    long window() const;
    // stored entry, no reduction
    Rat raw(long n, long r) const;
    // index-1 lookup through the (4n - r^2, r mod 2) class representative
    Rat coeff(long n, long r) const;
};

// weak generators of weight -2 and 0: squared odd theta over eta^6, and the
// even theta-quotient sum; rows complete through q^n_max
std::pair<JacobiForm, JacobiForm> weak_jacobi_generators(long n_max);

// the weight 10 and 12 index-1 cusp generators (weak generators times
// (e4^3 - e6^2)/1728)
JacobiForm jacobi_phi10(long n_max);
JacobiForm jacobi_phi12(long n_max);

// cusp forms of the given even weight >= 10: modular multiples of the two
// generators; empty for odd weight or weight < 10
std::vector<JacobiForm> jacobi_cusp_basis(long weight, long n_max);

// zeta^r columns of the weak generators as plain q-series, valid through
// q^n_max; row-complete tables for large discriminants come from r = 0, 1
QSeries weak_m21_column(long r, long n_max);
QSeries weak_01_column(long r, long n_max);

// rational part of the nu-th z-Taylor coefficient: sum_n (sum_r c(n,r) r^nu) q^n,
// the (2 pi i)^nu / nu! unit is implied by nu and never expanded numerically
QSeries taylor_lambda(const JacobiForm& phi, long nu, long n_max);

struct TransformResidual {
    double residual = 0.0;
    double tail_bound = 0.0;
};

// |phi((a tau + b)/(c tau + d), z/(c tau + d)) - e(m c z^2/(c tau + d)) (c tau + d)^l phi(tau, z)|
// from rows n <= n_max, plus a majorant for the discarded tail; exact zero for c = 0
TransformResidual transformation_check(const JacobiForm& phi, const Mat2& gamma,
                                       std::complex<double> tau, std::complex<double> z,
                                       long n_max, double tol = 1e-8);

// flat coefficient table, the exchange format for the growth classifier
struct JacobiTable {
    long weight = 0;
    long index = 1;
    std::map<std::pair<long, long>, Rat> coeffs;  // (n, r) -> c(n, r), zeros omitted
};

JacobiTable table_from_form(const JacobiForm& phi, long n_max);
JacobiTable table_from_columns(long weight, const QSeries& col_r0, const QSeries& col_r1,
                               long n_max);
std::string table_to_json(const JacobiTable& t);
JacobiTable table_from_json(const std::string& text);

struct GrowthReport {
    bool is_cusp_consistent = false;
    bool growth_detected = false;
    double max_ratio = 0.0;
    double growth_slope = 0.0;
    long sample_count = 0;
};

// generic bounded-growth scan over (size, |coefficient|) samples: ratios against
// size^exponent must peak inside the burn-in window, and the log-log slope past
// the window must stay below exponent + margin
GrowthReport growth_scan(std::vector<std::pair<double, double>> samples, double exponent,
                         long burn_in = 20, double margin = 0.3);

// Hecke-bound classifier over discriminants 0 < 4n - r^2 <= d_max
GrowthReport cusp_classifier(const JacobiTable& table, long d_max);

}  // namespace d4l
