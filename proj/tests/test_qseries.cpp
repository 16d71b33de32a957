#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "d4lift/qseries.hpp"
#include "oracles.hpp"

using namespace d4l;

namespace {

QSeries random_series(std::mt19937_64& rng, long trunc) {
    std::uniform_int_distribution<long> num(-9, 9), den(1, 4);
    QSeries s;
    s.trunc = trunc;
    for (long d = 0; d <= trunc; ++d)
        if (num(rng) > 3) s.c[d] = rat(num(rng), den(rng));
    s.normalize();
    return s;
}

}  // namespace

TEST_CASE("eisenstein: frozen leading coefficients") {
    QSeries e4 = eisenstein(4, 6), e6 = eisenstein(6, 6);
    long f4[] = {1, 240, 2160, 6720, 17520, 30240, 60480};
    long f6[] = {1, -504, -16632, -122976, -532728, -1575504, -4058208};
    for (long n = 0; n <= 6; ++n) {
        CHECK(e4.at(n) == f4[n]);
        CHECK(e6.at(n) == f6[n]);
    }
    CHECK(e6.at(0) == 1);
    CHECK_THROWS_AS(e4.at(7), InsufficientPrecision);
    CHECK_THROWS_AS(eisenstein(5, 10), std::domain_error);
    CHECK_THROWS_AS(eisenstein(2, 10), std::domain_error);
    CHECK_THROWS_AS(eisenstein(4, 0), std::domain_error);
}

TEST_CASE("eisenstein: matches the direct divisor-sum oracle") {
    for (long k : {4L, 6L, 8L, 10L, 14L, 16L, 22L}) {
        QSeries e = eisenstein(k, 40);
        auto ref = oracle::eisenstein_direct(k, 40);
        for (long n = 0; n <= 40; ++n) CHECK(e.at(n) == ref[n]);
    }
}

TEST_CASE("delta: frozen coefficients and the eisenstein relation") {
    QSeries d = delta(8);
    long tau[] = {0, 1, -24, 252, -1472, 4830, -6048, -16744, 84480};
    for (long n = 0; n <= 8; ++n) CHECK(d.at(n) == tau[n]);

    QSeries e4 = eisenstein(4, 60), e6 = eisenstein(6, 60);
    QSeries lhs = e4 * e4 * e4 - e6 * e6;
    CHECK(lhs.at(0) == 0);
    CHECK(agree(lhs, Rat(1728) * delta(60)));
}

TEST_CASE("eta powers: euler products, definition, inverses") {
    QSeries eta = eta_power(1, 12);
    auto pent = oracle::euler_pentagonal(12);
    CHECK(eta.unit == 24);
    for (long j = 0; j <= 11; ++j) CHECK(eta.at_key(1 + 24 * j) == pent[j]);

    CHECK(eta_power(24, 30) == delta(30));
    CHECK(eta_power(0, 5) == qs_one(5));

    QSeries eta6 = eta_power(6, 20);
    CHECK(eta6.unit == 4);
    CHECK(agree(eta6 * eta6, eta_power(12, 20)));

    QSeries inv = eta_power(-24, 20);
    QSeries prod = inv * delta(20);
    CHECK(prod.at(0) == 1);
    for (long n = 1; n <= 18; ++n) CHECK(prod.at(n) == 0);

    CHECK_THROWS_AS(eta_power(1, 0), std::domain_error);
}

TEST_CASE("jacobi_theta_odd: support and antisymmetry") {
    ThetaSeries t = jacobi_theta_odd(16);
    CHECK(t.q_unit == 8);
    CHECK(t.z_unit == 2);
    // entries live at q^{m^2/8} zeta^{m/2} for odd m, with sign flip under m -> -m
    for (long m = 1; m * m <= t.trunc; m += 2) {
        Rat s = (m % 4 == 1) ? 1 : -1;
        CHECK(t.cols.at(m).at(m * m) == s);
        CHECK(t.cols.at(-m).at(m * m) == -s);
    }
    for (const auto& [r, col] : t.cols)
        for (const auto& [d, x] : col) {
            CHECK(d == r * r);
            CHECK(t.cols.at(-r).at(d) == -x);
        }
}

TEST_CASE("series arithmetic: ring laws on random series") {
    std::mt19937_64 rng(7);
    for (int it = 0; it < 40; ++it) {
        QSeries a = random_series(rng, 18), b = random_series(rng, 18), c = random_series(rng, 18);
        CHECK(a * b == b * a);
        CHECK((a * b) * c == a * (b * c));
        CHECK(a * (b + c) == a * b + a * c);
        CHECK((a + b) - b == qs_truncated(a, std::min(a.trunc, b.trunc)));
    }
}

TEST_CASE("truncation discipline: products never claim beyond the minimum") {
    QSeries a = eisenstein(4, 10), b = delta(25);
    QSeries p = a * b;
    CHECK(p.trunc / p.unit <= 10);
    CHECK_THROWS_AS(p.at(11), InsufficientPrecision);

    // Laurent factor with a pole shrinks validity by its valuation
    QSeries inv = eta_power(-24, 12);
    QSeries one = inv * eta_power(24, 12);
    CHECK(one.trunc == 11);
}

TEST_CASE("qs_inverse: two-sided inverse through the expected window") {
    QSeries d = delta(20);
    QSeries id = qs_inverse(d) * d;
    CHECK(id.at(0) == 1);
    for (long n = 1; n <= 17; ++n) CHECK(id.at(n) == 0);
    CHECK(qs_inverse(d).valuation() == -1);
    CHECK_THROWS_AS(qs_inverse(qs_zero(5)), std::domain_error);
}

TEST_CASE("dimensions: monomial count matches the floor-formula oracle") {
    for (long k = 0; k <= 60; k += 2) {
        CHECK(dim_modular(k) == oracle::dim_m_floor(k));
        CHECK(dim_cusp(k) == oracle::dim_s_floor(k));
    }
    CHECK(dim_modular(3) == 0);
}

TEST_CASE("cusp_basis: dimensions, echelon shape, frozen leaders") {
    auto b12 = cusp_basis(12, 15);
    REQUIRE(b12.size() == 1);
    CHECK(agree(b12[0], delta(15)));

    CHECK(cusp_basis(26, 12).size() == 1);
    auto b38 = cusp_basis(38, 12);
    CHECK(b38.size() == 2);

    for (long k : {12L, 16L, 20L, 24L, 30L, 38L, 42L}) {
        auto basis = cusp_basis(k, 14);
        CHECK((long)basis.size() == oracle::dim_s_floor(k));
        std::vector<long> pivots;
        for (const auto& f : basis) {
            long p = f.valuation();
            pivots.push_back(p);
            CHECK(f.at(p / f.unit) == 1);
            CHECK(p >= 1);  // cusp forms vanish at q^0
            for (const auto& g : basis)
                if (&g != &f) CHECK(g.at(p / g.unit) == 0);  // reduced echelon
        }
        CHECK(std::adjacent_find(pivots.begin(), pivots.end(),
                                 [](long x, long y) { return x >= y; }) == pivots.end());
    }

    CHECK(cusp_basis(11, 10).empty());
    CHECK(cusp_basis(10, 10).empty());
}

TEST_CASE("is_in_space: membership with exact certificates") {
    QSeries e4 = eisenstein(4, 12), e6 = eisenstein(6, 12);
    auto c8 = is_in_space(e4 * e4, 8, 10);
    CHECK(c8.in_space);
    REQUIRE(c8.combo.size() == 1);
    CHECK(c8.combo[0] == 1);

    auto c10 = is_in_space(delta(12), 10, 10);
    CHECK_FALSE(c10.in_space);

    auto cz = is_in_space(qs_zero(12), 12, 10);
    CHECK(cz.in_space);
    for (const auto& x : cz.combo) CHECK(x == 0);

    CHECK_THROWS_AS(is_in_space(delta(2), 36, 2), InsufficientPrecision);

    // round trip: random combinations are recognized with their exact coordinates
    std::mt19937_64 rng(19);
    std::uniform_int_distribution<long> coef(-6, 6);
    for (long k : {12L, 16L, 24L, 36L}) {
        auto basis = modular_basis(k, 2 * sturm_bound(k));
        for (int it = 0; it < 5; ++it) {
            QSeries f = qs_zero(2 * sturm_bound(k));
            std::vector<Rat> want;
            for (const auto& b : basis) {
                Rat x = rat(coef(rng), 1 + (it % 3));
                want.push_back(x);
                f = f + x * b;
            }
            auto cert = is_in_space(f, k, 2 * sturm_bound(k));
            CHECK(cert.in_space);
            CHECK(cert.combo == want);
        }
    }

    // fractional powers are never level-one modular forms
    CHECK_FALSE(is_in_space(eta_power(6, 20), 3, 15).in_space);
}

TEST_CASE("json: round trip preserves the series") {
    QSeries d = delta(9);
    QSeries back = qs_from_json(qs_to_json(d));
    CHECK(back == d);

    QSeries eta6 = eta_power(6, 7);
    QSeries b2 = qs_from_json(qs_to_json(eta6));
    CHECK(agree(b2, eta6));
    CHECK(b2.unit == eta6.unit);

    std::mt19937_64 rng(23);
    for (int it = 0; it < 10; ++it) {
        QSeries s = random_series(rng, 12);
        CHECK(qs_from_json(qs_to_json(s)) == s);
    }
}

TEST_CASE("theta arithmetic: zeta specialization and products") {
    ThetaSeries t = jacobi_theta_odd(10);
    QSeries col = ts_zeta_one(t);
    CHECK(col.is_zero());  // antisymmetric series vanish at zeta = 1

    ThetaSeries sq = ts_mul(t, t);
    // squared odd theta is symmetric with integral zeta powers
    for (const auto& [r, colq] : sq.cols) {
        for (const auto& [d, x] : colq) {
            CHECK(sq.cols.at(-r).at(d) == x);
        }
    }
    CHECK(sq.z_unit == 1);

    ThetaSeries st = ts_mul_q(t, eisenstein(4, 10));
    CHECK(st.q_unit == 8);
    CHECK(st.at(9, 0) == 0);
}
