#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <complex>
#include <map>
#include <utility>
#include <vector>

#include "d4lift/jacobi.hpp"
#include "oracles.hpp"

using namespace d4l;

namespace {

using Cplx = std::complex<double>;

long rat_rank(std::vector<std::vector<Rat>> rows) {
    long rank = 0;
    std::size_t ncols = rows.empty() ? 0 : rows[0].size();
    for (std::size_t col = 0; col < ncols && (std::size_t)rank < rows.size(); ++col) {
        std::size_t piv = rank;
        while (piv < rows.size() && rows[piv][col] == 0) ++piv;
        if (piv == rows.size()) continue;
        std::swap(rows[rank], rows[piv]);
        for (std::size_t i = 0; i < rows.size(); ++i) {
            if (i == (std::size_t)rank || rows[i][col] == 0) continue;
            Rat f = rows[i][col] / rows[rank][col];
            for (std::size_t j = col; j < ncols; ++j) rows[i][j] -= f * rows[rank][j];
        }
        ++rank;
    }
    return rank;
}

std::vector<Rat> flatten(const JacobiForm& phi, long n_bound, long r_bound) {
    std::vector<Rat> out;
    for (long n = 0; n <= n_bound; ++n)
        for (long r = -r_bound; r <= r_bound; ++r) out.push_back(phi.raw(n, r));
    return out;
}

}  // namespace

TEST_CASE("weak generators: frozen rows and the direct theta-quotient oracle") {
    auto [m21, z01] = weak_jacobi_generators(10);
    CHECK(m21.weight == -2);
    CHECK(z01.weight == 0);
    CHECK(m21.index == 1);
    CHECK(m21.window() >= 10);

    CHECK(m21.raw(0, -1) == 1);
    CHECK(m21.raw(0, 0) == -2);
    CHECK(m21.raw(0, 1) == 1);
    long r1[] = {-2, 8, -12, 8, -2};
    for (long r = -2; r <= 2; ++r) CHECK(m21.raw(1, r) == r1[r + 2]);
    long r2[] = {1, -12, 39, -56, 39, -12, 1};
    for (long r = -3; r <= 3; ++r) CHECK(m21.raw(2, r) == r2[r + 3]);

    CHECK(z01.raw(0, -1) == 1);
    CHECK(z01.raw(0, 0) == 10);
    CHECK(z01.raw(0, 1) == 1);
    long s1[] = {10, -64, 108, -64, 10};
    for (long r = -2; r <= 2; ++r) CHECK(z01.raw(1, r) == s1[r + 2]);
    long s2[] = {1, 108, -513, 808, -513, 108, 1};
    for (long r = -3; r <= 3; ++r) CHECK(z01.raw(2, r) == s2[r + 3]);

    auto om = oracle::phi_m21_direct(10);
    auto oz = oracle::phi_01_direct(10);
    for (long n = 0; n <= 10; ++n)
        for (long r = -8; r <= 8; ++r) {
            auto get = [&](const oracle::JTable& t) {
                auto it = t.find({n, r});
                return it == t.end() ? Rat(0) : it->second;
            };
            CHECK(m21.raw(n, r) == get(om));
            CHECK(z01.raw(n, r) == get(oz));
            CHECK(m21.raw(n, r) == m21.raw(n, -r));
            CHECK(z01.raw(n, r) == z01.raw(n, -r));
        }

    CHECK_THROWS_AS(weak_jacobi_generators(1), std::domain_error);
    CHECK_THROWS_AS(m21.raw(11, 0), InsufficientPrecision);
}

TEST_CASE("cusp generators: frozen rows and singular vanishing") {
    JacobiForm p10 = jacobi_phi10(12), p12 = jacobi_phi12(12);
    CHECK(p10.weight == 10);
    CHECK(p12.weight == 12);
    CHECK(*p10.cuspidal);
    CHECK(p10.window() == 12);

    long a1[] = {1, -2, 1};
    for (long r = -1; r <= 1; ++r) CHECK(p10.raw(1, r) == a1[r + 1]);
    long a2[] = {-2, -16, 36, -16, -2};
    for (long r = -2; r <= 2; ++r) CHECK(p10.raw(2, r) == a2[r + 2]);
    long a3[] = {1, 36, 99, -272, 99, 36, 1};
    for (long r = -3; r <= 3; ++r) CHECK(p10.raw(3, r) == a3[r + 3]);

    long b1[] = {1, 10, 1};
    for (long r = -1; r <= 1; ++r) CHECK(p12.raw(1, r) == b1[r + 1]);
    long b2[] = {10, -88, -132, -88, 10};
    for (long r = -2; r <= 2; ++r) CHECK(p12.raw(2, r) == b2[r + 2]);
    long b3[] = {1, -132, 1275, 736, 1275, -132, 1};
    for (long r = -3; r <= 3; ++r) CHECK(p12.raw(3, r) == b3[r + 3]);

    for (long k = 0; k * k <= 12; ++k) {
        CHECK(p10.raw(k * k, 2 * k) == 0);
        CHECK(p12.raw(k * k, 2 * k) == 0);
    }
    // coefficients vanish below the diagonal for cusp forms
    CHECK(p10.coeff(1, 3) == 0);
    CHECK(p10.coeff(2, 4) == 0);
    CHECK(p10.raw(1, 3) == 0);
}

TEST_CASE("index-1 rigidity: coefficients are a function of (4n - r^2, r mod 2)") {
    const long N = 30;
    auto [m21, z01] = weak_jacobi_generators(N);
    std::vector<JacobiForm> forms = {m21, z01, jacobi_phi10(N), jacobi_phi12(N)};
    for (auto& f : jacobi_cusp_basis(16, N)) forms.push_back(std::move(f));
    REQUIRE(forms.size() == 6);

    for (const JacobiForm& phi : forms) {
        std::map<std::pair<long, long>, Rat> cls;
        for (long n = 0; n <= N; ++n)
            for (long r = -12; r <= 12; ++r) {
                Rat v = phi.raw(n, r);
                CHECK(phi.coeff(n, r) == v);
                auto key = std::make_pair(4 * n - r * r, ((r % 2) + 2) % 2);
                auto [it, fresh] = cls.try_emplace(key, v);
                if (!fresh) CHECK(it->second == v);
            }
    }
}

TEST_CASE("cusp basis: dimensions match the elliptic cusp space and forms are independent") {
    long expect[] = {1, 1, 1, 2, 2, 2};
    for (long l = 10; l <= 20; l += 2) {
        auto basis = jacobi_cusp_basis(l, 8);
        CHECK((long)basis.size() == oracle::dim_s_floor(2 * l - 2));
        CHECK((long)basis.size() == expect[(l - 10) / 2]);
        std::vector<std::vector<Rat>> rows;
        for (const JacobiForm& f : basis) {
            CHECK(f.weight == l);
            CHECK(*f.cuspidal);
            CHECK(f.raw(0, 0) == 0);
            rows.push_back(flatten(f, 8, 11));
        }
        CHECK(rat_rank(std::move(rows)) == (long)basis.size());
    }
    CHECK(jacobi_cusp_basis(11, 8).empty());
    CHECK(jacobi_cusp_basis(8, 8).empty());
}

TEST_CASE("taylor coefficients: parity, frozen delta multiples, membership certificates") {
    JacobiForm p10 = jacobi_phi10(12), p12 = jacobi_phi12(12);

    CHECK(taylor_lambda(p10, 0, 10).is_zero());
    CHECK(taylor_lambda(p10, 1, 10).is_zero());
    CHECK(taylor_lambda(p12, 1, 10).is_zero());
    CHECK(taylor_lambda(p12, 3, 10).is_zero());

    QSeries l2 = taylor_lambda(p10, 2, 10);
    CHECK(l2.at(1) == 2);
    CHECK(l2.at(2) == -48);
    CHECK(l2.at(3) == 504);
    CHECK(agree(l2, Rat(2) * delta(10)));

    QSeries l0 = taylor_lambda(p12, 0, 10);
    CHECK(l0.at(1) == 12);
    CHECK(l0.at(2) == -288);
    CHECK(l0.at(3) == 3024);
    CHECK(agree(l0, Rat(12) * delta(10)));

    // first nonvanishing coefficient is a modular form of weight l + nu
    auto c10 = is_in_space(l2, 12, 10);
    CHECK(c10.in_space);
    CHECK(c10.combo == std::vector<Rat>{0, 2});
    auto c12 = is_in_space(l0, 12, 10);
    CHECK(c12.in_space);
    CHECK(c12.combo == std::vector<Rat>{0, 12});

    auto [m21, z01] = weak_jacobi_generators(10);
    auto cz = is_in_space(taylor_lambda(z01, 0, 10), 0, 8);
    CHECK(cz.in_space);
    CHECK(cz.combo == std::vector<Rat>{12});

    // independent double-sum route
    for (long nu : {0L, 2L, 4L}) {
        QSeries l = taylor_lambda(p12, nu, 8);
        for (long n = 0; n <= 8; ++n) {
            Rat s = 0;
            for (long r = -12; r <= 12; ++r) {
                Rat w = 1;
                for (long i = 0; i < nu; ++i) w *= r;
                s += w * p12.raw(n, r);
            }
            CHECK(l.at(n) == s);
        }
    }

    // the first nonvanishing Taylor coefficient is modular of weight l + nu;
    // later ones pick up quasi-modular corrections, so certify only the first
    for (const JacobiForm& f : jacobi_cusp_basis(16, 10)) {
        QSeries l0 = taylor_lambda(f, 0, 10);
        long nu0 = l0.is_zero() ? 2 : 0;
        auto cert = is_in_space(taylor_lambda(f, nu0, 10), 16 + nu0, 10);
        CHECK(cert.in_space);
    }

    CHECK_THROWS_AS(taylor_lambda(p10, 2, 50), InsufficientPrecision);
    CHECK_THROWS_AS(taylor_lambda(p10, -1, 5), std::domain_error);
}

TEST_CASE("transformation law: exact stabilizer paths") {
    JacobiForm p10 = jacobi_phi10(12);
    auto id = transformation_check(p10, Mat2::identity(), Cplx(0.1, 1.3), Cplx(0.2, 0.1), 12);
    CHECK(id.residual == 0.0);
    CHECK(id.tail_bound == 0.0);

    auto t = transformation_check(p10, Mat2(1, 1, 0, 1), Cplx(0.1, 1.3), Cplx(0.2, 0.1), 12);
    CHECK(t.residual == 0.0);
    auto t3 = transformation_check(p10, Mat2(1, -3, 0, 1), Cplx(0.1, 1.3), Cplx(0.2, 0.1), 12);
    CHECK(t3.residual == 0.0);
    auto ni = transformation_check(p10, Mat2(-1, 0, 0, -1), Cplx(0.1, 1.3), Cplx(0.2, 0.1), 12);
    CHECK(ni.residual == 0.0);

    CHECK_THROWS_AS(
        transformation_check(p10, Mat2(1, 0, 0, -1), Cplx(0, 2), Cplx(0.1, 0), 12),
        std::domain_error);
}

TEST_CASE("transformation law: numeric residuals at the inversion and generic elements") {
    JacobiForm p10 = jacobi_phi10(40), p12 = jacobi_phi12(40);
    Mat2 s(0, -1, 1, 0);

    auto r10 = transformation_check(p10, s, Cplx(0, 2), Cplx(0.1, 0), 40);
    CHECK(r10.residual < 1e-8);
    CHECK(r10.tail_bound < 1e-8);
    auto r12 = transformation_check(p12, s, Cplx(0, 2), Cplx(0.1, 0), 40);
    CHECK(r12.residual < 1e-8);

    for (const Mat2& g : {Mat2(2, 1, 1, 1), Mat2(3, 2, 1, 1)}) {
        auto r = transformation_check(p10, g, Cplx(0.3, 1.8), Cplx(0.07, 0.03), 40, 1e-6);
        CHECK(r.residual < 1e-6);
    }

    // c = 2 drags Im(gamma tau) down to ~0.12, so certifying the tail needs a
    // deeper window than 40 rows
    JacobiForm deep = jacobi_phi10(90);
    auto rc2 = transformation_check(deep, Mat2(1, 0, 2, 1), Cplx(0.3, 1.8), Cplx(0.07, 0.03), 90,
                                    1e-6);
    CHECK(rc2.residual < 1e-6);
    CHECK_THROWS_AS(
        transformation_check(p10, Mat2(1, 0, 2, 1), Cplx(0.3, 1.8), Cplx(0.07, 0.03), 40, 1e-6),
        InsufficientPrecision);

    auto [m21, z01] = weak_jacobi_generators(40);
    auto rw = transformation_check(z01, s, Cplx(0, 2), Cplx(0.1, 0), 40, 1e-6);
    CHECK(rw.residual < 1e-6);

    CHECK_THROWS_AS(transformation_check(p10, s, Cplx(0, 0.02), Cplx(0, 0), 12),
                    InsufficientPrecision);
}

TEST_CASE("restricted columns agree with the full expansions") {
    const long N = 25;
    auto [m21, z01] = weak_jacobi_generators(N);
    for (long r = 0; r <= 3; ++r) {
        QSeries cm = weak_m21_column(r, N), cz = weak_01_column(r, N);
        for (long n = 0; n <= N; ++n) {
            CHECK(cm.at(n) == m21.raw(n, r));
            CHECK(cz.at(n) == z01.raw(n, r));
        }
    }

    QSeries col0 = delta(N + 1) * weak_m21_column(0, N);
    QSeries col1 = delta(N + 1) * weak_m21_column(1, N);
    JacobiTable tc = table_from_columns(10, col0, col1, N);
    JacobiTable tf = table_from_form(jacobi_phi10(N), N);
    for (const auto& [key, v] : tf.coeffs) {
        if (key.second != 0 && key.second != 1) continue;
        auto it = tc.coeffs.find(key);
        CHECK((it != tc.coeffs.end() ? it->second : Rat(0)) == v);
    }
    for (const auto& [key, v] : tc.coeffs) {
        auto it = tf.coeffs.find(key);
        CHECK((it != tf.coeffs.end() ? it->second : Rat(0)) == v);
    }
}

TEST_CASE("growth scan: synthetic power-law samples") {
    std::vector<std::pair<double, double>> cubic, linear;
    for (long k = 3; k <= 120; ++k) {
        cubic.emplace_back(double(k), double(k) * k * k);
        linear.emplace_back(double(k), double(k));
    }
    GrowthReport g = growth_scan(cubic, 2.0);
    CHECK(g.growth_detected);
    CHECK_FALSE(g.is_cusp_consistent);
    CHECK(g.growth_slope == doctest::Approx(3.0).epsilon(1e-9));
    GrowthReport l = growth_scan(linear, 2.0);
    CHECK(l.is_cusp_consistent);
    CHECK_FALSE(l.growth_detected);
    CHECK(l.growth_slope == doctest::Approx(1.0).epsilon(1e-9));
}

TEST_CASE("cusp classifier: Hecke bound verdicts") {
    const long N = 128;
    QSeries d = delta(N + 2);
    JacobiTable cusp = table_from_columns(10, d * weak_m21_column(0, N + 1),
                                          d * weak_m21_column(1, N + 1), N);
    GrowthReport rc = cusp_classifier(cusp, 400);
    CHECK(rc.is_cusp_consistent);
    CHECK_FALSE(rc.growth_detected);
    CHECK(rc.max_ratio > 0.0);
    CHECK(rc.growth_slope < 5.8);
    CHECK(rc.sample_count > 150);

    // the raw product E4 E6 phi01 keeps the D = -1 row of phi01, so its
    // positive-D coefficients grow like e^{pi sqrt D}: detected, steep slope
    QSeries g = eisenstein(4, N + 1) * eisenstein(6, N + 1);
    JacobiTable weak = table_from_columns(10, g * weak_01_column(0, N + 1),
                                          g * weak_01_column(1, N + 1), N);
    GrowthReport rw = cusp_classifier(weak, 400);
    CHECK(rw.growth_detected);
    CHECK_FALSE(rw.is_cusp_consistent);
    CHECK(rw.growth_slope > 12.0);

    // subtracting E4^3 phi-21 cancels the D = -1 row; the difference is the
    // holomorphic non-cusp form (12x the weight-10 Eisenstein series) whose
    // coefficients grow like D^{weight - 3/2}
    QSeries e43 = eisenstein(4, N + 1);
    e43 = e43 * e43 * e43;
    JacobiTable eis =
        table_from_columns(10, g * weak_01_column(0, N + 1) - e43 * weak_m21_column(0, N + 1),
                           g * weak_01_column(1, N + 1) - e43 * weak_m21_column(1, N + 1), N);
    CHECK(eis.coeffs.at({0, 0}) == 12);
    CHECK(eis.coeffs.count({0, 1}) == 0);
    GrowthReport re = cusp_classifier(eis, 400);
    CHECK(re.growth_detected);
    CHECK_FALSE(re.is_cusp_consistent);
    CHECK(re.growth_slope == doctest::Approx(8.5).epsilon(0.01));

    JacobiTable zero;
    zero.weight = 10;
    GrowthReport rz = cusp_classifier(zero, 400);
    CHECK(rz.is_cusp_consistent);
    CHECK(rz.max_ratio == 0.0);
    CHECK(rz.growth_slope == 0.0);

    CHECK_THROWS_AS(cusp_classifier(cusp, 90), InsufficientData);
    JacobiTable stub = table_from_form(jacobi_phi10(10), 10);
    CHECK_THROWS_AS(cusp_classifier(stub, 400), InsufficientData);
    JacobiTable light;
    light.weight = 4;
    CHECK_THROWS_AS(cusp_classifier(light, 400), std::domain_error);
}

TEST_CASE("json: jacobi table round trip") {
    JacobiTable t = table_from_form(jacobi_phi12(6), 6);
    std::string s = table_to_json(t);
    CHECK(s.find("\"weight\":12") != std::string::npos);
    CHECK(s.find("1,-1") != std::string::npos);
    JacobiTable back = table_from_json(s);
    CHECK(back.weight == t.weight);
    CHECK(back.index == t.index);
    CHECK(back.coeffs == t.coeffs);

    JacobiTable custom;
    custom.weight = 11;
    custom.index = 2;
    custom.coeffs[{2, -5}] = rat(7, 3);
    JacobiTable b2 = table_from_json(table_to_json(custom));
    CHECK(b2.index == 2);
    CHECK(b2.coeffs == custom.coeffs);
}
