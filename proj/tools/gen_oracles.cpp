// Prints the oracle-derived values that get frozen into the unit tests.
// Run once per change to the oracle routines; output is pasted by hand.

#include <iostream>

#include "../tests/oracles.hpp"

using namespace d4l;

static void print_mat(const IntMatrix& m) {
    std::cout << "[";
    for (int i = 0; i < m.rows; ++i) {
        std::cout << "[";
        for (int j = 0; j < m.cols; ++j) std::cout << m(i, j) << (j + 1 < m.cols ? "," : "");
        std::cout << "]" << (i + 1 < m.rows ? "," : "");
    }
    std::cout << "]";
}

int main() {
    {
        IntMatrix m(2, 2);
        m(0, 0) = 2, m(0, 1) = 4, m(1, 0) = 1, m(1, 1) = 3;
        auto h = oracle::hnf_bounded_search(m, 3);
        std::cout << "hnf [[2,4],[1,3]] -> ";
        if (h)
            print_mat(*h);
        else
            std::cout << "none";
        std::cout << "\n";
    }
    {
        IntMatrix m(2, 2);
        m(0, 0) = 2, m(1, 1) = 4;
        std::cout << "snf [[2,0],[0,4]] -> ";
        for (auto& d : oracle::snf_gcd_minors(m)) std::cout << d << " ";
        std::cout << "\n";
        IntMatrix m2(2, 4);
        m2(0, 0) = 2, m2(1, 1) = 1;
        std::cout << "snf [[2,0,0,0],[0,1,0,0]] -> ";
        for (auto& d : oracle::snf_gcd_minors(m2)) std::cout << d << " ";
        std::cout << "\n";
    }
    for (long n : {1L, 2L, 6L}) {
        auto cls = oracle::hecke_brute(n, static_cast<int>(std::max(4L, n)));
        std::cout << "hecke classes n=" << n << " -> count " << cls.size() << "\n";
    }
    {
        // right divisors of B = [2*T1, 2*T2], T1 = (1,2;3,4), T2 = (0,1;1,0), n = 2
        PairB b;
        b.t1 = Mat2(2, 4, 6, 8);
        b.t2 = Mat2(0, 2, 2, 0);
        auto divs = right_divisors(b, 2);
        std::cout << "right_divisors doubled pair, n=2 -> count " << divs.size() << "\n";
    }
    {
        PairB b;  // [b3, b-4]
        b.t1 = Mat2(1, 0, 0, 0);
        b.t2 = Mat2(0, 1, 0, 0);
        for (long n : {2L, 3L, 4L})
            std::cout << "right_divisors [b3,b-4], n=" << n << " -> count " << right_divisors(b, n).size()
                      << "\n";
        std::cout << "minor_gcd2 [b3,b-4] -> " << minor_gcd2(b) << "\n";
    }
    {
        PairB b;  // [(2,0;0,0),(0,1;0,0)]
        b.t1 = Mat2(2, 0, 0, 0);
        b.t2 = Mat2(0, 1, 0, 0);
        std::cout << "snf stacked [(2,0;0,0),(0,1;0,0)] -> ";
        for (auto& d : oracle::snf_gcd_minors(stacked(b))) std::cout << d << " ";
        std::cout << "\n";
    }
    {
        Mat2 i2 = Mat2::identity();
        Mat2 j(0, 1, -1, 0);
        std::cout << "bilinear (I, (0,1;-1,0)) -> " << oracle::bilinear_by_polarization(i2, j) << "\n";
        Mat2 b3(1, 0, 0, 0), bm3(0, 0, 0, 1), b4(0, 0, -1, 0), bm4(0, 1, 0, 0);
        std::cout << "bilinear (b3, b-3) -> " << oracle::bilinear_by_polarization(b3, bm3) << "\n";
        std::cout << "bilinear (b4, b4) -> " << oracle::bilinear_by_polarization(b4, b4) << "\n";
        PairB p{b3, bm4};
        auto f = oracle::binary_form_by_evaluation(p);
        std::cout << "t_of_B [b3, b-4] -> [" << f[0] << "," << f[1] << "," << f[2] << "]\n";
        PairB q{i2, j};
        auto f2 = oracle::binary_form_by_evaluation(q);
        std::cout << "t_of_B [I, (0,1;-1,0)] -> [" << f2[0] << "," << f2[1] << "," << f2[2] << "]\n";
        // Gram entries and Q for [I, (0,1;-1,0)]
        Rat g11 = oracle::bilinear_by_polarization(i2, i2);
        Rat g12 = oracle::bilinear_by_polarization(i2, j);
        Rat g22 = oracle::bilinear_by_polarization(j, j);
        std::cout << "gram [I,(0,1;-1,0)] -> (" << g11 << "," << g12 << "," << g22 << ")  Q="
                  << g11 * g22 - g12 * g12 << "\n";
    }
    {
        // orbit examples: content and norm by direct coordinate formulas
        auto show = [](const char* name, const std::array<Rat, 6>& c) {
            Rat nrm = oracle::v33_norm_direct(c);
            Int cont = oracle::v33_content_direct(c);
            std::cout << "v33 " << name << " -> content " << cont << " norm " << nrm;
            if (nrm != 0) std::cout << " alpha " << nrm / (cont * cont);
            std::cout << "\n";
        };
        show("b2", {1, 0, 0, 0, 0, 0});
        show("b3+b-3", {0, 1, 0, 0, 1, 0});
        show("3b3+3b-3", {0, 3, 0, 0, 3, 0});
        show("2b3+4b-3", {0, 2, 0, 0, 4, 0});
    }
    {
        // slice reduction oracle: Gauss-reduced forms of (a,b,c) = (m,r,n)
        auto show = [](const char* name, std::array<Int, 3> f) {
            auto red = oracle::gauss_reduce_brute(f, 6);
            std::cout << "gauss " << name << " -> ";
            for (auto& g : red) std::cout << "(" << g[0] << "," << g[1] << "," << g[2] << ") ";
            std::cout << "\n";
        };
        show("(1,2,1)", {1, 2, 1});   // slice of B = [I, (0,-1;1,2)], disc 0
        show("(1,0,1)", {1, 0, 1});   // slice of B = [I, (0,-1;1,0)]
        show("(2,1,3)", {2, 1, 3});   // generic positive definite slice
        show("(3,1,2)", {3, 1, 2});   // same class, swapped entry order
        show("(2,2,2)", {2, 2, 2});   // boundary a = c with b on edge
    }
    {
        auto head = [](const char* name, const oracle::QPoly& p, std::size_t k) {
            std::cout << name << " ->";
            for (std::size_t i = 0; i <= k && i < p.size(); ++i) std::cout << " " << p[i];
            std::cout << "\n";
        };
        head("E4", oracle::eisenstein_direct(4, 6), 6);
        head("E6", oracle::eisenstein_direct(6, 6), 6);
        oracle::QPoly delta = oracle::qp_mul(oracle::qp_pow(oracle::euler_pentagonal(8), 24, 8), {0, 1}, 8);
        head("Delta", delta, 8);
        head("eta", oracle::euler_pentagonal(12), 12);
        std::cout << "bernoulli 12 16 -> " << oracle::bernoulli_at(12) << " " << oracle::bernoulli_at(16)
                  << "\n";
        std::cout << "dim M_k k=0..38 ->";
        for (long k = 0; k <= 38; k += 2) std::cout << " " << oracle::dim_m_floor(k);
        std::cout << "\n";
        std::cout << "dim S_{2l-2} l=10..20 ->";
        for (long l = 10; l <= 20; l += 2) std::cout << " " << oracle::dim_s_floor(2 * l - 2);
        std::cout << "\n";
    }
    {
        auto rows = [](const char* name, const oracle::JTable& t, long nmax) {
            for (long n = 0; n <= nmax; ++n) {
                std::cout << name << " n=" << n << " ->";
                for (long r = -2 * nmax - 2; r <= 2 * nmax + 2; ++r) {
                    auto it = t.find({n, r});
                    if (it != t.end() && it->second != 0)
                        std::cout << " (" << r << ")" << it->second;
                }
                std::cout << "\n";
            }
        };
        auto wm2 = oracle::phi_m21_direct(3);
        auto w0 = oracle::phi_01_direct(3);
        rows("phi_{-2,1}", wm2, 2);
        rows("phi_{0,1}", w0, 2);
        // cusp generators: Delta * weak generators
        oracle::QPoly delta = oracle::qp_mul(oracle::qp_pow(oracle::euler_pentagonal(4), 24, 4), {0, 1}, 4);
        auto mul_q = [&](const oracle::JTable& t, long nmax) {
            oracle::JTable out;
            for (const auto& [nr, c] : t)
                for (long k = 1; k <= nmax - nr.first && k < (long)delta.size(); ++k)
                    if (delta[k] != 0) out[{nr.first + k, nr.second}] += delta[k] * c;
            std::erase_if(out, [](const auto& kv) { return kv.second == 0; });
            return out;
        };
        rows("phi_{10,1}", mul_q(wm2, 3), 3);
        rows("phi_{12,1}", mul_q(w0, 3), 3);
        auto lam = [](const oracle::JTable& t, long nu, long nmax) {
            std::cout << "lambda_" << nu << " ->";
            for (long n = 0; n <= nmax; ++n) {
                Rat s = 0;
                for (const auto& [nr, c] : t)
                    if (nr.first == n) s += c * pow_int(Int(nr.second), nu);
                std::cout << " " << s;
            }
            std::cout << "\n";
        };
        lam(mul_q(wm2, 3), 2, 3);
        lam(mul_q(w0, 3), 0, 3);
    }
    return 0;
}
