#pragma once

#include <array>
#include <functional>
#include <map>
#include <string>
#include <vector>

#include "d4lift/jacobi.hpp"
#include "d4lift/pairspace.hpp"

namespace d4l {

// half-integral matrix (a, b/2; b/2, c) stored as the integer triple of
// a x^2 + b xy + c y^2
struct SiegelKey {
    long a = 0, b = 0, c = 0;
    long det4() const { return 4 * a * c - b * b; }
    long content() const;
    auto operator<=>(const SiegelKey&) const = default;
};

// GL2(Z)-reduced representative: 0 <= b <= a <= c, or (0, 0, g) when det = 0;
// rejects indefinite input
SiegelKey reduce_key(SiegelKey t);

// coefficient table keyed by reduced representatives; complete through
// 4ac - b^2 <= bound (and degenerate classes (0,0,g), g <= bound, unless cuspidal)
struct SiegelCoeffTable {
    long weight = 0;
    bool cuspidal = false;
    std::map<SiegelKey, Rat> entries;
    long bound = -1;
};

// class-function lookup: reduces t, then reads the table; semi-definite
// queries on cuspidal tables are exactly zero
Rat siegel_value(const SiegelCoeffTable& table, SiegelKey t);

// B[(a,b,c)] = sum_{d | gcd(a,b,c)} d^{weight-1} c(ac/d^2, b/d) over the
// positive-definite reduced classes with 4ac - b^2 <= bound
SiegelCoeffTable maass_lift(const JacobiForm& phi, long bound);

// table of f(4ac - b^2, content) over the same classes plus the degenerate
// ones; f sees T only through its GL2(Z)-invariants, so the table is well formed
SiegelCoeffTable synthetic_siegel(const std::function<Rat(long, long)>& f, long bound);

// element of the 4-dim quadratic subspace with rational entries (the integer
// Mat2 cannot hold the b/2 terms)
struct RatMat2 {
    std::array<Rat, 4> e{};  // row major
    bool operator==(const RatMat2&) const = default;
};

// -c b4 - (b/2)(b3 - b-3) - a b-4
RatMat2 siegel_to_mprime(SiegelKey t);

// S = -n b4 - m b-4 - (r/alpha) y_alpha with y_alpha = b3 - (alpha/2) b-3
struct MPrimeIndex {
    long n = 0, m = 0, r = 0;
    long alpha = 2;
    long norm() const { return 2 * alpha * n * m - r * r; }  // alpha * (S, S)
    Rat ss() const { return Rat(norm()) / alpha; }
    bool in_positive_cone() const { return n >= 0 && m >= 0 && norm() >= 0; }
    RatMat2 vector() const;
    long content() const;
};

struct MPrimeCoeffTable {
    long weight = 0;
    long alpha = 2;
    std::map<std::array<long, 3>, Rat> entries;  // (n, m, r), zeros omitted
    // entries are complete over the window n, m <= bound restricted to
    // norm = 2 alpha n m - r^2 <= bound
    long bound = -1;
};

// dictionary at alpha = 2: A[(n, m, r)] = B[(m, r, n)]
MPrimeCoeffTable mprime_from_siegel(const SiegelCoeffTable& table);

// m-th Fourier-Jacobi slice: (n, r) entries, a Jacobi-style table of
// index m alpha / 2
JacobiTable fj_slice(const MPrimeCoeffTable& table, long m);

// Hecke-bound classifier keyed on (S, S) > 0, exponent (weight + 1) / 2
GrowthReport mprime_hecke_classifier(const MPrimeCoeffTable& table, long weight);

struct PrimitiveVanishingReport {
    bool consistent_with_zero = false;
    bool imprimitive_support = false;  // nonzero entries exist but none primitive
    std::vector<MPrimeIndex> witnesses;
};

// lists the primitive indices (gcd(n, m, r) = 1) carrying nonzero values;
// an empty list is consistent with the zero form through the bound
PrimitiveVanishingReport mprime_primitive_vanishing(const MPrimeCoeffTable& table);

std::string siegel_to_json(const SiegelCoeffTable& table);
SiegelCoeffTable siegel_from_json(const std::string& text);
std::string mprime_to_json(const MPrimeCoeffTable& table);
MPrimeCoeffTable mprime_from_json(const std::string& text);

}  // namespace d4l
