#pragma once

#include <array>
#include <map>
#include <string>
#include <vector>

#include "d4lift/errors.hpp"
#include "d4lift/exact.hpp"
#include "d4lift/jacobi.hpp"
#include "d4lift/orbits.hpp"
#include "d4lift/pairspace.hpp"
#include "d4lift/rational.hpp"
#include "d4lift/siegel.hpp"

namespace d4l {

// Coefficient tables Lambda[B] indexed by integral pairs B = [T1, T2]: the lift
// from Siegel data via right-divisor coset sums, the divisor (Maass) relation,
// the slice-primitive grouping test, Fourier-Jacobi reassembly, degenerate
// constant-term coefficients, and growth-based vanishing/cuspidality reports.

enum class QuatProvenance { THETA_LIFT, SYNTHETIC, EXTERNAL };

const char* quat_provenance_name(QuatProvenance p);
QuatProvenance quat_provenance_parse(const std::string& name);

// pair flattened to (t1 row-major, t2 row-major) for exact map keys
using PairKey = std::array<Int, 8>;

PairKey pair_key(const PairB& b);
PairB pair_from_key(const PairKey& k);

// Gram matrix of the pair as a binary form triple (q(T1), (T1,T2), q(T2));
// det4 of the triple equals q_of_B
SiegelKey gram_of(const PairB& b);

// Gram matrix positive definite
bool pair_positive(const PairB& b);

// slice-primitive pair [b3 - b b4 + a b-3, -c b4 - b-4] with gram_of == t
PairB slice_rep(const SiegelKey& t);

// rank-3 pairs map to the orbit canonical form, everything else stays literal
PairB canonical_pair(const PairB& b);

// simultaneous norm-preserving action x -> g1 x g2 on both slots
inline PairB pair_act_sim(const Mat2& g1, const Mat2& g2, const PairB& b) {
    return PairB{g1 * b.t1 * g2, g1 * b.t2 * g2};
}

// right action mixing the slots: column j of B u
inline PairB pair_act_right(const PairB& b, const Mat2& u) {
    return PairB{u(0, 0) * b.t1 + u(1, 0) * b.t2, u(0, 1) * b.t1 + u(1, 1) * b.t2};
}

struct QuatCoeffTable {
    long weight = 0;
    QuatProvenance provenance = QuatProvenance::EXTERNAL;
    bool cuspidal = false;
    std::map<PairKey, Rat> entries;  // keyed by canonical_pair images
    long bound = -1;                 // certified for Q(B) <= bound
};

// Lambda[B] = sum over right divisor cosets r of |det r|^{weight-1} Bxi[T(B r^{-1})],
// stored on slice-primitive representatives of every reduced positive class up to
// the bound plus a family of imprimitive and gram-preserving variants
QuatCoeffTable theta_lift(const SiegelCoeffTable& bxi, long bound);

// table lookup; lift tables reconstruct unseen positive pairs from the stored
// slice-primitive representatives through the divisor sum
Rat quat_value(const QuatCoeffTable& table, const PairB& b);

// value at any slice-primitive pair sharing T(B); requires the grouping test
Rat lambda_prim(const QuatCoeffTable& table, const PairB& b);

struct SpezialscharReport {
    bool pass = true;
    long groups = 0;    // distinct Gram triples among stored slice-primitive pairs
    long compared = 0;  // stored slice-primitive pairs inspected
    std::vector<std::array<PairB, 2>> witnesses;  // same triple, unequal values
};

SpezialscharReport spezialschar_test(const QuatCoeffTable& table, long bound);

struct MaassReport {
    bool pass = true;
    long checked = 0;
    std::vector<PairB> violations;
};

// verifies Lambda[B] = sum_r |det r|^{weight-1} Lambda^prim[B r^{-1}] for every
// stored positive B with Q(B) <= bound
MaassReport maass_relation_check(const QuatCoeffTable& table, long bound);

// Fourier-Jacobi coefficient of the degenerate-index family at S = (n', m', r'):
// finite sum over the integral translates of the second slot
Rat fj_assemble(const QuatCoeffTable& table, long n, const MPrimeIndex& s);

// fj_assemble swept over the window n', m' <= bound, norm(S) <= bound
MPrimeCoeffTable fj_assemble_table(const QuatCoeffTable& table, long n, long alpha, long bound);

struct ConstantTermTable {
    std::map<std::array<long, 3>, Rat> entries;
};

// degenerate coefficient at C = (a, b, c): the finite sum over pairs
// [a b3 + c b-3 + k b-4, -b b-4] with k = s (C, x), s in Q/Z integral against x;
// reported up to one global nonzero unit
Rat constant_term_coeff(const QuatCoeffTable& table, std::array<long, 3> c,
                        std::array<long, 3> x);

ConstantTermTable constant_term_scan(const QuatCoeffTable& table, std::array<long, 3> x,
                                     long bound);

struct QuatVanishingReport {
    bool consistent_with_zero = true;
    bool slice_mode = false;  // cuspidal tables are tested on slice-primitive support
    bool imprimitive_support = false;
    std::vector<PairB> witnesses;
};

QuatVanishingReport quat_primitive_vanishing(const QuatCoeffTable& table, long bound);

// |Lambda[B]| against Q(B)^{(weight+1)/2} over stored primitive positive pairs
GrowthReport quat_cuspidality_classifier(const QuatCoeffTable& table, long weight);

std::string pair_to_json(const PairB& b);
PairB pair_from_json(const std::string& text);
std::string quat_to_json(const QuatCoeffTable& table);
QuatCoeffTable quat_from_json(const std::string& text);

}  // namespace d4l
