#include "d4lift/quaternionic.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <sstream>
#include <stdexcept>
#include <utility>

#include <json.hpp>

namespace d4l {

namespace {

long to_long_checked(const Int& v, const char* what) {
    if (!v.fits_slong_p())
        throw std::overflow_error(std::string(what) + ": value exceeds long range");
    return v.get_si();
}

long isqrt_ll(long v) {
    if (v < 0) return -1;
    long r = (long)std::sqrt((double)v);
    while (r > 0 && r * r > v) --r;
    while ((r + 1) * (r + 1) <= v) ++r;
    return r;
}

Int pow_l(long base, long exp) {
    Int r;
    mpz_ui_pow_ui(r.get_mpz_t(), (unsigned long)base, (unsigned long)exp);
    return r;
}

std::vector<long> divisors_of(const Int& n, const char* what) {
    long v = to_long_checked(n, what);
    if (v <= 0) throw std::domain_error(std::string(what) + ": divisor sum needs a full-rank pair");
    std::vector<long> out;
    for (long d = 1; d * d <= v; ++d) {
        if (v % d != 0) continue;
        out.push_back(d);
        if (d != v / d) out.push_back(v / d);
    }
    std::sort(out.begin(), out.end());
    return out;
}

std::string triple_str(const SiegelKey& t) {
    return "(" + std::to_string(t.a) + "," + std::to_string(t.b) + "," + std::to_string(t.c) + ")";
}

// stored value of Lambda^prim through the canonical slice-primitive representative
Rat prim_lookup(const QuatCoeffTable& table, const PairB& b) {
    SiegelKey t = reduce_key(gram_of(b));
    auto it = table.entries.find(pair_key(slice_rep(t)));
    if (it == table.entries.end())
        throw SearchExhausted("lambda_prim: no slice-primitive representative stored for " +
                              triple_str(t));
    return it->second;
}

}  // namespace

const char* quat_provenance_name(QuatProvenance p) {
    switch (p) {
        case QuatProvenance::THETA_LIFT: return "THETA_LIFT";
        case QuatProvenance::SYNTHETIC: return "SYNTHETIC";
        case QuatProvenance::EXTERNAL: return "EXTERNAL";
    }
    return "EXTERNAL";
}

QuatProvenance quat_provenance_parse(const std::string& name) {
    if (name == "THETA_LIFT") return QuatProvenance::THETA_LIFT;
    if (name == "SYNTHETIC") return QuatProvenance::SYNTHETIC;
    if (name == "EXTERNAL") return QuatProvenance::EXTERNAL;
    throw std::invalid_argument("quat_provenance_parse: unknown tag '" + name + "'");
}

PairKey pair_key(const PairB& b) {
    return {b.t1(0, 0), b.t1(0, 1), b.t1(1, 0), b.t1(1, 1),
            b.t2(0, 0), b.t2(0, 1), b.t2(1, 0), b.t2(1, 1)};
}

PairB pair_from_key(const PairKey& k) {
    return PairB{Mat2(k[0], k[1], k[2], k[3]), Mat2(k[4], k[5], k[6], k[7])};
}

SiegelKey gram_of(const PairB& b) {
    return SiegelKey{to_long_checked(qform(b.t1), "gram_of"),
                     to_long_checked(bilinear(b.t1, b.t2), "gram_of"),
                     to_long_checked(qform(b.t2), "gram_of")};
}

bool pair_positive(const PairB& b) {
    SiegelKey g = gram_of(b);
    return g.a > 0 && g.det4() > 0;
}

PairB slice_rep(const SiegelKey& t) {
    return PairB{Mat2(1, 0, t.b, t.a), Mat2(0, -1, t.c, 0)};
}

PairB canonical_pair(const PairB& b) {
    if (b.is_zero() || rank_of(b) != 3) return b;
    Int g = 0;
    for (const Mat2* t : {&b.t1, &b.t2})
        for (int i = 0; i < 2; ++i)
            for (int j = 0; j < 2; ++j) g = gcd(g, (*t)(i, j));
    PairB prim{b.t1, b.t2};
    if (g > 1) {
        auto scale = [&](const Mat2& m) {
            return Mat2(m(0, 0) / g, m(0, 1) / g, m(1, 0) / g, m(1, 1) / g);
        };
        prim = PairB{scale(b.t1), scale(b.t2)};
    }
    PairB canon;
    try {
        canon = reduce_pair_rank3(prim).canonical();
    } catch (const ReductionIncomplete&) {
        return b;  // unreduced keys stay usable: callers only need a stable form
    }
    if (g > 1) canon = PairB{g * canon.t1, g * canon.t2};
    return canon;
}

// --- the lift ------------------------------------------------------------------

namespace {

Rat lift_value(const SiegelCoeffTable& bxi, const PairB& b) {
    Rat total = 0;
    for (long n : divisors_of(minor_gcd2(b), "theta_lift"))
        for (const RightDivisor& rd : right_divisors(b, n))
            total += Rat(pow_l(n, bxi.weight - 1)) * siegel_value(bxi, gram_of(rd.bprime));
    return total;
}

}  // namespace

QuatCoeffTable theta_lift(const SiegelCoeffTable& bxi, long bound) {
    if (bxi.weight % 2 != 0 || bxi.weight < 16)
        throw std::domain_error("theta_lift: weight must be even and at least 16");
    if (!bxi.cuspidal) throw std::domain_error("theta_lift: needs a cuspidal Siegel table");
    if (bound < 3) throw std::domain_error("theta_lift: bound below 3");
    if (bxi.bound >= 0 && bxi.bound < bound)
        throw InsufficientPrecision("theta_lift: Siegel table shallower than requested bound");

    QuatCoeffTable out;
    out.weight = bxi.weight;
    out.provenance = QuatProvenance::THETA_LIFT;
    out.cuspidal = true;
    out.bound = bound;

    const Mat2 g1(1, 1, 0, 1), g2(1, 0, -1, 1);
    for (long a = 1; 3 * a * a <= bound; ++a)
        for (long b = 0; b <= a; ++b)
            for (long c = a; 4 * a * c - b * b <= bound; ++c) {
                long det4 = 4 * a * c - b * b;
                if (det4 <= 0) continue;
                PairB base = slice_rep({a, b, c});
                std::vector<PairB> reps;
                reps.push_back(base);
                reps.push_back(pair_act_sim(g1, g2, base));
                if (4 * det4 <= bound) reps.push_back(pair_act_right(base, Mat2(1, 0, 0, 2)));
                if (16 * det4 <= bound) reps.push_back(PairB{2 * base.t1, 2 * base.t2});
                for (const PairB& rep : reps) out.entries[pair_key(rep)] = lift_value(bxi, rep);
            }
    return out;
}

Rat quat_value(const QuatCoeffTable& table, const PairB& b) {
    if (b.is_zero()) throw std::domain_error("quat_value: zero pair");
    auto it = table.entries.find(pair_key(canonical_pair(b)));
    if (it != table.entries.end()) return it->second;

    SiegelKey g = gram_of(b);
    bool positive = g.a > 0 && g.det4() > 0;
    if (table.cuspidal && !positive) return 0;
    if (table.bound >= 0 && g.det4() > table.bound)
        throw std::out_of_range("quat_value: Q(B) beyond table bound");

    if (table.provenance == QuatProvenance::THETA_LIFT) {
        Rat total = 0;
        for (long n : divisors_of(minor_gcd2(b), "quat_value"))
            for (const RightDivisor& rd : right_divisors(b, n))
                total += Rat(pow_l(n, table.weight - 1)) * prim_lookup(table, rd.bprime);
        return total;
    }
    return 0;
}

Rat lambda_prim(const QuatCoeffTable& table, const PairB& b) {
    if (b.is_zero()) throw std::domain_error("lambda_prim: zero pair");
    if (!pair_positive(b)) throw std::domain_error("lambda_prim: pair is not positive");
    SpezialscharReport rep = spezialschar_test(table, table.bound);
    if (!rep.pass)
        throw MaassViolation("lambda_prim: table fails the slice-primitive grouping test");
    return prim_lookup(table, b);
}

// --- structure checks ------------------------------------------------------------

SpezialscharReport spezialschar_test(const QuatCoeffTable& table, long bound) {
    SpezialscharReport out;
    std::map<SiegelKey, std::vector<std::pair<PairB, Rat>>> groups;
    for (const auto& [key, value] : table.entries) {
        PairB b = pair_from_key(key);
        SiegelKey g = gram_of(b);
        if (bound >= 0 && g.det4() > bound) continue;
        if (!is_slice_primitive(b)) continue;
        groups[g].push_back({b, value});
        ++out.compared;
    }
    out.groups = (long)groups.size();
    for (const auto& [t, members] : groups)
        for (std::size_t i = 1; i < members.size(); ++i)
            if (members[i].second != members[0].second) {
                out.pass = false;
                out.witnesses.push_back({members[0].first, members[i].first});
            }
    return out;
}

MaassReport maass_relation_check(const QuatCoeffTable& table, long bound) {
    MaassReport out;
    std::vector<SiegelKey> missing;
    for (const auto& [key, stored] : table.entries) {
        PairB b = pair_from_key(key);
        SiegelKey g = gram_of(b);
        if (!(g.a > 0 && g.det4() > 0)) continue;
        if (bound >= 0 && g.det4() > bound) continue;
        Rat total = 0;
        bool gap = false;
        for (long n : divisors_of(minor_gcd2(b), "maass_relation_check"))
            for (const RightDivisor& rd : right_divisors(b, n)) {
                try {
                    total += Rat(pow_l(n, table.weight - 1)) * prim_lookup(table, rd.bprime);
                } catch (const SearchExhausted&) {
                    missing.push_back(reduce_key(gram_of(rd.bprime)));
                    gap = true;
                }
            }
        if (gap) continue;
        ++out.checked;
        if (total != stored) {
            out.pass = false;
            out.violations.push_back(b);
        }
    }
    if (!missing.empty()) {
        std::sort(missing.begin(), missing.end());
        missing.erase(std::unique(missing.begin(), missing.end()), missing.end());
        std::string msg = "maass_relation_check: missing slice-primitive data for";
        for (std::size_t i = 0; i < missing.size() && i < 8; ++i)
            msg += " " + triple_str(missing[i]);
        if (missing.size() > 8) msg += " ...";
        throw InsufficientData(msg);
    }
    return out;
}

// --- Fourier-Jacobi reassembly ----------------------------------------------------

Rat fj_assemble(const QuatCoeffTable& table, long n, const MPrimeIndex& s) {
    if (n < 1) throw std::domain_error("fj_assemble: n must be positive");
    long alpha = s.alpha;
    if (alpha <= 0 || alpha % 2 != 0)
        throw std::domain_error("fj_assemble: alpha must be even and positive");

    Mat2 t1(n, 0, 0, n * alpha / 2);
    Rat total = 0;
    for (long ss = 0; ss < n * alpha; ++ss) {
        if ((ss - s.r) % alpha != 0 || (ss + s.r) % 2 != 0) continue;
        Mat2 t2((ss - s.r) / alpha, -s.m, s.n, (ss + s.r) / 2);
        try {
            total += quat_value(table, PairB{t1, t2});
        } catch (const std::out_of_range&) {
            throw InsufficientData("fj_assemble: table bound too small for the summand at s=" +
                                   std::to_string(ss));
        } catch (const SearchExhausted&) {
            throw InsufficientData("fj_assemble: missing representative for the summand at s=" +
                                   std::to_string(ss));
        }
    }
    return total;
}

MPrimeCoeffTable fj_assemble_table(const QuatCoeffTable& table, long n, long alpha, long bound) {
    if (bound < 0) throw std::domain_error("fj_assemble_table: bound must be nonnegative");
    MPrimeCoeffTable out;
    out.weight = table.weight;
    out.alpha = alpha;
    out.bound = bound;
    for (long nn = 0; nn <= bound; ++nn)
        for (long mm = 0; mm <= bound; ++mm) {
            if (nn == 0 || mm == 0) {
                Rat v = fj_assemble(table, n, MPrimeIndex{nn, mm, 0, alpha});
                if (v != 0) out.entries[{nn, mm, 0}] = v;
                continue;
            }
            long rhi = isqrt_ll(2 * alpha * nn * mm);
            long rlo = 2 * alpha * nn * mm > bound
                           ? isqrt_ll(2 * alpha * nn * mm - bound - 1) + 1
                           : 0;
            for (long rabs = rlo; rabs <= rhi; ++rabs)
                for (long r : {rabs, -rabs}) {
                    Rat v = fj_assemble(table, n, MPrimeIndex{nn, mm, r, alpha});
                    if (v != 0) out.entries[{nn, mm, r}] = v;
                    if (rabs == 0) break;
                }
        }
    return out;
}

// --- degenerate coefficients ------------------------------------------------------

Rat constant_term_coeff(const QuatCoeffTable& table, std::array<long, 3> c,
                        std::array<long, 3> x) {
    if (c[0] == 0 && c[1] == 0 && c[2] == 0)
        throw std::domain_error("constant_term_coeff: zero index");
    long d = c[0] * x[0] + c[1] * x[1] + c[2] * x[2];
    long count = d == 0 ? 1 : std::labs(d);
    long step = d >= 0 ? 1 : -1;
    Rat total = 0;
    for (long j = 0; j < count; ++j) {
        long k = d == 0 ? 0 : j * step;
        PairB p{Mat2(c[0], k, 0, c[2]), Mat2(0, -c[1], 0, 0)};
        try {
            total += quat_value(table, p);
        } catch (const std::out_of_range&) {
            throw InsufficientData("constant_term_coeff: table bound too small at k=" +
                                   std::to_string(k));
        } catch (const SearchExhausted&) {
            throw InsufficientData("constant_term_coeff: missing representative at k=" +
                                   std::to_string(k));
        }
    }
    return total;
}

ConstantTermTable constant_term_scan(const QuatCoeffTable& table, std::array<long, 3> x,
                                     long bound) {
    if (bound < 0) throw std::domain_error("constant_term_scan: bound must be nonnegative");
    ConstantTermTable out;
    for (long a = 0; a <= bound; ++a)
        for (long b = 0; b <= bound; ++b)
            for (long c = 0; c <= bound; ++c) {
                if (a == 0 && b == 0 && c == 0) continue;
                Rat v = constant_term_coeff(table, {a, b, c}, x);
                if (v != 0) out.entries[{a, b, c}] = v;
            }
    return out;
}

// --- reports ---------------------------------------------------------------------

QuatVanishingReport quat_primitive_vanishing(const QuatCoeffTable& table, long bound) {
    if (bound < 50) throw std::domain_error("quat_primitive_vanishing: bound below 50");
    if (table.bound >= 0 && bound > table.bound)
        throw InsufficientData("quat_primitive_vanishing: window beyond table bound");
    QuatVanishingReport out;
    out.slice_mode = table.cuspidal;
    bool any_nonzero = false;
    for (const auto& [key, value] : table.entries) {
        if (value == 0) continue;
        PairB b = pair_from_key(key);
        if (gram_of(b).det4() > bound) continue;
        any_nonzero = true;
        bool prim = out.slice_mode ? is_slice_primitive(b) : is_primitive(b);
        if (prim) out.witnesses.push_back(b);
    }
    out.consistent_with_zero = out.witnesses.empty();
    out.imprimitive_support = out.consistent_with_zero && any_nonzero;
    return out;
}

GrowthReport quat_cuspidality_classifier(const QuatCoeffTable& table, long weight) {
    if (weight < 5) throw std::domain_error("quat_cuspidality_classifier: weight below 5");
    long positive = 0;
    std::map<long, double> per_q;
    for (const auto& [key, value] : table.entries) {
        PairB b = pair_from_key(key);
        SiegelKey g = gram_of(b);
        if (!(g.a > 0 && g.det4() > 0)) continue;
        if (!is_primitive(b)) continue;
        ++positive;
        double mag = std::abs(value.get_d());
        auto [it, fresh] = per_q.emplace(g.det4(), mag);
        if (!fresh && mag > it->second) it->second = mag;
    }
    if (positive == 0) {
        GrowthReport r;
        r.is_cusp_consistent = true;
        return r;
    }
    if (positive < 100)
        throw InsufficientData("quat_cuspidality_classifier: fewer than 100 primitive entries");
    std::vector<std::pair<double, double>> samples;
    samples.reserve(per_q.size());
    for (const auto& [q, mag] : per_q) samples.emplace_back(double(q), mag);
    return growth_scan(std::move(samples), (double(weight) + 1.0) / 2.0);
}

// --- json ------------------------------------------------------------------------

namespace {

nlohmann::json mat_json(const Mat2& m) {
    return nlohmann::json::array(
        {nlohmann::json::array({m(0, 0).get_str(), m(0, 1).get_str()}),
         nlohmann::json::array({m(1, 0).get_str(), m(1, 1).get_str()})});
}

Int int_from_str(const std::string& s) {
    Int z;
    if (z.set_str(s, 10) != 0) throw std::invalid_argument("bad integer '" + s + "'");
    return z;
}

Mat2 mat_from_json(const nlohmann::json& j) {
    return Mat2(int_from_str(j.at(0).at(0).get<std::string>()),
                int_from_str(j.at(0).at(1).get<std::string>()),
                int_from_str(j.at(1).at(0).get<std::string>()),
                int_from_str(j.at(1).at(1).get<std::string>()));
}

nlohmann::json pair_json_obj(const PairB& b) {
    return nlohmann::json{{"t1", mat_json(b.t1)}, {"t2", mat_json(b.t2)}};
}

PairB pair_from_json_obj(const nlohmann::json& j) {
    return PairB{mat_from_json(j.at("t1")), mat_from_json(j.at("t2"))};
}

}  // namespace

std::string pair_to_json(const PairB& b) { return pair_json_obj(b).dump(); }

PairB pair_from_json(const std::string& text) {
    return pair_from_json_obj(nlohmann::json::parse(text));
}

std::string quat_to_json(const QuatCoeffTable& table) {
    nlohmann::json j;
    j["weight"] = table.weight;
    j["provenance"] = quat_provenance_name(table.provenance);
    j["cuspidal"] = table.cuspidal;
    j["bound"] = table.bound;
    nlohmann::json entries = nlohmann::json::array();
    for (const auto& [key, value] : table.entries)
        entries.push_back(
            {{"B", pair_json_obj(pair_from_key(key))}, {"value", rat_str(value)}});
    j["entries"] = std::move(entries);
    return j.dump();
}

QuatCoeffTable quat_from_json(const std::string& text) {
    nlohmann::json j = nlohmann::json::parse(text);
    QuatCoeffTable out;
    out.weight = j.at("weight").get<long>();
    out.provenance = quat_provenance_parse(j.at("provenance").get<std::string>());
    out.cuspidal = j.value("cuspidal", false);
    out.bound = j.at("bound").get<long>();
    for (const auto& entry : j.at("entries")) {
        PairB b = pair_from_json_obj(entry.at("B"));
        out.entries[pair_key(canonical_pair(b))] =
            parse_rat(entry.at("value").get<std::string>());
    }
    return out;
}

}  // namespace d4l
