#include "d4lift/siegel.hpp"

#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "d4lift/errors.hpp"

namespace d4l {

long SiegelKey::content() const {
    return std::gcd(std::gcd(std::labs(a), std::labs(b)), std::labs(c));
}

SiegelKey reduce_key(SiegelKey t) {
    if (t.det4() < 0 || t.a < 0 || t.c < 0)
        throw std::domain_error("reduce_key: form is not positive semi-definite");
    while (true) {
        if (t.a > t.c) {
            std::swap(t.a, t.c);
            t.b = -t.b;
        }
        if (t.a == 0) return {0, 0, t.c};  // 4ac >= b^2 forces b = 0
        long r = t.b % (2 * t.a);
        if (r > t.a) r -= 2 * t.a;
        if (r <= -t.a) r += 2 * t.a;
        if (r != t.b) {
            long step = (t.b - r) / (2 * t.a);
            t.c += t.a * step * step - t.b * step;
            t.b = r;
            continue;
        }
        if (t.a > t.c) continue;
        t.b = std::labs(t.b);
        return t;
    }
}

Rat siegel_value(const SiegelCoeffTable& table, SiegelKey t) {
    SiegelKey k = reduce_key(t);
    if (k.a == 0) {
        if (table.cuspidal) return 0;
        if (k.c > table.bound)
            throw InsufficientPrecision("siegel_value: degenerate class beyond the bound");
    } else if (k.det4() > table.bound) {
        throw InsufficientPrecision("siegel_value: determinant beyond the bound");
    }
    auto it = table.entries.find(k);
    return it == table.entries.end() ? Rat(0) : it->second;
}

namespace {

// reduced positive-definite triples 0 <= b <= a <= c with 4ac - b^2 <= bound
template <typename F>
void for_reduced_posdef(long bound, F&& f) {
    for (long a = 1; 3 * a * a <= bound; ++a)
        for (long b = 0; b <= a; ++b)
            for (long c = a; 4 * a * c - b * b <= bound; ++c) {
                if (4 * a * c - b * b <= 0) continue;
                f(SiegelKey{a, b, c});
            }
}

Int pow_int(long base, long exp) {
    Int out = 1;
    for (long i = 0; i < exp; ++i) out *= base;
    return out;
}

}  // namespace

SiegelCoeffTable maass_lift(const JacobiForm& phi, long bound) {
    if (!(phi.cuspidal && *phi.cuspidal) || phi.index != 1)
        throw std::domain_error("maass_lift: needs a cuspidal index-1 Jacobi form");
    if (bound < 3) throw std::domain_error("maass_lift: bound below the smallest class");
    if (phi.window() < (bound + 4) / 4)
        throw InsufficientPrecision("maass_lift: Jacobi truncation below the requested bound");

    SiegelCoeffTable out;
    out.weight = phi.weight;
    out.cuspidal = true;
    out.bound = bound;
    for_reduced_posdef(bound, [&](SiegelKey t) {
        long g = t.content();
        Rat total = 0;
        for (long d = 1; d <= g; ++d) {
            if (g % d != 0) continue;
            total += Rat(pow_int(d, phi.weight - 1)) * phi.coeff(t.a * t.c / (d * d), t.b / d);
        }
        out.entries[t] = total;
    });
    return out;
}

SiegelCoeffTable synthetic_siegel(const std::function<Rat(long, long)>& f, long bound) {
    if (bound < 0) throw std::domain_error("synthetic_siegel: negative bound");
    SiegelCoeffTable out;
    out.bound = bound;
    for (long g = 0; g <= bound; ++g) out.entries[{0, 0, g}] = f(0, g);
    for_reduced_posdef(bound, [&](SiegelKey t) { out.entries[t] = f(t.det4(), t.content()); });
    std::erase_if(out.entries, [](const auto& kv) { return kv.second == 0; });
    return out;
}

RatMat2 siegel_to_mprime(SiegelKey t) {
    Rat half(1, 2);
    return {{-half * t.b, Rat(-t.a), Rat(t.c), half * t.b}};
}

RatMat2 MPrimeIndex::vector() const {
    return {{Rat(-r) / alpha, Rat(-m), Rat(n), Rat(r) / 2}};
}

long MPrimeIndex::content() const {
    return std::gcd(std::gcd(std::labs(n), std::labs(m)), std::labs(r));
}

MPrimeCoeffTable mprime_from_siegel(const SiegelCoeffTable& table) {
    MPrimeCoeffTable out;
    out.weight = table.weight;
    out.alpha = 2;
    out.bound = table.bound;
    long bound = table.bound;
    auto isqrt = [](long v) {
        long r = (long)std::sqrt((double)v);
        while (r * r > v) --r;
        while ((r + 1) * (r + 1) <= v) ++r;
        return r;
    };
    // cone keys with n, m <= bound and 4nm - r^2 <= bound; r runs over the
    // band sqrt(4nm - bound) <= |r| <= sqrt(4nm)
    for (long n = 0; n <= bound; ++n)
        for (long m = 0; m <= bound; ++m) {
            if (n == 0 || m == 0) {
                Rat v = siegel_value(table, {m, 0, n});
                if (v != 0) out.entries[{n, m, 0}] = v;
                continue;
            }
            long rhi = isqrt(4 * n * m);
            long rlo = 4 * n * m > bound ? isqrt(4 * n * m - bound - 1) + 1 : 0;
            for (long rabs = rlo; rabs <= rhi; ++rabs)
                for (long r : {rabs, -rabs}) {
                    Rat v = siegel_value(table, {m, r, n});
                    if (v != 0) out.entries[{n, m, r}] = v;
                    if (rabs == 0) break;
                }
        }
    return out;
}

JacobiTable fj_slice(const MPrimeCoeffTable& table, long m) {
    if (m < 0) throw std::out_of_range("fj_slice: negative slice index");
    if (m > table.bound) throw std::out_of_range("fj_slice: slice beyond the table bound");
    JacobiTable out;
    out.weight = table.weight;
    out.index = m * table.alpha / 2;
    for (const auto& [key, v] : table.entries) {
        if (key[1] != m) continue;
        out.coeffs[{key[0], key[2]}] = v;
    }
    return out;
}

GrowthReport mprime_hecke_classifier(const MPrimeCoeffTable& table, long weight) {
    if (weight < 5) throw std::domain_error("mprime_hecke_classifier: weight below 5");
    long positive = 0;
    std::map<long, double> per_norm;
    for (const auto& [key, v] : table.entries) {
        MPrimeIndex s{key[0], key[1], key[2], table.alpha};
        if (s.norm() <= 0) continue;
        ++positive;
        double mag = std::abs(v.get_d());
        auto [it, fresh] = per_norm.emplace(s.norm(), mag);
        if (!fresh && mag > it->second) it->second = mag;
    }
    if (positive == 0) {
        GrowthReport r;
        r.is_cusp_consistent = true;
        return r;
    }
    if (positive < 100)
        throw InsufficientData("mprime_hecke_classifier: fewer than 100 positive-norm indices");
    std::vector<std::pair<double, double>> samples;
    samples.reserve(per_norm.size());
    for (const auto& [nu, mag] : per_norm)
        samples.emplace_back(double(nu) / double(table.alpha), mag);
    return growth_scan(std::move(samples), (double(weight) + 1.0) / 2.0);
}

PrimitiveVanishingReport mprime_primitive_vanishing(const MPrimeCoeffTable& table) {
    if (table.bound < 50)
        throw std::domain_error("mprime_primitive_vanishing: bound below 50");
    PrimitiveVanishingReport out;
    bool any_nonzero = false;
    for (const auto& [key, v] : table.entries) {
        if (v == 0) continue;
        any_nonzero = true;
        MPrimeIndex s{key[0], key[1], key[2], table.alpha};
        if (s.content() == 1) out.witnesses.push_back(s);
    }
    out.consistent_with_zero = out.witnesses.empty();
    out.imprimitive_support = out.consistent_with_zero && any_nonzero;
    return out;
}

// --- json ----------------------------------------------------------------------

std::string siegel_to_json(const SiegelCoeffTable& table) {
    nlohmann::json j;
    j["weight"] = table.weight;
    j["cuspidal"] = table.cuspidal;
    j["bound"] = table.bound;
    nlohmann::json entries = nlohmann::json::object();
    for (const auto& [k, v] : table.entries)
        entries[std::to_string(k.a) + "," + std::to_string(k.b) + "," + std::to_string(k.c)] =
            rat_str(v);
    j["entries"] = std::move(entries);
    return j.dump();
}

namespace {

std::array<long, 3> parse_triple(const std::string& s) {
    std::array<long, 3> out{};
    size_t pos = 0;
    for (int i = 0; i < 3; ++i) {
        size_t next = i < 2 ? s.find(',', pos) : s.size();
        if (next == std::string::npos) throw std::invalid_argument("bad triple key '" + s + "'");
        out[i] = std::stol(s.substr(pos, next - pos));
        pos = next + 1;
    }
    return out;
}

}  // namespace

SiegelCoeffTable siegel_from_json(const std::string& text) {
    nlohmann::json j = nlohmann::json::parse(text);
    SiegelCoeffTable out;
    out.weight = j.at("weight").get<long>();
    out.cuspidal = j.value("cuspidal", false);
    out.bound = j.at("bound").get<long>();
    for (const auto& [key, val] : j.at("entries").items()) {
        auto [a, b, c] = parse_triple(key);
        out.entries[{a, b, c}] = parse_rat(val.get<std::string>());
    }
    return out;
}

std::string mprime_to_json(const MPrimeCoeffTable& table) {
    nlohmann::json j;
    j["weight"] = table.weight;
    j["alpha"] = table.alpha;
    j["bound"] = table.bound;
    nlohmann::json entries = nlohmann::json::object();
    for (const auto& [k, v] : table.entries)
        entries[std::to_string(k[0]) + "," + std::to_string(k[1]) + "," + std::to_string(k[2])] =
            rat_str(v);
    j["entries"] = std::move(entries);
    return j.dump();
}

MPrimeCoeffTable mprime_from_json(const std::string& text) {
    nlohmann::json j = nlohmann::json::parse(text);
    MPrimeCoeffTable out;
    out.weight = j.at("weight").get<long>();
    out.alpha = j.at("alpha").get<long>();
    out.bound = j.at("bound").get<long>();
    for (const auto& [key, val] : j.at("entries").items())
        out.entries[parse_triple(key)] = parse_rat(val.get<std::string>());
    return out;
}

}  // namespace d4l
