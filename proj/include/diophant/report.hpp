#pragma once

#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>

#include <json.hpp>

#include "diophant/gutkin.hpp"

namespace diophant {

inline constexpr const char* kVersion = "0.1.0";

using json = nlohmann::ordered_json;

inline std::string to_string(const mpz_class& z) { return z.get_str(); }

inline json to_json(const RealBall& b) {
    return json{{"mid", b.mid().to_decimal()}, {"rad", b.rad().to_decimal()}};
}

inline RealBall real_ball_from_json(const json& j, long prec = 0) {
    return RealBall(Dyadic::from_decimal(j.at("mid").get<std::string>()),
                    Dyadic::from_decimal(j.at("rad").get<std::string>()), prec);
}

inline json to_json(const ComplexBall& z) { return json{{"re", to_json(z.re)}, {"im", to_json(z.im)}}; }

inline ComplexBall complex_ball_from_json(const json& j) {
    return ComplexBall{real_ball_from_json(j.at("re")), real_ball_from_json(j.at("im"))};
}

inline json to_json(const AlgebraicNumber& z) {
    return json{{"minpoly", z.minpoly().to_text()}, {"degree", z.degree()}, {"region", to_json(z.region())}};
}

inline AlgebraicNumber algebraic_from_json(const json& j) {
    return AlgebraicNumber::from_parts(IntPolynomial::parse(j.at("minpoly").get<std::string>()),
                                       complex_ball_from_json(j.at("region")));
}

inline const char* convention_name(HPrimeConvention c) {
    return c == HPrimeConvention::minus_one_is_one ? "hprime(-1)=1" : "hprime(-1)=pi";
}

inline json to_json(const HeightReport& h) {
    json moduli = json::array();
    for (const auto& m : h.conjugate_moduli) moduli.push_back(to_json(m));
    return json{{"h", to_json(h.h)},
                {"h_mod", to_json(h.h_mod)},
                {"degree", h.degree},
                {"leading", to_string(h.leading)},
                {"conjugate_moduli", moduli}};
}

inline json to_json(const BoundCertificate& c) {
    json hp = json::array();
    for (const auto& h : c.hprimes) hp.push_back(to_json(h));
    return json{{"m", c.m},
                {"d", c.d},
                {"hprimes", hp},
                {"C_md", to_json(c.C_md)},
                {"C0", to_json(c.C0)},
                {"ln_c", to_json(c.log_c)},
                {"tau", to_json(c.tau)},
                {"ln_c_certified", c.log_c_lower().to_decimal()},
                {"tau_certified", c.tau_upper().to_decimal()},
                {"hprime_convention", convention_name(c.convention)}};
}

inline json to_json(const ContinuedFractionExpansion& cf) {
    json q = json::array(), conv = json::array();
    for (const auto& a : cf.quotients) q.push_back(to_string(a));
    for (const auto& c : cf.convergents) conv.push_back(json::array({to_string(c.p), to_string(c.q)}));
    return json{{"quotients", q},
                {"convergents", conv},
                {"certified_terms", cf.certified_terms},
                {"complete", cf.complete},
                {"precision_bits", cf.precision}};
}

inline json to_json(const std::vector<MuEstimate>& mus) {
    json out = json::array();
    for (const auto& m : mus) out.push_back(json{{"k", m.k}, {"q", to_string(m.q)}, {"mu", to_json(m.mu)}});
    return out;
}

inline json to_json(const VerificationReport& v) {
    json out{{"theta", to_json(v.theta)},
             {"qmax", v.qmax},
             {"passed", v.passed},
             {"worst_ratio_log", to_json(v.worst_ratio)},
             {"worst_q", to_string(v.worst_q)},
             {"side_conditions", v.side_conditions},
             {"convergents_checked", v.convergents_checked},
             {"precision_bits", v.precision},
             {"mu_estimates", to_json(v.mu_estimates)}};
    if (v.side_violation_q) out["side_violation_q"] = to_string(*v.side_violation_q);
    if (v.failure_q) out["failure_q"] = to_string(*v.failure_q);
    return out;
}

inline json to_json(const GutkinSolution& s) {
    return json{{"n", s.n},
                {"t", to_json(s.t)},
                {"multiplicity", s.multiplicity},
                {"alpha", to_json(s.alpha)},
                {"beta", to_json(s.beta)},
                {"theta", to_json(s.theta)}};
}

inline json to_json(const ClassificationReport& r) {
    json ded = json::array();
    for (const auto& d : r.deductions)
        ded.push_back(json{{"claim", d.claim}, {"citation", d.citation}, {"status", d.status}});
    return json{{"solution", to_json(r.solution)},
                {"beta_height", to_json(r.beta_height)},
                {"premises",
                 json{{"beta_algebraic", "by construction"},
                      {"unit_modulus", r.unit_modulus},
                      {"root_of_unity", r.root_of_unity}}},
                {"certificate", to_json(r.cert)},
                {"continued_fraction", to_json(r.cf)},
                {"verification", to_json(r.verification)},
                {"deductions", ded}};
}

struct Envelope {
    std::string command;
    json inputs;
    long precision_bits = kDefaultPrecision;
    HPrimeConvention convention = HPrimeConvention::definition;
    json payload;

    json to_json() const {
        return json{{"command", command},
                    {"inputs", inputs},
                    {"precision_bits", precision_bits},
                    {"hprime_convention", convention_name(convention)},
                    {"payload", payload},
                    {"version", kVersion}};
    }
};

// File cache keyed by command, canonical inputs, precision, convention and version.
class ReportCache {
public:
    explicit ReportCache(std::filesystem::path dir) : dir_(std::move(dir)) {}

    static uint64_t fnv1a(const std::string& s) {
        uint64_t h = 14695981039346656037ULL;
        for (unsigned char c : s) {
            h ^= c;
            h *= 1099511628211ULL;
        }
        return h;
    }

    static std::string key(const Envelope& e) {
        json k{{"command", e.command},
               {"inputs", e.inputs},
               {"precision_bits", e.precision_bits},
               {"hprime_convention", convention_name(e.convention)},
               {"version", kVersion}};
        return k.dump();
    }

    std::filesystem::path path_for(const Envelope& e) const {
        char buf[17];
        std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(fnv1a(key(e))));
        return dir_ / (std::string(buf) + ".json");
    }

    std::optional<json> load(const Envelope& e) const {
        std::ifstream in(path_for(e));
        if (!in) return std::nullopt;
        try {
            json stored = json::parse(in);
            if (stored.at("key").get<std::string>() != key(e)) return std::nullopt;
            return stored.at("envelope");
        } catch (const std::exception&) {
            return std::nullopt;
        }
    }

    void store(const Envelope& e, const json& envelope) const {
        std::filesystem::create_directories(dir_);
        auto target = path_for(e);
        auto tmp = target;
        tmp += ".tmp" + std::to_string(static_cast<unsigned long long>(fnv1a(envelope.dump())));
        {
            std::ofstream out(tmp);
            out << json{{"key", key(e)}, {"envelope", envelope}}.dump() << '\n';
            if (!out) throw std::runtime_error("cannot write cache file " + tmp.string());
        }
        std::filesystem::rename(tmp, target);
    }

private:
    std::filesystem::path dir_;
};

} // namespace diophant
