#include <cstdlib>
#include <fstream>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "diophant/report.hpp"

namespace {

using namespace diophant;

enum Exit : int {
    kOk = 0,
    kNoSolutions = 1,
    kPrecisionExhausted = 2,
    kInvalidInput = 3,
    kNoSuchSolution = 4,
    kVerificationFailed = 5,
};

struct Options {
    int n = 0;
    long index = 0;
    long qmax = 100000;
    long prec = kDefaultPrecision;
    size_t terms = 60;
    int hprime_minus_one = -1; // -1: command default
    std::string poly;
    std::string hint;
    std::string hint_radius = "0.01";
    std::string gutkin;
    bool json_out = false;
    std::string out;
    std::string cache_dir;
};

struct InvalidInput : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// "a", "a+bi", "a-bi", "bi", "i"
ComplexBall parse_hint(std::string text, const std::string& radius_text) {
    std::string s;
    for (char c : text)
        if (c != ' ') s += c;
    if (s.empty()) throw InvalidInput("empty hint");
    mpq_class re = 0, im = 0;
    if (s.back() == 'i') {
        s.pop_back();
        size_t split = std::string::npos;
        for (size_t k = s.size(); k-- > 1;) {
            if ((s[k] == '+' || s[k] == '-') && s[k - 1] != 'e' && s[k - 1] != 'E') {
                split = k;
                break;
            }
        }
        std::string im_text = split == std::string::npos ? s : s.substr(split);
        if (split != std::string::npos) re = parse_decimal(s.substr(0, split));
        if (im_text.empty() || im_text == "+")
            im = 1;
        else if (im_text == "-")
            im = -1;
        else
            im = parse_decimal(im_text);
    } else {
        re = parse_decimal(s);
    }
    mpq_class r = parse_decimal(radius_text);
    if (r <= 0) throw InvalidInput("hint radius must be positive");
    Dyadic rad = Dyadic::from_mpq(r, 64, Round::up);
    auto ball = [&](const mpq_class& c) { return RealBall::from_mpq(c, 128).add_error(rad); };
    return ComplexBall{ball(re), ball(im)};
}

HPrimeConvention convention(const Options& o, bool pipeline_default) {
    bool on = o.hprime_minus_one < 0 ? pipeline_default : o.hprime_minus_one != 0;
    return on ? HPrimeConvention::minus_one_is_one : HPrimeConvention::definition;
}

std::string fmt(const RealBall& b, int digits = 20) { return b.to_string(digits); }

void check_precision(long prec) {
    if (prec < 2 || prec > max_precision())
        throw InvalidInput("--prec-bits must lie in [2, " + std::to_string(max_precision()) + "]");
}

// Theta = Arg(z) / 2 pi; exact for roots of unity and real z.
struct ThetaSource {
    std::optional<mpq_class> exact;
    ThetaProvider provider;
    json description;
};

ThetaSource theta_from_number(const AlgebraicNumber& z) {
    ThetaSource src;
    if (z.is_zero()) throw InvalidInput("Arg(0) is undefined");
    if (z.is_real()) {
        src.exact = z.enclosure(64).re.is_negative() ? mpq_class(1, 2) : mpq_class(0);
    } else if (auto order = is_root_of_unity(z)) {
        // z = exp(2 pi i j / k) with j fixed by the numeric argument
        for (long prec = 64;; prec *= 2) {
            RealBall a = arg(z.enclosure(prec).with_precision(prec));
            RealBall x = a * RealBall(*order) / const_pi(prec).mul_2exp(1);
            RealBall shifted = x + RealBall(Dyadic(mpz_class(1), -1), Dyadic(), prec);
            if (auto f = shifted.certain_floor()) {
                src.exact = mpq_class(*f, *order);
                src.exact->canonicalize();
                break;
            }
            if (prec > max_precision()) throw PrecisionExhausted("cannot pin the root of unity");
        }
    }
    if (src.exact) {
        mpq_class q = *src.exact;
        src.provider = [q](long prec) { return RealBall::from_mpq(q, prec); };
    } else {
        src.provider = [z](long prec) {
            const long wp = prec + 16;
            RealBall a = arg(z.enclosure(wp).with_precision(wp));
            return a / const_pi(wp).mul_2exp(1);
        };
    }
    return src;
}

void emit(const Options& o, const json& envelope, const std::string& summary) {
    std::string text = envelope.dump(2);
    if (!o.out.empty()) {
        std::ofstream f(o.out);
        f << text << '\n';
        if (!f) throw std::runtime_error("cannot write " + o.out);
    }
    if (o.json_out)
        std::cout << text << '\n';
    else
        std::cout << summary;
}

std::optional<ReportCache> cache_for(const Options& o) {
    std::string dir = o.cache_dir;
    if (dir.empty())
        if (const char* env = std::getenv("DIOPHANT_CACHE_DIR")) dir = env;
    if (dir.empty()) return std::nullopt;
    return ReportCache(dir);
}

// Runs compute unless the cache already holds the envelope.
template <class Compute>
int run_cached(const Options& o, Envelope env, Compute compute) {
    auto cache = cache_for(o);
    json stored;
    int code = kOk;
    std::string summary;
    if (cache) {
        if (auto hit = cache->load(env)) {
            stored = *hit;
            code = stored.value("exit_code", 0);
            stored.erase("exit_code");
            summary = stored.value("summary", std::string());
            stored.erase("summary");
            emit(o, stored, summary);
            return code;
        }
    }
    code = compute(env, summary);
    json out = env.to_json();
    if (cache) {
        json with_meta = out;
        with_meta["exit_code"] = code;
        with_meta["summary"] = summary;
        cache->store(env, with_meta);
    }
    emit(o, out, summary);
    return code;
}

int cmd_solve(const Options& o) {
    if (o.n < 2) throw InvalidInput("--n must be at least 2");
    check_precision(o.prec);
    Envelope env{"solve", json{{"n", o.n}}, o.prec, convention(o, false), {}};
    return run_cached(o, env, [&](Envelope& e, std::string& summary) {
        auto res = solve_detailed(o.n, o.prec);
        json sols = json::array(), excluded = json::array();
        std::ostringstream s;
        s << "n = " << o.n << ": " << res.solutions.size() << " solution(s) with t > 0\n";
        for (size_t i = 0; i < res.solutions.size(); ++i) {
            const auto& sol = res.solutions[i];
            sols.push_back(to_json(sol));
            s << "  [" << i << "] t minpoly \"" << sol.t.minpoly().to_text() << "\"  t = " << fmt(sol.t.enclosure(64).re)
              << "\n      alpha = " << fmt(sol.alpha) << "\n      theta = " << fmt(sol.theta)
              << "\n      beta minpoly \"" << sol.beta.minpoly().to_text() << "\"\n";
        }
        for (const auto& x : res.excluded) excluded.push_back(to_json(x));
        if (!res.excluded.empty()) s << "  " << res.excluded.size() << " root(s) excluded: Q_n(t) = 0\n";
        e.payload = json{{"witness", witness(o.n).to_text()}, {"solutions", sols}, {"excluded", excluded}};
        summary = s.str();
        return res.solutions.empty() ? kNoSolutions : kOk;
    });
}

int cmd_analyze(const Options& o) {
    if (o.n < 2) throw InvalidInput("--n must be at least 2");
    if (o.index < 0) throw InvalidInput("--index must be non-negative");
    if (o.qmax < 1) throw InvalidInput("--qmax must be positive");
    if (o.terms < 1) throw InvalidInput("--terms must be positive");
    check_precision(o.prec);
    ClassifyConfig cfg{o.qmax, o.prec, o.terms, convention(o, true)};
    json inputs{{"n", o.n}, {"index", o.index}, {"qmax", o.qmax}, {"terms", o.terms}};
    Envelope env{"analyze", inputs, o.prec, cfg.convention, {}};
    return run_cached(o, env, [&](Envelope& e, std::string& summary) {
        auto rep = classify(o.n, static_cast<size_t>(o.index), cfg);
        e.payload = to_json(rep);
        std::ostringstream s;
        const auto& sol = rep.solution;
        s << "n = " << o.n << ", solution " << o.index << "\n"
          << "  t minpoly     \"" << sol.t.minpoly().to_text() << "\"\n"
          << "  alpha         " << fmt(sol.alpha) << "\n"
          << "  theta         " << fmt(sol.theta) << "\n"
          << "  beta minpoly  \"" << sol.beta.minpoly().to_text() << "\"  (d = " << sol.beta.degree() << ")\n"
          << "  h(beta)       " << fmt(rep.beta_height.h, 30) << "\n"
          << "  h'(beta)      " << fmt(rep.beta_height.h_mod) << "\n"
          << "  |beta| = 1    " << (rep.unit_modulus ? "certified" : "FAILED") << "\n"
          << "  root of unity " << (rep.root_of_unity ? "YES" : "no (certified)") << "\n"
          << "  C(2,d)        " << fmt(rep.cert.C_md, 12) << "\n"
          << "  C0            " << fmt(rep.cert.C0, 12) << "  [" << convention_name(rep.cert.convention) << "]\n"
          << "  tau           " << fmt(rep.cert.tau, 12) << "\n"
          << "  ln c          " << fmt(rep.cert.log_c, 12) << "\n"
          << "  CF            [";
        for (size_t i = 0; i < rep.cf.quotients.size() && i < 12; ++i)
            s << (i == 0 ? "" : i == 1 ? "; " : ", ") << rep.cf.quotients[i];
        s << (rep.cf.quotients.size() > 12 ? ", ...]" : "]") << "  (" << rep.cf.certified_terms << " certified)\n"
          << "  verification  q <= " << o.qmax << ": " << (rep.verification.passed ? "passed" : "FAILED")
          << ", min ln ratio " << fmt(rep.verification.worst_ratio, 12) << " at q = " << rep.verification.worst_q
          << ", side conditions " << (rep.verification.side_conditions ? "hold" : "violated") << "\n"
          << "  deductions (cited, not computed):\n";
        for (const auto& d : rep.deductions) s << "    - " << d.claim << "  <= " << d.citation << "\n";
        summary = s.str();
        return rep.verification.passed && rep.verification.side_conditions ? kOk : kVerificationFailed;
    });
}

int cmd_height(const Options& o) {
    if (o.poly.empty() || o.hint.empty()) throw InvalidInput("height needs --poly and --hint");
    check_precision(o.prec);
    IntPolynomial f = IntPolynomial::parse(o.poly);
    ComplexBall hint = parse_hint(o.hint, o.hint_radius);
    json inputs{{"poly", f.to_text()}, {"hint", o.hint}, {"hint_radius", o.hint_radius}};
    Envelope env{"height", inputs, o.prec, convention(o, false), {}};
    return run_cached(o, env, [&](Envelope& e, std::string& summary) {
        AlgebraicNumber z = AlgebraicNumber::make(f, hint);
        HeightReport h = weil_height(z, o.prec, env.convention);
        auto order = is_root_of_unity(z);
        json payload{{"number", to_json(z)}, {"height", to_json(h)}, {"unit_modulus", is_unit_modulus(z)}};
        payload["root_of_unity_order"] = order ? json(*order) : json(nullptr);
        e.payload = payload;
        std::ostringstream s;
        s << "minpoly \"" << z.minpoly().to_text() << "\"  (d = " << z.degree() << ", a0 = " << z.leading() << ")\n"
          << "  z      " << z.enclosure(64).to_string(20) << "\n"
          << "  h(z)   " << fmt(h.h, 30) << "\n"
          << "  h'(z)  " << fmt(h.h_mod) << "  [" << convention_name(env.convention) << "]\n";
        summary = s.str();
        return kOk;
    });
}

int cmd_cf(const Options& o) {
    if (o.terms < 1) throw InvalidInput("--terms must be positive");
    check_precision(o.prec);
    json inputs{{"terms", o.terms}};
    int gn = 0;
    long gi = 0;
    if (!o.gutkin.empty()) {
        auto comma = o.gutkin.find(',');
        try {
            gn = std::stoi(o.gutkin.substr(0, comma));
            gi = comma == std::string::npos ? 0 : std::stol(o.gutkin.substr(comma + 1));
        } catch (const std::exception&) {
            throw InvalidInput("--gutkin expects n,index");
        }
        if (gn < 2 || gi < 0) throw InvalidInput("--gutkin expects n >= 2 and index >= 0");
        inputs["gutkin"] = json{{"n", gn}, {"index", gi}};
    } else if (!o.poly.empty() && !o.hint.empty()) {
        inputs["poly"] = IntPolynomial::parse(o.poly).to_text();
        inputs["hint"] = o.hint;
        inputs["hint_radius"] = o.hint_radius;
    } else {
        throw InvalidInput("cf needs --gutkin n,index or --poly with --hint");
    }
    Envelope env{"cf", inputs, o.prec, convention(o, false), {}};
    return run_cached(o, env, [&](Envelope& e, std::string& summary) {
        ThetaSource src;
        if (gn) {
            auto sols = solve(gn, o.prec);
            if (static_cast<size_t>(gi) >= sols.size())
                throw NoSuchSolution("no solution " + std::to_string(gi) + " for n = " + std::to_string(gn));
            const auto sol = sols[static_cast<size_t>(gi)];
            src.provider = [sol](long prec) { return sol.theta_at(prec); };
        } else {
            AlgebraicNumber z = AlgebraicNumber::make(IntPolynomial::parse(o.poly), parse_hint(o.hint, o.hint_radius));
            src = theta_from_number(z);
        }
        ContinuedFractionExpansion cf = src.exact ? cf_expand(*src.exact, o.terms) : cf_expand(src.provider, o.terms, o.prec);
        auto mus = src.exact ? std::vector<MuEstimate>{} : empirical_mu(cf.theta, cf);
        json payload{{"theta", to_json(src.exact ? RealBall::from_mpq(*src.exact, o.prec) : cf.theta)}};
        if (src.exact) payload["theta_exact"] = src.exact->get_str();
        payload["continued_fraction"] = to_json(cf);
        payload["mu_estimates"] = to_json(mus);
        e.payload = payload;
        std::ostringstream s;
        s << "theta = " << (src.exact ? src.exact->get_str() + " (exact)" : fmt(cf.theta, 25)) << "\n  CF [";
        for (size_t i = 0; i < cf.quotients.size(); ++i) s << (i == 0 ? "" : i == 1 ? "; " : ", ") << cf.quotients[i];
        s << "]\n  " << cf.certified_terms << " certified term(s)" << (cf.complete ? ", expansion complete" : "") << "\n";
        if (!mus.empty()) s << "  last mu estimate " << fmt(mus.back().mu, 12) << " (q = " << mus.back().q << ")\n";
        summary = s.str();
        return kOk;
    });
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Diophantine constants for n tan(a) = tan(n a) with certified arithmetic"};
    app.require_subcommand(1);
    Options o;

    auto common = [&](CLI::App* sub) {
        sub->add_option("--prec-bits", o.prec, "working precision in bits")->capture_default_str();
        sub->add_option("--hprime-minus-one", o.hprime_minus_one, "1: use h'(-1) = 1, 0: use h'(-1) = pi");
        sub->add_flag("--json", o.json_out, "print the JSON report instead of the summary");
        sub->add_option("--out", o.out, "also write the JSON report to this file");
        sub->add_option("--cache-dir", o.cache_dir, "report cache directory (default: $DIOPHANT_CACHE_DIR)");
    };

    auto* solve_cmd = app.add_subcommand("solve", "positive solutions t = tan(a) for a given n");
    solve_cmd->add_option("--n", o.n, "n >= 2")->required();
    common(solve_cmd);

    auto* analyze = app.add_subcommand("analyze", "certificate, continued fraction and verification for one solution");
    analyze->add_option("--n", o.n, "n >= 2")->required();
    analyze->add_option("--index", o.index, "solution index (by increasing t)")->capture_default_str();
    analyze->add_option("--qmax", o.qmax, "largest denominator scanned")->capture_default_str();
    analyze->add_option("--terms", o.terms, "continued fraction terms")->capture_default_str();
    common(analyze);

    auto* height = app.add_subcommand("height", "Weil height of an algebraic number");
    height->add_option("--poly", o.poly, "ascending integer coefficients, e.g. \"3 0 4 0 3\"")->required();
    height->add_option("--hint", o.hint, "approximate root, e.g. \"0.408+0.912i\"")->required();
    height->add_option("--hint-radius", o.hint_radius, "half-width of the hint box")->capture_default_str();
    common(height);

    auto* cf = app.add_subcommand("cf", "continued fraction of theta = Arg(z) / 2 pi");
    cf->add_option("--gutkin", o.gutkin, "n,index of a solution");
    cf->add_option("--poly", o.poly, "minimal polynomial of z");
    cf->add_option("--hint", o.hint, "approximate z");
    cf->add_option("--hint-radius", o.hint_radius, "half-width of the hint box")->capture_default_str();
    cf->add_option("--terms", o.terms, "number of terms")->capture_default_str();
    common(cf);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kInvalidInput;
    }

    try {
        if (*solve_cmd) return cmd_solve(o);
        if (*analyze) return cmd_analyze(o);
        if (*height) return cmd_height(o);
        if (*cf) return cmd_cf(o);
    } catch (const InvalidInput& e) {
        std::cerr << "invalid input: " << e.what() << '\n';
        return kInvalidInput;
    } catch (const ParseError& e) {
        std::cerr << "invalid input: " << e.what() << '\n';
        return kInvalidInput;
    } catch (const NoRootInHint& e) {
        std::cerr << "invalid input: " << e.what() << '\n';
        return kInvalidInput;
    } catch (const AmbiguousHint& e) {
        std::cerr << "invalid input: " << e.what() << '\n';
        return kInvalidInput;
    } catch (const ZeroPolynomial& e) {
        std::cerr << "invalid input: " << e.what() << '\n';
        return kInvalidInput;
    } catch (const NoSuchSolution& e) {
        std::cerr << "no such solution: " << e.what() << '\n';
        return kNoSuchSolution;
    } catch (const PrecisionExhausted& e) {
        std::cerr << "precision exhausted: " << e.what() << '\n';
        return kPrecisionExhausted;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kInvalidInput;
    }
    return kInvalidInput;
}
