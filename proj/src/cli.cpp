#include "heightcensus/cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <fstream>
#include <functional>
#include <optional>
#include <ostream>
#include <sstream>

#include "heightcensus/acceptance.hpp"
#include "heightcensus/serialize.hpp"
#include "heightcensus/stackel.hpp"

namespace hc {

namespace {

struct Global {
    std::string budget;
    long precision_bits = 0;
    unsigned workers = 1;
    std::string out;
    std::string format = "json";
    unsigned long seed = AcceptanceOptions{}.seed;

    Integer budget_value() const {
        if (budget.empty()) return default_budget();
        const Integer b(budget);
        if (b < 1) throw DomainError("budget must be at least 1");
        return b;
    }
};

// A finished command: the report plus, for census listings, an optional CSV body.
struct Outcome {
    Json report;
    std::string csv;
};

Json read_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw DomainError("cannot read " + path);
    return Json::parse(in);
}

// Inline JSON, a path to a JSON file, or a bare rational.
Json json_arg(const std::string& text) {
    if (text.empty()) throw DomainError("empty argument");
    if (std::ifstream probe(text); probe) return Json::parse(probe);
    try {
        return Json::parse(text);
    } catch (const Json::parse_error&) {
        return Json(text);
    }
}

AlgebraicNumber algebraic_arg(const std::string& text, long index) {
    const Json j = json_arg(text);
    if (j.is_array()) return algebraic_from_json(Json{{"minpoly", j}, {"index", index}});
    return algebraic_from_json(j);
}

// Largest power of two not above w.
Dyadic width_arg(const std::string& text) {
    const Rational w = parse_rational(text);
    if (w <= 0) throw DomainError("width must be positive");
    long e = 0;
    while (compare(Dyadic::pow2(e), w) > 0) --e;
    while (compare(Dyadic::pow2(e + 1), w) <= 0) ++e;
    return Dyadic::pow2(e);
}

Json report(const std::string& command, Json args, Json result, bool pass, Json assumptions = Json::array()) {
    return Json{{"command", command},
                {"args", std::move(args)},
                {"assumptions", std::move(assumptions)},
                {"result", std::move(result)},
                {"verdict", pass ? "pass" : "fail"}};
}

void render_text(const Json& j, const std::string& prefix, std::ostream& out) {
    if (j.is_object()) {
        for (const auto& [k, v] : j.items()) render_text(v, prefix.empty() ? k : prefix + "." + k, out);
    } else if (j.is_array() && !j.empty() && (j.front().is_object() || j.front().is_array())) {
        for (std::size_t i = 0; i < j.size(); ++i) render_text(j[i], prefix + "[" + std::to_string(i) + "]", out);
    } else {
        out << prefix << ": " << (j.is_string() ? j.get<std::string>() : j.dump()) << "\n";
    }
}

std::string listing_csv(const CensusResult& r) {
    std::ostringstream s;
    s << "degree,minpoly_ascending,re_lo,re_hi,im_lo,im_hi\n";
    for (const auto& a : r.listing) {
        const ComplexBox& b = a.root_box();
        std::string coeffs;
        for (const auto& c : a.minpoly().coeffs()) coeffs += (coeffs.empty() ? "" : " ") + c.get_str();
        s << a.degree() << "," << coeffs << "," << b.re_lo.str() << "," << b.re_hi.str()
          << "," << b.im_lo.str() << "," << b.im_hi.str() << "\n";
    }
    return s.str();
}

StackelPrefix load_or_build_prefix(const std::string& path, int depth, const StackelOptions& so) {
    if (!path.empty()) {
        const Json j = read_json_file(path);
        // Accepts a bare prefix or the report written by "stackel build --out".
        return prefix_from_json(j.contains("result") && j.contains("command") ? j.at("result") : j);
    }
    return choose_sequences(PhiSpec{}, depth, so);
}

Json propagate_builtin_config() {
    Json levels = Json::object();
    for (long N = 3; N <= 6; ++N) {
        Json pts = Json::array();
        for (const auto& p : parabola_points(static_cast<long>(std::floor(std::exp(N / 2.0))), 4))
            pts.push_back(to_json(p));
        levels[std::to_string(N)] = pts;
    }
    return Json{{"R", "65536"}, {"r", "4"}, {"f", Json::array({"0", "0", "1"})}, {"D", 1}, {"N0", 3},
                {"N_start", 3},  {"steps", 3},  {"levels", levels}};
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Exact census of algebraic numbers of bounded height, with certified verification reports."};
    app.name("heightcensus");
    app.require_subcommand(1);
    app.fallthrough();

    Global g;
    app.add_option("--budget", g.budget, "census candidate budget (default 10^9 or HEIGHTCENSUS_BUDGET)");
    app.add_option("--precision-bits", g.precision_bits, "precision cap in bits (>= 64)");
    app.add_option("--workers", g.workers, "worker threads")->check(CLI::Range(1u, 256u));
    app.add_option("--out", g.out, "write the report to this file");
    app.add_option("--format", g.format, "json, text, or csv (census list only)")
        ->check(CLI::IsMember({"json", "text", "csv"}));
    app.add_option("--seed", g.seed, "seed for sampled checks");

    std::function<Outcome()> action;

    // census
    auto* census = app.add_subcommand("census", "enumerate E_{D,N} and its counting bounds");
    census->require_subcommand(1);
    int D = 1;
    std::string N = "0", H;
    auto census_args = [&] { return Json{{"D", D}, {"N", ThresholdSpec::parse(N).str()}, {"budget", g.budget_value().get_str()}}; };
    auto census_spec = [&](bool listing) {
        CensusSpec s;
        s.D = D;
        s.N = ThresholdSpec::parse(N);
        s.budget = g.budget_value();
        s.workers = g.workers;
        s.listing = listing;
        return s;
    };
    for (const char* name : {"count", "list", "lemma1"}) {
        auto* c = census->add_subcommand(name);
        c->add_option("--D", D, "maximal degree")->check(CLI::PositiveNumber);
        c->add_option("--N", N, "height bound: 3/2 or log(5/2)");
        const std::string cmd = name;
        c->callback([&, cmd] {
            action = [&, cmd]() -> Outcome {
                if (cmd == "lemma1") {
                    const Lemma1Report r = verify_lemma1(D, ThresholdSpec::parse(N), g.budget_value(), g.workers);
                    return {report("census lemma1", census_args(), to_json(r), r.pass())};
                }
                const CensusResult r = enumerate_E(census_spec(cmd == "list"));
                Outcome o{report("census " + cmd, census_args(), to_json(r, cmd == "list"), true)};
                if (cmd == "list") o.csv = listing_csv(r);
                return o;
            };
        });
    }
    {
        auto* c = census->add_subcommand("eisenstein", "count 2-Eisenstein polynomials");
        c->add_option("--D", D, "exact degree")->check(CLI::PositiveNumber);
        c->add_option("--H", H, "coefficient bound")->required();
        c->callback([&] {
            action = [&]() -> Outcome {
                const Integer h(H);
                if (h < 0) throw DomainError("H must be nonnegative");
                return {report("census eisenstein", Json{{"D", D}, {"H", h.get_str()}},
                               Json{{"count", count_eisenstein(D, h).get_str()}}, true)};
            };
        });
    }

    // stackel
    auto* stackel = app.add_subcommand("stackel", "build and verify a prefix of the entire function f");
    stackel->require_subcommand(1);
    std::string phi = "log1p/4", x0 = "6/5", prefix_path, alpha_text;
    int depth = 2, d = 2;
    long index = 0;
    auto stackel_opts = [&] {
        StackelOptions so;
        so.budget = g.budget_value();
        so.workers = g.workers;
        return so;
    };
    {
        auto* c = stackel->add_subcommand("build");
        c->add_option("--phi", phi, "phi as log1p/c");
        c->add_option("--x0", x0, "x0 with phi(x) <= x - 1 for x >= x0");
        c->add_option("--depth", depth, "number of levels N_1 .. N_depth")->check(CLI::Range(1, 8));
        c->callback([&] {
            action = [&]() -> Outcome {
                const StackelPrefix s = choose_sequences(PhiSpec::parse(phi, parse_rational(x0)), depth, stackel_opts());
                return {report("stackel build", Json{{"phi", phi}, {"x0", parse_rational(x0).get_str()}, {"depth", depth}},
                               prefix_to_json(s), true)};
            };
        });
    }
    {
        auto* c = stackel->add_subcommand("eval");
        c->add_option("--prefix", prefix_path, "prefix file (default: build depth 2)");
        c->add_option("--alpha", alpha_text, "rational, minpoly list, or algebraic-number JSON")->required();
        c->add_option("--index", index, "root index when --alpha is a minpoly list");
        c->callback([&] {
            action = [&]() -> Outcome {
                const StackelPrefix s = load_or_build_prefix(prefix_path, 2, stackel_opts());
                const AlgebraicNumber a = algebraic_arg(alpha_text, index);
                const int k0 = first_level(s, a);
                const NumberFieldElement v = eval_f(s, a);
                const bool member = verify_membership(s, a);
                Json result{{"alpha", to_json(a)},
                            {"first_level", k0},
                            {"value", to_json(v)},
                            {"value_minpoly", to_json(minpoly_of_element(v))},
                            {"cuts_agree", member}};
                return {report("stackel eval", Json{{"prefix", prefix_path}, {"alpha", alpha_text}}, result, member)};
            };
        });
    }
    int vD = 1;
    {
        auto* c = stackel->add_subcommand("verify");
        c->add_option("--prefix", prefix_path, "prefix file (default: build depth d)");
        c->add_option("--D", vD, "degree of the filtration")->check(CLI::PositiveNumber);
        c->add_option("--d", d, "level index")->check(CLI::PositiveNumber);
        c->callback([&] {
            action = [&]() -> Outcome {
                // Rejected before any prefix work; verify_theorem1 enforces the same rule.
                if (!(vD < d || (vD == 1 && d == 1)))
                    throw DomainError("verification needs D < d (or D = d = 1), got D = " + std::to_string(vD) +
                                      ", d = " + std::to_string(d));
                const StackelOptions so = stackel_opts();
                const StackelPrefix s = load_or_build_prefix(prefix_path, std::max(d, 2), so);
                const PrefixCheck chk = check_prefix(s, so);
                const Theorem1Report t = verify_theorem1(s, vD, d, so);
                return {report("stackel verify", Json{{"prefix", prefix_path}, {"D", vD}, {"d", d}},
                               Json{{"prefix_check", to_json(chk)}, {"theorem", to_json(t)}}, chk.pass() && t.pass())};
            };
        });
    }

    // auxfn
    auto* auxfn = app.add_subcommand("auxfn", "auxiliary-function machinery at desk scale");
    auxfn->require_subcommand(1);
    std::string R = "2", r = "1", fR = "1", s_text, points_path, P_path, beta_text, config_path;
    long N0 = 1;
    int T = 3;
    const Json fR_caveat = Json::array({"fR bounds the supremum of |f| on |z| <= R; it is supplied by the caller and not checked"});
    {
        auto* c = auxfn->add_subcommand("params");
        c->add_option("--R", R, "outer radius");
        c->add_option("--r", r, "inner radius");
        c->add_option("--fR", fR, "upper bound for |f| on |z| <= R");
        c->add_option("--D", D, "degree bound")->check(CLI::PositiveNumber);
        c->add_option("--N0", N0, "starting level")->check(CLI::PositiveNumber);
        c->add_option("--s", s_text, "zero count s, checked against c0 s > u1 + 2 T N0 D + ...");
        c->callback([&] {
            action = [&]() -> Outcome {
                std::optional<Integer> s;
                if (!s_text.empty()) s = Integer(s_text);
                const AuxParams p = compute_params(parse_rational(R), parse_rational(r), parse_rational(fR), D, N0, s);
                Json a{{"R", parse_rational(R).get_str()}, {"r", parse_rational(r).get_str()},
                       {"fR", parse_rational(fR).get_str()}, {"D", D}, {"N0", N0}};
                if (s) a["s"] = s->get_str();
                return {report("auxfn params", a, to_json(p), p.gamma_ok, fR_caveat)};
            };
        });
    }
    {
        auto* c = auxfn->add_subcommand("siegel");
        c->add_option("--points", points_path, "point file")->required();
        c->add_option("--T", T, "degree bound in X and Y")->check(CLI::Range(0, 64));
        c->add_option("--D", D, "degree bound of Q(alpha, beta)")->check(CLI::PositiveNumber);
        c->add_option("--N0", N0, "height level")->check(CLI::PositiveNumber);
        c->callback([&] {
            action = [&]() -> Outcome {
                const auto pts = points_from_json(read_json_file(points_path));
                const SiegelResult res = siegel_solve(pts, T, D, N0);
                bool vanish = !res.P.is_zero();
                for (const auto& p : pts) vanish = vanish && evaluate(res.P, p.first, p.second).is_zero();
                Json result = to_json(res);
                result["vanishes_on_points"] = vanish;
                return {report("auxfn siegel", Json{{"points", points_path}, {"T", T}, {"D", D}, {"N0", N0}}, result,
                               vanish && res.meets_bound)};
            };
        });
    }
    std::string alpha2;
    {
        auto* c = auxfn->add_subcommand("liouville");
        c->add_option("--P", P_path, "bivariate polynomial file or inline grid")->required();
        c->add_option("--alpha", alpha2, "algebraic number")->required();
        c->add_option("--beta", beta_text, "algebraic number")->required();
        c->add_option("--D", D, "degree bound of Q(alpha, beta)")->check(CLI::PositiveNumber);
        c->add_option("--T", T, "degree bound of P")->check(CLI::Range(0, 64));
        c->callback([&] {
            action = [&]() -> Outcome {
                const BivarIntPoly P = bivar_from_json(json_arg(P_path));
                const LiouvilleResult res =
                    liouville_check(P, algebraic_from_json(json_arg(alpha2)), algebraic_from_json(json_arg(beta_text)), D, T);
                return {report("auxfn liouville",
                               Json{{"P", P_path}, {"alpha", alpha2}, {"beta", beta_text}, {"D", D}, {"T", T}},
                               to_json(res), true)};
            };
        });
    }
    {
        auto* c = auxfn->add_subcommand("propagate");
        c->add_option("--config", config_path, "propagation config (default: builtin parabola demo)");
        c->callback([&] {
            action = [&]() -> Outcome {
                const Json cfg = config_path.empty() ? propagate_builtin_config() : read_json_file(config_path);
                const Rational Rv = rational_from_json(cfg.at("R")), rv = rational_from_json(cfg.at("r"));
                Json assumptions = Json::array();
                Rational fRv;
                if (cfg.contains("f")) {
                    fRv = poly_sup_bound(rat_poly_from_json(cfg.at("f")), Rv);
                    assumptions.push_back("fR is derived from the polynomial f by the triangle inequality");
                } else {
                    fRv = rational_from_json(cfg.at("fR"));
                    assumptions = fR_caveat;
                }
                const int Dv = cfg.at("D").get<int>();
                const long N0v = cfg.at("N0").get<long>();
                const AuxParams p = compute_params(Rv, rv, fRv, Dv, N0v);
                std::map<long, std::vector<PointPair>> levels;
                for (const auto& [k, v] : cfg.at("levels").items()) levels[std::stol(k)] = points_from_json(v);
                const PropagationReport rep =
                    propagate_demo(p, levels, cfg.value("N_start", N0v), cfg.value("steps", 3));
                Json a{{"config", config_path.empty() ? "builtin parabola" : config_path}};
                return {report("auxfn propagate", a, Json{{"params", to_json(p)}, {"propagation", to_json(rep)}},
                               rep.pass(), assumptions)};
            };
        });
    }

    // mahler, height
    std::string poly_text, width_text = "2^-53";
    auto width_of = [&] {
        if (width_text.find('^') != std::string::npos) return Dyadic::parse(width_text.find('*') == std::string::npos
                                                                                ? "1*" + width_text
                                                                                : width_text);
        return width_arg(width_text);
    };
    {
        auto* c = app.add_subcommand("mahler", "certified Mahler measure of an integer polynomial");
        c->add_option("--poly", poly_text, "ascending coefficient list, e.g. \"[-2, 0, 1]\"")->required();
        c->add_option("--width", width_text, "target enclosure width (2^-53, 1e-9, ...)");
        c->callback([&] {
            action = [&]() -> Outcome {
                const IntPoly p = parse_int_poly(poly_text);
                const Dyadic w = width_of();
                const RealEnclosure m = mahler_measure(p, w);
                return {report("mahler", Json{{"poly", to_json(p)}, {"width", w.str()}},
                               Json{{"measure", to_json(m)}, {"exact", m.exact()}}, true)};
            };
        });
    }
    {
        auto* c = app.add_subcommand("height", "absolute logarithmic height of an algebraic number");
        c->add_option("--alpha", alpha_text, "rational, minpoly list, or algebraic-number JSON")->required();
        c->add_option("--index", index, "root index when --alpha is a minpoly list");
        c->add_option("--width", width_text, "target enclosure width");
        c->callback([&] {
            action = [&]() -> Outcome {
                const AlgebraicNumber a = algebraic_arg(alpha_text, index);
                const Dyadic w = width_of();
                return {report("height", Json{{"alpha", alpha_text}, {"width", w.str()}},
                               Json{{"alpha", to_json(a)}, {"degree", a.degree()}, {"height", to_json(height(a, w))}},
                               true)};
            };
        });
    }

    // selftest
    std::string criteria_text, fault, lehmer_width = "1e-9";
    {
        auto* c = app.add_subcommand("selftest", "run the acceptance suite");
        c->add_option("--criteria", criteria_text, "comma-separated subset, e.g. 1,4");
        c->add_option("--inject-fault", fault, "corrupt-pk: alter a coefficient of P_1 and re-check the prefix")
            ->check(CLI::IsMember({"corrupt-pk"}));
        c->add_option("--lehmer-width", lehmer_width, "preflight Lehmer enclosure width");
        c->callback([&] {
            action = [&]() -> Outcome {
                Json args_echo{{"criteria", criteria_text}, {"inject_fault", fault}, {"lehmer_width", lehmer_width}};
                // Preflight: the Lehmer target must be reachable under the current precision cap.
                const RealEnclosure leh = mahler_measure(IntPoly{1, 1, 0, -1, -1, -1, -1, -1, 0, 1, 1}, width_arg(lehmer_width));
                Json result{{"lehmer", to_json(leh)}};
                if (!fault.empty()) {
                    StackelOptions so = stackel_opts();
                    StackelPrefix s = choose_sequences(PhiSpec{}, 2, so);
                    std::vector<Rational> c0 = s.P[0].coeffs();
                    c0[0] += Rational(1, 3);
                    s.P[0] = RatPoly(c0);
                    const PrefixCheck chk = check_prefix(s, so);
                    result["fault_injection"] = Json{{"fault", fault}, {"prefix_check", to_json(chk)}};
                    return {report("selftest", args_echo, result, chk.pass())};
                }
                std::vector<int> ids;
                if (criteria_text.empty()) {
                    for (int i = 1; i <= 8; ++i) ids.push_back(i);
                } else {
                    std::stringstream ss(criteria_text);
                    for (std::string t; std::getline(ss, t, ',');) ids.push_back(std::stoi(t));
                }
                AcceptanceOptions opt;
                opt.workers = g.workers;
                opt.seed = g.seed;
                bool all = true;
                Json list = Json::array();
                for (int id : ids) {
                    const CriterionResult cr = run_criterion(id, opt);
                    all = all && cr.pass;
                    list.push_back(Json{{"id", cr.id}, {"title", cr.title}, {"pass", cr.pass}, {"details", cr.details}});
                }
                result["criteria"] = list;
                result["limitations"] = limitations();
                return {report("selftest", args_echo, result, all)};
            };
        });
    }

    try {
        std::vector<std::string> rev(args.rbegin(), args.rend());
        app.parse(rev);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return 0;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return 0;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << "\n\n" << app.help();
        return 2;
    }

    // The cap is process-wide; restore it so one invocation never leaks into the next.
    struct CapGuard {
        long saved = precision_cap_bits();
        ~CapGuard() { set_precision_cap_bits(saved); }
    } cap_guard;
    try {
        if (g.precision_bits != 0) {
            if (g.precision_bits < 64) throw DomainError("precision cap must be at least 64 bits");
            set_precision_cap_bits(g.precision_bits);
        }
        if (!action) throw DomainError("no command given");
        const Outcome o = action();
        std::string body;
        if (g.format == "csv") {
            if (o.csv.empty() && o.report.at("command") != "census list")
                throw DomainError("csv output is only available for census list");
            body = o.csv;
        } else if (g.format == "text") {
            std::ostringstream s;
            render_text(o.report, "", s);
            body = s.str();
        } else {
            body = o.report.dump(2) + "\n";
        }
        if (g.out.empty()) {
            out << body;
        } else {
            std::ofstream f(g.out, std::ios::binary);
            if (!f) throw DomainError("cannot write " + g.out);
            f << body;
            out << "wrote " << g.out << "\n";
        }
        return o.report.at("verdict") == "pass" ? 0 : 1;
    } catch (const BudgetExceeded& e) {
        err << "budget exceeded: " << e.what() << "\n";
        return 3;
    } catch (const PrecisionExhausted& e) {
        err << "precision exhausted: " << e.what() << "\n";
        return 3;
    } catch (const VerificationFailure& e) {
        err << "verification failed: " << e.what() << "\n";
        return 1;
    } catch (const DomainError& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    } catch (const Json::exception& e) {
        err << "error: malformed JSON input: " << e.what() << "\n";
        return 2;
    } catch (const std::invalid_argument& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::out_of_range& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    }
}

}  // namespace hc
