#include "heightcensus/serialize.hpp"

#include <openssl/evp.h>

#include <array>
#include <cstdio>

namespace hc {

namespace {

std::string text_of(const Json& j) {
    if (j.is_string()) return j.get<std::string>();
    if (j.is_number_integer()) return std::to_string(j.get<long long>());
    throw DomainError("expected a decimal string, got " + j.dump());
}

Json dyadic_pair(const Dyadic& lo, const Dyadic& hi) { return Json::array({lo.str(), hi.str()}); }

Json string_list(const std::vector<std::string>& v) {
    Json a = Json::array();
    for (const auto& s : v) a.push_back(s);
    return a;
}

}  // namespace

Json to_json(const Integer& v) { return v.get_str(); }
Json to_json(const Rational& v) { return v.get_str(); }
Json to_json(const Dyadic& v) { return v.str(); }

Json to_json(const IntPoly& p) {
    Json a = Json::array();
    for (const auto& c : p.coeffs()) a.push_back(c.get_str());
    return a;
}

Json to_json(const RatPoly& p) {
    Json a = Json::array();
    for (const auto& c : p.coeffs()) a.push_back(c.get_str());
    return a;
}

Json to_json(const RealEnclosure& e) { return Json{{"lo", e.lo.str()}, {"hi", e.hi.str()}}; }
Json to_json(const Interval& v) { return to_json(RealEnclosure::from(v)); }

Json to_json(const ComplexBox& b) { return Json{{"re", dyadic_pair(b.re_lo, b.re_hi)}, {"im", dyadic_pair(b.im_lo, b.im_hi)}}; }

Json to_json(const AlgebraicNumber& a) {
    return Json{{"minpoly", to_json(a.minpoly())}, {"index", a.index()}, {"root", to_json(a.root_box())}};
}

Json to_json(const NumberFieldElement& e) {
    Json j{{"field", to_json(e.base)}, {"repr", to_json(e.repr)}};
    if (e.is_rational()) j["rational"] = e.rational_value().get_str();
    return j;
}

Json to_json(const BivarIntPoly& p) {
    Json rows = Json::array();
    for (const auto& row : p.coeff) {
        Json r = Json::array();
        for (const auto& c : row) r.push_back(c.get_str());
        rows.push_back(std::move(r));
    }
    return rows;
}

Json to_json(const PointPair& pt) { return Json{{"alpha", to_json(pt.first)}, {"beta", to_json(pt.second)}}; }

Integer integer_from_json(const Json& j) {
    Integer v;
    if (v.set_str(text_of(j), 10) != 0) throw DomainError("malformed integer: " + j.dump());
    return v;
}

Rational rational_from_json(const Json& j) { return parse_rational(text_of(j)); }

IntPoly int_poly_from_json(const Json& j) {
    if (j.is_string()) return parse_int_poly(j.get<std::string>());
    if (!j.is_array()) throw DomainError("polynomial must be a list of decimal strings");
    std::vector<Integer> c;
    for (const auto& v : j) c.push_back(integer_from_json(v));
    return IntPoly(std::move(c));
}

RatPoly rat_poly_from_json(const Json& j) {
    if (!j.is_array()) throw DomainError("polynomial must be a list of rational strings");
    std::vector<Rational> c;
    for (const auto& v : j) c.push_back(rational_from_json(v));
    return RatPoly(std::move(c));
}

AlgebraicNumber algebraic_from_json(const Json& j) {
    if (j.is_string() || j.is_number_integer()) return AlgebraicNumber::rational(rational_from_json(j));
    if (!j.is_object() || !j.contains("minpoly")) throw DomainError("algebraic number needs a minpoly");
    const IntPoly p = int_poly_from_json(j.at("minpoly"));
    if (!is_canonical(p)) throw DomainError("minpoly is not canonical: " + p.str());
    if (j.contains("root")) {
        const Json& r = j.at("root");
        const ComplexBox box{Dyadic::parse(text_of(r.at("re").at(0))), Dyadic::parse(text_of(r.at("re").at(1))),
                             Dyadic::parse(text_of(r.at("im").at(0))), Dyadic::parse(text_of(r.at("im").at(1)))};
        if (p.degree() == 1) {
            const auto a = AlgebraicNumber::root_of(p, 0);
            if (!a.root_box().intersects(box)) throw DomainError("root box does not contain the rational root");
            return a;
        }
        // Validates irreducibility once, then locates the root by its box.
        AlgebraicNumber::root_of(p, 0);
        return AlgebraicNumber::matching(p, [&](const Dyadic&) { return box; });
    }
    const long idx = j.contains("index") ? j.at("index").get<long>() : 0;
    if (idx < 0 || idx >= p.degree()) throw DomainError("root index out of range");
    return AlgebraicNumber::root_of(p, static_cast<std::size_t>(idx));
}

BivarIntPoly bivar_from_json(const Json& j) {
    if (!j.is_array() || j.empty()) throw DomainError("bivariate polynomial must be a square grid");
    BivarIntPoly p = BivarIntPoly::zero(static_cast<int>(j.size()) - 1);
    for (std::size_t i = 0; i < j.size(); ++i) {
        if (!j[i].is_array() || j[i].size() != j.size()) throw DomainError("bivariate polynomial must be a square grid");
        for (std::size_t k = 0; k < j.size(); ++k) p.coeff[i][k] = integer_from_json(j[i][k]);
    }
    return p;
}

std::vector<PointPair> points_from_json(const Json& j) {
    const Json& list = j.is_object() && j.contains("points") ? j.at("points") : j;
    if (!list.is_array()) throw DomainError("point set must be a list");
    std::vector<PointPair> pts;
    for (const auto& e : list) pts.emplace_back(algebraic_from_json(e.at("alpha")), algebraic_from_json(e.at("beta")));
    return pts;
}

Json to_json(const CensusResult& r, bool with_listing) {
    Json by = Json::object();
    for (const auto& [d, n] : r.by_degree) by[std::to_string(d)] = n.get_str();
    Json j{{"epsilon", r.epsilon.get_str()},
           {"by_degree", by},
           {"stats",
            {{"candidates", r.stats.candidates.get_str()},
             {"passed_filters", r.stats.passed_filters.get_str()},
             {"irreducible", r.stats.irreducible.get_str()},
             {"accepted_polys", r.stats.accepted_polys.get_str()}}}};
    if (with_listing && r.has_listing) {
        Json l = Json::array();
        for (const auto& a : r.listing) l.push_back(to_json(a));
        j["listing"] = std::move(l);
    }
    return j;
}

Json to_json(const Lemma1Report& r) {
    return Json{{"D", r.D},
                {"N", r.N.str()},
                {"epsilon", r.epsilon.get_str()},
                {"lower", to_json(r.lower)},
                {"lower_exact", r.lower_exact},
                {"upper", to_json(r.upper)},
                {"lower_strict", r.lower_ok},
                {"upper_holds", r.upper_ok},
                {"pass", r.pass()}};
}

Json to_json(const Theorem1Report& r) {
    Json pts = Json::array();
    for (const auto& p : r.points) {
        pts.push_back(Json{{"alpha", to_json(p.alpha)},
                           {"f_alpha", to_json(p.value)},
                           {"f_alpha_minpoly", to_json(p.value_minpoly)},
                           {"h_f_alpha", to_json(p.value_height)},
                           {"degree_ok", p.degree_ok},
                           {"height_ok", p.height_ok},
                           {"value_height_ok", p.value_height_ok},
                           {"chain_ok", p.chain_ok}});
    }
    Json j{{"D", r.D},
           {"d", r.d},
           {"N_d", r.Nd.get_str()},
           {"threshold", to_json(r.threshold)},
           {"card_E", r.card_E.get_str()},
           {"card_disc", r.card_disc.get_str()},
           {"sigma_lower", r.sigma_lower.get_str()},
           {"half_exp", to_json(r.half_exp)},
           {"card_ok", r.card_ok}};
    if (r.chain_applicable) {
        j["chain_bound"] = to_json(r.chain_bound);
        j["chain_below_N_d"] = r.chain_below_nd;
    }
    j["counterexamples"] = string_list(r.counterexamples);
    j["points"] = std::move(pts);
    j["pass"] = r.pass();
    return j;
}

Json to_json(const PrefixCheck& r) {
    return Json{{"N_increasing", r.n_increasing},
                {"eps_match", r.eps_match},
                {"coefficient_bounds", r.condition_i},
                {"growth_floor", r.eq2},
                {"phi_ratio", r.eq3},
                {"P_rational_monic", r.p_rational_monic},
                {"P_vanishing", r.p_vanishing},
                {"failures", string_list(r.failures)},
                {"pass", r.pass()}};
}

Json to_json(const AuxParams& p) {
    Json j{{"R", p.R.get_str()},
           {"r", p.r.get_str()},
           {"fR", p.fR.get_str()},
           {"D", p.D},
           {"N0", p.N0},
           {"c0", to_json(p.c0)},
           {"gamma", p.gamma.get_str()},
           {"gamma_c0_sq_gt_72", p.gamma_ok},
           {"T", std::to_string(p.T)},
           {"u1", to_json(p.u1)}};
    if (p.s_prev) {
        j["s_prev"] = p.s_prev->get_str();
        j["zero_count_ok"] = *p.zero_count_ok;
    }
    return j;
}

Json to_json(const SiegelResult& r) {
    return Json{{"P", to_json(r.P)},
                {"P_text", r.P.str()},
                {"max_coeff", r.max_coeff.get_str()},
                {"bound", to_json(r.bound)},
                {"meets_bound", r.meets_bound},
                {"equations", r.equations},
                {"kernel_rank", r.kernel_rank}};
}

Json to_json(const LiouvilleResult& r) {
    if (r.zero) return Json{{"kind", "Zero"}};
    return Json{{"kind", "AboveBound"},
                {"value", to_json(r.value)},
                {"bound", to_json(r.bound)},
                {"exact", r.exact},
                {"equality", r.equality}};
}

Json to_json(const PropagationReport& r) {
    Json steps = Json::array();
    for (const auto& st : r.steps) {
        Json pts = Json::array();
        for (const auto& p : st.points) {
            pts.push_back(Json{{"alpha", to_json(p.point.first)},
                               {"beta", to_json(p.point.second)},
                               {"liouville_threshold", to_json(p.threshold)},
                               {"forced", p.forced},
                               {"vanishes", p.vanishes}});
        }
        steps.push_back(Json{{"N", st.N},
                             {"zeros_known", st.zeros_known.get_str()},
                             {"schwarz_bound", to_json(st.schwarz)},
                             {"all_forced", st.all_forced},
                             {"points", std::move(pts)}});
    }
    return Json{{"siegel", to_json(r.siegel)},
                {"N_start", r.N_start},
                {"steps", std::move(steps)},
                {"notes", string_list(r.notes)},
                {"pass", r.pass()}};
}

std::string sha256_hex(const std::string& data) {
    std::array<unsigned char, EVP_MAX_MD_SIZE> md{};
    unsigned int len = 0;
    if (EVP_Digest(data.data(), data.size(), md.data(), &len, EVP_sha256(), nullptr) != 1)
        throw Error("SHA-256 failed");
    std::string hex;
    char buf[3];
    for (unsigned int i = 0; i < len; ++i) {
        std::snprintf(buf, sizeof buf, "%02x", md[i]);
        hex += buf;
    }
    return hex;
}

namespace {

Json prefix_body(const StackelPrefix& s) {
    Json n = Json::array(), a = Json::array(), p = Json::array(), e = Json::array();
    for (const auto& v : s.N) n.push_back(v.get_str());
    for (const auto& v : s.a) a.push_back(v.get_str());
    for (const auto& v : s.P) p.push_back(to_json(v));
    for (const auto& v : s.eps) e.push_back(v.get_str());
    return Json{{"phi", s.phi.id()}, {"x0", s.phi.x0.get_str()}, {"b", "2^-k"}, {"depth", s.depth},
                {"N", n},           {"a", a},                    {"eps", e},    {"P", p}};
}

}  // namespace

Json prefix_to_json(const StackelPrefix& s) {
    Json j = prefix_body(s);
    j["digest"] = sha256_hex(j.dump());
    return j;
}

StackelPrefix prefix_from_json(const Json& j) {
    StackelPrefix s;
    s.phi = PhiSpec::parse(j.at("phi").get<std::string>(), rational_from_json(j.at("x0")));
    if (j.value("b", std::string("2^-k")) != "2^-k") throw DomainError("only b_k = 2^-k is supported");
    s.depth = j.at("depth").get<int>();
    for (const auto& v : j.at("N")) s.N.push_back(rational_from_json(v));
    for (const auto& v : j.at("a")) s.a.push_back(rational_from_json(v));
    for (const auto& v : j.at("eps")) s.eps.push_back(integer_from_json(v));
    for (const auto& v : j.at("P")) s.P.push_back(rat_poly_from_json(v));
    if (j.contains("digest")) {
        const std::string want = j.at("digest").get<std::string>();
        if (sha256_hex(prefix_body(s).dump()) != want) throw VerificationFailure("prefix digest mismatch: content was altered");
    }
    return s;
}

}  // namespace hc
