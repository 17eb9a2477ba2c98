#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "heightcensus/cli.hpp"
#include "heightcensus/serialize.hpp"
#include "heightcensus/stackel.hpp"

using namespace hc;

namespace {

struct CliRun {
    int code;
    std::string out, err;
};

CliRun cli(const std::vector<std::string>& args) {
    std::ostringstream o, e;
    const int code = run_cli(args, o, e);
    return {code, o.str(), e.str()};
}

std::string temp_file(const std::string& name, const std::string& body) {
    const auto path = std::filesystem::temp_directory_path() / name;
    std::ofstream(path) << body;
    return path.string();
}

}  // namespace

TEST(Cli, ExitCodes) {
    const CliRun lemma = cli({"census", "lemma1", "--D", "1", "--N", "0"});
    EXPECT_EQ(lemma.code, 0);
    const Json j = Json::parse(lemma.out);
    EXPECT_EQ(j["result"]["epsilon"], "3");
    EXPECT_EQ(j["verdict"], "pass");

    EXPECT_EQ(cli({"stackel", "verify", "--D", "2", "--d", "2"}).code, 2);
    const CliRun budget = cli({"census", "count", "--D", "4", "--N", "3"});
    EXPECT_EQ(budget.code, 3);
    EXPECT_NE(budget.err.find("budget"), std::string::npos);
    EXPECT_EQ(cli({"census", "count", "--bogus", "1"}).code, 2);
    EXPECT_EQ(cli({"frobnicate"}).code, 2);
    EXPECT_EQ(cli({"census", "count", "--format", "csv"}).code, 2);
    EXPECT_EQ(cli({"census", "count", "--N", "log(1/2)"}).code, 2);
    EXPECT_EQ(cli({"--help"}).code, 0);
}

TEST(Cli, SelftestFaultsAndPrecision) {
    const CliRun fault = cli({"selftest", "--inject-fault", "corrupt-pk"});
    EXPECT_EQ(fault.code, 1);
    EXPECT_EQ(Json::parse(fault.out)["verdict"], "fail");

    const long cap = precision_cap_bits();
    EXPECT_EQ(cli({"selftest", "--precision-bits", "64", "--lehmer-width", "1e-9"}).code, 3);
    EXPECT_EQ(precision_cap_bits(), cap);
    EXPECT_EQ(cli({"selftest", "--precision-bits", "32"}).code, 2);
}

TEST(Cli, ReportsAreByteDeterministic) {
    const CliRun a = cli({"census", "list", "--D", "2", "--N", "log(2)", "--workers", "1"});
    const CliRun b = cli({"census", "list", "--D", "2", "--N", "log(2)", "--workers", "4"});
    ASSERT_EQ(a.code, 0);
    EXPECT_EQ(a.out, b.out);
    const CliRun c = cli({"census", "list", "--D", "2", "--N", "log(2)", "--format", "csv", "--workers", "3"});
    EXPECT_EQ(c.code, 0);
    // Header plus one row per element.
    EXPECT_EQ(std::count(c.out.begin(), c.out.end(), '\n'), 1 + 357);
    EXPECT_EQ(cli({"stackel", "build", "--depth", "2"}).out, cli({"stackel", "build", "--depth", "2"}).out);
}

TEST(Cli, FileRoundTrips) {
    const std::string prefix = std::filesystem::temp_directory_path() / "hc_prefix.json";
    ASSERT_EQ(cli({"stackel", "build", "--depth", "2", "--out", prefix}).code, 0);
    const CliRun eval = cli({"stackel", "eval", "--prefix", prefix, "--alpha", "[-1,5]"});
    EXPECT_EQ(eval.code, 0);
    EXPECT_EQ(Json::parse(eval.out)["result"]["first_level"], 2);
    EXPECT_EQ(cli({"stackel", "verify", "--prefix", prefix, "--D", "1", "--d", "2"}).code, 0);

    const std::string pts = temp_file("hc_pts.json", R"({"points": [{"alpha": "1", "beta": "1"}, {"alpha": "-1", "beta": "-1"}]})");
    const CliRun s = cli({"auxfn", "siegel", "--points", pts, "--T", "1"});
    EXPECT_EQ(s.code, 0);
    EXPECT_EQ(Json::parse(s.out)["result"]["P_text"], "X - Y");

    const std::string P = temp_file("hc_p.json", R"([["0", "-1"], ["1", "0"]])");
    const CliRun l = cli({"auxfn", "liouville", "--P", P, "--alpha", "1/6", "--beta", "1/6", "--D", "1", "--T", "1"});
    EXPECT_EQ(l.code, 0);
    EXPECT_EQ(Json::parse(l.out)["result"]["kind"], "Zero");

    const CliRun prop = cli({"auxfn", "propagate"});
    EXPECT_EQ(prop.code, 0);
    EXPECT_EQ(cli({"auxfn", "propagate", "--config", temp_file("hc_bad.json", "{")}).code, 2);
}

TEST(Serialize, PrefixDigestDetectsTampering) {
    const StackelPrefix s = choose_sequences(PhiSpec{}, 2);
    Json j = prefix_to_json(s);
    const StackelPrefix back = prefix_from_json(j);
    EXPECT_EQ(back.N, s.N);
    EXPECT_EQ(back.a, s.a);
    EXPECT_EQ(back.eps, s.eps);
    EXPECT_EQ(back.P, s.P);
    j["N"][1] = "133";
    EXPECT_THROW(prefix_from_json(j), VerificationFailure);
}

TEST(Serialize, AlgebraicNumbersRoundTrip) {
    CensusSpec spec;
    spec.D = 2;
    spec.N = ThresholdSpec::log_rational(2);
    for (const auto& a : enumerate_E(spec).listing) {
        const Json j = to_json(a);
        EXPECT_EQ(algebraic_from_json(j), a) << j.dump();
        EXPECT_EQ(algebraic_from_json(Json::parse(j.dump())), a);
    }
    EXPECT_EQ(int_poly_from_json(Json("[-2, 0, 1]")), (IntPoly{-2, 0, 1}));
    EXPECT_THROW(algebraic_from_json(Json{{"minpoly", {"-4", "0", "2"}}}), DomainError);
}
