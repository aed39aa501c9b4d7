#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <sstream>

#include <gtest/gtest.h>
#include <json.hpp>

#include "commands.hpp"
#include "config.hpp"

using namespace gids;
using namespace gids::app;

namespace {

const char* kFreeD2 = R"({
  "operator": {"d": 2, "w": 1, "frequencies": [["0","0"],["1","0"],["-1","0"],["0","1"],["0","-1"]]},
  "scale": {"rho_n": 5, "k": 2, "k_tilde": 2},
  "ids": {"lambdas": [100], "engine": "both", "nodes": 64, "oracle_grid": 64}
})";

std::string with_scale(const std::string& scale) {
    return R"({"operator": {"d": 2, "w": 1, "frequencies": [["0","0"],["1","0"],["-1","0"],["0","1"],["0","-1"]],
      "terms": [{"iota": 0, "coeffs": [{"theta": [1, 0], "re": 1.0}, {"theta": [-1, 0], "re": 1.0}]}]},
      "scale": )" + scale + "}";
}

int error_code(const std::function<void()>& f) {
    try {
        f();
    } catch (const Error& e) {
        return e.exit_code();
    }
    return 0;
}

std::string error_text(const std::function<void()>& f) {
    try {
        f();
    } catch (const Error& e) {
        return e.what();
    }
    return {};
}

}  // namespace

TEST(ParseConfig, SyntaxErrorsCarryAPosition) {
    const std::string msg = error_text([] { parse_config("{\n  \"operator\": {\"d\": 2,,}\n}"); });
    EXPECT_NE(msg.find("line 2"), std::string::npos) << msg;
    EXPECT_NE(msg.find("column"), std::string::npos) << msg;
    EXPECT_EQ(error_code([] { parse_config("[1, 2"); }), 2);
}

TEST(ParseConfig, UnknownKeysAreNamed) {
    const std::string msg = error_text([] { parse_config(R"({"operator": {"d": 1}, "sclae": {}})"); });
    EXPECT_NE(msg.find("sclae"), std::string::npos) << msg;
    const std::string inner = error_text([] { parse_config(R"({"operator": {"d": 1, "omega": 2}})"); });
    EXPECT_NE(inner.find("omega"), std::string::npos) << inner;
}

TEST(ParseConfig, MissingOperatorAndBadEngine) {
    EXPECT_EQ(error_code([] { parse_config("{}"); }), 2);
    EXPECT_EQ(error_code([] { parse_config(R"({"operator": {"d": 1}, "ids": {"engine": "magic"}})"); }), 2);
}

TEST(ParseConfig, LambdaRangeExpands) {
    const RunConfig cfg = parse_config(R"({"operator": {"d": 1}, "ids": {"lambdas": {"from": 1, "to": 4, "count": 4}}})");
    ASSERT_EQ(cfg.ids.lambdas.size(), 4u);
    EXPECT_DOUBLE_EQ(cfg.ids.lambdas.front(), 1.0);
    EXPECT_DOUBLE_EQ(cfg.ids.lambdas.back(), 4.0);
}

TEST(Validate, ShippedToyConfigPasses) {
    const CommandOutput out = cmd_validate(load_config(std::string(GIDS_CONFIG_DIR) + "/toy_gauge_d2.json"));
    EXPECT_EQ(out.exit_code, 0) << out.text;
    EXPECT_EQ(out.text.find("FAIL"), std::string::npos);
}

TEST(Validate, SmallBetaIsNamed) {
    const CommandOutput out = cmd_validate(parse_config(with_scale(R"({"rho_n": 200, "k": 2, "beta": 0.4})")));
    EXPECT_EQ(out.exit_code, 2);
    EXPECT_NE(out.text.find("FAIL scale-chain"), std::string::npos) << out.text;
    EXPECT_NE(out.text.find("beta"), std::string::npos) << out.text;
}

TEST(Validate, FloatFrequenciesLackRationalCoordinates) {
    const CommandOutput out = cmd_validate(parse_config(R"({"operator": {"d": 1, "frequencies": [[0], [1.41421356], [-1.41421356]]},
        "scale": {"rho_n": 200, "k": 2}})"));
    EXPECT_EQ(out.exit_code, 2);
    EXPECT_NE(out.text.find("rational coords missing"), std::string::npos) << out.text;
}

TEST(Validate, AsymptoticConditionReportsTheThreshold) {
    const CommandOutput out = cmd_validate(load_config(std::string(GIDS_CONFIG_DIR) + "/cos_lift_d2.json"));
    EXPECT_EQ(out.exit_code, 2);
    EXPECT_NE(out.text.find("FAIL condition-C"), std::string::npos) << out.text;
    EXPECT_NE(out.text.find("needs rho_n >="), std::string::npos) << out.text;
}

TEST(Gauge, ZeroPotentialHasZeroResiduals) {
    RunConfig cfg = parse_config(R"({"operator": {"d": 2, "frequencies": [["0","0"],["1","0"],["-1","0"],["0","1"],["0","-1"]]},
        "scale": {"rho_n": 200, "k": 2, "k_tilde": 3}})");
    const CommandOutput out = cmd_gauge(cfg);
    EXPECT_EQ(out.exit_code, 0) << out.text;
    std::istringstream in(out.text);
    std::string line;
    std::getline(in, line);
    EXPECT_EQ(line, "level,psi_terms,b_terms,t_terms,residual,b_symmetry_defect");
    int rows = 0;
    while (std::getline(in, line)) {
        ++rows;
        EXPECT_NE(line.find(",0,0"), std::string::npos) << line;
    }
    EXPECT_EQ(rows, 3);
}

TEST(Gauge, ToyConfigResidualsBelowTolerance) {
    const CommandOutput out = cmd_gauge(load_config(std::string(GIDS_CONFIG_DIR) + "/toy_gauge_d2.json"));
    EXPECT_EQ(out.exit_code, 0) << out.text;
}

TEST(Gauge, ZeroStepsRejected) {
    const RunConfig cfg = parse_config(with_scale(R"({"rho_n": 200, "k": 2, "k_tilde": 0})"));
    EXPECT_NE(error_code([&] { cmd_gauge(cfg); }), 0);
}

TEST(Ids, DescendingGridRejected) {
    RunConfig cfg = parse_config(kFreeD2);
    cfg.ids.lambdas = {100.0, 90.0};
    EXPECT_EQ(error_code([&] { cmd_ids(cfg); }), 2);
    cfg.ids.lambdas = {100.0, 100.0};
    EXPECT_EQ(error_code([&] { cmd_ids(cfg); }), 2);
}

TEST(Ids, FreePlaneFromBothEngines) {
    const CommandOutput out = cmd_ids(parse_config(kFreeD2));
    ASSERT_EQ(out.exit_code, 0) << out.text;
    const double weyl = 25.0 / M_PI;
    const auto gauge = read_ids_csv(out.text, 1.0, IdsMethod::gauge_volume);
    const auto oracle = read_ids_csv(out.text, 1.0, IdsMethod::floquet_oracle);
    ASSERT_EQ(gauge.size(), 1u);
    ASSERT_EQ(oracle.size(), 1u);
    EXPECT_NEAR(gauge[0].first, 10.0, 1e-12);
    EXPECT_NEAR(gauge[0].second, weyl, 1e-8 * weyl);
    EXPECT_NEAR(oracle[0].second, weyl, 0.01 * weyl);
}

TEST(Ids, LambdaOutsideTheWindowIsAPreconditionError) {
    RunConfig cfg = parse_config(kFreeD2);
    cfg.ids.engine = Engine::gauge;
    cfg.ids.lambdas = {5000.0};
    EXPECT_EQ(error_code([&] { cmd_ids(cfg); }), 3);
}

TEST(ReadIdsCsv, MalformedInputIsAConfigError) {
    EXPECT_EQ(error_code([] { read_ids_csv("lambda,N\n1,2\n", 1.0, IdsMethod::gauge_volume); }), 2);
    EXPECT_EQ(error_code([] { read_ids_csv("lambda,N,method\n1,x,gauge-volume\n", 1.0, IdsMethod::gauge_volume); }), 2);
    EXPECT_EQ(error_code([] { read_ids_csv("lambda,N,method\n1,2,floquet-oracle\n", 1.0, IdsMethod::gauge_volume); }), 2);
    const auto rows = read_ids_csv("lambda,N,method,err_estimate\n16,2,free-closed-form,0\n", 1.0, IdsMethod::free_closed_form);
    ASSERT_EQ(rows.size(), 1u);
    EXPECT_DOUBLE_EQ(rows[0].first, 4.0);
    EXPECT_DOUBLE_EQ(rows[0].second, 2.0);
}

TEST(Fit, ReadsSamplesFromCsv) {
    std::ostringstream csv;
    csv << "lambda,N,method,err_estimate\n";
    char buf[128];
    for (int i = 0; i < 40; ++i) {
        const double rho = 5.0 + 0.5 * i;
        std::snprintf(buf, sizeof buf, "%.17g,%.17g,free-closed-form,0\n", rho * rho, rho * rho / (4.0 * M_PI));
        csv << buf;
    }
    const std::string path = ::testing::TempDir() + "/gids_fit_samples.csv";
    std::ofstream(path) << csv.str();

    RunConfig cfg = parse_config(R"({"operator": {"d": 2, "frequencies": [["0","0"],["1","0"],["-1","0"],["0","1"],["0","-1"]]},
        "scale": {"rho_n": 5, "k": 2},
        "fit": {"window": [5, 20], "basis": [[2, 0], [1, 0], [0, 0]], "source": "free"}})");
    cfg.fit.csv = path;
    const CommandOutput out = cmd_fit(cfg);
    ASSERT_EQ(out.exit_code, 0) << out.text;
    const auto j = nlohmann::json::parse(out.text);
    EXPECT_NEAR(j["coeffs"][0].get<double>(), 1.0 / (4.0 * M_PI), 1e-10);

    cfg.fit.rho_min = 50.0;
    cfg.fit.rho_max = 60.0;
    EXPECT_EQ(error_code([&] { cmd_fit(cfg); }), 3);
    std::remove(path.c_str());
}
