#include <doctest.h>

#include <cstdio>
#include <fstream>
#include <sstream>

#include "ophh/campaign.hpp"
#include "ophh/errors.hpp"

using namespace ophh;

namespace {

std::string machine_report(const CampaignResult& r) {
    std::ostringstream os;
    write_report(r, os, "machine");
    return os.str();
}

struct TempFile {
    std::string path;
    explicit TempFile(const std::string& name, const std::string& content)
        : path("/tmp/ophh_test_" + name) {
        std::ofstream f(path);
        f << content;
    }
    ~TempFile() { std::remove(path.c_str()); }
};

CampaignConfig small_campaign() {
    CampaignConfig cfg;
    cfg.suite = "hh-chain";
    cfg.f_name = "square";
    cfg.eta_name = "difference";
    cfg.dims = {2};
    cfg.trials = 8;
    cfg.seed = 314;
    return cfg;
}

}  // namespace

TEST_CASE("campaigns are bytewise deterministic") {
    auto cfg = small_campaign();
    auto r1 = run_campaign(cfg);
    auto r2 = run_campaign(cfg);
    CHECK(machine_report(r1) == machine_report(r2));
    CHECK(r1.summary.pass_count == 8);
}

TEST_CASE("serial and parallel schedules agree") {
    auto cfg = small_campaign();
    cfg.trials = 12;
    auto par = run_campaign(cfg);
    cfg.parallel = false;
    auto ser = run_campaign(cfg);
    CHECK(machine_report(par) == machine_report(ser));
}

TEST_CASE("split campaigns concatenate into the whole") {
    auto cfg = small_campaign();
    cfg.trials = 10;
    auto whole = run_campaign(cfg);

    auto first = cfg;
    first.trials = 4;
    auto second = cfg;
    second.trials = 6;
    second.trial_offset = 4;
    auto joined = machine_report(run_campaign(first)) + machine_report(run_campaign(second));
    CHECK(joined == machine_report(whole));
}

TEST_CASE("instance records carry global ids") {
    auto cfg = small_campaign();
    cfg.trials = 3;
    cfg.trial_offset = 100;
    auto r = run_campaign(cfg);
    REQUIRE(r.records.size() == 3);
    CHECK(r.records[0].instance == 100);
    CHECK(r.records[2].instance == 102);
}

TEST_CASE("mixed dims and subdivisions cycle per instance") {
    auto cfg = small_campaign();
    cfg.dims = {1, 2, 4};
    cfg.ks = {2, 3};
    cfg.trials = 6;
    auto r = run_campaign(cfg);
    CHECK(r.records[0].dim == 1);
    CHECK(r.records[1].dim == 2);
    CHECK(r.records[2].dim == 4);
    CHECK(r.records[3].dim == 1);
    // k cycles once the dim list wraps
    CHECK(r.records[0].kp == 2);
    CHECK(r.records[3].kp == 3);
}

TEST_CASE("expectation logic") {
    auto cfg = small_campaign();
    auto good = run_campaign(cfg);
    CHECK(expectation_met(good));
    CHECK(campaign_exit_code(good) == 0);

    // same campaign expecting failure is an expectation violation
    cfg.expected = "fail";
    auto wrong = run_campaign(cfg);
    CHECK_FALSE(expectation_met(wrong));
    CHECK(campaign_exit_code(wrong) == 1);

    // a suite that genuinely fails meets the "fail" expectation
    CampaignConfig ce;
    ce.suite = "preinvex";
    ce.f_name = "affine:0,1";
    ce.eta_name = "eta1";
    ce.trials = 30;
    ce.seed = 3;
    ce.expected = "fail";
    auto found = run_campaign(ce);
    CHECK(found.summary.fail_count > 0);
    CHECK(expectation_met(found));
    CHECK(campaign_exit_code(found) == 0);

    ce.expected = "pass";
    auto violated = run_campaign(ce);
    CHECK_FALSE(expectation_met(violated));
}

TEST_CASE("failing preinvex records embed a replayable counterexample") {
    CampaignConfig ce;
    ce.suite = "preinvex";
    ce.f_name = "affine:0,1";
    ce.eta_name = "eta1";
    ce.trials = 30;
    ce.seed = 3;
    ce.expected = "fail";
    auto r = run_campaign(ce);

    bool saw = false;
    for (const auto& rec : r.records) {
        if (rec.verdict != "fail") continue;
        REQUIRE(rec.counterexample.has_value());
        saw = true;
        // round-trip the matrices through the exchange format
        auto j = record_to_json(rec);
        auto a = matrix_from_json(j["counterexample"]["a"]);
        auto b = matrix_from_json(j["counterexample"]["b"]);
        CHECK((a.mat() - rec.counterexample->first.mat()).frobenius_norm() == 0.0);
        CHECK((b.mat() - rec.counterexample->second.mat()).frobenius_norm() == 0.0);
        CHECK(j["counterexample"]["t"].get<double>() == rec.counterexample->t);
    }
    CHECK(saw);
}

TEST_CASE("machine report is one json object per line") {
    auto cfg = small_campaign();
    cfg.trials = 4;
    auto text = machine_report(run_campaign(cfg));
    std::istringstream is(text);
    std::string line;
    int lines = 0;
    while (std::getline(is, line)) {
        ++lines;
        auto j = nlohmann::json::parse(line);
        CHECK(j["suite"] == "hh-chain");
        CHECK(j.contains("margin"));
        CHECK(j.contains("verdict"));
    }
    CHECK(lines == 4);
}

TEST_CASE("table report summarizes") {
    auto cfg = small_campaign();
    cfg.trials = 2;
    std::ostringstream os;
    write_report(run_campaign(cfg), os, "table");
    auto text = os.str();
    CHECK(text.find("suite hh-chain") != std::string::npos);
    CHECK(text.find("instances 2") != std::string::npos);
    CHECK(text.find("worst margin") != std::string::npos);
}

TEST_CASE("matrix file round trip") {
    auto m = HermitianMatrix::from([] {
        ComplexMatrix c(2, 2);
        c(0, 0) = 1.5;
        c(0, 1) = cdouble(0.25, -0.75);
        c(1, 0) = cdouble(0.25, 0.75);
        c(1, 1) = -2.0;
        return c;
    }());
    TempFile tf("roundtrip.json", "");
    save_matrix(m, tf.path);
    auto back = load_matrix(tf.path);
    CHECK((back.mat() - m.mat()).frobenius_norm() == 0.0);
}

TEST_CASE("corrupt matrix files are rejected") {
    TempFile bad_json("bad.json", "{not json");
    CHECK_THROWS_AS(load_matrix(bad_json.path), ConfigError);

    TempFile bad_shape("shape.json", R"({"n": 2, "re": [[1, 0]], "im": [[0, 0]]})");
    CHECK_THROWS_AS(load_matrix(bad_shape.path), ConfigError);

    TempFile not_herm("herm.json",
                      R"({"n": 2, "re": [[1, 2], [3, 1]], "im": [[0, 0], [0, 0]]})");
    CHECK_THROWS_AS(load_matrix(not_herm.path), ConfigError);

    CHECK_THROWS_AS(load_matrix("/tmp/ophh_test_does_not_exist.json"), ConfigError);
}

TEST_CASE("config files set and override fields") {
    TempFile cf("campaign.conf",
                "# comment line\n"
                "suite = preinvex\n"
                "f = square\n"
                "eta = eta1\n"
                "dims = 2,4\n"
                "trials = 17\n"
                "seed = 99\n"
                "expected = pass\n"
                "allow-signed = true\n");
    auto cfg = parse_config_file(cf.path);
    CHECK(cfg.suite == "preinvex");
    CHECK(cfg.f_name == "square");
    CHECK(cfg.eta_name == "eta1");
    REQUIRE(cfg.dims.size() == 2);
    CHECK(cfg.dims[1] == 4);
    CHECK(cfg.trials == 17);
    CHECK(cfg.seed == 99);
    CHECK(cfg.allow_signed);

    // later entries win, mirroring CLI flags layered over a config file
    apply_config_entry(cfg, "trials", "5");
    apply_config_entry(cfg, "eta", "difference");
    CHECK(cfg.trials == 5);
    CHECK(cfg.eta_name == "difference");

    CHECK_THROWS_AS(apply_config_entry(cfg, "no-such-key", "1"), ConfigError);
    CHECK_THROWS_AS(apply_config_entry(cfg, "trials", "many"), ConfigError);
    CHECK_THROWS_AS(parse_config_file("/tmp/ophh_test_missing.conf"), ConfigError);
}

TEST_CASE("bad configurations are rejected up front") {
    auto cfg = small_campaign();
    cfg.suite = "no-such-suite";
    CHECK_THROWS_AS(run_campaign(cfg), ConfigError);

    cfg = small_campaign();
    cfg.eta_name = "eta2";
    cfg.set_name = "tu";  // eta2 lives on V union W
    CHECK_THROWS_AS(run_campaign(cfg), ConfigError);

    cfg = small_campaign();
    cfg.trials = 0;
    CHECK_THROWS_AS(run_campaign(cfg), ConfigError);

    cfg = small_campaign();
    cfg.f_name = "square";
    cfg.suite = "product-right";  // product bounds need nonnegative f and g
    cfg.g_name = "affine:0,1";
    CHECK_THROWS_AS(run_campaign(cfg), ConfigError);
}

TEST_CASE("signed waiver downgrades the verdict to logged") {
    CampaignConfig cfg;
    cfg.suite = "product-right";
    cfg.f_name = "affine:0,1";  // signed on the default interval
    cfg.g_name = "square";
    cfg.eta_name = "difference";
    cfg.trials = 4;
    cfg.seed = 5;
    cfg.allow_signed = true;
    auto r = run_campaign(cfg);
    CHECK(r.summary.logged_count == 4);
    CHECK(r.summary.fail_count == 0);
    // logged instances do not block a pass expectation
    CHECK(expectation_met(r));
}

TEST_CASE("fixed operand pairs come from files") {
    auto a = HermitianMatrix::diagonal({2.0, 1.5});
    auto b = HermitianMatrix::diagonal({-1.5, -2.0});
    TempFile fa("pair_a.json", "");
    TempFile fb("pair_b.json", "");
    save_matrix(a, fa.path);
    save_matrix(b, fb.path);

    CampaignConfig cfg;
    cfg.suite = "hh-chain";
    cfg.f_name = "square";
    cfg.eta_name = "eta1";
    cfg.trials = 3;
    cfg.a_file = fa.path;
    cfg.b_file = fb.path;
    auto r = run_campaign(cfg);
    REQUIRE(r.records.size() == 3);
    // one fixed pair: every instance sees the same margin
    CHECK(r.records[0].margin == r.records[1].margin);
    CHECK(r.records[1].margin == r.records[2].margin);
    CHECK(r.records[0].verdict == "pass");
    CHECK(r.records[0].dim == 2);

    // a pair outside the configured interval is a configuration error
    TempFile fo("pair_out.json", "");
    save_matrix(HermitianMatrix::diagonal({2.0, 2.5}), fo.path);
    cfg.a_file = fo.path;
    CHECK_THROWS_AS(run_campaign(cfg), ConfigError);
}

TEST_CASE("condition-c suite flags eta3") {
    CampaignConfig cfg;
    cfg.suite = "condition-c";
    cfg.eta_name = "eta3";
    cfg.trials = 12;
    cfg.seed = 8;
    cfg.expected = "fail";
    auto r = run_campaign(cfg);
    CHECK(r.summary.fail_count > 0);
    CHECK(expectation_met(r));
}
