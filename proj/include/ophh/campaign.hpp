#pragma once

#include <cstdint>
#include <iosfwd>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "ophh/hh.hpp"
#include "ophh/matrix_io.hpp"

namespace ophh {

// A campaign runs `trials` independent instances of one verification suite.
// Instance identity is the global id = trial_offset + local index; the per-id
// seed split makes records independent of execution order, thread count, and
// partitioning, so two half campaigns concatenate into exactly the full one.
struct CampaignConfig {
    std::string suite = "hh-chain";
    std::string f_name = "square";
    std::string g_name = "square";
    std::string eta_name = "difference";
    std::string set_name = "auto";
    double lo = std::numeric_limits<double>::quiet_NaN();  // NaN keeps the per-set default
    double hi = std::numeric_limits<double>::quiet_NaN();
    std::vector<int> dims{2};
    int trials = 100;
    std::uint64_t trial_offset = 0;
    std::uint64_t seed = 0;
    int t_grid_size = 33;
    std::vector<int> ks{2};
    std::vector<int> ps{1};
    double a = 0.25;
    double b = 0.75;
    int unit_vectors = 20;
    double scale_tol = 1e-9;
    double slack_tol = 1e-8;  // absolute bound for product and trapezoid slacks
    bool allow_signed = false;
    bool parallel = true;
    std::string expected = "pass";
    std::string report_path;        // empty writes to stdout
    std::string format = "table";   // "table" or "machine" (one json object per line)
    std::string a_file;             // fixed-pair mode when both are set
    std::string b_file;
    int quad_panels = 8;
    int quad_points = 8;
    double quad_tol = 1e-11;
};

// key = value lines, '#' comments; keys match the CLI flag names.
CampaignConfig parse_config_file(const std::string& path, CampaignConfig base = {});
void apply_config_entry(CampaignConfig& cfg, const std::string& key, const std::string& value);

struct InstanceRecord {
    std::string suite;
    std::uint64_t instance = 0;
    int dim = 0;
    int kp = 0;
    double margin = 0.0;
    std::string verdict;  // pass | fail | logged | error
    std::optional<PreinvexCounterexample> counterexample;
    std::string note;
};

struct CampaignSummary {
    std::uint64_t instances = 0;
    std::uint64_t pass_count = 0;
    std::uint64_t fail_count = 0;
    std::uint64_t logged_count = 0;
    std::uint64_t error_count = 0;
    double worst_margin = 0.0;
    double wall_seconds = 0.0;
};

struct CampaignResult {
    CampaignConfig config;
    std::vector<InstanceRecord> records;
    CampaignSummary summary;
};

// Validates the configuration (throws ConfigError) and runs all instances.
CampaignResult run_campaign(const CampaignConfig& cfg);

// machine: one json object per record, fields {suite, instance, dim, kp, margin,
// verdict[, counterexample][, note]}; nothing else, so equal runs give equal bytes.
// table: aligned rows plus a summary footer with the wall time.
void write_report(const CampaignResult& result, std::ostream& out, const std::string& format);
void write_report_file(const CampaignResult& result);  // honors report_path and format

nlohmann::ordered_json record_to_json(const InstanceRecord& rec);

// True when the outcome matches cfg.expected: "pass" wants no fail and no error
// verdicts, "fail" wants at least one fail. Logged instances sway neither.
bool expectation_met(const CampaignResult& result);
int campaign_exit_code(const CampaignResult& result);  // 0 met, 1 violated

}  // namespace ophh
