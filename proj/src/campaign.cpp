#include "ophh/campaign.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>

#include "ophh/errors.hpp"

namespace ophh {

namespace {

const std::vector<std::string> kSuites = {
    "preinvex",   "hh-chain",   "corollary",  "product-right", "product-left",
    "trapezoid",  "condition-c", "phi-convex", "reductions"};

bool suite_needs_g(const std::string& suite) {
    return suite == "product-right" || suite == "product-left" || suite == "reductions";
}

bool suite_needs_nonneg(const std::string& suite) {
    return suite == "product-right" || suite == "product-left" || suite == "trapezoid" ||
           suite == "reductions";
}

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos) return "";
    const auto e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

int parse_int(const std::string& key, const std::string& v) {
    try {
        size_t used = 0;
        const int x = std::stoi(v, &used);
        if (used != v.size()) throw std::invalid_argument(v);
        return x;
    } catch (const std::exception&) {
        throw ConfigError("bad integer for " + key + ": '" + v + "'");
    }
}

double parse_double(const std::string& key, const std::string& v) {
    try {
        size_t used = 0;
        const double x = std::stod(v, &used);
        if (used != v.size()) throw std::invalid_argument(v);
        return x;
    } catch (const std::exception&) {
        throw ConfigError("bad number for " + key + ": '" + v + "'");
    }
}

std::uint64_t parse_u64(const std::string& key, const std::string& v) {
    try {
        size_t used = 0;
        const unsigned long long x = std::stoull(v, &used);
        if (used != v.size()) throw std::invalid_argument(v);
        return static_cast<std::uint64_t>(x);
    } catch (const std::exception&) {
        throw ConfigError("bad integer for " + key + ": '" + v + "'");
    }
}

bool parse_bool(const std::string& key, const std::string& v) {
    if (v == "1" || v == "true" || v == "yes" || v == "on") return true;
    if (v == "0" || v == "false" || v == "no" || v == "off") return false;
    throw ConfigError("bad boolean for " + key + ": '" + v + "'");
}

std::vector<int> parse_int_list(const std::string& key, const std::string& v) {
    std::vector<int> out;
    std::istringstream is(v);
    std::string piece;
    while (std::getline(is, piece, ',')) out.push_back(parse_int(key, trim(piece)));
    if (out.empty()) throw ConfigError(key + " needs at least one value");
    return out;
}

// Everything run_campaign needs, resolved once from the configuration.
struct Setup {
    OperatorSet set = OperatorSet::whole_space();
    EtaMap eta = EtaMap::difference();
    Interval iv = Interval::closed(-2.0, 2.0);
    ScalarFunction f;
    ScalarFunction g;
    QuadratureScheme quad;
    bool signed_waiver = false;  // allow_signed engaged on a suite that wanted nonnegative
    std::optional<std::pair<HermitianMatrix, HermitianMatrix>> fixed;
    std::vector<std::pair<HermitianMatrix, HermitianMatrix>> sweep;
};

Setup resolve_setup(const CampaignConfig& cfg) {
    if (std::find(kSuites.begin(), kSuites.end(), cfg.suite) == kSuites.end()) {
        std::string names;
        for (const auto& s : kSuites) names += (names.empty() ? "" : ", ") + s;
        throw ConfigError("unknown suite '" + cfg.suite + "' (one of: " + names + ")");
    }
    if (cfg.expected != "pass" && cfg.expected != "fail")
        throw ConfigError("expected must be 'pass' or 'fail'");
    if (cfg.format != "table" && cfg.format != "machine")
        throw ConfigError("format must be 'table' or 'machine'");
    if (cfg.trials < 1) throw ConfigError("trials must be at least 1");
    if (cfg.dims.empty()) throw ConfigError("need at least one dimension");
    for (int d : cfg.dims)
        if (d < 1 || d > 32) throw ConfigError("dimensions must lie in 1..32");
    if (cfg.t_grid_size < 2) throw ConfigError("t-grid needs at least two points");
    if (cfg.unit_vectors < 1) throw ConfigError("need at least one unit vector");
    if (!(cfg.scale_tol > 0.0) || !(cfg.slack_tol > 0.0))
        throw ConfigError("tolerances must be positive");
    if (cfg.suite == "trapezoid" && !(0.0 <= cfg.a && cfg.a < cfg.b && cfg.b <= 1.0))
        throw ConfigError("trapezoid bounds need 0 <= a < b <= 1");
    if (cfg.ks.empty() || cfg.ps.empty()) throw ConfigError("need k and p values");

    Setup st;
    st.quad.panels = cfg.quad_panels;
    st.quad.points_per_panel = cfg.quad_points;
    st.quad.convergence_tol = cfg.quad_tol;
    st.quad.validate();

    if (cfg.eta_name == "difference") st.eta = EtaMap::difference();
    else if (cfg.eta_name == "eta1") st.eta = EtaMap::eta1();
    else if (cfg.eta_name == "eta2") st.eta = EtaMap::eta2();
    else if (cfg.eta_name == "eta3") st.eta = EtaMap::eta3();
    else throw ConfigError("unknown eta '" + cfg.eta_name + "' (difference, eta1, eta2, eta3)");

    std::string set_name = cfg.set_name;
    if (set_name == "auto") {
        switch (st.eta.kind()) {
            case EtaKind::Eta1: set_name = "tu"; break;
            case EtaKind::Eta2: set_name = "vw"; break;
            case EtaKind::Eta3: set_name = "signed"; break;
            default: set_name = "whole"; break;
        }
    }
    if (set_name == "whole") st.set = OperatorSet::whole_space();
    else if (set_name == "tu") st.set = OperatorSet::tu_union();
    else if (set_name == "vw") st.set = OperatorSet::vw_union();
    else if (set_name == "signed") st.set = OperatorSet::semidefinite_signed();
    else throw ConfigError("unknown set '" + set_name + "' (auto, whole, tu, vw, signed)");

    if (st.eta.kind() == EtaKind::Eta1 && st.set.kind() != SetKind::TUnionU)
        throw ConfigError("eta1 needs the tu set");
    if (st.eta.kind() == EtaKind::Eta2 && st.set.kind() != SetKind::VUnionW)
        throw ConfigError("eta2 needs the vw set");
    if (st.eta.kind() == EtaKind::Eta3 && st.set.kind() != SetKind::SemidefiniteSigned)
        throw ConfigError("eta3 needs the signed set");

    const bool lo_set = !std::isnan(cfg.lo);
    const bool hi_set = !std::isnan(cfg.hi);
    if (lo_set != hi_set) throw ConfigError("set both interval bounds or neither");
    if (lo_set) {
        if (!(cfg.lo < cfg.hi)) throw ConfigError("interval needs lo < hi");
        st.iv = Interval::closed(cfg.lo, cfg.hi);
    } else {
        st.iv = st.set.kind() == SetKind::SemidefiniteSigned ? Interval::closed(-3.0, 3.0)
                                                             : Interval::closed(-2.0, 2.0);
    }

    // Suites built on nonnegativity hypotheses demand the declaration up front.
    // allow_signed downgrades a failed declaration to a waiver: the instances
    // still evaluate, but their verdicts become "logged".
    const bool want_nonneg = suite_needs_nonneg(cfg.suite);
    const auto parse_with_policy = [&](const std::string& name) {
        if (!want_nonneg) return parse_scalar_function(name, st.iv, false);
        if (!cfg.allow_signed) return parse_scalar_function(name, st.iv, true);
        try {
            return parse_scalar_function(name, st.iv, true);
        } catch (const ConfigError&) {
            st.signed_waiver = true;
            return parse_scalar_function(name, st.iv, false);
        }
    };
    st.f = parse_with_policy(cfg.f_name);
    st.g = suite_needs_g(cfg.suite) ? parse_with_policy(cfg.g_name)
                                    : parse_scalar_function(cfg.g_name, st.iv, false);

    if (cfg.a_file.empty() != cfg.b_file.empty())
        throw ConfigError("fixed-pair mode needs both matrix files");
    if (!cfg.a_file.empty()) {
        HermitianMatrix a = load_matrix(cfg.a_file);
        HermitianMatrix b = load_matrix(cfg.b_file);
        if (a.dim() != b.dim()) throw ConfigError("fixed pair dimensions differ");
        for (const auto* m : {&a, &b}) {
            if (!st.set.contains(*m))
                throw ConfigError("fixed operand is not a member of " + st.set.description());
            if (!spectrum_in(*m, st.iv))
                throw ConfigError("fixed operand spectrum falls outside " + st.iv.str() +
                                  "; widen lo/hi");
        }
        st.fixed.emplace(std::move(a), std::move(b));
    }

    if (cfg.suite == "preinvex" && !st.fixed) {
        // One sweep per configured dimension, concatenated in dims order.
        for (int d : cfg.dims) {
            auto pairs = sweep_pairs(st.set, st.iv, st.eta, d);
            st.sweep.insert(st.sweep.end(), pairs.begin(), pairs.end());
        }
    }
    return st;
}

std::vector<CVector> draw_unit_vectors(int count, int dim, Rng& rng) {
    std::vector<CVector> xs;
    xs.reserve(static_cast<size_t>(count));
    for (int i = 0; i < count; ++i) xs.push_back(random_unit_vector(dim, rng));
    return xs;
}

InstanceRecord run_instance(const CampaignConfig& cfg, const Setup& st, std::uint64_t global) {
    InstanceRecord rec;
    rec.suite = cfg.suite;
    rec.instance = global;

    const size_t nd = cfg.dims.size();
    const size_t nk = cfg.ks.size();
    rec.dim = st.fixed ? st.fixed->first.dim() : cfg.dims[static_cast<size_t>(global % nd)];
    const int k = cfg.ks[static_cast<size_t>((global / nd) % nk)];
    const int p = cfg.ps[static_cast<size_t>((global / (nd * nk)) % cfg.ps.size())];

    Rng rng(split_seed(cfg.seed, global));
    const double shrink = branch_shrink_for(st.eta, st.set);

    int retries = 0;
    HermitianMatrix first = HermitianMatrix::zero(1);
    HermitianMatrix second = HermitianMatrix::zero(1);
    if (st.fixed) {
        first = st.fixed->first;
        second = st.fixed->second;
    } else if (cfg.suite == "preinvex" && global < st.sweep.size()) {
        first = st.sweep[static_cast<size_t>(global)].first;
        second = st.sweep[static_cast<size_t>(global)].second;
        rec.dim = first.dim();
        rec.note = "sweep";
    } else {
        first = sample_in_set(st.set, st.iv, rec.dim, rng, shrink, &retries).a;
        second = sample_in_set(st.set, st.iv, rec.dim, rng, shrink, &retries).a;
    }

    const std::vector<double> grid = unit_grid(cfg.t_grid_size);
    const bool logged = st.signed_waiver;

    if (cfg.suite == "preinvex") {
        PreinvexTrial trial =
            preinvex_trial(st.f, st.eta, st.set, first, second, grid, cfg.scale_tol);
        rec.kp = 1;
        rec.margin = trial.margin;
        rec.verdict = trial.pass ? "pass" : "fail";
        rec.counterexample = std::move(trial.counterexample);
    } else if (cfg.suite == "hh-chain") {
        const HHChainReport rep =
            hh_chain(st.f, first, second, st.eta, st.set, k, p, st.quad, cfg.scale_tol);
        rec.kp = rep.subdivisions;
        rec.margin = rep.min_margin();
        rec.verdict = rep.all_hold() ? "pass" : "fail";
    } else if (cfg.suite == "corollary") {
        const CorollaryReport rep =
            corollary_gap(st.f, first, second, st.eta, st.set, st.quad, cfg.scale_tol);
        rec.kp = 1;
        rec.margin = std::min(rep.left_nonnegative.min_eigenvalue, rep.gaps_ordered.min_eigenvalue);
        rec.verdict = (rep.left_nonnegative.holds && rep.gaps_ordered.holds) ? "pass" : "fail";
    } else if (cfg.suite == "product-right" || cfg.suite == "product-left") {
        const std::vector<CVector> xs = draw_unit_vectors(cfg.unit_vectors, rec.dim, rng);
        const std::vector<ProductEntry> entries =
            cfg.suite == "product-right"
                ? product_ineq_right(st.f, st.g, first, second, st.eta, st.set, xs, st.quad,
                                     cfg.slack_tol, cfg.allow_signed)
                : product_ineq_left(st.f, st.g, first, second, st.eta, st.set, xs, st.quad,
                                    cfg.slack_tol, cfg.allow_signed);
        rec.kp = 1;
        bool all = true;
        double worst = std::numeric_limits<double>::infinity();
        for (const ProductEntry& e : entries) {
            worst = std::min(worst, e.slack);
            all = all && e.holds;
        }
        rec.margin = worst;
        rec.verdict = logged ? "logged" : (all ? "pass" : "fail");
    } else if (cfg.suite == "trapezoid") {
        const std::vector<CVector> xs = draw_unit_vectors(cfg.unit_vectors, rec.dim, rng);
        const TrapezoidReport rep =
            trapezoid_bound(st.f, first, second, st.eta, st.set, cfg.a, cfg.b, xs, st.quad,
                            cfg.slack_tol, cfg.allow_signed);
        rec.kp = 1;
        double worst = std::min(rep.norm_rhs_joint - rep.norm_lhs,
                                rep.norm_rhs_split - rep.norm_rhs_joint);
        bool all = rep.norm_holds && rep.triangle_holds;
        for (const TrapezoidEntry& e : rep.scalar) {
            worst = std::min(worst, e.slack);
            all = all && e.holds;
        }
        rec.margin = worst;
        rec.verdict = logged ? "logged" : (all ? "pass" : "fail");
        if (!rep.set_open) rec.note = rec.note.empty() ? "set not open" : rec.note + "; set not open";
    } else if (cfg.suite == "condition-c") {
        const ConditionCReport rep =
            check_condition_c(st.eta, st.set, first, second, grid, cfg.scale_tol);
        rec.kp = 1;
        rec.margin = rep.tolerance - rep.max_residual;
        rec.verdict = rep.pass ? "pass" : "fail";
    } else if (cfg.suite == "phi-convex") {
        const std::vector<CVector> xs = draw_unit_vectors(cfg.unit_vectors, rec.dim, rng);
        PhiEvaluator phi(st.f, first, second, st.eta, st.set);
        rec.kp = 1;
        bool all = true;
        double worst = std::numeric_limits<double>::infinity();
        for (const CVector& x : xs) {
            const PhiConvexityReport rep = check_phi_convex(phi, x, grid, cfg.scale_tol);
            worst = std::min(worst, -rep.worst_violation);
            all = all && rep.convex;
        }
        rec.margin = worst;
        rec.verdict = all ? "pass" : "fail";
    } else if (cfg.suite == "reductions") {
        const ReductionsReport rep = classical_reductions(
            st.f, suite_needs_g(cfg.suite) ? &st.g : nullptr, first, second, k, p, st.quad,
            cfg.scale_tol);
        rec.kp = rep.chain.subdivisions;
        rec.margin = rep.chain.min_margin();
        const bool ok = rep.chain.all_hold() && rep.midpoint_match &&
                        (!rep.pachpatte || rep.pachpatte->holds);
        rec.verdict = ok ? "pass" : "fail";
        if (logged) rec.note = rec.note.empty() ? "pachpatte skipped: signed functions"
                                                : rec.note + "; pachpatte skipped: signed functions";
    }
    if (retries > 0)
        rec.note = rec.note.empty() ? ("resampled " + std::to_string(retries))
                                    : rec.note + "; resampled " + std::to_string(retries);
    return rec;
}

}  // namespace

void apply_config_entry(CampaignConfig& cfg, const std::string& raw_key, const std::string& raw_value) {
    const std::string key = trim(raw_key);
    const std::string v = trim(raw_value);
    if (key == "suite") cfg.suite = v;
    else if (key == "f") cfg.f_name = v;
    else if (key == "g") cfg.g_name = v;
    else if (key == "eta") cfg.eta_name = v;
    else if (key == "set") cfg.set_name = v;
    else if (key == "lo") cfg.lo = parse_double(key, v);
    else if (key == "hi") cfg.hi = parse_double(key, v);
    else if (key == "dims" || key == "dim") cfg.dims = parse_int_list(key, v);
    else if (key == "trials") cfg.trials = parse_int(key, v);
    else if (key == "trial-offset") cfg.trial_offset = parse_u64(key, v);
    else if (key == "seed") cfg.seed = parse_u64(key, v);
    else if (key == "t-grid") cfg.t_grid_size = parse_int(key, v);
    else if (key == "k") cfg.ks = parse_int_list(key, v);
    else if (key == "p") cfg.ps = parse_int_list(key, v);
    else if (key == "a") cfg.a = parse_double(key, v);
    else if (key == "b") cfg.b = parse_double(key, v);
    else if (key == "unit-vectors") cfg.unit_vectors = parse_int(key, v);
    else if (key == "tol") cfg.scale_tol = parse_double(key, v);
    else if (key == "slack-tol") cfg.slack_tol = parse_double(key, v);
    else if (key == "allow-signed") cfg.allow_signed = parse_bool(key, v);
    else if (key == "parallel") cfg.parallel = parse_bool(key, v);
    else if (key == "expected") cfg.expected = v;
    else if (key == "report") cfg.report_path = v;
    else if (key == "format") cfg.format = v;
    else if (key == "A") cfg.a_file = v;
    else if (key == "B") cfg.b_file = v;
    else if (key == "panels") cfg.quad_panels = parse_int(key, v);
    else if (key == "points") cfg.quad_points = parse_int(key, v);
    else if (key == "quad-tol") cfg.quad_tol = parse_double(key, v);
    else throw ConfigError("unknown config key '" + key + "'");
}

CampaignConfig parse_config_file(const std::string& path, CampaignConfig base) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot read config " + path);
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (const auto hash = line.find('#'); hash != std::string::npos) line = line.substr(0, hash);
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw ConfigError(path + ":" + std::to_string(lineno) + ": expected key = value");
        apply_config_entry(base, line.substr(0, eq), line.substr(eq + 1));
    }
    return base;
}

CampaignResult run_campaign(const CampaignConfig& cfg) {
    const Setup st = resolve_setup(cfg);

    CampaignResult result;
    result.config = cfg;
    result.records.resize(static_cast<size_t>(cfg.trials));

    const auto t0 = std::chrono::steady_clock::now();
    if (cfg.parallel) {
#pragma omp parallel for schedule(dynamic)
        for (int i = 0; i < cfg.trials; ++i) {
            const std::uint64_t global = cfg.trial_offset + static_cast<std::uint64_t>(i);
            try {
                result.records[static_cast<size_t>(i)] = run_instance(cfg, st, global);
            } catch (const std::exception& e) {
                InstanceRecord rec;
                rec.suite = cfg.suite;
                rec.instance = global;
                rec.margin = std::numeric_limits<double>::quiet_NaN();
                rec.verdict = "error";
                rec.note = e.what();
                result.records[static_cast<size_t>(i)] = std::move(rec);
            }
        }
    } else {
        for (int i = 0; i < cfg.trials; ++i) {
            const std::uint64_t global = cfg.trial_offset + static_cast<std::uint64_t>(i);
            try {
                result.records[static_cast<size_t>(i)] = run_instance(cfg, st, global);
            } catch (const std::exception& e) {
                InstanceRecord rec;
                rec.suite = cfg.suite;
                rec.instance = global;
                rec.margin = std::numeric_limits<double>::quiet_NaN();
                rec.verdict = "error";
                rec.note = e.what();
                result.records[static_cast<size_t>(i)] = std::move(rec);
            }
        }
    }
    const auto t1 = std::chrono::steady_clock::now();

    CampaignSummary& sm = result.summary;
    sm.instances = static_cast<std::uint64_t>(result.records.size());
    sm.worst_margin = std::numeric_limits<double>::infinity();
    for (const InstanceRecord& r : result.records) {
        if (r.verdict == "pass") ++sm.pass_count;
        else if (r.verdict == "fail") ++sm.fail_count;
        else if (r.verdict == "logged") ++sm.logged_count;
        else ++sm.error_count;
        if (!std::isnan(r.margin)) sm.worst_margin = std::min(sm.worst_margin, r.margin);
    }
    if (!std::isfinite(sm.worst_margin) && sm.instances == sm.error_count) sm.worst_margin = 0.0;
    sm.wall_seconds = std::chrono::duration<double>(t1 - t0).count();
    return result;
}

nlohmann::ordered_json record_to_json(const InstanceRecord& rec) {
    nlohmann::ordered_json j{{"suite", rec.suite},
                             {"instance", rec.instance},
                             {"dim", rec.dim},
                             {"kp", rec.kp},
                             {"margin", rec.margin},
                             {"verdict", rec.verdict}};
    if (rec.counterexample) {
        j["counterexample"] = nlohmann::ordered_json{
            {"a", matrix_to_json(rec.counterexample->first)},
            {"b", matrix_to_json(rec.counterexample->second)},
            {"t", rec.counterexample->t},
            {"margin", rec.counterexample->min_eigenvalue}};
    }
    if (!rec.note.empty()) j["note"] = rec.note;
    return j;
}

void write_report(const CampaignResult& result, std::ostream& out, const std::string& format) {
    if (format == "machine") {
        for (const InstanceRecord& r : result.records) out << record_to_json(r).dump() << "\n";
        return;
    }
    if (format != "table") throw ConfigError("format must be 'table' or 'machine'");

    const CampaignConfig& cfg = result.config;
    out << "suite " << cfg.suite << "  f " << cfg.f_name;
    if (suite_needs_g(cfg.suite)) out << "  g " << cfg.g_name;
    out << "  eta " << cfg.eta_name << "  seed " << cfg.seed << "\n";
    out << std::left << std::setw(10) << "instance" << std::setw(5) << "dim" << std::setw(5)
        << "kp" << std::setw(15) << "margin" << std::setw(9) << "verdict"
        << "note\n";
    for (const InstanceRecord& r : result.records) {
        std::ostringstream margin;
        margin << std::scientific << std::setprecision(3) << r.margin;
        out << std::left << std::setw(10) << r.instance << std::setw(5) << r.dim << std::setw(5)
            << r.kp << std::setw(15) << margin.str() << std::setw(9) << r.verdict << r.note
            << "\n";
    }
    const CampaignSummary& sm = result.summary;
    out << "instances " << sm.instances << "  pass " << sm.pass_count << "  fail "
        << sm.fail_count << "  logged " << sm.logged_count << "  error " << sm.error_count
        << "\n";
    out << "worst margin " << std::scientific << std::setprecision(6) << sm.worst_margin
        << "  wall " << std::fixed << std::setprecision(2) << sm.wall_seconds << " s\n";
}

void write_report_file(const CampaignResult& result) {
    if (result.config.report_path.empty()) {
        write_report(result, std::cout, result.config.format);
        return;
    }
    std::ofstream out(result.config.report_path);
    if (!out) throw ConfigError("cannot write report " + result.config.report_path);
    write_report(result, out, result.config.format);
}

bool expectation_met(const CampaignResult& result) {
    const CampaignSummary& sm = result.summary;
    if (result.config.expected == "fail") return sm.fail_count > 0;
    return sm.fail_count == 0 && sm.error_count == 0;
}

int campaign_exit_code(const CampaignResult& result) { return expectation_met(result) ? 0 : 1; }

}  // namespace ophh
