#include "cli.hpp"

#include <CLI11.hpp>
#include <cmath>
#include <fstream>
#include <iostream>
#include <json.hpp>
#include <numbers>
#include <optional>
#include <sstream>

#include "bellrecycle/audit.hpp"
#include "bellrecycle/errors.hpp"
#include "bellrecycle/io.hpp"
#include "bellrecycle/monogamy.hpp"
#include "bellrecycle/multiparty.hpp"
#include "bellrecycle/optimizer.hpp"

namespace bellrecycle::cli {
namespace {

using nlohmann::json;

constexpr int kSchemaVersion = 1;
constexpr double kTsirelson = 2.0 * std::numbers::sqrt2;
constexpr double kGridTol = 1e-12;

struct Options {
  std::uint64_t seed = 1;
  std::size_t budget = 200000;
  std::string grid;
  std::string mode = "unbiased-singlet";
  std::string output;
  std::string format = "csv";
  std::size_t samples = 100000;
  std::size_t n_bobs = 3;
  double margin = 0.05;
  std::string state;
  std::string config;
};

double parse_number(const std::string& token) {
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(token, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used == 0 || used != token.size() || !std::isfinite(v)) {
    throw Error(ErrorCode::InvalidArgument, "not a number: '" + token + "'");
  }
  return v;
}

std::vector<double> checked_grid(const std::string& text) {
  std::vector<double> grid = parse_grid(text);
  for (double& s : grid) {
    if (s < -kGridTol || s > kTsirelson + kGridTol) {
      throw Error(ErrorCode::InvalidArgument, "grid value " + format_number(s) +
                                                  " outside [0, 2 sqrt 2]");
    }
    s = std::clamp(s, 0.0, kTsirelson);
  }
  return grid;
}

// Inline JSON, or @path to read it from a file.
json read_json_argument(const std::string& text, const char* what) {
  std::string body = text;
  if (!text.empty() && text.front() == '@') {
    std::ifstream in(text.substr(1));
    if (!in) throw Error(ErrorCode::InvalidArgument, std::string("cannot open ") + what + " file");
    std::ostringstream ss;
    ss << in.rdbuf();
    body = ss.str();
  }
  try {
    return json::parse(body);
  } catch (const json::parse_error& e) {
    throw Error(ErrorCode::InvalidArgument, std::string("malformed ") + what + " JSON: " + e.what());
  }
}

json optional_number(std::optional<double> v) { return v ? json(round12(*v)) : json(nullptr); }

std::string csv_cell(std::optional<double> v) { return v ? format_number(*v) : std::string(); }

std::optional<double> region1_at(double s) {
  if (s <= 0.0 || s > 2.0) return std::nullopt;
  return region1_closed(s);
}

void require_format(const Options& opt) {
  if (opt.format != "csv" && opt.format != "json") {
    throw Error(ErrorCode::InvalidArgument, "format must be csv or json");
  }
}

// ----------------------------------------------------------------- commands

int cmd_curve(const Options& opt, std::ostream& out, std::ostream& err) {
  require_format(opt);
  if (opt.grid.empty()) throw Error(ErrorCode::InvalidArgument, "--grid is required");
  const std::vector<double> grid = checked_grid(opt.grid);
  const SearchMode mode = search_mode_from_string(opt.mode);
  const DeConfig de;
  const auto points = boundary_curve(grid, mode, opt.budget, opt.seed, de);

  std::size_t infeasible = 0;
  for (const auto& p : points) {
    if (std::abs(p.achieved_s - p.target_s) > de.constraint_tol) ++infeasible;
  }

  if (opt.format == "csv") {
    out << "target_s,achieved_s,s_star,seed,evaluations,region1_closed,region3_curve\n";
    for (const auto& p : points) {
      out << format_number(p.target_s) << ',' << format_number(p.achieved_s) << ','
          << format_number(p.s_star) << ',' << p.seed << ',' << p.evaluations << ','
          << csv_cell(region1_at(p.target_s)) << ',' << format_number(region3_curve(p.target_s))
          << '\n';
    }
  } else {
    json rows = json::array();
    for (const auto& p : points) {
      json row = boundary_point_to_json(p);
      row["region1_closed"] = optional_number(region1_at(p.target_s));
      row["region3_curve"] = round12(region3_curve(p.target_s));
      rows.push_back(row);
    }
    out << json{{"command", "curve"},
                {"version", kSchemaVersion},
                {"mode", std::string(to_string(mode))},
                {"seed", opt.seed},
                {"budget", opt.budget},
                {"points", rows}}
               .dump(2)
        << '\n';
  }
  if (infeasible > 0) {
    err << "error: " << infeasible << " grid point(s) missed the constraint tolerance\n";
    return kInfeasible;
  }
  return kOk;
}

int cmd_audit(const Options& opt, std::ostream& out, std::ostream& err) {
  require_format(opt);
  if (opt.samples == 0) throw Error(ErrorCode::InvalidArgument, "--samples must be positive");
  const std::vector<AuditReport> reports = {
      audit_theorem1(opt.samples, opt.seed), audit_theorem2(opt.samples, opt.seed),
      audit_tradeoffs(opt.samples, opt.seed), audit_conjecture(opt.samples, opt.seed)};
  std::size_t violations = 0;
  for (const auto& r : reports) violations += r.violations;

  if (opt.format == "csv") {
    out << "name,samples,worst_margin,violations\n";
    for (const auto& r : reports) {
      out << r.name << ',' << r.samples << ',' << format_number(r.worst_margin) << ','
          << r.violations << '\n';
    }
  } else {
    json list = json::array();
    for (const auto& r : reports) list.push_back(report_to_json(r));
    out << json{{"command", "audit"},
                {"version", kSchemaVersion},
                {"seed", opt.seed},
                {"samples", opt.samples},
                {"violations", violations},
                {"reports", list}}
               .dump(2)
        << '\n';
  }
  if (violations > 0) {
    for (const auto& r : reports) {
      if (r.violations > 0) {
        err << "violation in " << r.name << ": " << r.worst_case.dump() << '\n';
      }
    }
    return kAuditViolation;
  }
  return kOk;
}

int cmd_multibob(const Options& opt, std::ostream& out, std::ostream& err) {
  require_format(opt);
  if (opt.n_bobs == 0) throw Error(ErrorCode::InvalidArgument, "--n must be at least 1");
  if (!(opt.margin > 0.0)) throw Error(ErrorCode::InvalidArgument, "--margin must be positive");
  const TwoQubitState state =
      opt.state.empty() ? singlet() : state_from_json(read_json_argument(opt.state, "state"));
  const MultiBobSchedule schedule =
      schedule_multibob(state.correlations(), opt.n_bobs, opt.margin);

  std::optional<NoiseRobustness> noise;
  double check_p = 0.0;
  std::vector<double> check_values;
  if (schedule.feasible) {
    noise = noise_robustness(schedule);
    check_p = std::min(1.0, noise->p_min + 0.01);
    check_values = noisy_chsh_values(schedule, check_p);
  }

  if (opt.format == "csv") {
    out << "n,strength,chsh_value,p_min\n";
    for (std::size_t n = 0; n < schedule.bob_strengths.size(); ++n) {
      out << n + 1 << ',' << format_number(schedule.bob_strengths[n]) << ','
          << format_number(schedule.chsh_values[n]) << ','
          << csv_cell(noise ? std::optional<double>(noise->p_min) : std::nullopt) << '\n';
    }
  } else {
    json noise_json = nullptr;
    if (noise) {
      json values = json::array();
      for (double v : check_values) values.push_back(round12(v));
      noise_json = {{"s_min", round12(noise->s_min)},
                    {"p_min", round12(noise->p_min)},
                    {"check_p", round12(check_p)},
                    {"check_values", values}};
    }
    out << json{{"command", "multibob"},
                {"version", kSchemaVersion},
                {"n", opt.n_bobs},
                {"margin", round12(opt.margin)},
                {"schedule", schedule_to_json(schedule)},
                {"noise", noise_json}}
               .dump(2)
        << '\n';
  }
  if (!schedule.feasible) {
    err << "infeasible: S(A,B_" << schedule.failing_bob
        << ") = " << format_number(schedule.chsh_values[schedule.failing_bob - 1]) << " <= 2\n";
    return kInfeasible;
  }
  return kOk;
}

int cmd_evaluate(const Options& opt, std::ostream& out, std::ostream&) {
  if (opt.config.empty()) throw Error(ErrorCode::InvalidArgument, "--config is required");
  const ScenarioConfig cfg = config_from_json(read_json_argument(opt.config, "config"));
  cfg.state.validate();
  const ScenarioResult res = evaluate_scenario(cfg);
  const Matrix3 t = downstream_correlations(cfg);
  json rows = json::array();
  for (int i = 0; i < 3; ++i) {
    rows.push_back({round12(t(i, 0)), round12(t(i, 1)), round12(t(i, 2))});
  }
  out << json{{"command", "evaluate"},
              {"version", kSchemaVersion},
              {"config", config_to_json(cfg)},
              {"result", result_to_json(res)},
              {"downstream_T", rows},
              {"conjecture_margin", round12(conjecture_margin(res))}}
             .dump(2)
      << '\n';
  return kOk;
}

int cmd_semi(const Options& opt, std::ostream& out, std::ostream&) {
  require_format(opt);
  const std::vector<double> grid = checked_grid(opt.grid.empty() ? "0:2.8:0.1" : opt.grid);
  if (opt.format == "csv") {
    out << "s,region1_closed,region3_curve\n";
    for (double s : grid) {
      out << format_number(s) << ',' << csv_cell(region1_at(s)) << ','
          << format_number(region3_curve(s)) << '\n';
    }
  } else {
    json rows = json::array();
    for (double s : grid) {
      rows.push_back({{"s", round12(s)},
                      {"region1_closed", optional_number(region1_at(s))},
                      {"region3_curve", round12(region3_curve(s))}});
    }
    out << json{{"command", "semi"},
                {"version", kSchemaVersion},
                {"max_exponent_d", round12(max_exponent_d())},
                {"rows", rows}}
               .dump(2)
        << '\n';
  }
  return kOk;
}

}  // namespace

std::vector<double> parse_grid(const std::string& text) {
  std::vector<double> grid;
  if (text.find(':') != std::string::npos) {
    std::vector<double> parts;
    std::stringstream ss(text);
    for (std::string token; std::getline(ss, token, ':');) parts.push_back(parse_number(token));
    if (parts.size() != 3) throw Error(ErrorCode::InvalidArgument, "grid must be start:stop:step");
    const double start = parts[0], stop = parts[1], step = parts[2];
    if (!(step > 0.0) || stop < start) {
      throw Error(ErrorCode::InvalidArgument, "grid needs step > 0 and start <= stop");
    }
    // Index-based stepping avoids drift; the last point is kept if within 1e-12.
    const auto count = static_cast<std::size_t>(std::floor((stop - start) / step + kGridTol)) + 1;
    for (std::size_t i = 0; i < count; ++i) grid.push_back(start + double(i) * step);
    if (std::abs(grid.back() - stop) <= kGridTol) grid.back() = stop;
  } else {
    std::stringstream ss(text);
    for (std::string token; std::getline(ss, token, ',');) grid.push_back(parse_number(token));
  }
  if (grid.empty()) throw Error(ErrorCode::InvalidArgument, "empty grid");
  return grid;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Sequential CHSH nonlocality on recycled qubits"};
  app.require_subcommand(1);
  Options opt;

  const auto add_common = [&](CLI::App* sub) {
    sub->add_option("--seed", opt.seed, "Random seed")->capture_default_str();
    sub->add_option("--output,-o", opt.output, "Output file (default stdout)");
    sub->add_option("--format", opt.format, "csv or json")->capture_default_str();
  };

  CLI::App* curve = app.add_subcommand("curve", "Optimize the S(A1,B1) vs S*(A2,B2) boundary");
  add_common(curve);
  curve->add_option("--grid", opt.grid, "start:stop:step or comma list of s values");
  curve->add_option("--mode", opt.mode,
                    "general-biased | unbiased | unbiased-singlet | "
                    "unbiased-singlet-equatorial | region2-ansatz")
      ->capture_default_str();
  curve->add_option("--budget", opt.budget, "Objective evaluations per grid point")
      ->capture_default_str();

  CLI::App* audit = app.add_subcommand("audit", "Randomized audits of the monogamy relations");
  add_common(audit);
  audit->add_option("--samples", opt.samples, "Samples per audit")->capture_default_str();

  CLI::App* multibob = app.add_subcommand("multibob", "Plan one Alice against N sequential Bobs");
  add_common(multibob);
  multibob->add_option("--n", opt.n_bobs, "Number of Bobs")->capture_default_str();
  multibob->add_option("--margin", opt.margin, "Target CHSH excess for Bobs 1..N-1")
      ->capture_default_str();
  multibob->add_option("--state", opt.state, "State JSON (inline or @file); default singlet");

  CLI::App* evaluate = app.add_subcommand("evaluate", "Evaluate one scenario");
  add_common(evaluate);
  evaluate->add_option("--config", opt.config, "Scenario JSON (inline or @file)");

  CLI::App* semi = app.add_subcommand("semi", "Tabulate the semi-analytic boundary curves");
  add_common(semi);
  semi->add_option("--grid", opt.grid, "start:stop:step or comma list of s values");

  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kConfigError;
  }

  std::ostringstream buffer;
  int code = kOk;
  try {
    if (curve->parsed()) {
      code = cmd_curve(opt, buffer, err);
    } else if (audit->parsed()) {
      code = cmd_audit(opt, buffer, err);
    } else if (multibob->parsed()) {
      code = cmd_multibob(opt, buffer, err);
    } else if (evaluate->parsed()) {
      code = cmd_evaluate(opt, buffer, err);
    } else {
      code = cmd_semi(opt, buffer, err);
    }
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return e.code() == ErrorCode::Infeasible ? kInfeasible : kConfigError;
  } catch (const nlohmann::json::exception& e) {
    err << "error: " << e.what() << '\n';
    return kConfigError;
  }

  if (opt.output.empty()) {
    out << buffer.str();
  } else {
    std::ofstream file(opt.output, std::ios::binary);
    if (!file || !(file << buffer.str())) {
      err << "error: cannot write " << opt.output << '\n';
      return kConfigError;
    }
  }
  return code;
}

}  // namespace bellrecycle::cli
