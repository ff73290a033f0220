#include "bellrecycle/audit.hpp"

#include <algorithm>
#include <functional>
#include <limits>
#include <vector>

#include "bellrecycle/io.hpp"
#include "bellrecycle/monogamy.hpp"
#include "bellrecycle/parallel.hpp"
#include "bellrecycle/sampling.hpp"

namespace bellrecycle {
namespace {

struct ChunkResult {
  double worst_margin = std::numeric_limits<double>::infinity();
  std::size_t violations = 0;
  nlohmann::json worst_case;
};

// `draw(rng, index)` returns the margin of one sample and, when asked,
// a JSON description of it.
using Drawer = std::function<double(Rng&, std::size_t, nlohmann::json*)>;

AuditReport run_audit(const std::string& name, std::size_t samples, std::uint64_t seed,
                      double tolerance, const Drawer& draw) {
  const std::size_t chunks = (samples + kAuditChunk - 1) / kAuditChunk;
  std::vector<ChunkResult> results(chunks);
  parallel_for(chunks, [&](std::size_t c) {
    const std::size_t begin = c * kAuditChunk;
    const std::size_t end = std::min(samples, begin + kAuditChunk);
    ChunkResult& out = results[c];
    Rng rng(seed + c);
    Rng worst_rng = rng;
    std::size_t worst_index = begin;
    for (std::size_t i = begin; i < end; ++i) {
      const Rng before = rng;
      const double margin = draw(rng, i, nullptr);
      if (margin < -tolerance) ++out.violations;
      if (margin < out.worst_margin) {
        out.worst_margin = margin;
        worst_rng = before;
        worst_index = i;
      }
    }
    if (end > begin) draw(worst_rng, worst_index, &out.worst_case);
  });

  AuditReport report;
  report.name = name;
  report.samples = samples;
  report.worst_margin = std::numeric_limits<double>::infinity();
  for (const auto& r : results) {
    report.violations += r.violations;
    if (r.worst_margin < report.worst_margin) {
      report.worst_margin = r.worst_margin;
      report.worst_case = r.worst_case;
    }
  }
  return report;
}

double scenario_margin(const ScenarioConfig& cfg, double bound, nlohmann::json* describe) {
  const ScenarioResult res = evaluate_scenario(cfg);
  const double margin = bound - (std::abs(res.s_first) + res.s_star_second);
  if (describe) *describe = {{"config", config_to_json(cfg)}, {"result", result_to_json(res)}};
  return margin;
}

}  // namespace

AuditReport audit_theorem1(std::size_t samples, std::uint64_t seed) {
  return run_audit("theorem1", samples, seed, tol::interface, [](Rng& rng, std::size_t i, nlohmann::json* d) {
    const ScenarioConfig cfg = i == 0 ? theorem1_saturating_config() : random_orthogonal_config(rng);
    return scenario_margin(cfg, kTheorem1Bound, d);
  });
}

AuditReport audit_theorem2(std::size_t samples, std::uint64_t seed) {
  return run_audit("theorem2", samples, seed, tol::interface, [](Rng& rng, std::size_t i, nlohmann::json* d) {
    const ScenarioConfig cfg =
        i == 0 ? theorem2_saturating_config() : random_equal_strength_config(rng);
    return scenario_margin(cfg, kTheorem2Bound, d);
  });
}

AuditReport audit_tradeoffs(std::size_t samples, std::uint64_t seed) {
  return run_audit("tradeoffs", samples, seed, tol::construction, [](Rng& rng, std::size_t, nlohmann::json* d) {
    const Observable obs = random_observable(rng);
    const double s = obs.strength();
    const double r = reversibility(obs);
    const double dec = decoherence(obs);
    const double r2 = r * r;
    const double margin = std::min({r2 - (1.0 - s), (1.0 - s * s) - r2, dec - s, s - dec * dec,
                                    r2 - std::abs(obs.bias()), r2 + s * s - 0.75});
    if (d) {
      *d = {{"observable", observable_to_json(obs)},
            {"reversibility", round12(r)},
            {"decoherence", round12(dec)}};
    }
    return margin;
  });
}

AuditReport audit_conjecture(std::size_t samples, std::uint64_t seed) {
  return run_audit("conjecture", samples, seed, tol::interface, [](Rng& rng, std::size_t, nlohmann::json* d) {
    const ScenarioConfig cfg = random_unbiased_config(rng);
    const double margin = scenario_margin(cfg, 4.0, d);
    const ScenarioResult res = evaluate_scenario(cfg);
    if (std::abs(res.s_first) > 2.0 && res.s_star_second >= 2.0) return -1.0;
    return margin;
  });
}

nlohmann::json report_to_json(const AuditReport& report) {
  return {{"name", report.name},
          {"samples", report.samples},
          {"worst_margin", round12(report.worst_margin)},
          {"violations", report.violations},
          {"worst_case", report.worst_case}};
}

}  // namespace bellrecycle
