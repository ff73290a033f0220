#pragma once

#include <cstddef>
#include <cstdint>
#include <string>

#include <json.hpp>

namespace bellrecycle {

/// Outcome of a randomized check of one inequality. A sample violates it when
/// its margin is below -1e-9 (scenario audits) or -1e-12 (tradeoffs).
/// `worst_case` records the sample with the smallest margin verbatim, so a
/// violation can be replayed.
struct AuditReport {
  std::string name;
  std::size_t samples = 0;
  double worst_margin = 0.0;
  std::size_t violations = 0;
  nlohmann::json worst_case;
};

/// Samples are drawn in chunks of kAuditChunk; chunk i uses seed + i, so the
/// report does not depend on the worker count.
inline constexpr std::size_t kAuditChunk = 4096;

/// |S1| + S2* <= 8 sqrt(2)/3 over random orthogonal unbiased settings on
/// random pure states. Sample 0 is the saturating configuration.
AuditReport audit_theorem1(std::size_t samples, std::uint64_t seed);

/// |S1| + S2* <= 4 over random equal-strength unbiased settings. Sample 0 is
/// the saturating projective parallel configuration.
AuditReport audit_theorem2(std::size_t samples, std::uint64_t seed);

/// 1-S <= R^2 <= 1-S^2, D >= S >= D^2, |B| <= R^2 and R^2+S^2 >= 3/4 over
/// random observables; the margin is the smallest slack of the four.
AuditReport audit_tradeoffs(std::size_t samples, std::uint64_t seed);

/// |S1| + S2* <= 4, and never both S1 > 2 and S2* >= 2, over arbitrary
/// unbiased settings on random pure states.
AuditReport audit_conjecture(std::size_t samples, std::uint64_t seed);

nlohmann::json report_to_json(const AuditReport& report);

}  // namespace bellrecycle
