#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <json.hpp>

#include "bellrecycle/monogamy.hpp"

namespace bellrecycle {

/// Restrictions on the search space for max S*(A2,B2) s.t. |S(A1,B1)| = s.
enum class SearchMode {
  GeneralBiased,              // Schmidt angle + 4 x (r, alpha fraction, polar, azimuth)
  Unbiased,                   // Schmidt angle + 4 x (strength, polar, azimuth)
  UnbiasedSinglet,            // 4 x (strength, polar, azimuth)
  UnbiasedSingletEquatorial,  // 4 x (strength, planar angle)
  Region2Ansatz,              // S_X, S_X', S_Y = S_Y', theta
};

std::size_t parameter_count(SearchMode mode);
std::string_view to_string(SearchMode mode);
/// Accepts the names printed by to_string; throws InvalidArgument otherwise.
SearchMode search_mode_from_string(std::string_view name);

/// Box [lower_i, upper_i] for each parameter.
std::vector<std::pair<double, double>> parameter_bounds(SearchMode mode);

/// Maps a parameter vector onto a scenario. Observables are listed in the
/// order x, x', y, y'. In GeneralBiased mode each observable is (r, u, polar,
/// azimuth) with mixing angle alpha = u * asin(r). `variant` selects the x'
/// layout of Region2Ansatz: 0 for (1,0,0), 1 for (sin 2theta, cos 2theta, 0);
/// other modes ignore it.
ScenarioConfig decode_params(SearchMode mode, const std::vector<double>& params, int variant = 0);

/// Differential evolution settings (rand/1/bin with reflecting bounds).
struct DeConfig {
  std::size_t population = 64;
  double differential_weight = 0.7;
  double crossover_rate = 0.9;
  double initial_penalty = 10.0;
  std::size_t penalty_period = 50;  // generations between penalty doublings
  double constraint_tol = 1e-4;
  std::size_t restarts = 4;
  double polish_fraction = 0.1;  // share of the budget spent on the final local search
};

struct BoundaryPoint {
  double target_s = 0.0;
  double achieved_s = 0.0;
  double s_star = 0.0;
  std::vector<double> params;
  std::size_t evaluations = 0;
  std::uint64_t seed = 0;
  int variant = 0;  // Region2Ansatz x' layout of the returned point
};

inline constexpr std::size_t kMinimumBudget = 10000;

/// Best point found within `budget` objective evaluations. Deterministic in
/// (s, mode, budget, seed, config). Throws BudgetTooSmall below 10^4 and
/// DomainError for s outside [0, 2 sqrt 2].
BoundaryPoint boundary_point(double s, SearchMode mode, std::size_t budget, std::uint64_t seed,
                             const DeConfig& config = {});

/// One independent boundary_point per grid value (all with the same seed),
/// optimized in parallel and returned in grid order.
std::vector<BoundaryPoint> boundary_curve(const std::vector<double>& grid, SearchMode mode,
                                          std::size_t budget, std::uint64_t seed,
                                          const DeConfig& config = {});

nlohmann::json boundary_point_to_json(const BoundaryPoint& point);

}  // namespace bellrecycle
