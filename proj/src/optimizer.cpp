#include "bellrecycle/optimizer.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numbers>
#include <random>

#include "bellrecycle/io.hpp"
#include "bellrecycle/parallel.hpp"
#include "bellrecycle/sampling.hpp"

namespace bellrecycle {
namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kTsirelson = 2.0 * std::numbers::sqrt2;

Vector3 spherical(double polar, double azimuth) {
  return {std::sin(polar) * std::cos(azimuth), std::sin(polar) * std::sin(azimuth),
          std::cos(polar)};
}

Vector3 planar(double angle) { return {std::cos(angle), std::sin(angle), 0.0}; }

struct Evaluation {
  double achieved = 0.0;
  double s_star = 0.0;
};

Evaluation evaluate(SearchMode mode, const std::vector<double>& p, int variant) {
  const ScenarioResult res = evaluate_scenario(decode_params(mode, p, variant));
  return {std::abs(res.s_first), res.s_star_second};
}

// Every correlator is linear in each observable's row (B, S x^T), so
// multiplying both B and S of one side's observables by t scales S(A1,B1) by
// exactly t. `slots` lists where each observable of that side starts.
struct SideSlots {
  std::vector<std::size_t> alice;
  std::vector<std::size_t> bob;
};

SideSlots side_slots(SearchMode mode) {
  switch (mode) {
    case SearchMode::GeneralBiased:
      return {{1, 5}, {9, 13}};
    case SearchMode::Unbiased:
      return {{1, 4}, {7, 10}};
    case SearchMode::UnbiasedSinglet:
      return {{0, 3}, {6, 9}};
    case SearchMode::UnbiasedSingletEquatorial:
      return {{0, 2}, {4, 6}};
    case SearchMode::Region2Ansatz:
      return {{0, 1}, {2}};
  }
  return {};
}

// (r, u) encoding of the observable with bias t B and strength t S.
bool rescale_biased(double& r_param, double& u_param, double t) {
  const double r0 = std::clamp(r_param, 0.0, 1.0);
  const StrengthBias sb = from_reversibility_angle(r0, std::clamp(u_param, -1.0, 1.0) * std::asin(r0));
  const double strength = t * sb.strength;
  const double bias = t * sb.bias;
  if (strength + std::abs(bias) > 1.0) return false;
  const double r = reversibility(bias, strength);
  const double limit = std::asin(r);
  const double alpha = r > 0.0 ? std::asin(std::clamp(bias / r, -1.0, 1.0)) : 0.0;
  r_param = r;
  u_param = limit > 0.0 ? std::clamp(alpha / limit, -1.0, 1.0) : 0.0;
  return true;
}

bool rescale_side(SearchMode mode, std::vector<double>& p, const std::vector<std::size_t>& slots,
                  double t) {
  for (std::size_t i : slots) {
    if (mode == SearchMode::GeneralBiased) {
      if (!rescale_biased(p[i], p[i + 1], t)) return false;
    } else {
      p[i] *= t;
      if (p[i] > 1.0) return false;
    }
  }
  return true;
}

struct Candidate {
  std::vector<double> params;
  Evaluation eval;
};

bool feasible(const Candidate& c, double s, double tol) { return std::abs(c.eval.achieved - s) <= tol; }

double penalized(const Evaluation& e, double s, double lambda) {
  return e.s_star - lambda * std::abs(e.achieved - s);
}

// Penalty used to rank points that are all within tolerance. Near s = 2 sqrt 2
// the boundary has infinite slope, and ranking by raw S* there would reward
// using up the tolerance.
constexpr double kSelectionPenalty = 1e4;

// Feasible beats infeasible; feasible points then compare by the selection
// objective, infeasible ones by their violation.
bool better(const Candidate& a, const Candidate& b, double s, double tol) {
  const bool fa = feasible(a, s, tol);
  const bool fb = feasible(b, s, tol);
  if (fa != fb) return fa;
  if (fa) return penalized(a.eval, s, kSelectionPenalty) > penalized(b.eval, s, kSelectionPenalty);
  return std::abs(a.eval.achieved - s) < std::abs(b.eval.achieved - s);
}

class Search {
 public:
  Search(SearchMode mode, int variant, double s, const DeConfig& cfg)
      : mode_(mode), variant_(variant), s_(s), cfg_(cfg), bounds_(parameter_bounds(mode)),
        slots_(side_slots(mode)) {}

  std::size_t evaluations() const { return evaluations_; }

  Candidate evaluate_counted(std::vector<double> params) {
    ++evaluations_;
    const Evaluation e = evaluate(mode_, params, variant_);
    return {std::move(params), e};
  }

  // rand/1/bin with an adaptive penalty; returns the best member.
  Candidate differential_evolution(std::size_t budget, std::uint64_t seed, std::uint64_t stream) {
    std::seed_seq seq{seed, stream, static_cast<std::uint64_t>(variant_)};
    Rng rng(seq);
    const std::size_t dim = bounds_.size();
    const std::size_t np = std::max<std::size_t>(cfg_.population, 4);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    std::uniform_int_distribution<std::size_t> pick(0, np - 1);
    std::uniform_int_distribution<std::size_t> pick_dim(0, dim - 1);

    std::vector<Candidate> pop;
    pop.reserve(np);
    for (std::size_t i = 0; i < np; ++i) {
      std::vector<double> x(dim);
      for (std::size_t d = 0; d < dim; ++d) {
        x[d] = bounds_[d].first + unit(rng) * (bounds_[d].second - bounds_[d].first);
      }
      pop.push_back(evaluate_counted(std::move(x)));
    }
    const std::size_t used_at_start = evaluations_ - pop.size();
    double lambda = cfg_.initial_penalty;
    std::size_t generation = 0;

    std::vector<Candidate> trials(pop.size());
    while (evaluations_ - used_at_start + np <= budget) {
      for (std::size_t i = 0; i < np; ++i) {
        std::size_t r1, r2, r3;
        do r1 = pick(rng); while (r1 == i);
        do r2 = pick(rng); while (r2 == i || r2 == r1);
        do r3 = pick(rng); while (r3 == i || r3 == r1 || r3 == r2);
        const std::size_t forced = pick_dim(rng);
        std::vector<double> y = pop[i].params;
        for (std::size_t d = 0; d < dim; ++d) {
          if (d != forced && unit(rng) >= cfg_.crossover_rate) continue;
          double v = pop[r1].params[d] +
                     cfg_.differential_weight * (pop[r2].params[d] - pop[r3].params[d]);
          const auto [lo, hi] = bounds_[d];
          if (v < lo) v = lo + (lo - v);
          if (v > hi) v = hi - (v - hi);
          y[d] = std::clamp(v, lo, hi);
        }
        trials[i] = evaluate_counted(std::move(y));
      }
      for (std::size_t i = 0; i < np; ++i) {
        if (penalized(trials[i].eval, s_, lambda) >= penalized(pop[i].eval, s_, lambda)) {
          pop[i] = std::move(trials[i]);
        }
      }
      ++generation;
      if (generation % cfg_.penalty_period == 0) {
        const auto best = best_by_penalty(pop, lambda);
        if (!feasible(*best, s_, cfg_.constraint_tol)) lambda *= 2.0;
      }
    }
    lambda_ = std::max(lambda_, lambda);

    Candidate best = pop.front();
    for (const auto& c : pop) {
      if (better(c, best, s_, cfg_.constraint_tol)) best = c;
    }
    return best;
  }

  // Rescales one side so that |S(A1,B1)| = s exactly; keeps whichever
  // admissible rescaling gives the largest S*.
  Candidate repair(const Candidate& c) {
    if (c.eval.achieved == s_ || c.eval.achieved <= 0.0) return c;
    const double t = s_ / c.eval.achieved;
    Candidate best = c;
    const auto try_scale = [&](double ta, double tb) {
      std::vector<double> p = c.params;
      if (!rescale_side(mode_, p, slots_.alice, ta) || !rescale_side(mode_, p, slots_.bob, tb)) {
        return;
      }
      Candidate r = evaluate_counted(std::move(p));
      if (better(r, best, s_, 0.0) ||
          (!feasible(best, s_, 0.0) && better(r, best, s_, cfg_.constraint_tol))) {
        best = std::move(r);
      }
    };
    try_scale(t, 1.0);
    try_scale(1.0, t);
    try_scale(std::sqrt(t), std::sqrt(t));
    return best;
  }

  // Compass search from `start` on the penalized, repaired objective.
  Candidate polish(Candidate start, std::size_t budget) {
    const double lambda = std::max(lambda_, kSelectionPenalty);
    const std::size_t stop = evaluations_ + budget;
    Candidate best = repair(start);
    std::vector<double> step(bounds_.size());
    for (std::size_t d = 0; d < step.size(); ++d) {
      step[d] = 0.05 * (bounds_[d].second - bounds_[d].first);
    }
    double scale = 1.0;
    while (scale > 1e-9 && evaluations_ + 8 <= stop) {
      bool improved = false;
      for (std::size_t d = 0; d < bounds_.size() && evaluations_ + 8 <= stop; ++d) {
        for (double sign : {1.0, -1.0}) {
          std::vector<double> p = best.params;
          p[d] = std::clamp(p[d] + sign * scale * step[d], bounds_[d].first, bounds_[d].second);
          if (p[d] == best.params[d]) continue;
          Candidate c = repair(evaluate_counted(std::move(p)));
          if (penalized(c.eval, s_, lambda) > penalized(best.eval, s_, lambda)) {
            best = std::move(c);
            improved = true;
            break;
          }
        }
      }
      if (!improved) scale *= 0.5;
    }
    return best;
  }

 private:
  const Candidate* best_by_penalty(const std::vector<Candidate>& pop, double lambda) const {
    const Candidate* best = &pop.front();
    for (const auto& c : pop) {
      if (penalized(c.eval, s_, lambda) > penalized(best->eval, s_, lambda)) best = &c;
    }
    return best;
  }

  SearchMode mode_;
  int variant_;
  double s_;
  DeConfig cfg_;
  std::vector<std::pair<double, double>> bounds_;
  SideSlots slots_;
  std::size_t evaluations_ = 0;
  double lambda_ = 0.0;
};

struct Outcome {
  Candidate best;
  std::size_t evaluations;
};

Outcome optimize_variant(double s, SearchMode mode, int variant, std::size_t budget,
                         std::uint64_t seed, const DeConfig& cfg) {
  Search search(mode, variant, s, cfg);
  const auto polish_budget = static_cast<std::size_t>(cfg.polish_fraction * double(budget));
  const std::size_t restarts = std::max<std::size_t>(cfg.restarts, 1);
  const std::size_t per_restart = (budget - polish_budget) / restarts;
  Candidate best;
  bool have = false;
  for (std::size_t k = 0; k < restarts; ++k) {
    Candidate c = search.differential_evolution(per_restart, seed, k);
    if (!have || better(c, best, s, cfg.constraint_tol)) {
      best = std::move(c);
      have = true;
    }
  }
  const std::size_t left = budget > search.evaluations() ? budget - search.evaluations() : 0;
  Candidate polished = search.polish(best, left);
  if (better(polished, best, s, cfg.constraint_tol)) best = std::move(polished);
  return {std::move(best), search.evaluations()};
}

}  // namespace

std::size_t parameter_count(SearchMode mode) {
  switch (mode) {
    case SearchMode::GeneralBiased:
      return 17;
    case SearchMode::Unbiased:
      return 13;
    case SearchMode::UnbiasedSinglet:
      return 12;
    case SearchMode::UnbiasedSingletEquatorial:
      return 8;
    case SearchMode::Region2Ansatz:
      return 4;
  }
  throw Error(ErrorCode::InvalidArgument, "unknown search mode");
}

std::string_view to_string(SearchMode mode) {
  switch (mode) {
    case SearchMode::GeneralBiased:
      return "general-biased";
    case SearchMode::Unbiased:
      return "unbiased";
    case SearchMode::UnbiasedSinglet:
      return "unbiased-singlet";
    case SearchMode::UnbiasedSingletEquatorial:
      return "unbiased-singlet-equatorial";
    case SearchMode::Region2Ansatz:
      return "region2-ansatz";
  }
  return "unknown";
}

SearchMode search_mode_from_string(std::string_view name) {
  for (SearchMode m : {SearchMode::GeneralBiased, SearchMode::Unbiased, SearchMode::UnbiasedSinglet,
                       SearchMode::UnbiasedSingletEquatorial, SearchMode::Region2Ansatz}) {
    if (to_string(m) == name) return m;
  }
  throw Error(ErrorCode::InvalidArgument, "unknown search mode '" + std::string(name) + "'");
}

std::vector<std::pair<double, double>> parameter_bounds(SearchMode mode) {
  std::vector<std::pair<double, double>> b;
  const std::pair<double, double> unit{0.0, 1.0};
  const std::pair<double, double> polar{0.0, kPi};
  const std::pair<double, double> azimuth{0.0, 2.0 * kPi};
  switch (mode) {
    case SearchMode::GeneralBiased:
      b.push_back({0.0, kPi / 4.0});
      for (int i = 0; i < 4; ++i) {
        b.insert(b.end(), {unit, {-1.0, 1.0}, polar, azimuth});
      }
      break;
    case SearchMode::Unbiased:
      b.push_back({0.0, kPi / 4.0});
      for (int i = 0; i < 4; ++i) b.insert(b.end(), {unit, polar, azimuth});
      break;
    case SearchMode::UnbiasedSinglet:
      for (int i = 0; i < 4; ++i) b.insert(b.end(), {unit, polar, azimuth});
      break;
    case SearchMode::UnbiasedSingletEquatorial:
      for (int i = 0; i < 4; ++i) b.insert(b.end(), {unit, azimuth});
      break;
    case SearchMode::Region2Ansatz:
      b = {unit, unit, unit, {0.0, kPi}};
      break;
  }
  return b;
}

ScenarioConfig decode_params(SearchMode mode, const std::vector<double>& p, int variant) {
  if (p.size() != parameter_count(mode)) {
    throw Error(ErrorCode::LengthMismatch, "parameter vector length does not match search mode");
  }
  ScenarioConfig cfg;
  std::array<Observable, 4> obs;
  switch (mode) {
    case SearchMode::GeneralBiased: {
      cfg.state = from_schmidt(std::clamp(p[0], 0.0, kPi / 4.0));
      for (std::size_t i = 0; i < 4; ++i) {
        const double* q = &p[1 + 4 * i];
        const double r = std::clamp(q[0], 0.0, 1.0);
        const double alpha = std::clamp(q[1], -1.0, 1.0) * std::asin(r);
        const StrengthBias sb = from_reversibility_angle(r, alpha);
        obs[i] = Observable::make(sb.bias, sb.strength, spherical(q[2], q[3]));
      }
      break;
    }
    case SearchMode::Unbiased:
    case SearchMode::UnbiasedSinglet: {
      const std::size_t offset = mode == SearchMode::Unbiased ? 1 : 0;
      cfg.state = offset ? from_schmidt(std::clamp(p[0], 0.0, kPi / 4.0)) : singlet();
      for (std::size_t i = 0; i < 4; ++i) {
        const double* q = &p[offset + 3 * i];
        obs[i] = Observable::unbiased(std::clamp(q[0], 0.0, 1.0), spherical(q[1], q[2]));
      }
      break;
    }
    case SearchMode::UnbiasedSingletEquatorial:
      cfg.state = singlet();
      for (std::size_t i = 0; i < 4; ++i) {
        obs[i] = Observable::unbiased(std::clamp(p[2 * i], 0.0, 1.0), planar(p[2 * i + 1]));
      }
      break;
    case SearchMode::Region2Ansatz: {
      cfg.state = singlet();
      const double theta = p[3];
      const Vector3 x_prime = variant == 0 ? Vector3(1.0, 0.0, 0.0)
                                           : Vector3(std::sin(2.0 * theta), std::cos(2.0 * theta), 0.0);
      const double sy = std::clamp(p[2], 0.0, 1.0);
      obs[0] = Observable::unbiased(std::clamp(p[0], 0.0, 1.0), Vector3(0.0, 1.0, 0.0));
      obs[1] = Observable::unbiased(std::clamp(p[1], 0.0, 1.0), x_prime);
      obs[2] = Observable::unbiased(sy, Vector3(std::sin(theta), std::cos(theta), 0.0));
      obs[3] = Observable::unbiased(sy, Vector3(-std::sin(theta), std::cos(theta), 0.0));
      break;
    }
  }
  cfg.alice = {obs[0], obs[1]};
  cfg.bob = {obs[2], obs[3]};
  return cfg;
}

BoundaryPoint boundary_point(double s, SearchMode mode, std::size_t budget, std::uint64_t seed,
                             const DeConfig& config) {
  if (budget < kMinimumBudget) {
    throw Error(ErrorCode::BudgetTooSmall, "evaluation budget below 10^4");
  }
  if (!(s >= -tol::construction && s <= kTsirelson + tol::construction)) {
    throw Error(ErrorCode::DomainError, "target s outside [0, 2 sqrt 2]");
  }
  s = std::clamp(s, 0.0, kTsirelson);

  const int variants = mode == SearchMode::Region2Ansatz ? 2 : 1;
  BoundaryPoint point;
  point.target_s = s;
  point.seed = seed;
  Candidate best;
  bool have = false;
  for (int v = 0; v < variants; ++v) {
    Outcome out = optimize_variant(s, mode, v, budget / variants, seed, config);
    point.evaluations += out.evaluations;
    if (!have || better(out.best, best, s, config.constraint_tol)) {
      best = std::move(out.best);
      point.variant = v;
      have = true;
    }
  }
  point.achieved_s = best.eval.achieved;
  point.s_star = best.eval.s_star;
  point.params = std::move(best.params);
  return point;
}

std::vector<BoundaryPoint> boundary_curve(const std::vector<double>& grid, SearchMode mode,
                                          std::size_t budget, std::uint64_t seed,
                                          const DeConfig& config) {
  if (grid.empty()) throw Error(ErrorCode::InvalidArgument, "empty grid");
  if (budget < kMinimumBudget) {
    throw Error(ErrorCode::BudgetTooSmall, "evaluation budget below 10^4");
  }
  std::vector<BoundaryPoint> points(grid.size());
  parallel_for(grid.size(), [&](std::size_t i) {
    points[i] = boundary_point(grid[i], mode, budget, seed, config);
  });
  return points;
}

nlohmann::json boundary_point_to_json(const BoundaryPoint& point) {
  nlohmann::json params = nlohmann::json::array();
  for (double v : point.params) params.push_back(round12(v));
  return {{"target_s", round12(point.target_s)},
          {"achieved_s", round12(point.achieved_s)},
          {"s_star", round12(point.s_star)},
          {"seed", point.seed},
          {"evaluations", point.evaluations},
          {"variant", point.variant},
          {"params", params}};
}

}  // namespace bellrecycle
