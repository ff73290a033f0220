#pragma once

#include <cstddef>
#include <vector>

#include <json.hpp>

#include "bellrecycle/bell.hpp"
#include "bellrecycle/instruments.hpp"
#include "bellrecycle/states.hpp"

namespace bellrecycle {

/// Settings of a sequence of observers on one side, first observer first.
struct ObserverPlan {
  std::vector<MeasurementPair> pairs;
  MeasurementKind kind = MeasurementKind::square_root();
};

/// S(A_m, B_n), 1-based: Alices 1..m-1 and Bobs 1..n-1 act first through
/// their setting channels. Throws IndexOutOfRange.
double chain_chsh(const TwoQubitState& state, const ObserverPlan& alice_plan,
                  const ObserverPlan& bob_plan, std::size_t m, std::size_t n);

/// One projective Alice against a chain of unsharp Bobs.
struct MultiBobSchedule {
  TwoQubitState state;
  MeasurementPair alice;
  std::vector<MeasurementPair> bobs;
  std::vector<double> bob_strengths;
  std::vector<double> chsh_values;  // S(A, B_n), recorded even when <= 2
  bool feasible = false;
  std::size_t failing_bob = 0;  // 1-based; 0 when feasible

  ObserverPlan bob_plan() const;
};

/// Greedy planner without the feasibility check: Alice measures along the
/// two principal directions of T; every Bob measures an equal-strength
/// unbiased pair at the optimal CHSH directions of T. Bobs 1..N-1 take the
/// smallest strength reaching 2 + margin (bisection to 1e-9), or strength 1
/// if that is out of reach; Bob N uses strength 1.
MultiBobSchedule schedule_multibob(const Matrix3& t, std::size_t n_bobs, double margin);

/// schedule_multibob, throwing Infeasible (naming the first failing Bob) if
/// some S(A, B_n) <= 2. Throws PreconditionViolation for s1(T) > 1, n_bobs
/// == 0 or margin <= 0.
MultiBobSchedule plan_multibob(const Matrix3& t, std::size_t n_bobs, double margin);

struct NoiseRobustness {
  double s_min = 0.0;
  double p_min = 0.0;  // 2 / s_min
};

/// Throws NotNonlocal unless every S(A, B_n) exceeds 2.
NoiseRobustness noise_robustness(const MultiBobSchedule& schedule);

/// S(A, B_n) for every Bob with the schedule run on the state mixed with
/// white noise at visibility p.
std::vector<double> noisy_chsh_values(const MultiBobSchedule& schedule, double p);

/// M Alices and N Bobs sharing M copies of the schedule's state. Alice m
/// measures the schedule's pair on copy m and the trivial observable (B=1,
/// S=0) on every other copy; each Bob follows the schedule on every copy.
/// Returns S_mn = max over copies q of S_q(A_m, B_n).
Eigen::MatrixXd multipair_scenario(std::size_t m_alices, std::size_t n_bobs,
                                   const MultiBobSchedule& base);

nlohmann::json schedule_to_json(const MultiBobSchedule& schedule);

}  // namespace bellrecycle
