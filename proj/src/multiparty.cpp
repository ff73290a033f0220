#include "bellrecycle/multiparty.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "bellrecycle/io.hpp"

namespace bellrecycle {
namespace {

constexpr double kBisectionTol = 1e-9;

MeasurementPair trivial_pair() {
  const Observable id = Observable::trivial(1.0);
  return {id, id};
}

void require_index(std::size_t k, std::size_t size, const char* who) {
  if (k < 1 || k > size) {
    throw Error(ErrorCode::IndexOutOfRange,
                std::string(who) + " index " + std::to_string(k) + " outside 1.." +
                    std::to_string(size));
  }
}

// Principal directions of T with the sign of v fixed so that u_i^T T v_i = +s_i.
struct Principal {
  Vector3 u1, u2, v1, v2;
  double s1, s2;
};

Principal principal_axes(const Matrix3& t) {
  Eigen::JacobiSVD<Matrix3> svd(t, Eigen::ComputeFullU | Eigen::ComputeFullV);
  Principal p;
  p.u1 = svd.matrixU().col(0);
  p.u2 = svd.matrixU().col(1);
  p.v1 = svd.matrixV().col(0);
  p.v2 = svd.matrixV().col(1);
  p.s1 = svd.singularValues()(0);
  p.s2 = svd.singularValues()(1);
  return p;
}

double chsh_after(const TwoQubitState& state, const MeasurementPair& alice,
                  const std::vector<MeasurementPair>& upstream, const MeasurementPair& bob,
                  const MeasurementKind& kind) {
  std::vector<Matrix3> ls;
  ls.reserve(upstream.size());
  for (const auto& b : upstream) ls.push_back(setting_channel(b.first, b.second, kind));
  return chsh_value(apply_chain(state, std::vector<Matrix3>{}, ls), alice, bob);
}

}  // namespace

double chain_chsh(const TwoQubitState& state, const ObserverPlan& alice_plan,
                  const ObserverPlan& bob_plan, std::size_t m, std::size_t n) {
  require_index(m, alice_plan.pairs.size(), "Alice");
  require_index(n, bob_plan.pairs.size(), "Bob");
  std::vector<Matrix3> ks;
  std::vector<Matrix3> ls;
  for (std::size_t i = 0; i + 1 < m; ++i) {
    const auto& p = alice_plan.pairs[i];
    ks.push_back(setting_channel(p.first, p.second, alice_plan.kind));
  }
  for (std::size_t j = 0; j + 1 < n; ++j) {
    const auto& p = bob_plan.pairs[j];
    ls.push_back(setting_channel(p.first, p.second, bob_plan.kind));
  }
  const TwoQubitState evolved = apply_chain(state, ks, ls);
  return chsh_value(evolved, alice_plan.pairs[m - 1], bob_plan.pairs[n - 1]);
}

ObserverPlan MultiBobSchedule::bob_plan() const { return {bobs, MeasurementKind::square_root()}; }

MultiBobSchedule schedule_multibob(const Matrix3& t, std::size_t n_bobs, double margin) {
  if (n_bobs == 0) throw Error(ErrorCode::PreconditionViolation, "need at least one Bob");
  if (!(margin > 0.0)) throw Error(ErrorCode::PreconditionViolation, "margin must be positive");
  const Principal axes = principal_axes(t);
  if (axes.s1 > 1.0 + tol::interface) {
    throw Error(ErrorCode::PreconditionViolation, "largest singular value of T exceeds 1");
  }

  MultiBobSchedule out;
  out.state = TwoQubitState::trusted(Vector3::Zero(), Vector3::Zero(), t);
  out.alice = {Observable::projective(axes.u1), Observable::projective(axes.u2)};
  const double beta = std::atan2(axes.s2, axes.s1);
  const Vector3 y = std::cos(beta) * axes.v1 + std::sin(beta) * axes.v2;
  const Vector3 y_prime = std::cos(beta) * axes.v1 - std::sin(beta) * axes.v2;
  const auto bob_pair = [&](double strength) -> MeasurementPair {
    return {Observable::unbiased(strength, y), Observable::unbiased(strength, y_prime)};
  };
  const MeasurementKind kind = MeasurementKind::square_root();
  const double target = 2.0 + margin;

  for (std::size_t n = 1; n <= n_bobs; ++n) {
    const auto value = [&](double strength) {
      return chsh_after(out.state, out.alice, out.bobs, bob_pair(strength), kind);
    };
    double strength = 1.0;
    if (n < n_bobs && value(1.0) > target) {
      double lo = 0.0;
      double hi = 1.0;
      while (hi - lo > kBisectionTol) {
        const double mid = 0.5 * (lo + hi);
        (value(mid) >= target ? hi : lo) = mid;
      }
      strength = hi;
    }
    out.chsh_values.push_back(value(strength));
    out.bobs.push_back(bob_pair(strength));
    out.bob_strengths.push_back(strength);
  }

  out.feasible = true;
  for (std::size_t n = 0; n < n_bobs; ++n) {
    if (!(out.chsh_values[n] > 2.0)) {
      out.feasible = false;
      out.failing_bob = n + 1;
      break;
    }
  }
  return out;
}

MultiBobSchedule plan_multibob(const Matrix3& t, std::size_t n_bobs, double margin) {
  MultiBobSchedule out = schedule_multibob(t, n_bobs, margin);
  if (!out.feasible) {
    throw Error(ErrorCode::Infeasible,
                "no CHSH violation for Bob " + std::to_string(out.failing_bob) +
                    ": S(A,B_n) = " + format_number(out.chsh_values[out.failing_bob - 1]));
  }
  return out;
}

NoiseRobustness noise_robustness(const MultiBobSchedule& schedule) {
  if (schedule.chsh_values.empty()) {
    throw Error(ErrorCode::NotNonlocal, "empty schedule");
  }
  NoiseRobustness out;
  out.s_min = *std::min_element(schedule.chsh_values.begin(), schedule.chsh_values.end());
  if (!(out.s_min > 2.0)) {
    throw Error(ErrorCode::NotNonlocal, "some S(A,B_n) does not exceed 2");
  }
  out.p_min = 2.0 / out.s_min;
  return out;
}

std::vector<double> noisy_chsh_values(const MultiBobSchedule& schedule, double p) {
  const TwoQubitState noisy = add_isotropic_noise(schedule.state, p);
  const ObserverPlan alice{{schedule.alice}, MeasurementKind::square_root()};
  const ObserverPlan bobs = schedule.bob_plan();
  std::vector<double> values;
  for (std::size_t n = 1; n <= bobs.pairs.size(); ++n) {
    values.push_back(chain_chsh(noisy, alice, bobs, 1, n));
  }
  return values;
}

Eigen::MatrixXd multipair_scenario(std::size_t m_alices, std::size_t n_bobs,
                                   const MultiBobSchedule& base) {
  if (m_alices == 0) throw Error(ErrorCode::PreconditionViolation, "need at least one Alice");
  require_index(n_bobs, base.bobs.size(), "Bob count");
  for (std::size_t n = 0; n < n_bobs; ++n) {
    if (!(base.chsh_values[n] > 2.0)) {
      throw Error(ErrorCode::Infeasible,
                  "base schedule has no CHSH violation for Bob " + std::to_string(n + 1));
    }
  }
  const ObserverPlan bobs{{base.bobs.begin(), base.bobs.begin() + n_bobs},
                          MeasurementKind::square_root()};
  // Copy q: Alice q measures the base pair there, every other Alice the
  // identity observable, which leaves the copy untouched.
  std::vector<ObserverPlan> alice_plans(m_alices);
  for (std::size_t q = 0; q < m_alices; ++q) {
    for (std::size_t m = 0; m < m_alices; ++m) {
      alice_plans[q].pairs.push_back(m == q ? base.alice : trivial_pair());
    }
  }
  Eigen::MatrixXd s(m_alices, n_bobs);
  for (std::size_t m = 1; m <= m_alices; ++m) {
    for (std::size_t n = 1; n <= n_bobs; ++n) {
      double best = -std::numeric_limits<double>::infinity();
      for (std::size_t q = 0; q < m_alices; ++q) {
        best = std::max(best, chain_chsh(base.state, alice_plans[q], bobs, m, n));
      }
      s(m - 1, n - 1) = best;
    }
  }
  return s;
}

nlohmann::json schedule_to_json(const MultiBobSchedule& schedule) {
  nlohmann::json bobs = nlohmann::json::array();
  for (std::size_t n = 0; n < schedule.bobs.size(); ++n) {
    bobs.push_back({{"n", n + 1},
                    {"strength", round12(schedule.bob_strengths[n])},
                    {"chsh_value", round12(schedule.chsh_values[n])},
                    {"settings", pair_to_json(schedule.bobs[n])}});
  }
  return {{"state", state_to_json(schedule.state)},
          {"alice", pair_to_json(schedule.alice)},
          {"bobs", bobs},
          {"feasible", schedule.feasible}};
}

}  // namespace bellrecycle
