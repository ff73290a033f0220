#pragma once

#include <Eigen/Dense>
#include <span>
#include <vector>

#include "bellrecycle/errors.hpp"
#include "bellrecycle/observables.hpp"
#include "bellrecycle/states.hpp"

namespace bellrecycle {

/// How a two-valued observable is physically measured. All three models act
/// on the ensemble as dephasing about the observable's axis; they differ only
/// in how much off-diagonal coherence survives.
enum class MeasurementModel {
  SquareRoot,   // X_pm^{1/2} rho X_pm^{1/2}; factor = reversibility
  SimpleModel,  // projective with probability S, coin flip otherwise; factor = 1 - S
  WeakPointer,  // pointer-based weak measurement; factor = quality F <= R, unbiased only
};

template <typename Scalar>
struct BasicMeasurementKind {
  MeasurementModel model = MeasurementModel::SquareRoot;
  Scalar quality = Scalar(0);  // WeakPointer only

  static BasicMeasurementKind square_root() { return {MeasurementModel::SquareRoot, Scalar(0)}; }
  static BasicMeasurementKind simple_model() { return {MeasurementModel::SimpleModel, Scalar(0)}; }
  static BasicMeasurementKind weak_pointer(Scalar quality) {
    return {MeasurementModel::WeakPointer, quality};
  }
};
using MeasurementKind = BasicMeasurementKind<double>;

template <typename Scalar>
struct BasicDephasingChannel {
  Vec3<Scalar> axis = Vec3<Scalar>::UnitZ();
  Scalar factor = Scalar(1);
};
using DephasingChannel = BasicDephasingChannel<double>;

template <typename Scalar>
BasicDephasingChannel<Scalar> channel_of(const BasicObservable<Scalar>& obs,
                                         const BasicMeasurementKind<Scalar>& kind) {
  switch (kind.model) {
    case MeasurementModel::SquareRoot:
      return {obs.direction(), reversibility(obs)};
    case MeasurementModel::SimpleModel:
      return {obs.direction(), Scalar(1) - obs.strength()};
    case MeasurementModel::WeakPointer: {
      if (!obs.is_unbiased()) {
        throw Error(ErrorCode::BiasedWeakPointer, "weak-pointer model needs an unbiased observable");
      }
      if (!(kind.quality >= Scalar(0))) {
        throw Error(ErrorCode::QualityExceedsReversibility, "quality factor must be >= 0");
      }
      if (kind.quality > reversibility(obs) + Scalar(tol::construction)) {
        throw Error(ErrorCode::QualityExceedsReversibility, "quality factor exceeds reversibility");
      }
      return {obs.direction(), kind.quality};
    }
  }
  throw Error(ErrorCode::InvalidArgument, "unknown measurement model");
}

/// eta * I + (1 - eta) * axis axis^T.
template <typename Scalar>
Mat3<Scalar> transfer_matrix(const BasicDephasingChannel<Scalar>& ch) {
  return ch.factor * Mat3<Scalar>::Identity() +
         (Scalar(1) - ch.factor) * ch.axis * ch.axis.transpose();
}

/// Ensemble transfer matrix of an observer who measures one of two
/// observables with equal probability.
template <typename Scalar>
Mat3<Scalar> setting_channel(const BasicObservable<Scalar>& first,
                             const BasicObservable<Scalar>& second,
                             const BasicMeasurementKind<Scalar>& kind) {
  return Scalar(0.5) * (transfer_matrix(channel_of(first, kind)) +
                        transfer_matrix(channel_of(second, kind)));
}

enum class Side { Alice, Bob };

/// Applies a local unital channel with transfer matrix K to one side:
/// Alice a -> K a, T -> K T; Bob b -> K b, T -> T K^T.
template <typename Scalar>
BasicTwoQubitState<Scalar> apply_local(const BasicTwoQubitState<Scalar>& state, Side side,
                                       const Mat3<Scalar>& k, bool unital = true) {
  if (!unital) {
    // The affine term of a non-unital channel is not modelled.
    throw Error(ErrorCode::NonUnitalInstrument, "only unital local channels are supported");
  }
  if (side == Side::Alice) {
    return BasicTwoQubitState<Scalar>::trusted(k * state.alice_bloch(), state.bob_bloch(),
                                               k * state.correlations());
  }
  return BasicTwoQubitState<Scalar>::trusted(state.alice_bloch(), k * state.bob_bloch(),
                                             state.correlations() * k.transpose());
}

/// Sequential local channels: T -> K_m ... K_1 T L_1^T ... L_n^T, with the
/// Bloch vectors following the same left products.
template <typename Scalar>
BasicTwoQubitState<Scalar> apply_chain(const BasicTwoQubitState<Scalar>& state,
                                       std::span<const Mat3<Scalar>> alice_channels,
                                       std::span<const Mat3<Scalar>> bob_channels) {
  Mat3<Scalar> left = Mat3<Scalar>::Identity();
  for (const auto& k : alice_channels) left = k * left;
  Mat3<Scalar> right = Mat3<Scalar>::Identity();
  for (const auto& l : bob_channels) right = l * right;
  return BasicTwoQubitState<Scalar>::trusted(left * state.alice_bloch(),
                                             right * state.bob_bloch(),
                                             left * state.correlations() * right.transpose());
}

template <typename Scalar>
BasicTwoQubitState<Scalar> apply_chain(const BasicTwoQubitState<Scalar>& state,
                                       const std::vector<Mat3<Scalar>>& alice_channels,
                                       const std::vector<Mat3<Scalar>>& bob_channels) {
  return apply_chain(state, std::span<const Mat3<Scalar>>(alice_channels),
                     std::span<const Mat3<Scalar>>(bob_channels));
}

}  // namespace bellrecycle
