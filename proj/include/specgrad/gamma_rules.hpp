#pragma once

#include <optional>

#include "specgrad/errors.hpp"
#include "specgrad/rng.hpp"
#include "specgrad/stepsizes.hpp"

namespace specgrad {

/// Per-run mutable state consumed by the gamma selection rules.  One
/// instance per solver run; never shared between runs.
template <typename Scalar>
struct StrategyState {
  std::optional<Scalar> prev_alpha;      // stepsize used at the previous iteration
  long k = 1;                            // 1-based iteration counter
  long m = 8;                            // cycle length for refreshed schemes
  std::optional<Scalar> fixed_gamma;
  SplitMix64* rng = nullptr;             // non-owning handle to the run's stream
};

/// gamma_k held constant over the whole run.
template <typename Scalar>
Scalar gamma_fixed(const StrategyState<Scalar>& state) {
  if (!state.fixed_gamma) throw MissingParameter("fixed_gamma");
  return *state.fixed_gamma;
}

/// gamma_k drawn uniformly from the open interval (0, 1); consumes exactly
/// one stream value.
template <typename Scalar>
Scalar gamma_random(StrategyState<Scalar>& state) {
  if (state.rng == nullptr) throw MissingParameter("rng");
  return Scalar(state.rng->next_open());
}

/// Cyclic rule: the gamma whose family stepsize best matches the previous
/// stepsize, gamma = clamp((alpha_prev - bb2) / (bb1 - bb2), [0, 1]).
template <typename Scalar>
Scalar gamma_cyclic(const StrategyState<Scalar>& state, const StepInterval<Scalar>& iv) {
  if (!state.prev_alpha) throw MissingParameter("prev_alpha");
  if (iv.degenerate()) return Scalar(1);
  const Scalar g = (*state.prev_alpha - iv.bb2) / (iv.bb1 - iv.bb2);
  return std::min(Scalar(1), std::max(Scalar(0), g));
}

/// Adaptive truncated cyclic stepsize: reuse the previous stepsize clipped
/// into [bb2, bb1].
template <typename Scalar>
Scalar atc_step(const StrategyState<Scalar>& state, const StepInterval<Scalar>& iv) {
  if (!state.prev_alpha) throw MissingParameter("prev_alpha");
  const Scalar prev = *state.prev_alpha;
  if (prev <= iv.bb2) return iv.bb2;
  if (prev >= iv.bb1) return iv.bb1;
  return prev;
}

/// ATC with a periodic refresh every m iterations: when mod(k, m) = 0 the
/// stepsize is recomputed as bb1 (variant 1), bb2 (variant 2) or the
/// geometric mean (variant 3).
template <typename Scalar>
Scalar atc_variant_step(int variant, const StrategyState<Scalar>& state,
                        const StepInterval<Scalar>& iv, const GradientPair<Scalar>& p) {
  if (!state.prev_alpha) throw MissingParameter("prev_alpha");
  if (state.m >= 1 && state.k % state.m == 0) {
    switch (variant) {
      case 1: return iv.bb1;
      case 2: return iv.bb2;
      case 3: return compute_geomean(p);
      default: throw MissingParameter("atc variant must be 1, 2 or 3");
    }
  }
  return atc_step(state, iv);
}

using StrategyStated = StrategyState<double>;

}  // namespace specgrad
