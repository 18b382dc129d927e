#pragma once

#include <Eigen/Core>

#include <algorithm>
#include <cmath>
#include <limits>

#include "specgrad/errors.hpp"

namespace specgrad {

// Curvature guard: s'y below this multiple of max(s's, y'y) is treated as
// non-positive curvature (unreachable on strictly convex quadratics away
// from round-off scale).
inline constexpr double kCurvatureGuard = 1e-30;

/// Displacement / gradient-difference pair with cached inner products.
/// All stepsize formulas below are functions of (ss, sy, yy) only; the
/// vectors are kept so callers can evaluate the underlying least-squares
/// objectives directly.
template <typename Scalar>
struct GradientPair {
  using Vector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

  Vector s;   // x_k - x_{k-1}
  Vector y;   // g_k - g_{k-1}
  Scalar ss;  // s's
  Scalar sy;  // s'y
  Scalar yy;  // y'y

  bool curvature_positive() const {
    return sy > kCurvatureGuard * std::max(ss, yy) && sy > Scalar(0);
  }
};

/// Build a GradientPair from any vector expressions, caching the products.
template <typename DerivedS, typename DerivedY>
GradientPair<typename DerivedS::Scalar> make_gradient_pair(
    const Eigen::MatrixBase<DerivedS>& s, const Eigen::MatrixBase<DerivedY>& y) {
  using Scalar = typename DerivedS::Scalar;
  if (s.size() != y.size() || s.size() < 1)
    throw DimensionMismatch("gradient pair: dim(s) != dim(y) or empty");
  GradientPair<Scalar> p;
  p.s = s.eval();
  p.y = y.eval();
  p.ss = p.s.squaredNorm();
  p.sy = p.s.dot(p.y);
  p.yy = p.y.squaredNorm();
  return p;
}

/// Long BB stepsize, s's / s'y.
template <typename Scalar>
Scalar compute_bb1(const GradientPair<Scalar>& p) {
  if (!p.curvature_positive()) throw CurvatureNonPositive();
  if (p.ss == Scalar(0)) throw DegeneratePair("compute_bb1: s = 0");
  return p.ss / p.sy;
}

/// Short BB stepsize, s'y / y'y.
template <typename Scalar>
Scalar compute_bb2(const GradientPair<Scalar>& p) {
  if (!p.curvature_positive()) throw CurvatureNonPositive();
  return p.sy / p.yy;
}

/// Geometric mean of the two BB stepsizes, ||s|| / ||y||.
template <typename Scalar>
Scalar compute_geomean(const GradientPair<Scalar>& p) {
  if (p.ss == Scalar(0) || p.yy == Scalar(0)) throw DegeneratePair("compute_geomean: s or y = 0");
  return std::sqrt(p.ss / p.yy);
}

/// The admissible stepsize interval [bb2, bb1].
template <typename Scalar>
struct StepInterval {
  Scalar bb1;  // long stepsize
  Scalar bb2;  // short stepsize, bb2 <= bb1

  bool degenerate() const { return bb2 >= bb1; }
};

template <typename Scalar>
StepInterval<Scalar> make_step_interval(const GradientPair<Scalar>& p) {
  StepInterval<Scalar> iv;
  iv.bb1 = compute_bb1(p);
  // Cauchy-Schwarz gives bb2 <= bb1 in exact arithmetic; enforce it so the
  // interval is always well formed.
  iv.bb2 = std::min(compute_bb2(p), iv.bb1);
  return iv;
}

/// Convex combination gamma*bb1 + (1-gamma)*bb2, clamped into [bb2, bb1].
template <typename Scalar>
Scalar family_step(Scalar gamma, const StepInterval<Scalar>& iv) {
  if (!(gamma >= Scalar(0) && gamma <= Scalar(1))) throw GammaOutOfRange(double(gamma));
  if (iv.degenerate()) return iv.bb1;
  const Scalar a = gamma * iv.bb1 + (Scalar(1) - gamma) * iv.bb2;
  return std::min(std::max(a, iv.bb2), iv.bb1);
}

/// Scaled derivative of the combined secant least-squares objective,
///   psi(tau, alpha) = (1-tau) y'y (alpha^3 - alpha^2 bb2) + tau s'y (alpha - bb1).
/// Negative at bb2 and positive at bb1 for tau in (0, 1); its unique root in
/// [bb2, bb1] is the family stepsize matched to tau.
template <typename Scalar>
Scalar psi_eval(Scalar tau, Scalar alpha, const GradientPair<Scalar>& p) {
  if (!p.curvature_positive()) throw CurvatureNonPositive();
  const Scalar bb1 = p.ss / p.sy;
  const Scalar bb2 = p.sy / p.yy;
  const Scalar a2 = alpha * alpha;
  return (Scalar(1) - tau) * p.yy * (a2 * alpha - a2 * bb2) + tau * p.sy * (alpha - bb1);
}

/// Derivative of phi_tau(alpha) = ||tau (s/alpha - y) + (1-tau) (s - alpha y)||^2
/// with respect to alpha, computed from the expanded form.  Satisfies
/// phi' = 2 [tau + (1-tau) alpha] psi / alpha^3.
template <typename Scalar>
Scalar phi_derivative(Scalar tau, Scalar alpha, const GradientPair<Scalar>& p) {
  const Scalar a2 = alpha * alpha;
  const Scalar a3 = a2 * alpha;
  const Scalar inner = -(tau / a3) * p.ss -
                       ((Scalar(1) - tau) / alpha - tau / a2) * p.sy +
                       (Scalar(1) - tau) * p.yy;
  return Scalar(2) * (tau + (Scalar(1) - tau) * alpha) * inner;
}

namespace detail {

/// d psi / d alpha; positive on [bb2, bb1] for tau in [0, 1].
template <typename Scalar>
Scalar psi_alpha_derivative(Scalar tau, Scalar alpha, const GradientPair<Scalar>& p) {
  const Scalar bb2 = p.sy / p.yy;
  return (Scalar(1) - tau) * p.yy * (Scalar(3) * alpha * alpha - Scalar(2) * alpha * bb2) +
         tau * p.sy;
}

}  // namespace detail

/// Unique root of psi(tau, .) in [bb2, bb1]: bracketing bisection to
/// 1e-13*bb1, then two safeguarded Newton polish steps.
template <typename Scalar>
Scalar root_for_tau(Scalar tau, const GradientPair<Scalar>& p) {
  if (!p.curvature_positive()) throw CurvatureNonPositive();
  const StepInterval<Scalar> iv = make_step_interval(p);
  if (iv.degenerate()) return iv.bb1;
  if (tau <= Scalar(0)) return iv.bb2;
  if (tau >= Scalar(1)) return iv.bb1;

  Scalar lo = iv.bb2, hi = iv.bb1;
  Scalar flo = psi_eval(tau, lo, p);
  Scalar fhi = psi_eval(tau, hi, p);
  if (flo > Scalar(0) || fhi < Scalar(0))
    throw NoSignChange("root_for_tau: psi does not bracket a root");
  if (flo == Scalar(0)) return lo;
  if (fhi == Scalar(0)) return hi;

  const Scalar tol = Scalar(1e-13) * iv.bb1;
  while (hi - lo > tol) {
    const Scalar mid = Scalar(0.5) * (lo + hi);
    if (mid <= lo || mid >= hi) break;  // interval at round-off resolution
    const Scalar fm = psi_eval(tau, mid, p);
    if (fm == Scalar(0)) return mid;
    if (fm < Scalar(0))
      lo = mid;
    else
      hi = mid;
  }

  Scalar alpha = Scalar(0.5) * (lo + hi);
  for (int i = 0; i < 2; ++i) {
    const Scalar d = detail::psi_alpha_derivative(tau, alpha, p);
    if (!(d > Scalar(0))) break;
    const Scalar step = psi_eval(tau, alpha, p) / d;
    const Scalar cand = alpha - step;
    if (cand < iv.bb2 || cand > iv.bb1) break;
    alpha = cand;
  }
  return std::min(std::max(alpha, iv.bb2), iv.bb1);
}

/// Least-squares weight tau matched to the family parameter gamma:
///   tau = gamma alpha^2 / (gamma alpha^2 + (1-gamma) bb2),
/// with alpha = family_step(gamma, iv).  psi(tau, alpha) vanishes for the
/// generating pair.
template <typename Scalar>
Scalar tau_for_gamma(Scalar gamma, const StepInterval<Scalar>& iv) {
  if (!(gamma >= Scalar(0) && gamma <= Scalar(1))) throw GammaOutOfRange(double(gamma));
  const Scalar alpha = family_step(gamma, iv);
  const Scalar num = gamma * alpha * alpha;
  const Scalar den = num + (Scalar(1) - gamma) * iv.bb2;
  if (den == Scalar(0)) return Scalar(1);
  const Scalar tau = num / den;
  return std::min(std::max(tau, Scalar(0)), Scalar(1));
}

using GradientPaird = GradientPair<double>;
using StepIntervald = StepInterval<double>;

}  // namespace specgrad
