#pragma once

#include <complex>
#include <iosfwd>
#include <vector>

#include "specgrad/errors.hpp"
#include "specgrad/solver.hpp"

namespace specgrad {

/// Two-dimensional contraction factor
///   h(w) = [g (l^2 + w) + (1-g) l (l + w)] / [g (l^2 + w) + (1-g) (l + w)],
/// strictly increasing in w for g in (0, 1), with range
/// (l / (g l + 1 - g), g + (1-g) l).
template <typename Scalar>
Scalar h_eval(Scalar lambda, Scalar w, Scalar gamma) {
  const Scalar a = gamma * (lambda * lambda + w);
  return (a + (Scalar(1) - gamma) * lambda * (lambda + w)) /
         (a + (Scalar(1) - gamma) * (lambda + w));
}

/// log h(exp(M)); exact limit values are used once exp(M) would overflow.
template <typename Scalar>
Scalar log_h_of_exp(Scalar lambda, Scalar M, Scalar gamma) {
  if (M > Scalar(700))
    return std::log(gamma + (Scalar(1) - gamma) * lambda);
  const Scalar w = std::exp(M);  // underflow to 0 lands on the exact h(0) value
  return std::log(h_eval(lambda, w, gamma));
}

/// State of the two-dimensional gradient-ratio recurrence
/// q_{k+1} = h(q_{k-1})^2 q_k / q_{k-1}^2.
template <typename Scalar>
struct TwoDimState {
  Scalar lambda;  // condition number of the 2-D problem, > 1
  Scalar q_prev;  // q_{k-1}
  Scalar q_curr;  // q_k
};

template <typename Scalar>
Scalar recurrence_q_step(const TwoDimState<Scalar>& state, Scalar gamma) {
  const Scalar h = h_eval(state.lambda, state.q_prev, gamma);
  return h * h * state.q_curr / (state.q_prev * state.q_prev);
}

/// One entry of the complexified log-ratio sequence xi_k = M_k + (theta-1) M_{k-1}
/// with theta = (1 + sqrt(7) i)/2 (so theta^2 - theta + 2 = 0 and
/// |theta| = |theta - 1| = sqrt(2)).
struct XiRecord {
  long k;          // index of M_k (2-based onward)
  double M;        // M_k = log q_k
  double xi_re;
  double xi_im;
  double c1;       // 2 log lambda
  double modulus;  // |xi_k|
  double bound;    // (sqrt(2)-1) 2^{k/2} c1
  bool satisfied;  // modulus >= bound
};

struct XiReport {
  std::vector<XiRecord> records;
  bool hypothesis_met = false;  // |xi_2| > 8 log lambda
  bool bound_holds = false;     // bound satisfied at every k >= 2
};

/// xi_k for k = 2..len(M), plus the growth-hypothesis and lower-bound flags.
XiReport xi_sequence(const std::vector<double>& M, double lambda);

/// One row of the 5-step superlinear envelope check.
struct EnvelopeRecord {
  long k;
  double ratio;     // ||g_{k+5}|| / ||g_k||
  double bound;     // lambda (lambda-1)^5 exp(-(sqrt(2)-1)^2 2^{k/2} c1 + 2 c1)
  bool satisfied;   // ratio <= bound
  bool active;      // bound < 1 (contraction information present)
};

struct EnvelopeReport {
  std::vector<EnvelopeRecord> records;
  bool all_active_satisfied = true;
};

/// Check the 5-step gradient-norm contraction bound of the two-dimensional
/// superlinear analysis along a recorded trace; rows start at k = 2, so
/// traces shorter than 7 records produce an empty report.
EnvelopeReport superlinear_envelope_check(const RunTrace& trace, double lambda);

struct RLinearFit {
  double rate;     // exp(slope) of log min_{j<=k} ||g_j|| versus k
  double quality;  // root-mean-square residual of the fit
};

/// Least-squares R-linear rate of the nonincreasing gradient-norm envelope.
RLinearFit rlinear_fit(const RunTrace& trace);

struct PropertyAReport {
  bool condition_i = true;        // min(v) <= 1/alpha_k <= max(v) for all k >= 2
  long violations = 0;
  long checked = 0;
  bool has_partial_energies = false;
  // G(k, l) = sum_{i<=l} (g_k^{(i)})^2 in eigencoordinates; row k-1, column l-1.
  std::vector<std::vector<double>> partial_energies;
};

/// Stepsize-reciprocal localization check, plus the eigenbasis partial
/// energies when the trace recorded eigencomponents.  `require_energies`
/// makes a missing eigencomponent record an error instead of a silent skip.
PropertyAReport property_a_check(const RunTrace& trace, const Vector& eigenvalues,
                                 bool require_energies = false);

/// Dolan-More performance profile of one method: breakpoints of the step
/// function rho -> fraction of problems solved within a factor rho of the
/// best method.
struct ProfileCurve {
  std::string method;
  std::vector<double> ratios;  // sorted; +inf for unsolved runs

  double value_at(double rho) const;
};

struct ProfileInput {
  std::string problem;  // profile grouping key
  std::string method;
  long iterations;
  bool solved;
};

std::vector<ProfileCurve> performance_profile(const std::vector<ProfileInput>& results);

/// Sample the curves onto a geometric rho grid (1 to 16, 200 points by
/// default) and write `method,rho,fraction` CSV rows.
void write_profile_csv(const std::vector<ProfileCurve>& curves, std::ostream& out,
                       double rho_max = 16.0, int points = 200);

/// Run the actual solver on a 2-D diagonal problem with an explicit gamma
/// schedule and independently iterate the gradient-ratio recurrence; returns
/// the largest relative deviation between the two q_k sequences over the
/// first `max_compare` iterations that stay above the round-off cutoff
/// ||g_k|| > 1e-12 ||g_1||.
double solver_vs_recurrence(const QuadraticProblem& prob2d, const Vector& x1,
                            const std::vector<double>& gamma_sequence, long max_compare = 30);

}  // namespace specgrad
