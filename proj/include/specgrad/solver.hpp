#pragma once

#include <cstdint>
#include <deque>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "specgrad/gamma_rules.hpp"
#include "specgrad/quadratic.hpp"
#include "specgrad/rng.hpp"
#include "specgrad/stepsizes.hpp"

namespace specgrad {

enum class MethodId {
  SD,
  BB1,
  BB2,
  P,
  FamilyFixed,
  FamilyRandom,
  ATC,
  ATC1,
  ATC2,
  ATC3,
  ALBB,
  ABB,
  CBB1,
  CBB2,
  CP,
  DY,
  ABBmin1,
  ABBmin2,
  SDC,
};

std::string to_string(MethodId m);
MethodId method_from_string(const std::string& s);

enum class Termination { Converged, MaxIter, Stagnated };

std::string to_string(Termination t);

struct RunConfig {
  MethodId method = MethodId::BB1;
  double epsilon = 1e-6;          // relative gradient tolerance
  long max_iter = 20000;
  long m = 0;                     // cycle length; 0 = method default
  double gamma = 0.5;             // fixed gamma for FamilyFixed
  std::uint64_t seed = 0;         // seed of the strategy stream
  long sdc_h = 0;                 // SDC steepest-descent phase length; 0 = default
  double abb_tau = 0.1;           // ABB switching threshold
  double abbmin1_tau = 0.8;       // ABBmin1 switching threshold
  long abbmin1_m = 9;             // ABBmin1 history length
  double abbmin2_tau0 = 0.9;      // ABBmin2 initial threshold
  double abbmin2_factor = 1.1;    // ABBmin2 threshold update factor
  bool record_eigen_components = false;  // keep Q'g per iterate (analysis)
  std::vector<double> gamma_schedule;    // explicit gamma_k sequence, k >= 2
};

/// Cycle-length default: 30 for spectrum sets 1 and 5, 8 otherwise.
long default_cycle_length(SpectrumKind kind);

struct TraceRecord {
  long k;             // 1-based iterate index
  double alpha;       // stepsize chosen at this iterate (0 at a terminal record)
  double grad_norm;   // ||g_k||
  double f_value;     // f(x_k)
};

struct RunTrace {
  std::vector<TraceRecord> records;
  long iterations = 0;            // == records.size()
  Termination termination = Termination::MaxIter;
  bool solved = false;
  double initial_grad_norm = 0.0;
  double final_grad_norm = 0.0;
  std::vector<Vector> eigen_components;  // Q'g_k per record, when recorded

  bool bit_identical(const RunTrace& other) const;
};

/// Per-run mutable state for the baseline stepsize rules.
struct BaselineState {
  long k = 1;
  long m = 8;
  std::optional<double> prev_alpha;
  std::optional<double> held;          // held stepsize for CBB1/CBB2/CP
  std::deque<double> bb2_history;      // most recent short stepsizes (ABBmin1)
  double abb_tau = 0.1;
  double abbmin1_tau = 0.8;
  long abbmin1_m = 9;
  double abbmin2_tau = 0.9;
  double abbmin2_factor = 1.1;
  // Exact steepest-descent history for the Yuan-type rules: values at the
  // two most recent iterates where a steepest-descent step was evaluated.
  std::optional<double> sd_prev, sd_curr;
  double gnorm_prev = 0.0, gnorm_curr = 0.0;
  long sdc_h = 8;
  std::optional<double> yuan_held;
};

/// Yuan's stepsize from two consecutive exact steepest-descent stepsizes and
/// the matching gradient norms; never exceeds min(sd_prev, sd_curr).
double yuan_stepsize(double sd_prev, double sd_curr, double gnorm_prev, double gnorm_curr);

/// ALBB (alternate) and CBB1/CBB2/CP (cyclic) stepsizes.
double alternate_or_cyclic_stepsize(MethodId method, BaselineState& state,
                                    const GradientPaird& p);

/// ABB, ABBmin1 and ABBmin2 adaptive stepsizes.
double adaptive_bb_stepsize(MethodId method, BaselineState& state, const GradientPaird& p);

/// DY and SDC stepsizes built on yuan_stepsize; requires the state's SD
/// history registers to be up to date.
double yuan_cycle_stepsize(MethodId method, BaselineState& state);

/// Exact steepest-descent step; used as the very first stepsize of every run.
double first_stepsize(const QuadraticProblem& prob, const Vector& g1);

/// Gradient descent x_{k+1} = x_k - alpha_k g_k with the configured stepsize
/// rule.  Stops when ||g_k|| <= epsilon ||g_1|| (Converged), after max_iter
/// iterates (MaxIter), or when the step underflows (Stagnated).
RunTrace run_gradient_method(const QuadraticProblem& prob, const Vector& x1,
                             const RunConfig& cfg);

/// Per-iteration trace CSV (`k,alpha,gradnorm,fvalue`).
void write_trace_csv(const RunTrace& trace, std::ostream& out);

}  // namespace specgrad
