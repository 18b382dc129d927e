#include "specgrad/solver.hpp"

#include <cmath>
#include <cstdio>
#include <cstring>
#include <ostream>

namespace specgrad {

std::string to_string(MethodId m) {
  switch (m) {
    case MethodId::SD: return "SD";
    case MethodId::BB1: return "BB1";
    case MethodId::BB2: return "BB2";
    case MethodId::P: return "P";
    case MethodId::FamilyFixed: return "FAMILY_FIXED";
    case MethodId::FamilyRandom: return "FAMILY_RANDOM";
    case MethodId::ATC: return "ATC";
    case MethodId::ATC1: return "ATC1";
    case MethodId::ATC2: return "ATC2";
    case MethodId::ATC3: return "ATC3";
    case MethodId::ALBB: return "ALBB";
    case MethodId::ABB: return "ABB";
    case MethodId::CBB1: return "CBB1";
    case MethodId::CBB2: return "CBB2";
    case MethodId::CP: return "CP";
    case MethodId::DY: return "DY";
    case MethodId::ABBmin1: return "ABBMIN1";
    case MethodId::ABBmin2: return "ABBMIN2";
    case MethodId::SDC: return "SDC";
  }
  return "BB1";
}

MethodId method_from_string(const std::string& s) {
  static const std::pair<const char*, MethodId> table[] = {
      {"SD", MethodId::SD},           {"BB1", MethodId::BB1},
      {"BB2", MethodId::BB2},         {"P", MethodId::P},
      {"FAMILY_FIXED", MethodId::FamilyFixed},
      {"FAMILY_RANDOM", MethodId::FamilyRandom},
      {"ATC", MethodId::ATC},         {"ATC1", MethodId::ATC1},
      {"ATC2", MethodId::ATC2},       {"ATC3", MethodId::ATC3},
      {"ALBB", MethodId::ALBB},       {"ABB", MethodId::ABB},
      {"CBB1", MethodId::CBB1},       {"CBB2", MethodId::CBB2},
      {"CP", MethodId::CP},           {"DY", MethodId::DY},
      {"ABBMIN1", MethodId::ABBmin1}, {"ABBMIN2", MethodId::ABBmin2},
      {"SDC", MethodId::SDC},
  };
  for (const auto& [name, id] : table)
    if (s == name) return id;
  throw ConfigParseError("unknown method: " + s);
}

std::string to_string(Termination t) {
  switch (t) {
    case Termination::Converged: return "converged";
    case Termination::MaxIter: return "maxiter";
    case Termination::Stagnated: return "stagnated";
  }
  return "maxiter";
}

long default_cycle_length(SpectrumKind kind) {
  return (kind == SpectrumKind::Set1 || kind == SpectrumKind::Set5) ? 30 : 8;
}

bool RunTrace::bit_identical(const RunTrace& other) const {
  if (records.size() != other.records.size()) return false;
  for (std::size_t i = 0; i < records.size(); ++i) {
    const auto& a = records[i];
    const auto& b = other.records[i];
    if (a.k != b.k || std::memcmp(&a.alpha, &b.alpha, sizeof(double)) != 0 ||
        std::memcmp(&a.grad_norm, &b.grad_norm, sizeof(double)) != 0 ||
        std::memcmp(&a.f_value, &b.f_value, sizeof(double)) != 0)
      return false;
  }
  return termination == other.termination;
}

double yuan_stepsize(double sd_prev, double sd_curr, double gnorm_prev, double gnorm_curr) {
  const double ip = 1.0 / sd_prev;
  const double ic = 1.0 / sd_curr;
  const double ratio = gnorm_curr / (sd_prev * gnorm_prev);
  const double disc = std::sqrt((ip - ic) * (ip - ic) + 4.0 * ratio * ratio);
  return 2.0 / (disc + ip + ic);
}

double alternate_or_cyclic_stepsize(MethodId method, BaselineState& state,
                                    const GradientPaird& p) {
  const auto iv = make_step_interval(p);
  switch (method) {
    case MethodId::ALBB:
      return (state.k % 2 == 1) ? iv.bb1 : iv.bb2;
    case MethodId::CBB1:
    case MethodId::CBB2:
    case MethodId::CP: {
      const bool refresh = state.k % state.m == 1 % state.m;
      if (refresh || (!state.held && !state.prev_alpha)) {
        double a;
        if (method == MethodId::CBB1)
          a = iv.bb1;
        else if (method == MethodId::CBB2)
          a = iv.bb2;
        else
          a = compute_geomean(p);
        state.held = a;
      } else if (!state.held) {
        // Carry the run's initial stepsize through the first partial cycle.
        state.held = *state.prev_alpha;
      }
      return *state.held;
    }
    default:
      throw MissingParameter("alternate_or_cyclic_stepsize: wrong method");
  }
}

double adaptive_bb_stepsize(MethodId method, BaselineState& state, const GradientPaird& p) {
  const auto iv = make_step_interval(p);
  const double ratio = iv.bb2 / iv.bb1;
  switch (method) {
    case MethodId::ABB:
      return ratio < state.abb_tau ? iv.bb2 : iv.bb1;
    case MethodId::ABBmin1: {
      state.bb2_history.push_back(iv.bb2);
      while (static_cast<long>(state.bb2_history.size()) > state.abbmin1_m)
        state.bb2_history.pop_front();
      if (ratio < state.abbmin1_tau) {
        double best = state.bb2_history.front();
        for (double v : state.bb2_history) best = std::min(best, v);
        return best;
      }
      return iv.bb1;
    }
    case MethodId::ABBmin2: {
      // Dynamic threshold: shrink after a short step, grow after a long one,
      // so the rule keeps alternating between the two regimes.
      if (ratio < state.abbmin2_tau) {
        state.abbmin2_tau /= state.abbmin2_factor;
        return iv.bb2;
      }
      state.abbmin2_tau *= state.abbmin2_factor;
      return iv.bb1;
    }
    default:
      throw MissingParameter("adaptive_bb_stepsize: wrong method");
  }
}

double yuan_cycle_stepsize(MethodId method, BaselineState& state) {
  if (method == MethodId::DY) {
    if (!state.sd_curr) throw InsufficientHistory("DY: no steepest-descent value");
    if (state.k % 2 == 1) return *state.sd_curr;
    if (!state.sd_prev) throw InsufficientHistory("DY: needs two steepest-descent values");
    return yuan_stepsize(*state.sd_prev, *state.sd_curr, state.gnorm_prev, state.gnorm_curr);
  }
  if (method == MethodId::SDC) {
    const long cycle = state.sdc_h + state.m;
    const long phase = (state.k - 1) % cycle + 1;  // 1-based position in the cycle
    if (phase <= state.sdc_h) {
      if (!state.sd_curr) throw InsufficientHistory("SDC: no steepest-descent value");
      state.yuan_held.reset();
      return *state.sd_curr;
    }
    if (!state.yuan_held) {
      if (!state.sd_prev || !state.sd_curr)
        throw InsufficientHistory("SDC: needs two steepest-descent values");
      state.yuan_held =
          yuan_stepsize(*state.sd_prev, *state.sd_curr, state.gnorm_prev, state.gnorm_curr);
    }
    return *state.yuan_held;
  }
  throw MissingParameter("yuan_cycle_stepsize: wrong method");
}

double first_stepsize(const QuadraticProblem& prob, const Vector& g1) {
  return sd_stepsize(prob, g1);
}

namespace {

bool needs_sd_history(MethodId m) { return m == MethodId::DY || m == MethodId::SDC; }

bool sd_step_active(MethodId m, const BaselineState& st) {
  if (m == MethodId::DY) return true;  // SD value is needed at every iterate
  if (m == MethodId::SDC) {
    const long cycle = st.sdc_h + st.m;
    const long phase = (st.k - 1) % cycle + 1;
    return phase <= st.sdc_h;
  }
  return false;
}

double choose_stepsize(const RunConfig& cfg, const QuadraticProblem& prob, const Vector& g,
                       double gnorm, long k, BaselineState& bst, StrategyStated& sst,
                       const GradientPaird& pair) {
  switch (cfg.method) {
    case MethodId::SD:
      return sd_stepsize(prob, g);
    case MethodId::BB1:
      return make_step_interval(pair).bb1;
    case MethodId::BB2:
      return make_step_interval(pair).bb2;
    case MethodId::P:
      return compute_geomean(pair);
    case MethodId::FamilyFixed:
    case MethodId::FamilyRandom: {
      double gamma;
      if (!cfg.gamma_schedule.empty()) {
        const std::size_t idx = static_cast<std::size_t>(k - 2);
        if (idx >= cfg.gamma_schedule.size())
          throw ConfigParseError("gamma schedule shorter than the run");
        gamma = cfg.gamma_schedule[idx];
      } else if (cfg.method == MethodId::FamilyFixed) {
        gamma = gamma_fixed(sst);
      } else {
        gamma = gamma_random(sst);
      }
      return family_step(gamma, make_step_interval(pair));
    }
    case MethodId::ATC:
      return atc_step(sst, make_step_interval(pair));
    case MethodId::ATC1:
      return atc_variant_step(1, sst, make_step_interval(pair), pair);
    case MethodId::ATC2:
      return atc_variant_step(2, sst, make_step_interval(pair), pair);
    case MethodId::ATC3:
      return atc_variant_step(3, sst, make_step_interval(pair), pair);
    case MethodId::ALBB:
    case MethodId::CBB1:
    case MethodId::CBB2:
    case MethodId::CP:
      return alternate_or_cyclic_stepsize(cfg.method, bst, pair);
    case MethodId::ABB:
    case MethodId::ABBmin1:
    case MethodId::ABBmin2:
      return adaptive_bb_stepsize(cfg.method, bst, pair);
    case MethodId::DY:
    case MethodId::SDC: {
      if (sd_step_active(cfg.method, bst)) {
        bst.sd_prev = bst.sd_curr;
        bst.gnorm_prev = bst.gnorm_curr;
        bst.sd_curr = sd_stepsize(prob, g);
        bst.gnorm_curr = gnorm;
      }
      return yuan_cycle_stepsize(cfg.method, bst);
    }
  }
  throw ConfigParseError("unhandled method");
}

}  // namespace

RunTrace run_gradient_method(const QuadraticProblem& prob, const Vector& x1,
                             const RunConfig& cfg) {
  if (x1.size() != prob.n) throw DimensionMismatch("run_gradient_method: dim(x1) != n");
  if (!(cfg.epsilon > 0.0)) throw ConfigParseError("epsilon must be positive");
  if (cfg.max_iter < 1) throw ConfigParseError("max_iter must be at least 1");

  const long m = cfg.m > 0 ? cfg.m : default_cycle_length(prob.kind);
  long cbb_m = m;
  if (cfg.m <= 0) {
    if (cfg.method == MethodId::CBB1) cbb_m = 3;
    if (cfg.method == MethodId::CBB2 || cfg.method == MethodId::CP) cbb_m = 4;
  }

  SplitMix64 rng(cfg.seed);
  StrategyStated sst;
  sst.m = m;
  sst.fixed_gamma = cfg.gamma;
  sst.rng = &rng;

  BaselineState bst;
  bst.m = cbb_m;
  bst.abb_tau = cfg.abb_tau;
  bst.abbmin1_tau = cfg.abbmin1_tau;
  bst.abbmin1_m = cfg.abbmin1_m;
  bst.abbmin2_tau = cfg.abbmin2_tau0;
  bst.abbmin2_factor = cfg.abbmin2_factor;
  bst.sdc_h = cfg.sdc_h > 0 ? cfg.sdc_h : (prob.kind == SpectrumKind::NonRand ? 30 : 8);
  if (cfg.method == MethodId::SDC && cfg.m <= 0)
    bst.m = (prob.kind == SpectrumKind::NonRand ? 2 : 6);

  RunTrace trace;
  Vector x = x1;
  Vector g = gradient(prob, x);
  trace.initial_grad_norm = g.norm();
  const double threshold = cfg.epsilon * trace.initial_grad_norm;

  Vector x_prev, g_prev;
  bool terminated = false;

  for (long k = 1; k <= cfg.max_iter; ++k) {
    const double gnorm = g.norm();
    const double f = 0.5 * (x.dot(g) - prob.b.dot(x));
    if (cfg.record_eigen_components) trace.eigen_components.push_back(to_eigenbasis(prob, g));

    if (gnorm <= threshold) {
      trace.records.push_back({k, 0.0, gnorm, f});
      trace.termination = Termination::Converged;
      trace.solved = true;
      terminated = true;
      break;
    }

    double alpha;
    if (k == 1) {
      alpha = first_stepsize(prob, g);
      // The initial step is an exact steepest-descent step; seed the SD
      // history registers so the Yuan-type rules have it available at k = 2.
      bst.sd_curr = alpha;
      bst.gnorm_curr = gnorm;
    } else {
      const GradientPaird pair = make_gradient_pair(x - x_prev, g - g_prev);
      if (!pair.curvature_positive()) {
        trace.records.push_back({k, 0.0, gnorm, f});
        trace.termination = Termination::Stagnated;
        terminated = true;
        break;
      }
      sst.k = k;
      bst.k = k;
      alpha = choose_stepsize(cfg, prob, g, gnorm, k, bst, sst, pair);
    }
    trace.records.push_back({k, alpha, gnorm, f});
    sst.prev_alpha = alpha;
    bst.prev_alpha = alpha;

    // ||s|| = alpha ||g|| exactly, since s = -alpha g.
    if (alpha * gnorm <= 1e-16 * (1.0 + x.norm())) {
      trace.termination = Termination::Stagnated;
      terminated = true;
      break;
    }

    x_prev = x;
    g_prev = g;
    x -= alpha * g;
    g = gradient(prob, x);
  }

  if (!terminated) trace.termination = Termination::MaxIter;
  trace.iterations = static_cast<long>(trace.records.size());
  trace.final_grad_norm =
      trace.records.empty() ? trace.initial_grad_norm : trace.records.back().grad_norm;
  return trace;
}

void write_trace_csv(const RunTrace& trace, std::ostream& out) {
  out << "k,alpha,gradnorm,fvalue\n";
  char buf[128];
  for (const auto& r : trace.records) {
    std::snprintf(buf, sizeof(buf), "%ld,%.17g,%.17g,%.17g\n", r.k, r.alpha, r.grad_norm,
                  r.f_value);
    out << buf;
  }
}

}  // namespace specgrad
