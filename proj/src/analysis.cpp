#include "specgrad/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <map>
#include <ostream>
#include <set>

namespace specgrad {

XiReport xi_sequence(const std::vector<double>& M, double lambda) {
  if (M.size() < 2) throw TooShort("xi_sequence: need at least two entries");
  const std::complex<double> theta(0.5, 0.5 * std::sqrt(7.0));
  const std::complex<double> theta_m1 = theta - 1.0;
  const double c1 = 2.0 * std::log(lambda);

  XiReport report;
  report.bound_holds = true;
  for (std::size_t i = 1; i < M.size(); ++i) {
    const long k = static_cast<long>(i) + 1;  // M is M_1, M_2, ...
    const std::complex<double> xi = M[i] + theta_m1 * M[i - 1];
    XiRecord rec;
    rec.k = k;
    rec.M = M[i];
    rec.xi_re = xi.real();
    rec.xi_im = xi.imag();
    rec.c1 = c1;
    rec.modulus = std::abs(xi);
    rec.bound = (std::sqrt(2.0) - 1.0) * std::pow(2.0, 0.5 * static_cast<double>(k)) * c1;
    rec.satisfied = rec.modulus >= rec.bound;
    if (!rec.satisfied) report.bound_holds = false;
    report.records.push_back(rec);
  }
  report.hypothesis_met = report.records.front().modulus > 8.0 * std::log(lambda);
  return report;
}

EnvelopeReport superlinear_envelope_check(const RunTrace& trace, double lambda) {
  if (!trace.eigen_components.empty() && trace.eigen_components.front().size() != 2)
    throw DimensionNotTwo();
  const double c1 = 2.0 * std::log(lambda);
  const double prefactor = lambda * std::pow(lambda - 1.0, 5.0);
  const double contraction = (std::sqrt(2.0) - 1.0) * (std::sqrt(2.0) - 1.0);

  EnvelopeReport report;
  const long n = static_cast<long>(trace.records.size());
  for (long k = 2; k + 5 <= n; ++k) {
    const double gk = trace.records[k - 1].grad_norm;
    const double gk5 = trace.records[k + 4].grad_norm;
    EnvelopeRecord rec;
    rec.k = k;
    rec.ratio = gk > 0.0 ? gk5 / gk : 0.0;
    rec.bound =
        prefactor * std::exp(-contraction * std::pow(2.0, 0.5 * static_cast<double>(k)) * c1 +
                             2.0 * c1);
    rec.satisfied = rec.ratio <= rec.bound;
    rec.active = rec.bound < 1.0;
    if (rec.active && !rec.satisfied) report.all_active_satisfied = false;
    report.records.push_back(rec);
  }
  return report;
}

RLinearFit rlinear_fit(const RunTrace& trace) {
  if (trace.records.size() < 10) throw TooShort("rlinear_fit: need at least 10 records");
  std::vector<double> ys;
  ys.reserve(trace.records.size());
  double env = std::numeric_limits<double>::infinity();
  for (const auto& r : trace.records) {
    env = std::min(env, r.grad_norm);
    if (env <= 0.0) break;  // log undefined from here on
    ys.push_back(std::log(env));
  }
  if (ys.size() < 10) throw TooShort("rlinear_fit: envelope reaches zero too early");

  const double n = static_cast<double>(ys.size());
  double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
  for (std::size_t i = 0; i < ys.size(); ++i) {
    const double x = static_cast<double>(i + 1);
    sx += x;
    sy += ys[i];
    sxx += x * x;
    sxy += x * ys[i];
  }
  const double slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
  const double intercept = (sy - slope * sx) / n;
  double ss = 0.0;
  for (std::size_t i = 0; i < ys.size(); ++i) {
    const double x = static_cast<double>(i + 1);
    const double r = ys[i] - (slope * x + intercept);
    ss += r * r;
  }
  return {std::exp(slope), std::sqrt(ss / n)};
}

PropertyAReport property_a_check(const RunTrace& trace, const Vector& eigenvalues,
                                 bool require_energies) {
  PropertyAReport report;
  const double lo = eigenvalues.minCoeff();
  const double hi = eigenvalues.maxCoeff();
  for (const auto& r : trace.records) {
    if (r.k < 2 || r.alpha <= 0.0) continue;  // init step / terminal record
    ++report.checked;
    const double inv = 1.0 / r.alpha;
    // One-ulp slack: the interval ends themselves arise from Rayleigh
    // quotients evaluated in floating point.
    const double tol = 1e-12;
    if (inv < lo * (1.0 - tol) || inv > hi * (1.0 + tol)) {
      ++report.violations;
      report.condition_i = false;
    }
  }
  if (trace.eigen_components.empty()) {
    if (require_energies) throw MissingEigenbasis();
    return report;
  }
  report.has_partial_energies = true;
  report.partial_energies.reserve(trace.eigen_components.size());
  for (const auto& z : trace.eigen_components) {
    std::vector<double> row(static_cast<std::size_t>(z.size()));
    double acc = 0.0;
    for (Eigen::Index i = 0; i < z.size(); ++i) {
      acc += z[i] * z[i];
      row[static_cast<std::size_t>(i)] = acc;
    }
    report.partial_energies.push_back(std::move(row));
  }
  return report;
}

double ProfileCurve::value_at(double rho) const {
  const auto it = std::upper_bound(ratios.begin(), ratios.end(), rho);
  return static_cast<double>(it - ratios.begin()) / static_cast<double>(ratios.size());
}

std::vector<ProfileCurve> performance_profile(const std::vector<ProfileInput>& results) {
  if (results.empty()) throw EmptyInput("performance_profile: no results");
  const double inf = std::numeric_limits<double>::infinity();

  std::set<std::string> methods;
  std::map<std::string, std::map<std::string, double>> by_problem;  // problem -> method -> iters
  for (const auto& r : results) {
    methods.insert(r.method);
    auto& row = by_problem[r.problem];
    if (row.count(r.method))
      throw EmptyInput("performance_profile: duplicate (problem, method) pair: " + r.problem +
                       ", " + r.method);
    row[r.method] = r.solved ? static_cast<double>(r.iterations) : inf;
  }

  std::vector<ProfileCurve> curves;
  for (const auto& m : methods) curves.push_back({m, {}});

  long counted = 0;
  for (const auto& [prob, row] : by_problem) {
    double best = inf;
    for (const auto& [m, it] : row) best = std::min(best, it);
    if (!std::isfinite(best)) continue;  // no method solved it; not counted
    ++counted;
    for (auto& curve : curves) {
      const auto it = row.find(curve.method);
      const double iters = (it == row.end()) ? inf : it->second;
      curve.ratios.push_back(std::isfinite(iters) ? iters / best : inf);
    }
  }
  if (counted == 0) throw EmptyInput("performance_profile: no problem was solved by any method");
  for (auto& curve : curves) std::sort(curve.ratios.begin(), curve.ratios.end());
  return curves;
}

void write_profile_csv(const std::vector<ProfileCurve>& curves, std::ostream& out, double rho_max,
                       int points) {
  out << "method,rho,fraction\n";
  char buf[160];
  for (const auto& curve : curves) {
    for (int i = 0; i < points; ++i) {
      const double rho =
          std::pow(rho_max, static_cast<double>(i) / static_cast<double>(points - 1));
      std::snprintf(buf, sizeof(buf), "%s,%.10g,%.10g\n", curve.method.c_str(), rho,
                    curve.value_at(rho));
      out << buf;
    }
  }
}

double solver_vs_recurrence(const QuadraticProblem& prob2d, const Vector& x1,
                            const std::vector<double>& gamma_sequence, long max_compare) {
  if (prob2d.n != 2) throw DimensionNotTwo();
  if (prob2d.householder) throw DimensionNotTwo();
  if (prob2d.v[0] != 1.0 || !(prob2d.v[1] > 1.0))
    throw ConfigParseError("solver_vs_recurrence: problem must be diag(1, lambda), lambda > 1");
  if (prob2d.b.squaredNorm() != 0.0)
    throw ConfigParseError("solver_vs_recurrence: b must be zero");
  const double lambda = prob2d.v[1];

  const Vector g1 = gradient(prob2d, x1);
  if (g1[0] == 0.0 || g1[1] == 0.0)
    throw ConfigParseError("solver_vs_recurrence: both components of g_1 must be nonzero");

  RunConfig cfg;
  cfg.method = MethodId::FamilyFixed;
  cfg.gamma_schedule = gamma_sequence;
  cfg.epsilon = 1e-300;  // run until max_iter or stagnation
  cfg.max_iter = static_cast<long>(gamma_sequence.size()) + 1;
  cfg.record_eigen_components = true;
  const RunTrace trace = run_gradient_method(prob2d, x1, cfg);

  // q_k from the solver's recorded gradient components.
  std::vector<double> q_solver;
  for (const auto& z : trace.eigen_components) {
    const double t = z[0] / z[1];
    q_solver.push_back(t * t);
  }

  // Independent recurrence: q_1 from g_1, q_2 from the exact first step,
  // then q_{k+1} = h(q_{k-1})^2 q_k / q_{k-1}^2.
  const double q1 = (g1[0] / g1[1]) * (g1[0] / g1[1]);
  const double alpha1 = (g1[0] * g1[0] + g1[1] * g1[1]) /
                        (g1[0] * g1[0] + lambda * g1[1] * g1[1]);
  const double r1 = (1.0 - alpha1) / (1.0 - lambda * alpha1);
  std::vector<double> q_rec = {q1, r1 * r1 * q1};
  while (q_rec.size() < q_solver.size()) {
    const std::size_t k = q_rec.size();  // next index is k+1 (1-based k is current)
    const double gamma = gamma_sequence[k - 2];
    TwoDimState<double> st{lambda, q_rec[k - 2], q_rec[k - 1]};
    q_rec.push_back(recurrence_q_step(st, gamma));
  }

  const double cutoff = 1e-12 * trace.initial_grad_norm;
  double max_dev = 0.0;
  const long limit = std::min<long>(max_compare, static_cast<long>(q_solver.size()));
  for (long k = 1; k <= limit; ++k) {
    if (trace.records[k - 1].grad_norm <= cutoff) break;
    const double qs = q_solver[k - 1];
    const double qr = q_rec[k - 1];
    if (!std::isfinite(qs) || !std::isfinite(qr) || qr == 0.0) break;
    max_dev = std::max(max_dev, std::abs(qs - qr) / qr);
  }
  return max_dev;
}

}  // namespace specgrad
