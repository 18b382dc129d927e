#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "specgrad/quadratic.hpp"
#include "specgrad/solver.hpp"

namespace specgrad {

/// One method entry of a suite, with its per-method parameter overrides.
struct MethodSpec {
  MethodId id = MethodId::BB1;
  long m = 0;          // 0 = default
  double gamma = 0.5;  // FAMILY_FIXED
  double tau = -1.0;   // ABB / ABBmin1 / ABBmin2 threshold; < 0 = default
  long h = 0;          // SDC steepest-descent phase; 0 = default
};

enum class StartRule { Ones, Uniform };

/// Declarative benchmark suite: the cross product
/// instances x kappas x epsilons x methods.
struct ExperimentSuite {
  SpectrumSpec spectrum;
  int n = 100;
  std::vector<double> kappas = {1e4};
  std::vector<double> epsilons = {1e-6};
  int instances = 10;
  StartRule start = StartRule::Ones;
  long max_iter = 20000;
  std::uint64_t base_seed = 0;
  std::vector<MethodSpec> methods;
};

struct ResultRow {
  std::string problem_id;
  std::string method;
  double epsilon;
  double kappa;
  int n;
  std::uint64_t seed;
  long iterations;
  bool solved;
  double final_gradnorm;
};

/// `<set>-n<n>-k<kappa>-i<instance>`; the profile grouping key additionally
/// carries epsilon.
std::string problem_id(SpectrumKind kind, int n, double kappa, int instance);

/// Parse the sectioned plain-text suite format (see README).
ExperimentSuite parse_suite(std::istream& in);
ExperimentSuite parse_suite_file(const std::string& path);

/// Instance seed: base_seed + instance index.  Problem, strategy and start
/// draws run on substreams 1, 2 and 3 of this seed.
std::uint64_t instance_seed(const ExperimentSuite& suite, int instance);

/// Materialize the problem and starting point of one (kappa, instance) cell.
QuadraticProblem make_suite_problem(const ExperimentSuite& suite, double kappa, int instance);
Vector make_start_point(const ExperimentSuite& suite, const QuadraticProblem& prob,
                        int instance);

/// Execute every run of the suite on `workers` threads; rows come back in
/// deterministic (kappa, instance, epsilon, method) order regardless of the
/// worker count.
std::vector<ResultRow> run_suite(const ExperimentSuite& suite, int workers = 1);

void write_results_csv(const std::vector<ResultRow>& rows, std::ostream& out);
std::vector<ResultRow> read_results_csv(std::istream& in);
std::vector<ResultRow> read_results_csv_file(const std::string& path);

}  // namespace specgrad
