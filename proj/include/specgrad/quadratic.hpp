#pragma once

#include <Eigen/Core>

#include <array>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>

#include "specgrad/errors.hpp"
#include "specgrad/rng.hpp"

namespace specgrad {

using Vector = Eigen::VectorXd;

/// Spectrum families for the generated test problems.  set1..set7 place the
/// interior eigenvalues in the interval layouts below (indices 1-based,
/// fractional boundaries rounded down, v_1 = 1 and v_n = kappa always):
///
///   set1  v_2..v_{n-1}      in (1, kappa)
///   set2  v_2..v_{n/5}      in (1, 100); rest in (kappa/2, kappa)
///   set3  v_2..v_{n/2}      in (1, 100); rest in (kappa/2, kappa)
///   set4  v_2..v_{4n/5}     in (1, 100); rest in (kappa/2, kappa)
///   set5  v_2..v_{n/5}      in (1, 100); v_{n/5+1}..v_{4n/5} in (100, kappa/2);
///         rest in (kappa/2, kappa)
///   set6  v_2..v_10         in (1, 100); rest in (kappa/2, kappa)
///   set7  v_2..v_{n-10}     in (1, 100); rest in (kappa/2, kappa)
///
/// `even` is the deterministic equispaced grid on [1, kappa]; `nonrand` is
/// the fixed log-spaced diagonal (see nonrand_spectrum).
enum class SpectrumKind { Set1, Set2, Set3, Set4, Set5, Set6, Set7, Even, NonRand };

struct SpectrumSpec {
  SpectrumKind kind = SpectrumKind::Set1;
};

std::string to_string(SpectrumKind kind);
SpectrumKind spectrum_kind_from_string(const std::string& s);

/// Draw the eigenvalue vector for one of the random spectrum sets.
/// v_1 = 1 and v_n = kappa exactly; interior values are i.i.d. uniform on
/// the set's intervals.  Throws BadFraction if n or kappa cannot host the
/// set's index layout.
Vector spectrum_sample(const SpectrumSpec& spec, int n, double kappa, SplitMix64& rng);

/// Fixed ill-conditioned diagonal: A_11 = 1, A_nn = kappa and
/// A_jj = 10^{(ncond/(n-1)) (n-j)} for j = 2..n-1, ncond = log10(kappa).
Vector nonrand_spectrum(int n, double kappa);

/// Strictly convex quadratic f(x) = x'Ax/2 - b'x with A = Q diag(v) Q' and
/// Q a product of three Householder reflections (or the identity when the
/// reflection vectors are absent).  A is never materialized.
struct QuadraticProblem {
  int n = 0;
  Vector v;                                  // eigenvalues, stored as generated
  std::optional<std::array<Vector, 3>> householder;  // w1, w2, w3 (unit vectors)
  Vector b;
  double kappa = 0.0;
  SpectrumKind kind = SpectrumKind::Set1;
  std::uint64_t seed = 0;

  double min_eigenvalue() const { return v.minCoeff(); }
  double max_eigenvalue() const { return v.maxCoeff(); }
};

/// A = QVQ' with random reflections and b uniform on [-10, 10].
QuadraticProblem make_random_problem(int n, double kappa, const SpectrumSpec& spec,
                                     SplitMix64& rng);

/// Diagonal problem from an explicit eigenvalue vector (no rotation).
QuadraticProblem make_diagonal_problem(const Vector& eigenvalues, const Vector& b);

/// Rotate into / out of the eigenbasis (identity for diagonal problems).
Vector to_eigenbasis(const QuadraticProblem& prob, const Vector& d);
Vector from_eigenbasis(const QuadraticProblem& prob, const Vector& z);

/// A d through the implicit factorization; O(n).
Vector hessian_apply(const QuadraticProblem& prob, const Vector& d);

/// grad f = A x - b.
Vector gradient(const QuadraticProblem& prob, const Vector& x);

/// f(x), evaluated through one Hessian product.
double objective(const QuadraticProblem& prob, const Vector& x);

/// Exact-line-search (Cauchy) stepsize g'g / g'Ag.
double sd_stepsize(const QuadraticProblem& prob, const Vector& g);

/// Minimal-gradient stepsize g'Ag / g'A^2g; never exceeds sd_stepsize.
double mg_stepsize(const QuadraticProblem& prob, const Vector& g);

/// Plain-text serialization (documented in the README); exact round trip.
void save_problem(const QuadraticProblem& prob, std::ostream& out);
void save_problem_file(const QuadraticProblem& prob, const std::string& path);
QuadraticProblem load_problem(std::istream& in);
QuadraticProblem load_problem_file(const std::string& path);

}  // namespace specgrad
