#include "specgrad/quadratic.hpp"

#include <cmath>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <vector>

namespace specgrad {

std::string to_string(SpectrumKind kind) {
  switch (kind) {
    case SpectrumKind::Set1: return "set1";
    case SpectrumKind::Set2: return "set2";
    case SpectrumKind::Set3: return "set3";
    case SpectrumKind::Set4: return "set4";
    case SpectrumKind::Set5: return "set5";
    case SpectrumKind::Set6: return "set6";
    case SpectrumKind::Set7: return "set7";
    case SpectrumKind::Even: return "even";
    case SpectrumKind::NonRand: return "nonrand";
  }
  return "set1";
}

SpectrumKind spectrum_kind_from_string(const std::string& s) {
  if (s == "set1") return SpectrumKind::Set1;
  if (s == "set2") return SpectrumKind::Set2;
  if (s == "set3") return SpectrumKind::Set3;
  if (s == "set4") return SpectrumKind::Set4;
  if (s == "set5") return SpectrumKind::Set5;
  if (s == "set6") return SpectrumKind::Set6;
  if (s == "set7") return SpectrumKind::Set7;
  if (s == "even") return SpectrumKind::Even;
  if (s == "nonrand") return SpectrumKind::NonRand;
  throw ConfigParseError("unknown spectrum kind: " + s);
}

namespace {

struct Segment {
  int first;   // 1-based first interior index
  int last;    // 1-based last interior index (inclusive)
  double lo;
  double hi;
};

// Interior index segments for the random sets; indices 1-based, interior
// range is 2..n-1.
std::vector<Segment> set_segments(SpectrumKind kind, int n, double kappa) {
  const int n5 = n / 5;
  const int n2 = n / 2;
  const int n45 = 4 * n / 5;
  switch (kind) {
    case SpectrumKind::Set1:
      return {{2, n - 1, 1.0, kappa}};
    case SpectrumKind::Set2:
      return {{2, n5, 1.0, 100.0}, {n5 + 1, n - 1, kappa / 2, kappa}};
    case SpectrumKind::Set3:
      return {{2, n2, 1.0, 100.0}, {n2 + 1, n - 1, kappa / 2, kappa}};
    case SpectrumKind::Set4:
      return {{2, n45, 1.0, 100.0}, {n45 + 1, n - 1, kappa / 2, kappa}};
    case SpectrumKind::Set5:
      return {{2, n5, 1.0, 100.0},
              {n5 + 1, n45, 100.0, kappa / 2},
              {n45 + 1, n - 1, kappa / 2, kappa}};
    case SpectrumKind::Set6:
      return {{2, 10, 1.0, 100.0}, {11, n - 1, kappa / 2, kappa}};
    case SpectrumKind::Set7:
      return {{2, n - 10, 1.0, 100.0}, {n - 9, n - 1, kappa / 2, kappa}};
    default:
      throw BadFraction("set_segments: not a random spectrum set");
  }
}

}  // namespace

Vector spectrum_sample(const SpectrumSpec& spec, int n, double kappa, SplitMix64& rng) {
  if (n < 2) throw BadFraction("spectrum_sample: n must be at least 2");
  if (!(kappa > 1.0)) throw BadFraction("spectrum_sample: kappa must exceed 1");

  if (spec.kind == SpectrumKind::NonRand) return nonrand_spectrum(n, kappa);
  if (spec.kind == SpectrumKind::Even) {
    Vector v(n);
    for (int j = 0; j < n; ++j)
      v[j] = 1.0 + (kappa - 1.0) * static_cast<double>(j) / static_cast<double>(n - 1);
    v[0] = 1.0;
    v[n - 1] = kappa;
    return v;
  }

  const auto segments = set_segments(spec.kind, n, kappa);
  for (const auto& seg : segments) {
    if (seg.first > seg.last)
      throw BadFraction("spectrum_sample: n = " + std::to_string(n) +
                        " too small for " + to_string(spec.kind));
    if (!(seg.lo < seg.hi))
      throw BadFraction("spectrum_sample: empty interval (" + std::to_string(seg.lo) + ", " +
                        std::to_string(seg.hi) + ") for " + to_string(spec.kind) +
                        "; kappa too small");
  }
  if (segments.back().last != n - 1 || segments.front().first != 2)
    throw BadFraction("spectrum_sample: index layout does not cover 2..n-1");

  Vector v(n);
  v[0] = 1.0;
  v[n - 1] = kappa;
  for (const auto& seg : segments)
    for (int j = seg.first; j <= seg.last; ++j) v[j - 1] = rng.next_uniform(seg.lo, seg.hi);
  return v;
}

Vector nonrand_spectrum(int n, double kappa) {
  if (n < 2) throw BadFraction("nonrand_spectrum: n must be at least 2");
  Vector v(n);
  v[0] = 1.0;
  v[n - 1] = kappa;
  const double ncond = std::log10(kappa);
  for (int j = 2; j <= n - 1; ++j)
    v[j - 1] = std::pow(10.0, ncond / static_cast<double>(n - 1) * static_cast<double>(n - j));
  return v;
}

namespace {

Vector random_unit_vector(int n, SplitMix64& rng) {
  Vector w(n);
  int i = 0;
  while (i < n) {
    auto [z0, z1] = rng.next_normal_pair();
    w[i++] = z0;
    if (i < n) w[i++] = z1;
  }
  const double norm = w.norm();
  if (norm == 0.0) return random_unit_vector(n, rng);
  return w / norm;
}

// (I - 2 w w') d, in place.
void reflect(const Vector& w, Vector& d) { d.noalias() -= (2.0 * w.dot(d)) * w; }

}  // namespace

QuadraticProblem make_random_problem(int n, double kappa, const SpectrumSpec& spec,
                                     SplitMix64& rng) {
  QuadraticProblem prob;
  prob.n = n;
  prob.kappa = kappa;
  prob.kind = spec.kind;
  prob.v = spectrum_sample(spec, n, kappa, rng);
  std::array<Vector, 3> w;
  for (auto& wi : w) wi = random_unit_vector(n, rng);
  prob.householder = std::move(w);
  prob.b.resize(n);
  for (int i = 0; i < n; ++i) prob.b[i] = rng.next_uniform(-10.0, 10.0);
  return prob;
}

QuadraticProblem make_diagonal_problem(const Vector& eigenvalues, const Vector& b) {
  if (eigenvalues.size() < 1 || eigenvalues.size() != b.size())
    throw DimensionMismatch("make_diagonal_problem: eigenvalues/b size mismatch");
  QuadraticProblem prob;
  prob.n = static_cast<int>(eigenvalues.size());
  prob.v = eigenvalues;
  prob.b = b;
  prob.kappa = eigenvalues.maxCoeff() / eigenvalues.minCoeff();
  return prob;
}

Vector to_eigenbasis(const QuadraticProblem& prob, const Vector& d) {
  if (d.size() != prob.n) throw DimensionMismatch("to_eigenbasis");
  Vector z = d;
  if (prob.householder) {
    // Q' = (I-2w1w1')(I-2w2w2')(I-2w3w3')
    const auto& w = *prob.householder;
    reflect(w[2], z);
    reflect(w[1], z);
    reflect(w[0], z);
  }
  return z;
}

Vector from_eigenbasis(const QuadraticProblem& prob, const Vector& z) {
  if (z.size() != prob.n) throw DimensionMismatch("from_eigenbasis");
  Vector d = z;
  if (prob.householder) {
    // Q = (I-2w3w3')(I-2w2w2')(I-2w1w1')
    const auto& w = *prob.householder;
    reflect(w[0], d);
    reflect(w[1], d);
    reflect(w[2], d);
  }
  return d;
}

Vector hessian_apply(const QuadraticProblem& prob, const Vector& d) {
  if (d.size() != prob.n) throw DimensionMismatch("hessian_apply");
  if (!prob.householder) return prob.v.cwiseProduct(d);
  Vector z = to_eigenbasis(prob, d);
  z.array() *= prob.v.array();
  return from_eigenbasis(prob, z);
}

Vector gradient(const QuadraticProblem& prob, const Vector& x) {
  if (x.size() != prob.n) throw DimensionMismatch("gradient");
  return hessian_apply(prob, x) - prob.b;
}

double objective(const QuadraticProblem& prob, const Vector& x) {
  return 0.5 * x.dot(hessian_apply(prob, x)) - prob.b.dot(x);
}

double sd_stepsize(const QuadraticProblem& prob, const Vector& g) {
  const double gg = g.squaredNorm();
  if (gg == 0.0) throw ZeroGradient();
  return gg / g.dot(hessian_apply(prob, g));
}

double mg_stepsize(const QuadraticProblem& prob, const Vector& g) {
  if (g.squaredNorm() == 0.0) throw ZeroGradient();
  const Vector ag = hessian_apply(prob, g);
  return g.dot(ag) / ag.squaredNorm();
}

namespace {

void write_vector(std::ostream& out, const char* name, const Vector& v) {
  out << name << "\n";
  char buf[40];
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    std::snprintf(buf, sizeof(buf), "%.17g", v[i]);
    out << buf << "\n";
  }
}

Vector read_vector(std::istream& in, const std::string& name, int n) {
  std::string line;
  if (!std::getline(in, line) || line != name)
    throw IoError("problem file: expected section '" + name + "'");
  Vector v(n);
  for (int i = 0; i < n; ++i) {
    if (!std::getline(in, line)) throw IoError("problem file: truncated section " + name);
    v[i] = std::stod(line);
  }
  return v;
}

}  // namespace

void save_problem(const QuadraticProblem& prob, std::ostream& out) {
  out << "specgrad problem 1\n";
  out << "n " << prob.n << "\n";
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", prob.kappa);
  out << "kappa " << buf << "\n";
  out << "kind " << to_string(prob.kind) << "\n";
  out << "seed " << prob.seed << "\n";
  out << "rotated " << (prob.householder ? 1 : 0) << "\n";
  write_vector(out, "eigenvalues", prob.v);
  if (prob.householder) {
    write_vector(out, "w1", (*prob.householder)[0]);
    write_vector(out, "w2", (*prob.householder)[1]);
    write_vector(out, "w3", (*prob.householder)[2]);
  }
  write_vector(out, "b", prob.b);
}

void save_problem_file(const QuadraticProblem& prob, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot open for writing: " + path);
  save_problem(prob, out);
}

QuadraticProblem load_problem(std::istream& in) {
  std::string line;
  if (!std::getline(in, line) || line != "specgrad problem 1")
    throw IoError("problem file: bad magic line");
  QuadraticProblem prob;
  int rotated = 0;
  auto read_kv = [&](const std::string& key) -> std::string {
    if (!std::getline(in, line)) throw IoError("problem file: missing key " + key);
    std::istringstream ss(line);
    std::string k, val;
    ss >> k >> val;
    if (k != key) throw IoError("problem file: expected key '" + key + "', got '" + k + "'");
    return val;
  };
  prob.n = std::stoi(read_kv("n"));
  prob.kappa = std::stod(read_kv("kappa"));
  prob.kind = spectrum_kind_from_string(read_kv("kind"));
  prob.seed = std::stoull(read_kv("seed"));
  rotated = std::stoi(read_kv("rotated"));
  prob.v = read_vector(in, "eigenvalues", prob.n);
  if (rotated) {
    std::array<Vector, 3> w;
    w[0] = read_vector(in, "w1", prob.n);
    w[1] = read_vector(in, "w2", prob.n);
    w[2] = read_vector(in, "w3", prob.n);
    prob.householder = std::move(w);
  }
  prob.b = read_vector(in, "b", prob.n);
  return prob;
}

QuadraticProblem load_problem_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open: " + path);
  return load_problem(in);
}

}  // namespace specgrad
