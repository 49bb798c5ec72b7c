#pragma once

// Core domain types shared by every other component: observed multinomial
// samples, probability vectors over a product of simplexes, psi functional
// contracts, and inference configuration/results.

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace exactmn {

// Invalid user input: bad counts, shape mismatches, out-of-range parameters.
// The CLI maps this to exit code 2.
class ValidationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A joint sample space would exceed the configured cardinality cap.
// The CLI maps this to exit code 3.
class CapacityError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Observed counts for one multinomial sample with d categories and n trials.
struct MultinomialSample {
  std::vector<int> counts;
  int n = 0;  // trials, = sum(counts)
  int d = 0;  // categories, = counts.size()

  explicit MultinomialSample(std::vector<int> cell_counts);
};

// An ordered collection of k independent multinomial samples.
struct Dataset {
  std::vector<MultinomialSample> samples;

  explicit Dataset(std::vector<MultinomialSample> s);
  static Dataset from_counts(const std::vector<std::vector<int>>& counts);

  int k() const { return static_cast<int>(samples.size()); }
  int total_n() const;
  std::vector<int> dims() const;  // d_j per sample
  std::vector<int> ns() const;    // n_j per sample
};

// Concatenated probability blocks, one block of length d_j per sample.
// Each block lies on the closed (d_j - 1)-simplex.
class ProbabilityVector {
 public:
  ProbabilityVector(std::vector<double> values, std::vector<int> dims);

  // Skips the simplex validation; for internal hot paths that construct
  // blocks already known to be normalized.
  static ProbabilityVector unchecked(std::vector<double> values,
                                     std::vector<int> dims);

  int blocks() const { return static_cast<int>(dims_.size()); }
  int dim(int j) const { return dims_[j]; }
  const std::vector<int>& dims() const { return dims_; }
  int total_size() const { return static_cast<int>(values_.size()); }
  std::span<const double> block(int j) const;
  const std::vector<double>& values() const { return values_; }
  double operator[](int i) const { return values_[i]; }

  friend bool operator==(const ProbabilityVector& a,
                         const ProbabilityVector& b) {
    return a.dims_ == b.dims_ && a.values_ == b.values_;
  }

 private:
  ProbabilityVector() = default;
  std::vector<double> values_;
  std::vector<int> dims_;
  std::vector<int> offsets_;  // block start indexes
};

// A real-valued functional of the concatenated probability vector together
// with its declared range. evaluate must be pure and safe to call from
// concurrent workers.
struct PsiSpec {
  std::string name;
  std::pair<double, double> psi_limits;
  std::function<double(const ProbabilityVector&)> evaluate;

  double operator()(const ProbabilityVector& theta) const {
    return evaluate(theta);
  }
};

// Direction of the one-sided null hypothesis:
//   lower: H0 psi <= psi0 vs H1 psi > psi0
//   upper: H0 psi >= psi0 vs H1 psi < psi0
enum class Direction { lower, upper };

struct InferenceConfig {
  double alpha = 0.05;
  std::optional<double> psi0;
  Direction direction = Direction::lower;
  int maxit = 50;
  int chunksize = 50;
  // Running p-values above this abort the search; defaults to alpha/2 + 0.001.
  // Values >= 1 disable early termination.
  std::optional<double> early_stop_threshold;
  std::uint64_t seed = 0;
  // Worker threads for candidate evaluation; 0 = hardware concurrency.
  // Results are identical for every worker count.
  int workers = 0;
  bool conf_int = true;

  std::int64_t total_iterations() const {  // B
    return static_cast<std::int64_t>(maxit) * chunksize;
  }
  double stop_threshold() const {
    return early_stop_threshold ? *early_stop_threshold : alpha / 2 + 0.001;
  }
  void validate() const;
};

struct TracePoint {
  std::int64_t iteration;
  double p;
};

struct InferenceResult {
  double estimate = 0.0;
  std::optional<std::pair<double, double>> conf_int;
  std::optional<double> p_value;
  // Running maximum of the p-value search, recorded at iteration 0 and at
  // every iteration where it increased.
  std::vector<TracePoint> trace;
  std::optional<ProbabilityVector> argmax_theta;
  std::int64_t iterations_used = 0;
  bool early_stopped = false;
  // False when no sampled candidate landed in the null region, in which case
  // the reported p-value is the 1/B floor.
  bool null_region_hit = true;
};

// Sample proportions block by block. Throws ValidationError if any n_j == 0.
ProbabilityVector theta_hat(const Dataset& data);

}  // namespace exactmn
