#include "exactmn/types.hpp"

#include <cmath>
#include <numeric>

namespace exactmn {

MultinomialSample::MultinomialSample(std::vector<int> cell_counts)
    : counts(std::move(cell_counts)) {
  d = static_cast<int>(counts.size());
  if (d < 2) {
    throw ValidationError("sample needs at least 2 categories, got " +
                          std::to_string(d));
  }
  n = 0;
  for (int c : counts) {
    if (c < 0) throw ValidationError("negative cell count");
    n += c;
  }
  if (n < 1) throw ValidationError("sample has zero trials");
}

Dataset::Dataset(std::vector<MultinomialSample> s) : samples(std::move(s)) {
  if (samples.empty()) throw ValidationError("dataset needs at least 1 sample");
}

Dataset Dataset::from_counts(const std::vector<std::vector<int>>& counts) {
  std::vector<MultinomialSample> s;
  s.reserve(counts.size());
  for (const auto& c : counts) s.emplace_back(c);
  return Dataset(std::move(s));
}

int Dataset::total_n() const {
  int n = 0;
  for (const auto& s : samples) n += s.n;
  return n;
}

std::vector<int> Dataset::dims() const {
  std::vector<int> d;
  d.reserve(samples.size());
  for (const auto& s : samples) d.push_back(s.d);
  return d;
}

std::vector<int> Dataset::ns() const {
  std::vector<int> n;
  n.reserve(samples.size());
  for (const auto& s : samples) n.push_back(s.n);
  return n;
}

namespace {

std::vector<int> block_offsets(const std::vector<int>& dims) {
  std::vector<int> off(dims.size() + 1, 0);
  for (std::size_t j = 0; j < dims.size(); ++j) off[j + 1] = off[j] + dims[j];
  return off;
}

}  // namespace

ProbabilityVector::ProbabilityVector(std::vector<double> values,
                                     std::vector<int> dims)
    : values_(std::move(values)), dims_(std::move(dims)) {
  if (dims_.empty()) throw ValidationError("probability vector has no blocks");
  offsets_ = block_offsets(dims_);
  if (offsets_.back() != static_cast<int>(values_.size())) {
    throw ValidationError("probability vector length does not match blocks");
  }
  constexpr double kSumTol = 1e-12;
  for (std::size_t j = 0; j < dims_.size(); ++j) {
    double sum = 0.0;
    for (int i = offsets_[j]; i < offsets_[j + 1]; ++i) {
      double v = values_[i];
      if (!(v >= 0.0 && v <= 1.0)) {
        throw ValidationError("probability entry outside [0,1]");
      }
      sum += v;
    }
    if (std::abs(sum - 1.0) > kSumTol) {
      throw ValidationError("probability block " + std::to_string(j) +
                            " sums to " + std::to_string(sum));
    }
  }
}

ProbabilityVector ProbabilityVector::unchecked(std::vector<double> values,
                                               std::vector<int> dims) {
  ProbabilityVector p;
  p.values_ = std::move(values);
  p.dims_ = std::move(dims);
  p.offsets_ = block_offsets(p.dims_);
  return p;
}

std::span<const double> ProbabilityVector::block(int j) const {
  return {values_.data() + offsets_[j],
          static_cast<std::size_t>(dims_[j])};
}

void InferenceConfig::validate() const {
  if (!(alpha > 0.0 && alpha < 1.0)) {
    throw ValidationError("alpha must lie in (0,1)");
  }
  if (maxit < 1 || chunksize < 1) {
    throw ValidationError("maxit and chunksize must be positive");
  }
  if (workers < 0) throw ValidationError("workers must be >= 0");
}

ProbabilityVector theta_hat(const Dataset& data) {
  std::vector<double> values;
  std::size_t cells = 0;
  for (const auto& s : data.samples) cells += s.counts.size();
  values.reserve(cells);
  for (const auto& s : data.samples) {
    if (s.n == 0) throw ValidationError("degenerate sample with n = 0");
    double inv_n = 1.0 / s.n;
    for (int c : s.counts) values.push_back(c * inv_n);
  }
  return ProbabilityVector::unchecked(std::move(values), data.dims());
}

}  // namespace exactmn
