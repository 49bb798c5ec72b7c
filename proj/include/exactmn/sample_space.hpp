#pragma once

// Enumeration of per-sample and joint multinomial sample spaces with
// precomputed log multinomial coefficients and psi(theta_hat(t)) values,
// plus selection of the extreme sub-sample space.

#include <cstdint>
#include <memory>
#include <span>
#include <vector>

#include "exactmn/types.hpp"

namespace exactmn {

// Absolute tolerance on psi_hat comparisons when selecting the sub-sample
// space. Floating-point evaluation can perturb exact ties across the
// boundary, which would silently shrink the p-value.
inline constexpr double kTieTol = 1e-9;

// Default cap on the joint sample-space cardinality.
inline constexpr std::uint64_t kDefaultJointCap = 50'000'000;

// One element t of the joint sample space, concatenated across samples.
struct JointOutcome {
  std::vector<int> counts;
  double log_coef = 0.0;  // sum of per-sample log multinomial coefficients
  double psi_hat = 0.0;   // psi(theta_hat(t))
};

// All count vectors of length d summing to n, in the recursion's order
// (first cell ascending 0..n, recursing on the remainder), with per-row
// log multinomial coefficients and sample proportions.
struct CountTable {
  int n = 0;
  int d = 0;
  std::size_t rows = 0;
  std::vector<std::int32_t> counts;  // rows * d, row-major
  std::vector<double> log_coefs;     // rows
  std::vector<double> proportions;   // rows * d, counts / n

  std::span<const std::int32_t> row(std::size_t i) const {
    return {counts.data() + i * d, static_cast<std::size_t>(d)};
  }
};

// Cached per-(n, d) enumeration; safe for concurrent lookup.
std::shared_ptr<const CountTable> enumerate_counts_table(int n, int d);

// Plain list-of-vectors view of the same enumeration.
std::vector<std::vector<int>> enumerate_counts(int n, int d);

// log( n! / prod t_i! ) via log-gamma.
double log_multinomial_coef(std::span<const int> counts);
double log_multinomial_coef(std::span<const std::int32_t> counts);

// Number of compositions C(n+d-1, d-1).
std::uint64_t count_cardinality(int n, int d);

// The joint sample space as structure-of-arrays; rows are concatenated
// count vectors in odometer order (last sample varies fastest).
struct JointSpace {
  std::vector<int> ns;    // n_j
  std::vector<int> dims;  // d_j
  int total_cells = 0;    // sum of d_j
  std::vector<std::int32_t> counts;  // size() * total_cells
  std::vector<double> log_coefs;
  std::vector<double> psi_hats;

  std::size_t size() const { return log_coefs.size(); }
  std::span<const std::int32_t> row(std::size_t i) const {
    return {counts.data() + i * total_cells,
            static_cast<std::size_t>(total_cells)};
  }
  JointOutcome outcome(std::size_t i) const;
};

// Enumerates the product of the per-sample spaces, evaluating psi and the
// summed log coefficients for every element. Throws CapacityError when the
// projected cardinality exceeds cap.
JointSpace enumerate_joint(const std::vector<int>& ns,
                           const std::vector<int>& dims, const PsiSpec& psi,
                           std::uint64_t cap = kDefaultJointCap);

enum class SubspaceDirection { geq, leq };

// Outcomes at least as extreme as the observed psi_hat, in space order.
struct SubSampleSpace {
  SubspaceDirection direction = SubspaceDirection::geq;
  double threshold_psi = 0.0;
  int total_cells = 0;
  std::vector<std::int32_t> counts;
  std::vector<double> log_coefs;
  std::vector<double> psi_hats;

  std::size_t size() const { return log_coefs.size(); }
  std::span<const std::int32_t> row(std::size_t i) const {
    return {counts.data() + i * total_cells,
            static_cast<std::size_t>(total_cells)};
  }
};

SubSampleSpace select_subspace(const JointSpace& space, double observed_psi,
                               SubspaceDirection direction,
                               double tie_tol = kTieTol);

}  // namespace exactmn
