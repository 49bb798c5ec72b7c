#include "exactmn/sample_space.hpp"

#include <cmath>
#include <map>
#include <mutex>
#include <shared_mutex>
#include <string>

namespace exactmn {

namespace {

void fill_rows(int n, int d, std::vector<std::int32_t>& out,
               std::vector<std::int32_t>& prefix) {
  if (d == 2) {
    for (int i = 0; i <= n; ++i) {
      out.insert(out.end(), prefix.begin(), prefix.end());
      out.push_back(i);
      out.push_back(n - i);
    }
    return;
  }
  for (int i = 0; i <= n; ++i) {
    prefix.push_back(i);
    fill_rows(n - i, d - 1, out, prefix);
    prefix.pop_back();
  }
}

std::shared_mutex g_cache_mutex;
std::map<std::pair<int, int>, std::shared_ptr<const CountTable>> g_cache;

}  // namespace

double log_multinomial_coef(std::span<const std::int32_t> counts) {
  double n = 0.0;
  double denom = 0.0;
  for (std::int32_t c : counts) {
    n += c;
    denom += std::lgamma(static_cast<double>(c) + 1.0);
  }
  return std::lgamma(n + 1.0) - denom;
}

double log_multinomial_coef(std::span<const int> counts) {
  double n = 0.0;
  double denom = 0.0;
  for (int c : counts) {
    if (c < 0) throw ValidationError("negative count");
    n += c;
    denom += std::lgamma(static_cast<double>(c) + 1.0);
  }
  return std::lgamma(n + 1.0) - denom;
}

std::uint64_t count_cardinality(int n, int d) {
  // C(n+d-1, d-1), exact in 64 bits for every shape under the cap
  std::uint64_t r = 1;
  for (int i = 1; i <= d - 1; ++i) {
    r = r * static_cast<std::uint64_t>(n + i) / static_cast<std::uint64_t>(i);
  }
  return r;
}

std::shared_ptr<const CountTable> enumerate_counts_table(int n, int d) {
  if (d < 2) {
    throw ValidationError("enumeration needs d >= 2, got " +
                          std::to_string(d));
  }
  if (n < 0) throw ValidationError("enumeration needs n >= 0");
  {
    std::shared_lock lock(g_cache_mutex);
    auto it = g_cache.find({n, d});
    if (it != g_cache.end()) return it->second;
  }

  auto table = std::make_shared<CountTable>();
  table->n = n;
  table->d = d;
  table->rows = count_cardinality(n, d);
  table->counts.reserve(table->rows * d);
  std::vector<std::int32_t> prefix;
  fill_rows(n, d, table->counts, prefix);
  table->log_coefs.resize(table->rows);
  table->proportions.resize(table->rows * d);
  const double inv_n = n > 0 ? 1.0 / n : 0.0;
  for (std::size_t i = 0; i < table->rows; ++i) {
    table->log_coefs[i] = log_multinomial_coef(table->row(i));
    for (int c = 0; c < d; ++c) {
      table->proportions[i * d + c] = table->counts[i * d + c] * inv_n;
    }
  }

  std::unique_lock lock(g_cache_mutex);
  auto [it, inserted] = g_cache.try_emplace({n, d}, table);
  return it->second;
}

std::vector<std::vector<int>> enumerate_counts(int n, int d) {
  auto table = enumerate_counts_table(n, d);
  std::vector<std::vector<int>> rows(table->rows);
  for (std::size_t i = 0; i < table->rows; ++i) {
    auto r = table->row(i);
    rows[i].assign(r.begin(), r.end());
  }
  return rows;
}

JointOutcome JointSpace::outcome(std::size_t i) const {
  auto r = row(i);
  return {std::vector<int>(r.begin(), r.end()), log_coefs[i], psi_hats[i]};
}

JointSpace enumerate_joint(const std::vector<int>& ns,
                           const std::vector<int>& dims, const PsiSpec& psi,
                           std::uint64_t cap) {
  if (ns.size() != dims.size() || ns.empty()) {
    throw ValidationError("shape lists must be nonempty and equal length");
  }
  const int k = static_cast<int>(ns.size());
  std::vector<std::shared_ptr<const CountTable>> tables;
  std::uint64_t total = 1;
  for (int j = 0; j < k; ++j) {
    if (ns[j] < 1) throw ValidationError("sample sizes must be >= 1");
    tables.push_back(enumerate_counts_table(ns[j], dims[j]));
    std::uint64_t rows = tables.back()->rows;
    if (total > cap / rows) {
      throw CapacityError("joint sample space exceeds the cardinality cap of " +
                          std::to_string(cap));
    }
    total *= rows;
  }

  JointSpace space;
  space.ns = ns;
  space.dims = dims;
  for (int d : dims) space.total_cells += d;
  const int D = space.total_cells;
  space.counts.resize(total * D);
  space.log_coefs.resize(total);
  space.psi_hats.resize(total);

  std::vector<int> offsets(k, 0);
  for (int j = 1; j < k; ++j) offsets[j] = offsets[j - 1] + dims[j - 1];

  // Odometer over per-sample rows, last sample fastest.
  std::vector<std::size_t> idx(k, 0);
  std::vector<double> props(D, 0.0);
  for (std::uint64_t r = 0; r < total; ++r) {
    double log_coef = 0.0;
    for (int j = 0; j < k; ++j) {
      const CountTable& t = *tables[j];
      const std::size_t i = idx[j];
      log_coef += t.log_coefs[i];
      std::int32_t* row = space.counts.data() + r * D + offsets[j];
      const std::int32_t* src = t.counts.data() + i * t.d;
      for (int c = 0; c < t.d; ++c) row[c] = src[c];
      const double* p = t.proportions.data() + i * t.d;
      for (int c = 0; c < t.d; ++c) props[offsets[j] + c] = p[c];
    }
    space.log_coefs[r] = log_coef;
    space.psi_hats[r] =
        psi.evaluate(ProbabilityVector::unchecked(props, dims));
    for (int j = k - 1; j >= 0; --j) {
      if (++idx[j] < tables[j]->rows) break;
      idx[j] = 0;
    }
  }
  return space;
}

SubSampleSpace select_subspace(const JointSpace& space, double observed_psi,
                               SubspaceDirection direction, double tie_tol) {
  if (space.size() == 0) throw ValidationError("empty sample space");
  SubSampleSpace sub;
  sub.direction = direction;
  sub.threshold_psi = observed_psi;
  sub.total_cells = space.total_cells;
  const int D = space.total_cells;
  for (std::size_t i = 0; i < space.size(); ++i) {
    const double v = space.psi_hats[i];
    const bool keep = direction == SubspaceDirection::geq
                          ? v >= observed_psi - tie_tol
                          : v <= observed_psi + tie_tol;
    if (!keep) continue;
    auto r = space.row(i);
    sub.counts.insert(sub.counts.end(), r.begin(), r.end());
    sub.log_coefs.push_back(space.log_coefs[i]);
    sub.psi_hats.push_back(v);
  }
  if (sub.size() == 0) {
    // The observed outcome always qualifies, so this cannot happen for a
    // threshold taken from the space itself.
    throw std::logic_error("sub-sample space selection produced no outcomes");
  }
  (void)D;
  return sub;
}

}  // namespace exactmn
