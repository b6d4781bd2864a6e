#include "basis_factor.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>

namespace gdpmpc::detail {
namespace {

constexpr double kThreshold = 0.1;      // relative pivot threshold within a column
constexpr double kAbsolutePivot = 1e-11;
constexpr std::size_t kSearchLines = 4;  // Markowitz search depth once a candidate exists
constexpr std::size_t kNil = std::numeric_limits<std::size_t>::max();

// Doubly linked lists of items bucketed by their nonzero count.
class CountBuckets {
 public:
  explicit CountBuckets(std::size_t items, std::size_t max_count)
      : head_(max_count + 2, kNil), next_(items, kNil), prev_(items, kNil), count_(items, 0) {}

  void insert(std::size_t item, std::size_t count) {
    count = std::min(count, head_.size() - 1);
    count_[item] = count;
    prev_[item] = kNil;
    next_[item] = head_[count];
    if (head_[count] != kNil) prev_[head_[count]] = item;
    head_[count] = item;
  }

  void remove(std::size_t item) {
    if (prev_[item] != kNil) {
      next_[prev_[item]] = next_[item];
    } else {
      head_[count_[item]] = next_[item];
    }
    if (next_[item] != kNil) prev_[next_[item]] = prev_[item];
  }

  void move(std::size_t item, std::size_t count) {
    remove(item);
    insert(item, count);
  }

  std::size_t first(std::size_t count) const { return head_[count]; }
  std::size_t next(std::size_t item) const { return next_[item]; }
  std::size_t max_count() const { return head_.size() - 1; }

 private:
  std::vector<std::size_t> head_;
  std::vector<std::size_t> next_;
  std::vector<std::size_t> prev_;
  std::vector<std::size_t> count_;
};

}  // namespace

BasisFactor::Singularity BasisFactor::factorize(std::size_t dim,
                                                std::span<const SparseColumn> columns) {
  dim_ = dim;
  lower_.clear();
  upper_.clear();
  etas_.clear();
  work_.assign(dim, 0.0);

  std::vector<std::vector<SparseEntry>> row_entries(dim);  // (position, value)
  std::vector<std::vector<std::size_t>> col_rows(dim);
  for (std::size_t pos = 0; pos < dim; ++pos) {
    for (const SparseEntry& e : columns[pos]) {
      if (e.value == 0.0) continue;
      row_entries[e.index].push_back({pos, e.value});
      col_rows[pos].push_back(e.index);
    }
  }

  std::vector<char> row_active(dim, 1);
  std::vector<char> col_active(dim, 1);
  std::vector<std::size_t> col_count(dim);
  CountBuckets col_buckets(dim, dim);
  CountBuckets row_buckets(dim, dim);
  for (std::size_t c = 0; c < dim; ++c) {
    col_count[c] = col_rows[c].size();
    col_buckets.insert(c, col_count[c]);
  }
  for (std::size_t r = 0; r < dim; ++r) row_buckets.insert(r, row_entries[r].size());

  auto value_in_row = [&](std::size_t r, std::size_t c) -> double {
    for (const SparseEntry& e : row_entries[r])
      if (e.index == c) return e.value;
    return 0.0;
  };
  std::vector<double> col_max_cache(dim, -1.0);  // negative: stale
  auto col_max = [&](std::size_t c) {
    if (col_max_cache[c] >= 0.0) return col_max_cache[c];
    double m = 0.0;
    for (std::size_t r : col_rows[c])
      if (row_active[r]) m = std::max(m, std::abs(value_in_row(r, c)));
    col_max_cache[c] = m;
    return m;
  };
  auto set_col_count = [&](std::size_t c, std::size_t count) {
    col_count[c] = count;
    col_buckets.move(c, count);
  };

  std::vector<std::size_t> marker(dim, kNil);
  lower_.reserve(dim);
  upper_.reserve(dim);

  for (std::size_t step = 0; step < dim; ++step) {
    // Markowitz search over columns and rows in order of increasing count.
    std::size_t best_row = kNil;
    std::size_t best_col = kNil;
    double best_cost = std::numeric_limits<double>::infinity();
    double best_abs = 0.0;
    std::size_t lines_after_found = 0;
    auto consider = [&](std::size_t r, std::size_t c, double value) {
      const double a = std::abs(value);
      if (a <= kAbsolutePivot) return;
      // Singleton pivots cause no growth in the active submatrix.
      const bool singleton = row_entries[r].size() == 1 || col_count[c] == 1;
      if (!singleton && a < kThreshold * col_max(c)) return;
      const double cost = static_cast<double>(row_entries[r].size() - 1) *
                          static_cast<double>(col_count[c] - 1);
      if (cost < best_cost || (cost == best_cost && a > best_abs)) {
        best_cost = cost;
        best_abs = a;
        best_row = r;
        best_col = c;
      }
    };

    for (std::size_t k = 1; k <= dim; ++k) {
      const double floor_cost = static_cast<double>(k - 1) * static_cast<double>(k - 1);
      if (best_row != kNil && best_cost <= floor_cost) break;
      if (best_row != kNil && lines_after_found >= kSearchLines) break;
      for (std::size_t c = col_buckets.first(k); c != kNil; c = col_buckets.next(c)) {
        for (std::size_t r : col_rows[c]) {
          if (!row_active[r]) continue;
          consider(r, c, value_in_row(r, c));
        }
        if (best_row != kNil && (++lines_after_found >= kSearchLines || best_cost <= floor_cost)) break;
      }
      if (best_row != kNil && (lines_after_found >= kSearchLines || best_cost <= floor_cost)) break;
      for (std::size_t r = row_buckets.first(k); r != kNil; r = row_buckets.next(r)) {
        for (const SparseEntry& e : row_entries[r]) consider(r, e.index, e.value);
        if (best_row != kNil && (++lines_after_found >= kSearchLines || best_cost <= floor_cost)) break;
      }
    }

    if (best_row == kNil) {
      Singularity singular;
      for (std::size_t c = 0; c < dim; ++c)
        if (col_active[c]) singular.positions.push_back(c);
      for (std::size_t r = 0; r < dim; ++r)
        if (row_active[r]) singular.rows.push_back(r);
      return singular;
    }

    const std::size_t p = best_row;
    const std::size_t q = best_col;
    const double pivot = value_in_row(p, q);

    UStep u{p, q, pivot, {}};
    u.entries.reserve(row_entries[p].size());
    for (const SparseEntry& e : row_entries[p])
      if (e.index != q) u.entries.push_back(e);

    LStep l{p, {}};
    for (std::size_t r : col_rows[q]) {
      if (!row_active[r] || r == p) continue;
      auto& entries = row_entries[r];
      std::size_t at = kNil;
      for (std::size_t i = 0; i < entries.size(); ++i)
        if (entries[i].index == q) at = i;
      if (at == kNil) continue;
      const double mult = entries[at].value / pivot;
      entries[at] = entries.back();
      entries.pop_back();
      l.multipliers.push_back({r, mult});
      for (std::size_t i = 0; i < entries.size(); ++i) marker[entries[i].index] = i;
      for (const SparseEntry& e : u.entries) {
        if (marker[e.index] != kNil) {
          entries[marker[e.index]].value -= mult * e.value;
        } else {
          entries.push_back({e.index, -mult * e.value});
          col_rows[e.index].push_back(r);
          set_col_count(e.index, col_count[e.index] + 1);
        }
      }
      for (const SparseEntry& e : entries) marker[e.index] = kNil;
      row_buckets.move(r, entries.size());
    }

    row_active[p] = 0;
    row_buckets.remove(p);
    for (const SparseEntry& e : u.entries) {
      set_col_count(e.index, col_count[e.index] - 1);
      col_max_cache[e.index] = -1.0;
    }
    col_active[q] = 0;
    col_buckets.remove(q);
    row_entries[p].clear();

    lower_.push_back(std::move(l));
    upper_.push_back(std::move(u));
  }
  return {};
}

void BasisFactor::ftran(std::vector<double>& rhs) const {
  for (const LStep& l : lower_) {
    const double v = rhs[l.pivot_row];
    if (v == 0.0) continue;
    for (const SparseEntry& e : l.multipliers) rhs[e.index] -= e.value * v;
  }
  std::vector<double>& x = work_;
  for (std::size_t k = upper_.size(); k-- > 0;) {
    const UStep& u = upper_[k];
    double s = rhs[u.pivot_row];
    for (const SparseEntry& e : u.entries) s -= e.value * x[e.index];
    x[u.pivot_position] = s / u.pivot;
  }
  for (const Eta& eta : etas_) {
    const double v = x[eta.position] / eta.pivot;
    x[eta.position] = v;
    if (v == 0.0) continue;
    for (const SparseEntry& e : eta.entries) x[e.index] -= e.value * v;
  }
  rhs.swap(work_);
}

void BasisFactor::btran(std::vector<double>& rhs) const {
  for (std::size_t k = etas_.size(); k-- > 0;) {
    const Eta& eta = etas_[k];
    double s = rhs[eta.position];
    for (const SparseEntry& e : eta.entries) s -= e.value * rhs[e.index];
    rhs[eta.position] = s / eta.pivot;
  }
  std::vector<double>& y = work_;
  for (const UStep& u : upper_) {
    const double z = rhs[u.pivot_position] / u.pivot;
    y[u.pivot_row] = z;
    if (z == 0.0) continue;
    for (const SparseEntry& e : u.entries) rhs[e.index] -= e.value * z;
  }
  for (std::size_t k = lower_.size(); k-- > 0;) {
    const LStep& l = lower_[k];
    double s = 0.0;
    for (const SparseEntry& e : l.multipliers) s += e.value * y[e.index];
    y[l.pivot_row] -= s;
  }
  rhs.swap(work_);
}

void BasisFactor::update(std::size_t position, std::span<const double> alpha) {
  Eta eta{position, alpha[position], {}};
  for (std::size_t i = 0; i < alpha.size(); ++i) {
    if (i == position || alpha[i] == 0.0) continue;
    eta.entries.push_back({i, alpha[i]});
  }
  etas_.push_back(std::move(eta));
}

}  // namespace gdpmpc::detail
