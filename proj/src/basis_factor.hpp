#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace gdpmpc::detail {

struct SparseEntry {
  std::size_t index = 0;
  double value = 0.0;
};

using SparseColumn = std::vector<SparseEntry>;

// LU factorization of a square simplex basis with Markowitz pivoting and
// threshold partial pivoting, followed by product-form (eta) updates.
//
// Basis positions index the columns of B; rows index the constraint rows.
// ftran maps a row-space vector b to the position-space solution of B x = b;
// btran maps a position-space vector c to the row-space solution of B' y = c.
class BasisFactor {
 public:
  struct Singularity {
    std::vector<std::size_t> positions;  // basis positions left without a pivot
    std::vector<std::size_t> rows;       // rows left without a pivot
  };

  // Factorizes B whose position p holds `columns[p]`. Returns the unpivoted
  // positions/rows when B is (numerically) singular; the factor is then
  // unusable until the caller repairs the basis and refactorizes.
  Singularity factorize(std::size_t dim, std::span<const SparseColumn> columns);

  void ftran(std::vector<double>& rhs) const;
  void btran(std::vector<double>& rhs) const;

  // Replaces the column at `position` by a column whose ftran is `alpha`.
  void update(std::size_t position, std::span<const double> alpha);

  std::size_t num_updates() const { return etas_.size(); }
  std::size_t dim() const { return dim_; }

 private:
  struct LStep {
    std::size_t pivot_row = 0;
    std::vector<SparseEntry> multipliers;  // (row, multiplier)
  };
  struct UStep {
    std::size_t pivot_row = 0;
    std::size_t pivot_position = 0;
    double pivot = 1.0;
    std::vector<SparseEntry> entries;  // (position, value), pivot excluded
  };
  struct Eta {
    std::size_t position = 0;
    double pivot = 1.0;
    std::vector<SparseEntry> entries;  // (position, alpha), pivot excluded
  };

  std::size_t dim_ = 0;
  std::vector<LStep> lower_;
  std::vector<UStep> upper_;
  std::vector<Eta> etas_;
  mutable std::vector<double> work_;
};

}  // namespace gdpmpc::detail
