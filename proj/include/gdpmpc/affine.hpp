#pragma once

#include <compare>
#include <cstddef>
#include <span>
#include <vector>

namespace gdpmpc {

// Handle to a continuous variable of a GdpModel.
struct VarRef {
  std::size_t index = 0;

  friend auto operator<=>(const VarRef&, const VarRef&) = default;
};

// Sum of coefficient * variable terms plus a constant. Terms are kept sorted by
// variable index and merged on insertion, so a variable appears at most once.
class AffineExpr {
 public:
  struct Term {
    VarRef var;
    double coeff = 0.0;
  };

  AffineExpr() = default;
  AffineExpr(double constant) : constant_(constant) {}  // NOLINT: implicit by design of the DSL
  AffineExpr(VarRef var) { add_term(var, 1.0); }        // NOLINT

  AffineExpr& add_term(VarRef var, double coeff);
  AffineExpr& add_constant(double value) {
    constant_ += value;
    return *this;
  }

  std::span<const Term> terms() const { return terms_; }
  double constant() const { return constant_; }
  double coefficient(VarRef var) const;
  bool empty() const { return terms_.empty(); }

  // Value at `point`, indexed by VarRef::index.
  double evaluate(std::span<const double> point) const;

  // Largest value over the box [lower, upper]; +inf if an unbounded side is hit.
  double supremum(std::span<const double> lower, std::span<const double> upper) const;

  AffineExpr& operator+=(const AffineExpr& other);
  AffineExpr& operator-=(const AffineExpr& other);
  AffineExpr& operator*=(double factor);

  friend AffineExpr operator+(AffineExpr lhs, const AffineExpr& rhs) { return lhs += rhs; }
  friend AffineExpr operator-(AffineExpr lhs, const AffineExpr& rhs) { return lhs -= rhs; }
  friend AffineExpr operator*(AffineExpr expr, double factor) { return expr *= factor; }
  friend AffineExpr operator*(double factor, AffineExpr expr) { return expr *= factor; }
  friend AffineExpr operator-(AffineExpr expr) { return expr *= -1.0; }

 private:
  std::vector<Term> terms_;
  double constant_ = 0.0;
};

inline AffineExpr operator*(double factor, VarRef var) { return AffineExpr(var) * factor; }
inline AffineExpr operator*(VarRef var, double factor) { return AffineExpr(var) * factor; }

// expr <= 0, expr >= 0 or expr == 0.
enum class Relation { LE, GE, EQ };

struct LinConstraint {
  AffineExpr expr;
  Relation relation = Relation::LE;

  // Signed violation at `point`: positive means violated.
  double violation(std::span<const double> point) const;
};

inline LinConstraint operator<=(const AffineExpr& lhs, const AffineExpr& rhs) {
  return {lhs - rhs, Relation::LE};
}
inline LinConstraint operator>=(const AffineExpr& lhs, const AffineExpr& rhs) {
  return {lhs - rhs, Relation::GE};
}
inline LinConstraint equal(const AffineExpr& lhs, const AffineExpr& rhs) {
  return {lhs - rhs, Relation::EQ};
}

}  // namespace gdpmpc
