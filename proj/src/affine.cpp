#include "gdpmpc/affine.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace gdpmpc {

AffineExpr& AffineExpr::add_term(VarRef var, double coeff) {
  auto it = std::lower_bound(terms_.begin(), terms_.end(), var,
                             [](const Term& t, VarRef v) { return t.var < v; });
  if (it != terms_.end() && it->var == var) {
    it->coeff += coeff;
    if (it->coeff == 0.0) terms_.erase(it);
  } else if (coeff != 0.0) {
    terms_.insert(it, Term{var, coeff});
  }
  return *this;
}

double AffineExpr::coefficient(VarRef var) const {
  auto it = std::lower_bound(terms_.begin(), terms_.end(), var,
                             [](const Term& t, VarRef v) { return t.var < v; });
  return (it != terms_.end() && it->var == var) ? it->coeff : 0.0;
}

double AffineExpr::evaluate(std::span<const double> point) const {
  double value = constant_;
  for (const Term& t : terms_) value += t.coeff * point[t.var.index];
  return value;
}

double AffineExpr::supremum(std::span<const double> lower, std::span<const double> upper) const {
  double value = constant_;
  for (const Term& t : terms_) {
    const double bound = t.coeff > 0 ? upper[t.var.index] : lower[t.var.index];
    if (!std::isfinite(bound)) return std::numeric_limits<double>::infinity();
    value += t.coeff * bound;
  }
  return value;
}

AffineExpr& AffineExpr::operator+=(const AffineExpr& other) {
  for (const Term& t : other.terms_) add_term(t.var, t.coeff);
  constant_ += other.constant_;
  return *this;
}

AffineExpr& AffineExpr::operator-=(const AffineExpr& other) {
  for (const Term& t : other.terms_) add_term(t.var, -t.coeff);
  constant_ -= other.constant_;
  return *this;
}

AffineExpr& AffineExpr::operator*=(double factor) {
  if (factor == 0.0) {
    terms_.clear();
    constant_ = 0.0;
    return *this;
  }
  for (Term& t : terms_) t.coeff *= factor;
  constant_ *= factor;
  return *this;
}

double LinConstraint::violation(std::span<const double> point) const {
  const double value = expr.evaluate(point);
  switch (relation) {
    case Relation::LE:
      return value;
    case Relation::GE:
      return -value;
    case Relation::EQ:
      return std::abs(value);
  }
  return value;
}

}  // namespace gdpmpc
