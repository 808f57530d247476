#ifndef TAUREC_LAURENT_HPP
#define TAUREC_LAURENT_HPP

#include <taurec/zfun.hpp>

namespace taurec {

// Expansion point: a finite field element or infinity.
struct ExpansionPoint {
  bool at_infinity = false;
  FieldElement value;
  static ExpansionPoint finite(FieldElement v) { return {false, std::move(v)}; }
  static ExpansionPoint infinity() { return {true, FieldElement()}; }
};

// Truncated Laurent series: coefficients for exponents [lo, hi), exact.
// Requests past the truncation boundary throw, so callers can retry deeper
// instead of silently losing terms.
class Laurent {
public:
  Laurent(DescPtr desc, int lo, int hi)
      : desc_(std::move(desc)), lo_(lo), hi_(hi) {
    if (hi_ < lo_) hi_ = lo_;
    c_.assign(static_cast<size_t>(hi_ - lo_), FieldElement::zero(desc_));
  }

  static Laurent zero(DescPtr desc, int hi) { return Laurent(std::move(desc), hi, hi); }

  const DescPtr& desc() const { return desc_; }
  int lo() const { return lo_; }
  int hi() const { return hi_; }

  // Lowest stored exponent with a nonzero coefficient; hi() when none.
  int order() const;
  bool known_zero() const { return order() >= hi_; }

  FieldElement get(int k) const;              // zero below lo, throws past hi
  void set(int k, FieldElement v);

  friend Laurent operator+(const Laurent& a, const Laurent& b);
  friend Laurent operator-(const Laurent& a, const Laurent& b);
  friend Laurent operator-(const Laurent& a);
  friend Laurent operator*(const Laurent& a, const Laurent& b);
  Laurent scaled(const FieldElement& s) const;
  Laurent shifted(int k) const;  // multiply by u^k
  Laurent inverse() const;       // leading coefficient must be nonzero
  Laurent truncated(int hi) const;
  Laurent pow(int n) const;

  Laurent derivative() const;
  // Term-wise primitive; drops the constant and rejects a u^-1 term.
  Laurent primitive() const;

  FieldElement residue() const { return get(-1); }

private:
  DescPtr desc_;
  int lo_, hi_;
  std::vector<FieldElement> c_;
};

// Laurent data of a rational function around a point, to the requested
// truncation order (exclusive).
Laurent laurent_expand(const ZFun& f, const ExpansionPoint& p, int order);

// Exact residue at a finite point or at infinity (minus the coefficient of
// 1/z in the expansion there).
FieldElement residue(const ZFun& f, const ExpansionPoint& p);

}  // namespace taurec

#endif
