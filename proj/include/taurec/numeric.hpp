#ifndef TAUREC_NUMERIC_HPP
#define TAUREC_NUMERIC_HPP

#include <taurec/field.hpp>

#include <mpfr.h>

#include <string>

namespace taurec {

// Minimal complex arithmetic at configurable binary precision, used only to
// compare logarithm-bearing closed forms. Everything else in the engine is
// exact.
class BigComplex {
public:
  explicit BigComplex(long prec = 256);
  BigComplex(const BigComplex& o);
  BigComplex(BigComplex&& o) noexcept;
  BigComplex& operator=(BigComplex o);
  ~BigComplex();

  long prec() const { return prec_; }

  static BigComplex from_rat(const Rat& r, long prec);

  friend BigComplex operator+(const BigComplex& a, const BigComplex& b);
  friend BigComplex operator-(const BigComplex& a, const BigComplex& b);
  friend BigComplex operator*(const BigComplex& a, const BigComplex& b);
  friend BigComplex operator/(const BigComplex& a, const BigComplex& b);
  BigComplex sqrt() const;   // principal branch
  BigComplex log() const;    // principal branch
  BigComplex abs2() const;   // |z|^2 as a real value

  bool is_zero_to(long bits) const;  // |z| < 2^-bits
  std::string str(int digits = 40) const;

  // |a-b| <= 2^-relbits * max(|a|,|b|,1)
  static bool close(const BigComplex& a, const BigComplex& b, long relbits);

  mpfr_t re, im;

private:
  long prec_;
};

// Evaluates an element whose symbols have already been substituted away
// (payload over Q, possibly with one quadratic layer; the root is taken with
// the principal branch).
BigComplex evaluate_numeric(const FieldElement& e, long prec);

}  // namespace taurec

#endif
