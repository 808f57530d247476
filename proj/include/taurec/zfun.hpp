#ifndef TAUREC_ZFUN_HPP
#define TAUREC_ZFUN_HPP

#include <taurec/field.hpp>

namespace taurec {

// Dense polynomial in one distinguished variable (z or x) with coefficients
// in the field tower. The variable name is a tag used for printing and
// sanity checks when mixing values.
class ZPoly {
public:
  ZPoly() = default;
  ZPoly(DescPtr desc, std::string var) : desc_(std::move(desc)), var_(std::move(var)) {}
  ZPoly(DescPtr desc, std::string var, std::vector<FieldElement> coeffs)
      : desc_(std::move(desc)), var_(std::move(var)), c_(std::move(coeffs)) {
    trim();
  }

  static ZPoly constant(DescPtr desc, std::string var, FieldElement c);
  static ZPoly variable(DescPtr desc, std::string var);
  static ZPoly monomial(DescPtr desc, std::string var, int deg, FieldElement c);

  const DescPtr& desc() const { return desc_; }
  const std::string& var() const { return var_; }
  int degree() const { return static_cast<int>(c_.size()) - 1; }
  bool is_zero() const { return c_.empty(); }
  bool is_constant() const { return c_.size() <= 1; }
  FieldElement coeff(int i) const;
  const FieldElement& lc() const { return c_.back(); }
  const std::vector<FieldElement>& coeffs() const { return c_; }

  friend ZPoly operator+(const ZPoly& a, const ZPoly& b);
  friend ZPoly operator-(const ZPoly& a, const ZPoly& b);
  friend ZPoly operator-(const ZPoly& a);
  friend ZPoly operator*(const ZPoly& a, const ZPoly& b);
  ZPoly scaled(const FieldElement& s) const;
  bool operator==(const ZPoly& b) const;
  bool operator!=(const ZPoly& b) const { return !(*this == b); }

  static void divrem(const ZPoly& a, const ZPoly& b, ZPoly& q, ZPoly& r);
  static ZPoly divexact(const ZPoly& a, const ZPoly& b);
  static bool divides(const ZPoly& b, const ZPoly& a);

  ZPoly derivative() const;
  FieldElement eval(const FieldElement& x) const;
  // Coefficients of p(x0 + u) as a polynomial in u.
  ZPoly taylor_shift(const FieldElement& x0) const;
  ZPoly monic() const;
  ZPoly pow(int n) const;
  // substitute the variable by q(z); result carries q's variable tag
  ZPoly compose(const ZPoly& q) const;
  ZPoly renamed(const std::string& var) const;
  ZPoly promoted(const DescPtr& target) const;
  // reverse coefficients: z^deg * p(1/z)
  ZPoly reversed() const;

  nlohmann::json to_json() const;
  static ZPoly from_json(const nlohmann::json& j);
  std::string str() const;

private:
  void trim();
  DescPtr desc_;
  std::string var_ = "z";
  std::vector<FieldElement> c_;
};

ZPoly zpoly_gcd(const ZPoly& a, const ZPoly& b);

// Rational function num/den in the distinguished variable. Reduction policy:
// arithmetic multiplies through without gcd; callers strip known factors with
// reduce(pool) cheaply, and reduce_full() runs a genuine gcd when a canonical
// form is required.
class ZFun {
public:
  ZFun() = default;
  explicit ZFun(ZPoly num);
  ZFun(ZPoly num, ZPoly den);

  static ZFun constant(DescPtr desc, std::string var, FieldElement c);
  static ZFun variable(DescPtr desc, std::string var);

  const ZPoly& num() const { return num_; }
  const ZPoly& den() const { return den_; }
  const DescPtr& desc() const { return num_.desc(); }
  const std::string& var() const { return num_.var(); }
  bool is_zero() const { return num_.is_zero(); }

  friend ZFun operator+(const ZFun& a, const ZFun& b);
  friend ZFun operator-(const ZFun& a, const ZFun& b);
  friend ZFun operator-(const ZFun& a);
  friend ZFun operator*(const ZFun& a, const ZFun& b);
  friend ZFun operator/(const ZFun& a, const ZFun& b);
  ZFun inverse() const;
  ZFun scaled(const FieldElement& s) const;
  ZFun derivative() const;
  ZFun pow(int n) const;
  ZFun compose(const ZPoly& q) const;
  // substitute variable -> rational map num/den (used for involutions like 1/z)
  ZFun compose(const ZFun& q) const;
  ZFun renamed(const std::string& var) const;
  ZFun promoted(const DescPtr& target) const;

  FieldElement eval(const FieldElement& x) const;
  bool defined_at(const FieldElement& x) const;

  // Strips factors shared by numerator and denominator, trying the supplied
  // candidate factors first; full gcd reduction when full = true.
  ZFun reduced(const std::vector<ZPoly>& candidates = {}, bool full = false) const;
  ZFun reduced_full() const { return reduced({}, true); }

  // exact equality (cross multiplication)
  bool operator==(const ZFun& b) const;
  bool operator!=(const ZFun& b) const { return !(*this == b); }

  std::string str() const;

private:
  void normalize();
  ZPoly num_, den_;
};

}  // namespace taurec

#endif
