#ifndef TAUREC_RATFUN_HPP
#define TAUREC_RATFUN_HPP

#include <taurec/poly.hpp>

namespace taurec {

// Reduced fraction of univariate polynomials over a field K. Invariants:
// denominator monic, nonzero, and coprime to the numerator.
template <class K>
class RatFun {
public:
  using P = Poly<K>;
  using Ops = FieldOps<K>;

  RatFun() : num_(), den_(P::one()) {}
  explicit RatFun(K c) : num_(P(std::move(c))), den_(P::one()) {}
  explicit RatFun(P num) : num_(std::move(num)), den_(P::one()) {}
  RatFun(P num, P den, bool reduce = true) : num_(std::move(num)), den_(std::move(den)) {
    if (den_.is_zero()) throw division_by_zero("rational function with zero denominator");
    if (reduce) normalize();
    else make_monic();
  }

  static RatFun zero() { return RatFun(); }
  static RatFun one() { return RatFun(FieldOps<K>::one()); }
  static RatFun var() { return RatFun(P::monomial(1, FieldOps<K>::one())); }

  const P& num() const { return num_; }
  const P& den() const { return den_; }
  bool is_zero() const { return num_.is_zero(); }
  bool is_constant() const { return num_.is_constant() && den_.is_constant(); }
  bool is_polynomial() const { return den_.degree() == 0; }

  friend RatFun operator+(const RatFun& a, const RatFun& b) {
    if (a.is_zero()) return b;
    if (b.is_zero()) return a;
    RatFun r;
    if (a.den_.degree() == 0 && b.den_.degree() == 0) {
      r.num_ = a.num_ + b.num_;
      return r.num_.is_zero() ? RatFun() : r;
    }
    P g = (a.den_.degree() > 0 && b.den_.degree() > 0) ? poly_gcd(a.den_, b.den_) : P::one();
    if (g.degree() == 0) {
      // coprime denominators: the sum is already reduced
      r.num_ = a.num_ * b.den_ + b.num_ * a.den_;
      if (r.num_.is_zero()) return RatFun();
      r.den_ = a.den_ * b.den_;
      r.make_monic();
      return r;
    }
    P bd = P::divexact(a.den_, g), dd = P::divexact(b.den_, g);
    P n = a.num_ * dd + b.num_ * bd;
    if (n.is_zero()) return RatFun();
    P g2 = poly_gcd(n, g);
    r.num_ = g2.degree() > 0 ? P::divexact(n, g2) : n;
    r.den_ = bd * (g2.degree() > 0 ? P::divexact(b.den_, g2) : b.den_);
    r.make_monic();
    return r;
  }
  friend RatFun operator-(const RatFun& a) {
    RatFun r = a;
    r.num_ = -r.num_;
    return r;
  }
  friend RatFun operator-(const RatFun& a, const RatFun& b) { return a + (-b); }
  friend RatFun operator*(const RatFun& a, const RatFun& b) {
    if (a.is_zero() || b.is_zero()) return RatFun();
    P g1 = b.den_.degree() > 0 ? poly_gcd(a.num_, b.den_) : P::one();
    P g2 = a.den_.degree() > 0 ? poly_gcd(b.num_, a.den_) : P::one();
    RatFun r;
    r.num_ = (g1.degree() > 0 ? P::divexact(a.num_, g1) : a.num_) *
             (g2.degree() > 0 ? P::divexact(b.num_, g2) : b.num_);
    r.den_ = (g2.degree() > 0 ? P::divexact(a.den_, g2) : a.den_) *
             (g1.degree() > 0 ? P::divexact(b.den_, g1) : b.den_);
    r.make_monic();
    return r;
  }
  RatFun inverse() const {
    if (is_zero()) throw division_by_zero("inverse of zero rational function");
    RatFun r;
    r.num_ = den_;
    r.den_ = num_;
    r.make_monic();
    return r;
  }
  friend RatFun operator/(const RatFun& a, const RatFun& b) { return a * b.inverse(); }

  bool operator==(const RatFun& b) const { return num_ == b.num_ && den_ == b.den_; }
  bool operator!=(const RatFun& b) const { return !(*this == b); }

  RatFun derivative() const {
    // (n/d)' = (n'd - nd')/d^2
    P n = num_.derivative() * den_ - num_ * den_.derivative();
    return RatFun(n, den_ * den_);
  }

  K eval(const K& x) const {
    K d = den_.eval(x);
    if (Ops::is_zero(d)) throw division_by_zero("evaluation at a pole");
    return Ops::div(num_.eval(x), d);
  }

  std::optional<RatFun> sqrt() const {
    auto sn = num_.sqrt();
    if (!sn) return std::nullopt;
    auto sd = den_.sqrt();
    if (!sd) return std::nullopt;
    return RatFun(*sn, *sd, false);
  }

private:
  void make_monic() {
    if (num_.is_zero()) {
      den_ = P::one();
      return;
    }
    K l = den_.lc();
    if (!Ops::is_zero(Ops::sub(l, Ops::one()))) {
      K li = Ops::inv(l);
      num_ = num_.scaled(li);
      den_ = den_.scaled(li);
    }
  }
  void normalize() {
    if (num_.is_zero()) {
      den_ = P::one();
      return;
    }
    if (den_.degree() > 0) {
      P g = poly_gcd(num_, den_);
      if (g.degree() > 0) {
        num_ = P::divexact(num_, g);
        den_ = P::divexact(den_, g);
      }
    }
    make_monic();
  }

  P num_, den_;
};

// gcd in (Q(q0))[t] by clearing to Q[q0][t] and running a primitive
// pseudo-remainder sequence; content removal uses the integer-backed gcd of
// the inner layer, which keeps coefficient growth polynomial.
inline Poly<RatFun<Rat>> poly_gcd(const Poly<RatFun<Rat>>& pa, const Poly<RatFun<Rat>>& pb) {
  using K = RatFun<Rat>;
  using PQ = Poly<Rat>;
  if (pa.is_zero()) return pb.monic();
  if (pb.is_zero()) return pa.monic();
  if (pa.degree() == 0 || pb.degree() == 0) return Poly<K>(K::one());

  // Coprimality filter: specialize the inner variable at a point where the
  // leading coefficient of pa survives. Leading coefficients multiply, so
  // every factor of pa keeps its outer degree under the specialization; a
  // trivial specialized gcd therefore proves the true gcd trivial.
  {
    const K& lc = pa.lc();
    for (long pt = 2; pt < 12; ++pt) {
      Rat r = rat_of(pt);
      bool usable = !rat_is_zero(lc.num().eval(r)) && !rat_is_zero(lc.den().eval(r));
      if (!usable) continue;
      auto spec = [&](const Poly<K>& p, bool& ok) {
        std::vector<Rat> c(p.coeffs().size());
        for (size_t i = 0; i < c.size(); ++i) {
          const K& k = p.coeffs()[i];
          if (k.is_zero()) continue;
          Rat dn = k.den().eval(r);
          if (rat_is_zero(dn)) {
            ok = false;
            return PQ();
          }
          c[i] = k.num().eval(r) / dn;
        }
        return PQ(std::move(c));
      };
      bool ok = true;
      PQ sa = spec(pa, ok);
      if (!ok) continue;
      PQ sb = spec(pb, ok);
      if (!ok) continue;
      if (poly_gcd(sa, sb).degree() == 0) return Poly<K>(K::one());
      break;
    }
  }

  using ZP = std::vector<PQ>;  // polynomial in t with Q[q0] coefficients
  auto clear = [](const Poly<K>& p) {
    PQ l = PQ::one();
    for (const auto& c : p.coeffs()) {
      if (c.is_zero()) continue;
      PQ g = poly_gcd(l, c.den());
      l = l * PQ::divexact(c.den(), g);
    }
    ZP out(p.coeffs().size());
    for (size_t i = 0; i < out.size(); ++i) {
      const K& c = p.coeffs()[i];
      if (c.is_zero()) continue;
      out[i] = c.num() * PQ::divexact(l, c.den());
    }
    while (!out.empty() && out.back().is_zero()) out.pop_back();
    return out;
  };
  auto content = [](const ZP& v) {
    PQ g;
    for (const auto& c : v) g = poly_gcd(g, c);
    return g;
  };
  auto primitive = [&](ZP& v) {
    PQ g = content(v);
    if (g.degree() > 0) {
      for (auto& c : v) c = c.is_zero() ? c : PQ::divexact(c, g);
    }
  };
  auto trim = [](ZP& v) {
    while (!v.empty() && v.back().is_zero()) v.pop_back();
  };
  // pseudo-remainder of a by b in t
  auto prem = [&](ZP a, const ZP& b) {
    int da = static_cast<int>(a.size()) - 1, db = static_cast<int>(b.size()) - 1;
    const PQ& lb = b.back();
    while (da >= db && !a.empty()) {
      PQ la = a.back();
      for (auto& c : a) c = c * lb;
      for (int i = 0; i <= db; ++i)
        a[static_cast<size_t>(da - db + i)] =
            a[static_cast<size_t>(da - db + i)] - la * b[static_cast<size_t>(i)];
      trim(a);
      da = static_cast<int>(a.size()) - 1;
    }
    return a;
  };

  ZP a = clear(pa), b = clear(pb);
  primitive(a);
  primitive(b);
  if (a.size() < b.size()) std::swap(a, b);
  while (!b.empty()) {
    ZP r = prem(a, b);
    primitive(r);
    a = std::move(b);
    b = std::move(r);
  }
  std::vector<K> coeffs(a.size());
  for (size_t i = 0; i < a.size(); ++i) coeffs[i] = K(a[i]);
  return Poly<K>(std::move(coeffs)).monic();
}

template <class K>
struct FieldOps<RatFun<K>> {
  using F = RatFun<K>;
  static F zero() { return F::zero(); }
  static F one() { return F::one(); }
  static bool is_zero(const F& a) { return a.is_zero(); }
  static F neg(const F& a) { return -a; }
  static F add(const F& a, const F& b) { return a + b; }
  static F sub(const F& a, const F& b) { return a - b; }
  static F mul(const F& a, const F& b) { return a * b; }
  static F inv(const F& a) { return a.inverse(); }
  static F div(const F& a, const F& b) { return a / b; }
  static std::optional<F> sqrt(const F& a) { return a.sqrt(); }
};

}  // namespace taurec

#endif
