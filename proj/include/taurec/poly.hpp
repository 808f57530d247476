#ifndef TAUREC_POLY_HPP
#define TAUREC_POLY_HPP

#include <taurec/rat.hpp>

#include <algorithm>
#include <functional>
#include <optional>
#include <vector>

namespace taurec {

// Field traits used by the dense polynomial template below. Coefficient types
// are small value types: Rat at the bottom, RatFun<Rat> one symbol up.
template <class K>
struct FieldOps;

template <>
struct FieldOps<Rat> {
  static Rat zero() { return Rat(0); }
  static Rat one() { return Rat(1); }
  static bool is_zero(const Rat& a) { return rat_is_zero(a); }
  static Rat neg(const Rat& a) { return -a; }
  static Rat add(const Rat& a, const Rat& b) { return a + b; }
  static Rat sub(const Rat& a, const Rat& b) { return a - b; }
  static Rat mul(const Rat& a, const Rat& b) { return a * b; }
  static Rat inv(const Rat& a) {
    if (rat_is_zero(a)) throw division_by_zero("1/0 in Q");
    return Rat(1) / a;
  }
  static Rat div(const Rat& a, const Rat& b) { return a * inv(b); }
  static std::optional<Rat> sqrt(const Rat& a) { return rat_sqrt(a); }
};

// Dense univariate polynomial over a field K. Invariant: no trailing zero
// coefficients; the zero polynomial has an empty coefficient vector.
template <class K>
class Poly {
public:
  using Ops = FieldOps<K>;

  Poly() = default;
  explicit Poly(K c0) {
    if (!Ops::is_zero(c0)) c_.push_back(std::move(c0));
  }
  explicit Poly(std::vector<K> coeffs) : c_(std::move(coeffs)) { trim(); }

  static Poly zero() { return Poly(); }
  static Poly one() { return Poly(Ops::one()); }
  static Poly monomial(int deg, K coeff) {
    Poly p;
    if (Ops::is_zero(coeff)) return p;
    p.c_.assign(static_cast<size_t>(deg) + 1, Ops::zero());
    p.c_.back() = std::move(coeff);
    return p;
  }

  int degree() const { return static_cast<int>(c_.size()) - 1; }
  bool is_zero() const { return c_.empty(); }
  bool is_constant() const { return c_.size() <= 1; }
  const std::vector<K>& coeffs() const { return c_; }
  K coeff(int i) const {
    if (i < 0 || i >= static_cast<int>(c_.size())) return Ops::zero();
    return c_[static_cast<size_t>(i)];
  }
  const K& lc() const { return c_.back(); }

  friend Poly operator+(const Poly& a, const Poly& b) {
    Poly r;
    r.c_.resize(std::max(a.c_.size(), b.c_.size()), Ops::zero());
    for (size_t i = 0; i < a.c_.size(); ++i) r.c_[i] = a.c_[i];
    for (size_t i = 0; i < b.c_.size(); ++i) r.c_[i] = Ops::add(r.c_[i], b.c_[i]);
    r.trim();
    return r;
  }
  friend Poly operator-(const Poly& a, const Poly& b) {
    Poly r;
    r.c_.resize(std::max(a.c_.size(), b.c_.size()), Ops::zero());
    for (size_t i = 0; i < a.c_.size(); ++i) r.c_[i] = a.c_[i];
    for (size_t i = 0; i < b.c_.size(); ++i) r.c_[i] = Ops::sub(r.c_[i], b.c_[i]);
    r.trim();
    return r;
  }
  friend Poly operator-(const Poly& a) {
    Poly r = a;
    for (auto& x : r.c_) x = Ops::neg(x);
    return r;
  }
  friend Poly operator*(const Poly& a, const Poly& b) {
    if (a.is_zero() || b.is_zero()) return Poly();
    Poly r;
    r.c_.assign(a.c_.size() + b.c_.size() - 1, Ops::zero());
    for (size_t i = 0; i < a.c_.size(); ++i) {
      if (Ops::is_zero(a.c_[i])) continue;
      for (size_t j = 0; j < b.c_.size(); ++j) {
        if (Ops::is_zero(b.c_[j])) continue;
        r.c_[i + j] = Ops::add(r.c_[i + j], Ops::mul(a.c_[i], b.c_[j]));
      }
    }
    r.trim();
    return r;
  }
  Poly scaled(const K& s) const {
    if (Ops::is_zero(s)) return Poly();
    Poly r = *this;
    for (auto& x : r.c_) x = Ops::mul(x, s);
    r.trim();
    return r;
  }
  bool operator==(const Poly& b) const {
    if (c_.size() != b.c_.size()) return false;
    for (size_t i = 0; i < c_.size(); ++i)
      if (!Ops::is_zero(Ops::sub(c_[i], b.c_[i]))) return false;
    return true;
  }
  bool operator!=(const Poly& b) const { return !(*this == b); }

  // Euclidean division; denominator must be nonzero.
  static void divrem(const Poly& a, const Poly& b, Poly& q, Poly& r) {
    if (b.is_zero()) throw division_by_zero("polynomial division by zero");
    q = Poly();
    r = a;
    if (a.degree() < b.degree()) return;
    q.c_.assign(static_cast<size_t>(a.degree() - b.degree()) + 1, Ops::zero());
    K lcinv = Ops::inv(b.lc());
    while (!r.is_zero() && r.degree() >= b.degree()) {
      int k = r.degree() - b.degree();
      K f = Ops::mul(r.lc(), lcinv);
      q.c_[static_cast<size_t>(k)] = f;
      for (int i = 0; i <= b.degree(); ++i) {
        size_t idx = static_cast<size_t>(i + k);
        r.c_[idx] = Ops::sub(r.c_[idx], Ops::mul(f, b.c_[static_cast<size_t>(i)]));
      }
      r.trim();
    }
    q.trim();
  }

  // Exact division; throws if a is not a multiple of b.
  static Poly divexact(const Poly& a, const Poly& b) {
    Poly q, r;
    divrem(a, b, q, r);
    if (!r.is_zero()) throw Error("divexact", "inexact polynomial division");
    return q;
  }

  static bool divides(const Poly& b, const Poly& a) {
    if (b.is_zero()) return a.is_zero();
    if (a.is_zero()) return true;
    if (a.degree() < b.degree()) return false;
    Poly q, r;
    divrem(a, b, q, r);
    return r.is_zero();
  }

  Poly derivative() const {
    Poly r;
    if (c_.size() <= 1) return r;
    r.c_.resize(c_.size() - 1);
    for (size_t i = 1; i < c_.size(); ++i) {
      K k = Ops::zero();
      for (size_t j = 0; j < i; ++j) k = Ops::add(k, c_[i]);
      r.c_[i - 1] = k;
    }
    r.trim();
    return r;
  }

  K eval(const K& x) const {
    K r = Ops::zero();
    for (size_t i = c_.size(); i-- > 0;) r = Ops::add(Ops::mul(r, x), c_[i]);
    return r;
  }

  Poly monic() const {
    if (is_zero()) return *this;
    return scaled(Ops::inv(lc()));
  }

  // Square root with exact verification, when the polynomial is a square.
  std::optional<Poly> sqrt() const {
    if (is_zero()) return Poly();
    if (degree() % 2 != 0) return std::nullopt;
    auto lroot = Ops::sqrt(lc());
    if (!lroot) return std::nullopt;
    int m = degree() / 2;
    Poly s = Poly::monomial(m, *lroot);
    // Determine remaining coefficients top-down from (p - s^2).
    K two_l = Ops::add(*lroot, *lroot);
    for (int k = m - 1; k >= 0; --k) {
      Poly diff = *this - s * s;
      K c = diff.coeff(k + m);
      s = s + Poly::monomial(k, Ops::div(c, two_l));
    }
    if (s * s == *this) return s;
    return std::nullopt;
  }

private:
  void trim() {
    while (!c_.empty() && Ops::is_zero(c_.back())) c_.pop_back();
  }
  std::vector<K> c_;
};

// --- gcd ---------------------------------------------------------------

// Generic monic Euclid, adequate for coefficient fields that self-reduce.
template <class K>
Poly<K> poly_gcd_euclid(Poly<K> a, Poly<K> b) {
  using Ops = FieldOps<K>;
  if (a.is_zero()) return b.monic();
  if (b.is_zero()) return a.monic();
  a = a.monic();
  b = b.monic();
  while (!b.is_zero()) {
    Poly<K> q, r;
    Poly<K>::divrem(a, b, q, r);
    a = std::move(b);
    b = r.is_zero() ? r : r.monic();
  }
  (void)sizeof(Ops);
  return a;
}

namespace detail {

// gcd over Q[x] via primitive PRS on integer polynomials, which keeps
// coefficient growth under control compared to fraction Euclid.
inline std::vector<mpz_class> q_clear(const Poly<Rat>& p) {
  mpz_class l(1);
  for (const auto& c : p.coeffs()) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), c.get_den().get_mpz_t());
  std::vector<mpz_class> out(p.coeffs().size());
  for (size_t i = 0; i < out.size(); ++i) {
    Rat c = p.coeffs()[i] * Rat(l);
    out[i] = c.get_num();
  }
  return out;
}

inline mpz_class z_content(const std::vector<mpz_class>& v) {
  mpz_class g(0);
  for (const auto& c : v) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), c.get_mpz_t());
  return g;
}

inline void z_primitive(std::vector<mpz_class>& v) {
  mpz_class g = z_content(v);
  if (g == 0 || g == 1) return;
  for (auto& c : v) mpz_divexact(c.get_mpz_t(), c.get_mpz_t(), g.get_mpz_t());
}

inline void z_trim(std::vector<mpz_class>& v) {
  while (!v.empty() && v.back() == 0) v.pop_back();
}

// r = lc(b)^(da-db+1) * a mod b over Z (pseudo-remainder).
inline std::vector<mpz_class> z_prem(std::vector<mpz_class> a, const std::vector<mpz_class>& b) {
  int da = static_cast<int>(a.size()) - 1, db = static_cast<int>(b.size()) - 1;
  const mpz_class& lb = b.back();
  while (da >= db && !a.empty()) {
    mpz_class la = a.back();
    for (auto& c : a) c *= lb;
    for (int i = 0; i <= db; ++i) a[static_cast<size_t>(da - db + i)] -= la * b[static_cast<size_t>(i)];
    z_trim(a);
    da = static_cast<int>(a.size()) - 1;
  }
  return a;
}

}  // namespace detail

inline Poly<Rat> poly_gcd(const Poly<Rat>& pa, const Poly<Rat>& pb) {
  if (pa.is_zero()) return pb.monic();
  if (pb.is_zero()) return pa.monic();
  if (pa.degree() == 0 || pb.degree() == 0) return Poly<Rat>::one();
  std::vector<mpz_class> a = detail::q_clear(pa), b = detail::q_clear(pb);
  detail::z_primitive(a);
  detail::z_primitive(b);
  if (a.size() < b.size()) std::swap(a, b);
  while (!b.empty()) {
    std::vector<mpz_class> r = detail::z_prem(a, b);
    detail::z_primitive(r);
    a = std::move(b);
    b = std::move(r);
  }
  std::vector<Rat> coeffs(a.size());
  for (size_t i = 0; i < a.size(); ++i) coeffs[i] = Rat(a[i]);
  return Poly<Rat>(std::move(coeffs)).monic();
}

template <class K>
Poly<K> poly_gcd(const Poly<K>& a, const Poly<K>& b) {
  return poly_gcd_euclid(a, b);
}

}  // namespace taurec

#endif
