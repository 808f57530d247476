#ifndef TAUREC_HSERIES_HPP
#define TAUREC_HSERIES_HPP

#include <taurec/rat.hpp>

#include <functional>
#include <vector>

namespace taurec {

enum class Parity { even, odd, mixed, zero };

inline const char* parity_name(Parity p) {
  switch (p) {
    case Parity::even: return "even";
    case Parity::odd: return "odd";
    case Parity::mixed: return "mixed";
    default: return "zero";
  }
}

// Truncated formal series in hbar with coefficients in any ring C supporting
// +, -, * and is_zero(). Exponents live in [lo, hi); hi is the truncation
// order, and reading past it throws so callers recompute deeper.
template <class C>
class HSeries {
public:
  HSeries(C zero, int lo, int hi) : zero_(std::move(zero)), lo_(lo), hi_(std::max(lo, hi)) {
    c_.assign(static_cast<size_t>(hi_ - lo_), zero_);
  }

  static HSeries constant(C zero, C value, int hi) {
    HSeries s(zero, 0, hi);
    if (hi > 0) s.set(0, std::move(value));
    return s;
  }
  // the series "hbar"
  static HSeries hbar(C zero, C one, int hi) {
    HSeries s(zero, 1, hi);
    if (hi > 1) s.set(1, std::move(one));
    return s;
  }

  int lo() const { return lo_; }
  int hi() const { return hi_; }
  const C& zero_proto() const { return zero_; }

  int order() const {
    for (int k = lo_; k < hi_; ++k)
      if (!c_[static_cast<size_t>(k - lo_)].is_zero()) return k;
    return hi_;
  }
  bool known_zero() const { return order() >= hi_; }

  C get(int k) const {
    if (k >= hi_)
      throw truncation_error("hbar coefficient " + std::to_string(k) + " beyond truncation " +
                             std::to_string(hi_));
    if (k < lo_) return zero_;
    return c_[static_cast<size_t>(k - lo_)];
  }
  void set(int k, C v) {
    if (k >= hi_ || k < lo_) throw Error("hseries", "set out of range");
    c_[static_cast<size_t>(k - lo_)] = std::move(v);
  }

  friend HSeries operator+(const HSeries& a, const HSeries& b) {
    int hi = std::min(a.hi_, b.hi_);
    int lo = std::min(a.lo_, b.lo_);
    if (lo > hi) lo = hi;
    HSeries r(a.zero_, lo, hi);
    for (int k = lo; k < hi; ++k) r.set(k, a.get(k) + b.get(k));
    return r;
  }
  friend HSeries operator-(const HSeries& a) {
    HSeries r = a;
    for (auto& c : r.c_) c = -c;
    return r;
  }
  friend HSeries operator-(const HSeries& a, const HSeries& b) { return a + (-b); }
  friend HSeries operator*(const HSeries& a, const HSeries& b) {
    int lo = a.lo_ + b.lo_;
    int hi = std::min(a.hi_ + b.lo_, b.hi_ + a.lo_);
    if (hi < lo) hi = lo;
    HSeries r(a.zero_, lo, hi);
    for (int i = a.lo_; i < a.hi_; ++i) {
      const C& ai = a.c_[static_cast<size_t>(i - a.lo_)];
      if (ai.is_zero()) continue;
      for (int j = b.lo_; j < b.hi_ && i + j < hi; ++j) {
        const C& bj = b.c_[static_cast<size_t>(j - b.lo_)];
        if (bj.is_zero()) continue;
        size_t idx = static_cast<size_t>(i + j - lo);
        r.c_[idx] = r.c_[idx] + ai * bj;
      }
    }
    return r;
  }

  HSeries scaled(const C& s) const {
    HSeries r = *this;
    for (auto& c : r.c_) c = c * s;
    return r;
  }
  HSeries shifted(int k) const {  // multiply by hbar^k
    HSeries r = *this;
    r.lo_ += k;
    r.hi_ += k;
    return r;
  }
  HSeries truncated(int hi) const {
    if (hi >= hi_) return *this;
    HSeries r(zero_, std::min(lo_, hi), hi);
    for (int k = r.lo_; k < hi; ++k) r.set(k, get(k));
    return r;
  }

  // requires C::inverse()
  HSeries inverse() const {
    int v = order();
    if (v >= hi_) throw division_by_zero("inverse of a zero hbar series");
    C lead = get(v);
    C linv = lead.inverse();
    int n = hi_ - v;
    HSeries r(zero_, -v, -v + n);
    r.set(-v, linv);
    for (int k = 1; k < n; ++k) {
      C acc = zero_;
      for (int j = 1; j <= k; ++j) acc = acc + get(v + j) * r.get(-v + k - j);
      r.set(-v + k, zero_ - acc * linv);
    }
    return r;
  }
  friend HSeries operator/(const HSeries& a, const HSeries& b) { return a * b.inverse(); }

  HSeries pow(int n) const {
    if (n < 0) return inverse().pow(-n);
    if (n == 0) throw Error("hseries", "pow(0) needs a unit; build it explicitly");
    HSeries r = *this;
    for (int i = 1; i < n; ++i) r = r * *this;
    return r;
  }

  // negate the formal parameter: coefficient at odd exponents flips sign
  HSeries hbar_flipped() const {
    HSeries r = *this;
    for (int k = lo_; k < hi_; ++k)
      if (((k % 2) + 2) % 2 == 1) r.set(k, zero_ - get(k));
    return r;
  }

  Parity parity() const {
    bool has_even = false, has_odd = false;
    for (int k = lo_; k < hi_; ++k) {
      if (c_[static_cast<size_t>(k - lo_)].is_zero()) continue;
      if (((k % 2) + 2) % 2 == 0) has_even = true;
      else has_odd = true;
    }
    if (has_even && has_odd) return Parity::mixed;
    if (has_even) return Parity::even;
    if (has_odd) return Parity::odd;
    return Parity::zero;
  }

  template <class C2, class Fn>
  HSeries<C2> map(C2 zero2, Fn fn) const {
    HSeries<C2> r(zero2, lo_, hi_);
    for (int k = lo_; k < hi_; ++k) r.set(k, fn(get(k)));
    return r;
  }

private:
  C zero_;
  int lo_, hi_;
  std::vector<C> c_;
};

}  // namespace taurec

#endif
