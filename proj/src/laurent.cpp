#include <taurec/laurent.hpp>

namespace taurec {

int Laurent::order() const {
  for (int k = lo_; k < hi_; ++k)
    if (!c_[static_cast<size_t>(k - lo_)].is_zero()) return k;
  return hi_;
}

FieldElement Laurent::get(int k) const {
  if (k >= hi_)
    throw truncation_error("laurent coefficient " + std::to_string(k) +
                           " beyond truncation " + std::to_string(hi_));
  if (k < lo_) return FieldElement::zero(desc_);
  return c_[static_cast<size_t>(k - lo_)];
}

void Laurent::set(int k, FieldElement v) {
  if (k >= hi_ || k < lo_) throw Error("laurent", "set out of range");
  c_[static_cast<size_t>(k - lo_)] = std::move(v);
}

Laurent operator+(const Laurent& a, const Laurent& b) {
  int hi = std::min(a.hi_, b.hi_);
  int lo = std::min(a.lo_, b.lo_);
  if (lo > hi) lo = hi;
  Laurent r(a.desc_, lo, hi);
  for (int k = lo; k < hi; ++k) r.set(k, a.get(k) + b.get(k));
  return r;
}

Laurent operator-(const Laurent& a) {
  Laurent r = a;
  for (auto& c : r.c_) c = -c;
  return r;
}

Laurent operator-(const Laurent& a, const Laurent& b) { return a + (-b); }

Laurent operator*(const Laurent& a, const Laurent& b) {
  // truncation: unknown terms of one factor meet the lowest of the other
  int lo = a.lo_ + b.lo_;
  int hi = std::min(a.hi_ + b.lo_, b.hi_ + a.lo_);
  if (hi < lo) hi = lo;
  Laurent r(a.desc_, lo, hi);
  for (int i = a.lo_; i < a.hi_; ++i) {
    FieldElement ai = a.get(i);
    if (ai.is_zero()) continue;
    for (int j = b.lo_; j < b.hi_ && i + j < hi; ++j) {
      FieldElement bj = b.get(j);
      if (bj.is_zero()) continue;
      r.set(i + j, r.get(i + j) + ai * bj);
    }
  }
  return r;
}

Laurent Laurent::scaled(const FieldElement& s) const {
  Laurent r = *this;
  for (auto& c : r.c_) c = c * s;
  return r;
}

Laurent Laurent::shifted(int k) const {
  Laurent r = *this;
  r.lo_ += k;
  r.hi_ += k;
  return r;
}

Laurent Laurent::inverse() const {
  int v = order();
  if (v >= hi_) throw division_by_zero("inverse of a zero laurent series");
  FieldElement lead = get(v);
  int n = hi_ - v;  // relative precision preserved
  Laurent r(desc_, -v, -v + n);
  FieldElement linv = lead.inverse();
  r.set(-v, linv);
  for (int k = 1; k < n; ++k) {
    FieldElement acc = FieldElement::zero(desc_);
    for (int j = 1; j <= k; ++j) acc = acc + get(v + j) * r.get(-v + k - j);
    r.set(-v + k, -(acc * linv));
  }
  return r;
}

Laurent Laurent::truncated(int hi) const {
  if (hi >= hi_) return *this;
  Laurent r(desc_, std::min(lo_, hi), hi);
  for (int k = r.lo_; k < hi; ++k) r.set(k, get(k));
  return r;
}

Laurent Laurent::pow(int n) const {
  if (n < 0) return inverse().pow(-n);
  Laurent one(desc_, 0, std::max(1, (hi_ - lo_) * std::max(n, 1) + 1));
  one.set(0, FieldElement::one(desc_));
  if (n == 0) return one;
  Laurent r = one;
  Laurent b = *this;
  while (n) {
    if (n & 1) r = r * b;
    n >>= 1;
    if (n) b = b * b;
  }
  return r;
}

Laurent Laurent::derivative() const {
  Laurent r(desc_, lo_ - 1, hi_ - 1);
  for (int k = lo_; k < hi_; ++k)
    r.set(k - 1, get(k) * FieldElement::rational(k));
  return r;
}

Laurent Laurent::primitive() const {
  if (!get(-1).is_zero()) throw Error("laurent", "primitive of a series with residue");
  Laurent r(desc_, lo_ + 1, hi_ + 1);
  for (int k = lo_; k < hi_; ++k) {
    if (k == -1) continue;
    r.set(k + 1, get(k) / FieldElement::rational(k + 1));
  }
  return r;
}

Laurent laurent_expand(const ZFun& f, const ExpansionPoint& p, int order) {
  DescPtr d = f.desc();
  if (f.is_zero()) return Laurent::zero(d, order);
  ZPoly num = f.num(), den = f.den();
  if (p.at_infinity) {
    // local coordinate u = 1/z: f(1/u) = u^(degD-degN) * rev(num)/rev(den),
    // and the returned series uses u-exponents
    int dn = num.degree(), dd = den.degree();
    int shift = dd - dn;
    if (order - shift <= 0) return Laurent::zero(d, order);
    Laurent h = laurent_expand(ZFun(num.reversed(), den.reversed()),
                               ExpansionPoint::finite(FieldElement::zero(d)), order - shift);
    return h.shifted(shift);
  }
  const FieldElement& x0 = p.value;
  ZPoly n = num.taylor_shift(x0), dn = den.taylor_shift(x0);
  // valuations
  auto valuation = [](const ZPoly& q) {
    for (int i = 0; i <= q.degree(); ++i)
      if (!q.coeff(i).is_zero()) return i;
    return q.degree() + 1;
  };
  int vn = valuation(n), vd = valuation(dn);
  int lo = vn - vd;
  if (lo >= order) return Laurent::zero(d, order);
  int terms = order - lo;
  // series division of shifted polynomials
  std::vector<FieldElement> a(static_cast<size_t>(terms), FieldElement::zero(d));
  std::vector<FieldElement> b(static_cast<size_t>(terms), FieldElement::zero(d));
  for (int i = 0; i < terms; ++i) {
    a[static_cast<size_t>(i)] = n.coeff(vn + i);
    b[static_cast<size_t>(i)] = dn.coeff(vd + i);
  }
  FieldElement binv = b[0].inverse();
  Laurent r(d, lo, order);
  std::vector<FieldElement> q(static_cast<size_t>(terms), FieldElement::zero(d));
  for (int k = 0; k < terms; ++k) {
    FieldElement acc = a[static_cast<size_t>(k)];
    for (int j = 1; j <= k; ++j)
      acc = acc - b[static_cast<size_t>(j)] * q[static_cast<size_t>(k - j)];
    q[static_cast<size_t>(k)] = acc * binv;
    r.set(lo + k, q[static_cast<size_t>(k)]);
  }
  return r;
}

FieldElement residue(const ZFun& f, const ExpansionPoint& p) {
  if (p.at_infinity) {
    // -[coefficient of 1/z] = -[coefficient of u^1 in the u = 1/z series]
    Laurent l = laurent_expand(f, p, 2);
    return -l.get(1);
  }
  Laurent l = laurent_expand(f, p, 1);
  return l.get(-1);
}

}  // namespace taurec
