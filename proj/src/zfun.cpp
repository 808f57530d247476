#include <taurec/zfun.hpp>

#include <sstream>

namespace taurec {

namespace {
void check_mix(const ZPoly& a, const ZPoly& b) {
  if (a.var() != b.var())
    throw Error("variable-mix", "polynomials in " + a.var() + " and " + b.var());
}
}  // namespace

ZPoly ZPoly::constant(DescPtr desc, std::string var, FieldElement c) {
  ZPoly p(desc, std::move(var));
  if (!c.is_zero()) p.c_.push_back(c.promoted(desc));
  return p;
}

ZPoly ZPoly::variable(DescPtr desc, std::string var) {
  return monomial(desc, std::move(var), 1, FieldElement::one(desc));
}

ZPoly ZPoly::monomial(DescPtr desc, std::string var, int deg, FieldElement c) {
  ZPoly p(desc, std::move(var));
  if (c.is_zero()) return p;
  p.c_.assign(static_cast<size_t>(deg) + 1, FieldElement::zero(desc));
  p.c_.back() = c.promoted(desc);
  return p;
}

FieldElement ZPoly::coeff(int i) const {
  if (i < 0 || i >= static_cast<int>(c_.size())) return FieldElement::zero(desc_);
  return c_[static_cast<size_t>(i)];
}

void ZPoly::trim() {
  while (!c_.empty() && c_.back().is_zero()) c_.pop_back();
}

ZPoly operator+(const ZPoly& a, const ZPoly& b) {
  check_mix(a, b);
  DescPtr d = a.c_.empty() ? (b.c_.empty() ? a.desc_ : b.desc_)
                           : (b.c_.empty() ? a.desc_ : common_descriptor(a.c_[0], b.c_[0]));
  if (a.is_zero()) return b;
  if (b.is_zero()) return a;
  ZPoly r(d, a.var_);
  r.c_.assign(std::max(a.c_.size(), b.c_.size()), FieldElement::zero(d));
  for (size_t i = 0; i < a.c_.size(); ++i) r.c_[i] = a.c_[i].promoted(d);
  for (size_t i = 0; i < b.c_.size(); ++i) r.c_[i] = r.c_[i] + b.c_[i];
  r.trim();
  return r;
}

ZPoly operator-(const ZPoly& a) {
  ZPoly r = a;
  for (auto& c : r.c_) c = -c;
  return r;
}

ZPoly operator-(const ZPoly& a, const ZPoly& b) { return a + (-b); }

ZPoly operator*(const ZPoly& a, const ZPoly& b) {
  check_mix(a, b);
  if (a.is_zero() || b.is_zero()) return ZPoly(a.desc_, a.var_);
  DescPtr d = common_descriptor(a.c_[0], b.c_[0]);
  ZPoly r(d, a.var_);
  r.c_.assign(a.c_.size() + b.c_.size() - 1, FieldElement::zero(d));
  for (size_t i = 0; i < a.c_.size(); ++i) {
    if (a.c_[i].is_zero()) continue;
    for (size_t j = 0; j < b.c_.size(); ++j) {
      if (b.c_[j].is_zero()) continue;
      r.c_[i + j] = r.c_[i + j] + a.c_[i] * b.c_[j];
    }
  }
  r.trim();
  return r;
}

ZPoly ZPoly::scaled(const FieldElement& s) const {
  if (s.is_zero()) return ZPoly(desc_, var_);
  ZPoly r = *this;
  for (auto& c : r.c_) c = c * s;
  r.trim();
  return r;
}

bool ZPoly::operator==(const ZPoly& b) const { return (*this - b).is_zero(); }

void ZPoly::divrem(const ZPoly& a, const ZPoly& b, ZPoly& q, ZPoly& r) {
  check_mix(a, b);
  if (b.is_zero()) throw division_by_zero("polynomial division by zero");
  DescPtr d = a.is_zero() ? b.desc_ : common_descriptor(a.c_[0], b.c_[0]);
  q = ZPoly(d, a.var_);
  r = a.promoted(d);
  if (a.degree() < b.degree()) return;
  q.c_.assign(static_cast<size_t>(a.degree() - b.degree()) + 1, FieldElement::zero(d));
  FieldElement lcinv = b.lc().promoted(d).inverse();
  while (!r.is_zero() && r.degree() >= b.degree()) {
    int k = r.degree() - b.degree();
    FieldElement f = r.lc() * lcinv;
    q.c_[static_cast<size_t>(k)] = f;
    for (int i = 0; i <= b.degree(); ++i) {
      size_t idx = static_cast<size_t>(i + k);
      r.c_[idx] = r.c_[idx] - f * b.coeff(i);
    }
    r.trim();
  }
  q.trim();
}

ZPoly ZPoly::divexact(const ZPoly& a, const ZPoly& b) {
  ZPoly q, r;
  divrem(a, b, q, r);
  if (!r.is_zero()) throw Error("divexact", "inexact polynomial division");
  return q;
}

bool ZPoly::divides(const ZPoly& b, const ZPoly& a) {
  if (b.is_zero()) return a.is_zero();
  if (a.is_zero()) return true;
  if (a.degree() < b.degree()) return false;
  ZPoly q, r;
  divrem(a, b, q, r);
  return r.is_zero();
}

ZPoly ZPoly::derivative() const {
  ZPoly r(desc_, var_);
  if (c_.size() <= 1) return r;
  r.c_.resize(c_.size() - 1, FieldElement::zero(desc_));
  for (size_t i = 1; i < c_.size(); ++i)
    r.c_[i - 1] = c_[i] * FieldElement::rational(static_cast<long>(i));
  r.trim();
  return r;
}

FieldElement ZPoly::eval(const FieldElement& x) const {
  FieldElement r = FieldElement::zero(desc_);
  for (size_t i = c_.size(); i-- > 0;) r = r * x + c_[i];
  return r;
}

ZPoly ZPoly::taylor_shift(const FieldElement& x0) const {
  // Horner on (u + x0)
  ZPoly u = ZPoly::variable(desc_, var_);
  ZPoly shift = u + ZPoly::constant(desc_, var_, x0);
  ZPoly acc(desc_, var_);
  for (size_t i = c_.size(); i-- > 0;)
    acc = acc * shift + ZPoly::constant(desc_, var_, c_[i]);
  return acc;
}

ZPoly ZPoly::monic() const {
  if (is_zero()) return *this;
  return scaled(lc().inverse());
}

ZPoly ZPoly::pow(int n) const {
  if (n < 0) throw Error("pow", "negative power of polynomial");
  ZPoly acc = ZPoly::constant(desc_, var_, FieldElement::one(desc_));
  ZPoly b = *this;
  while (n) {
    if (n & 1) acc = acc * b;
    b = b * b;
    n >>= 1;
  }
  return acc;
}

ZPoly ZPoly::compose(const ZPoly& q) const {
  ZPoly acc(q.desc(), q.var());
  for (size_t i = c_.size(); i-- > 0;)
    acc = acc * q + ZPoly::constant(q.desc(), q.var(), c_[i]);
  return acc;
}

ZPoly ZPoly::renamed(const std::string& var) const {
  ZPoly p = *this;
  p.var_ = var;
  return p;
}

ZPoly ZPoly::promoted(const DescPtr& target) const {
  ZPoly p(target, var_);
  p.c_.reserve(c_.size());
  for (const auto& c : c_) p.c_.push_back(c.promoted(target));
  return p;
}

ZPoly ZPoly::reversed() const {
  ZPoly p = *this;
  std::reverse(p.c_.begin(), p.c_.end());
  p.trim();
  return p;
}

nlohmann::json ZPoly::to_json() const {
  nlohmann::json a = nlohmann::json::array();
  for (const auto& c : c_) a.push_back(c.to_json());
  return {{"var", var_}, {"coeffs", a}};
}

ZPoly ZPoly::from_json(const nlohmann::json& j) {
  std::vector<FieldElement> c;
  for (const auto& x : j.at("coeffs")) c.push_back(FieldElement::from_json(x));
  DescPtr d = c.empty() ? FieldDescriptor::rationals() : c[0].desc();
  return ZPoly(d, j.at("var").get<std::string>(), std::move(c));
}

std::string ZPoly::str() const {
  if (is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  for (int i = degree(); i >= 0; --i) {
    FieldElement c = coeff(i);
    if (c.is_zero()) continue;
    if (!first) os << " + ";
    first = false;
    if (i == 0) os << c.str();
    else {
      os << "(" << c.str() << ")*" << var_;
      if (i > 1) os << "^" << i;
    }
  }
  return os.str();
}

ZPoly zpoly_gcd(const ZPoly& a, const ZPoly& b) {
  if (a.is_zero()) return b.monic();
  if (b.is_zero()) return a.monic();
  ZPoly x = a.monic(), y = b.monic();
  while (!y.is_zero()) {
    ZPoly q, r;
    ZPoly::divrem(x, y, q, r);
    x = std::move(y);
    y = r.is_zero() ? r : r.monic();
  }
  return x;
}

// --- ZFun -------------------------------------------------------------------

ZFun::ZFun(ZPoly num) : num_(std::move(num)), den_(ZPoly::constant(num_.desc(), num_.var(), FieldElement::one(num_.desc()))) {}

ZFun::ZFun(ZPoly num, ZPoly den) : num_(std::move(num)), den_(std::move(den)) {
  if (den_.is_zero()) throw division_by_zero("rational function with zero denominator");
  normalize();
}

ZFun ZFun::constant(DescPtr desc, std::string var, FieldElement c) {
  return ZFun(ZPoly::constant(desc, var, std::move(c)));
}

ZFun ZFun::variable(DescPtr desc, std::string var) {
  return ZFun(ZPoly::variable(desc, var));
}

void ZFun::normalize() {
  if (num_.is_zero()) {
    den_ = ZPoly::constant(num_.desc(), num_.var(), FieldElement::one(num_.desc()));
    return;
  }
  if (!den_.lc().is_one()) {
    FieldElement li = den_.lc().inverse();
    num_ = num_.scaled(li);
    den_ = den_.scaled(li);
  }
}

ZFun operator+(const ZFun& a, const ZFun& b) {
  if (a.is_zero()) return b;
  if (b.is_zero()) return a;
  if (a.den_ == b.den_) return ZFun(a.num_ + b.num_, a.den_);
  return ZFun(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_);
}

ZFun operator-(const ZFun& a) {
  ZFun r = a;
  r.num_ = -r.num_;
  return r;
}

ZFun operator-(const ZFun& a, const ZFun& b) { return a + (-b); }

ZFun operator*(const ZFun& a, const ZFun& b) {
  if (a.is_zero() || b.is_zero()) return ZFun(ZPoly(a.desc(), a.var()));
  return ZFun(a.num_ * b.num_, a.den_ * b.den_);
}

ZFun ZFun::inverse() const {
  if (is_zero()) throw division_by_zero("inverse of zero rational function");
  return ZFun(den_, num_);
}

ZFun operator/(const ZFun& a, const ZFun& b) { return a * b.inverse(); }

ZFun ZFun::scaled(const FieldElement& s) const {
  ZFun r = *this;
  r.num_ = r.num_.scaled(s);
  if (r.num_.is_zero()) return ZFun(ZPoly(desc(), var()));
  return r;
}

ZFun ZFun::derivative() const {
  ZPoly n = num_.derivative() * den_ - num_ * den_.derivative();
  return ZFun(n, den_ * den_);
}

ZFun ZFun::pow(int n) const {
  if (n < 0) return inverse().pow(-n);
  return ZFun(num_.pow(n), den_.pow(n));
}

ZFun ZFun::compose(const ZPoly& q) const { return ZFun(num_.compose(q), den_.compose(q)); }

ZFun ZFun::compose(const ZFun& q) const {
  // p(n/d) with p = num/den: clear powers of d
  int dn = num_.degree(), dd = den_.degree();
  int m = std::max(dn, dd);
  auto eval_cleared = [&](const ZPoly& p) {
    // sum p_i n^i d^(m-i)
    ZPoly acc(q.desc(), q.var());
    ZPoly npow = ZPoly::constant(q.desc(), q.var(), FieldElement::one(q.desc()));
    std::vector<ZPoly> npows;
    for (int i = 0; i <= m; ++i) {
      npows.push_back(npow);
      if (i < m) npow = npow * q.num();
    }
    ZPoly dpow = ZPoly::constant(q.desc(), q.var(), FieldElement::one(q.desc()));
    for (int i = m; i >= 0; --i) {
      FieldElement c = p.coeff(i);
      if (!c.is_zero()) acc = acc + (npows[static_cast<size_t>(i)] * dpow).scaled(c);
      if (i > 0) dpow = dpow * q.den();
    }
    return acc;
  };
  return ZFun(eval_cleared(num_), eval_cleared(den_));
}

ZFun ZFun::renamed(const std::string& var) const {
  ZFun r = *this;
  r.num_ = r.num_.renamed(var);
  r.den_ = r.den_.renamed(var);
  return r;
}

ZFun ZFun::promoted(const DescPtr& target) const {
  ZFun r = *this;
  r.num_ = r.num_.promoted(target);
  r.den_ = r.den_.promoted(target);
  return r;
}

FieldElement ZFun::eval(const FieldElement& x) const {
  FieldElement d = den_.eval(x);
  if (d.is_zero()) {
    ZFun red = reduced_full();
    d = red.den_.eval(x);
    if (d.is_zero()) throw division_by_zero("evaluation at a pole");
    return red.num_.eval(x) / d;
  }
  return num_.eval(x) / d;
}

bool ZFun::defined_at(const FieldElement& x) const {
  return !reduced_full().den_.eval(x).is_zero();
}

ZFun ZFun::reduced(const std::vector<ZPoly>& candidates, bool full) const {
  if (num_.is_zero()) return *this;
  ZPoly n = num_, d = den_;
  // constant denominator content first
  for (const auto& f : candidates) {
    if (f.degree() < 1) continue;
    ZPoly ff = f.promoted(n.desc());
    while (d.degree() >= ff.degree() && ZPoly::divides(ff, n) && ZPoly::divides(ff, d)) {
      n = ZPoly::divexact(n, ff);
      d = ZPoly::divexact(d, ff);
    }
  }
  if (full && d.degree() > 0) {
    ZPoly g = zpoly_gcd(n, d);
    if (g.degree() > 0) {
      n = ZPoly::divexact(n, g);
      d = ZPoly::divexact(d, g);
    }
  }
  return ZFun(std::move(n), std::move(d));
}

bool ZFun::operator==(const ZFun& b) const {
  return (num_ * b.den_ - b.num_ * den_).is_zero();
}

std::string ZFun::str() const {
  if (den_.is_constant()) return num_.str();
  return "(" + num_.str() + ")/(" + den_.str() + ")";
}

}  // namespace taurec
