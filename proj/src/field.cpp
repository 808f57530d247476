#include <taurec/field.hpp>

#include <sstream>

namespace taurec {

namespace {

template <class T>
constexpr int level_of = -1;
template <>
constexpr int level_of<Rat> = 0;
template <>
constexpr int level_of<RF1> = 1;
template <>
constexpr int level_of<RF2> = 2;

int payload_level(const Payload& p) {
  return static_cast<int>(p.index() >= 3 ? p.index() - 3 : p.index());
}
bool payload_quad(const Payload& p) { return p.index() >= 3; }

BasePayload base_zero(int level) {
  switch (level) {
    case 0: return Rat(0);
    case 1: return RF1::zero();
    default: return RF2::zero();
  }
}

BasePayload base_one(int level) {
  switch (level) {
    case 0: return Rat(1);
    case 1: return RF1::one();
    default: return RF2::one();
  }
}

// Lift a base payload one rational-function level up (as a constant).
BasePayload base_lift(const BasePayload& p) {
  if (std::holds_alternative<Rat>(p)) return RF1(std::get<Rat>(p));
  if (std::holds_alternative<RF1>(p)) return RF2(std::get<RF1>(p));
  throw Error("tower", "no layer above the second symbol layer");
}

int base_level(const BasePayload& p) { return static_cast<int>(p.index()); }

BasePayload base_promote(BasePayload p, int to_level) {
  while (base_level(p) < to_level) p = base_lift(p);
  return p;
}

template <class Op>
BasePayload base_binop(const BasePayload& a, const BasePayload& b, Op op) {
  return std::visit(
      [&](const auto& x) -> BasePayload {
        using T = std::decay_t<decltype(x)>;
        return op(x, std::get<T>(b));
      },
      a);
}

BasePayload base_add(const BasePayload& a, const BasePayload& b) {
  return base_binop(a, b, [](const auto& x, const auto& y) { return x + y; });
}
BasePayload base_sub(const BasePayload& a, const BasePayload& b) {
  return base_binop(a, b, [](const auto& x, const auto& y) { return x - y; });
}
BasePayload base_mul(const BasePayload& a, const BasePayload& b) {
  return base_binop(a, b, [](const auto& x, const auto& y) { return x * y; });
}
BasePayload base_neg(const BasePayload& a) {
  return std::visit([](const auto& x) -> BasePayload { return -x; }, a);
}
bool base_is_zero(const BasePayload& a) {
  return std::visit(
      [](const auto& x) {
        using T = std::decay_t<decltype(x)>;
        return FieldOps<T>::is_zero(x);
      },
      a);
}
BasePayload base_inv(const BasePayload& a) {
  return std::visit(
      [](const auto& x) -> BasePayload {
        using T = std::decay_t<decltype(x)>;
        return FieldOps<T>::inv(x);
      },
      a);
}
BasePayload base_div(const BasePayload& a, const BasePayload& b) {
  return base_mul(a, base_inv(b));
}
bool base_equal(const BasePayload& a, const BasePayload& b) {
  return base_is_zero(base_sub(a, b));
}
std::optional<BasePayload> base_sqrt(const BasePayload& a) {
  return std::visit(
      [](const auto& x) -> std::optional<BasePayload> {
        using T = std::decay_t<decltype(x)>;
        auto s = FieldOps<T>::sqrt(x);
        if (!s) return std::nullopt;
        return BasePayload(*s);
      },
      a);
}

Payload payload_from_base(BasePayload b) {
  return std::visit([](auto&& x) { return Payload(std::move(x)); }, std::move(b));
}

BasePayload payload_to_base(const Payload& p) {
  switch (p.index()) {
    case 0: return std::get<Rat>(p);
    case 1: return std::get<RF1>(p);
    case 2: return std::get<RF2>(p);
    default: throw Error("tower", "payload has a quadratic part");
  }
}

template <class B>
Payload make_quad(B re, B im) {
  return Payload(QuadExt<B>{std::move(re), std::move(im)});
}

Payload quad_payload(BasePayload re, BasePayload im) {
  int lvl = std::max(base_level(re), base_level(im));
  re = base_promote(std::move(re), lvl);
  im = base_promote(std::move(im), lvl);
  switch (lvl) {
    case 0: return make_quad(std::get<Rat>(re), std::get<Rat>(im));
    case 1: return make_quad(std::get<RF1>(re), std::get<RF1>(im));
    default: return make_quad(std::get<RF2>(re), std::get<RF2>(im));
  }
}

BasePayload quad_re_part(const Payload& p) {
  switch (p.index()) {
    case 3: return std::get<QuadExt<Rat>>(p).re;
    case 4: return std::get<QuadExt<RF1>>(p).re;
    case 5: return std::get<QuadExt<RF2>>(p).re;
    default: return payload_to_base(p);
  }
}
BasePayload quad_im_part(const Payload& p) {
  switch (p.index()) {
    case 3: return std::get<QuadExt<Rat>>(p).im;
    case 4: return std::get<QuadExt<RF1>>(p).im;
    case 5: return std::get<QuadExt<RF2>>(p).im;
    default: return base_zero(payload_level(p));
  }
}

// --- polynomial/json helpers --------------------------------------------

nlohmann::json rat_json(const Rat& r) { return rat_str(r); }

nlohmann::json poly_json(const Poly<Rat>& p) {
  nlohmann::json a = nlohmann::json::array();
  for (const auto& c : p.coeffs()) a.push_back(rat_json(c));
  return a;
}
nlohmann::json rf1_json(const RF1& f) {
  return {{"n", poly_json(f.num())}, {"d", poly_json(f.den())}};
}
nlohmann::json poly_json(const Poly<RF1>& p) {
  nlohmann::json a = nlohmann::json::array();
  for (const auto& c : p.coeffs()) a.push_back(rf1_json(c));
  return a;
}
nlohmann::json rf2_json(const RF2& f) {
  return {{"n", poly_json(f.num())}, {"d", poly_json(f.den())}};
}

nlohmann::json base_json(const BasePayload& b) {
  switch (b.index()) {
    case 0: return {{"k", "rat"}, {"v", rat_json(std::get<Rat>(b))}};
    case 1: return {{"k", "rf1"}, {"v", rf1_json(std::get<RF1>(b))}};
    default: return {{"k", "rf2"}, {"v", rf2_json(std::get<RF2>(b))}};
  }
}

Poly<Rat> poly_from_json(const nlohmann::json& a) {
  std::vector<Rat> c;
  for (const auto& x : a) c.push_back(rat_parse(x.get<std::string>()));
  return Poly<Rat>(std::move(c));
}
RF1 rf1_from_json(const nlohmann::json& j) {
  return RF1(poly_from_json(j.at("n")), poly_from_json(j.at("d")));
}
Poly<RF1> poly1_from_json(const nlohmann::json& a) {
  std::vector<RF1> c;
  for (const auto& x : a) c.push_back(rf1_from_json(x));
  return Poly<RF1>(std::move(c));
}
RF2 rf2_from_json(const nlohmann::json& j) {
  return RF2(poly1_from_json(j.at("n")), poly1_from_json(j.at("d")));
}

BasePayload base_from_json(const nlohmann::json& j) {
  const std::string k = j.at("k").get<std::string>();
  if (k == "rat") return rat_parse(j.at("v").get<std::string>());
  if (k == "rf1") return rf1_from_json(j.at("v"));
  if (k == "rf2") return rf2_from_json(j.at("v"));
  throw Error("parse", "unknown payload kind " + k);
}

std::string poly_str(const Poly<Rat>& p, const char* v);

std::string rat_coeff_str(const Rat& r) { return rat_str(r); }

std::string rf1_str(const RF1& f, const char* v) {
  if (f.is_polynomial()) return poly_str(f.num(), v);
  return "(" + poly_str(f.num(), v) + ")/(" + poly_str(f.den(), v) + ")";
}

template <class K, class CoeffStr>
std::string poly_str_t(const Poly<K>& p, const char* v, CoeffStr cs) {
  if (p.is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  for (int i = p.degree(); i >= 0; --i) {
    K c = p.coeff(i);
    if (FieldOps<K>::is_zero(c)) continue;
    if (!first) os << " + ";
    first = false;
    if (i == 0) {
      os << cs(c);
    } else {
      os << "(" << cs(c) << ")*" << v;
      if (i > 1) os << "^" << i;
    }
  }
  return os.str();
}

std::string poly_str(const Poly<Rat>& p, const char* v) {
  return poly_str_t(p, v, rat_coeff_str);
}

}  // namespace

// --- FieldDescriptor -----------------------------------------------------

DescPtr FieldDescriptor::rationals() {
  static DescPtr d = DescPtr(new FieldDescriptor());
  return d;
}

DescPtr FieldDescriptor::with_symbols(std::vector<Var> symbols) {
  auto d = new FieldDescriptor();
  std::sort(symbols.begin(), symbols.end());
  symbols.erase(std::unique(symbols.begin(), symbols.end()), symbols.end());
  d->symbols_ = std::move(symbols);
  return DescPtr(d);
}

DescPtr FieldDescriptor::base() const {
  auto d = new FieldDescriptor();
  d->symbols_ = symbols_;
  return DescPtr(d);
}

bool FieldDescriptor::same(const FieldDescriptor& o) const {
  if (symbols_ != o.symbols_) return false;
  if (quad_d_.has_value() != o.quad_d_.has_value()) return false;
  if (quad_d_ && !base_equal(*quad_d_, *o.quad_d_)) return false;
  return true;
}

bool FieldDescriptor::sub_tower_of(const FieldDescriptor& o) const {
  for (Var v : symbols_)
    if (std::find(o.symbols_.begin(), o.symbols_.end(), v) == o.symbols_.end()) return false;
  if (quad_d_) {
    if (!o.quad_d_) return false;
    BasePayload mine = base_promote(*quad_d_, static_cast<int>(o.symbols_.size()));
    if (!base_equal(mine, *o.quad_d_)) return false;
  }
  return true;
}

nlohmann::json FieldDescriptor::to_json() const {
  nlohmann::json syms = nlohmann::json::array();
  for (Var v : symbols_) syms.push_back(var_name(v));
  nlohmann::json j = {{"symbols", syms}};
  j["quad_d"] = quad_d_ ? base_json(*quad_d_) : nlohmann::json();
  return j;
}

DescPtr FieldDescriptor::from_json(const nlohmann::json& j) {
  std::vector<Var> syms;
  for (const auto& s : j.at("symbols"))
    syms.push_back(s.get<std::string>() == "q0" ? Var::q0 : Var::t);
  DescPtr d = with_symbols(syms);
  if (!j.at("quad_d").is_null()) {
    auto nd = new FieldDescriptor(*d);
    nd->quad_d_ = base_from_json(j.at("quad_d"));
    return DescPtr(nd);
  }
  return d;
}

// --- FieldElement ---------------------------------------------------------

FieldElement::FieldElement() : desc_(FieldDescriptor::rationals()), v_(Rat(0)) {}

FieldElement FieldElement::rational(Rat r) {
  return FieldElement(FieldDescriptor::rationals(), Payload(std::move(r)));
}

FieldElement FieldElement::zero(const DescPtr& desc) {
  Payload p = payload_from_base(base_zero(desc->levels()));
  if (desc->has_quad())
    p = quad_payload(base_zero(desc->levels()), base_zero(desc->levels()));
  return FieldElement(desc, std::move(p));
}

FieldElement FieldElement::one(const DescPtr& desc) {
  Payload p = payload_from_base(base_one(desc->levels()));
  if (desc->has_quad())
    p = quad_payload(base_one(desc->levels()), base_zero(desc->levels()));
  return FieldElement(desc, std::move(p));
}

FieldElement FieldElement::symbol(const DescPtr& desc, Var v) {
  const auto& syms = desc->symbols();
  auto it = std::find(syms.begin(), syms.end(), v);
  if (it == syms.end())
    throw Error("tower", std::string("symbol ") + var_name(v) + " not in descriptor");
  int pos = static_cast<int>(it - syms.begin());  // 0 = innermost
  BasePayload p;
  if (pos == 0) p = RF1::var();
  else p = RF2::var();
  p = base_promote(std::move(p), desc->levels());
  Payload out = payload_from_base(std::move(p));
  if (desc->has_quad()) out = quad_payload(payload_to_base(out), base_zero(desc->levels()));
  return FieldElement(desc, std::move(out));
}

FieldElement FieldElement::sqrt_generator(const DescPtr& desc) {
  if (!desc->has_quad()) throw Error("tower", "descriptor has no quadratic layer");
  return FieldElement(desc, quad_payload(base_zero(desc->levels()), base_one(desc->levels())));
}

bool FieldElement::is_zero() const {
  if (payload_quad(v_)) return base_is_zero(quad_re_part(v_)) && base_is_zero(quad_im_part(v_));
  return base_is_zero(payload_to_base(v_));
}

bool FieldElement::is_one() const { return (*this - one(desc_)).is_zero(); }

bool FieldElement::is_rational() const {
  if (payload_quad(v_) && !base_is_zero(quad_im_part(v_))) return false;
  BasePayload b = quad_re_part(v_);
  while (base_level(b) > 0) {
    if (std::holds_alternative<RF2>(b)) {
      const RF2& f = std::get<RF2>(b);
      if (!f.is_constant()) return false;
      b = f.num().is_zero() ? BasePayload(RF1::zero())
                            : BasePayload(FieldOps<RF1>::div(f.num().coeff(0), f.den().coeff(0)));
    } else {
      const RF1& f = std::get<RF1>(b);
      if (!f.is_constant()) return false;
      b = f.num().is_zero() ? BasePayload(Rat(0))
                            : BasePayload(f.num().coeff(0) / f.den().coeff(0));
    }
  }
  return true;
}

Rat FieldElement::as_rational() const {
  if (!is_rational()) throw Error("tower", "element is not a constant rational");
  BasePayload b = quad_re_part(v_);
  while (base_level(b) > 0) {
    if (std::holds_alternative<RF2>(b)) {
      const RF2& f = std::get<RF2>(b);
      b = f.is_zero() ? BasePayload(RF1::zero())
                      : BasePayload(FieldOps<RF1>::div(f.num().coeff(0), f.den().coeff(0)));
    } else {
      const RF1& f = std::get<RF1>(b);
      b = f.is_zero() ? BasePayload(Rat(0)) : BasePayload(f.num().coeff(0) / f.den().coeff(0));
    }
  }
  return std::get<Rat>(b);
}

FieldElement FieldElement::promoted(const DescPtr& target) const {
  if (desc_->same(*target)) return *this;
  if (!desc_->sub_tower_of(*target))
    throw descriptor_mismatch("cannot embed element into unrelated tower");
  // Promote symbol level first. A symbol set {t} embeds into {q0,t} by
  // reinterpreting the single layer as the outer one.
  BasePayload re = quad_re_part(v_);
  BasePayload im = payload_quad(v_) ? quad_im_part(v_) : base_zero(base_level(re));
  auto lift_to = [&](BasePayload b) {
    if (desc_->levels() == 1 && target->levels() == 2 && desc_->symbols()[0] == Var::t &&
        base_level(b) == 1) {
      // coefficients of the t-layer become constants of Q(q0)
      const RF1& f = std::get<RF1>(b);
      std::vector<RF1> nc, dc;
      for (const auto& c : f.num().coeffs()) nc.push_back(RF1(c));
      for (const auto& c : f.den().coeffs()) dc.push_back(RF1(c));
      return BasePayload(RF2(Poly<RF1>(std::move(nc)), Poly<RF1>(std::move(dc)), false));
    }
    return base_promote(std::move(b), target->levels());
  };
  re = lift_to(std::move(re));
  im = lift_to(std::move(im));
  Payload out;
  if (target->has_quad()) out = quad_payload(std::move(re), std::move(im));
  else {
    if (!base_is_zero(im)) throw descriptor_mismatch("root part cannot embed into base tower");
    out = payload_from_base(std::move(re));
  }
  return FieldElement(target, std::move(out));
}

DescPtr common_descriptor(const FieldElement& a, const FieldElement& b) {
  if (a.desc()->same(*b.desc())) return a.desc();
  if (a.desc()->sub_tower_of(*b.desc())) return b.desc();
  if (b.desc()->sub_tower_of(*a.desc())) return a.desc();
  throw descriptor_mismatch("incompatible field towers");
}

namespace {

// Same-index payload arithmetic without conversion copies; these are the hot
// paths of every computation in the engine.
template <int Sign>
Payload payload_addsub_same(const Payload& a, const Payload& b) {
  switch (a.index()) {
    case 0:
      return Sign > 0 ? Rat(std::get<Rat>(a) + std::get<Rat>(b))
                      : Rat(std::get<Rat>(a) - std::get<Rat>(b));
    case 1:
      return Sign > 0 ? std::get<RF1>(a) + std::get<RF1>(b)
                      : std::get<RF1>(a) - std::get<RF1>(b);
    case 2:
      return Sign > 0 ? std::get<RF2>(a) + std::get<RF2>(b)
                      : std::get<RF2>(a) - std::get<RF2>(b);
    case 3: {
      const auto &x = std::get<QuadExt<Rat>>(a), &y = std::get<QuadExt<Rat>>(b);
      return Sign > 0 ? QuadExt<Rat>{x.re + y.re, x.im + y.im}
                      : QuadExt<Rat>{x.re - y.re, x.im - y.im};
    }
    case 4: {
      const auto &x = std::get<QuadExt<RF1>>(a), &y = std::get<QuadExt<RF1>>(b);
      return Sign > 0 ? QuadExt<RF1>{x.re + y.re, x.im + y.im}
                      : QuadExt<RF1>{x.re - y.re, x.im - y.im};
    }
    default: {
      const auto &x = std::get<QuadExt<RF2>>(a), &y = std::get<QuadExt<RF2>>(b);
      return Sign > 0 ? QuadExt<RF2>{x.re + y.re, x.im + y.im}
                      : QuadExt<RF2>{x.re - y.re, x.im - y.im};
    }
  }
}

template <class B, class D>
QuadExt<B> quad_mul(const QuadExt<B>& x, const QuadExt<B>& y, const D& d) {
  return QuadExt<B>{x.re * y.re + d * (x.im * y.im), x.re * y.im + x.im * y.re};
}

Payload payload_mul_same(const Payload& a, const Payload& b, const FieldDescriptor& desc) {
  switch (a.index()) {
    case 0:
      return Rat(std::get<Rat>(a) * std::get<Rat>(b));
    case 1:
      return std::get<RF1>(a) * std::get<RF1>(b);
    case 2:
      return std::get<RF2>(a) * std::get<RF2>(b);
    case 3:
      return quad_mul(std::get<QuadExt<Rat>>(a), std::get<QuadExt<Rat>>(b),
                      std::get<Rat>(desc.quad_d()));
    case 4: {
      BasePayload dd = base_promote(desc.quad_d(), 1);
      return quad_mul(std::get<QuadExt<RF1>>(a), std::get<QuadExt<RF1>>(b), std::get<RF1>(dd));
    }
    default: {
      BasePayload dd = base_promote(desc.quad_d(), 2);
      return quad_mul(std::get<QuadExt<RF2>>(a), std::get<QuadExt<RF2>>(b), std::get<RF2>(dd));
    }
  }
}

}  // namespace

FieldElement FieldElement::operator-() const {
  if (!payload_quad(v_)) return FieldElement(desc_, payload_from_base(base_neg(payload_to_base(v_))));
  return FieldElement(desc_, quad_payload(base_neg(quad_re_part(v_)), base_neg(quad_im_part(v_))));
}

FieldElement operator+(const FieldElement& a, const FieldElement& b) {
  if (a.desc_.get() == b.desc_.get() || a.desc_->same(*b.desc_))
    return FieldElement(a.desc_, payload_addsub_same<1>(a.v_, b.v_));
  DescPtr d = common_descriptor(a, b);
  FieldElement ap = a.promoted(d), bp = b.promoted(d);
  return FieldElement(d, payload_addsub_same<1>(ap.v_, bp.v_));
}
FieldElement operator-(const FieldElement& a, const FieldElement& b) {
  if (a.desc_.get() == b.desc_.get() || a.desc_->same(*b.desc_))
    return FieldElement(a.desc_, payload_addsub_same<-1>(a.v_, b.v_));
  DescPtr d = common_descriptor(a, b);
  FieldElement ap = a.promoted(d), bp = b.promoted(d);
  return FieldElement(d, payload_addsub_same<-1>(ap.v_, bp.v_));
}
FieldElement operator*(const FieldElement& a, const FieldElement& b) {
  if (a.desc_.get() == b.desc_.get() || a.desc_->same(*b.desc_))
    return FieldElement(a.desc_, payload_mul_same(a.v_, b.v_, *a.desc_));
  DescPtr d = common_descriptor(a, b);
  FieldElement ap = a.promoted(d), bp = b.promoted(d);
  return FieldElement(d, payload_mul_same(ap.v_, bp.v_, *d));
}

FieldElement FieldElement::inverse() const {
  if (is_zero()) throw division_by_zero("field element inverse");
  if (!payload_quad(v_))
    return FieldElement(desc_, payload_from_base(base_inv(payload_to_base(v_))));
  // 1/(a + b s) = (a - b s)/(a^2 - d b^2)
  BasePayload re = quad_re_part(v_), im = quad_im_part(v_);
  BasePayload dd = base_promote(desc_->quad_d(), desc_->levels());
  BasePayload nrm = base_sub(base_mul(re, re), base_mul(dd, base_mul(im, im)));
  if (base_is_zero(nrm)) throw division_by_zero("zero norm in quadratic layer");
  BasePayload ninv = base_inv(nrm);
  return FieldElement(desc_, quad_payload(base_mul(re, ninv), base_neg(base_mul(im, ninv))));
}

FieldElement operator/(const FieldElement& a, const FieldElement& b) { return a * b.inverse(); }

FieldElement FieldElement::pow(long n) const {
  if (n == 0) return one(desc_);
  FieldElement base = n > 0 ? *this : inverse();
  unsigned long e = static_cast<unsigned long>(n > 0 ? n : -n);
  FieldElement acc = one(desc_);
  while (e) {
    if (e & 1) acc = acc * base;
    base = base * base;
    e >>= 1;
  }
  return acc;
}

bool FieldElement::operator==(const FieldElement& b) const { return (*this - b).is_zero(); }

FieldElement FieldElement::quad_re() const {
  if (!desc_->has_quad()) return *this;
  return FieldElement(desc_, quad_payload(quad_re_part(v_), base_zero(desc_->levels())));
}

FieldElement FieldElement::quad_im() const {
  if (!desc_->has_quad()) return zero(desc_);
  return FieldElement(desc_, quad_payload(quad_im_part(v_), base_zero(desc_->levels())));
}

std::optional<FieldElement> FieldElement::sqrt() const {
  if (payload_quad(v_) && !base_is_zero(quad_im_part(v_))) return std::nullopt;
  auto s = base_sqrt(quad_re_part(v_));
  if (!s) return std::nullopt;
  Payload p = payload_from_base(*s);
  if (desc_->has_quad()) p = quad_payload(payload_to_base(p), base_zero(desc_->levels()));
  return FieldElement(desc_, std::move(p));
}

std::pair<DescPtr, std::optional<FieldElement>> adjoin_sqrt(const DescPtr& desc,
                                                            const FieldElement& d) {
  if (d.is_zero()) throw Error("adjoin", "cannot adjoin the square root of zero");
  FieldElement dd = d.promoted(desc->has_quad() ? desc->base() : desc);
  if (auto w = dd.sqrt()) return {desc, w->promoted(desc)};
  if (desc->has_quad())
    throw Error("adjoin", "tower already carries a quadratic layer; nested roots rejected");
  auto nd = new FieldDescriptor(*desc);
  nd->quad_d_ = payload_to_base(dd.payload());
  return {DescPtr(nd), std::nullopt};
}

// --- substitution ----------------------------------------------------------

namespace {

Rat rf1_subst(const RF1& f, const Rat& x) {
  Rat dn = f.den().eval(x);
  if (rat_is_zero(dn)) throw division_by_zero("substitution hits a pole");
  return f.num().eval(x) / dn;
}

Rat base_subst(const BasePayload& b, const FieldDescriptor& desc, const std::map<Var, Rat>& m) {
  auto get = [&](int level) -> Rat {
    Var v = desc.symbols().at(static_cast<size_t>(level));
    auto it = m.find(v);
    if (it == m.end())
      throw Error("substitute", std::string("missing value for ") + var_name(v));
    return it->second;
  };
  switch (b.index()) {
    case 0: return std::get<Rat>(b);
    case 1: return rf1_subst(std::get<RF1>(b), get(0));
    default: {
      const RF2& f = std::get<RF2>(b);
      Rat inner = get(0), outer = get(1);
      auto eval1 = [&](const Poly<RF1>& p) {
        Rat acc(0);
        for (int i = p.degree(); i >= 0; --i) acc = acc * outer + rf1_subst(p.coeff(i), inner);
        return acc;
      };
      Rat dn = eval1(f.den());
      if (rat_is_zero(dn)) throw division_by_zero("substitution hits a pole");
      return eval1(f.num()) / dn;
    }
  }
}

}  // namespace

FieldElement FieldElement::substituted(const std::map<Var, Rat>& values) const {
  Rat re = base_subst(quad_re_part(v_), *desc_, values);
  if (!payload_quad(v_) || base_is_zero(quad_im_part(v_))) return rational(re);
  Rat im = base_subst(quad_im_part(v_), *desc_, values);
  Rat dv = base_subst(desc_->quad_d(), *desc_, values);
  if (auto w = rat_sqrt(dv)) return rational(re + im * *w);
  auto [d2, wit] = adjoin_sqrt(FieldDescriptor::rationals(), rational(dv));
  FieldElement root = sqrt_generator(d2);
  return rational(re).promoted(d2) + rational(im).promoted(d2) * root;
}

// --- derivation -------------------------------------------------------------

namespace {

// Derivation of a base payload via the chain rule through every symbol
// layer. The variable images vdots[k] live at the top level L (they may
// depend on outer symbols, e.g. dq0/dt rational in both q0 and t).
BasePayload base_derive(const BasePayload& b, const std::vector<BasePayload>& vdots, int L) {
  switch (b.index()) {
    case 0:
      return base_zero(L);
    case 1: {
      const RF1& f = std::get<RF1>(b);
      BasePayload fp = base_promote(BasePayload(f.derivative()), L);
      return base_mul(fp, vdots.at(0));
    }
    default: {
      const RF2& f = std::get<RF2>(b);
      BasePayload outer = base_mul(base_promote(BasePayload(f.derivative()), L), vdots.at(1));
      // partial derivative through the inner layer, coefficient-wise
      auto dpoly = [](const Poly<RF1>& p) {
        std::vector<RF1> c(p.coeffs().size());
        for (size_t i = 0; i < c.size(); ++i) c[i] = p.coeffs()[i].derivative();
        return Poly<RF1>(std::move(c));
      };
      const Poly<RF1> &N = f.num(), &D = f.den();
      RF2 inner_partial(dpoly(N) * D - N * dpoly(D), D * D);
      BasePayload inner = base_mul(base_promote(BasePayload(inner_partial), L), vdots.at(0));
      return base_add(outer, inner);
    }
  }
}

}  // namespace

FieldElement Derivation::apply(const FieldElement& e) const {
  const DescPtr& desc = e.desc();
  int L = desc->levels();
  std::vector<BasePayload> vdots;
  for (size_t i = 0; i < desc->symbols().size(); ++i) {
    Var v = desc->symbols()[i];
    if (v == Var::q0) {
      BasePayload p = payload_to_base(q0_dot.payload());
      vdots.push_back(base_promote(p, L));
    } else {
      if (!with_t) throw capability_error("derivation does not move t");
      vdots.push_back(base_promote(BasePayload(Rat(1)), L));
    }
  }
  BasePayload re = base_derive(quad_re_part(e.payload()), vdots, L);
  if (!payload_quad(e.payload()) || base_is_zero(quad_im_part(e.payload())))
    return FieldElement(desc, desc->has_quad() ? quad_payload(re, base_zero(desc->levels()))
                                               : payload_from_base(re));
  // d/dt (a + b s) = a' + (b' + b d'/(2d)) s
  BasePayload im = quad_im_part(e.payload());
  BasePayload dpay = base_promote(desc->quad_d(), L);
  BasePayload ddot = base_derive(dpay, vdots, L);
  BasePayload two = base_promote(BasePayload(Rat(2)), L);
  BasePayload corr = base_mul(base_promote(im, L), base_div(ddot, base_mul(two, dpay)));
  BasePayload imd = base_add(base_derive(im, vdots, L), corr);
  return FieldElement(desc, quad_payload(std::move(re), std::move(imd)));
}

// --- serialization -----------------------------------------------------------

nlohmann::json FieldElement::to_json() const {
  nlohmann::json j;
  j["desc"] = desc_->to_json();
  if (payload_quad(v_)) {
    j["re"] = base_json(quad_re_part(v_));
    j["im"] = base_json(quad_im_part(v_));
  } else {
    j["re"] = base_json(payload_to_base(v_));
  }
  return j;
}

FieldElement FieldElement::from_json(const nlohmann::json& j) {
  DescPtr d = FieldDescriptor::from_json(j.at("desc"));
  BasePayload re = base_from_json(j.at("re"));
  re = base_promote(std::move(re), d->levels());
  if (j.contains("im")) {
    BasePayload im = base_promote(base_from_json(j.at("im")), d->levels());
    return FieldElement(d, quad_payload(std::move(re), std::move(im)));
  }
  if (d->has_quad()) return FieldElement(d, quad_payload(std::move(re), base_zero(d->levels())));
  return FieldElement(d, payload_from_base(std::move(re)));
}

std::string FieldElement::str() const {
  const auto& syms = desc_->symbols();
  const char* v1 = syms.size() > 0 ? var_name(syms[0]) : "x";
  const char* v2 = syms.size() > 1 ? var_name(syms[1]) : "t";
  auto base_str = [&](const BasePayload& b) -> std::string {
    switch (b.index()) {
      case 0: return rat_str(std::get<Rat>(b));
      case 1: return rf1_str(std::get<RF1>(b), v1);
      default: {
        const RF2& f = std::get<RF2>(b);
        auto cs = [&](const RF1& c) { return rf1_str(c, v1); };
        std::string n = poly_str_t(f.num(), v2, cs);
        if (f.is_polynomial()) return n;
        return "(" + n + ")/(" + poly_str_t(f.den(), v2, cs) + ")";
      }
    }
  };
  if (!payload_quad(v_)) return base_str(payload_to_base(v_));
  std::string re = base_str(quad_re_part(v_)), im = base_str(quad_im_part(v_));
  if (base_is_zero(quad_im_part(v_))) return re;
  return "(" + re + ") + (" + im + ")*sqrt(" + base_str(desc_->quad_d()) + ")";
}

}  // namespace taurec
