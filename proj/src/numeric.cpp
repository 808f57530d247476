#include <taurec/numeric.hpp>

#include <utility>

namespace taurec {

BigComplex::BigComplex(long prec) : prec_(prec) {
  mpfr_init2(re, prec);
  mpfr_init2(im, prec);
  mpfr_set_zero(re, 1);
  mpfr_set_zero(im, 1);
}

BigComplex::BigComplex(const BigComplex& o) : prec_(o.prec_) {
  mpfr_init2(re, prec_);
  mpfr_init2(im, prec_);
  mpfr_set(re, o.re, MPFR_RNDN);
  mpfr_set(im, o.im, MPFR_RNDN);
}

BigComplex::BigComplex(BigComplex&& o) noexcept : prec_(o.prec_) {
  mpfr_init2(re, prec_);
  mpfr_init2(im, prec_);
  mpfr_swap(re, o.re);
  mpfr_swap(im, o.im);
}

BigComplex& BigComplex::operator=(BigComplex o) {
  std::swap(prec_, o.prec_);
  mpfr_swap(re, o.re);
  mpfr_swap(im, o.im);
  return *this;
}

BigComplex::~BigComplex() {
  mpfr_clear(re);
  mpfr_clear(im);
}

BigComplex BigComplex::from_rat(const Rat& r, long prec) {
  BigComplex z(prec);
  mpfr_set_q(z.re, r.get_mpq_t(), MPFR_RNDN);
  return z;
}

BigComplex operator+(const BigComplex& a, const BigComplex& b) {
  BigComplex z(a.prec());
  mpfr_add(z.re, a.re, b.re, MPFR_RNDN);
  mpfr_add(z.im, a.im, b.im, MPFR_RNDN);
  return z;
}

BigComplex operator-(const BigComplex& a, const BigComplex& b) {
  BigComplex z(a.prec());
  mpfr_sub(z.re, a.re, b.re, MPFR_RNDN);
  mpfr_sub(z.im, a.im, b.im, MPFR_RNDN);
  return z;
}

BigComplex operator*(const BigComplex& a, const BigComplex& b) {
  BigComplex z(a.prec());
  mpfr_t t1, t2;
  mpfr_init2(t1, a.prec());
  mpfr_init2(t2, a.prec());
  mpfr_mul(t1, a.re, b.re, MPFR_RNDN);
  mpfr_mul(t2, a.im, b.im, MPFR_RNDN);
  mpfr_sub(z.re, t1, t2, MPFR_RNDN);
  mpfr_mul(t1, a.re, b.im, MPFR_RNDN);
  mpfr_mul(t2, a.im, b.re, MPFR_RNDN);
  mpfr_add(z.im, t1, t2, MPFR_RNDN);
  mpfr_clear(t1);
  mpfr_clear(t2);
  return z;
}

BigComplex operator/(const BigComplex& a, const BigComplex& b) {
  BigComplex n2 = b.abs2();
  BigComplex conj(b.prec());
  mpfr_set(conj.re, b.re, MPFR_RNDN);
  mpfr_neg(conj.im, b.im, MPFR_RNDN);
  BigComplex num = a * conj;
  BigComplex z(a.prec());
  mpfr_div(z.re, num.re, n2.re, MPFR_RNDN);
  mpfr_div(z.im, num.im, n2.re, MPFR_RNDN);
  return z;
}

BigComplex BigComplex::abs2() const {
  BigComplex z(prec_);
  mpfr_t t;
  mpfr_init2(t, prec_);
  mpfr_mul(z.re, re, re, MPFR_RNDN);
  mpfr_mul(t, im, im, MPFR_RNDN);
  mpfr_add(z.re, z.re, t, MPFR_RNDN);
  mpfr_clear(t);
  return z;
}

BigComplex BigComplex::sqrt() const {
  // principal branch via polar form
  BigComplex z(prec_);
  mpfr_t r, theta, half;
  mpfr_init2(r, prec_);
  mpfr_init2(theta, prec_);
  mpfr_init2(half, prec_);
  BigComplex m2 = abs2();
  mpfr_sqrt(r, m2.re, MPFR_RNDN);
  mpfr_sqrt(r, r, MPFR_RNDN);
  mpfr_atan2(theta, im, re, MPFR_RNDN);
  mpfr_div_ui(half, theta, 2, MPFR_RNDN);
  mpfr_cos(z.re, half, MPFR_RNDN);
  mpfr_sin(z.im, half, MPFR_RNDN);
  mpfr_mul(z.re, z.re, r, MPFR_RNDN);
  mpfr_mul(z.im, z.im, r, MPFR_RNDN);
  mpfr_clear(r);
  mpfr_clear(theta);
  mpfr_clear(half);
  return z;
}

BigComplex BigComplex::log() const {
  BigComplex z(prec_);
  BigComplex m2 = abs2();
  mpfr_log(z.re, m2.re, MPFR_RNDN);
  mpfr_div_ui(z.re, z.re, 2, MPFR_RNDN);
  mpfr_atan2(z.im, im, re, MPFR_RNDN);
  return z;
}

bool BigComplex::is_zero_to(long bits) const {
  mpfr_t bound;
  mpfr_init2(bound, prec_);
  mpfr_set_ui(bound, 1, MPFR_RNDN);
  mpfr_mul_2si(bound, bound, -bits, MPFR_RNDN);
  bool small = mpfr_cmpabs(re, bound) < 0 && mpfr_cmpabs(im, bound) < 0;
  mpfr_clear(bound);
  return small;
}

std::string BigComplex::str(int digits) const {
  char* rs = nullptr;
  char* is = nullptr;
  mpfr_asprintf(&rs, "%.*Rg", digits, re);
  mpfr_asprintf(&is, "%.*Rg", digits, im);
  std::string out = std::string(rs) + (mpfr_sgn(im) >= 0 ? "+" : "") + is + "i";
  mpfr_free_str(rs);
  mpfr_free_str(is);
  return out;
}

bool BigComplex::close(const BigComplex& a, const BigComplex& b, long relbits) {
  BigComplex d = a - b;
  mpfr_t scale, da, db;
  mpfr_init2(scale, a.prec());
  mpfr_init2(da, a.prec());
  mpfr_init2(db, a.prec());
  BigComplex a2 = a.abs2(), b2 = b.abs2(), d2 = d.abs2();
  mpfr_sqrt(da, a2.re, MPFR_RNDN);
  mpfr_sqrt(db, b2.re, MPFR_RNDN);
  mpfr_max(scale, da, db, MPFR_RNDN);
  mpfr_set_ui(da, 1, MPFR_RNDN);
  mpfr_max(scale, scale, da, MPFR_RNDN);
  mpfr_mul_2si(scale, scale, -relbits, MPFR_RNDN);
  mpfr_sqrt(db, d2.re, MPFR_RNDN);
  bool ok = mpfr_cmp(db, scale) <= 0;
  mpfr_clear(scale);
  mpfr_clear(da);
  mpfr_clear(db);
  return ok;
}

BigComplex evaluate_numeric(const FieldElement& e, long prec) {
  if (!e.desc()->symbols().empty())
    throw capability_error("numeric evaluation requires substituted symbols");
  if (!e.desc()->has_quad()) return BigComplex::from_rat(e.as_rational(), prec);
  BigComplex root = BigComplex::from_rat(std::get<Rat>(e.desc()->quad_d()), prec).sqrt();
  Rat rre = e.quad_re().as_rational();
  Rat rim = e.quad_im().as_rational();
  return BigComplex::from_rat(rre, prec) + BigComplex::from_rat(rim, prec) * root;
}

}  // namespace taurec
