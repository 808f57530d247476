#ifndef TAUREC_TAUSERIES_HPP
#define TAUREC_TAUSERIES_HPP

#include <taurec/field.hpp>

#include <vector>

namespace taurec {

// Truncated power series in the local time variable around a fixed base
// point. This is the numeric-mode scalar: coefficients are exact field
// elements and d/dt is the formal series derivative.
class TauSeries {
public:
  TauSeries() : desc_(FieldDescriptor::rationals()), valid_(0) {}
  TauSeries(DescPtr desc, int valid) : desc_(std::move(desc)), valid_(valid) {
    c_.assign(static_cast<size_t>(std::max(0, valid_)), FieldElement::zero(desc_));
  }

  static TauSeries constant(DescPtr desc, FieldElement v, int valid) {
    TauSeries s(desc, valid);
    if (valid > 0) s.c_[0] = v.promoted(desc);
    return s;
  }
  // base-point value v plus the local variable
  static TauSeries time(DescPtr desc, FieldElement v, int valid) {
    TauSeries s = constant(desc, std::move(v), valid);
    if (valid > 1) s.c_[1] = FieldElement::one(s.desc_);
    return s;
  }

  const DescPtr& desc() const { return desc_; }
  int valid() const { return valid_; }
  FieldElement value() const { return get(0); }

  FieldElement get(int k) const {
    if (k >= valid_)
      throw truncation_error("tau coefficient " + std::to_string(k) + " beyond validity " +
                             std::to_string(valid_));
    if (k < 0) return FieldElement::zero(desc_);
    return c_[static_cast<size_t>(k)];
  }
  void set(int k, FieldElement v) {
    if (k < 0 || k >= valid_) throw Error("tauseries", "set out of range");
    c_[static_cast<size_t>(k)] = std::move(v);
  }

  // conservative: an exhausted series cannot be proved zero
  bool is_zero() const {
    if (valid_ <= 0) return false;
    for (const auto& c : c_)
      if (!c.is_zero()) return false;
    return true;
  }

  friend TauSeries operator+(const TauSeries& a, const TauSeries& b) {
    TauSeries r(a.desc_, std::min(a.valid_, b.valid_));
    for (int k = 0; k < r.valid_; ++k) r.set(k, a.get(k) + b.get(k));
    return r;
  }
  friend TauSeries operator-(const TauSeries& a) {
    TauSeries r = a;
    for (auto& c : r.c_) c = -c;
    return r;
  }
  friend TauSeries operator-(const TauSeries& a, const TauSeries& b) { return a + (-b); }
  friend TauSeries operator*(const TauSeries& a, const TauSeries& b) {
    TauSeries r(a.desc_, std::min(a.valid_, b.valid_));
    for (int i = 0; i < std::min(a.valid_, r.valid_); ++i) {
      const FieldElement& ai = a.c_[static_cast<size_t>(i)];
      if (ai.is_zero()) continue;
      for (int j = 0; j + i < r.valid_ && j < b.valid_; ++j) {
        const FieldElement& bj = b.c_[static_cast<size_t>(j)];
        if (bj.is_zero()) continue;
        size_t idx = static_cast<size_t>(i + j);
        r.c_[idx] = r.c_[idx] + ai * bj;
      }
    }
    return r;
  }

  TauSeries inverse() const {
    if (valid_ <= 0) throw truncation_error("inverting an exhausted tau series");
    if (c_[0].is_zero()) throw division_by_zero("tau series with zero constant term");
    TauSeries r(desc_, valid_);
    FieldElement linv = c_[0].inverse();
    r.set(0, linv);
    for (int k = 1; k < valid_; ++k) {
      FieldElement acc = FieldElement::zero(desc_);
      for (int j = 1; j <= k; ++j) acc = acc + get(j) * r.get(k - j);
      r.set(k, -(acc * linv));
    }
    return r;
  }
  friend TauSeries operator/(const TauSeries& a, const TauSeries& b) { return a * b.inverse(); }

  // formal d/dt; validity drops by one
  TauSeries derivative() const {
    TauSeries r(desc_, valid_ - 1);
    for (int k = 0; k < r.valid_; ++k)
      r.set(k, get(k + 1) * FieldElement::rational(k + 1));
    return r;
  }

  TauSeries truncated(int valid) const {
    if (valid >= valid_) return *this;
    TauSeries r(desc_, valid);
    for (int k = 0; k < valid; ++k) r.set(k, get(k));
    return r;
  }

private:
  DescPtr desc_;
  std::vector<FieldElement> c_;
  int valid_;
};

}  // namespace taurec

#endif
