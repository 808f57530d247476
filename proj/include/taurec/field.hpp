#ifndef TAUREC_FIELD_HPP
#define TAUREC_FIELD_HPP

#include <taurec/ratfun.hpp>

#include <json.hpp>

#include <map>
#include <memory>
#include <optional>
#include <variant>

namespace taurec {

enum class Var : uint8_t { q0 = 0, t = 1 };

inline const char* var_name(Var v) { return v == Var::q0 ? "q0" : "t"; }

using RF1 = RatFun<Rat>;
using RF2 = RatFun<RatFun<Rat>>;

template <class B>
struct QuadExt {
  B re{}, im{};
  bool operator==(const QuadExt&) const = default;
};

// Element payload of the coefficient-field tower: rationals, then up to two
// rational-function layers (q0 innermost, then t), then one optional
// quadratic extension on top.
using BasePayload = std::variant<Rat, RF1, RF2>;
using Payload = std::variant<Rat, RF1, RF2, QuadExt<Rat>, QuadExt<RF1>, QuadExt<RF2>>;

class FieldDescriptor;
using DescPtr = std::shared_ptr<const FieldDescriptor>;

class FieldElement;

// Tower descriptor: ordered symbol layers plus at most one quadratic layer.
// Immutable; shared by elements. Equality is structural.
class FieldDescriptor {
public:
  static DescPtr rationals();
  static DescPtr with_symbols(std::vector<Var> symbols);  // canonical order enforced

  const std::vector<Var>& symbols() const { return symbols_; }
  int levels() const { return static_cast<int>(symbols_.size()); }
  bool has_quad() const { return quad_d_.has_value(); }
  const BasePayload& quad_d() const { return *quad_d_; }
  DescPtr base() const;  // same symbols, quadratic layer removed

  bool same(const FieldDescriptor& o) const;
  // True when this tower embeds into o (symbol prefix, compatible quad layer).
  bool sub_tower_of(const FieldDescriptor& o) const;

  nlohmann::json to_json() const;
  static DescPtr from_json(const nlohmann::json& j);

  friend std::pair<DescPtr, std::optional<FieldElement>> adjoin_sqrt(const DescPtr& desc,
                                                                     const FieldElement& d);

private:
  FieldDescriptor() = default;
  std::vector<Var> symbols_;
  std::optional<BasePayload> quad_d_;
};

class FieldElement {
public:
  FieldElement();  // exact zero over Q
  FieldElement(DescPtr desc, Payload v) : desc_(std::move(desc)), v_(std::move(v)) {}

  static FieldElement rational(Rat r);
  static FieldElement rational(long n, long d = 1) { return rational(rat_of(n, d)); }
  static FieldElement zero(const DescPtr& desc);
  static FieldElement one(const DescPtr& desc);
  static FieldElement symbol(const DescPtr& desc, Var v);
  static FieldElement sqrt_generator(const DescPtr& desc);  // the adjoined root

  const DescPtr& desc() const { return desc_; }
  const Payload& payload() const { return v_; }

  bool is_zero() const;
  bool is_one() const;
  bool is_rational() const;
  Rat as_rational() const;  // throws unless the payload is a constant

  FieldElement operator-() const;
  friend FieldElement operator+(const FieldElement& a, const FieldElement& b);
  friend FieldElement operator-(const FieldElement& a, const FieldElement& b);
  friend FieldElement operator*(const FieldElement& a, const FieldElement& b);
  friend FieldElement operator/(const FieldElement& a, const FieldElement& b);
  FieldElement inverse() const;
  FieldElement pow(long n) const;
  bool operator==(const FieldElement& b) const;
  bool operator!=(const FieldElement& b) const { return !(*this == b); }

  // Embeds the element into a larger tower.
  FieldElement promoted(const DescPtr& target) const;

  // Splits into quadratic-free part and root coefficient (im == 0 when no
  // quadratic layer is present).
  FieldElement quad_re() const;
  FieldElement quad_im() const;

  std::optional<FieldElement> sqrt() const;

  // Full evaluation of every symbol layer at exact rationals.
  FieldElement substituted(const std::map<Var, Rat>& values) const;

  nlohmann::json to_json() const;
  static FieldElement from_json(const nlohmann::json& j);
  std::string str() const;

private:
  DescPtr desc_;
  Payload v_;
};

// Derivation d/dt on the tower: fixed images of the symbol layers.
// Elements of towers without t use dot(q0) alone.
struct Derivation {
  FieldElement q0_dot;   // element of the symbol tower (promoted as needed)
  bool with_t = false;   // when true, d/dt(t) = 1
  FieldElement apply(const FieldElement& e) const;
};

// Returns the extended descriptor together with no witness, or the original
// descriptor with the exact square root when d is already a square.
std::pair<DescPtr, std::optional<FieldElement>> adjoin_sqrt(const DescPtr& desc,
                                                            const FieldElement& d);

// Promotes both operands to a common tower; throws when incompatible.
DescPtr common_descriptor(const FieldElement& a, const FieldElement& b);

}  // namespace taurec

#endif
