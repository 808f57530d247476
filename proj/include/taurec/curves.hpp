#ifndef TAUREC_CURVES_HPP
#define TAUREC_CURVES_HPP

#include <taurec/laurent.hpp>

#include <optional>

namespace taurec {

enum class PainleveLabel { PI, PII, PIII, PIV, PV, PVI };

const char* label_name(PainleveLabel l);
std::optional<PainleveLabel> label_parse(const std::string& s);

// Monodromy constants; presence depends on the label.
struct MonodromyParams {
  std::optional<FieldElement> theta;      // PII
  std::optional<FieldElement> theta0;     // PIII..PVI
  std::optional<FieldElement> theta1;     // PV, PVI
  std::optional<FieldElement> thetat;     // PVI
  std::optional<FieldElement> thetainf;   // PIII..PVI

  nlohmann::json to_json() const;
};

// Exact non-degeneracy checks; throws Error("singular-monodromy", clause).
void validate_params(PainleveLabel label, const MonodromyParams& p);

// Singular-time polynomial for the label at the given leading data; the
// boolean is true when the time is singular.
struct SingularTimeResult {
  bool singular;
  FieldElement witness;
};
SingularTimeResult singular_time_test(PainleveLabel label, const MonodromyParams& p,
                                      const FieldElement& q0,
                                      const std::optional<FieldElement>& t = std::nullopt);

// Rational time from the leading relation (PI, PII, PIII only).
FieldElement derive_time(PainleveLabel label, const MonodromyParams& p, const FieldElement& q0);

// Resolves the remaining monodromy constant from the leading relation.
FieldElement derive_theta_inf_piv(const FieldElement& q0, const FieldElement& t,
                                  const FieldElement& theta0);

enum class Involution { negate, reciprocal };

struct SpectralCurve {
  PainleveLabel label;
  MonodromyParams params;      // promoted to desc
  DescPtr desc;                // coefficient field, including any adjoined root
  DescPtr base_desc;           // field without the adjoined root

  FieldElement q0, t, p0;
  std::optional<FieldElement> Q0;   // double zero for the PV family

  ZFun E;                      // defining rational function of x (over base_desc)
  ZFun C;                      // square factor of E (PI: E = (x-a) C^2, else (x-a)(x-b) C^2)
  FieldElement double_zero_x;  // over base_desc
  std::vector<FieldElement> finite_x_poles;  // poles of E in x (over base_desc)

  // two-branch data: simple zeros a = m + h, b = m - h with h^2 = h2
  FieldElement m, h2;          // over base_desc; PI: a = m (single simple zero)
  FieldElement h;              // over desc (0 for PI)
  FieldElement a, b;           // over desc

  ZFun xz;                     // x(z)
  ZFun yz;                     // y(z)
  Involution invol;
  std::vector<FieldElement> branch_z;  // {0} or {1, -1}

  bool single_branch() const { return label == PainleveLabel::PI; }

  // involution z -> zbar as a rational map
  ZFun involution_map() const;
  FieldElement involution_at(const FieldElement& z) const;

  nlohmann::json to_json() const;
};

struct CurveInput {
  PainleveLabel label;
  MonodromyParams params;            // rational entries
  std::optional<FieldElement> q0;    // PI..PIV, PVI
  std::optional<FieldElement> t;     // PIV, PVI
  std::optional<FieldElement> Q0;    // PV
  bool symbolic_q0 = false;          // PI/PII/PIII: treat q0 as the symbol
};

SpectralCurve build_curve(const CurveInput& in);

// PV auxiliary data solved from the double zero.
struct PvData {
  DescPtr desc;
  FieldElement t, S, P, q0, p0;  // simple zeros are the roots of x^2 - S x + P
};
PvData pv_curve_data(const MonodromyParams& p, const FieldElement& Q0);

// Monic quadratic factor of the PVI curve; validates the leading relation.
ZPoly pvi_p2(const MonodromyParams& p, const FieldElement& q0, const FieldElement& t);

// Exact PVI tuples satisfying the leading relation, for tests and the CLI.
struct PviTuple {
  Rat q0, t, theta0, theta1, thetat, thetainf;
};
const std::vector<PviTuple>& pvi_catalog();

// Leading momentum from the first compatibility equation.
FieldElement solve_leading_p0(PainleveLabel label, const MonodromyParams& p,
                              const FieldElement& q0, const FieldElement& t);

// Leading relation A(q0, t) (zero at admissible base points).
FieldElement leading_relation(PainleveLabel label, const MonodromyParams& p,
                              const FieldElement& q0, const FieldElement& t);

}  // namespace taurec

#endif
