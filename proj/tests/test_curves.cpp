#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <taurec/curves.hpp>

using namespace taurec;

namespace {
FieldElement fe(long n, long d = 1) { return FieldElement::rational(n, d); }

CurveInput pi_input(long q0) {
  CurveInput in;
  in.label = PainleveLabel::PI;
  in.q0 = fe(q0);
  return in;
}

CurveInput pii_input(long q0, long theta_n, long theta_d = 1) {
  CurveInput in;
  in.label = PainleveLabel::PII;
  in.q0 = fe(q0);
  in.params.theta = fe(theta_n, theta_d);
  return in;
}

ZFun compose_invol(const SpectralCurve& cv, const ZFun& f) {
  return f.compose(cv.involution_map());
}
}  // namespace

TEST_CASE("PI curve at q0=1") {
  SpectralCurve cv = build_curve(pi_input(1));
  CHECK(cv.t == fe(-6));
  CHECK(cv.p0 == fe(0));
  DescPtr d = cv.desc;
  ZPoly x = ZPoly::variable(d, "x");
  auto c = [&](long v) { return ZPoly::constant(d, "x", fe(v)); };
  ZFun expectE = ZFun((x + c(2)).scaled(fe(4)) * (x - c(1)) * (x - c(1)));
  CHECK(cv.E.promoted(d) == expectE);
  // x(z) = z^2 - 2, y(z) = 2z(z^2-3)
  ZPoly z = ZPoly::variable(d, "z");
  CHECK(cv.xz == ZFun(z * z - ZPoly::constant(d, "z", fe(2))));
  CHECK(cv.yz == ZFun((z * z * z - z.scaled(fe(3))).scaled(fe(2))));
}

TEST_CASE("PII curve at q0=1, theta=1") {
  SpectralCurve cv = build_curve(pii_input(1, 1));
  CHECK(cv.t == fe(-1));
  CHECK(cv.p0 == fe(-1, 2));
  DescPtr bd = cv.base_desc;
  ZPoly x = ZPoly::variable(bd, "x");
  auto c = [&](long v) { return ZPoly::constant(bd, "x", fe(v)); };
  ZFun expectE = ZFun((x - c(1)) * (x - c(1)) * (x * x + x.scaled(fe(2)) + c(2)));
  CHECK(cv.E == expectE);
  CHECK(cv.desc->has_quad());
  CHECK(cv.h * cv.h == fe(-1).promoted(cv.desc));
}

TEST_CASE("curve identity and involution hold for all six labels") {
  std::vector<SpectralCurve> curves;
  curves.push_back(build_curve(pi_input(1)));
  curves.push_back(build_curve(pii_input(1, 1)));
  {
    CurveInput in;
    in.label = PainleveLabel::PIII;
    in.q0 = fe(2);
    in.params.theta0 = fe(1);
    in.params.thetainf = fe(3);
    curves.push_back(build_curve(in));
  }
  {
    CurveInput in;
    in.label = PainleveLabel::PIV;
    in.q0 = fe(1);
    in.t = fe(1);
    in.params.theta0 = fe(1);
    curves.push_back(build_curve(in));
  }
  {
    CurveInput in;
    in.label = PainleveLabel::PV;
    in.Q0 = fe(1, 2);
    in.params.theta0 = fe(2);
    in.params.theta1 = fe(1);
    in.params.thetainf = fe(4);
    curves.push_back(build_curve(in));
  }
  {
    const PviTuple& tup = pvi_catalog()[0];
    CurveInput in;
    in.label = PainleveLabel::PVI;
    in.q0 = FieldElement::rational(tup.q0);
    in.t = FieldElement::rational(tup.t);
    in.params.theta0 = FieldElement::rational(tup.theta0);
    in.params.theta1 = FieldElement::rational(tup.theta1);
    in.params.thetat = FieldElement::rational(tup.thetat);
    in.params.thetainf = FieldElement::rational(tup.thetainf);
    curves.push_back(build_curve(in));
  }
  for (const auto& cv : curves) {
    CAPTURE(label_name(cv.label));
    // E(x(z)) == y(z)^2 (also asserted at construction)
    CHECK(cv.E.promoted(cv.desc).compose(cv.xz) == cv.yz * cv.yz);
    // involution identities as exact rational equalities
    CHECK(compose_invol(cv, cv.xz) == cv.xz);
    CHECK(compose_invol(cv, cv.yz) == -cv.yz);
    // leading relation
    CHECK(leading_relation(cv.label, cv.params, cv.q0, cv.t).is_zero());
  }
}

TEST_CASE("PV data at the pinned base point") {
  MonodromyParams p;
  p.theta0 = fe(2);
  p.theta1 = fe(1);
  p.thetainf = fe(4);
  PvData data = pv_curve_data(p, fe(1, 2));
  CHECK(data.t == fe(3, 2));
  CHECK(data.S == fe(19, 3));
  CHECK(data.P == fe(64, 9));
  CHECK(data.q0 == fe(5, 3));
  CHECK(data.p0 == fe(-21, 16));
  // defining relations hold exactly
  FieldElement t = data.t, Q0 = fe(1, 2);
  CHECK(t * t * Q0 * Q0 * data.P == fe(4));           // theta0^2
  CHECK(t * (fe(2) * Q0 - fe(2) + data.S) == fe(8));  // 2 thetainf
  FieldElement quint = leading_relation(PainleveLabel::PV, p, data.q0, data.t);
  CHECK(quint.is_zero());
}

TEST_CASE("derive_time examples") {
  MonodromyParams none;
  CHECK(derive_time(PainleveLabel::PI, none, fe(1)) == fe(-6));
  MonodromyParams p2;
  p2.theta = fe(1);
  CHECK(derive_time(PainleveLabel::PII, p2, fe(1)) == fe(-1));
  MonodromyParams p3;
  p3.theta0 = fe(1);
  p3.thetainf = fe(3);
  CHECK(derive_time(PainleveLabel::PIII, p3, fe(2)) == fe(-2, 15));
  CHECK_THROWS_AS(derive_time(PainleveLabel::PV, p3, fe(2)), Error);
}

TEST_CASE("PIV leading-constant resolution") {
  CHECK(derive_theta_inf_piv(fe(1), fe(0), fe(1)) == fe(1));
  CHECK(derive_theta_inf_piv(fe(1), fe(1), fe(1)) == fe(7, 2));
  // substituting back annihilates the leading relation
  MonodromyParams p;
  p.theta0 = fe(1);
  p.thetainf = derive_theta_inf_piv(fe(1), fe(1), fe(1));
  CHECK(leading_relation(PainleveLabel::PIV, p, fe(1), fe(1)).is_zero());
}

TEST_CASE("singular time detection") {
  MonodromyParams none;
  CHECK(singular_time_test(PainleveLabel::PI, none, fe(0)).singular);
  CHECK(!singular_time_test(PainleveLabel::PI, none, fe(1)).singular);
  MonodromyParams p2;
  p2.theta = fe(-4);
  CHECK(singular_time_test(PainleveLabel::PII, p2, fe(1)).singular);
  p2.theta = fe(1);
  auto r = singular_time_test(PainleveLabel::PII, p2, fe(1));
  CHECK(!r.singular);
  CHECK(r.witness == fe(5));
  CHECK_THROWS_AS(build_curve(pii_input(1, -4)), Error);
  CHECK_THROWS_AS(build_curve(pi_input(0)), Error);
}

TEST_CASE("rejection of singular monodromy, clause by clause") {
  {
    CurveInput in = pii_input(1, 0);
    CHECK_THROWS_WITH_AS(build_curve(in), doctest::Contains("theta != 0"), Error);
  }
  {
    CurveInput in;
    in.label = PainleveLabel::PIII;
    in.q0 = fe(2);
    in.params.theta0 = fe(3);
    in.params.thetainf = fe(-3);
    CHECK_THROWS_WITH_AS(build_curve(in), doctest::Contains("theta0^2 != thetainf^2"), Error);
  }
  {
    MonodromyParams p;
    p.theta0 = fe(2);
    p.theta1 = fe(1);
    p.thetainf = fe(1);  // 1 - 2 + 1 = 0
    CHECK_THROWS_WITH_AS(pv_curve_data(p, fe(1, 2)),
                         doctest::Contains("thetainf + e0 theta0 + e1 theta1"), Error);
  }
  {
    CurveInput in;
    in.label = PainleveLabel::PVI;
    in.q0 = fe(3);
    in.t = fe(4);
    in.params.theta0 = fe(1, 2);
    in.params.theta1 = fe(1, 2);  // theta0^2 == theta1^2
    in.params.thetat = fe(1, 2);
    in.params.thetainf = fe(1, 3);
    CHECK_THROWS_WITH_AS(build_curve(in), doctest::Contains("theta0^2 != theta1^2"), Error);
  }
  {
    // PVI pair violating the leading relation
    CurveInput in;
    in.label = PainleveLabel::PVI;
    in.q0 = fe(3);
    in.t = fe(5);
    in.params.theta0 = fe(1, 2);
    in.params.theta1 = fe(2);
    in.params.thetat = fe(1, 2);
    in.params.thetainf = fe(1, 3);
    CHECK_THROWS_WITH_AS(build_curve(in), doctest::Contains("leading relation"), Error);
  }
}

TEST_CASE("symbolic curves over Q(q0)") {
  CurveInput in;
  in.label = PainleveLabel::PII;
  in.symbolic_q0 = true;
  in.params.theta = fe(1);
  SpectralCurve cv = build_curve(in);
  DescPtr d0 = FieldDescriptor::with_symbols({Var::q0});
  FieldElement q0 = FieldElement::symbol(d0, Var::q0);
  CHECK(cv.t == (fe(1) - fe(2) * q0.pow(3)) / q0);
  CHECK(cv.h2 == -(q0.inverse()));
  CHECK(cv.desc->has_quad());
  CHECK(cv.E.promoted(cv.desc).compose(cv.xz) == cv.yz * cv.yz);
  CurveInput in1;
  in1.label = PainleveLabel::PI;
  in1.symbolic_q0 = true;
  SpectralCurve cv1 = build_curve(in1);
  CHECK(!cv1.desc->has_quad());
  CHECK(cv1.t == fe(-6) * q0 * q0);
}

TEST_CASE("PVI quadratic factor values") {
  const PviTuple& tup = pvi_catalog()[0];
  MonodromyParams p;
  p.theta0 = FieldElement::rational(tup.theta0);
  p.theta1 = FieldElement::rational(tup.theta1);
  p.thetat = FieldElement::rational(tup.thetat);
  p.thetainf = FieldElement::rational(tup.thetainf);
  FieldElement q0 = FieldElement::rational(tup.q0), t = FieldElement::rational(tup.t);
  ZPoly P2 = pvi_p2(p, q0, t);
  FieldElement ti = *p.thetainf;
  CHECK(P2.eval(fe(0)) == *p.theta0 * *p.theta0 * t * t / (ti * ti * q0 * q0));
  CHECK(P2.eval(fe(1)) ==
        (t - fe(1)).pow(2) * *p.theta1 * *p.theta1 / (ti * ti * (q0 - fe(1)).pow(2)));
  // bad pair reports the residual
  CHECK_THROWS_AS(pvi_p2(p, q0 + fe(1, 7), t), Error);
}

TEST_CASE("curve serialization carries the exact data") {
  SpectralCurve cv = build_curve(pii_input(1, 1));
  nlohmann::json j = cv.to_json();
  CHECK(j.at("schema") == "taurec.curve/1");
  CHECK(j.at("label") == "PII");
  CHECK(!j.at("field").at("quad_d").is_null());
  CHECK(FieldElement::from_json(j.at("base").at("q0")) == fe(1));
  CHECK(FieldElement::from_json(j.at("base").at("t")) == fe(-1));
}
