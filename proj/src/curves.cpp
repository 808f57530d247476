#include <taurec/curves.hpp>

namespace taurec {

namespace {

FieldElement fe(long n, long d = 1) { return FieldElement::rational(n, d); }

Error singular_monodromy(const std::string& clause) {
  return Error("singular-monodromy", clause);
}
Error singular_time(const std::string& witness) {
  return Error("singular-time", "singular-time polynomial vanishes: " + witness);
}
Error degenerate(const std::string& what) { return Error("degenerate-curve", what); }

void require_nonzero(const FieldElement& v, const std::string& clause) {
  if (v.is_zero()) throw singular_monodromy(clause);
}

nlohmann::json zfun_json(const ZFun& f) {
  return {{"num", f.num().to_json()}, {"den", f.den().to_json()}};
}

}  // namespace

const char* label_name(PainleveLabel l) {
  switch (l) {
    case PainleveLabel::PI: return "PI";
    case PainleveLabel::PII: return "PII";
    case PainleveLabel::PIII: return "PIII";
    case PainleveLabel::PIV: return "PIV";
    case PainleveLabel::PV: return "PV";
    default: return "PVI";
  }
}

std::optional<PainleveLabel> label_parse(const std::string& s) {
  if (s == "PI" || s == "1" || s == "I") return PainleveLabel::PI;
  if (s == "PII" || s == "2" || s == "II") return PainleveLabel::PII;
  if (s == "PIII" || s == "3" || s == "III") return PainleveLabel::PIII;
  if (s == "PIV" || s == "4" || s == "IV") return PainleveLabel::PIV;
  if (s == "PV" || s == "5" || s == "V") return PainleveLabel::PV;
  if (s == "PVI" || s == "6" || s == "VI") return PainleveLabel::PVI;
  return std::nullopt;
}

nlohmann::json MonodromyParams::to_json() const {
  auto put = [](const std::optional<FieldElement>& v) {
    return v ? v->to_json() : nlohmann::json();
  };
  return {{"theta", put(theta)},
          {"theta0", put(theta0)},
          {"theta1", put(theta1)},
          {"thetat", put(thetat)},
          {"thetainf", put(thetainf)}};
}

void validate_params(PainleveLabel label, const MonodromyParams& p) {
  auto need = [](const std::optional<FieldElement>& v, const char* name) -> const FieldElement& {
    if (!v) throw Error("params", std::string("missing parameter ") + name);
    return *v;
  };
  switch (label) {
    case PainleveLabel::PI:
      return;
    case PainleveLabel::PII:
      require_nonzero(need(p.theta, "theta"), "theta != 0");
      return;
    case PainleveLabel::PIII:
    case PainleveLabel::PIV: {
      const FieldElement &t0 = need(p.theta0, "theta0"), &ti = need(p.thetainf, "thetainf");
      require_nonzero(t0, "theta0 != 0");
      require_nonzero(ti, "thetainf != 0");
      require_nonzero(t0 * t0 - ti * ti, "theta0^2 != thetainf^2");
      return;
    }
    case PainleveLabel::PV: {
      const FieldElement &t0 = need(p.theta0, "theta0"), &t1 = need(p.theta1, "theta1"),
                         &ti = need(p.thetainf, "thetainf");
      require_nonzero(t0, "theta0 != 0");
      require_nonzero(t1, "theta1 != 0");
      require_nonzero(ti, "thetainf != 0");
      for (int e0 : {1, -1})
        for (int e1 : {1, -1})
          require_nonzero(ti + fe(e0) * t0 + fe(e1) * t1,
                          "thetainf + e0 theta0 + e1 theta1 != 0");
      return;
    }
    case PainleveLabel::PVI: {
      const FieldElement &t0 = need(p.theta0, "theta0"), &t1 = need(p.theta1, "theta1"),
                         &tt = need(p.thetat, "thetat"), &ti = need(p.thetainf, "thetainf");
      require_nonzero(t0, "theta0 != 0");
      require_nonzero(t1, "theta1 != 0");
      require_nonzero(tt, "thetat != 0");
      require_nonzero(ti, "thetainf != 0");
      require_nonzero(t0 * t0 - t1 * t1, "theta0^2 != theta1^2");
      for (int e0 : {1, -1})
        for (int e1 : {1, -1}) {
          require_nonzero(ti + fe(e0) * t0 + fe(e1) * t1,
                          "thetainf + e0 theta0 + e1 theta1 != 0");
          for (int et : {1, -1})
            require_nonzero(ti + fe(e0) * t0 + fe(e1) * t1 + fe(et) * tt,
                            "thetainf + e0 theta0 + e1 theta1 + et thetat != 0");
        }
      return;
    }
  }
}

FieldElement leading_relation(PainleveLabel label, const MonodromyParams& p,
                              const FieldElement& q0, const FieldElement& t) {
  switch (label) {
    case PainleveLabel::PI:
      return fe(6) * q0 * q0 + t;
    case PainleveLabel::PII:
      return fe(2) * q0.pow(3) + t * q0 - *p.theta;
    case PainleveLabel::PIII:
      return t * q0.pow(4) + *p.theta0 * q0.pow(3) - *p.thetainf * q0 - t;
    case PainleveLabel::PIV:
      return fe(3) * q0.pow(4) + fe(4) * t * q0.pow(3) +
             (t * t - fe(2) * *p.thetainf) * q0 * q0 - *p.theta0 * *p.theta0;
    case PainleveLabel::PV: {
      const FieldElement &t0 = *p.theta0, &t1 = *p.theta1, &ti = *p.thetainf;
      FieldElement sm = (t0 - t1 - ti).pow(2), sp = (t0 - t1 + ti).pow(2);
      FieldElement c3 = fe(2) * t * t - fe(4) * (t0 + t1) * t - t0 * t0 - t1 * t1 - ti * ti +
                        fe(4) * ti * (t0 - t1) + fe(2) * t0 * t1;
      FieldElement c2 = fe(2) * t * t + fe(4) * (t0 + t1) * t - t0 * t0 - t1 * t1 - ti * ti -
                        fe(4) * ti * (t0 - t1) + fe(2) * t0 * t1;
      return sm * q0.pow(5) - fe(3) * sm * q0.pow(4) - fe(2) * c3 * q0.pow(3) -
             fe(2) * c2 * q0.pow(2) - fe(3) * sp * q0 + sp;
    }
    case PainleveLabel::PVI: {
      const FieldElement &t0 = *p.theta0, &t1 = *p.theta1, &tt = *p.thetat, &ti = *p.thetainf;
      return ti * ti - t0 * t0 * t / (q0 * q0) + (t - fe(1)) * t1 * t1 / ((q0 - fe(1)).pow(2)) -
             tt * tt * t * (t - fe(1)) / ((q0 - t).pow(2));
    }
  }
  throw Error("internal", "unreachable");
}

FieldElement solve_leading_p0(PainleveLabel label, const MonodromyParams& p,
                              const FieldElement& q0, const FieldElement& t) {
  switch (label) {
    case PainleveLabel::PI:
      return FieldElement::zero(q0.desc());
    case PainleveLabel::PII:
      return -(q0 * q0) - t / fe(2);
    case PainleveLabel::PIII:
      return (t * q0 * q0 - *p.thetainf * q0 - t) / (fe(2) * q0 * q0);
    case PainleveLabel::PIV:
      return -(q0 * q0 + t * q0 + *p.theta0) / q0;
    case PainleveLabel::PV: {
      const FieldElement &t0 = *p.theta0, &t1 = *p.theta1, &ti = *p.thetainf;
      FieldElement num = (fe(3) * t0 + t1 + ti) / fe(2) * q0 * q0 - (t + fe(2) * t0 + ti) * q0 +
                         (t0 - t1 + ti) / fe(2);
      return -num / (fe(2) * q0 * (q0 - fe(1)).pow(2));
    }
    case PainleveLabel::PVI: {
      const FieldElement &t0 = *p.theta0, &t1 = *p.theta1, &tt = *p.thetat;
      FieldElement one = FieldElement::one(q0.desc());
      return (t0 * (q0 - one) * (q0 - t) + t1 * q0 * (q0 - t) + tt * q0 * (q0 - one)) /
             (fe(2) * q0 * (q0 - one) * (q0 - t));
    }
  }
  throw Error("internal", "unreachable");
}

SingularTimeResult singular_time_test(PainleveLabel label, const MonodromyParams& p,
                                      const FieldElement& q0,
                                      const std::optional<FieldElement>& t) {
  FieldElement w;
  switch (label) {
    case PainleveLabel::PI:
      w = fe(12) * q0;
      break;
    case PainleveLabel::PII:
      w = fe(4) * q0.pow(3) + *p.theta;
      break;
    case PainleveLabel::PIII:
      w = *p.theta0 * q0.pow(6) - fe(3) * *p.thetainf * q0.pow(4) + fe(3) * *p.theta0 * q0.pow(2) -
          *p.thetainf;
      break;
    case PainleveLabel::PIV:
      w = fe(3) * q0.pow(8) + fe(8) * *p.thetainf * q0.pow(6) +
          fe(6) * *p.theta0 * *p.theta0 * q0.pow(4) + (*p.theta0).pow(4);
      break;
    case PainleveLabel::PV: {
      const FieldElement &t0 = *p.theta0, &t1 = *p.theta1, &ti = *p.thetainf;
      FieldElement sm2 = (t0 - t1 - ti).pow(2), sp2 = (t0 - t1 + ti).pow(2);
      FieldElement mid = t0 * t0 + fe(6) * t0 * t1 + t1 * t1 - ti * ti;
      w = sm2 * sm2 * q0.pow(9) + fe(3) * sm2 * sm2 * q0.pow(8) +
          fe(8) * sm2 * mid * q0.pow(6) - fe(6) * sm2 * sp2 * q0.pow(5) +
          fe(6) * sm2 * sp2 * q0.pow(4) - fe(8) * sp2 * mid * q0.pow(3) - fe(3) * sp2 * sp2 * q0 -
          sp2 * sp2;
      break;
    }
    case PainleveLabel::PVI: {
      if (!t) throw Error("params", "PVI singular-time test needs t");
      const FieldElement &t0 = *p.theta0, &t1 = *p.theta1, &tt = *p.thetat;
      FieldElement tv = *t;
      w = t0 * t0 * tv / q0.pow(3) - (tv - fe(1)) * t1 * t1 / (q0 - fe(1)).pow(3) +
          tv * (tv - fe(1)) * tt * tt / (q0 - tv).pow(3);
      break;
    }
  }
  return {w.is_zero(), w};
}

FieldElement derive_time(PainleveLabel label, const MonodromyParams& p, const FieldElement& q0) {
  switch (label) {
    case PainleveLabel::PI:
      return fe(-6) * q0 * q0;
    case PainleveLabel::PII:
      if (q0.is_zero()) throw degenerate("PII needs q0 != 0");
      return (*p.theta - fe(2) * q0.pow(3)) / q0;
    case PainleveLabel::PIII: {
      if (q0.is_zero()) throw degenerate("PIII needs q0 != 0");
      FieldElement den = q0.pow(4) - fe(1);
      if (den.is_zero()) throw degenerate("PIII needs q0^4 != 1");
      return q0 * (*p.thetainf - *p.theta0 * q0 * q0) / den;
    }
    default:
      throw capability_error(std::string(label_name(label)) +
                             " has no rational time from q0; supply a validated pair");
  }
}

FieldElement derive_theta_inf_piv(const FieldElement& q0, const FieldElement& t,
                                  const FieldElement& theta0) {
  if (q0.is_zero()) throw degenerate("PIV needs q0 != 0");
  return (fe(3) * q0.pow(4) + fe(4) * t * q0.pow(3) + t * t * q0 * q0 - theta0 * theta0) /
         (fe(2) * q0 * q0);
}

ZFun SpectralCurve::involution_map() const {
  ZFun z = ZFun::variable(desc, "z");
  return invol == Involution::negate ? -z : z.inverse();
}

FieldElement SpectralCurve::involution_at(const FieldElement& z) const {
  return invol == Involution::negate ? -z : z.inverse();
}

nlohmann::json SpectralCurve::to_json() const {
  nlohmann::json j;
  j["schema"] = "taurec.curve/1";
  j["label"] = label_name(label);
  j["params"] = params.to_json();
  j["field"] = desc->to_json();
  nlohmann::json base;
  base["q0"] = q0.to_json();
  base["t"] = t.to_json();
  base["p0"] = p0.to_json();
  if (Q0) base["Q0"] = Q0->to_json();
  j["base"] = base;
  j["E"] = zfun_json(E);
  j["x"] = zfun_json(xz);
  j["y"] = zfun_json(yz);
  j["involution"] = invol == Involution::negate ? "negate" : "reciprocal";
  return j;
}

PvData pv_curve_data(const MonodromyParams& p, const FieldElement& Q0) {
  validate_params(PainleveLabel::PV, p);
  if (Q0.is_zero() || (Q0 - fe(1)).is_zero()) throw degenerate("PV needs Q0 outside {0,1}");
  FieldElement t0 = *p.theta0, t1 = *p.theta1, ti = *p.thetainf;
  FieldElement A = Q0.pow(2) * (Q0 - fe(1)).pow(2) * (fe(2) * Q0 - fe(1));
  FieldElement B = fe(-2) * ti * Q0.pow(2) * (Q0 - fe(1)).pow(2);
  FieldElement Cc = (Q0 * (t0 + t1) - t0) * (Q0 * (t0 - t1) - t0);
  DescPtr desc = common_descriptor(Q0, t0 + t1 + ti);
  FieldElement t;
  if (A.is_zero()) {
    t = -Cc / B;
  } else {
    FieldElement disc = B * B - fe(4) * A * Cc;
    auto [d2, wit] = adjoin_sqrt(desc, disc);
    desc = d2;
    FieldElement root = wit ? *wit : FieldElement::sqrt_generator(desc);
    t = (-B.promoted(desc) + root) / (fe(2) * A.promoted(desc));
  }
  if (t.is_zero()) throw degenerate("PV time is zero at this base point");
  FieldElement Q0e = Q0.promoted(desc);
  t0 = t0.promoted(desc);
  t1 = t1.promoted(desc);
  ti = ti.promoted(desc);
  FieldElement P = t0 * t0 / (t * t * Q0e * Q0e);
  FieldElement S = fe(2) * ti / t - fe(2) * Q0e + fe(2);
  // cross-check against the remaining asymptotic condition
  FieldElement check = t * t * (fe(1) - Q0e).pow(2) * (fe(1) - S + P) - t1 * t1;
  if (!check.is_zero()) throw degenerate("PV zero data inconsistent with parameters");
  FieldElement q0 = (Q0e.pow(2) * (t0 - t1) - t0 * (fe(2) * Q0e - fe(1)) +
                     Q0e * (Q0e - fe(1)) * ((fe(2) * Q0e - fe(1)) * t - ti)) /
                    (Q0e * (Q0e - fe(1)) * (t0 - t1 - ti));
  FieldElement den = Q0e * (q0 - fe(1)) + fe(1);
  if (den.is_zero()) throw degenerate("PV momentum undefined at this base point");
  FieldElement p0 = -Q0e * (t0 + t1 + ti) / (fe(2) * den);
  return PvData{desc, t, S, P, q0, p0};
}

ZPoly pvi_p2(const MonodromyParams& p, const FieldElement& q0, const FieldElement& t) {
  validate_params(PainleveLabel::PVI, p);
  FieldElement rel = leading_relation(PainleveLabel::PVI, p, q0, t);
  if (!rel.is_zero())
    throw Error("leading-relation",
                "PVI base pair violates the leading relation; residual = " + rel.str());
  const FieldElement &t0 = *p.theta0, &t1 = *p.theta1, &tt = *p.thetat, &ti = *p.thetainf;
  FieldElement r0 = t0 / ti, r1 = t1 / ti, rt = tt / ti;
  FieldElement c = r0 * r0 * t * t / (q0 * q0);
  FieldElement b = -fe(1) - c + r1 * r1 * (t - fe(1)).pow(2) / (q0 - fe(1)).pow(2);
  DescPtr d = common_descriptor(c, b);
  ZPoly P2(d, "x", {c.promoted(d), b.promoted(d), FieldElement::one(d)});
  // three-point form must agree with the coefficient form
  FieldElement v0 = r0 * r0 * t * t / (q0 * q0);
  FieldElement v1 = (t - fe(1)).pow(2) * r1 * r1 / (q0 - fe(1)).pow(2);
  FieldElement vt = t * t * (t - fe(1)).pow(2) * rt * rt / (q0 - t).pow(2);
  if (!(P2.eval(FieldElement::zero(d)) == v0) || !(P2.eval(FieldElement::one(d)) == v1) ||
      !(P2.eval(t.promoted(d)) == vt))
    throw degenerate("PVI quadratic factor fails its defining conditions");
  return P2;
}

const std::vector<PviTuple>& pvi_catalog() {
  static const std::vector<PviTuple> cat = {
      {rat_of(3), rat_of(4), rat_of(1, 2), rat_of(2), rat_of(1, 2), rat_of(1, 3)},
      {rat_of(-1, 2), rat_of(4), rat_of(1, 2), rat_of(2, 3), rat_of(1), rat_of(2)},
  };
  return cat;
}

SpectralCurve build_curve(const CurveInput& in) {
  SpectralCurve cv;
  cv.label = in.label;
  // PIV resolves thetainf from the base point, so its validation runs later
  if (in.label != PainleveLabel::PIV) validate_params(in.label, in.params);

  DescPtr base = FieldDescriptor::rationals();
  FieldElement q0val;
  if (in.symbolic_q0) {
    if (in.label == PainleveLabel::PIV || in.label == PainleveLabel::PV ||
        in.label == PainleveLabel::PVI)
      throw capability_error("symbolic base points cover PI, PII, PIII only");
    base = FieldDescriptor::with_symbols({Var::q0});
    q0val = FieldElement::symbol(base, Var::q0);
  } else if (in.label != PainleveLabel::PV) {
    if (!in.q0) throw Error("params", "missing q0");
    q0val = *in.q0;
    base = q0val.desc();
  }

  MonodromyParams pp = in.params;
  auto promote_params = [&pp](const DescPtr& d) {
    for (auto* f : {&pp.theta, &pp.theta0, &pp.theta1, &pp.thetat, &pp.thetainf})
      if (*f) *f = (*f)->promoted(d);
  };
  promote_params(base);

  FieldElement t;
  switch (in.label) {
    case PainleveLabel::PI:
    case PainleveLabel::PII:
    case PainleveLabel::PIII:
      t = derive_time(in.label, pp, q0val);
      break;
    case PainleveLabel::PIV: {
      if (!in.t) throw Error("params", "PIV needs (q0, t)");
      t = in.t->promoted(base);
      pp.thetainf = derive_theta_inf_piv(q0val, t, *pp.theta0);
      validate_params(in.label, pp);
      break;
    }
    case PainleveLabel::PV: {
      if (!in.Q0) throw Error("params", "PV is parametrized by the double zero Q0");
      PvData data = pv_curve_data(pp, *in.Q0);
      base = data.desc;
      promote_params(base);
      q0val = data.q0;
      t = data.t;
      cv.Q0 = in.Q0->promoted(base);
      break;
    }
    case PainleveLabel::PVI: {
      if (!in.q0 || !in.t) throw Error("params", "PVI needs a validated pair (q0, t)");
      q0val = *in.q0;
      base = q0val.desc();
      promote_params(base);
      t = in.t->promoted(base);
      if (t.is_zero() || t.is_one()) throw degenerate("PVI needs t outside {0,1}");
      if (q0val.is_zero() || q0val.is_one() || (q0val - t).is_zero())
        throw degenerate("PVI needs q0 outside {0,1,t}");
      break;
    }
  }

  FieldElement rel = leading_relation(in.label, pp, q0val, t);
  if (!rel.is_zero())
    throw Error("leading-relation",
                "base point violates the leading relation; residual = " + rel.str());

  auto st = singular_time_test(in.label, pp, q0val, t);
  if (st.singular) throw singular_time(st.witness.str());

  cv.params = pp;
  cv.base_desc = base;
  cv.q0 = q0val;
  cv.t = t;
  cv.p0 = solve_leading_p0(in.label, pp, q0val, t);

  ZPoly x = ZPoly::variable(base, "x");
  auto cpoly = [&base](const FieldElement& v) {
    return ZPoly::constant(base, "x", v);
  };
  FieldElement one = FieldElement::one(base);

  switch (in.label) {
    case PainleveLabel::PI: {
      cv.C = ZFun((x - cpoly(q0val)).scaled(fe(2).promoted(base)));
      cv.m = fe(-2).promoted(base) * q0val;  // the single simple zero
      cv.h2 = FieldElement::zero(base);
      cv.double_zero_x = q0val;
      cv.E = ZFun(x - cpoly(cv.m)) * cv.C * cv.C;
      break;
    }
    case PainleveLabel::PII: {
      cv.C = ZFun(x - cpoly(q0val));
      cv.m = -q0val;
      cv.h2 = -(*pp.theta) / q0val;
      cv.double_zero_x = q0val;
      break;
    }
    case PainleveLabel::PIII: {
      const FieldElement &t0 = *pp.theta0, &ti = *pp.thetainf;
      FieldElement lead = ti - t0 * q0val * q0val;
      if (lead.is_zero()) throw degenerate("PIII needs thetainf != theta0 q0^2");
      cv.C = ZFun((x.scaled(q0val) + cpoly(one)).scaled(lead),
                  (x * x).scaled(fe(2).promoted(base) * (q0val.pow(4) - one)));
      cv.m = q0val * (ti * q0val * q0val - t0) / lead;
      cv.h2 = cv.m * cv.m - q0val * q0val;
      cv.double_zero_x = -(q0val.inverse());
      cv.finite_x_poles = {FieldElement::zero(base)};
      break;
    }
    case PainleveLabel::PIV: {
      cv.C = ZFun(x - cpoly(q0val), x);
      cv.m = -(q0val + t);
      cv.h2 = (q0val + t).pow(2) - (*pp.theta0).pow(2) / (q0val * q0val);
      cv.double_zero_x = q0val;
      cv.finite_x_poles = {FieldElement::zero(base)};
      break;
    }
    case PainleveLabel::PV: {
      PvData data = pv_curve_data(pp, *cv.Q0);
      cv.C = ZFun((x - cpoly(*cv.Q0)).scaled(t),
                  (x * (x - cpoly(one))).scaled(fe(2).promoted(base)));
      cv.m = data.S / fe(2);
      cv.h2 = data.S * data.S / fe(4) - data.P;
      cv.double_zero_x = *cv.Q0;
      cv.finite_x_poles = {FieldElement::zero(base), one};
      break;
    }
    case PainleveLabel::PVI: {
      ZPoly P2 = pvi_p2(pp, q0val, t);
      cv.C = ZFun((x - cpoly(q0val)).scaled(*pp.thetainf),
                  (x * (x - cpoly(one)) * (x - cpoly(t))).scaled(fe(2).promoted(base)));
      cv.m = -P2.coeff(1) / fe(2);
      cv.h2 = cv.m * cv.m - P2.coeff(0);
      cv.double_zero_x = q0val;
      cv.finite_x_poles = {FieldElement::zero(base), one, t};
      break;
    }
  }

  if (in.label != PainleveLabel::PI) {
    if (cv.h2.is_zero()) throw degenerate("simple zeros coincide");
    ZPoly quad(base, "x", {cv.m * cv.m - cv.h2, fe(-2).promoted(base) * cv.m, one});
    if (quad.eval(cv.double_zero_x).is_zero())
      throw singular_time("a simple zero meets the double zero");
    cv.E = ZFun(quad) * cv.C * cv.C;
  } else if ((cv.m - cv.double_zero_x).is_zero()) {
    throw singular_time("the simple zero meets the double zero");
  }

  // adjoin the root used by the uniformization
  DescPtr desc = base;
  if (in.label == PainleveLabel::PI) {
    cv.h = FieldElement::zero(base);
  } else {
    auto [d2, wit] = adjoin_sqrt(base, cv.h2);
    desc = d2;
    cv.h = wit ? *wit : FieldElement::sqrt_generator(desc);
  }
  cv.desc = desc;
  cv.a = cv.m.promoted(desc) + cv.h;
  cv.b = cv.m.promoted(desc) - cv.h;

  ZPoly z = ZPoly::variable(desc, "z");
  auto czc = [&desc](const FieldElement& v) {
    return ZPoly::constant(desc, "z", v.promoted(desc));
  };
  if (in.label == PainleveLabel::PI) {
    cv.invol = Involution::negate;
    cv.branch_z = {FieldElement::zero(desc)};
    cv.xz = ZFun(z * z + czc(cv.m));
    cv.yz = ZFun(z) * cv.C.promoted(desc).compose(cv.xz);
  } else {
    cv.invol = Involution::reciprocal;
    cv.branch_z = {FieldElement::one(desc), fe(-1).promoted(desc)};
    FieldElement mh2 = -(cv.h) / fe(2);
    // x(z) = m - (h/2)(z + 1/z), y(z) = -(h/2)(z - 1/z) C(x(z))
    cv.xz = ZFun((z * z).scaled(mh2) + z.scaled(cv.m.promoted(desc)) + czc(mh2), z);
    ZFun zpart((z * z).scaled(mh2) - czc(mh2), z);
    cv.yz = zpart * cv.C.promoted(desc).compose(cv.xz);
  }

  // defining identity and branch-point regularity
  ZFun lhs = cv.E.promoted(desc).compose(cv.xz);
  if (!(lhs == cv.yz * cv.yz))
    throw Error("internal", "curve parametrization does not satisfy its equation");
  ZFun dx = cv.xz.derivative().reduced_full();
  ZFun dy = cv.yz.derivative();
  for (const auto& r : cv.branch_z) {
    if (!dx.num().eval(r).is_zero() || dx.den().eval(r).is_zero())
      throw Error("internal", "dx does not vanish at a branch point");
    if (dy.eval(r).is_zero()) throw degenerate("dy vanishes at a branch point");
  }

  return cv;
}

}  // namespace taurec
