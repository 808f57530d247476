#include <taurec/painleve.hpp>

namespace taurec {

namespace {
FieldElement fe(long n, long d = 1) { return FieldElement::rational(n, d); }
}

FieldElement symbolic_q0_dot(PainleveLabel label, const MonodromyParams& params,
                             const FieldElement& q0, const std::optional<FieldElement>& t) {
  switch (label) {
    case PainleveLabel::PI:
      return -((fe(12) * q0).inverse());
    case PainleveLabel::PII:
      return -(q0 * q0) / (fe(4) * q0.pow(3) + *params.theta);
    case PainleveLabel::PIII: {
      FieldElement den = *params.theta0 * q0.pow(6) - fe(3) * *params.thetainf * q0.pow(4) +
                         fe(3) * *params.theta0 * q0.pow(2) - *params.thetainf;
      return (q0.pow(4) - fe(1)).pow(2) / den;
    }
    case PainleveLabel::PIV: {
      if (!t) throw Error("params", "PIV q0dot needs t");
      FieldElement den =
          fe(3) * q0.pow(4) + fe(2) * *t * q0.pow(3) + *params.theta0 * *params.theta0;
      return -(q0.pow(3) * (*t + fe(2) * q0)) / den;
    }
    default:
      throw capability_error("no rational time derivation for this label");
  }
}

SymbolicSetup make_symbolic_setup(PainleveLabel label, const MonodromyParams& params) {
  SymbolicSetup s;
  s.label = label;
  switch (label) {
    case PainleveLabel::PI:
    case PainleveLabel::PII:
    case PainleveLabel::PIII: {
      s.desc = FieldDescriptor::with_symbols({Var::q0});
      s.q0 = FieldElement::symbol(s.desc, Var::q0);
      s.params = params;
      for (auto* f : {&s.params.theta, &s.params.theta0, &s.params.theta1, &s.params.thetat,
                      &s.params.thetainf})
        if (*f) *f = (*f)->promoted(s.desc);
      validate_params(label, s.params);
      s.t = derive_time(label, s.params, s.q0);
      s.q0_dot = symbolic_q0_dot(label, s.params, s.q0, std::nullopt);
      s.derivation = Derivation{s.q0_dot, false};
      break;
    }
    case PainleveLabel::PIV: {
      s.desc = FieldDescriptor::with_symbols({Var::q0, Var::t});
      s.q0 = FieldElement::symbol(s.desc, Var::q0);
      s.t = FieldElement::symbol(s.desc, Var::t);
      s.params = params;
      if (!s.params.theta0) throw Error("params", "PIV needs theta0");
      s.params.theta0 = s.params.theta0->promoted(s.desc);
      s.params.thetainf = derive_theta_inf_piv(s.q0, s.t, *s.params.theta0);
      s.q0_dot = symbolic_q0_dot(label, s.params, s.q0, s.t);
      s.derivation = Derivation{s.q0_dot, true};
      break;
    }
    default:
      throw capability_error("symbolic coefficients cover PI..PIV only");
  }
  s.p0 = solve_leading_p0(label, s.params, s.q0, s.t);
  // the derivation must annihilate the leading relation
  FieldElement rel = leading_relation(label, s.params, s.q0, s.t);
  if (!rel.is_zero() || !s.derivation.apply(rel).is_zero())
    throw Error("internal", "time derivation inconsistent with the leading relation");
  return s;
}

PainleveFlow<FieldElement> make_symbolic_flow(const SymbolicSetup& setup, int order) {
  typename PainleveFlow<FieldElement>::Ctx ctx{
      FieldElement::zero(setup.desc), FieldElement::one(setup.desc), setup.t,
      [der = setup.derivation](const FieldElement& e) { return der.apply(e); },
      [d = setup.desc](const Rat& r) { return FieldElement::rational(r).promoted(d); }};
  std::array<std::optional<FieldElement>, 5> th{setup.params.theta, setup.params.theta0,
                                                setup.params.theta1, setup.params.thetat,
                                                setup.params.thetainf};
  return PainleveFlow<FieldElement>(setup.label, std::move(ctx), std::move(th), order);
}

JetBase jet_base_of(const SpectralCurve& curve) {
  return JetBase{curve.label, curve.base_desc, curve.params, curve.q0, curve.p0, curve.t};
}

JetBase make_piv_jet_base(const FieldElement& theta0, const Rat& t0) {
  JetBase b;
  b.label = PainleveLabel::PIV;
  b.desc = FieldDescriptor::with_symbols({Var::q0});
  b.q0 = FieldElement::symbol(b.desc, Var::q0);
  b.t = FieldElement::rational(t0).promoted(b.desc);
  b.params.theta0 = theta0.promoted(b.desc);
  b.params.thetainf = derive_theta_inf_piv(b.q0, b.t, *b.params.theta0);
  b.p0 = solve_leading_p0(b.label, b.params, b.q0, b.t);
  return b;
}

NumericSetup make_jet_setup(const JetBase& base, int order, int extra_depth) {
  NumericSetup s;
  s.desc = base.desc;
  s.tau_depth = order + extra_depth;
  s.t = TauSeries::time(s.desc, base.t, s.tau_depth);

  // leading pair as local time series, continued from the exact base values
  // through the flow equations at hbar order zero
  PainleveFlow<TauSeries> probe = make_jet_flow(base, s, 0);
  using HS0 = HSeries<TauSeries>;
  TauSeries zero(s.desc, s.tau_depth);
  TauSeries Q = TauSeries::constant(s.desc, base.q0, s.tau_depth);
  TauSeries P = TauSeries::constant(s.desc, base.p0, s.tau_depth);
  auto f0 = [&](const TauSeries& q, const TauSeries& p) {
    HS0 qs = HS0::constant(zero, q, 1), ps = HS0::constant(zero, p, 1);
    return probe.f(qs, ps).get(0);
  };
  auto g0 = [&](const TauSeries& q, const TauSeries& p) {
    HS0 qs = HS0::constant(zero, q, 1), ps = HS0::constant(zero, p, 1);
    return probe.g(qs, ps).get(0);
  };
  TauSeries dual(s.desc, s.tau_depth);
  dual.set(1, FieldElement::one(s.desc));
  auto jac = [&](auto fn, const TauSeries& dq, const TauSeries& dp) {
    TauSeries v = fn(Q + dq, P + dp) - fn(Q, P);
    return v.get(1);
  };
  FieldElement fq = jac(f0, dual, zero), fp = jac(f0, zero, dual);
  FieldElement gq = jac(g0, dual, zero), gp = jac(g0, zero, dual);
  FieldElement det = fq * gp - fp * gq;
  if (det.is_zero()) throw Error("singular-time", "leading continuation pivot vanishes");
  FieldElement dinv = det.inverse();
  for (int guard = 0; guard < 4 * s.tau_depth; ++guard) {
    TauSeries r1 = f0(Q, P), r2 = g0(Q, P);
    int j = s.tau_depth;
    for (int k = 0; k < s.tau_depth; ++k) {
      if (!r1.get(k).is_zero() || !r2.get(k).is_zero()) {
        j = k;
        break;
      }
    }
    if (j >= s.tau_depth) break;
    if (j == 0) throw Error("leading-relation", "base values do not satisfy the flow");
    FieldElement a = r1.get(j), b = r2.get(j);
    Q.set(j, Q.get(j) - (gp * a - fp * b) * dinv);
    P.set(j, P.get(j) - (fq * b - gq * a) * dinv);
  }
  TauSeries r1 = f0(Q, P), r2 = g0(Q, P);
  if (!r1.is_zero() || !r2.is_zero())
    throw Error("internal", "leading continuation did not converge");
  s.q0 = Q;
  s.p0 = P;
  return s;
}

PainleveFlow<TauSeries> make_jet_flow(const JetBase& base, const NumericSetup& setup, int order) {
  TauSeries zero(setup.desc, setup.tau_depth);
  TauSeries one = TauSeries::constant(setup.desc, FieldElement::one(setup.desc), setup.tau_depth);
  typename PainleveFlow<TauSeries>::Ctx ctx{
      zero, one, setup.t, [](const TauSeries& s) { return s.derivative(); },
      [d = setup.desc, n = setup.tau_depth](const Rat& r) {
        return TauSeries::constant(d, FieldElement::rational(r), n);
      }};
  auto lift = [&](const std::optional<FieldElement>& v) -> std::optional<TauSeries> {
    if (!v) return std::nullopt;
    return TauSeries::constant(setup.desc, v->promoted(setup.desc), setup.tau_depth);
  };
  std::array<std::optional<TauSeries>, 5> th{lift(base.params.theta), lift(base.params.theta0),
                                             lift(base.params.theta1), lift(base.params.thetat),
                                             lift(base.params.thetainf)};
  return PainleveFlow<TauSeries>(base.label, std::move(ctx), std::move(th), order);
}

}  // namespace taurec
