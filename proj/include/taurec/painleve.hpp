#ifndef TAUREC_PAINLEVE_HPP
#define TAUREC_PAINLEVE_HPP

#include <taurec/curves.hpp>
#include <taurec/hseries.hpp>
#include <taurec/tauseries.hpp>

#include <array>
#include <functional>

namespace taurec {

// Formal series machinery for the six Hamiltonian flows, generic over the
// scalar ring C: field elements with a symbolic time derivation, or truncated
// local time series at an exact base point.
template <class C>
class PainleveFlow {
public:
  using HS = HSeries<C>;

  struct Ctx {
    C zero, one;
    C t;
    std::function<C(const C&)> derive;
    std::function<C(const Rat&)> rat;
  };

  struct Solution {
    HS q, p;
  };

  PainleveFlow(PainleveLabel label, Ctx ctx, std::array<std::optional<C>, 5> thetas, int order)
      : label_(label), ctx_(std::move(ctx)), th_(std::move(thetas)), order_(order) {}

  PainleveLabel label() const { return label_; }
  int order() const { return order_; }
  const Ctx& ctx() const { return ctx_; }

  // constant series with a margin so products keep the working truncation
  HS cs(const C& v) const { return HS::constant(ctx_.zero, v, order_ + 8); }
  HS rs(long n, long d = 1) const { return cs(ctx_.rat(rat_of(n, d))); }
  HS ts() const { return cs(ctx_.t); }
  HS hb(int sign = 1) const {
    HS h = HS::hbar(ctx_.zero, ctx_.one, order_ + 8);
    return sign >= 0 ? h : -h;
  }

  // theta accessors (indices: theta, theta0, theta1, thetat, thetainf)
  HS th(int i) const {
    if (!th_[static_cast<size_t>(i)]) throw Error("params", "missing theta");
    return cs(*th_[static_cast<size_t>(i)]);
  }
  C th_c(int i) const {
    if (!th_[static_cast<size_t>(i)]) throw Error("params", "missing theta");
    return *th_[static_cast<size_t>(i)];
  }

  HS derive_series(const HS& s) const {
    return s.map(ctx_.zero, [this](const C& c) { return ctx_.derive(c); });
  }

  // compatibility pair: hbar qdot = f, hbar pdot = g, with hbar sign for the
  // parity checks
  HS f(const HS& q, const HS& p, int hsign = 1) const;
  HS g(const HS& q, const HS& p, int hsign = 1) const;

  HS hamiltonian(const HS& q, const HS& p, int hsign = 1) const;
  HS tau_logderiv(const HS& q, const HS& p) const;  // hbar^2 d/dt log tau
  HS sigma(const HS& q, const HS& p) const;
  HS sigma_ode_residual(const HS& sigma) const;

  // involution expressing the series at -hbar through the series at +hbar
  Solution parity_map(const Solution& s) const;

  // auxiliary residue coordinates of the PVI connection matrix:
  // z0 from its closed form, z1 solved from the linear momentum relation,
  // zt from the trace relation; validated downstream
  std::array<HS, 3> pvi_z(const HS& q, const HS& p, int hsign = 1) const;

  Solution solve(const C& q0, const C& p0) const;

  // residual pair (hbar qdot - f, hbar pdot - g) for verification
  std::pair<HS, HS> compat_residual(const Solution& s) const;

private:
  PainleveLabel label_;
  Ctx ctx_;
  std::array<std::optional<C>, 5> th_;  // theta, theta0, theta1, thetat, thetainf
  int order_;
};

// --- implementation -------------------------------------------------------

template <class C>
typename PainleveFlow<C>::HS PainleveFlow<C>::f(const HS& q, const HS& p, int hsign) const {
  HS t = ts();
  switch (label_) {
    case PainleveLabel::PI:
      return p;
    case PainleveLabel::PII:
      return p + q * q + t * rs(1, 2);
    case PainleveLabel::PIII:
      return (q * q * p * rs(4) - t * q * q * rs(2) + q * (th(4) * rs(2) - hb(hsign)) + t * rs(2)) *
             ts().inverse();
    case PainleveLabel::PIV:
      return (p * q + q * q + t * q + th(1)) * rs(2);
    case PainleveLabel::PV: {
      HS one = rs(1);
      return (q * (q - one) * (q - one) * p * rs(2) + (th(1) * rs(3) + th(2) + th(4)) * rs(1, 2) * q * q -
              (t + th(1) * rs(2) + th(4)) * q + (th(1) - th(2) + th(4)) * rs(1, 2)) *
             ts().inverse();
    }
    case PainleveLabel::PVI: {
      HS one = rs(1);
      HS num = q * (q - one) * (q - t) * p * rs(2) - th(1) * (q - one) * (q - t) -
               th(2) * q * (q - t) - (th(3) - hb(hsign)) * q * (q - one);
      return num * (ts() * (ts() - one)).inverse();
    }
  }
  throw Error("internal", "unreachable");
}

template <class C>
typename PainleveFlow<C>::HS PainleveFlow<C>::g(const HS& q, const HS& p, int hsign) const {
  HS t = ts();
  switch (label_) {
    case PainleveLabel::PI:
      return q * q * rs(6) + t;
    case PainleveLabel::PII:
      return -(q * p * rs(2)) - th(0);
    case PainleveLabel::PIII:
      return (-(q * p * p * rs(4)) - p * (t * q * rs(-4) + th(4) * rs(2) - hb(hsign)) +
              t * (th(1) + th(4))) *
             ts().inverse();
    case PainleveLabel::PIV:
      return -(p * p) - p * q * rs(4) - t * p * rs(2) - (th(1) + th(4)) * rs(2);
    case PainleveLabel::PV: {
      HS one = rs(1);
      return (-(q * q * rs(3) - q * rs(4) + one) * p * p +
              (-(th(1) * rs(3) + th(2) + th(4)) * q + t + th(1) * rs(2) + th(4)) * p -
              th(1) * (th(1) + th(2) + th(4)) * rs(1, 2)) *
             ts().inverse();
    }
    case PainleveLabel::PVI: {
      HS one = rs(1);
      HS num = (-(q * q * rs(3)) + q * (t + one) * rs(2) - t) * p * p +
               ((q * rs(2) - t - one) * th(1) + (q * rs(2) - t) * th(2) +
                (q * rs(2) - one) * (th(3) - hb(hsign))) *
                   p -
               rs(1, 4) * (th(1) + th(2) + th(3) - th(4)) *
                   (th(1) + th(2) + th(3) + th(4) - hb(hsign) * rs(2));
      return num * (ts() * (ts() - one)).inverse();
    }
  }
  throw Error("internal", "unreachable");
}

template <class C>
typename PainleveFlow<C>::HS PainleveFlow<C>::hamiltonian(const HS& q, const HS& p,
                                                          int hsign) const {
  HS t = ts();
  switch (label_) {
    case PainleveLabel::PI:
      return p * p * rs(1, 2) - q * q * q * rs(2) - t * q;
    case PainleveLabel::PII:
      return p * p * rs(1, 2) + (q * q + t * rs(1, 2)) * p + th(0) * q;
    case PainleveLabel::PIII:
      return tau_logderiv(q, p) - hb(hsign) * p * q * ts().inverse();
    case PainleveLabel::PIV:
      return q * p * p + (q * q + t * q + th(1)) * p * rs(2) + (th(1) + th(4)) * q * rs(2);
    case PainleveLabel::PV: {
      HS one = rs(1);
      HS inner = q * (q - one) * (q - one) * p * p +
                 ((th(1) - th(2) + th(4)) * rs(1, 2) * (q - one) * (q - one) +
                  (th(1) + th(2)) * q * (q - one) - t * q) *
                     p +
                 th(1) * (th(1) + th(2) + th(4)) * q * rs(1, 2);
      return inner * ts().inverse();
    }
    case PainleveLabel::PVI: {
      // the constant factor carries 2 hbar so that the canonical equations
      // reproduce the compatibility pair exactly
      HS one = rs(1);
      HS inner = q * (q - one) * (q - t) * p * p -
                 (th(1) * (q - one) * (q - t) + th(2) * q * (q - t) +
                  (th(3) - hb(hsign)) * q * (q - one)) *
                     p +
                 rs(1, 4) * (th(1) + th(2) + th(3) - th(4)) *
                     (th(1) + th(2) + th(3) + th(4) - hb(hsign) * rs(2)) * (q - t) +
                 rs(1, 2) * ((t - one) * th(1) + t * th(2)) * (th(3) - hb(hsign));
      return inner * (ts() * (ts() - one)).inverse();
    }
  }
  throw Error("internal", "unreachable");
}

template <class C>
typename PainleveFlow<C>::HS PainleveFlow<C>::tau_logderiv(const HS& q, const HS& p) const {
  HS t = ts();
  switch (label_) {
    case PainleveLabel::PI:
    case PainleveLabel::PII:
    case PainleveLabel::PIV:
      return hamiltonian(q, p);
    case PainleveLabel::PIII: {
      HS inner = q * q * p * p * rs(2) + (-(t * q * q) + th(4) * q + t) * p * rs(2) -
                 (th(1) + th(4)) * t * q - t * t - (th(1) * th(1) - th(4) * th(4)) * rs(1, 4);
      return inner * ts().inverse();
    }
    case PainleveLabel::PV:
      return hamiltonian(q, p) - (th(1) + th(4)) * rs(1, 2) -
             (th(1) - th(2) + th(4)) * (th(1) + th(2) + th(4)) * (ts() * rs(4)).inverse();
    case PainleveLabel::PVI: {
      HS one = rs(1);
      HS inner = q * (q - one) * (q - t) * p * p -
                 (th(1) * (q - one) * (q - t) + th(2) * q * (q - t) + th(3) * q * (q - one)) * p +
                 rs(1, 4) * (th(1) + th(2) + th(3) - th(4)) * (th(1) + th(2) + th(3) + th(4)) *
                     (q - t) +
                 rs(1, 2) * ((t - one) * th(1) + t * th(2)) * th(3);
      return inner * (ts() * (ts() - one)).inverse();
    }
  }
  throw Error("internal", "unreachable");
}

template <class C>
typename PainleveFlow<C>::HS PainleveFlow<C>::sigma(const HS& q, const HS& p) const {
  HS t = ts();
  switch (label_) {
    case PainleveLabel::PI:
    case PainleveLabel::PII:
      return hamiltonian(q, p);
    case PainleveLabel::PIII:
      return t * tau_logderiv(q, p);
    case PainleveLabel::PIV:
      return hamiltonian(q, p) + t * (th(1) + th(4) * rs(1, 3)) * rs(2);
    case PainleveLabel::PV:
      return t * hamiltonian(q, p);
    case PainleveLabel::PVI: {
      HS one = rs(1);
      return t * (t - one) * tau_logderiv(q, p) +
             (th(3) * th(3) - th(4) * th(4)) * t * rs(1, 4) -
             (th(1) * th(1) + th(3) * th(3) - th(2) * th(2) - th(4) * th(4)) * rs(1, 8);
    }
  }
  throw Error("internal", "unreachable");
}

template <class C>
typename PainleveFlow<C>::HS PainleveFlow<C>::sigma_ode_residual(const HS& s) const {
  HS t = ts();
  HS sd = derive_series(s);
  HS sdd = derive_series(sd);
  HS h2 = hb() * hb();
  switch (label_) {
    case PainleveLabel::PI:
      return h2 * sdd * sdd + sd * sd * sd * rs(4) + t * sd * rs(2) - s * rs(2);
    case PainleveLabel::PII:
      return h2 * sdd * sdd + sd * sd * sd * rs(4) + t * sd * sd * rs(2) - s * sd * rs(2) -
             th(0) * th(0) * rs(1, 4);
    case PainleveLabel::PIII: {
      HS a = t * sdd - sd;
      return h2 * a * a - (s * rs(2) - t * sd) * (sd * sd - t * t * rs(4)) * rs(4) -
             (th(1) * th(1) + th(4) * th(4)) * (sd * sd + t * t * rs(4)) * rs(2) +
             th(1) * th(4) * t * sd * rs(16);
    }
    case PainleveLabel::PIV: {
      HS al = -(th(1) * rs(2)) - th(4) * rs(2, 3);
      HS be = th(1) * rs(2) - th(4) * rs(2, 3);
      HS ga = th(4) * rs(4, 3);
      return h2 * sdd * sdd - (t * sd - s) * (t * sd - s) * rs(4) +
             (sd + al) * (sd + be) * (sd + ga) * rs(4);
    }
    case PainleveLabel::PV: {
      HS n1 = -(th(1) - th(2) + th(4)) * rs(1, 2);
      HS n2 = -th(1);
      HS n3 = -(th(1) + th(2) + th(4)) * rs(1, 2);
      HS mid = s - t * sd + sd * sd * rs(2) + (n1 + n2 + n3) * sd;
      return h2 * t * t * sdd * sdd - mid * mid +
             sd * (sd + n1) * (sd + n2) * (sd + n3) * rs(4);
    }
    case PainleveLabel::PVI: {
      HS one = rs(1);
      HS mid = sd * (t * sd - s) * rs(2) - sd * sd +
               (th(3) * th(3) - th(4) * th(4)) * (th(2) * th(2) - th(1) * th(1)) * rs(1, 16);
      HS prod = (sd + (th(3) + th(4)) * (th(3) + th(4)) * rs(1, 4)) *
                (sd + (th(3) - th(4)) * (th(3) - th(4)) * rs(1, 4)) *
                (sd + (th(1) + th(2)) * (th(1) + th(2)) * rs(1, 4)) *
                (sd + (th(1) - th(2)) * (th(1) - th(2)) * rs(1, 4));
      return h2 * sd * t * t * (t - one) * (t - one) * sdd * sdd + mid * mid - prod;
    }
  }
  throw Error("internal", "unreachable");
}

template <class C>
typename PainleveFlow<C>::Solution PainleveFlow<C>::parity_map(const Solution& s) const {
  const HS &q = s.q, &p = s.p;
  switch (label_) {
    case PainleveLabel::PI:
      return {q, -p};
    case PainleveLabel::PII:
      return {-q - th(0) * p.inverse(), p};
    case PainleveLabel::PIII: {
      HS t = ts();
      HS num = -(q * p * p * rs(2)) + (t * q - th(4)) * p * rs(2) + t * (th(1) + th(4));
      return {num * ((p - t) * p * rs(2)).inverse(), p};
    }
    case PainleveLabel::PIV: {
      HS qd = p * (p * q + th(1) * rs(2)) * ((p * q + th(1) + th(4)) * rs(2)).inverse();
      HS pd = q * (p * q + th(1) + th(4)) * rs(2) * (p * q + th(1) * rs(2)).inverse();
      return {qd, pd};
    }
    case PainleveLabel::PV: {
      HS u = p * q;
      HS qd = p * (u * rs(2) + th(1) - th(2) + th(4)) *
              ((u + th(1)) * (u * rs(2) + th(1) + th(2) + th(4))).inverse();
      HS pd = q * (u + th(1)) * (u * rs(2) + th(1) + th(2) + th(4)) *
              (u * rs(2) + th(1) - th(2) + th(4)).inverse();
      return {qd, pd};
    }
    case PainleveLabel::PVI: {
      HS t = ts();
      HS one = rs(1);
      auto z = pvi_z(q, p);
      HS w0 = t * t * z[0] * (z[0] + th(1));
      HS w1 = (t - one) * (t - one) * z[1] * (z[1] + th(2));
      HS qd = w0 * (q - one) * (w0 * (q - one) - w1 * q).inverse();
      HS pd = (z[0] + th(1)) * qd.inverse() + (z[1] + th(2)) * (qd - one).inverse() +
              (z[2] + th(3)) * (qd - t).inverse();
      return {qd, pd};
    }
  }
  throw Error("internal", "unreachable");
}

template <class C>
std::array<typename PainleveFlow<C>::HS, 3> PainleveFlow<C>::pvi_z(const HS& q, const HS& p,
                                                                   int hsign) const {
  if (label_ != PainleveLabel::PVI) throw capability_error("z coordinates are a PVI notion");
  HS t = ts();
  HS one = rs(1);
  HS t1 = th(1), t2 = th(2), t3 = th(3), t4 = th(4);
  if (hsign < 0) {
    t1 = t1;  // thetas are even under the flip; only explicit hbar would flip
  }
  HS s = t1 + t2 + t3 - t4;
  HS z0 = (q * q * (q - one) * (q - t) * p * p -
           p * q * (s * q * q - ((t1 + t2 - t4) * t + t1 + t3 - t4) * q + (t1 - t4) * t) +
           rs(1, 4) * s * s * q * q -
           rs(1, 4) * s * ((t1 + t2 - t3 - t4) * t + t1 - t2 - t4 + t3) * q - t * t1 * t4) *
          (t4 * t).inverse();
  // z1 from the linear momentum relation, zt from the trace relation:
  // p = (z0+th0)/q + (z1+th1)/(q-1) + (zt+tht)/(q-t),
  // zt = -z0 - z1 - (th0+th1+tht+thinf)/2
  HS Ssum = (t1 + t2 + t3 + t4) * rs(1, 2);
  HS coef = (q - one).inverse() - (q - t).inverse();
  HS rhs = p - (z0 + t1) * q.inverse() - (t3 - Ssum - z0) * (q - t).inverse() -
           t2 * (q - one).inverse();
  HS z1 = rhs * coef.inverse();
  HS zt = -z0 - z1 - Ssum;
  return {z0, z1, zt};
}

template <class C>
typename PainleveFlow<C>::Solution PainleveFlow<C>::solve(const C& q0, const C& p0) const {
  int hi = order_ + 1;
  HS q(ctx_.zero, 0, hi), p(ctx_.zero, 0, hi);
  q.set(0, q0);
  p.set(0, p0);
  HS f0 = f(q, p), g0 = g(q, p);
  if (!f0.get(0).is_zero() || !g0.get(0).is_zero())
    throw Error("leading-relation", "leading data does not satisfy the flow equations");
  // constant Jacobian of the pair at leading order, via probes
  HS qp = q;
  qp.set(1, ctx_.one);
  HS pp = p;
  pp.set(1, ctx_.one);
  C fq = f(qp, p).get(1) - f0.get(1);
  C fp = f(q, pp).get(1) - f0.get(1);
  C gq = g(qp, p).get(1) - g0.get(1);
  C gp = g(q, pp).get(1) - g0.get(1);
  C det = fq * gp - fp * gq;
  if (det.is_zero())
    throw Error("singular-time", "order-by-order pivot vanishes at this base point");
  C dinv = det.inverse();
  for (int k = 1; k < hi; ++k) {
    HS fe = f(q, p), ge = g(q, p);
    C rhs1 = ctx_.derive(q.get(k - 1)) - fe.get(k);
    C rhs2 = ctx_.derive(p.get(k - 1)) - ge.get(k);
    q.set(k, (gp * rhs1 - fp * rhs2) * dinv);
    p.set(k, (fq * rhs2 - gq * rhs1) * dinv);
  }
  return {q, p};
}

template <class C>
std::pair<typename PainleveFlow<C>::HS, typename PainleveFlow<C>::HS>
PainleveFlow<C>::compat_residual(const Solution& s) const {
  HS qd = derive_series(s.q).shifted(1);
  HS pd = derive_series(s.p).shifted(1);
  return {qd - f(s.q, s.p), pd - g(s.q, s.p)};
}

// --- concrete setups --------------------------------------------------------

// Symbolic coefficients: Q(q0) for PI/PII/PIII, Q(q0)(t) for PIV.
struct SymbolicSetup {
  PainleveLabel label;
  DescPtr desc;
  FieldElement q0, t, p0;
  MonodromyParams params;  // promoted to desc
  Derivation derivation;   // d/dt on desc
  FieldElement q0_dot;
};
SymbolicSetup make_symbolic_setup(PainleveLabel label, const MonodromyParams& params);

PainleveFlow<FieldElement> make_symbolic_flow(const SymbolicSetup& setup, int order);

// Local-time-series coefficients at an exact base point. The coefficient
// field may itself carry symbols (PIV keeps q0 symbolic this way).
struct JetBase {
  PainleveLabel label;
  DescPtr desc;
  MonodromyParams params;  // over desc
  FieldElement q0, p0, t;  // over desc
};
JetBase jet_base_of(const SpectralCurve& curve);
JetBase make_piv_jet_base(const FieldElement& theta0, const Rat& t0);

struct NumericSetup {
  DescPtr desc;
  int tau_depth;
  TauSeries q0, p0, t;
};
NumericSetup make_jet_setup(const JetBase& base, int order, int extra_depth = 6);
PainleveFlow<TauSeries> make_jet_flow(const JetBase& base, const NumericSetup& setup, int order);

inline NumericSetup make_numeric_setup(const SpectralCurve& curve, int order,
                                       int extra_depth = 6) {
  return make_jet_setup(jet_base_of(curve), order, extra_depth);
}
inline PainleveFlow<TauSeries> make_numeric_flow(const SpectralCurve& curve,
                                                 const NumericSetup& setup, int order) {
  return make_jet_flow(jet_base_of(curve), setup, order);
}

// q0dot for the labels with a rational time parametrization
FieldElement symbolic_q0_dot(PainleveLabel label, const MonodromyParams& params,
                             const FieldElement& q0, const std::optional<FieldElement>& t);

}  // namespace taurec

#endif
