#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <taurec/painleve.hpp>

#include <random>

using namespace taurec;

namespace {
FieldElement fe(long n, long d = 1) { return FieldElement::rational(n, d); }

using FlowF = PainleveFlow<FieldElement>;
using HSF = HSeries<FieldElement>;

SpectralCurve pinned_curve(PainleveLabel label) {
  CurveInput in;
  in.label = label;
  switch (label) {
    case PainleveLabel::PI:
      in.q0 = fe(1);
      break;
    case PainleveLabel::PII:
      in.q0 = fe(1);
      in.params.theta = fe(1);
      break;
    case PainleveLabel::PIII:
      in.q0 = fe(2);
      in.params.theta0 = fe(1);
      in.params.thetainf = fe(3);
      break;
    case PainleveLabel::PIV:
      in.q0 = fe(1);
      in.t = fe(1);
      in.params.theta0 = fe(1);
      break;
    case PainleveLabel::PV:
      in.Q0 = fe(1, 2);
      in.params.theta0 = fe(2);
      in.params.theta1 = fe(1);
      in.params.thetainf = fe(4);
      break;
    case PainleveLabel::PVI: {
      const PviTuple& tup = pvi_catalog()[0];
      in.q0 = FieldElement::rational(tup.q0);
      in.t = FieldElement::rational(tup.t);
      in.params.theta0 = FieldElement::rational(tup.theta0);
      in.params.theta1 = FieldElement::rational(tup.theta1);
      in.params.thetat = FieldElement::rational(tup.thetat);
      in.params.thetainf = FieldElement::rational(tup.thetainf);
      break;
    }
  }
  return build_curve(in);
}
}  // namespace

TEST_CASE("symbolic solution for the first flow") {
  MonodromyParams none;
  SymbolicSetup setup = make_symbolic_setup(PainleveLabel::PI, none);
  FlowF flow = make_symbolic_flow(setup, 6);
  auto sol = flow.solve(setup.q0, setup.p0);
  FieldElement q0 = setup.q0;
  CHECK(sol.q.get(0) == q0);
  CHECK(sol.q.get(1).is_zero());
  // frozen second-order coefficient, from the order-by-order oracle
  CHECK(sol.q.get(2) == -(fe(1728) * q0.pow(4)).inverse());
  CHECK(sol.p.get(1) == -((fe(12) * q0).inverse()));
  CHECK(sol.q.parity() == Parity::even);
  CHECK(sol.p.parity() == Parity::odd);
  auto [r1, r2] = flow.compat_residual(sol);
  CHECK(r1.known_zero());
  CHECK(r2.known_zero());
}

TEST_CASE("symbolic second-flow solution and tau derivative values") {
  MonodromyParams p2;
  p2.theta = fe(1);
  SymbolicSetup setup = make_symbolic_setup(PainleveLabel::PII, p2);
  FlowF flow = make_symbolic_flow(setup, 8);
  auto sol = flow.solve(setup.q0, setup.p0);
  FieldElement q0 = setup.q0;
  // frozen first-order coefficients
  CHECK(sol.q.get(1) == -(q0 / (fe(2) * (fe(4) * q0.pow(3) + fe(1)))));
  CHECK(sol.p.get(1).is_zero());
  auto [r1, r2] = flow.compat_residual(sol);
  CHECK(r1.known_zero());
  CHECK(r2.known_zero());

  HSF sigma = flow.sigma(sol.q, sol.p);
  CHECK(sigma.parity() == Parity::even);
  HSF dtau = flow.tau_logderiv(sol.q, sol.p);
  CHECK(dtau.parity() == Parity::even);
  // leading tau derivative: theta(8 q0^3 - theta)/(8 q0^2) at theta = 1
  CHECK(dtau.get(0) == (fe(8) * q0.pow(3) - fe(1)) / (fe(8) * q0 * q0));
}

TEST_CASE("first-flow tau derivatives at the pinned point") {
  MonodromyParams none;
  SymbolicSetup setup = make_symbolic_setup(PainleveLabel::PI, none);
  FlowF flow = make_symbolic_flow(setup, 8);
  auto sol = flow.solve(setup.q0, setup.p0);
  HSF dtau = flow.tau_logderiv(sol.q, sol.p);
  FieldElement q0 = setup.q0;
  CHECK(dtau.get(0) == fe(4) * q0.pow(3));
  // order hbar^2: +1/(288 q0^2) = -1/(48 t); confirmed by the sigma equation
  // and by the matching derivative of the genus-one invariant
  CHECK(dtau.get(2) == (fe(288) * q0 * q0).inverse());
  CHECK(dtau.get(4) == fe(7) / (fe(497664) * q0.pow(7)));
  CHECK(dtau.get(6) == fe(1225) / (fe(2579890176) * q0.pow(12)));
  CHECK(dtau.get(1).is_zero());
  CHECK(dtau.get(3).is_zero());
  CHECK(dtau.get(5).is_zero());
}

TEST_CASE("sigma equations hold for the symbolic labels") {
  for (PainleveLabel label : {PainleveLabel::PI, PainleveLabel::PII, PainleveLabel::PIII}) {
    CAPTURE(label_name(label));
    MonodromyParams p;
    if (label == PainleveLabel::PII) p.theta = fe(1);
    if (label == PainleveLabel::PIII) {
      p.theta0 = fe(1);
      p.thetainf = fe(3);
    }
    SymbolicSetup setup = make_symbolic_setup(label, p);
    FlowF flow = make_symbolic_flow(setup, 6);
    auto sol = flow.solve(setup.q0, setup.p0);
    HSF sigma = flow.sigma(sol.q, sol.p);
    CHECK(sigma.parity() == Parity::even);
    HSF res = flow.sigma_ode_residual(sigma);
    CHECK(res.truncated(5).known_zero());
  }
}

TEST_CASE("PIV symbolic over two symbol layers") {
  MonodromyParams p;
  p.theta0 = fe(1);
  SymbolicSetup setup = make_symbolic_setup(PainleveLabel::PIV, p);
  FlowF flow = make_symbolic_flow(setup, 4);
  auto sol = flow.solve(setup.q0, setup.p0);
  auto [r1, r2] = flow.compat_residual(sol);
  CHECK(r1.known_zero());
  CHECK(r2.known_zero());
  HSF sigma = flow.sigma(sol.q, sol.p);
  CHECK(sigma.parity() == Parity::even);
  HSF res = flow.sigma_ode_residual(sigma);
  CHECK(res.truncated(3).known_zero());
}

TEST_CASE("PIV deep checks with q0 symbolic and a local time jet") {
  JetBase base = make_piv_jet_base(fe(1), rat_of(1));
  NumericSetup setup = make_jet_setup(base, 8);
  PainleveFlow<TauSeries> flow = make_jet_flow(base, setup, 8);
  auto sol = flow.solve(setup.q0, setup.p0);
  // the leading coefficient stays the free symbol
  DescPtr d0 = FieldDescriptor::with_symbols({Var::q0});
  CHECK(sol.q.get(0).value() == FieldElement::symbol(d0, Var::q0));
  HSeries<TauSeries> sigma = flow.sigma(sol.q, sol.p);
  for (int k = 1; k <= 8; k += 2) CHECK(sigma.get(k).truncated(3).is_zero());
  HSeries<TauSeries> res = flow.sigma_ode_residual(sigma);
  for (int k = 0; k <= 8; ++k) CHECK(res.get(k).truncated(2).is_zero());
}

TEST_CASE("numeric solutions for the fifth and sixth flows") {
  for (PainleveLabel label : {PainleveLabel::PV, PainleveLabel::PVI}) {
    CAPTURE(label_name(label));
    SpectralCurve cv = pinned_curve(label);
    NumericSetup setup = make_numeric_setup(cv, 6);
    PainleveFlow<TauSeries> flow = make_numeric_flow(cv, setup, 6);
    auto sol = flow.solve(setup.q0, setup.p0);
    auto [r1, r2] = flow.compat_residual(sol);
    for (int k = 0; k <= 6; ++k) {
      CHECK(r1.get(k).truncated(3).is_zero());
      CHECK(r2.get(k).truncated(3).is_zero());
    }
    HSeries<TauSeries> sigma = flow.sigma(sol.q, sol.p);
    for (int k = 1; k <= 6; k += 2) CHECK(sigma.get(k).truncated(3).is_zero());
    HSeries<TauSeries> res = flow.sigma_ode_residual(sigma);
    for (int k = 0; k <= 5; ++k) CHECK(res.get(k).truncated(2).is_zero());
  }
}

TEST_CASE("parity involution matches the sign-flipped series") {
  auto check_label = [](PainleveLabel label, const MonodromyParams& p, int order = 6) {
    CAPTURE(label_name(label));
    SymbolicSetup setup = make_symbolic_setup(label, p);
    FlowF flow = make_symbolic_flow(setup, order);
    auto sol = flow.solve(setup.q0, setup.p0);
    auto dag = flow.parity_map(sol);
    HSF qflip = sol.q.hbar_flipped(), pflip = sol.p.hbar_flipped();
    CHECK((dag.q - qflip).truncated(order).known_zero());
    CHECK((dag.p - pflip).truncated(order).known_zero());
    // applying the involution twice returns the original series
    auto twice = flow.parity_map(dag);
    CHECK((twice.q - sol.q).truncated(order).known_zero());
    CHECK((twice.p - sol.p).truncated(order).known_zero());
    // the Hamiltonian composed with the solution is invariant under the
    // simultaneous sign flip whenever it carries no explicit hbar terms;
    // for PIII the explicit term contributes twice the even part of pq/t
    HSF lhs = flow.hamiltonian(dag.q, dag.p, -1);
    HSF rhs = flow.hamiltonian(sol.q, sol.p, +1);
    HSF diff = lhs - rhs;
    if (label == PainleveLabel::PIII) {
      HSF pq = sol.p * sol.q;
      HSF even(pq.zero_proto(), pq.lo(), pq.hi());
      for (int k = pq.lo(); k < pq.hi(); ++k)
        if (((k % 2) + 2) % 2 == 0) even.set(k, pq.get(k));
      diff = diff - flow.hb() * even * flow.ts().inverse() * flow.rs(2);
    }
    CHECK(diff.truncated(order - 1).known_zero());
    // sigma is even, so its involution image is itself
    HSF sig = flow.sigma(sol.q, sol.p);
    HSF sig_dag = flow.sigma(dag.q, dag.p);
    CHECK((sig - sig_dag).truncated(order - 1).known_zero());
  };
  MonodromyParams none;
  check_label(PainleveLabel::PI, none);
  MonodromyParams p2;
  p2.theta = fe(1);
  check_label(PainleveLabel::PII, p2);
  MonodromyParams p3;
  p3.theta0 = fe(1);
  p3.thetainf = fe(3);
  check_label(PainleveLabel::PIII, p3);
  MonodromyParams p4;
  p4.theta0 = fe(1);
  check_label(PainleveLabel::PIV, p4, 4);  // bivariate coefficients stay small
}

TEST_CASE("parity involution for the numeric labels") {
  for (PainleveLabel label : {PainleveLabel::PV, PainleveLabel::PVI}) {
    CAPTURE(label_name(label));
    SpectralCurve cv = pinned_curve(label);
    NumericSetup setup = make_numeric_setup(cv, 5);
    PainleveFlow<TauSeries> flow = make_numeric_flow(cv, setup, 5);
    auto sol = flow.solve(setup.q0, setup.p0);
    auto dag = flow.parity_map(sol);
    auto qflip = sol.q.hbar_flipped(), pflip = sol.p.hbar_flipped();
    for (int k = 0; k <= 5; ++k) {
      CHECK((dag.q.get(k) - qflip.get(k)).truncated(3).is_zero());
      CHECK((dag.p.get(k) - pflip.get(k)).truncated(3).is_zero());
    }
  }
}

TEST_CASE("hamilton equations generate the flow pair") {
  // dH/dp == f and -dH/dq == g as functions of (q, p), checked with dual
  // perturbations at randomized series arguments
  std::mt19937_64 rng(7117);
  DescPtr d = FieldDescriptor::rationals();
  int depth = 2;
  auto rnd = [&]() {
    return TauSeries::constant(d, fe(static_cast<long>(rng() % 13) - 6, 1 + rng() % 4), depth);
  };
  for (PainleveLabel label : {PainleveLabel::PI, PainleveLabel::PII, PainleveLabel::PIII,
                              PainleveLabel::PIV, PainleveLabel::PV, PainleveLabel::PVI}) {
    CAPTURE(label_name(label));
    TauSeries zero(d, depth);
    TauSeries one = TauSeries::constant(d, fe(1), depth);
    typename PainleveFlow<TauSeries>::Ctx ctx{
        zero, one, TauSeries::constant(d, fe(3), depth),
        [](const TauSeries& s) { return s.derivative(); },
        [&](const Rat& r) { return TauSeries::constant(d, FieldElement::rational(r), depth); }};
    std::array<std::optional<TauSeries>, 5> th;
    for (auto& v : th) v = rnd();
    PainleveFlow<TauSeries> flow(label, std::move(ctx), std::move(th), 3);
    using HS = HSeries<TauSeries>;
    TauSeries dual(d, depth);
    dual.set(1, fe(1));
    for (int trial = 0; trial < 3; ++trial) {
      HS q(zero, 0, 4), p(zero, 0, 4);
      for (int k = 0; k < 4; ++k) {
        q.set(k, rnd());
        p.set(k, rnd());
      }
      if (q.get(0).value().is_zero()) q.set(0, one);
      if (p.get(0).value().is_zero()) p.set(0, one);
      HS pdual = p + HS::constant(zero, dual, 4);
      HS qdual = q + HS::constant(zero, dual, 4);
      auto d_dp = [&](const HS& a, const HS& b) {
        HS diff = a - b;  // linear in the dual by construction
        return diff.map(zero, [&](const TauSeries& s) {
          TauSeries r(d, depth);
          if (depth > 1) r.set(0, s.get(1));
          return r;
        });
      };
      try {
        HS dHdp = d_dp(flow.hamiltonian(q, pdual), flow.hamiltonian(q, p));
        HS f = flow.f(q, p);
        CHECK((dHdp - f).truncated(3).known_zero());
        HS dHdq = d_dp(flow.hamiltonian(qdual, p), flow.hamiltonian(q, p));
        HS g = flow.g(q, p);
        CHECK((dHdq + g).truncated(3).known_zero());
      } catch (const Error& e) {
        // random arguments may hit a pole of the rational data; skip those
        CHECK(std::string(e.kind()) == "division-by-zero");
      }
    }
  }
}

TEST_CASE("PVI residue coordinates satisfy their defining relations") {
  SpectralCurve cv = pinned_curve(PainleveLabel::PVI);
  NumericSetup setup = make_numeric_setup(cv, 5);
  PainleveFlow<TauSeries> flow = make_numeric_flow(cv, setup, 5);
  auto sol = flow.solve(setup.q0, setup.p0);
  auto z = flow.pvi_z(sol.q, sol.p);
  using HS = HSeries<TauSeries>;
  HS t = flow.ts(), one = flow.rs(1);
  HS th0 = flow.th(1), th1 = flow.th(2), tht = flow.th(3), thi = flow.th(4);
  // momentum relation
  HS prel = (z[0] + th0) * sol.q.inverse() + (z[1] + th1) * (sol.q - one).inverse() +
            (z[2] + tht) * (sol.q - t).inverse() - sol.p;
  for (int k = 0; k <= 5; ++k) CHECK(prel.get(k).truncated(3).is_zero());
  // lower-left entry of the residue sum vanishes (diagonal at infinity)
  HS lower = t * z[0] * (z[0] + th0) * sol.q.inverse() -
             (t - one) * z[1] * (z[1] + th1) * (sol.q - one).inverse() +
             t * (t - one) * z[2] * (z[2] + tht) * (sol.q - t).inverse();
  for (int k = 0; k <= 5; ++k) CHECK(lower.get(k).truncated(3).is_zero());
  // trace relation fixes zt
  HS trace = z[0] + z[1] + z[2] + (th0 + th1 + tht + thi) * flow.rs(1, 2);
  for (int k = 0; k <= 5; ++k) CHECK(trace.get(k).truncated(3).is_zero());
  // leading values from the closed form
  CHECK(z[0].get(0).value() == fe(9, 2));
  CHECK(z[1].get(0).value() == fe(-16, 3));
}
