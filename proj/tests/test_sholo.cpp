#include "doctest.h"

#include "holo/observables.hpp"
#include "holo/sholo.hpp"

#include <cmath>

using namespace holo;

TEST_CASE("critical ising relations") {
  auto rs = make_relations(make_params(Model::ising, Regime::critical, beta_c()));
  const cplx l = lambda();
  CHECK(std::abs(rs.nu - 1.0) < 1e-15);
  const auto& r0 = rs.relations[0];
  CHECK(r0.lhs == kN);
  CHECK(r0.rhs == kE);
  CHECK(std::abs(r0.a - 1.0) < 1e-15);
  CHECK(std::abs(r0.b - l) < 1e-15);
  CHECK(std::abs(r0.c - 1.0) < 1e-15);
  CHECK(std::abs(r0.d - l) < 1e-15);
}

TEST_CASE("subcritical ising relations carry nu") {
  const double beta = 0.3;
  auto p = make_params(Model::ising, Regime::subcritical, beta);
  auto rs = make_relations(p);
  const cplx I(0, 1), l = lambda();
  const double a = std::exp(-2 * beta);
  const cplx nu = std::pow(std::conj(l), 3) * (a + I) / (a - I);
  CHECK(std::abs(rs.nu - nu) < 1e-14);
  CHECK(std::abs(rs.relations[0].c - 1.0 / nu) < 1e-14);
  CHECK(std::abs(rs.relations[1].c - nu) < 1e-14);
}

TEST_CASE("loop nu at n = 1 is one") {
  auto p = make_params(Model::loop, Regime::subcritical, 0.5, 1.0, 0.5);
  CHECK(std::abs(p.nu_loop - 1.0) < 1e-14);
  CHECK_THROWS_AS(make_relations(make_params(Model::loop, Regime::subcritical, 0.5, 2.0, 0.5)), Error);
}

TEST_CASE("zero and constant fields satisfy massless relations") {
  auto g = build_square_domain(3, 2);
  auto rs = make_relations(make_params(Model::ising, Regime::critical, beta_c()));
  auto zero = EdgeField::zeros(g);
  CHECK(sholo_residuals(zero, rs).max_residual == 0.0);
  auto c = EdgeField::zeros(g);
  for (auto& v : c.values) v = cplx(0.3, -1.2);
  auto rep = sholo_residuals(c, rs);
  CHECK(rep.max_residual < 1e-15);
  CHECK(rep.satisfied);
}

TEST_CASE("riemann residuals on tangent phases") {
  auto g = build_square_domain(2, 2);
  auto f = EdgeField::zeros(g), h = EdgeField::zeros(g);
  for (int e : g.boundary) {
    cplx s = std::sqrt(boundary_phase(g, e).value);
    f[e] = 1.0 / s;
    h[e] = cplx(0, 1) / s;
  }
  CHECK(riemann_bc_residuals(f).max_residual < 1e-15);
  auto rep = riemann_bc_residuals(h);
  for (const auto& r : rep.per_item) CHECK(r[0] == doctest::Approx(1.0).epsilon(1e-14));
}

TEST_CASE("observable on a 3x2 domain is s-holomorphic off a") {
  auto g = build_square_domain(3, 2);
  const int a = g.edge_at(3, 0);
  auto obs = ising_fermionic_observable(g, a, std::exp(-2 * beta_c()));
  auto rs = make_relations(make_params(Model::ising, Regime::critical, beta_c()));
  auto rep = sholo_residuals(obs.value, rs, 1e-10, g.edge_faces[a]);
  CHECK(rep.max_residual <= 1e-10);
}

TEST_CASE("residue extension") {
  auto g = build_square_domain(2, 2);
  const int a = g.edge_at(1, 2);
  auto p = make_params(Model::ising, Regime::critical, beta_c());
  auto r = extend_with_residue(EdgeField::zeros(g), a, p);
  CHECK(std::abs(r.residue) == 0.0);

  auto bad = EdgeField::zeros(g);
  bad[g.edge_at(4, 1)] = 1.0;
  try {
    extend_with_residue(bad, a, p);
    FAIL("expected an error");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::precondition);
  }
}

TEST_CASE("interior observable has a residue at a") {
  auto g = build_square_domain(2, 2);
  const int a = g.edge_at(1, 2);
  auto obs = ising_fermionic_observable(g, a, std::exp(-2 * beta_c()));
  auto p = make_params(Model::ising, Regime::critical, beta_c());
  // both classes measured from the upward direction
  EdgeField f = EdgeField::zeros(g);
  for (std::size_t e = 0; e < g.edges.size(); ++e) f.values[e] = obs.up.values[e] + obs.down.values[e];
  auto r = extend_with_residue(f, a, p, 1e-9);
  CHECK(std::abs(r.front - r.back) > 1e-3);
  CHECK(std::abs(r.residue - cplx(0, 1) / (2 * kPi) * (r.front - r.back)) < 1e-15);
  // the own-start combination is not s-holomorphic
  CHECK_THROWS_AS(extend_with_residue(obs.value, a, p, 1e-9), Error);
}

TEST_CASE("conjugate-linear solves") {
  const cplx a(1.5, 0.2), b(0.3, -0.7), x(0.4, 1.1);
  const cplx w = a * x + b * std::conj(x);
  CHECK(std::abs(solve_conj_linear(a, b, w) - x) < 1e-14);
  CHECK_THROWS_AS(solve_conj_linear(1.0, 1.0, 0.0), Error);
}
