#include "doctest.h"

#include "oracles.hpp"

#include "holo/oracle.hpp"

using namespace holo;

TEST_CASE("single site") {
  auto r = enumerate_ising({1, 1}, 0.7);
  CHECK(r.Z == doctest::Approx(2.0));
  CHECK(r.two_point(0, 0) == doctest::Approx(1.0));
}

TEST_CASE("ising at infinite temperature") {
  auto r = enumerate_ising({3, 2}, 0.0);
  CHECK(r.Z == doctest::Approx(64.0));
  for (int i = 0; i < 6; ++i)
    for (int j = 0; j < 6; ++j) CHECK(r.two_point(i, j) == doctest::Approx(i == j ? 1.0 : 0.0));
}

TEST_CASE("ising matches an independent sum") {
  for (bool plus : {false, true}) {
    auto r = enumerate_ising({4, 3}, 0.37, plus ? Boundary::plus : Boundary::free);
    auto b = oracle::ising_brute({4, 3}, 0.37, plus);
    CHECK(r.Z == doctest::Approx(b.Z).epsilon(1e-12));
    for (int j = 0; j < 12; ++j) CHECK(r.two_point(0, j) == doctest::Approx(b.corr0[j]).epsilon(1e-12));
  }
  CHECK_THROWS_AS(enumerate_ising({2, 2}, 0.3, Boundary::wired), Error);
  CHECK_THROWS_AS(enumerate_ising({5, 5}, 0.3), Error);
}

TEST_CASE("ashkin-teller limits") {
  SiteGrid g{3, 2};
  auto z0 = enumerate_at(g, 0.0, 0.0);
  CHECK(z0.Z == doctest::Approx(std::pow(4.0, 6)));
  auto ising = enumerate_ising(g, 0.3);
  auto at = enumerate_at(g, 0.3, 0.0);
  CHECK(at.Z == doctest::Approx(ising.Z * ising.Z).epsilon(1e-12));
  auto plus = enumerate_at({4, 3}, 0.25, 0.1, Boundary::plus);
  CHECK(plus.Z == doctest::Approx(oracle::at_brute({4, 3}, 0.25, 0.1)).epsilon(1e-12));
}

TEST_CASE("random cluster limits") {
  SiteGrid g{3, 2};
  auto empty = enumerate_rc(g, 0.0, 2.0);
  CHECK(empty.Z == doctest::Approx(std::pow(2.0, 6)));
  CHECK(empty.two_point(0, 1) == 0.0);
  auto full = enumerate_rc(g, 1.0, 2.0);
  CHECK(full.Z == doctest::Approx(2.0));
  CHECK(full.two_point(0, 5) == doctest::Approx(1.0));
  auto wired = enumerate_rc({3, 3}, 0.0, 2.0, Boundary::wired);
  // ring is one cluster, centre another
  CHECK(wired.Z == doctest::Approx(4.0));
  CHECK_THROWS_AS(enumerate_rc(g, 0.5, 2.0, Boundary::plus), Error);
  CHECK_THROWS_AS(enumerate_rc(g, 1.5, 2.0), Error);
}

TEST_CASE("random cluster connection equals ising correlation") {
  const double beta = 0.4;
  auto rc = enumerate_rc({3, 3}, 1 - std::exp(-2 * beta), 2.0);
  auto is = enumerate_ising({3, 3}, beta);
  for (int j = 0; j < 9; ++j) CHECK(rc.two_point(0, j) == doctest::Approx(is.two_point(0, j)).epsilon(1e-12));
}

TEST_CASE("loop model") {
  auto hexagon = build_hex_domain(1, 1);
  auto g = loop_graph(hexagon);
  CHECK(enumerate_loop(g, 0.0, 1.3).Z == doctest::Approx(1.0));
  auto one = enumerate_loop(loop_strip_graph(1, 1), 0.5, 2.0);
  // single hexagon: empty plus one loop of six edges
  LoopGraph ring{6, {{0, 1}, {1, 2}, {2, 3}, {3, 4}, {4, 5}, {5, 0}}};
  CHECK(enumerate_loop(ring, 0.5, 2.0).Z == doctest::Approx(1.03125));
  CHECK(one.Z >= 1.0);
}

TEST_CASE("high-temperature expansion ratio") {
  // Z_spin = 2^V cosh(beta)^B sum_{even} tanh(beta)^k on the same graph
  LoopGraph ring{4, {{0, 1}, {1, 2}, {2, 3}, {3, 0}}};
  const double beta = 0.3, t = std::tanh(beta);
  const double Zs = std::pow(2.0, 4) * std::pow(std::cosh(beta), 4) * enumerate_loop(ring, t, 1.0).Z;
  auto direct = enumerate_ising({2, 2}, beta);
  CHECK(Zs == doctest::Approx(direct.Z).epsilon(1e-12));
}

TEST_CASE("face spins reproduce the loop weight") {
  auto h = build_hex_domain(2, 1);
  auto spins = enumerate_loop_spins(h, 0.4, 1.0);
  const double beta = -0.5 * std::log(0.4);
  auto face = enumerate_hex_face_ising(h, beta);
  const double B = spins.observables.at("bonds");
  CHECK(face.Z == doctest::Approx(spins.Z * std::exp(beta * B)).epsilon(1e-12));
}

TEST_CASE("critical points") {
  CHECK(p_self_dual(2.0) == doctest::Approx(0.5857864376269049));
  CHECK(p_dual(p_self_dual(3.0), 3.0) == doctest::Approx(p_self_dual(3.0)));
  auto t = critical_points();
  bool found = false;
  for (const auto& c : t)
    if (c.name == "1-exp(-2 beta_c)") {
      found = true;
      CHECK(c.value == doctest::Approx(p_self_dual(2.0)));
    }
  CHECK(found);
  CHECK_THROWS_AS(p_self_dual(0.0), Error);
}

TEST_CASE("connection slope table") {
  auto rows = correlation_length_slope(4, 2, 0.5, 2.0);
  REQUIRE(rows.size() == 3);
  for (const auto& r : rows) {
    CHECK(r.probability > 0);
    CHECK(r.slope == doctest::Approx(-std::log(r.probability) / r.distance));
  }
  CHECK(rows[0].probability > rows[2].probability);
  auto zero = correlation_length_slope(3, 1, 0.0, 2.0);
  CHECK(std::isinf(zero[0].slope));
  CHECK_THROWS_AS(correlation_length_slope(6, 1, 0.5, 2.0), Error);
  CHECK_THROWS_AS(correlation_length_slope(1, 1, 0.5, 2.0), Error);
}

TEST_CASE("transfer partition matches enumeration") {
  for (int n = 1; n <= 3; ++n)
    for (int N = 1; N <= 3; ++N) {
      auto V = build_ising_transfer(n, 0.35);
      auto e = enumerate_ising({n + 1, N + 1}, 0.35, Boundary::plus);
      CHECK(transfer_partition(V, N) == doctest::Approx(e.Z).epsilon(1e-10));
    }
  CHECK_THROWS_AS(transfer_partition(build_ising_transfer(1, 0.3), -1), Error);
  CHECK_THROWS_AS(transfer_partition(build_loop_transfer(2, 0.5, 1.0), 1), Error);
}
