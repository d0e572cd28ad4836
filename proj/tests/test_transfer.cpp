#include "doctest.h"

#include "oracles.hpp"

#include "holo/oracle.hpp"
#include "holo/propagate.hpp"
#include "holo/transfer.hpp"

#include <algorithm>

using namespace holo;

TEST_CASE("ising transfer at one site") {
  const double beta = 0.3;
  auto V = build_ising_transfer(1, beta);
  REQUIRE(V.matrix.rows() == 2);
  // sigma_1 = +1 is fixed, so the two diagonal entries differ
  CHECK(V.matrix(0, 0) == doctest::Approx(std::exp(3 * beta)).epsilon(1e-12));
  CHECK(V.matrix(1, 1) == doctest::Approx(std::exp(beta)).epsilon(1e-12));
}

TEST_CASE("ising transfer at beta zero") {
  auto V = build_ising_transfer(2, 0.0);
  for (Eigen::Index i = 0; i < V.vv.rows(); ++i)
    for (Eigen::Index j = 0; j < V.vv.cols(); ++j) CHECK((V.vv(i, j) == 0.0 || V.vv(i, j) == 1.0));
}

TEST_CASE("leading eigenvalue against partition ratios") {
  const double beta = 0.3;
  auto V = build_ising_transfer(2, beta);
  Eigen::EigenSolver<RMat> es(V.matrix);
  std::vector<double> mods;
  for (auto e : es.eigenvalues()) mods.push_back(std::abs(e));
  std::sort(mods.rbegin(), mods.rend());
  const double top = mods[0], gap = mods[1] / mods[0];
  double prev = oracle::ising_brute({3, 2}, beta, true).Z, ratio = 0;
  for (int N = 2; N <= 7; ++N) {
    double z = oracle::ising_brute({3, N + 1}, beta, true).Z;
    ratio = z / prev;
    prev = z;
  }
  // error decays like (lambda_1 / lambda_0)^N
  CHECK(std::abs(ratio - top) / top <= 10 * std::pow(gap, 7));
}

TEST_CASE("AT transfer decouples at U = 0") {
  const double J = 0.3;
  auto A = build_at_transfer(2, J, 0.0);
  auto I = build_ising_transfer(2, J);
  // interleaved bits: tau on even bits, tau' on odd bits
  const int D = 16;
  double worst = 0;
  for (int s = 0; s < D; ++s)
    for (int t = 0; t < D; ++t) {
      auto split = [](int x, int layer) { return ((x >> layer) & 1) | (((x >> (2 + layer)) & 1) << 1); };
      const double expect = I.matrix(split(s, 0), split(t, 0)) * I.matrix(split(s, 1), split(t, 1));
      worst = std::max(worst, std::abs(A.matrix(s, t) - expect) / std::max(1.0, std::abs(expect)));
    }
  CHECK(worst <= 1e-10);
}

TEST_CASE("AT transfer at J = U = 0 has equal weights") {
  auto A = build_at_transfer(1, 0.0, 0.0);
  double mx = 0, mn = 1e300;
  for (Eigen::Index i = 0; i < A.matrix.size(); ++i)
    if (A.matrix.data()[i] != 0) {
      mx = std::max(mx, A.matrix.data()[i]);
      mn = std::min(mn, A.matrix.data()[i]);
    }
  CHECK(mx == doctest::Approx(mn));
}

TEST_CASE("AT partition at the self-dual point") {
  const double q = at_self_dual();
  auto V = build_at_transfer(2, q, q);
  for (int N = 1; N <= 3; ++N) {
    const double zt = transfer_partition(V, N);
    const double zb = oracle::at_brute({3, N + 1}, q, q);
    CHECK(std::abs(zt - zb) / zb <= 1e-8);
  }
}

TEST_CASE("loop transfer width one") {
  const double K = 0.7, n = 1.5;
  auto T = build_loop_transfer(1, K, n);
  // a lone strand cannot pair, only the empty pattern survives
  CHECK(T.matrix.rows() == 1);
  auto z = enumerate_loop_strip(1, 1, K, n);
  double sum = 0;
  for (auto& [p, v] : z) sum += v;
  CHECK(T.matrix.col(T.links.index({-1})).sum() == doctest::Approx(sum).epsilon(1e-14));
}

TEST_CASE("loop transfer against the loop enumeration at n = 1") {
  const double x = 0.6;
  for (int w = 1; w <= 2; ++w)
    for (int N = 1; N <= 3; ++N) {
      auto T = build_loop_transfer(w, x, 1.0);
      Eigen::VectorXd v = Eigen::VectorXd::Zero(T.links.states.size());
      v(T.links.index(LinkPattern(w, -1))) = 1.0;
      for (int i = 0; i < N; ++i) v = T.matrix * v;
      const double closed = v(T.links.index(LinkPattern(w, -1)));
      const double direct = enumerate_loop(loop_strip_graph(w, N), x, 1.0).Z;
      CHECK(std::abs(closed - direct) / direct <= 1e-8);
    }
}

TEST_CASE("loop transfer two steps") {
  const double K = 0.5, n = 1.2;
  auto T = build_loop_transfer(2, K, n);
  auto z2 = enumerate_loop_strip(2, 2, K, n);
  Eigen::VectorXd v = Eigen::VectorXd::Zero(T.links.states.size());
  v(T.links.index({-1, -1})) = 1.0;
  v = T.matrix * (T.matrix * v);
  for (const auto& [p, val] : z2) CHECK(v(T.links.index(p)) == doctest::Approx(val).epsilon(1e-13));
}

TEST_CASE("generators at one site") {
  auto g = clifford_generators(make_spin_basis(Model::ising, 1));
  // p on e+ flips site 0 with sign sigma_1 = +1, q gives i sigma_0 = i
  CHECK(g.p[0](1, 0) == cplx(1.0));
  CHECK(g.q[0](1, 0) == cplx(0, 1));
  CHECK(g.p[0](0, 0) == cplx(0.0));
  const CMat I2 = CMat::Identity(2, 2);
  CHECK((g.p[0] * g.p[0] - I2).norm() < 1e-15);
  CHECK((g.q[0] * g.q[0] - I2).norm() < 1e-15);
  CHECK((g.p[0] * g.q[0] + g.q[0] * g.p[0]).norm() < 1e-15);
}

TEST_CASE("generators anticommute") {
  auto g = clifford_generators(make_spin_basis(Model::ising, 3));
  auto all = g.span();
  const CMat Id = CMat::Identity(8, 8);
  for (std::size_t i = 0; i < all.size(); ++i)
    for (std::size_t j = 0; j < all.size(); ++j) {
      CMat ac = all[i] * all[j] + all[j] * all[i];
      CHECK((ac - (i == j ? 2.0 : 0.0) * Id).norm() < 1e-13);
    }
}

TEST_CASE("conjugation by the horizontal factor") {
  const double beta = 0.4;
  auto V = build_ising_transfer(2, beta);
  auto g = clifford_generators(make_spin_basis(Model::ising, 2));
  RMat vh = V.vh_sqrt * V.vh_sqrt;
  auto rep = conjugation_check(vh, g);
  CHECK(rep.span_residual <= 1e-10);
  for (const auto& f : rep.fits) {
    CHECK(f.residual <= 1e-10);
    CHECK(std::abs(f.c - std::cosh(2 * beta)) <= 1e-10);
    CHECK(std::abs(f.s - std::sinh(2 * beta)) <= 1e-10);
  }
  auto zero = conjugation_check(RMat::Identity(4, 4), g);
  CHECK(zero.span_residual == doctest::Approx(0.0));
  CHECK((zero.coefficients - CMat::Identity(4, 4)).norm() < 1e-14);
}

TEST_CASE("vertical factor leaves p at k_R alone") {
  auto V = build_ising_transfer(2, 0.4);
  auto g = clifford_generators(make_spin_basis(Model::ising, 2));
  const CMat vv = V.vv.cast<cplx>();
  const CMat pk = g.p[1];
  CHECK((vv.inverse() * pk * vv - pk).norm() <= 1e-12);
}

TEST_CASE("induced rotation spectrum equals the propagator spectrum") {
  const double beta = 0.4;
  auto V = build_ising_transfer(2, beta);
  auto g = clifford_generators(make_spin_basis(Model::ising, 2));
  auto rot = induced_rotation(V.matrix, g);
  CHECK(rot.span_residual <= 1e-10);
  CHECK(rot.r_defect <= 1e-9);
  CHECK(rot.j_defect <= 1e-9);
  Eigen::ComplexEigenSolver<CMat> es(rot.T);
  auto P = build_propagator(Model::ising, Regime::subcritical, build_dual_interval(0, 2, IntervalKind::dual), beta,
                            Reading::consistent);
  Eigen::EigenSolver<RMat> ps(P.matrix);
  std::vector<double> a, b;
  for (auto e : es.eigenvalues()) a.push_back(std::abs(e));
  for (auto e : ps.eigenvalues()) b.push_back(std::abs(e));
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  REQUIRE(a.size() == b.size());
  for (std::size_t i = 0; i < a.size(); ++i) CHECK(std::abs(a[i] - b[i]) / b[i] <= 1e-6);

  auto idrot = induced_rotation(RMat::Identity(4, 4), g);
  CHECK((idrot.T - CMat::Identity(4, 4)).norm() < 1e-12);
}

TEST_CASE("duality maps") {
  CHECK(std::abs(ising_dual(beta_c()) - beta_c()) <= 1e-12);
  const double q = at_self_dual();
  auto d = at_dual({q, q});
  CHECK(std::abs(d.J - q) <= 1e-10);
  CHECK(std::abs(d.U - q) <= 1e-10);
  CHECK(std::exp(2 * q) * std::sinh(2 * q) == doctest::Approx(1.0).epsilon(1e-14));
  CHECK_THROWS_AS(ising_dual(0.0), Error);
}

TEST_CASE("size guards") {
  CHECK_THROWS_AS(make_spin_basis(Model::ising, 13), Error);
  CHECK_THROWS_AS(make_spin_basis(Model::at, 7), Error);
  CHECK_THROWS_AS(make_connectivity_basis(7), Error);
}
