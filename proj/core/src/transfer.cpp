#include "holo/transfer.hpp"

#include <Eigen/LU>

#include <cmath>

namespace holo {

SpinBasis make_spin_basis(Model model, int n) {
  if (model == Model::loop) throw Error(ErrorCode::unsupported, "loop model has no spin basis");
  if (n < 1) throw Error(ErrorCode::invalid_interval, "spin basis needs at least one dynamic site");
  int guard = model == Model::ising ? 12 : 6;
  if (n > guard) throw Error(ErrorCode::size_guard, "spin basis exceeds the dense size guard");
  return SpinBasis{model, n};
}

TransferOperator build_ising_transfer(int n, double beta) {
  SpinBasis B = make_spin_basis(Model::ising, n);
  const std::size_t D = B.dimension();
  TransferOperator t;
  t.model = Model::ising;
  t.n = n;
  t.vh_sqrt = RMat::Zero(D, D);
  t.vv = RMat::Zero(D, D);
  for (std::size_t s = 0; s < D; ++s) {
    double h = 0;
    for (int x = 0; x < n; ++x) h += B.spin(s, x) * B.spin(s, x + 1);
    t.vh_sqrt(s, s) = std::exp(0.5 * beta * h);
    for (std::size_t r = 0; r < D; ++r) {
      if (B.spin(s, 0) != B.spin(r, 0)) continue;
      double v = 1.0;  // fixed column b
      for (int x = 0; x < n; ++x) v += B.spin(s, x) * B.spin(r, x);
      t.vv(s, r) = std::exp(beta * v);
    }
  }
  t.matrix = t.vh_sqrt * t.vv * t.vh_sqrt;
  return t;
}

TransferOperator build_at_transfer(int n, double J, double U) {
  SpinBasis B = make_spin_basis(Model::at, n);
  const std::size_t D = B.dimension();
  TransferOperator t;
  t.model = Model::at;
  t.n = n;
  t.vh_sqrt = RMat::Zero(D, D);
  t.vv = RMat::Zero(D, D);
  auto bond = [&](int a1, int b1, int a2, int b2) { return J * (a1 * b1 + a2 * b2) + U * a1 * b1 * a2 * b2; };
  for (std::size_t s = 0; s < D; ++s) {
    double h = 0;
    for (int x = 0; x < n; ++x)
      h += bond(B.spin(s, x, 0), B.spin(s, x + 1, 0), B.spin(s, x, 1), B.spin(s, x + 1, 1));
    t.vh_sqrt(s, s) = std::exp(0.5 * h);
    for (std::size_t r = 0; r < D; ++r) {
      if (B.spin(s, 0, 0) != B.spin(r, 0, 0) || B.spin(s, 0, 1) != B.spin(r, 0, 1)) continue;
      double v = 2 * J + U;  // fixed column b
      for (int x = 0; x < n; ++x) v += bond(B.spin(s, x, 0), B.spin(r, x, 0), B.spin(s, x, 1), B.spin(r, x, 1));
      t.vv(s, r) = std::exp(v);
    }
  }
  t.matrix = t.vh_sqrt * t.vv * t.vh_sqrt;
  return t;
}

CMat GeneratorSet::psi(int j, int layer) const {
  const auto& P = layer == 0 ? p : p2;
  const auto& Q = layer == 0 ? q : q2;
  return cplx(0, 1) / std::sqrt(2.0) * (P[j] + Q[j]);
}

CMat GeneratorSet::psibar(int j, int layer) const {
  const auto& P = layer == 0 ? p : p2;
  const auto& Q = layer == 0 ? q : q2;
  return (P[j] - Q[j]) / std::sqrt(2.0);
}

std::vector<CMat> GeneratorSet::span() const {
  std::vector<CMat> out(p.begin(), p.end());
  out.insert(out.end(), q.begin(), q.end());
  out.insert(out.end(), p2.begin(), p2.end());
  out.insert(out.end(), q2.begin(), q2.end());
  return out;
}

std::vector<CMat> GeneratorSet::fermion_span() const {
  std::vector<CMat> out;
  for (int layer = 0; layer < basis.layers(); ++layer) {
    for (int j = 0; j < basis.n; ++j) out.push_back(psi(j, layer));
    for (int j = 0; j < basis.n; ++j) out.push_back(psibar(j, layer));
  }
  return out;
}

GeneratorSet clifford_generators(const SpinBasis& B) {
  if (B.model == Model::loop) throw Error(ErrorCode::unsupported, "loop generators are not spin-basis generators");
  GeneratorSet g;
  g.basis = B;
  const std::size_t D = B.dimension();
  const cplx I(0, 1);
  for (int layer = 0; layer < B.layers(); ++layer) {
    auto& P = layer == 0 ? g.p : g.p2;
    auto& Q = layer == 0 ? g.q : g.q2;
    for (int j = 0; j < B.n; ++j) {
      CMat pj = CMat::Zero(D, D), qj = CMat::Zero(D, D);
      for (std::size_t s = 0; s < D; ++s) {
        std::size_t t = B.flip(s, j, layer);
        pj(t, s) = static_cast<double>(B.spin(s, j + 1, layer));
        qj(t, s) = I * static_cast<double>(B.spin(s, j, layer));
      }
      P.push_back(pj);
      Q.push_back(qj);
    }
  }
  return g;
}

CVec expand_in_span(const std::vector<CMat>& basis, const CMat& target, double* residual) {
  // generator spans are orthonormal for <A,B> = tr(A^H B)/dim
  const double d = static_cast<double>(target.rows());
  CVec c(basis.size());
  CMat rest = target;
  for (std::size_t i = 0; i < basis.size(); ++i) {
    c(i) = basis[i].cwiseProduct(target.conjugate()).sum();
    c(i) = std::conj(c(i)) / d;
    rest -= c(i) * basis[i];
  }
  if (residual) *residual = rest.cwiseAbs().maxCoeff();
  return c;
}

namespace {

RMat checked_inverse(const RMat& m) {
  Eigen::FullPivLU<RMat> lu(m);
  if (!lu.isInvertible()) throw Error(ErrorCode::singular_block, "transfer factor is singular");
  return lu.inverse();
}

}  // namespace

ConjugationReport conjugation_check(const RMat& factor, const GeneratorSet& g, int shift) {
  RMat inv = checked_inverse(factor);
  auto span = g.span();
  ConjugationReport rep;
  rep.coefficients = CMat::Zero(span.size(), span.size());
  std::vector<CMat> images;
  for (std::size_t i = 0; i < span.size(); ++i) {
    CMat img = inv.cast<cplx>() * span[i] * factor.cast<cplx>();
    double r = 0;
    rep.coefficients.col(i) = expand_in_span(span, img, &r);
    rep.span_residual = std::max(rep.span_residual, r);
    images.push_back(img);
  }
  const int n = g.basis.n;
  const double d = static_cast<double>(factor.rows());
  for (int k = 0; k < n; ++k) {
    int kq = k + shift;
    if (kq < 0 || kq >= n) continue;
    const CMat& img = images[k];
    ConjugationFit fit;
    fit.k = k;
    fit.c = std::conj(g.p[k].cwiseProduct(img.conjugate()).sum()) / d;
    cplx cq = std::conj(g.q[kq].cwiseProduct(img.conjugate()).sum()) / d;
    fit.s = cplx(0, 1) * cq;
    fit.residual = (img - fit.c * g.p[k] + cplx(0, 1) * fit.s * g.q[kq]).cwiseAbs().maxCoeff();
    rep.fits.push_back(fit);
  }
  return rep;
}

InducedRotation induced_rotation(const RMat& V, const GeneratorSet& g, double tolerance) {
  RMat inv = checked_inverse(V);
  auto basis = g.fermion_span();
  const Eigen::Index m = static_cast<Eigen::Index>(basis.size());
  InducedRotation out;
  out.T = CMat::Zero(m, m);
  for (Eigen::Index i = 0; i < m; ++i) {
    CMat img = inv.cast<cplx>() * basis[i] * V.cast<cplx>();
    double r = 0;
    out.T.col(i) = expand_in_span(basis, img, &r);
    out.span_residual = std::max(out.span_residual, r);
  }
  if (out.span_residual > tolerance * std::max(1.0, out.T.cwiseAbs().maxCoeff()))
    throw Error(ErrorCode::non_quadratic, "conjugation by V leaves the generator span");
  const int n = g.basis.n;
  CMat R = CMat::Zero(m, m), Jm = CMat::Zero(m, m);
  for (int layer = 0; layer < g.basis.layers(); ++layer) {
    const int o = 2 * n * layer;
    for (int x = 0; x < n; ++x) {
      R(o + n + (n - 1 - x), o + x) = 1;
      R(o + (n - 1 - x), o + n + x) = 1;
      Jm(o + n + x, o + x) = 1;
      Jm(o + x, o + n + x) = 1;
    }
  }
  out.r_defect = (out.T * R - R * out.T).cwiseAbs().maxCoeff();
  out.j_defect = (out.T * Jm - Jm * out.T.conjugate()).cwiseAbs().maxCoeff();
  return out;
}

double ising_dual(double beta) {
  if (!(beta > 0)) throw Error(ErrorCode::duality_domain, "ising duality needs beta > 0");
  return std::atanh(std::exp(-2.0 * beta));
}

AtCouplings at_dual(AtCouplings c) {
  const double s = std::exp(2 * c.U) * std::sinh(2 * c.J);
  if (!(s > 0)) throw Error(ErrorCode::duality_domain, "AT duality needs exp(2U) sinh(2J) > 0");
  const double b = 1.0 + std::expm1(2 * c.U - 2 * c.J) / s;
  if (!(b > 0)) throw Error(ErrorCode::duality_domain, "AT duality has no solution for these couplings");
  const double A = std::sqrt(b * (2.0 / s + b));
  return {0.5 * std::log(A / b), 0.5 * std::log(A)};
}

}  // namespace holo
