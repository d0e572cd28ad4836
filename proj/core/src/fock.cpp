#include "holo/fock.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>

namespace holo {

AntisymmetricMatrix make_antisymmetric(const CMat& a) {
  if (a.rows() != a.cols()) throw Error(ErrorCode::dimension_mismatch, "antisymmetric matrix must be square");
  AntisymmetricMatrix out;
  out.defect = a.size() ? (a + a.transpose()).cwiseAbs().maxCoeff() : 0.0;
  out.m = 0.5 * (a - a.transpose());
  return out;
}

cplx pfaffian(const CMat& a) {
  if (a.rows() != a.cols()) throw Error(ErrorCode::dimension_mismatch, "pfaffian needs a square matrix");
  const Eigen::Index n = a.rows();
  if (n % 2 != 0) throw Error(ErrorCode::invalid_dimension, "pfaffian needs an even dimension");
  if (n == 0) return 1.0;
  CMat A = a;
  cplx pf = 1.0;
  for (Eigen::Index k = 0; k < n - 1; k += 2) {
    Eigen::Index kp;
    A.col(k).tail(n - k - 1).cwiseAbs().maxCoeff(&kp);
    kp += k + 1;
    if (kp != k + 1) {
      A.row(k + 1).swap(A.row(kp));
      A.col(k + 1).swap(A.col(kp));
      pf = -pf;
    }
    if (A(k + 1, k) == cplx(0)) return 0.0;
    pf *= A(k, k + 1);
    if (k + 2 < n) {
      const Eigen::Index m = n - k - 2;
      CVec tau = A.row(k).tail(m).transpose() / A(k, k + 1);
      CVec col = A.col(k + 1).tail(m);
      A.bottomRightCorner(m, m) += tau * col.transpose() - col * tau.transpose();
    }
  }
  return pf;
}

WickResult wick_correlation(const CMat& table) {
  if (table.rows() != table.cols()) throw Error(ErrorCode::dimension_mismatch, "pair table must be square");
  WickResult r;
  const Eigen::Index n = table.rows();
  if (n % 2 != 0) {
    r.parity_zero = true;
    r.value = 0;
    return r;
  }
  CMat A = CMat::Zero(n, n);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = i + 1; j < n; ++j) {
      A(i, j) = table(i, j);
      A(j, i) = -table(i, j);
    }
  r.value = pfaffian(A);
  return r;
}

std::string_view to_string(PolarizationSource s) {
  switch (s) {
    case PolarizationSource::low_temperature: return "low-temperature";
    case PolarizationSource::vanishing_temperature: return "vanishing-temperature";
    case PolarizationSource::physical: return "physical";
  }
  return "?";
}

cplx bilinear_form(const CMat& u, const CMat& v, double* defect) {
  CMat ac = u * v + v * u;
  const double d = static_cast<double>(ac.rows());
  cplx c = ac.trace() / d;
  if (defect) *defect = (ac - c * CMat::Identity(ac.rows(), ac.cols())).cwiseAbs().maxCoeff();
  return c;
}

CMat gram_matrix(const std::vector<CMat>& basis) {
  const Eigen::Index m = static_cast<Eigen::Index>(basis.size());
  CMat G(m, m);
  for (Eigen::Index i = 0; i < m; ++i)
    for (Eigen::Index j = i; j < m; ++j) G(i, j) = G(j, i) = bilinear_form(basis[i], basis[j]);
  return G;
}

namespace {

double isotropy(const CMat& W, const CMat& form) {
  if (W.cols() == 0) return 0.0;
  return (W.transpose() * form * W).cwiseAbs().maxCoeff();
}

void finish(Polarization& p) {
  p.isotropy_cr = isotropy(p.W_cr, p.form);
  p.isotropy_ann = isotropy(p.W_ann, p.form);
}

}  // namespace

Polarization polarize_low_temperature(const GeneratorSet& g) {
  const int n = g.basis.n, layers = g.basis.layers();
  const Eigen::Index dim = 2 * n * layers;
  Polarization p;
  p.source = PolarizationSource::low_temperature;
  p.form = gram_matrix(g.span());
  p.W_cr = CMat::Zero(dim, n * layers);
  p.W_ann = CMat::Zero(dim, n * layers);
  const cplx I(0, 1);
  // span() order: p, q of layer 0, then p, q of layer 1
  for (int layer = 0; layer < layers; ++layer)
    for (int k = 0; k < n; ++k) {
      const int col = layer * n + k;
      const int pi = 2 * n * layer + k, qi = 2 * n * layer + n + k;
      p.W_cr(pi, col) = 1.0;
      p.W_cr(qi, col) = -I;
      p.W_ann(pi, col) = 1.0;
      p.W_ann(qi, col) = I;
    }
  finish(p);
  return p;
}

Polarization polarize_vanishing_temperature(const GeneratorSet& g, const RMat& V, int N) {
  if (N < 0) throw Error(ErrorCode::precondition, "vanishing-temperature polarization needs N >= 0");
  Polarization p = polarize_low_temperature(g);
  p.source = PolarizationSource::vanishing_temperature;
  Eigen::FullPivLU<RMat> lu(V);
  if (!lu.isInvertible()) throw Error(ErrorCode::singular_block, "transfer matrix is singular");
  CMat VN = CMat::Identity(V.rows(), V.cols()), VNinv = VN;
  const CMat Vc = V.cast<cplx>(), Vi = lu.inverse().cast<cplx>();
  for (int i = 0; i < N; ++i) {
    VN = VN * Vc;
    VNinv = Vi * VNinv;
  }
  auto span = g.span();
  CMat M(span.size(), span.size());
  for (std::size_t i = 0; i < span.size(); ++i) {
    double r = 0;
    M.col(i) = expand_in_span(span, VNinv * span[i] * VN, &r);
    if (r > 1e-8 * std::max(1.0, M.col(i).cwiseAbs().maxCoeff()))
      throw Error(ErrorCode::non_quadratic, "conjugation by V^N leaves the generator span");
  }
  p.W_cr = M * p.W_cr;
  p.W_ann = M * p.W_ann;
  finish(p);
  return p;
}

Polarization polarize_physical(const CMat& T, const CMat& form, double tolerance) {
  if (T.rows() != T.cols() || form.rows() != T.rows())
    throw Error(ErrorCode::dimension_mismatch, "rotation and form dimensions differ");
  Eigen::ComplexEigenSolver<CMat> es(T);
  if (es.info() != Eigen::Success) throw Error(ErrorCode::numerical, "eigensolver did not converge");
  Polarization p;
  p.source = PolarizationSource::physical;
  p.form = form;
  std::vector<Eigen::Index> small, large;
  for (Eigen::Index i = 0; i < T.rows(); ++i) {
    cplx l = es.eigenvalues()(i);
    p.eigenvalues.push_back(l);
    double m = std::abs(l);
    if (std::abs(m - 1.0) <= tolerance)
      throw Error(ErrorCode::cannot_polarize, "rotation has an eigenvalue of unit modulus");
    (m < 1.0 ? small : large).push_back(i);
  }
  if (small.size() != large.size())
    throw Error(ErrorCode::cannot_polarize, "eigenvalues inside and outside the unit circle do not pair up");
  p.W_cr.resize(T.rows(), static_cast<Eigen::Index>(small.size()));
  p.W_ann.resize(T.rows(), static_cast<Eigen::Index>(large.size()));
  for (std::size_t i = 0; i < small.size(); ++i) p.W_cr.col(i) = es.eigenvectors().col(small[i]).normalized();
  for (std::size_t i = 0; i < large.size(); ++i) p.W_ann.col(i) = es.eigenvectors().col(large[i]).normalized();
  finish(p);
  return p;
}

double vacuum_defect(const Polarization& pol, const std::vector<CMat>& basis, const CVec& v) {
  if (static_cast<Eigen::Index>(basis.size()) != pol.W_ann.rows())
    throw Error(ErrorCode::dimension_mismatch, "operator basis does not match the polarization");
  double worst = 0;
  for (Eigen::Index c = 0; c < pol.W_ann.cols(); ++c) {
    CMat w = CMat::Zero(v.size(), v.size());
    for (std::size_t i = 0; i < basis.size(); ++i) w += pol.W_ann(i, c) * basis[i];
    worst = std::max(worst, (w * v).cwiseAbs().maxCoeff());
  }
  return worst;
}

FockSpectrum fock_spectrum(cplx Lambda0, const std::vector<cplx>& lambdas, std::size_t max_terms) {
  if (lambdas.size() > 24) throw Error(ErrorCode::size_guard, "too many one-particle eigenvalues");
  FockSpectrum f;
  f.Lambda0 = Lambda0;
  f.lambdas = lambdas;
  const std::size_t count = std::size_t{1} << lambdas.size();
  f.spectrum.reserve(count);
  for (std::size_t mask = 0; mask < count; ++mask) {
    cplx v = Lambda0;
    for (std::size_t s = 0; s < lambdas.size(); ++s)
      if (mask >> s & 1u) v /= lambdas[s];
    f.spectrum.push_back(v);
  }
  std::stable_sort(f.spectrum.begin(), f.spectrum.end(),
                   [](cplx a, cplx b) { return std::abs(a) > std::abs(b); });
  if (max_terms && f.spectrum.size() > max_terms) f.spectrum.resize(max_terms);
  return f;
}

FockSpectrum fock_spectrum_from_transfer(const TransferOperator& V, const GeneratorSet& g) {
  Eigen::EigenSolver<RMat> es(V.matrix, false);
  if (es.info() != Eigen::Success) throw Error(ErrorCode::numerical, "eigensolver did not converge");
  cplx L0 = 0;
  for (Eigen::Index i = 0; i < es.eigenvalues().size(); ++i)
    if (std::abs(es.eigenvalues()(i)) > std::abs(L0)) L0 = es.eigenvalues()(i);
  InducedRotation rot = induced_rotation(V.matrix, g);
  Eigen::ComplexEigenSolver<CMat> ts(rot.T, false);
  std::vector<cplx> lambdas;
  for (Eigen::Index i = 0; i < ts.eigenvalues().size(); ++i)
    if (std::abs(ts.eigenvalues()(i)) > 1.0) lambdas.push_back(ts.eigenvalues()(i));
  std::sort(lambdas.begin(), lambdas.end(), [](cplx a, cplx b) { return std::abs(a) > std::abs(b); });
  return fock_spectrum(L0, lambdas);
}

}  // namespace holo
