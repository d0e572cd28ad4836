#include "holo/propagate.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <limits>

namespace holo {

std::string_view to_string(Reading r) { return r == Reading::displayed ? "displayed" : "consistent"; }

Eigen::Matrix2d realize_term(cplx a, cplx b) {
  Eigen::Matrix2d m;
  m << a.real() + b.real(), -a.imag() + b.imag(), a.imag() + b.imag(), a.real() - b.real();
  return m;
}

RMat realize(const PropagatorRows& rows, int n) {
  RMat m = RMat::Zero(2 * n, 2 * n);
  for (int k = 0; k < n; ++k)
    for (const auto& t : rows[k]) m.block<2, 2>(2 * k, 2 * t.j) += realize_term(t.a, t.b);
  return m;
}

namespace {

PropagatorRows constant_rows(int n, double c, cplx lp, cplx right_conj) {
  PropagatorRows rows(n);
  const cplx l = lp;
  for (int k = 0; k < n; ++k) {
    if (k == 0) {
      rows[k] = {{0, 1.0 + 1.0 / c, l + 1.0 / (c * l)}, {1, l / c, 1.0 / c}};
    } else if (k == n - 1) {
      rows[k] = {{k - 1, 1.0 / (c * l), 1.0 / c}, {k, 1.0 + 1.0 / c, right_conj}};
    } else {
      rows[k] = {{k - 1, 1.0 / (c * l), 1.0 / c}, {k, 2.0, -c}, {k + 1, l / c, 1.0 / c}};
    }
  }
  return rows;
}

PropagatorRows beta_rows(int n, double beta, cplx left_conj, cplx right_conj) {
  const double S = std::sinh(2 * beta), C = std::cosh(2 * beta);
  const cplx I(0, 1);
  const cplx down = (-S - I) / (2 * S), up = (I - S) / (2 * S);
  const double side = C / (2 * S), edge = (S + C) * C / (2 * S);
  PropagatorRows rows(n);
  for (int k = 0; k < n; ++k) {
    if (k == 0) {
      rows[k] = {{0, edge, left_conj}, {1, up, side}};
    } else if (k == n - 1) {
      rows[k] = {{k - 1, down, side}, {k, edge, right_conj}};
    } else {
      rows[k] = {{k - 1, down, side}, {k, C * C / S, -C}, {k + 1, up, side}};
    }
  }
  return rows;
}

double effective_beta(Model model, double coupling) {
  return model == Model::loop ? 0.5 * std::abs(std::log(coupling)) : coupling;
}

}  // namespace

PropagatorRows propagator_rows(Model model, Regime regime, int n, double coupling, Reading reading) {
  if (n < 2) throw Error(ErrorCode::invalid_interval, "propagator needs at least two sites");
  const cplx lam = lambda();
  if (regime == Regime::critical) {
    if (model == Model::loop) {
      const double c = std::sqrt(3.0);
      const cplx l2 = lam * lam;
      cplx right = 1.0 / l2 + std::pow(lam, 3) / c;
      return constant_rows(n, c, l2, right);
    }
    const double c = std::sqrt(2.0);
    const cplx l3 = std::pow(lam, 3);
    return constant_rows(n, c, l3, 1.0 / l3 + l3 / c);
  }
  if (model == Model::loop && !(coupling > 0))
    throw Error(ErrorCode::singular_parameter, "loop weight x must be positive");
  const double beta = effective_beta(model, coupling);
  const double S = std::sinh(2 * beta), C = std::cosh(2 * beta);
  if (std::abs(S) < 1e-300 || !std::isfinite(S))
    throw Error(ErrorCode::singular_parameter, "sinh(2 beta) vanishes");
  const cplx I(0, 1);
  const cplx mixed = (-(S + C) * S + I * (C - S)) / (2 * S);
  if (reading == Reading::consistent) return beta_rows(n, beta, mixed, std::conj(mixed));
  if (model == Model::loop) return beta_rows(n, beta, mixed, mixed);
  return beta_rows(n, beta, 1.0, mixed);
}

RealizedPropagator build_propagator(Model model, Regime regime, const DualInterval& interval,
                                    double coupling, Reading reading) {
  if (interval.kind == IntervalKind::primal)
    throw Error(ErrorCode::invalid_interval, "propagators act on dual intervals");
  RealizedPropagator p;
  p.interval = interval;
  p.model = model;
  p.regime = regime;
  p.coupling = coupling;
  p.reading = reading;
  p.rows = propagator_rows(model, regime, interval.size(), coupling, reading);
  p.matrix = realize(p.rows, interval.size());
  if (!p.matrix.allFinite()) throw Error(ErrorCode::singular_parameter, "non-finite propagator entries");
  if (regime == Regime::subcritical) {
    p.flags.push_back("k_R f(k_R-1) coefficient read as (-S-i)/(2S)");
    if (model == Model::loop) p.flags.push_back("beta-form rows reconstructed with S_loop, C_loop");
    if (reading == Reading::displayed && model != Model::loop)
      p.flags.push_back("k_L conj f(k_L) coefficient 1 as displayed");
  }
  if (model == Model::loop && regime == Regime::critical)
    p.flags.push_back("k_R conj f(k_R) coefficient lambda^-2 + lambda^3/sqrt3 as displayed");
  return p;
}

SpectrumReport spectrum(const RMat& m, double tolerance) {
  SpectrumReport r;
  if (m.rows() != m.cols()) throw Error(ErrorCode::dimension_mismatch, "spectrum needs a square matrix");
  r.symmetric_defect = (m - m.transpose()).cwiseAbs().maxCoeff();
  Eigen::EigenSolver<RMat> es(m, false);
  if (es.info() != Eigen::Success) throw Error(ErrorCode::numerical, "eigensolver did not converge");
  for (Eigen::Index i = 0; i < es.eigenvalues().size(); ++i) r.eigenvalues.push_back(es.eigenvalues()(i));
  std::sort(r.eigenvalues.begin(), r.eigenvalues.end(), [](cplx a, cplx b) {
    if (std::abs(a) != std::abs(b)) return std::abs(a) > std::abs(b);
    return a.imag() > b.imag();
  });
  const std::size_t N = r.eigenvalues.size();
  r.min_modulus = N ? std::abs(r.eigenvalues.back()) : 0.0;
  r.branch_min_modulus = N ? std::abs(r.eigenvalues[(N + 1) / 2 - 1]) : 0.0;
  r.min_gap = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < N; ++i) {
    if (std::abs(std::abs(r.eigenvalues[i]) - 1.0) <= tolerance) r.has_unit_eigenvalue = true;
    for (std::size_t j = i + 1; j < N; ++j) {
      double gap = std::abs(r.eigenvalues[i] - r.eigenvalues[j]);
      double scale = std::max({1.0, std::abs(r.eigenvalues[i]), std::abs(r.eigenvalues[j])});
      r.min_gap = std::min(r.min_gap, gap / scale);
    }
  }
  r.distinct = r.min_gap > tolerance;
  return r;
}

RMat matrix_power(const RMat& m, int N) {
  if (N < 0) throw Error(ErrorCode::precondition, "matrix power needs N >= 0");
  RMat out = RMat::Identity(m.rows(), m.cols());
  for (int i = 0; i < N; ++i) out = m * out;
  return out;
}

RealizedPropagator matrix_power(const RealizedPropagator& p, int N) {
  RealizedPropagator q = p;
  q.matrix = matrix_power(p.matrix, N);
  q.rows.clear();
  return q;
}

BlockDecomposition block_decompose(const RMat& m) {
  if (m.rows() != m.cols() || m.rows() % 2 != 0)
    throw Error(ErrorCode::dimension_mismatch, "block decomposition needs an even square matrix");
  const Eigen::Index n = m.rows() / 2;
  BlockDecomposition b;
  b.RR.resize(n, n);
  b.RS.resize(n, n);
  b.SR.resize(n, n);
  b.SS.resize(n, n);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < n; ++j) {
      b.RR(i, j) = m(2 * i, 2 * j);
      b.RS(i, j) = m(2 * i, 2 * j + 1);
      b.SR(i, j) = m(2 * i + 1, 2 * j);
      b.SS(i, j) = m(2 * i + 1, 2 * j + 1);
    }
  return b;
}

RMat BlockDecomposition::reassemble() const {
  const Eigen::Index n = RR.rows();
  RMat m(2 * n, 2 * n);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < n; ++j) {
      m(2 * i, 2 * j) = RR(i, j);
      m(2 * i, 2 * j + 1) = RS(i, j);
      m(2 * i + 1, 2 * j) = SR(i, j);
      m(2 * i + 1, 2 * j + 1) = SS(i, j);
    }
  return m;
}

CVec apply_realized(const RMat& m, const CVec& field) {
  if (m.rows() != 2 * field.size())
    throw Error(ErrorCode::dimension_mismatch, "field length does not match propagator");
  RVec v(2 * field.size());
  for (Eigen::Index k = 0; k < field.size(); ++k) {
    v(2 * k) = field(k).real();
    v(2 * k + 1) = field(k).imag();
  }
  RVec w = m * v;
  CVec out(field.size());
  for (Eigen::Index k = 0; k < field.size(); ++k) out(k) = cplx(w(2 * k), w(2 * k + 1));
  return out;
}

CVec apply(const RealizedPropagator& p, const CVec& field) { return apply_realized(p.matrix, field); }

}  // namespace holo
