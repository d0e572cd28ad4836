#include "holo/rps.hpp"

#include <Eigen/SVD>

#include <cmath>
#include <limits>

namespace holo {

RpsOperator rps_operator(const RealizedPropagator& p, int N, double max_condition) {
  if (N < 0) throw Error(ErrorCode::precondition, "RPS operator needs N >= 0");
  RpsOperator op;
  op.propagator = p;
  op.N = N;
  op.power = matrix_power(p.matrix, N);
  op.blocks = block_decompose(op.power);
  const RMat& SS = op.blocks.SS;
  Eigen::JacobiSVD<RMat> svd(SS);
  const auto& sv = svd.singularValues();
  op.ss_condition = sv(sv.size() - 1) > 0 ? sv(0) / sv(sv.size() - 1) : std::numeric_limits<double>::infinity();
  if (!(op.ss_condition <= max_condition))
    throw Error(ErrorCode::singular_block,
                "SS block is singular (condition estimate " + std::to_string(op.ss_condition) + ")");
  Eigen::PartialPivLU<RMat> lu(SS);
  op.matrix = -lu.solve(op.blocks.SR);
  op.matrix_rs = -lu.solve(op.blocks.RS);
  const Eigen::Index n = SS.rows();
  for (Eigen::Index y = 0; y < n; ++y) {
    RVec u = RVec::Unit(n, y);
    op.system_residual = std::max(op.system_residual, top_imaginary(op, u, op.matrix * u).cwiseAbs().maxCoeff());
    op.system_residual_rs =
        std::max(op.system_residual_rs, top_imaginary(op, u, op.matrix_rs * u).cwiseAbs().maxCoeff());
  }
  return op;
}

RpsOperator rps_operator(Model model, Regime regime, const DualInterval& interval, double coupling, int N,
                         Reading reading) {
  return rps_operator(build_propagator(model, regime, interval, coupling, reading), N);
}

RVec top_imaginary(const RpsOperator& op, const RVec& u, const RVec& v) {
  const Eigen::Index n = op.blocks.SS.rows();
  if (u.size() != n || v.size() != n) throw Error(ErrorCode::dimension_mismatch, "boundary data length mismatch");
  RVec x(2 * n);
  for (Eigen::Index k = 0; k < n; ++k) {
    x(2 * k) = u(k);
    x(2 * k + 1) = v(k);
  }
  RVec w = op.power * x;
  RVec im(n);
  for (Eigen::Index k = 0; k < n; ++k) im(k) = w(2 * k + 1);
  return im;
}

RVec solve_system_lsq(const RpsOperator& op, const RVec& u) {
  const Eigen::Index n = op.blocks.SS.rows();
  if (u.size() != n) throw Error(ErrorCode::dimension_mismatch, "boundary data length mismatch");
  // unknowns (w, v): [P^N]_{real rows} [u; v] - w = 0 and [P^N]_{imag rows} [u; v] = 0
  RMat A = RMat::Zero(2 * n, 2 * n);
  RVec b = RVec::Zero(2 * n);
  A.topLeftCorner(n, n) = -RMat::Identity(n, n);
  A.topRightCorner(n, n) = op.blocks.RS;
  A.bottomRightCorner(n, n) = op.blocks.SS;
  b.head(n) = -op.blocks.RR * u;
  b.tail(n) = -op.blocks.SR * u;
  RVec sol = A.jacobiSvd(Eigen::ComputeThinU | Eigen::ComputeThinV).solve(b);
  return sol.tail(n);
}

RpsKernel rps_kernel(const RpsOperator& op) {
  RpsKernel k;
  k.table = op.matrix.transpose();
  return k;
}

RVec apply_kernel(const RpsKernel& k, const RVec& u) {
  if (u.size() != k.table.rows()) throw Error(ErrorCode::dimension_mismatch, "boundary data length mismatch");
  RVec v = RVec::Zero(k.table.cols());
  for (Eigen::Index y = 0; y < k.table.rows(); ++y) v += u(y) * k.table.row(y).transpose();
  return v;
}

Extension extend_kernel(const RpsOperator& op, const RVec& u, double tolerance) {
  const RealizedPropagator& P = op.propagator;
  if (P.model == Model::loop) throw Error(ErrorCode::unsupported, "kernel extension uses square face relations");
  const int n = P.n(), N = op.N;
  if (u.size() != n) throw Error(ErrorCode::dimension_mismatch, "boundary data length mismatch");
  if (N < 1) throw Error(ErrorCode::precondition, "kernel extension needs at least one row of faces");
  RelationSet rs = make_relations(make_params(P.model, P.regime, P.coupling));
  Extension ext;
  auto grid = std::make_shared<DomainGrid>(build_square_domain(n, N));
  ext.grid = grid;
  ext.field = EdgeField::zeros(*grid);
  EdgeField& h = ext.field;

  CVec row(n);
  RVec v = op.matrix * u;
  for (int k = 0; k < n; ++k) row(k) = cplx(u(k), v(k));
  for (int y = 0; y <= N; ++y) {
    if (y > 0) row = holo::apply(P, row);
    for (int k = 0; k < n; ++k) {
      if (!std::isfinite(std::abs(row(k))) || std::abs(row(k)) > 1e150)
        throw Error(ErrorCode::instability, "propagated boundary data overflowed");
      h[grid->edge_at(2 * k + 1, 2 * y)] = row(k);
    }
  }
  // a F(lhs) + b conj F(lhs) = c F(rhs) + d conj F(rhs), solved for the rhs side
  auto side = [&](const Face& f, const FaceRelation& A, const FaceRelation& B) {
    cplx w1 = A.a * h[f.edges[A.lhs]] + A.b * std::conj(h[f.edges[A.lhs]]);
    cplx w2 = B.a * h[f.edges[B.lhs]] + B.b * std::conj(h[f.edges[B.lhs]]);
    return solve_conj_pair(A.c, A.d, w1, B.c, B.d, w2, nullptr);
  };
  for (int y = 0; y < N; ++y) {
    for (int x = 0; x <= n; ++x) {
      const int e = grid->edge_at(2 * x, 2 * y + 1);
      std::vector<cplx> sols;
      if (x > 0) sols.push_back(side(grid->faces[y * n + x - 1], rs.relations[0], rs.relations[2]));
      if (x < n) sols.push_back(side(grid->faces[y * n + x], rs.relations[1], rs.relations[3]));
      h[e] = sols.front();
      if (sols.size() == 2) ext.vertical_mismatch = std::max(ext.vertical_mismatch, std::abs(sols[0] - sols[1]));
    }
  }
  ext.interior = sholo_residuals(h, rs, tolerance);
  std::vector<int> walls;
  for (int e : grid->boundary)
    if (!(grid->edges[e].horizontal && grid->edges[e].y2 == 0)) walls.push_back(e);
  ext.riemann = riemann_bc_residuals(h, tolerance, walls);
  return ext;
}

}  // namespace holo
