#pragma once

#include "holo/common.hpp"
#include "holo/lattice.hpp"
#include "holo/propagate.hpp"
#include "holo/sholo.hpp"

#include <memory>

namespace holo {

// Boundary map u -> v on the bottom row of an n x N rectangle: u + i v
// propagated N rows lands on a purely real top row.
struct RpsOperator {
  RealizedPropagator propagator;
  int N = 0;
  RMat power;
  BlockDecomposition blocks;
  RMat matrix;     // -SS^-1 SR
  RMat matrix_rs;  // -SS^-1 RS, the other block labelling
  double ss_condition = 0;
  double system_residual = 0;     // max |SR u + SS v| over unit inputs, for `matrix`
  double system_residual_rs = 0;  // same for `matrix_rs`
};

RpsOperator rps_operator(const RealizedPropagator& p, int N, double max_condition = 1e12);
RpsOperator rps_operator(Model model, Regime regime, const DualInterval& interval, double coupling, int N,
                         Reading reading = Reading::consistent);

// Imaginary part of P^N (u + i v) at the top row.
RVec top_imaginary(const RpsOperator& op, const RVec& u, const RVec& v);

// Solve the full system P^N [u; v] = [w; 0] for v by least squares.
RVec solve_system_lsq(const RpsOperator& op, const RVec& u);

struct RpsKernel {
  RMat table;  // table(y, x) = v(x) for u = delta_y
};

RpsKernel rps_kernel(const RpsOperator& op);
RVec apply_kernel(const RpsKernel& k, const RVec& u);

struct Extension {
  std::shared_ptr<const DomainGrid> grid;
  EdgeField field;
  ResidualReport interior;
  ResidualReport riemann;  // side walls and top row
  double vertical_mismatch = 0;  // disagreement of the two face solves at shared vertical edges
};

// Row-by-row propagation of u + i v through the rectangle, vertical edges
// solved from the face relations.
Extension extend_kernel(const RpsOperator& op, const RVec& u, double tolerance = 1e-9);

}  // namespace holo
