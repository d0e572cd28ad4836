#pragma once

#include "holo/common.hpp"
#include "holo/lattice.hpp"

#include <array>
#include <optional>
#include <vector>

namespace holo {

struct EdgeField {
  const DomainGrid* grid = nullptr;
  std::vector<cplx> values;

  static EdgeField zeros(const DomainGrid& g) { return {&g, std::vector<cplx>(g.edges.size())}; }
  cplx operator[](int e) const { return values[e]; }
  cplx& operator[](int e) { return values[e]; }
};

struct HoloParams {
  Model model = Model::ising;
  Regime regime = Regime::critical;
  double beta = 0;  // ising beta, at coupling J
  double x = 0;     // loop weight
  double n = 0;     // loop fugacity
  std::optional<double> s;  // loop spin exponent, never defaulted
  cplx lambda;
  cplx alpha;
  cplx nu;
  cplx nu_loop;
  std::array<cplx, 4> e;
  std::array<cplx, 4> e_bar;
};

// coupling is beta (ising), J (at) or x (loop)
HoloParams make_params(Model model, Regime regime, double coupling, double n = 0,
                       std::optional<double> s = std::nullopt);

// a F(lhs) + b conj F(lhs) = c F(rhs) + d conj F(rhs), sides index Face::edges
struct FaceRelation {
  int lhs = 0;
  int rhs = 0;
  cplx a, b, c, d;
};

struct RelationSet {
  Model model = Model::ising;
  Regime regime = Regime::critical;
  cplx nu;
  std::array<FaceRelation, 4> relations;
};

RelationSet make_relations(const HoloParams& params);

struct ResidualReport {
  std::vector<int> ids;  // face or edge ids, aligned with per_item
  std::vector<std::array<double, 4>> per_item;
  double max_residual = 0;
  double mean_residual = 0;
  double tolerance = 1e-10;
  bool satisfied = true;
};

ResidualReport sholo_residuals(const EdgeField& field, const RelationSet& relations,
                               double tolerance = 1e-10, const std::vector<int>& skip_faces = {});

// |Im(f(z) sqrt(tau_cw(z)))| on boundary edges (all of them when `edges` is empty)
ResidualReport riemann_bc_residuals(const EdgeField& field, double tolerance = 1e-10,
                                    const std::vector<int>& edges = {});

struct ResidueResult {
  cplx front;
  cplx back;
  cplx residue;
};

// One-sided values at a horizontal edge a solved from the faces above (front)
// and below (back).
ResidueResult extend_with_residue(const EdgeField& field, int a, const HoloParams& params,
                                  double tolerance = 1e-6);

// Solve a z + b conj z = w for z; throws on a singular real 2x2 system.
cplx solve_conj_linear(cplx a, cplx b, cplx w);

// Solve the pair {a1 z + b1 zbar = w1, a2 z + b2 zbar = w2} in least squares;
// returns the residual of the fit in `residual`.
cplx solve_conj_pair(cplx a1, cplx b1, cplx w1, cplx a2, cplx b2, cplx w2, double* residual);

}  // namespace holo
