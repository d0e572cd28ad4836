#include "holo/sholo.hpp"

#include <algorithm>
#include <cmath>
#include <set>

namespace holo {

HoloParams make_params(Model model, Regime regime, double coupling, double n, std::optional<double> s) {
  HoloParams p;
  p.model = model;
  p.regime = regime;
  p.lambda = lambda();
  const cplx I(0, 1);
  if (model == Model::loop) {
    p.x = coupling;
    p.n = n;
    if (!(n >= 0.0 && n < 2.0)) throw Error(ErrorCode::domain, "loop relations need 0 <= n < 2");
    p.s = s;
    p.beta = 0.5 * std::abs(std::log(coupling));
    p.nu_loop = std::pow(std::conj(p.lambda), 2) * (n + I) / (n - I);
  } else {
    p.beta = coupling;
  }
  p.alpha = std::exp(-2.0 * p.beta);
  p.nu = std::pow(std::conj(p.lambda), 3) * (p.alpha + I) / (p.alpha - I);
  p.e = {cplx(-1, 0), std::polar(1.0, 4 * kPi / 3), cplx(-1, 0), std::polar(1.0, kPi / 3)};
  p.e_bar = {cplx(-1, 0), std::polar(1.0, -4 * kPi / 3), cplx(-1, 0), std::polar(1.0, -kPi / 3)};
  return p;
}

RelationSet make_relations(const HoloParams& p) {
  RelationSet r;
  r.model = p.model;
  r.regime = p.regime;
  const cplx lam = p.lambda;
  if (p.model == Model::loop) {
    if (!p.s) throw Error(ErrorCode::precondition, "loop relations need an explicit spin exponent s");
    r.nu = p.regime == Regime::critical ? cplx(1, 0) : p.nu_loop;
    const cplx inv = 1.0 / r.nu;
    // cycle z1..z4 = S, E, N, W
    const std::array<int, 4> z = {kS, kE, kN, kW};
    for (int k = 0; k < 4; ++k) {
      cplx ph = std::exp(2.0 * *p.s * std::log(p.e_bar[k]));
      r.relations[k] = {z[k], z[(k + 1) % 4], 1.0, inv * ph, inv, ph};
    }
    return r;
  }
  r.nu = p.regime == Regime::critical ? cplx(1, 0) : p.nu;
  const cplx nu = r.nu, inv = 1.0 / nu;
  const cplx l3 = std::pow(lam, 3), lm3 = 1.0 / l3;
  r.relations[0] = {kN, kE, 1.0, inv * lam, inv, lam};
  r.relations[1] = {kN, kW, 1.0, nu / lam, nu, 1.0 / lam};
  r.relations[2] = {kS, kE, 1.0, nu * l3, nu, l3};
  r.relations[3] = {kS, kW, 1.0, inv * lm3, inv, lm3};
  return r;
}

namespace {

double relation_residual(const FaceRelation& rel, cplx fl, cplx fr) {
  return std::abs(rel.a * fl + rel.b * std::conj(fl) - rel.c * fr - rel.d * std::conj(fr));
}

void aggregate(ResidualReport& rep) {
  double sum = 0;
  std::size_t count = 0;
  rep.max_residual = 0;
  for (const auto& row : rep.per_item)
    for (double v : row) {
      rep.max_residual = std::max(rep.max_residual, v);
      sum += v;
      ++count;
    }
  rep.mean_residual = count ? sum / count : 0.0;
  rep.satisfied = rep.max_residual <= rep.tolerance;
}

}  // namespace

ResidualReport sholo_residuals(const EdgeField& field, const RelationSet& rs, double tolerance,
                               const std::vector<int>& skip_faces) {
  const DomainGrid& g = *field.grid;
  if (g.lattice != LatticeKind::square)
    throw Error(ErrorCode::precondition, "face relations are evaluated on square faces");
  ResidualReport rep;
  rep.tolerance = tolerance;
  std::set<int> skip(skip_faces.begin(), skip_faces.end());
  for (const auto& f : g.faces) {
    if (skip.count(f.id)) continue;
    std::array<double, 4> row{};
    for (int k = 0; k < 4; ++k) {
      const auto& rel = rs.relations[k];
      row[k] = relation_residual(rel, field[f.edges[rel.lhs]], field[f.edges[rel.rhs]]);
    }
    rep.ids.push_back(f.id);
    rep.per_item.push_back(row);
  }
  aggregate(rep);
  return rep;
}

ResidualReport riemann_bc_residuals(const EdgeField& field, double tolerance, const std::vector<int>& edges) {
  const DomainGrid& g = *field.grid;
  ResidualReport rep;
  rep.tolerance = tolerance;
  const auto& list = edges.empty() ? g.boundary : edges;
  for (int e : list) {
    cplx tau = boundary_phase(g, e).value;
    double r = std::abs(std::imag(field[e] * std::sqrt(tau)));
    rep.ids.push_back(e);
    rep.per_item.push_back({r, 0, 0, 0});
  }
  aggregate(rep);
  return rep;
}

cplx solve_conj_linear(cplx a, cplx b, cplx w) {
  Eigen::Matrix2d M;
  M << a.real() + b.real(), -a.imag() + b.imag(), a.imag() + b.imag(), a.real() - b.real();
  double det = M.determinant();
  if (std::abs(det) < 1e-14) throw Error(ErrorCode::singular_extension, "singular conjugate-linear solve");
  Eigen::Vector2d sol = M.inverse() * Eigen::Vector2d(w.real(), w.imag());
  return {sol(0), sol(1)};
}

cplx solve_conj_pair(cplx a1, cplx b1, cplx w1, cplx a2, cplx b2, cplx w2, double* residual) {
  Eigen::Matrix<double, 4, 2> M;
  M << a1.real() + b1.real(), -a1.imag() + b1.imag(), a1.imag() + b1.imag(), a1.real() - b1.real(),
      a2.real() + b2.real(), -a2.imag() + b2.imag(), a2.imag() + b2.imag(), a2.real() - b2.real();
  Eigen::Vector4d w(w1.real(), w1.imag(), w2.real(), w2.imag());
  Eigen::JacobiSVD<Eigen::Matrix<double, 4, 2>> svd(M, Eigen::ComputeFullU | Eigen::ComputeFullV);
  if (svd.singularValues()(1) < 1e-12 * std::max(1.0, svd.singularValues()(0)))
    throw Error(ErrorCode::singular_extension, "singular conjugate-linear pair");
  Eigen::Vector2d sol = svd.solve(w);
  if (residual) *residual = (M * sol - w).cwiseAbs().maxCoeff();
  return {sol(0), sol(1)};
}

ResidueResult extend_with_residue(const EdgeField& field, int a, const HoloParams& params, double tolerance) {
  const DomainGrid& g = *field.grid;
  if (g.lattice != LatticeKind::square || a < 0 || a >= static_cast<int>(g.edges.size()) ||
      !g.edges[a].horizontal)
    throw Error(ErrorCode::precondition, "residue extension needs a horizontal edge of a square domain");
  if (g.edge_faces[a].size() != 2)
    throw Error(ErrorCode::precondition, "residue extension needs faces on both sides of a");
  RelationSet rs = make_relations(params);
  auto rep = sholo_residuals(field, rs, tolerance, g.edge_faces[a]);
  if (!rep.satisfied)
    throw Error(ErrorCode::precondition, "field is not s-holomorphic off a (max residual " +
                                             std::to_string(rep.max_residual) + ")");
  const Edge& ea = g.edges[a];
  int above = -1, below = -1;
  for (int f : g.edge_faces[a]) (g.faces[f].y2 > ea.y2 ? above : below) = f;
  // a is S of the face above (relations 3, 4) and N of the face below (1, 2)
  auto one_side = [&](int face, int r1, int r2) {
    const auto& f = g.faces[face];
    const auto& A = rs.relations[r1];
    const auto& B = rs.relations[r2];
    cplx w1 = A.c * field[f.edges[A.rhs]] + A.d * std::conj(field[f.edges[A.rhs]]);
    cplx w2 = B.c * field[f.edges[B.rhs]] + B.d * std::conj(field[f.edges[B.rhs]]);
    return solve_conj_pair(A.a, A.b, w1, B.a, B.b, w2, nullptr);
  };
  ResidueResult out;
  out.front = one_side(above, 2, 3);
  out.back = one_side(below, 0, 1);
  out.residue = cplx(0, 1) / (2 * kPi) * (out.front - out.back);
  return out;
}

}  // namespace holo
