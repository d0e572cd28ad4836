#pragma once

#include "holo/common.hpp"

#include <array>
#include <map>
#include <utility>
#include <vector>

namespace holo {

enum class LatticeKind { square, hexagonal };

// Edge midpoint in doubled coordinates (x2 = 2x). On hexagonal domains the
// doubled coordinates are brick-wall coordinates; `pos` is the true
// honeycomb midpoint.
struct Edge {
  int id = -1;
  int x2 = 0;
  int y2 = 0;
  bool horizontal = false;
  cplx pos;
  std::array<int, 2> vertices{-1, -1};  // hexagonal only; -1 marks a dangling end
};

// Square faces list edges as E, N, W, S. Hexagonal faces list their six
// edges counterclockwise from the lower-left.
struct Face {
  int id = -1;
  int x2 = 0;
  int y2 = 0;
  cplx center;
  std::vector<int> edges;
};

enum Side : int { kE = 0, kN = 1, kW = 2, kS = 3 };

struct HexVertex {
  int id = -1;
  int X = 0;
  int Y = 0;
  cplx pos;
  std::array<int, 3> edges{-1, -1, -1};
};

struct DomainGrid {
  LatticeKind lattice = LatticeKind::square;
  int width = 0;
  int height = 0;
  std::vector<Edge> edges;
  std::vector<Face> faces;
  std::vector<int> boundary;
  std::vector<HexVertex> vertices;
  std::vector<std::vector<int>> edge_faces;

  int edge_at(int x2, int y2) const;  // -1 when absent
  bool is_boundary(int edge) const;

 private:
  friend DomainGrid build_square_domain(int, int);
  friend DomainGrid build_hex_domain(int, int);
  std::map<std::pair<int, int>, int> index_;
};

DomainGrid build_square_domain(int width, int height);

// Brick-wall embedded honeycomb: `height` rows of `width` hexagons, odd rows
// shifted right by half a hexagon. Degree-2 vertices get a dangling edge.
DomainGrid build_hex_domain(int width, int height);

enum class IntervalKind { primal, dual, hex_dual };

struct DualInterval {
  int a = 0;
  int b = 1;
  IntervalKind kind = IntervalKind::dual;

  std::vector<double> sites() const;
  int size() const;  // number of sites
  double k_left() const;
  double k_right() const;
  // hex-dual endpoint mid-edges, half a step outside k_left/k_right
  double k_left_star() const { return a; }
  double k_right_star() const { return b; }
};

DualInterval build_dual_interval(int a, int b, IntervalKind kind);

struct BoundaryPhase {
  int edge = -1;
  cplx value;
};

// Clockwise unit tangent of the boundary at a boundary edge, tau = -i n_out.
BoundaryPhase boundary_phase(const DomainGrid& grid, int edge);

}  // namespace holo
