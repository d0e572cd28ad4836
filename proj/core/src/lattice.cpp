#include "holo/lattice.hpp"

#include <algorithm>
#include <cmath>
#include <set>

namespace holo {

int DomainGrid::edge_at(int x2, int y2) const {
  auto it = index_.find({x2, y2});
  return it == index_.end() ? -1 : it->second;
}

bool DomainGrid::is_boundary(int edge) const {
  return edge >= 0 && edge < static_cast<int>(edges.size()) && edge_faces[edge].size() < 2;
}

namespace {

void finish(DomainGrid& g) {
  g.edge_faces.assign(g.edges.size(), {});
  for (const auto& f : g.faces)
    for (int e : f.edges) g.edge_faces[e].push_back(f.id);
  g.boundary.clear();
  for (const auto& e : g.edges)
    if (g.edge_faces[e.id].size() < 2) g.boundary.push_back(e.id);
}

}  // namespace

DomainGrid build_square_domain(int width, int height) {
  if (width < 1 || height < 1)
    throw Error(ErrorCode::invalid_dimension, "square domain needs width, height >= 1");
  DomainGrid g;
  g.lattice = LatticeKind::square;
  g.width = width;
  g.height = height;
  // Row-major by (y, x) over doubled coordinates gives a canonical order.
  std::vector<std::pair<int, int>> keys;
  for (int y2 = 0; y2 <= 2 * height; ++y2) {
    if (y2 % 2 == 0) {
      for (int i = 0; i < width; ++i) keys.emplace_back(2 * i + 1, y2);
    } else {
      for (int i = 0; i <= width; ++i) keys.emplace_back(2 * i, y2);
    }
  }
  for (auto [x2, y2] : keys) {
    Edge e;
    e.id = static_cast<int>(g.edges.size());
    e.x2 = x2;
    e.y2 = y2;
    e.horizontal = (y2 % 2 == 0);
    e.pos = cplx(0.5 * x2, 0.5 * y2);
    g.index_[{x2, y2}] = e.id;
    g.edges.push_back(e);
  }
  for (int j = 0; j < height; ++j) {
    for (int i = 0; i < width; ++i) {
      Face f;
      f.id = static_cast<int>(g.faces.size());
      f.x2 = 2 * i + 1;
      f.y2 = 2 * j + 1;
      f.center = cplx(i + 0.5, j + 0.5);
      f.edges = {g.edge_at(f.x2 + 1, f.y2), g.edge_at(f.x2, f.y2 + 1),
                 g.edge_at(f.x2 - 1, f.y2), g.edge_at(f.x2, f.y2 - 1)};
      g.faces.push_back(f);
    }
  }
  finish(g);
  return g;
}

namespace {

cplx hex_position(int X, int Y) {
  double x = std::sqrt(3.0) * (X - 1) / 2.0;
  double y = ((X + Y) % 2 == 0) ? 1.5 * Y - 0.5 : 1.5 * Y - 1.0;
  return {x, y};
}

int mod2(int v) { return ((v % 2) + 2) % 2; }

}  // namespace

DomainGrid build_hex_domain(int width, int height) {
  if (width < 1 || height < 1)
    throw Error(ErrorCode::invalid_dimension, "hex domain needs width, height >= 1");
  DomainGrid g;
  g.lattice = LatticeKind::hexagonal;
  g.width = width;
  g.height = height;

  std::map<std::pair<int, int>, int> vid;
  auto vertex = [&](int X, int Y) {
    auto [it, fresh] = vid.try_emplace({X, Y}, static_cast<int>(g.vertices.size()));
    if (fresh) {
      HexVertex v;
      v.id = it->second;
      v.X = X;
      v.Y = Y;
      v.pos = hex_position(X, Y);
      g.vertices.push_back(v);
    }
    return it->second;
  };
  // edges keyed by doubled brick midpoint
  std::map<std::pair<int, int>, std::pair<int, int>> segs;
  std::vector<std::vector<std::pair<int, int>>> brick_edges;
  for (int r = 0; r < height; ++r) {
    for (int c = 0; c < width; ++c) {
      int X0 = 2 * c + mod2(r);
      std::array<std::pair<int, int>, 6> corners = {
          std::pair{X0, r}, {X0 + 1, r}, {X0 + 2, r}, {X0 + 2, r + 1}, {X0 + 1, r + 1}, {X0, r + 1}};
      std::vector<std::pair<int, int>> be;
      for (int k = 0; k < 6; ++k) {
        auto [xa, ya] = corners[k];
        auto [xb, yb] = corners[(k + 1) % 6];
        int va = vertex(xa, ya), vb = vertex(xb, yb);
        std::pair<int, int> key{xa + xb, ya + yb};
        segs[key] = {std::min(va, vb), std::max(va, vb)};
        be.push_back(key);
      }
      brick_edges.push_back(be);
    }
  }
  std::vector<int> degree(g.vertices.size(), 0);
  for (auto& [key, vv] : segs) {
    ++degree[vv.first];
    ++degree[vv.second];
  }
  // dangling stubs for degree-2 vertices, in the missing brick direction
  std::map<std::pair<int, int>, std::vector<int>> stubs;
  for (const auto& v : g.vertices) {
    if (degree[v.id] != 2) continue;
    bool up = mod2(v.X + v.Y) == 0;
    std::array<std::pair<int, int>, 3> dirs = {std::pair{2 * v.X - 1, 2 * v.Y},
                                               {2 * v.X + 1, 2 * v.Y},
                                               {2 * v.X, 2 * v.Y + (up ? 1 : -1)}};
    for (auto key : dirs)
      if (!segs.count(key)) stubs[key].push_back(v.id);
  }

  std::vector<std::pair<int, int>> keys;
  for (auto& kv : segs) keys.push_back(kv.first);
  for (auto& kv : stubs) keys.push_back(kv.first);
  std::sort(keys.begin(), keys.end(), [](auto a, auto b) {
    return a.second != b.second ? a.second < b.second : a.first < b.first;
  });
  for (auto key : keys) {
    Edge e;
    e.id = static_cast<int>(g.edges.size());
    e.x2 = key.first;
    e.y2 = key.second;
    e.horizontal = (key.second % 2 == 0);
    if (auto it = segs.find(key); it != segs.end()) {
      e.vertices = {it->second.first, it->second.second};
      e.pos = 0.5 * (g.vertices[e.vertices[0]].pos + g.vertices[e.vertices[1]].pos);
    } else {
      const auto& ends = stubs.at(key);
      if (ends.size() == 2) {
        e.vertices = {ends[0], ends[1]};
        e.pos = 0.5 * (g.vertices[ends[0]].pos + g.vertices[ends[1]].pos);
      } else {
        const auto& v = g.vertices[ends[0]];
        e.vertices = {v.id, -1};
        // outward direction opposes the two existing neighbours
        cplx d = 0;
        for (auto& [k2, vv] : segs) {
          if (vv.first == v.id || vv.second == v.id) {
            int w = vv.first == v.id ? vv.second : vv.first;
            cplx u = g.vertices[w].pos - v.pos;
            d -= u / std::abs(u);
          }
        }
        e.pos = v.pos + 0.5 * d / std::abs(d);
      }
    }
    g.index_[key] = e.id;
    g.edges.push_back(e);
  }
  for (auto& v : g.vertices) {
    int k = 0;
    for (const auto& e : g.edges)
      if (e.vertices[0] == v.id || e.vertices[1] == v.id) v.edges[k++] = e.id;
  }
  for (std::size_t b = 0; b < brick_edges.size(); ++b) {
    Face f;
    f.id = static_cast<int>(b);
    int r = static_cast<int>(b) / width, c = static_cast<int>(b) % width;
    int X0 = 2 * c + mod2(r);
    f.x2 = 2 * X0 + 2;
    f.y2 = 2 * r + 1;
    f.center = cplx(std::sqrt(3.0) * X0 / 2.0, 1.5 * r);
    for (auto key : brick_edges[b]) f.edges.push_back(g.edge_at(key.first, key.second));
    g.faces.push_back(f);
  }
  finish(g);
  return g;
}

std::vector<double> DualInterval::sites() const {
  std::vector<double> s;
  if (kind == IntervalKind::primal) {
    for (int x = a; x <= b; ++x) s.push_back(x);
  } else {
    for (int x = a; x < b; ++x) s.push_back(x + 0.5);
  }
  return s;
}

int DualInterval::size() const { return kind == IntervalKind::primal ? b - a + 1 : b - a; }

double DualInterval::k_left() const { return kind == IntervalKind::primal ? a : a + 0.5; }

double DualInterval::k_right() const { return kind == IntervalKind::primal ? b : b - 0.5; }

DualInterval build_dual_interval(int a, int b, IntervalKind kind) {
  if (b <= a) throw Error(ErrorCode::invalid_interval, "interval needs b > a");
  return DualInterval{a, b, kind};
}

BoundaryPhase boundary_phase(const DomainGrid& grid, int edge) {
  if (!grid.is_boundary(edge)) throw Error(ErrorCode::not_boundary, "edge is not on the boundary");
  const Edge& e = grid.edges[edge];
  const cplx I(0, 1);
  if (grid.lattice == LatticeKind::square) {
    if (e.horizontal) return {edge, e.y2 == 0 ? cplx(-1, 0) : cplx(1, 0)};
    return {edge, e.x2 == 0 ? I : -I};
  }
  cplx n;
  const auto& fs = grid.edge_faces[edge];
  if (!fs.empty()) {
    n = e.pos - grid.faces[fs[0]].center;
  } else if (e.vertices[1] < 0) {
    n = e.pos - grid.vertices[e.vertices[0]].pos;
  } else {
    // faceless edge between two vertices: normal pointing away from the patch centroid
    cplx centroid = 0;
    for (const auto& f : grid.faces) centroid += f.center;
    centroid /= static_cast<double>(grid.faces.size());
    cplx t = grid.vertices[e.vertices[1]].pos - grid.vertices[e.vertices[0]].pos;
    n = t * I;
    if (std::real(std::conj(n) * (e.pos - centroid)) < 0) n = -n;
  }
  return {edge, -I * n / std::abs(n)};
}

}  // namespace holo
