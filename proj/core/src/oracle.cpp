#include "holo/oracle.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <set>

namespace holo {

std::string_view to_string(Boundary b) {
  switch (b) {
    case Boundary::free: return "free";
    case Boundary::plus: return "plus";
    case Boundary::wired: return "wired";
  }
  return "?";
}

Boundary parse_boundary(std::string_view s) {
  if (s == "free") return Boundary::free;
  if (s == "plus") return Boundary::plus;
  if (s == "wired") return Boundary::wired;
  throw Error(ErrorCode::usage, "unknown boundary condition: " + std::string(s));
}

bool SiteGrid::on_ring(int s) const {
  int x = s % width, y = s / width;
  return x == 0 || y == 0 || x == width - 1 || y == height - 1;
}

std::vector<std::pair<int, int>> SiteGrid::bonds() const {
  std::vector<std::pair<int, int>> b;
  for (int y = 0; y < height; ++y)
    for (int x = 0; x < width; ++x) {
      if (x + 1 < width) b.emplace_back(id(x, y), id(x + 1, y));
      if (y + 1 < height) b.emplace_back(id(x, y), id(x, y + 1));
    }
  return b;
}

namespace {

struct UnionFind {
  std::vector<int> parent;
  explicit UnionFind(int n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
  int find(int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  }
  bool unite(int a, int b) {
    a = find(a);
    b = find(b);
    if (a == b) return false;
    parent[a] = b;
    return true;
  }
};

void check_grid(const SiteGrid& g) {
  if (g.width < 1 || g.height < 1) throw Error(ErrorCode::invalid_dimension, "site grid needs positive dimensions");
}

// Sum over 2^(bits) configurations in fixed chunks; `body(config, acc)` adds
// into a per-chunk accumulator, which are then reduced in chunk order.
template <class Acc, class Body>
Acc sharded_sum(std::uint64_t total, const Acc& zero, Body body) {
  const std::size_t nchunks = static_cast<std::size_t>(std::min<std::uint64_t>(total, 64));
  std::vector<Acc> acc(nchunks, zero);
  parallel_chunks(nchunks, [&](std::size_t c) {
    const std::uint64_t lo = total * c / nchunks, hi = total * (c + 1) / nchunks;
    for (std::uint64_t m = lo; m < hi; ++m) body(m, acc[c]);
  });
  Acc out = zero;
  for (const auto& a : acc) out += a;
  return out;
}

struct Moments {
  double Z = 0;
  RMat pair;
  RVec single;
  double extra = 0;
  Moments& operator+=(const Moments& o) {
    Z += o.Z;
    pair += o.pair;
    single += o.single;
    extra += o.extra;
    return *this;
  }
};

Moments zero_moments(int sites) { return {0.0, RMat::Zero(sites, sites), RVec::Zero(sites), 0.0}; }

EnumerationResult finish(const Moments& m, const std::string& convention) {
  EnumerationResult r;
  r.Z = m.Z;
  r.two_point = m.pair / m.Z;
  r.convention = convention;
  double mag = 0;
  for (Eigen::Index i = 0; i < m.single.size(); ++i) mag += m.single(i) / m.Z;
  r.observables["magnetization"] = m.single.size() ? mag / m.single.size() : 0.0;
  return r;
}

}  // namespace

EnumerationResult enumerate_ising(const SiteGrid& grid, double beta, Boundary bc) {
  check_grid(grid);
  if (bc == Boundary::wired) throw Error(ErrorCode::unsupported, "wired boundary is a random-cluster condition");
  const int S = grid.sites();
  std::vector<int> dyn;
  for (int s = 0; s < S; ++s)
    if (bc == Boundary::free || !grid.on_ring(s)) dyn.push_back(s);
  if (dyn.size() > 20) throw Error(ErrorCode::size_guard, "ising enumeration limited to 20 free sites");
  const auto bonds = grid.bonds();
  Moments m = sharded_sum(std::uint64_t{1} << dyn.size(), zero_moments(S), [&](std::uint64_t cfg, Moments& acc) {
    std::vector<int> s(S, 1);
    for (std::size_t i = 0; i < dyn.size(); ++i)
      if (cfg >> i & 1u) s[dyn[i]] = -1;
    double e = 0;
    for (auto [i, j] : bonds) e += s[i] * s[j];
    const double w = std::exp(beta * e);
    acc.Z += w;
    for (int i = 0; i < S; ++i) {
      acc.single(i) += w * s[i];
      for (int j = 0; j < S; ++j) acc.pair(i, j) += w * s[i] * s[j];
    }
  });
  auto r = finish(m, "weight exp(+beta sum_<ij> s_i s_j), boundary " + std::string(to_string(bc)));
  return r;
}

EnumerationResult enumerate_at(const SiteGrid& grid, double J, double U, Boundary bc) {
  check_grid(grid);
  if (bc == Boundary::wired) throw Error(ErrorCode::unsupported, "wired boundary is a random-cluster condition");
  const int S = grid.sites();
  std::vector<int> dyn;
  for (int s = 0; s < S; ++s)
    if (bc == Boundary::free || !grid.on_ring(s)) dyn.push_back(s);
  if (dyn.size() > 10) throw Error(ErrorCode::size_guard, "ashkin-teller enumeration limited to 10 free sites");
  const auto bonds = grid.bonds();
  Moments m = sharded_sum(std::uint64_t{1} << (2 * dyn.size()), zero_moments(S), [&](std::uint64_t cfg, Moments& acc) {
    std::vector<int> t(S, 1), tp(S, 1);
    for (std::size_t i = 0; i < dyn.size(); ++i) {
      if (cfg >> (2 * i) & 1u) t[dyn[i]] = -1;
      if (cfg >> (2 * i + 1) & 1u) tp[dyn[i]] = -1;
    }
    double e = 0;
    for (auto [i, j] : bonds) e += J * (t[i] * t[j] + tp[i] * tp[j]) + U * t[i] * t[j] * tp[i] * tp[j];
    const double w = std::exp(e);
    acc.Z += w;
    for (int i = 0; i < S; ++i) {
      acc.single(i) += w * t[i];
      acc.extra += w * t[i] * tp[i];
      for (int j = 0; j < S; ++j) acc.pair(i, j) += w * t[i] * t[j];
    }
  });
  auto r = finish(m, "weight exp(+sum J(t t + t' t') + U t t t' t'), boundary " + std::string(to_string(bc)));
  r.observables["polarization"] = m.extra / m.Z / S;
  return r;
}

EnumerationResult enumerate_rc(const SiteGrid& grid, double p, double q, Boundary bc) {
  check_grid(grid);
  if (bc == Boundary::plus) throw Error(ErrorCode::unsupported, "plus boundary is a spin condition");
  if (!(p >= 0 && p <= 1) || !(q > 0)) throw Error(ErrorCode::domain, "random-cluster needs p in [0,1], q > 0");
  const int S = grid.sites();
  const auto bonds = grid.bonds();
  if (bonds.size() > 20) throw Error(ErrorCode::size_guard, "random-cluster enumeration limited to 20 edges");
  const int E = static_cast<int>(bonds.size());
  Moments m = sharded_sum(std::uint64_t{1} << E, zero_moments(S), [&](std::uint64_t cfg, Moments& acc) {
    UnionFind uf(S + 1);  // S is the wired ghost
    if (bc == Boundary::wired)
      for (int s = 0; s < S; ++s)
        if (grid.on_ring(s)) uf.unite(s, S);
    const int open = std::popcount(cfg);
    for (int e = 0; e < E; ++e)
      if (cfg >> e & 1u) uf.unite(bonds[e].first, bonds[e].second);
    std::set<int> roots;
    for (int s = 0; s < S; ++s) roots.insert(uf.find(s));
    const int k = static_cast<int>(roots.size());
    const double w = std::pow(p, open) * std::pow(1 - p, E - open) * std::pow(q, k);
    if (w == 0) return;
    acc.Z += w;
    acc.extra += w * k;
    for (int i = 0; i < S; ++i)
      for (int j = 0; j < S; ++j)
        if (uf.find(i) == uf.find(j)) acc.pair(i, j) += w;
  });
  EnumerationResult r;
  r.Z = m.Z;
  r.two_point = m.pair / m.Z;
  r.convention = "weight p^open (1-p)^closed q^clusters, boundary " + std::string(to_string(bc));
  r.observables["clusters"] = m.extra / m.Z;
  return r;
}

LoopGraph loop_graph(const DomainGrid& hex) {
  if (hex.lattice != LatticeKind::hexagonal) throw Error(ErrorCode::precondition, "loop graph needs a hexagonal domain");
  LoopGraph g;
  g.vertices = static_cast<int>(hex.vertices.size());
  for (const auto& e : hex.edges)
    if (e.vertices[0] >= 0 && e.vertices[1] >= 0) g.edges.emplace_back(e.vertices[0], e.vertices[1]);
  return g;
}

EnumerationResult enumerate_loop(const LoopGraph& graph, double x, double n) {
  const int E = static_cast<int>(graph.edges.size());
  if (E > 24) throw Error(ErrorCode::size_guard, "loop enumeration limited to 24 edges");
  struct Acc {
    double Z = 0, edges = 0, loops = 0;
    Acc& operator+=(const Acc& o) {
      Z += o.Z;
      edges += o.edges;
      loops += o.loops;
      return *this;
    }
  };
  Acc a = sharded_sum(std::uint64_t{1} << E, Acc{}, [&](std::uint64_t cfg, Acc& acc) {
    std::vector<int> deg(graph.vertices, 0);
    for (int e = 0; e < E; ++e)
      if (cfg >> e & 1u) {
        ++deg[graph.edges[e].first];
        ++deg[graph.edges[e].second];
      }
    for (int d : deg)
      if (d % 2) return;
    UnionFind uf(graph.vertices);
    int merges = 0;
    for (int e = 0; e < E; ++e)
      if (cfg >> e & 1u) merges += uf.unite(graph.edges[e].first, graph.edges[e].second);
    int touched = 0;
    for (int d : deg) touched += d > 0;
    const int loops = touched - merges;  // components among touched vertices
    const int k = std::popcount(cfg);
    const double w = std::pow(x, k) * std::pow(n, loops);
    acc.Z += w;
    acc.edges += w * k;
    acc.loops += w * loops;
  });
  EnumerationResult r;
  r.Z = a.Z;
  r.convention = "weight x^edges n^loops over even subgraphs";
  r.observables["edges"] = a.edges / a.Z;
  r.observables["loops"] = a.loops / a.Z;
  return r;
}

namespace {

struct FaceSpinGeometry {
  int faces = 0;
  std::vector<std::array<int, 2>> walls;      // faces across each full edge, -1 outside
  std::vector<std::pair<int, int>> ends;      // edge vertices
  std::vector<std::array<int, 3>> triangles;  // faces around interior vertices
  int vertices = 0;
};

FaceSpinGeometry face_geometry(const DomainGrid& hex) {
  if (hex.lattice != LatticeKind::hexagonal) throw Error(ErrorCode::precondition, "face spins need a hexagonal domain");
  FaceSpinGeometry g;
  g.faces = static_cast<int>(hex.faces.size());
  g.vertices = static_cast<int>(hex.vertices.size());
  if (g.faces > 18) throw Error(ErrorCode::size_guard, "face spin enumeration limited to 18 faces");
  std::vector<std::set<int>> around(hex.vertices.size());
  for (const auto& e : hex.edges) {
    if (e.vertices[0] < 0 || e.vertices[1] < 0) continue;
    const auto& fs = hex.edge_faces[e.id];
    if (fs.empty()) throw Error(ErrorCode::unsupported, "edge without an adjacent face");
    g.walls.push_back({fs[0], fs.size() > 1 ? fs[1] : -1});
    g.ends.emplace_back(e.vertices[0], e.vertices[1]);
    for (int f : fs) {
      around[e.vertices[0]].insert(f);
      around[e.vertices[1]].insert(f);
    }
  }
  for (const auto& s : around)
    if (s.size() == 3) {
      auto it = s.begin();
      int a = *it++, b = *it++, c = *it;
      g.triangles.push_back({a, b, c});
    }
  return g;
}

}  // namespace

EnumerationResult enumerate_loop_spins(const DomainGrid& hex, double x, double n, double h, double h_prime) {
  FaceSpinGeometry G = face_geometry(hex);
  double Z = 0, walls_mean = 0;
  for (std::uint64_t cfg = 0; cfg < (std::uint64_t{1} << G.faces); ++cfg) {
    auto spin = [&](int f) { return f < 0 ? 1 : (cfg >> f & 1u ? -1 : 1); };
    UnionFind uf(G.vertices);
    int walls = 0, merges = 0;
    std::vector<char> touched(G.vertices, 0);
    for (std::size_t e = 0; e < G.walls.size(); ++e) {
      if (spin(G.walls[e][0]) == spin(G.walls[e][1])) continue;
      ++walls;
      touched[G.ends[e].first] = touched[G.ends[e].second] = 1;
      merges += uf.unite(G.ends[e].first, G.ends[e].second);
    }
    const int loops = static_cast<int>(std::count(touched.begin(), touched.end(), 1)) - merges;
    double r = 0, rp = 0;
    for (int f = 0; f < G.faces; ++f) r += spin(f);
    for (const auto& t : G.triangles)
      if (spin(t[0]) == spin(t[1]) && spin(t[1]) == spin(t[2])) rp += 1;
    const double w = std::pow(n, loops) * std::pow(x, walls) * std::exp(h * r + h_prime * rp);
    Z += w;
    walls_mean += w * walls;
  }
  EnumerationResult out;
  out.Z = Z;
  out.convention = "weight n^loops x^walls exp(h r + h' r'), face spins, outside +";
  out.observables["walls"] = walls_mean / Z;
  out.observables["bonds"] = static_cast<double>(G.walls.size());
  return out;
}

EnumerationResult enumerate_hex_face_ising(const DomainGrid& hex, double beta) {
  FaceSpinGeometry G = face_geometry(hex);
  double Z = 0;
  for (std::uint64_t cfg = 0; cfg < (std::uint64_t{1} << G.faces); ++cfg) {
    auto spin = [&](int f) { return f < 0 ? 1 : (cfg >> f & 1u ? -1 : 1); };
    double e = 0;
    for (const auto& w : G.walls) e += spin(w[0]) * spin(w[1]);
    Z += std::exp(beta * e);
  }
  EnumerationResult out;
  out.Z = Z;
  out.convention = "weight exp(+beta sum s s) over face pairs, outside +";
  out.observables["bonds"] = static_cast<double>(G.walls.size());
  return out;
}

namespace {

struct StripGraph {
  int vertices = 0;
  std::vector<std::pair<int, int>> edges;  // second = -1 - s for the open top strand s
};

StripGraph strip_graph(int width, int layers, bool open_top) {
  if (width < 1 || layers < 1) throw Error(ErrorCode::invalid_dimension, "strip needs width, layers >= 1");
  StripGraph g;
  const int nv = 2 * width;
  g.vertices = nv * layers;
  for (int L = 0; L < layers; ++L) {
    for (int p = 0; p + 1 < nv; ++p) g.edges.emplace_back(L * nv + p, L * nv + p + 1);
    for (int s = 0; s < width; ++s) {
      if (L + 1 < layers)
        g.edges.emplace_back(L * nv + 2 * s + 1, (L + 1) * nv + 2 * s);
      else if (open_top)
        g.edges.emplace_back(L * nv + 2 * s + 1, -1 - s);
    }
  }
  return g;
}

}  // namespace

LoopGraph loop_strip_graph(int width, int layers) {
  StripGraph s = strip_graph(width, layers, false);
  return {s.vertices, s.edges};
}

std::map<LinkPattern, double> enumerate_loop_strip(int width, int layers, double K, double n) {
  StripGraph g = strip_graph(width, layers, true);
  const int E = static_cast<int>(g.edges.size());
  if (E > 24) throw Error(ErrorCode::size_guard, "strip enumeration limited to 24 edges");
  std::map<LinkPattern, double> out;
  for (std::uint64_t cfg = 0; cfg < (std::uint64_t{1} << E); ++cfg) {
    std::vector<int> deg(g.vertices, 0);
    std::vector<int> strand_vertex(width, -1);
    for (int e = 0; e < E; ++e) {
      if (!(cfg >> e & 1u)) continue;
      auto [u, v] = g.edges[e];
      ++deg[u];
      if (v >= 0) ++deg[v];
      else strand_vertex[-1 - v] = u;
    }
    if (std::any_of(deg.begin(), deg.end(), [](int d) { return d != 0 && d != 2; })) continue;
    UnionFind uf(g.vertices);
    for (int e = 0; e < E; ++e)
      if (cfg >> e & 1u && g.edges[e].second >= 0) uf.unite(g.edges[e].first, g.edges[e].second);
    std::map<int, std::vector<int>> open;
    for (int s = 0; s < width; ++s)
      if (strand_vertex[s] >= 0) open[uf.find(strand_vertex[s])].push_back(s);
    LinkPattern pat(width, -1);
    for (auto& [root, ss] : open) {
      pat[ss[0]] = ss[1];
      pat[ss[1]] = ss[0];
    }
    std::set<int> closed;
    int occupied = 0;
    for (int v = 0; v < g.vertices; ++v) {
      if (!deg[v]) continue;
      ++occupied;
      if (!open.count(uf.find(v))) closed.insert(uf.find(v));
    }
    out[pat] += std::pow(K, occupied) * std::pow(n, static_cast<double>(closed.size()));
  }
  return out;
}

double transfer_partition(const TransferOperator& V, int N) {
  if (V.model == Model::loop) throw Error(ErrorCode::unsupported, "spin partition function needs a spin transfer matrix");
  if (N < 0) throw Error(ErrorCode::precondition, "N must be nonnegative");
  RVec e = RVec::Zero(V.matrix.rows());
  e(0) = 1.0;
  if (V.vh_sqrt.size()) e = V.vh_sqrt * e;
  RVec v = e;
  for (int i = 0; i < N; ++i) v = V.matrix * v;
  return e.dot(v);
}

double p_self_dual(double q) {
  if (!(q > 0)) throw Error(ErrorCode::domain, "q must be positive");
  return std::sqrt(q) / (std::sqrt(q) + 1.0);
}

double p_dual(double p, double q) {
  if (!(q > 0) || !(p >= 0 && p <= 1)) throw Error(ErrorCode::domain, "p_dual needs p in [0,1], q > 0");
  return (1 - p) * q / ((1 - p) * q + p);
}

std::vector<CriticalPoint> critical_points() {
  std::vector<CriticalPoint> t;
  for (int q = 1; q <= 4; ++q) t.push_back({"p_sd(" + std::to_string(q) + ")", p_self_dual(q)});
  t.push_back({"beta_c", beta_c()});
  t.push_back({"1-exp(-2 beta_c)", 1.0 - std::exp(-2.0 * beta_c())});
  for (int n = 0; n <= 2; ++n) t.push_back({"x_c(" + std::to_string(n) + ")", x_c(n)});
  t.push_back({"J_sd", at_self_dual()});
  t.push_back({"U_sd", at_self_dual()});
  return t;
}

std::vector<SlopeRow> correlation_length_slope(int width, int height, double p, double q) {
  if (width < 2) throw Error(ErrorCode::invalid_dimension, "slope table needs width >= 2");
  if (width > 5) throw Error(ErrorCode::size_guard, "slope table limited to distance 4");
  SiteGrid g{width, height};
  EnumerationResult r = enumerate_rc(g, p, q, Boundary::free);
  std::vector<SlopeRow> rows;
  for (int n = 1; n < width; ++n) {
    SlopeRow row;
    row.distance = n;
    row.probability = r.two_point(g.id(0, 0), g.id(n, 0));
    row.slope = row.probability > 0 ? -std::log(row.probability) / n : std::numeric_limits<double>::infinity();
    rows.push_back(row);
  }
  return rows;
}

}  // namespace holo
