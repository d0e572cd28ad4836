#include "holo/observables.hpp"

#include "holo/fock.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <limits>
#include <numeric>

namespace holo {

namespace {

cplx unit(cplx z) { return z / std::abs(z); }

struct Walker {
  const DomainGrid& g;
  int max_len;
  int stop;
  std::size_t budget;
  std::size_t visits = 0;
  double step;
  std::vector<char> used;
  PathRecord cur;
  std::function<void(int, const PathRecord&)> visit;

  Walker(const DomainGrid& grid, int len, int stop_edge, std::size_t b)
      : g(grid), max_len(len), stop(stop_edge), budget(b),
        step(grid.lattice == LatticeKind::square ? kPi / 2 : kPi / 3), used(grid.edges.size(), 0) {}

  void turn(cplx d, cplx nd) {
    long k = std::lround(std::arg(nd / d) / step);
    if (k > 0) cur.left_turns += static_cast<int>(k);
    if (k < 0) cur.right_turns -= static_cast<int>(k);
    cur.winding = (cur.left_turns - cur.right_turns) * step;
  }

  void arrive(int e) {
    if (++visits > budget)
      throw Error(ErrorCode::enumeration_budget,
                  "path enumeration exceeded " + std::to_string(budget) + " steps");
    visit(e, cur);
  }

  void face(int f, int ein, cplx d) {
    const Face& F = g.faces[f];
    ++cur.length;
    for (int e : F.edges) {
      if (e == ein || used[e]) continue;
      cplx nd = unit(g.edges[e].pos - F.center);
      PathRecord saved = cur;
      turn(d, nd);
      cur.edges.push_back(e);
      used[e] = 1;
      arrive(e);
      if (e != stop && g.edge_faces[e].size() == 2 && cur.length < max_len) {
        int other = g.edge_faces[e][0] == f ? g.edge_faces[e][1] : g.edge_faces[e][0];
        face(other, e, unit(g.faces[other].center - g.edges[e].pos));
      }
      used[e] = 0;
      cur = std::move(saved);
    }
    --cur.length;
  }

  void vertex(int v, int ein, cplx d) {
    const HexVertex& V = g.vertices[v];
    ++cur.length;
    for (int e : V.edges) {
      if (e < 0 || e == ein || used[e]) continue;
      cplx nd = unit(g.edges[e].pos - V.pos);
      PathRecord saved = cur;
      turn(d, nd);
      cur.edges.push_back(e);
      used[e] = 1;
      arrive(e);
      const auto& ends = g.edges[e].vertices;
      int w = ends[0] == v ? ends[1] : ends[0];
      if (e != stop && w >= 0 && cur.length < max_len) vertex(w, e, nd);
      used[e] = 0;
      cur = std::move(saved);
    }
    --cur.length;
  }

  void run(int a) {
    used[a] = 1;
    cur = PathRecord{};
    cur.edges = {a};
    if (max_len <= 0) return;
    if (g.lattice == LatticeKind::square) {
      for (int f : g.edge_faces[a]) face(f, a, unit(g.faces[f].center - g.edges[a].pos));
    } else {
      for (int v : g.edges[a].vertices)
        if (v >= 0) vertex(v, a, unit(g.vertices[v].pos - g.edges[a].pos));
    }
  }
};

void check_edge(const DomainGrid& g, int e, const char* what) {
  if (e < 0 || e >= static_cast<int>(g.edges.size()))
    throw Error(ErrorCode::precondition, std::string(what) + " is not an edge of the domain");
}

}  // namespace

PathEnsemble enumerate_paths(const DomainGrid& grid, int a, int z, int max_len, std::size_t budget) {
  check_edge(grid, a, "a");
  check_edge(grid, z, "z");
  PathEnsemble ens;
  ens.grid = &grid;
  ens.a = a;
  ens.z = z;
  if (a == z) {
    PathRecord empty;
    empty.edges = {a};
    ens.paths.push_back(empty);
    return ens;
  }
  Walker w(grid, max_len, z, budget);
  w.visit = [&](int e, const PathRecord& p) {
    if (e == z) ens.paths.push_back(p);
  };
  w.run(a);
  return ens;
}

ObservableValue ising_observable(const PathEnsemble& ens, double beta, std::optional<double> partition) {
  ObservableValue v;
  for (const auto& p : ens.paths)
    v.raw += std::exp(-2.0 * beta * p.length) * std::polar(1.0, -0.5 * p.winding);
  v.normalizer = partition.value_or(1.0);
  v.value = v.raw / v.normalizer;
  return v;
}

ObservableValue loop_observable(const PathEnsemble& ens, double x, double sigma) {
  ObservableValue v;
  for (const auto& p : ens.paths) v.raw += std::pow(x, p.length) * std::polar(1.0, -sigma * p.winding);
  v.value = v.raw;
  return v;
}

EdgeField loop_observable_field(const DomainGrid& grid, int a, double x, double sigma, int max_len) {
  if (grid.lattice != LatticeKind::hexagonal)
    throw Error(ErrorCode::precondition, "loop observable lives on a hexagonal domain");
  check_edge(grid, a, "a");
  EdgeField F = EdgeField::zeros(grid);
  Walker w(grid, max_len, -1, 50'000'000);
  w.visit = [&](int e, const PathRecord& p) {
    F[e] += std::pow(x, p.length) * std::polar(1.0, -sigma * p.winding);
  };
  w.run(a);
  F[a] = 1.0;
  return F;
}

std::vector<double> vertex_residuals(const EdgeField& field) {
  const DomainGrid& g = *field.grid;
  if (g.lattice != LatticeKind::hexagonal)
    throw Error(ErrorCode::precondition, "vertex relation needs a hexagonal domain");
  std::vector<double> out;
  for (const auto& v : g.vertices) {
    cplx s = 0;
    for (int e : v.edges)
      if (e >= 0) s += (g.edges[e].pos - v.pos) * field[e];
    out.push_back(std::abs(s));
  }
  return out;
}

namespace {

struct LinkSystem {
  std::vector<int> links;           // interior edges usable as dual links
  std::vector<std::uint64_t> masks;  // face-pair bit mask per link
};

LinkSystem link_system(const DomainGrid& g, int skip1, int skip2) {
  LinkSystem ls;
  for (const auto& e : g.edges) {
    if (e.id == skip1 || e.id == skip2 || g.edge_faces[e.id].size() != 2) continue;
    ls.links.push_back(e.id);
    ls.masks.push_back((std::uint64_t{1} << g.edge_faces[e.id][0]) | (std::uint64_t{1} << g.edge_faces[e.id][1]));
  }
  if (ls.links.size() > 24) throw Error(ErrorCode::size_guard, "too many dual links for configuration sums");
  return ls;
}

int half_index(const DomainGrid& g, int e, int f) { return 2 * e + (g.edge_faces[e][0] == f ? 0 : 1); }

// Winding of the a -> z path traced through the chosen links with left turns.
double trace_winding(const DomainGrid& g, const LinkSystem& ls, unsigned mask, int a, int c0, int z, int cz) {
  std::vector<std::vector<int>> adj(g.faces.size());
  for (std::size_t i = 0; i < ls.links.size(); ++i)
    if (mask >> i & 1u)
      for (int f : g.edge_faces[ls.links[i]]) adj[f].push_back(ls.links[i]);
  adj[cz].push_back(z);
  std::vector<char> used(2 * g.edges.size(), 0);
  int cur = c0;
  cplx d = unit(g.faces[c0].center - g.edges[a].pos);
  double w = 0;
  for (std::size_t guard = 0; guard <= 2 * g.edges.size(); ++guard) {
    int best = -1;
    double best_turn = -10;
    for (int e : adj[cur]) {
      if (used[half_index(g, e, cur)]) continue;
      double t = std::arg(unit(g.edges[e].pos - g.faces[cur].center) / d);
      if (t > best_turn) {
        best_turn = t;
        best = e;
      }
    }
    if (best < 0) throw Error(ErrorCode::numerical, "configuration trace got stuck");
    w += (kPi / 2) * std::lround(best_turn / (kPi / 2));
    d = unit(g.edges[best].pos - g.faces[cur].center);
    used[half_index(g, best, cur)] = 1;
    if (best == z && cur == cz) return w;
    int other = g.edge_faces[best][0] == cur ? g.edge_faces[best][1] : g.edge_faces[best][0];
    used[half_index(g, best, other)] = 1;
    cur = other;
  }
  throw Error(ErrorCode::numerical, "configuration trace did not terminate");
}

}  // namespace

FermionicObservable ising_fermionic_observable(const DomainGrid& g, int a, double alpha) {
  if (g.lattice != LatticeKind::square) throw Error(ErrorCode::precondition, "configuration sums need a square domain");
  check_edge(g, a, "a");
  if (!g.edges[a].horizontal) throw Error(ErrorCode::precondition, "a must be a horizontal edge");
  if (g.faces.size() > 64) throw Error(ErrorCode::size_guard, "domain too large for configuration sums");
  FermionicObservable out{EdgeField::zeros(g), EdgeField::zeros(g), EdgeField::zeros(g), 0.0};

  {
    LinkSystem all = link_system(g, -1, -1);
    for (unsigned mask = 0; mask < (1u << all.links.size()); ++mask) {
      std::uint64_t par = 0;
      for (std::size_t i = 0; i < all.links.size(); ++i)
        if (mask >> i & 1u) par ^= all.masks[i];
      if (par == 0) out.loop_partition += std::pow(alpha, std::popcount(mask));
    }
  }

  std::vector<int> starts = g.edge_faces[a];
  const double ya = 0.5 * g.edges[a].y2;
  for (const auto& ez : g.edges) {
    const int z = ez.id;
    if (z == a) continue;
    LinkSystem ls = link_system(g, a, z);
    std::vector<cplx> chunk_up(1, 0), chunk_down(1, 0);
    const std::size_t total = std::size_t{1} << ls.links.size();
    const std::size_t nchunks = std::min<std::size_t>(total, 64);
    chunk_up.assign(nchunks, 0);
    chunk_down.assign(nchunks, 0);
    parallel_chunks(nchunks, [&](std::size_t c) {
      const std::size_t lo = total * c / nchunks, hi = total * (c + 1) / nchunks;
      for (std::size_t m = lo; m < hi; ++m) {
        const unsigned mask = static_cast<unsigned>(m);
        std::uint64_t par = 0;
        for (std::size_t i = 0; i < ls.links.size(); ++i)
          if (mask >> i & 1u) par ^= ls.masks[i];
        for (int c0 : starts)
          for (int cz : g.edge_faces[z]) {
            std::uint64_t want = (std::uint64_t{1} << c0) ^ (std::uint64_t{1} << cz);
            if (par != want) continue;
            double w = trace_winding(g, ls, mask, a, c0, z, cz);
            cplx v = std::pow(alpha, std::popcount(mask) + 1) * std::polar(1.0, -0.5 * w);
            (g.faces[c0].center.imag() > ya ? chunk_up : chunk_down)[c] += v;
          }
      }
    });
    cplx up = std::accumulate(chunk_up.begin(), chunk_up.end(), cplx(0));
    cplx down = std::accumulate(chunk_down.begin(), chunk_down.end(), cplx(0));
    out.value[z] = up + down;
    out.up[z] = up;
    // a downward start is a half turn away from the upward reference
    out.down[z] = cplx(0, -1) * down;
  }
  return out;
}

LowTempValue low_temp_observables(const DomainGrid& grid, int a, int z, double alpha) {
  if (!(alpha > 0 && alpha < 1)) throw Error(ErrorCode::domain, "alpha must lie in (0, 1)");
  check_edge(grid, z, "z");
  FermionicObservable obs = ising_fermionic_observable(grid, a, alpha);
  return {obs.up[z], obs.down[z], obs.loop_partition};
}

std::string_view to_string(FermionKind k) {
  switch (k) {
    case FermionKind::psi: return "psi";
    case FermionKind::psibar: return "psibar";
    case FermionKind::up: return "up";
    case FermionKind::down: return "down";
  }
  return "?";
}

CMat fermion_operator(const GeneratorSet& g, int site, FermionKind kind, int layer) {
  if (site < 0 || site >= g.basis.n || layer < 0 || layer >= g.basis.layers())
    throw Error(ErrorCode::precondition, "fermion insertion outside the interval");
  const cplx I(0, 1);
  switch (kind) {
    case FermionKind::psi: return g.psi(site, layer);
    case FermionKind::psibar: return g.psibar(site, layer);
    case FermionKind::up: return 0.5 * (g.psibar(site, layer) - g.psi(site, layer));
    case FermionKind::down: return 0.5 * I * (g.psi(site, layer) + g.psibar(site, layer));
  }
  return {};
}

cplx operator_correlation(const RMat& V, const GeneratorSet& g, int N, const std::vector<Insertion>& ins) {
  if (N < 0) throw Error(ErrorCode::precondition, "strip height must be nonnegative");
  if (V.rows() != static_cast<Eigen::Index>(g.basis.dimension()))
    throw Error(ErrorCode::dimension_mismatch, "transfer matrix does not match the generators");
  for (const auto& i : ins)
    if (i.row < 0 || i.row > N) throw Error(ErrorCode::precondition, "insertion row outside [0, N]");
  std::vector<std::size_t> order(ins.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) { return ins[x].row > ins[y].row; });
  int inversions = 0;
  for (std::size_t i = 0; i < order.size(); ++i)
    for (std::size_t j = i + 1; j < order.size(); ++j)
      if (order[i] > order[j]) ++inversions;
  const CMat Vc = V.cast<cplx>();
  auto step = [&](CVec v, int times) {
    for (int t = 0; t < times; ++t) v = Vc * v;
    return v;
  };
  CVec e = CVec::Zero(V.rows());
  e(0) = 1.0;
  CVec v = e;
  int prev = 0;
  for (auto it = order.rbegin(); it != order.rend(); ++it) {
    const Insertion& x = ins[*it];
    v = step(v, x.row - prev);
    v = fermion_operator(g, x.site, x.kind, x.layer) * v;
    prev = x.row;
  }
  v = step(v, N - prev);
  cplx Z = step(e, N)(0);
  if (std::abs(Z) == 0.0) throw Error(ErrorCode::numerical, "vanishing strip partition function");
  cplx val = v(0) / Z;
  return inversions % 2 ? -val : val;
}

cplx fermion_two_point(const RMat& V, const GeneratorSet& g, int N, const Insertion& z, const Insertion& a) {
  return operator_correlation(V, g, N, {z, a});
}

MultipointResult multipoint_correlation(const RMat& V, const GeneratorSet& g, int N, const std::vector<Insertion>& ins) {
  MultipointResult r;
  const Eigen::Index k = static_cast<Eigen::Index>(ins.size());
  for (const auto& i : ins)
    r.epsilon.push_back(i.kind == FermionKind::up     ? lambda()
                        : i.kind == FermionKind::down ? 1.0 / (lambda() * lambda())
                                                      : cplx(1.0));
  r.pair_table = CMat::Zero(k, k);
  if (k % 2 != 0) {
    r.parity_zero = true;
    r.value = 0;
    r.direct = operator_correlation(V, g, N, ins);
    return r;
  }
  for (Eigen::Index i = 0; i < k; ++i)
    for (Eigen::Index j = i + 1; j < k; ++j) {
      r.pair_table(i, j) = operator_correlation(V, g, N, {ins[i], ins[j]});
      r.pair_table(j, i) = -r.pair_table(i, j);
    }
  r.value = wick_correlation(r.pair_table).value;
  r.direct = operator_correlation(V, g, N, ins);
  return r;
}

namespace {

CorrelatorReport compare(std::string name, std::vector<cplx> lhs, std::vector<cplx> rhs) {
  CorrelatorReport r;
  r.identity = std::move(name);
  cplx num = 0;
  double den = 0;
  for (std::size_t i = 0; i < lhs.size(); ++i) {
    num += std::conj(rhs[i]) * lhs[i];
    den += std::norm(rhs[i]);
  }
  r.ratio = den > 0 ? num / den : cplx(0);
  for (std::size_t i = 0; i < lhs.size(); ++i) r.abs_diff = std::max(r.abs_diff, std::abs(lhs[i] - r.ratio * rhs[i]));
  if (den == 0) r.abs_diff = std::numeric_limits<double>::infinity();
  r.lhs = std::move(lhs);
  r.rhs = std::move(rhs);
  return r;
}

}  // namespace

std::vector<CorrelatorReport> two_point_identities(Model model, int n, int N, double coupling, double U,
                                                   int a_site, int a_row) {
  if (model == Model::loop) throw Error(ErrorCode::unsupported, "two-point identities are for spin models");
  if (a_site < 0 || a_site >= n || a_row < 0 || a_row >= N)
    throw Error(ErrorCode::precondition, "a must be a horizontal edge below the top row");
  TransferOperator V = model == Model::ising ? build_ising_transfer(n, coupling) : build_at_transfer(n, coupling, U);
  GeneratorSet g = clifford_generators(make_spin_basis(model, n));
  DomainGrid grid = build_square_domain(n, N);
  const int a = grid.edge_at(2 * a_site + 1, 2 * a_row);
  FermionicObservable obs = ising_fermionic_observable(grid, a, std::exp(-2.0 * coupling));
  const Insertion ia_psi{a_site, a_row, FermionKind::psi, 0}, ia_bar{a_site, a_row, FermionKind::psibar, 0};
  std::vector<cplx> pp, pb, bb, r1, r2a, r2b, r3;
  const cplx I(0, 1);
  for (int y = a_row + 1; y <= N; ++y)
    for (int j = 0; j < n; ++j) {
      const int z = grid.edge_at(2 * j + 1, 2 * y);
      const cplx fu = obs.up[z], fd = obs.down[z];
      pp.push_back(fermion_two_point(V.matrix, g, N, {j, y, FermionKind::psi, 0}, ia_psi));
      pb.push_back(fermion_two_point(V.matrix, g, N, {j, y, FermionKind::psi, 0}, ia_bar));
      bb.push_back(fermion_two_point(V.matrix, g, N, {j, y, FermionKind::psibar, 0}, ia_bar));
      r1.push_back(-fu + I * fd);
      r2a.push_back(fu + I * fd);
      r2b.push_back(-std::conj(fu) - I * std::conj(fd));
      r3.push_back(-std::conj(fu) - I * std::conj(fd));
    }
  return {compare("<psi psi> = -f_up + i f_down", pp, r1),
          compare("<psi psibar> = f_up + i f_down", pb, r2a),
          compare("<psi psibar> = -conj f_up - i conj f_down", pb, r2b),
          compare("<psibar psibar> = -conj f_up - i conj f_down", bb, r3)};
}

std::vector<EpsilonCheck> epsilon_identities() {
  const cplx lam = lambda(), I(0, 1);
  std::vector<EpsilonCheck> out;
  for (int eta : {1, -1}) {
    EpsilonCheck c;
    c.eta = eta;
    const cplx lp = std::pow(lam, eta), lm = std::pow(lam, -eta);
    const double delta = eta == 1 ? 1.0 : 0.0;
    c.first = 0.5 * (lm - I * lp);
    c.first_expected = delta / lam;
    c.second = 0.5 * (I * lm + lp);
    c.second_expected = delta * lam * lam;
    out.push_back(c);
  }
  return out;
}

}  // namespace holo
