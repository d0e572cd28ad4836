#include "holo/transfer.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>

namespace holo {

namespace {

void enumerate_patterns(int width, int pos, std::vector<int>& stack, LinkPattern& cur,
                        std::vector<LinkPattern>& out) {
  if (pos == width) {
    if (stack.empty()) out.push_back(cur);
    return;
  }
  cur[pos] = -1;
  enumerate_patterns(width, pos + 1, stack, cur, out);
  stack.push_back(pos);
  enumerate_patterns(width, pos + 1, stack, cur, out);
  stack.pop_back();
  if (!stack.empty()) {
    int open = stack.back();
    stack.pop_back();
    cur[pos] = open;
    cur[open] = pos;
    enumerate_patterns(width, pos + 1, stack, cur, out);
    cur[open] = -1;
    cur[pos] = -1;
    stack.push_back(open);
  }
}

struct UnionFind {
  std::vector<int> parent;
  explicit UnionFind(int n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
  int find(int x) { return parent[x] == x ? x : parent[x] = find(parent[x]); }
  void unite(int a, int b) { parent[find(a)] = find(b); }
};

}  // namespace

std::size_t ConnectivityBasis::index(const LinkPattern& p) const {
  auto it = std::find(states.begin(), states.end(), p);
  if (it == states.end()) throw Error(ErrorCode::precondition, "link pattern not in basis");
  return static_cast<std::size_t>(it - states.begin());
}

ConnectivityBasis make_connectivity_basis(int width) {
  if (width < 1) throw Error(ErrorCode::invalid_dimension, "loop strip needs width >= 1");
  if (width > 6) throw Error(ErrorCode::size_guard, "loop strip width exceeds guard of 6");
  ConnectivityBasis b;
  b.width = width;
  std::vector<int> stack;
  LinkPattern cur(width, -1);
  enumerate_patterns(width, 0, stack, cur, b.states);
  return b;
}

// One honeycomb layer: 2w vertices in a chain, strand s enters vertex 2s from
// below and leaves vertex 2s+1 upward.
TransferOperator build_loop_transfer(int width, double K, double fugacity) {
  TransferOperator t;
  t.model = Model::loop;
  t.n = width;
  t.links = make_connectivity_basis(width);
  const auto& states = t.links.states;
  const std::size_t D = states.size();
  t.matrix = RMat::Zero(D, D);
  const int nv = 2 * width, nh = 2 * width - 1;
  for (std::size_t bi = 0; bi < D; ++bi) {
    const LinkPattern& in = states[bi];
    for (unsigned H = 0; H < (1u << nh); ++H) {
      for (unsigned O = 0; O < (1u << width); ++O) {
        std::vector<int> deg(nv, 0);
        for (int s = 0; s < width; ++s) {
          if (in[s] >= 0) ++deg[2 * s];
          if (O >> s & 1u) ++deg[2 * s + 1];
        }
        for (int v = 0; v < nh; ++v)
          if (H >> v & 1u) {
            ++deg[v];
            ++deg[v + 1];
          }
        if (std::any_of(deg.begin(), deg.end(), [](int d) { return d != 0 && d != 2; })) continue;
        UnionFind uf(nv);
        for (int v = 0; v < nh; ++v)
          if (H >> v & 1u) uf.unite(v, v + 1);
        for (int s = 0; s < width; ++s)
          if (in[s] > s) uf.unite(2 * s, 2 * in[s]);
        std::map<int, std::vector<int>> outs;
        for (int s = 0; s < width; ++s)
          if (O >> s & 1u) outs[uf.find(2 * s + 1)].push_back(s);
        LinkPattern out(width, -1);
        bool ok = true;
        for (auto& [root, ss] : outs) {
          if (ss.size() != 2) {
            ok = false;
            break;
          }
          out[ss[0]] = ss[1];
          out[ss[1]] = ss[0];
        }
        if (!ok) continue;
        int occupied = 0, loops = 0;
        std::vector<char> seen(nv, 0);
        for (int v = 0; v < nv; ++v) {
          if (deg[v] == 0) continue;
          ++occupied;
          int r = uf.find(v);
          if (!seen[r] && !outs.count(r)) ++loops;
          seen[r] = 1;
        }
        t.matrix(t.links.index(out), bi) += std::pow(K, occupied) * std::pow(fugacity, loops);
      }
    }
  }
  return t;
}

}  // namespace holo
