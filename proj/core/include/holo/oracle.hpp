#pragma once

#include "holo/common.hpp"
#include "holo/lattice.hpp"
#include "holo/transfer.hpp"

#include <map>
#include <string>
#include <utility>
#include <vector>

namespace holo {

enum class Boundary { free, plus, wired };

std::string_view to_string(Boundary b);
Boundary parse_boundary(std::string_view s);

// width x height sites with nearest-neighbour bonds; site id = y * width + x.
struct SiteGrid {
  int width = 1;
  int height = 1;

  int sites() const { return width * height; }
  int id(int x, int y) const { return y * width + x; }
  bool on_ring(int s) const;
  std::vector<std::pair<int, int>> bonds() const;
};

struct EnumerationResult {
  double Z = 0;
  std::map<std::string, double> observables;
  RMat two_point;  // site-site correlation or connection probability
  std::string convention;
};

// Weight exp(beta sum sigma_i sigma_j); plus fixes the outer ring to +1.
EnumerationResult enumerate_ising(const SiteGrid& grid, double beta, Boundary bc = Boundary::free);

// Weight exp(sum J (t t + t' t') + U t t t' t'); two_point holds <tau_i tau_j>.
EnumerationResult enumerate_at(const SiteGrid& grid, double J, double U, Boundary bc = Boundary::free);

// p^open (1-p)^closed q^clusters; wired merges the outer ring into one cluster.
EnumerationResult enumerate_rc(const SiteGrid& grid, double p, double q, Boundary bc = Boundary::free);

struct LoopGraph {
  int vertices = 0;
  std::vector<std::pair<int, int>> edges;
};

// Full edges of a hexagonal domain, dangling stubs dropped.
LoopGraph loop_graph(const DomainGrid& hex);

// sum over even subgraphs of x^edges n^loops
EnumerationResult enumerate_loop(const LoopGraph& graph, double x, double n);

// Spin form on the faces of a hexagonal domain, outside fixed to +:
// n^loops x^walls exp(h r + h' r').
EnumerationResult enumerate_loop_spins(const DomainGrid& hex, double x, double n, double h = 0, double h_prime = 0);

// Ising weight exp(beta sum sigma sigma) on the same face spins, outside +.
EnumerationResult enumerate_hex_face_ising(const DomainGrid& hex, double beta);

// Strip of `layers` brick-wall rows with open strands on top, started empty.
// Returns Z per top link pattern.
std::map<LinkPattern, double> enumerate_loop_strip(int width, int layers, double K, double n);

// The strip above as a closed graph (top strands removed).
LoopGraph loop_strip_graph(int width, int layers);

// <Vh^1/2 e+| V^N |Vh^1/2 e+>, the plus-boundary partition function of an
// (n + 1) x (N + 1) site grid.
double transfer_partition(const TransferOperator& V, int N);

double p_self_dual(double q);
double p_dual(double p, double q);

struct CriticalPoint {
  std::string name;
  double value;
};

std::vector<CriticalPoint> critical_points();

struct SlopeRow {
  int distance = 0;
  double probability = 0;
  double slope = 0;  // -(1/n) log phi, +inf when phi = 0
};

// phi^0(0 <-> (n, 0)) on a width x height free grid for n = 1 .. width - 1.
std::vector<SlopeRow> correlation_length_slope(int width, int height, double p, double q);

}  // namespace holo
