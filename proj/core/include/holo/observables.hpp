#pragma once

#include "holo/common.hpp"
#include "holo/lattice.hpp"
#include "holo/sholo.hpp"
#include "holo/transfer.hpp"

#include <optional>
#include <string>
#include <vector>

namespace holo {

// Edge midpoints visited from a to z. On square domains consecutive edges
// share a face, on hexagonal domains a vertex.
struct PathRecord {
  std::vector<int> edges;
  double winding = 0;  // radians
  int left_turns = 0;
  int right_turns = 0;
  int length = 0;  // faces (square) or vertices (hex) traversed
};

struct PathEnsemble {
  const DomainGrid* grid = nullptr;
  int a = -1;
  int z = -1;
  std::vector<PathRecord> paths;
};

// Edge-self-avoiding paths a -> z of at most max_len steps.
PathEnsemble enumerate_paths(const DomainGrid& grid, int a, int z, int max_len,
                             std::size_t budget = 2'000'000);

struct ObservableValue {
  cplx value;
  cplx raw;
  double normalizer = 1.0;
};

// sum exp(-2 beta len) exp(-i W / 2), divided by `partition` when given
ObservableValue ising_observable(const PathEnsemble& ens, double beta,
                                 std::optional<double> partition = std::nullopt);

// sum exp(-i sigma W) x^len
ObservableValue loop_observable(const PathEnsemble& ens, double x, double sigma);

// F(z) over every edge of a hexagonal domain; F(a) = 1.
EdgeField loop_observable_field(const DomainGrid& grid, int a, double x, double sigma, int max_len = 64);

// |sum_{p ~ v} (p - v) F(p)| per vertex
std::vector<double> vertex_residuals(const EdgeField& field);

// Configuration-sum observable: one a-z path together with closed loops on the
// dual links, weight alpha^(links + 1) exp(-i W / 2), crossings resolved by
// left turns. `up` and `down` split by the face entered from a; both windings
// are measured from the upward direction at a.
struct FermionicObservable {
  EdgeField value;  // up + down with each winding measured from its own start
  EdgeField up;
  EdgeField down;
  double loop_partition = 0;  // sum over even link sets of alpha^links
};

FermionicObservable ising_fermionic_observable(const DomainGrid& grid, int a, double alpha);

struct LowTempValue {
  cplx f_up;
  cplx f_down;
  double normalizer = 1.0;  // loop_partition of the domain
};

LowTempValue low_temp_observables(const DomainGrid& grid, int a, int z, double alpha);

enum class FermionKind { psi, psibar, up, down };

std::string_view to_string(FermionKind k);

// Dual site `site` in [0, n), row in [0, N].
struct Insertion {
  int site = 0;
  int row = 0;
  FermionKind kind = FermionKind::psi;
  int layer = 0;
};

CMat fermion_operator(const GeneratorSet& g, int site, FermionKind kind, int layer = 0);

// <e+| V^(N - y1) A1 V^(y1 - y2) A2 ... V^yk |e+> / <e+|V^N|e+> with insertions
// sorted by descending row (stable); the sort permutation contributes its sign.
cplx operator_correlation(const RMat& V, const GeneratorSet& g, int N, const std::vector<Insertion>& ins);

cplx fermion_two_point(const RMat& V, const GeneratorSet& g, int N, const Insertion& z, const Insertion& a);

struct MultipointResult {
  cplx value;   // Pfaffian of the pair table
  cplx direct;  // operator product
  bool parity_zero = false;
  CMat pair_table;
  std::vector<cplx> epsilon;  // lambda for up, lambda^-2 for down, 1 otherwise
};

MultipointResult multipoint_correlation(const RMat& V, const GeneratorSet& g, int N,
                                        const std::vector<Insertion>& ins);

struct CorrelatorReport {
  std::string identity;
  std::vector<cplx> lhs;
  std::vector<cplx> rhs;
  cplx ratio;  // least-squares constant c in lhs = c rhs
  double abs_diff = 0;
};

// Two-point correlators of an n x N strip against f_up / f_down of the same
// strip, for every horizontal z strictly above a.
std::vector<CorrelatorReport> two_point_identities(Model model, int n, int N, double coupling, double U,
                                                   int a_site, int a_row);

struct EpsilonCheck {
  int eta = 1;
  cplx first;   // (lambda^-eta - i lambda^eta) / 2
  cplx first_expected;
  cplx second;  // (i lambda^-eta + lambda^eta) / 2
  cplx second_expected;
};

std::vector<EpsilonCheck> epsilon_identities();

}  // namespace holo
