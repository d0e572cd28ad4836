#pragma once

#include "holo/common.hpp"

#include <cstdint>
#include <utility>
#include <vector>

namespace holo {

// Spins on the n dynamic sites a, ..., b-1 of a primal interval; the right
// end b is held at +1. Ising: bit x set means sigma_x = -1. Ashkin-Teller:
// bit 2x for tau_x, bit 2x+1 for tau'_x.
struct SpinBasis {
  Model model = Model::ising;
  int n = 1;

  int layers() const { return model == Model::at ? 2 : 1; }
  std::size_t dimension() const { return std::size_t{1} << (layers() * n); }
  int spin(std::size_t idx, int x, int layer = 0) const {
    if (x >= n) return 1;
    return (idx >> (layers() * x + layer)) & 1u ? -1 : 1;
  }
  // flip sites 0..upto of one layer
  std::size_t flip(std::size_t idx, int upto, int layer = 0) const {
    for (int x = 0; x <= upto; ++x) idx ^= std::size_t{1} << (layers() * x + layer);
    return idx;
  }
};

SpinBasis make_spin_basis(Model model, int n);

// Non-crossing pairing of occupied strands; partner[s] = -1 when empty.
using LinkPattern = std::vector<int>;

struct ConnectivityBasis {
  int width = 0;
  std::vector<LinkPattern> states;
  std::size_t index(const LinkPattern& p) const;  // throws when absent
};

ConnectivityBasis make_connectivity_basis(int width);

struct TransferOperator {
  Model model = Model::ising;
  int n = 0;
  RMat matrix;
  RMat vh_sqrt;  // empty unless factored
  RMat vv;
  ConnectivityBasis links;  // loop only
};

TransferOperator build_ising_transfer(int n, double beta);
TransferOperator build_at_transfer(int n, double J, double U);
TransferOperator build_loop_transfer(int width, double K, double fugacity);

struct GeneratorSet {
  SpinBasis basis;
  std::vector<CMat> p, q;      // first layer, k = a + j + 1/2
  std::vector<CMat> p2, q2;    // second layer (Ashkin-Teller)

  CMat psi(int j, int layer = 0) const;
  CMat psibar(int j, int layer = 0) const;
  // p_0..p_{n-1}, q_0..q_{n-1}, then the second layer
  std::vector<CMat> span() const;
  // psi_0..psi_{n-1}, psibar_0..psibar_{n-1}, then the second layer
  std::vector<CMat> fermion_span() const;
};

GeneratorSet clifford_generators(const SpinBasis& basis);

// Expansion coefficients of `target` in `basis` by least squares on the
// vectorized matrices; `residual` receives the max-abs misfit.
CVec expand_in_span(const std::vector<CMat>& basis, const CMat& target, double* residual);

struct ConjugationFit {
  int k = 0;
  cplx c;
  cplx s;
  double residual = 0;
};

struct ConjugationReport {
  CMat coefficients;  // column i: image of span()[i] in the span() basis
  double span_residual = 0;
  std::vector<ConjugationFit> fits;  // F^-1 p_k F = c p_k - i s q_{k+shift}
};

ConjugationReport conjugation_check(const RMat& factor, const GeneratorSet& g, int shift = 0);

struct InducedRotation {
  CMat T;  // in the fermion_span() basis
  double span_residual = 0;
  double r_defect = 0;  // ||T R - R T||
  double j_defect = 0;  // ||T J - J conj(T)||, J antilinear
};

InducedRotation induced_rotation(const RMat& V, const GeneratorSet& g, double tolerance = 1e-8);

struct AtCouplings {
  double J;
  double U;
};

double ising_dual(double beta);
AtCouplings at_dual(AtCouplings c);

}  // namespace holo
