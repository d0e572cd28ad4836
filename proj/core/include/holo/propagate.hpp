#pragma once

#include "holo/common.hpp"
#include "holo/lattice.hpp"

#include <string>
#include <vector>

namespace holo {

// Displayed: boundary rows exactly as printed. Consistent: the beta-form
// boundary conjugation coefficients are the conjugate pair that solves the
// massive face relations with Riemann side walls. The two agree at the
// critical point.
enum class Reading { displayed, consistent };

std::string_view to_string(Reading r);

// a f(j) + b conj f(j), j a 0-based site index
struct SiteTerm {
  int j = 0;
  cplx a;
  cplx b;
};

using PropagatorRows = std::vector<std::vector<SiteTerm>>;

struct RealizedPropagator {
  DualInterval interval;
  Model model = Model::ising;
  Regime regime = Regime::critical;
  double coupling = 0;
  Reading reading = Reading::displayed;
  PropagatorRows rows;
  RMat matrix;  // (Re f(k), Im f(k)) interleaved per site
  std::vector<std::string> flags;

  int n() const { return interval.size(); }
};

// Real 2x2 block of z -> a z + b conj z.
Eigen::Matrix2d realize_term(cplx a, cplx b);
RMat realize(const PropagatorRows& rows, int n);

PropagatorRows propagator_rows(Model model, Regime regime, int n, double coupling,
                               Reading reading = Reading::displayed);

RealizedPropagator build_propagator(Model model, Regime regime, const DualInterval& interval,
                                    double coupling, Reading reading = Reading::displayed);

struct SpectrumReport {
  std::vector<cplx> eigenvalues;  // sorted by modulus, descending
  double symmetric_defect = 0;
  double min_modulus = 0;
  double branch_min_modulus = 0;  // min modulus over the n largest-modulus eigenvalues
  double min_gap = 0;
  bool distinct = true;
  bool has_unit_eigenvalue = false;
};

SpectrumReport spectrum(const RMat& m, double tolerance = 1e-8);

RMat matrix_power(const RMat& m, int N);
RealizedPropagator matrix_power(const RealizedPropagator& p, int N);

// Blocks named rows-then-columns after the split R^n (real parts) + iR^n
// (imaginary parts): RS maps imaginary input to real output.
struct BlockDecomposition {
  RMat RR, RS, SR, SS;
  RMat reassemble() const;  // back to interleaved layout
};

BlockDecomposition block_decompose(const RMat& m);

CVec apply(const RealizedPropagator& p, const CVec& field);
CVec apply_realized(const RMat& m, const CVec& field);

}  // namespace holo
