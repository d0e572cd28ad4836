#pragma once

#include "holo/common.hpp"
#include "holo/transfer.hpp"

#include <string>
#include <vector>

namespace holo {

struct AntisymmetricMatrix {
  CMat m;
  double defect = 0;  // max |A + A^T| of the input before antisymmetrization
};

AntisymmetricMatrix make_antisymmetric(const CMat& a);

// Pfaffian by skew-symmetric Parlett-Reid elimination with pivoting.
cplx pfaffian(const CMat& a);
inline cplx pfaffian(const AntisymmetricMatrix& a) { return pfaffian(a.m); }

struct WickResult {
  cplx value;
  bool parity_zero = false;  // odd number of fields
};

// Only the strict upper triangle of the table is read.
WickResult wick_correlation(const CMat& pair_table);

enum class PolarizationSource { low_temperature, vanishing_temperature, physical };

std::string_view to_string(PolarizationSource s);

// Subspaces as coordinate columns over a fixed operator basis; `form` is the
// Gram matrix of the symmetric bilinear form {u, v} = (u, v) Id in that basis.
struct Polarization {
  PolarizationSource source = PolarizationSource::low_temperature;
  CMat W_cr;
  CMat W_ann;
  CMat form;
  double isotropy_cr = 0;
  double isotropy_ann = 0;
  std::vector<cplx> eigenvalues;  // physical source only
};

// Bilinear form of two operators: scalar part of the anticommutator, plus the
// max-abs non-scalar remainder in `defect`.
cplx bilinear_form(const CMat& u, const CMat& v, double* defect = nullptr);

// Gram matrix of bilinear_form over an operator basis.
CMat gram_matrix(const std::vector<CMat>& basis);

// span{p_k - i q_k} and span{p_k + i q_k} in the GeneratorSet::span() basis.
Polarization polarize_low_temperature(const GeneratorSet& g);

// Low-temperature subspaces transported by w -> V^-N w V^N.
Polarization polarize_vanishing_temperature(const GeneratorSet& g, const RMat& V, int N);

// T_V eigenvectors with |lambda| < 1 (creation) and > 1 (annihilation), in the
// basis whose Gram matrix is `form`.
Polarization polarize_physical(const CMat& T, const CMat& form, double tolerance = 1e-8);

// max |w v| over the annihilation subspace, w assembled from `basis`.
double vacuum_defect(const Polarization& pol, const std::vector<CMat>& basis, const CVec& v);

struct FockSpectrum {
  cplx Lambda0;
  std::vector<cplx> lambdas;
  std::vector<cplx> spectrum;  // descending modulus
};

FockSpectrum fock_spectrum(cplx Lambda0, const std::vector<cplx>& lambdas, std::size_t max_terms = 0);

// Lambda0 from V and the |lambda| > 1 eigenvalues of its induced rotation.
FockSpectrum fock_spectrum_from_transfer(const TransferOperator& V, const GeneratorSet& g);

}  // namespace holo
