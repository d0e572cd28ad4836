#pragma once

#include <Eigen/Dense>

#include <complex>
#include <cstddef>
#include <functional>
#include <numbers>
#include <stdexcept>
#include <string>
#include <string_view>

namespace holo {

using cplx = std::complex<double>;
using RMat = Eigen::MatrixXd;
using CMat = Eigen::MatrixXcd;
using RVec = Eigen::VectorXd;
using CVec = Eigen::VectorXcd;

inline constexpr double kPi = std::numbers::pi;

enum class ErrorCode {
  invalid_dimension,
  invalid_interval,
  not_boundary,
  domain,
  singular_parameter,
  size_guard,
  numerical,
  precondition,
  singular_extension,
  unsupported,
  non_quadratic,
  cannot_polarize,
  duality_domain,
  singular_block,
  instability,
  enumeration_budget,
  dimension_mismatch,
  usage,
};

std::string_view to_string(ErrorCode c);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}
  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

enum class Model { ising, at, loop };
enum class Regime { critical, subcritical };

std::string_view to_string(Model m);
std::string_view to_string(Regime r);
Model parse_model(std::string_view s);
Regime parse_regime(std::string_view s);

// exp(i pi / 4)
inline cplx lambda() { return std::polar(1.0, kPi / 4); }

// 1/2 log(1 + sqrt 2)
inline double beta_c() { return 0.5 * std::log(1.0 + std::sqrt(2.0)); }

// x_c(n) = 1/sqrt(2 + sqrt(2 - n))
double x_c(double n);

// 1/4 log 3
inline double at_self_dual() { return 0.25 * std::log(3.0); }

// Worker count from HOLO_LATTICE_THREADS, else hardware concurrency.
unsigned thread_count();

// Runs body(chunk) for chunk in [0, nchunks) across the worker pool.
// Chunking is fixed by the caller so reductions can be done in chunk order.
void parallel_chunks(std::size_t nchunks, const std::function<void(std::size_t)>& body);

}  // namespace holo
