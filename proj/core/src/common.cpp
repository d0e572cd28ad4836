#include "holo/common.hpp"

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <thread>
#include <vector>

namespace holo {

std::string_view to_string(ErrorCode c) {
  switch (c) {
    case ErrorCode::invalid_dimension: return "invalid-dimension";
    case ErrorCode::invalid_interval: return "invalid-interval";
    case ErrorCode::not_boundary: return "not-boundary";
    case ErrorCode::domain: return "domain";
    case ErrorCode::singular_parameter: return "singular-parameter";
    case ErrorCode::size_guard: return "size";
    case ErrorCode::numerical: return "numerical";
    case ErrorCode::precondition: return "precondition";
    case ErrorCode::singular_extension: return "singular-extension";
    case ErrorCode::unsupported: return "unsupported";
    case ErrorCode::non_quadratic: return "non-quadratic-form";
    case ErrorCode::cannot_polarize: return "cannot-polarize";
    case ErrorCode::duality_domain: return "duality-domain";
    case ErrorCode::singular_block: return "singular-block";
    case ErrorCode::instability: return "instability";
    case ErrorCode::enumeration_budget: return "enumeration-budget";
    case ErrorCode::dimension_mismatch: return "dimension";
    case ErrorCode::usage: return "usage";
  }
  return "unknown";
}

std::string_view to_string(Model m) {
  switch (m) {
    case Model::ising: return "ising";
    case Model::at: return "at";
    case Model::loop: return "loop";
  }
  return "?";
}

std::string_view to_string(Regime r) {
  return r == Regime::critical ? "critical" : "subcritical";
}

Model parse_model(std::string_view s) {
  if (s == "ising") return Model::ising;
  if (s == "at") return Model::at;
  if (s == "loop") return Model::loop;
  throw Error(ErrorCode::usage, "unknown model: " + std::string(s));
}

Regime parse_regime(std::string_view s) {
  if (s == "critical") return Regime::critical;
  if (s == "subcritical") return Regime::subcritical;
  throw Error(ErrorCode::usage, "unknown regime: " + std::string(s));
}

double x_c(double n) {
  if (n > 2.0) throw Error(ErrorCode::domain, "x_c(n) requires n <= 2");
  return 1.0 / std::sqrt(2.0 + std::sqrt(2.0 - n));
}

unsigned thread_count() {
  unsigned hw = std::max(1u, std::thread::hardware_concurrency());
  if (const char* env = std::getenv("HOLO_LATTICE_THREADS")) {
    char* end = nullptr;
    long v = std::strtol(env, &end, 10);
    if (end != env && v > 0) return static_cast<unsigned>(std::min<long>(v, hw));
  }
  return hw;
}

void parallel_chunks(std::size_t nchunks, const std::function<void(std::size_t)>& body) {
  unsigned nt = static_cast<unsigned>(std::min<std::size_t>(thread_count(), nchunks));
  if (nt <= 1) {
    for (std::size_t c = 0; c < nchunks; ++c) body(c);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::thread> pool;
  pool.reserve(nt);
  for (unsigned t = 0; t < nt; ++t) {
    pool.emplace_back([&] {
      for (std::size_t c = next++; c < nchunks; c = next++) body(c);
    });
  }
  for (auto& th : pool) th.join();
}

}  // namespace holo
