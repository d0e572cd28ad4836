#pragma once

#include "output.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace holo::cli {

// Exit statuses.
inline constexpr int kPass = 0;
inline constexpr int kUsage = 1;
inline constexpr int kCheckFailed = 2;

struct RunConfig {
  std::string command;
  std::string action;
  std::string target;  // suite name, enumeration kind or field file

  std::string model = "ising";
  std::string regime = "critical";
  std::string reading = "consistent";
  std::string beta, x, J;  // numbers or bc / sd / xc
  double U = 0;
  double fugacity = 1.0;
  double sigma = 0.625;
  int n = 2;
  int N = 1;
  std::optional<double> tol;
  std::uint64_t seed = 20241016;
  std::string out;
  std::string format;

  int width = 3;
  int height = 3;
  std::string boundary = "free";
  double p = 0.5;
  double q = 2.0;
  int a_site = 0;
  int a_row = 1;
  std::string u;           // comma-separated boundary data for rps extend
  std::string insertions;  // site:row:kind,... for correlate multipoint
};

struct CommandOutput {
  json doc = json::object();
  std::vector<std::string> csv_header;
  std::vector<std::vector<std::string>> csv_rows;
  std::string text;  // human summary
  int status = kPass;
};

json config_json(const RunConfig& c);

CommandOutput cmd_propagator(const RunConfig& c);
CommandOutput cmd_transfer(const RunConfig& c);
CommandOutput cmd_sholo(const RunConfig& c);
CommandOutput cmd_correlate(const RunConfig& c);
CommandOutput cmd_rps(const RunConfig& c);
CommandOutput cmd_enumerate(const RunConfig& c);
CommandOutput cmd_verify(const RunConfig& c);
CommandOutput cmd_critical_points(const RunConfig& c);

}  // namespace holo::cli
