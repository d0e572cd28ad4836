#include "CLI11.hpp"

#include "cli.hpp"

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

using namespace holo::cli;

namespace {

void add_model_flags(CLI::App* s, RunConfig& c) {
  s->add_option("--model", c.model, "ising, at or loop")->check(CLI::IsMember({"ising", "at", "loop"}));
  s->add_option("--regime", c.regime, "critical or subcritical")->check(CLI::IsMember({"critical", "subcritical"}));
  s->add_option("--beta", c.beta, "ising inverse temperature (number or bc)");
  s->add_option("--x", c.x, "loop weight (number or xc)");
  s->add_option("--J", c.J, "ashkin-teller two-spin coupling (number or sd)");
  s->add_option("--U", c.U, "ashkin-teller four-spin coupling");
  s->add_option("--fugacity", c.fugacity, "loop fugacity");
  s->add_option("--n", c.n, "interval size");
  s->add_option("--N", c.N, "rows or power");
}

void add_output_flags(CLI::App* s, RunConfig& c) {
  s->add_option("--tol", c.tol, "check tolerance");
  s->add_option("--seed", c.seed, "seed for random inputs");
  s->add_option("--out", c.out, "write machine output here");
  s->add_option("--format", c.format, "json or csv")->check(CLI::IsMember({"json", "csv"}));
}

// --config FILE: a JSON object of long flag names; command-line flags win.
std::vector<std::string> expand_config(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  std::string path;
  for (std::size_t i = 0; i < args.size(); ++i) {
    if (args[i] == "--config" && i + 1 < args.size()) {
      path = args[i + 1];
      args.erase(args.begin() + static_cast<long>(i), args.begin() + static_cast<long>(i) + 2);
      break;
    }
    if (args[i].rfind("--config=", 0) == 0) {
      path = args[i].substr(9);
      args.erase(args.begin() + static_cast<long>(i));
      break;
    }
  }
  if (path.empty()) return args;
  std::ifstream in(path);
  if (!in) throw holo::Error(holo::ErrorCode::usage, "cannot read config " + path);
  json cfg = json::parse(in);
  if (!cfg.is_object()) throw holo::Error(holo::ErrorCode::usage, "config must be a JSON object");
  for (auto it = cfg.begin(); it != cfg.end(); ++it) {
    const std::string flag = "--" + it.key();
    bool given = false;
    for (const auto& a : args) given = given || a == flag || a.rfind(flag + "=", 0) == 0;
    if (given) continue;
    args.push_back(flag);
    if (it->is_string())
      args.push_back(it->get<std::string>());
    else if (it->is_number_float())
      args.push_back(fmt(it->get<double>()));
    else
      args.push_back(it->dump());
  }
  return args;
}

int emit(const RunConfig& c, CommandOutput o) {
  o.doc["command"] = c.command;
  o.doc["config"] = config_json(c);
  o.doc["status"] = o.status;
  auto csv = [&] {
    std::ostringstream os;
    write_csv(os, o.csv_header, o.csv_rows);
    return os.str();
  };
  std::string format = c.format;
  if (format.empty()) format = c.out.size() > 4 && c.out.substr(c.out.size() - 4) == ".csv" ? "csv" : "json";
  if (!c.out.empty()) {
    write_file(c.out, format == "csv" ? csv() : dump(o.doc));
    std::cout << o.text << "wrote " << c.out << "\n";
  } else if (c.format == "json") {
    std::cout << dump(o.doc);
  } else if (c.format == "csv") {
    std::cout << csv();
  } else {
    std::cout << o.text;
  }
  return o.status;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"holo: s-holomorphic propagation, transfer matrices and exact enumeration"};
  app.require_subcommand(1);
  RunConfig c;
  int threads = 0;
  app.add_option("--threads", threads, "worker cap (sets HOLO_LATTICE_THREADS)");

  auto* prop = app.add_subcommand("propagator", "build a propagator, export it, check its spectrum");
  prop->add_option("action", c.action, "build or spectrum")->check(CLI::IsMember({"build", "spectrum"}));
  prop->add_option("--reading", c.reading, "displayed or consistent");
  add_model_flags(prop, c);
  add_output_flags(prop, c);

  auto* tr = app.add_subcommand("transfer", "transfer matrices, duality and conjugation checks");
  tr->add_option("action", c.action, "build, duality or conjugation-check")
      ->check(CLI::IsMember({"build", "duality", "conjugation-check"}));
  add_model_flags(tr, c);
  add_output_flags(tr, c);

  auto* sh = app.add_subcommand("sholo", "face or vertex relation residuals of a field");
  sh->add_option("field", c.target, "field file (JSON); built-in observable when omitted");
  sh->add_option("--sigma", c.sigma, "loop spin exponent");
  sh->add_option("--a-site", c.a_site, "site of the edge a");
  sh->add_option("--a-row", c.a_row, "row of the edge a");
  add_model_flags(sh, c);
  add_output_flags(sh, c);

  auto* co = app.add_subcommand("correlate", "two-point, multipoint and epsilon identities");
  co->add_option("action", c.action, "two-point, multipoint, epsilon or all")
      ->check(CLI::IsMember({"two-point", "multipoint", "epsilon", "all"}));
  co->add_option("--a-site", c.a_site, "site of the edge a");
  co->add_option("--a-row", c.a_row, "row of the edge a");
  co->add_option("--insertions", c.insertions, "site:row:kind,... with kind psi, psibar, up, down");
  add_model_flags(co, c);
  add_output_flags(co, c);

  auto* rp = app.add_subcommand("rps", "boundary operator, kernel table and kernel extension");
  rp->add_option("action", c.action, "operator, kernel or extend")->check(CLI::IsMember({"operator", "kernel", "extend"}));
  rp->add_option("--reading", c.reading, "displayed or consistent");
  rp->add_option("--u", c.u, "comma-separated boundary data for extend");
  add_model_flags(rp, c);
  add_output_flags(rp, c);

  auto* en = app.add_subcommand("enumerate", "exact enumeration on small domains");
  en->add_option("kind", c.target, "ising, at, rc, loop, loop-spins, hex-ising or loop-strip");
  en->add_option("--width", c.width, "sites, hexagons or strands across");
  en->add_option("--height", c.height, "sites, hexagon rows or layers");
  en->add_option("--boundary", c.boundary, "free, plus or wired");
  en->add_option("--p", c.p, "random-cluster edge weight");
  en->add_option("--q", c.q, "random-cluster cluster weight");
  add_model_flags(en, c);
  add_output_flags(en, c);

  auto* ve = app.add_subcommand("verify", "run a named check suite, or all of them");
  ve->add_option("suite", c.target, "suite name or all");
  add_output_flags(ve, c);

  auto* cp = app.add_subcommand("critical-points", "table of critical and self-dual couplings");
  add_output_flags(cp, c);

  try {
    std::vector<std::string> args = expand_config(argc, argv);
    std::reverse(args.begin(), args.end());
    app.parse(args);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << "error: " << e.what() << "\n\n" << app.help();
    return kUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  }

  if (threads > 0) setenv("HOLO_LATTICE_THREADS", std::to_string(threads).c_str(), 1);
  CLI::App* sub = app.get_subcommands().front();
  c.command = sub->get_name();
  try {
    if (sub == prop) return emit(c, cmd_propagator(c));
    if (sub == tr) return emit(c, cmd_transfer(c));
    if (sub == sh) return emit(c, cmd_sholo(c));
    if (sub == co) return emit(c, cmd_correlate(c));
    if (sub == rp) return emit(c, cmd_rps(c));
    if (sub == en) return emit(c, cmd_enumerate(c));
    if (sub == ve) return emit(c, cmd_verify(c));
    return emit(c, cmd_critical_points(c));
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  }
}
