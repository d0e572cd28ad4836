#include "verify.hpp"

#include "holo/fock.hpp"
#include "holo/observables.hpp"
#include "holo/oracle.hpp"
#include "holo/propagate.hpp"
#include "holo/rps.hpp"
#include "holo/transfer.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <functional>
#include <map>
#include <random>

namespace holo::cli {

namespace {

struct Form {
  const char* name;
  Model model;
  Regime regime;
  double coupling;
};

const Form kForms[] = {
    {"ising critical", Model::ising, Regime::critical, 0.0},
    {"ising subcritical", Model::ising, Regime::subcritical, 0.3},
    {"at critical", Model::at, Regime::critical, 0.0},
    {"at subcritical", Model::at, Regime::subcritical, 0.2},
    {"loop critical", Model::loop, Regime::critical, 0.0},
    {"loop subcritical", Model::loop, Regime::subcritical, 0.45},
};

DualInterval interval_for(Model m, int n) {
  return build_dual_interval(0, n, m == Model::loop ? IntervalKind::hex_dual : IntervalKind::dual);
}

CMat random_antisymmetric(int n, std::mt19937_64& rng) {
  std::normal_distribution<double> d;
  CMat a = CMat::Zero(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      a(i, j) = cplx(d(rng), d(rng));
      a(j, i) = -a(i, j);
    }
  return a;
}

SuiteResult propagator(const VerifyOptions& opt) {
  SuiteResult r{"propagator"};
  std::mt19937_64 rng(opt.seed);
  std::normal_distribution<double> d;
  double worst = 0;
  for (const Form& f : kForms)
    for (Reading reading : {Reading::displayed, Reading::consistent})
      for (int n = 2; n <= 6; ++n) {
        auto P = build_propagator(f.model, f.regime, interval_for(f.model, n), f.coupling, reading);
        CVec x(n);
        for (int k = 0; k < n; ++k) x(k) = cplx(d(rng), d(rng));
        CVec want = CVec::Zero(n);
        for (int k = 0; k < n; ++k)
          for (const auto& t : P.rows[k]) want(k) += t.a * x(t.j) + t.b * std::conj(x(t.j));
        const double err = (apply_realized(P.matrix, x) - want).cwiseAbs().maxCoeff();
        worst = std::max(worst, err);
        r.require(err <= 1e-12 * opt.tol_scale, std::string(f.name) + " n=" + std::to_string(n) + " realization off");
      }
  r.data["max_realization_error"] = worst;
  return r;
}

SuiteResult spectrum_suite(const VerifyOptions& opt) {
  SuiteResult r{"spectrum"};
  double sym = 0, branch = 1e300, gap = 1e300, unit = 1e300;
  for (const Form& f : kForms)
    for (int n = 2; n <= 6; ++n) {
      auto P = build_propagator(f.model, f.regime, interval_for(f.model, n), f.coupling, Reading::consistent);
      auto s = spectrum(P.matrix);
      sym = std::max(sym, s.symmetric_defect);
      branch = std::min(branch, s.branch_min_modulus);
      gap = std::min(gap, s.min_gap);
      for (cplx e : s.eigenvalues) unit = std::min(unit, std::abs(std::abs(e) - 1.0));
      const std::string tag = std::string(f.name) + " n=" + std::to_string(n);
      r.require(s.symmetric_defect <= 1e-10 * opt.tol_scale, tag + " not symmetric");
      r.require(s.branch_min_modulus > 1.0, tag + " branch modulus <= 1");
    }
  r.require(unit > 1e-8, "eigenvalue on the unit circle");
  r.require(gap > 1e-8, "repeated eigenvalue");
  r.data = {{"symmetric_defect", sym}, {"branch_min_modulus", branch}, {"min_gap", gap}, {"unit_distance", unit}};
  return r;
}

SuiteResult pfaffian_suite(const VerifyOptions& opt) {
  SuiteResult r{"pfaffian"};
  std::mt19937_64 rng(opt.seed);
  std::normal_distribution<double> d;
  double sq = 0, cong = 0, closed = 0;
  for (int t = 0; t < 5; ++t) {
    CMat a = random_antisymmetric(4, rng);
    const cplx f = a(0, 1) * a(2, 3) - a(0, 2) * a(1, 3) + a(0, 3) * a(1, 2);
    closed = std::max(closed, std::abs(pfaffian(a) - f) / std::abs(f));
  }
  for (int n = 2; n <= 12; n += 2)
    for (int t = 0; t < 5; ++t) {
      CMat a = random_antisymmetric(n, rng);
      const cplx pf = pfaffian(a), det = a.determinant();
      sq = std::max(sq, std::abs(pf * pf - det) / std::abs(det));
      CMat b(n, n);
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) b(i, j) = cplx(d(rng), d(rng));
      const cplx lhs = pfaffian(CMat(b * a * b.transpose())), rhs = b.determinant() * pf;
      cong = std::max(cong, std::abs(lhs - rhs) / std::abs(rhs));
    }
  r.require(closed <= 1e-12 * opt.tol_scale, "4x4 closed form");
  r.require(sq <= 1e-9 * opt.tol_scale, "Pf^2 = det");
  r.require(cong <= 1e-9 * opt.tol_scale, "Pf(B A B^T) = det(B) Pf(A)");
  r.data = {{"closed_form_4x4", closed}, {"square_vs_det", sq}, {"congruence", cong}};
  return r;
}

SuiteResult duality(const VerifyOptions& opt) {
  SuiteResult r{"duality"};
  const double ising = std::abs(ising_dual(beta_c()) - beta_c());
  const double q = at_self_dual();
  auto fixed = at_dual({q, q});
  const double fix = std::max(std::abs(fixed.J - q), std::abs(fixed.U - q));
  double rel = 0, inv = 0;
  for (auto [J, U] : std::vector<std::pair<double, double>>{{0.2, 0.05}, {0.3, 0.1}, {0.15, 0.0}, {0.4, 0.2}}) {
    auto s = at_dual({J, U});
    const double mid = std::exp(2 * U) * std::sinh(2 * J);
    rel = std::max(rel, std::abs(mid * std::exp(2 * s.U) * std::sinh(2 * s.J) - 1.0));
    rel = std::max(rel, std::abs((std::exp(-2 * J + 2 * U) - 1) / (std::exp(-2 * s.J + 2 * s.U) - 1) - mid));
    auto back = at_dual(s);
    inv = std::max({inv, std::abs(back.J - J), std::abs(back.U - U)});
  }
  r.require(ising <= 1e-12 * opt.tol_scale, "ising self-dual point");
  r.require(rel <= 1e-10 * opt.tol_scale, "AT duality relations");
  r.require(inv <= 1e-9 * opt.tol_scale, "AT involution");
  r.require(fix <= 1e-10 * opt.tol_scale, "AT fixed point");
  r.data = {{"ising_fixed_point", ising}, {"at_relations", rel}, {"at_involution", inv}, {"at_fixed_point", fix}};
  return r;
}

SuiteResult transfer(const VerifyOptions& opt) {
  SuiteResult r{"transfer"};
  double worst = 0;
  for (int n = 1; n <= 3; ++n)
    for (int N = 1; N <= 3; ++N) {
      const double zt = transfer_partition(build_ising_transfer(n, 0.35), N);
      const double ze = enumerate_ising({n + 1, N + 1}, 0.35, Boundary::plus).Z;
      worst = std::max(worst, std::abs(zt - ze) / ze);
    }
  for (int n = 1; n <= 2; ++n)
    for (int N = 1; N <= 2; ++N) {
      const double zt = transfer_partition(build_at_transfer(n, 0.3, 0.1), N);
      const double ze = enumerate_at({n + 1, N + 1}, 0.3, 0.1, Boundary::plus).Z;
      worst = std::max(worst, std::abs(zt - ze) / ze);
    }
  r.require(worst <= 1e-8 * opt.tol_scale, "transfer partition vs enumeration");
  r.data["max_rel_error"] = worst;
  return r;
}

SuiteResult rc(const VerifyOptions& opt) {
  SuiteResult r{"rc"};
  double worst = 0;
  SiteGrid g{3, 3};
  for (double beta : {0.2, beta_c(), 0.8}) {
    auto is = enumerate_ising(g, beta);
    auto fk = enumerate_rc(g, 1 - std::exp(-2 * beta), 2.0);
    for (int j = 0; j < g.sites(); ++j) worst = std::max(worst, std::abs(is.two_point(0, j) - fk.two_point(0, j)));
  }
  r.require(worst <= 1e-10 * opt.tol_scale, "spin correlation vs connection probability");
  r.data["max_abs_error"] = worst;
  return r;
}

SuiteResult sholo(const VerifyOptions& opt) {
  SuiteResult r{"sholo"};
  auto g = build_square_domain(3, 2);
  const int a = g.edge_at(3, 0);
  auto obs = ising_fermionic_observable(g, a, std::exp(-2 * beta_c()));
  auto rs = make_relations(make_params(Model::ising, Regime::critical, beta_c()));
  auto rep = sholo_residuals(obs.value, rs, 1e-10 * opt.tol_scale, g.edge_faces[a]);
  auto h = build_hex_domain(2, 1);
  int stub = -1;
  for (const auto& e : h.edges)
    if (stub < 0 && (e.vertices[0] < 0 || e.vertices[1] < 0)) stub = e.id;
  auto F = loop_observable_field(h, stub, x_c(0), 5.0 / 8.0);
  double loop = 0;
  for (double v : vertex_residuals(F)) loop = std::max(loop, v);
  r.require(rep.max_residual <= 1e-10 * opt.tol_scale, "ising face relations");
  r.require(loop <= 1e-10 * opt.tol_scale, "loop vertex relation");
  r.data = {{"ising_face_residual", rep.max_residual}, {"loop_vertex_residual", loop}};
  return r;
}

SuiteResult correlate(const VerifyOptions& opt) {
  SuiteResult r{"correlate"};
  const double tol = 1e-8 * opt.tol_scale;
  json lines = json::array();
  for (int site : {0, 1}) {
    auto reps = two_point_identities(Model::ising, 2, 3, 0.4, 0.0, site, 1);
    for (const auto& c : reps) lines.push_back({{"a_site", site}, {"identity", c.identity}, {"abs_diff", c.abs_diff}});
    r.require(reps[0].abs_diff <= tol, "psi psi line");
    r.require(reps[1].abs_diff <= tol || reps[2].abs_diff <= tol, "psi psibar line, both readings");
    r.require(reps[3].abs_diff <= tol, "psibar psibar line");
  }
  auto V = build_ising_transfer(2, 0.4);
  auto gens = clifford_generators(make_spin_basis(Model::ising, 2));
  using K = FermionKind;
  auto m = multipoint_correlation(V.matrix, gens, 3, {{0, 3, K::psi}, {1, 2, K::psibar}, {1, 1, K::psi}, {0, 0, K::psibar}});
  const double mp = std::abs(m.value - m.direct) / std::abs(m.direct);
  r.require(mp <= tol, "4-point Pfaffian vs operator product");
  r.data = {{"two_point", lines}, {"four_point_rel_error", mp}};
  return r;
}

SuiteResult epsilon(const VerifyOptions&) {
  SuiteResult r{"epsilon"};
  json rows = json::array();
  for (const auto& e : epsilon_identities()) {
    const double d1 = std::abs(e.first - e.first_expected), d2 = std::abs(e.second - e.second_expected);
    rows.push_back({{"eta", e.eta}, {"first", to_json(e.first)}, {"second", to_json(e.second)},
                    {"first_error", d1}, {"second_error", d2}});
    r.require(d1 <= 1e-15, "first identity at eta=" + std::to_string(e.eta));
    r.require(d2 <= 1e-15, "second identity at eta=" + std::to_string(e.eta));
  }
  r.data["identities"] = rows;
  return r;
}

SuiteResult rps(const VerifyOptions& opt) {
  SuiteResult r{"rps"};
  std::mt19937_64 rng(opt.seed);
  std::normal_distribution<double> d;
  double sys = 0, ext = 0;
  for (Regime regime : {Regime::critical, Regime::subcritical})
    for (int n = 2; n <= 4; ++n)
      for (int N = 1; N <= 4; ++N) {
        auto op = rps_operator(Model::ising, regime, interval_for(Model::ising, n), 0.3, N);
        RVec u(n);
        for (int k = 0; k < n; ++k) u(k) = d(rng);
        const RVec v = op.matrix * u;
        const double scale = op.power.norm() * std::sqrt(u.squaredNorm() + v.squaredNorm());
        sys = std::max(sys, top_imaginary(op, u, v).cwiseAbs().maxCoeff() / scale);
        auto e = extend_kernel(op, u);
        const double hmax = std::max(1.0, e.field.values.empty()
                                              ? 0.0
                                              : std::abs(*std::max_element(
                                                    e.field.values.begin(), e.field.values.end(),
                                                    [](cplx x, cplx y) { return std::abs(x) < std::abs(y); })));
        ext = std::max({ext, e.interior.max_residual / hmax, e.riemann.max_residual / hmax});
        auto z = extend_kernel(op, RVec::Zero(n));
        for (cplx h : z.field.values) r.require(h == cplx(0.0), "zero data gives a nonzero extension");
      }
  r.require(sys <= 1e-10 * opt.tol_scale, "defining system");
  r.require(ext <= 1e-9 * opt.tol_scale, "extension residuals");
  r.data = {{"system_residual", sys}, {"extension_residual", ext}};
  return r;
}

SuiteResult loop_transfer(const VerifyOptions& opt) {
  SuiteResult r{"loop-transfer"};
  double worst = 0;
  for (double fug : {1.0, 1.3})
    for (int w = 1; w <= 2; ++w) {
      auto T = build_loop_transfer(w, 0.6, fug);
      auto vec = [&](const std::map<LinkPattern, double>& z) {
        RVec v = RVec::Zero(static_cast<Eigen::Index>(T.links.states.size()));
        for (const auto& [p, val] : z) v(static_cast<Eigen::Index>(T.links.index(p))) += val;
        return v;
      };
      for (int N = 1; N <= 3; ++N) {
        RVec zn = vec(enumerate_loop_strip(w, N, 0.6, fug)), zn1 = vec(enumerate_loop_strip(w, N + 1, 0.6, fug));
        worst = std::max(worst, (zn1 - T.matrix * zn).cwiseAbs().maxCoeff() / zn1.cwiseAbs().maxCoeff());
      }
    }
  r.require(worst <= 1e-10 * opt.tol_scale, "row recursion");
  r.data["max_rel_error"] = worst;
  return r;
}

SuiteResult fock(const VerifyOptions& opt) {
  SuiteResult r{"fock"};
  auto V = build_ising_transfer(2, 0.4);
  auto fs = fock_spectrum_from_transfer(V, clifford_generators(make_spin_basis(Model::ising, 2)));
  Eigen::EigenSolver<RMat> es(V.matrix);
  std::vector<cplx> direct(es.eigenvalues().begin(), es.eigenvalues().end()), built = fs.spectrum;
  r.require(direct.size() == built.size(), "spectrum size");
  double worst = 0;
  std::vector<char> used(direct.size(), 0);
  for (cplx b : built) {
    double best = 1e300;
    std::size_t at = 0;
    for (std::size_t i = 0; i < direct.size(); ++i)
      if (!used[i] && std::abs(direct[i] - b) < best) {
        best = std::abs(direct[i] - b);
        at = i;
      }
    if (best < 1e300) {
      used[at] = 1;
      worst = std::max(worst, best / std::abs(direct[at]));
    }
  }
  r.require(worst <= 1e-6 * opt.tol_scale, "Fock multiset vs eigenvalues");
  r.data = {{"max_rel_error", worst}, {"Lambda0", to_json(fs.Lambda0)}};
  return r;
}

const std::map<std::string, std::function<SuiteResult(const VerifyOptions&)>>& registry() {
  static const std::map<std::string, std::function<SuiteResult(const VerifyOptions&)>> m = {
      {"propagator", propagator}, {"spectrum", spectrum_suite}, {"pfaffian", pfaffian_suite},
      {"duality", duality},       {"transfer", transfer},       {"rc", rc},
      {"sholo", sholo},           {"correlate", correlate},     {"epsilon", epsilon},
      {"rps", rps},               {"loop-transfer", loop_transfer}, {"fock", fock},
  };
  return m;
}

}  // namespace

std::vector<std::string> suite_names() {
  std::vector<std::string> names;
  for (const auto& [k, v] : registry()) names.push_back(k);
  return names;
}

SuiteResult run_suite(const std::string& name, const VerifyOptions& opt) {
  auto it = registry().find(name);
  if (it == registry().end()) throw Error(ErrorCode::usage, "unknown suite: " + name);
  return it->second(opt);
}

}  // namespace holo::cli
