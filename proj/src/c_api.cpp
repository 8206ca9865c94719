#include "plp/plp.h"

#include <cmath>
#include <limits>
#include <memory>
#include <string>

#include "json17.hpp"
#include "plp/energy.hpp"
#include "plp/interpolants.hpp"
#include "plp/moments.hpp"
#include "plp/optimizer.hpp"
#include "plp/verify.hpp"

#ifndef PLP_VERSION
#define PLP_VERSION "0.0.0"
#endif

using nlohmann::json;

struct plp_lattice {
  plp::Lattice lat;
};

struct plp_configuration {
  plp::Configuration cfg;
};

struct plp_result {
  std::string text;
  bool passed = true;
};

namespace {

thread_local std::string g_last_error;

template <class Fn>
plp_status guard(Fn&& fn) {
  try {
    fn();
    g_last_error.clear();
    return PLP_OK;
  } catch (const plp::Error& e) {
    g_last_error = e.what();
    return static_cast<plp_status>(static_cast<int>(e.code()));
  } catch (const std::exception& e) {
    g_last_error = e.what();
    return PLP_ERR_INTERNAL;
  }
}

void require(bool ok, const char* msg) {
  if (!ok) throw plp::Error(plp::ErrorCode::InvalidArgument, msg);
}

plp_result* make_result(const json& j, bool passed) {
  auto r = std::make_unique<plp_result>();
  r->text = plp::json17::dump(j);
  r->passed = passed;
  return r.release();
}

json vec_json(const plp::Vec& v) {
  json a = json::array();
  for (int i = 0; i < v.size(); ++i) a.push_back(v(i));
  return a;
}

json points_json(const std::vector<plp::Vec>& pts) {
  json a = json::array();
  for (const auto& p : pts) a.push_back(vec_json(p));
  return a;
}

json report_json(const plp::CheckReport& r) {
  json j;
  j["name"] = r.name;
  j["passed"] = r.passed;
  j["min_margin"] = r.min_margin;
  j["worst_point"] = {r.worst_point.first, r.worst_point.second};
  j["points_evaluated"] = r.points_evaluated;
  j["a_range"] = {r.a_lo, r.a_hi};
  j["tolerance"] = r.tolerance;
  j["strict"] = r.strict;
  j["n_used"] = r.n_used;
  j["detail"] = r.detail;
  json ch = json::array();
  for (const auto& c : r.children) ch.push_back(report_json(c));
  j["children"] = ch;
  return j;
}

json poly_json(const plp::BivariatePolynomial& p) {
  json t = json::array();
  for (const auto& [k, c] : p.coeffs()) t.push_back({k.first, k.second, c});
  return json{{"terms", t}};
}

json expansion_json(const plp::PvExpansion& e) {
  json t = json::array();
  for (const auto& term : e.terms) t.push_back({{"v", {term.v.k1, term.v.k2}}, {"coeff", term.coeff}});
  return json{{"family", plp::family_name(e.phi)}, {"terms", t}, {"residual", e.residual}, {"cpsd", e.cpsd()}};
}

const char* case_name(plp::InterpCase k) { return k == plp::InterpCase::FourPoint ? "4pt" : "6pt"; }

plp::InterpCase parse_case(const char* s) {
  require(s != nullptr, "case name is null");
  const std::string c = s;
  if (c == "4pt") return plp::InterpCase::FourPoint;
  if (c == "6pt") return plp::InterpCase::SixPoint;
  throw plp::Error(plp::ErrorCode::InvalidArgument, "unknown case: " + c + " (expected 4pt or 6pt)");
}

plp::OptimizerConfig to_cpp(const plp_optimizer_config& c) {
  require(c.lattice != nullptr, "optimizer lattice is null");
  plp::OptimizerConfig o;
  o.n = c.n;
  o.lattice = c.lattice;
  o.a = c.a;
  o.restarts = c.restarts;
  o.max_iters = c.max_iters;
  o.grad_tol = c.grad_tol;
  o.armijo = c.armijo;
  o.shrink = c.shrink;
  o.initial_step = c.initial_step;
  o.seed = c.seed;
  o.threads = c.threads;
  return o;
}

json node_residual(double t1, double t2, double F, double g) {
  return json{{"t", {t1, t2}}, {"F", F}, {"g", g}, {"residual", F - g}};
}

}  // namespace

extern "C" {

const char* plp_version(void) { return PLP_VERSION; }

const char* plp_last_error(void) { return g_last_error.c_str(); }

const char* plp_status_name(plp_status s) {
  switch (s) {
    case PLP_OK: return "ok";
    case PLP_ERR_INVALID_ARGUMENT: return "invalid-argument";
    case PLP_ERR_SINGULAR_MATRIX: return "singular-matrix";
    case PLP_ERR_NOT_SUBLATTICE: return "not-sublattice";
    case PLP_ERR_OVERFLOW: return "overflow";
    case PLP_ERR_UNSUPPORTED_LATTICE: return "unsupported-lattice";
    case PLP_ERR_NOT_IN_DUAL: return "not-in-dual";
    case PLP_ERR_NOT_IN_CONE: return "not-in-cone";
    case PLP_ERR_NOT_IN_SPAN: return "not-in-span";
    case PLP_ERR_TOLERANCE_UNREACHABLE: return "tolerance-unreachable";
    case PLP_ERR_OUT_OF_HYPOTHESIS: return "out-of-hypothesis";
    case PLP_ERR_INSUFFICIENT_DERIVATIVES: return "insufficient-derivatives";
    case PLP_ERR_BRANCH_MISMATCH: return "branch-mismatch";
    case PLP_ERR_MONOTONICITY_SPOT_CHECK: return "monotonicity-spot-check";
    case PLP_ERR_SIGN_PATTERN: return "sign-pattern";
    case PLP_ERR_CONVEXITY_SPOT_CHECK: return "convexity-spot-check";
    case PLP_ERR_ASSUMPTION_SPOT_CHECK: return "assumption-spot-check";
    case PLP_ERR_NOT_CPSD: return "not-cpsd";
    case PLP_ERR_OUT_OF_RANGE: return "out-of-range";
    case PLP_ERR_SCHEMA: return "schema";
    case PLP_ERR_INTERNAL: return "internal";
  }
  return "unknown";
}

plp_status plp_lattice_named(const char* key, plp_lattice** out) {
  return guard([&] {
    require(key && out, "null argument");
    *out = new plp_lattice{plp::Lattice::named(key)};
  });
}

plp_status plp_lattice_create(int dim, const double* generator, plp_lattice** out) {
  return guard([&] {
    require(generator && out && dim >= 1 && dim <= 8, "bad lattice arguments");
    plp::Mat v(dim, dim);
    for (int i = 0; i < dim; ++i)
      for (int j = 0; j < dim; ++j) v(i, j) = generator[i * dim + j];
    *out = new plp_lattice{plp::Lattice(v)};
  });
}

void plp_lattice_free(plp_lattice* lat) { delete lat; }

int plp_lattice_dim(const plp_lattice* lat) { return lat ? lat->lat.dim() : 0; }

plp_status plp_lattice_generator(const plp_lattice* lat, double* out) {
  return guard([&] {
    require(lat && out, "null argument");
    const int d = lat->lat.dim();
    for (int i = 0; i < d; ++i)
      for (int j = 0; j < d; ++j) out[i * d + j] = lat->lat.generator()(i, j);
  });
}

plp_status plp_configuration_create(const plp_lattice* ambient, size_t n, const double* points, plp_configuration** out) {
  return guard([&] {
    require(ambient && out && (points || n == 0), "null argument");
    const int d = ambient->lat.dim();
    std::vector<plp::Vec> pts;
    for (size_t i = 0; i < n; ++i) {
      plp::Vec p(d);
      for (int k = 0; k < d; ++k) p(k) = points[i * d + k];
      pts.push_back(p);
    }
    *out = new plp_configuration{plp::make_configuration(std::move(pts), ambient->lat)};
  });
}

plp_status plp_configuration_omega_star(int n, plp_configuration** out) {
  return guard([&] {
    require(out != nullptr, "null argument");
    *out = new plp_configuration{plp::omega_star(n)};
  });
}

void plp_configuration_free(plp_configuration* cfg) { delete cfg; }

size_t plp_configuration_size(const plp_configuration* cfg) { return cfg ? cfg->cfg.size() : 0; }

int plp_configuration_dim(const plp_configuration* cfg) { return cfg ? cfg->cfg.ambient.dim() : 0; }

plp_status plp_configuration_points(const plp_configuration* cfg, double* out) {
  return guard([&] {
    require(cfg && out, "null argument");
    const int d = cfg->cfg.ambient.dim();
    for (size_t i = 0; i < cfg->cfg.size(); ++i)
      for (int k = 0; k < d; ++k) out[i * d + k] = cfg->cfg.points[i](k);
  });
}

plp_status plp_theta_eval(double c, double x, int dual, int deriv, double* value, double* tail) {
  return guard([&] {
    require(value && tail, "null argument");
    const plp::CertifiedValue v = plp::theta_deriv(c, x, deriv, dual != 0);
    *value = v.value;
    *tail = v.tail;
  });
}

plp_status plp_tilde_F(double t1, double t2, double a, const char* family, double* out) {
  return guard([&] {
    require(family && out, "null argument");
    *out = plp::tilde_F(t1, t2, a, plp::family_from_name(family));
  });
}

plp_status plp_energy_eval(const plp_lattice* lat, double a, const plp_configuration* cfg, plp_energy_report* out) {
  return guard([&] {
    require(lat && cfg && out, "null argument");
    const plp::GaussianPotential pot(a, lat->lat);
    const double e = plp::periodic_energy(cfg->cfg, pot);
    const auto lp = plp::magic_lp_bound(static_cast<int>(cfg->cfg.size()), lat->lat, a);
    out->energy = e;
    out->has_lp_bound = lp.has_value();
    out->lp_bound = lp.value_or(std::numeric_limits<double>::quiet_NaN());
    out->gap = lp ? e - *lp : std::numeric_limits<double>::quiet_NaN();
  });
}

const char* plp_result_json(const plp_result* r) { return r ? r->text.c_str() : ""; }

int plp_result_passed(const plp_result* r) { return r && r->passed ? 1 : 0; }

void plp_result_free(plp_result* r) { delete r; }

plp_status plp_moments_nodes(const char* family, int m, plp_result** out) {
  return guard([&] {
    require(family && out, "null argument");
    const plp::NodeSet ns = plp::node_set(plp::node_family_from_name(family), m);
    json nodes = json::array();
    for (auto [t1, t2] : ns.nodes) nodes.push_back({t1, t2});
    *out = make_result(json{{"family", plp::node_family_name(ns.family)}, {"m", ns.m}, {"count", ns.nodes.size()},
                            {"nodes", nodes}, {"preimages", points_json(ns.preimages)}},
                       true);
  });
}

plp_status plp_interpolant_build(const char* case_name_c, double a, int m, plp_result** out) {
  return guard([&] {
    require(case_name_c && out, "null argument");
    const std::string c = case_name_c;
    json j{{"case", c}, {"a", a}};
    if (c == "4pt") {
      const plp::MagicInterpolant4 g = plp::build_g4(a);
      auto F = [&](double t1, double t2) { return plp::tilde_F(t1, t2, a, plp::Family2D::A2); };
      const double e = plp::periodic_energy(plp::omega_star(4), plp::GaussianPotential(a, plp::Lattice::a2()));
      j["regime"] = g.regime();
      j["c0"] = g.c0;
      j["b1"] = g.b1;
      j["polynomial"] = poly_json(g.poly());
      j["expansion"] = expansion_json(g.expansion());
      j["lp_bound"] = g.lp_bound();
      j["star_energy"] = e;
      j["node_residuals"] = json::array({node_residual(-1, 1, F(-1, 1), g(-1, 1))});
    } else if (c == "6pt") {
      const plp::MagicInterpolant6 g = plp::build_g6(a);
      auto F = [&](double t1, double t2) { return plp::tilde_F(t1, t2, a, plp::Family2D::L); };
      const plp::FPair fp(a);
      const double e = plp::periodic_energy(plp::omega_star(6), plp::GaussianPotential(a, plp::Lattice::rect_l()));
      j["coefficients"] = {{"a00", g.a00}, {"a10", g.a10}, {"a01", g.a01}, {"a02", g.a02}, {"b00", g.b00}, {"c", g.c}};
      j["polynomial"] = poly_json(g.poly());
      j["expansion"] = expansion_json(g.expansion());
      j["lp_bound"] = g.lp_bound();
      j["star_energy"] = e;
      json res = json::array();
      for (auto [t1, t2] : {std::pair{-1.0, -1.0}, {1.0, -0.5}, {-1.0, 0.5}}) res.push_back(node_residual(t1, t2, F(t1, t2), g(t1, t2)));
      j["node_residuals"] = res;
      json dres = json::array();
      for (auto [t1, t2] : {std::pair{-1.0, 0.5}, {1.0, -0.5}}) {
        const double dF = fp.scale() * fp.FL(t1, t2, 0, 1);
        dres.push_back(json{{"t", {t1, t2}}, {"dF_dt2", dF}, {"dg_dt2", g.d2(t1, t2)}, {"residual", dF - g.d2(t1, t2)}});
      }
      j["derivative_residuals"] = dres;
    } else if (c == "Z") {
      const plp::ZInterpolant z = plp::build_gZ(m, a);
      const plp::DerivFn f = plp::tilde_F_Z(a);
      j["m"] = m;
      j["nodes"] = z.H.nodes();
      j["newton_coeffs"] = z.H.newton_coeffs();
      j["t_coeffs"] = z.t_coeffs;
      j["psd"] = z.psd;
      j["lp_bound"] = z.lp_bound();
      j["star_energy"] = plp::equally_spaced_energy(2 * m, a);
      json res = json::array();
      std::vector<double> distinct;
      for (double t : z.H.nodes())
        if (distinct.empty() || t != distinct.back()) distinct.push_back(t);
      for (double t : distinct) res.push_back(json{{"t", t}, {"F", f(t, 0)}, {"H", z.H(t)}, {"residual", f(t, 0) - z.H(t)}});
      j["node_residuals"] = res;
    } else {
      throw plp::Error(plp::ErrorCode::InvalidArgument, "unknown interpolant case: " + c + " (expected 4pt, 6pt or Z)");
    }
    *out = make_result(j, true);
  });
}

plp_status plp_certificate_list(plp_result** out) {
  return guard([&] {
    require(out != nullptr, "null argument");
    json a = json::array();
    for (const auto& c : plp::certificate_registry())
      a.push_back(json{{"id", c.id},
                       {"case", case_name(c.kind)},
                       {"description", c.lemma},
                       {"a_lo", c.a_lo},
                       {"a_hi", std::isfinite(c.a_hi) ? json(c.a_hi) : json("inf")},
                       {"lo_open", c.lo_open},
                       {"default_samples", c.default_samples}});
    *out = make_result(json{{"certificates", a}}, true);
  });
}

plp_status plp_verify_case(const char* case_name_c, const double* a_grid, size_t n, plp_result** out) {
  return guard([&] {
    require(out && (a_grid || n == 0), "null argument");
    const plp::InterpCase kind = parse_case(case_name_c);
    const auto rows = plp::verify_case(kind, std::vector<double>(a_grid, a_grid + n));
    json r = json::array();
    bool passed = true;
    for (const auto& row : rows) {
      passed = passed && row.report.passed;
      r.push_back(json{{"a", row.a}, {"report", report_json(row.report)}});
    }
    *out = make_result(json{{"kind", "verify-case"}, {"case", case_name(kind)}, {"passed", passed}, {"rows", r}}, passed);
  });
}

plp_status plp_verify_certificate(const char* id, const double* a, size_t n, plp_result** out) {
  return guard([&] {
    require(id && out && (a || n == 0), "null argument");
    const plp::CertificateInfo& info = plp::certificate_info(id);
    const plp::CheckReport r = plp::run_certificate(id, std::vector<double>(a, a + n));
    *out = make_result(json{{"kind", "verify-certificate"}, {"case", case_name(info.kind)}, {"id", info.id},
                            {"passed", r.passed}, {"report", report_json(r)}},
                       r.passed);
  });
}

void plp_optimizer_config_default(plp_optimizer_config* cfg) {
  if (!cfg) return;
  const plp::OptimizerConfig d;
  cfg->n = d.n;
  cfg->lattice = "A2";
  cfg->a = d.a;
  cfg->restarts = d.restarts;
  cfg->max_iters = d.max_iters;
  cfg->grad_tol = d.grad_tol;
  cfg->armijo = d.armijo;
  cfg->shrink = d.shrink;
  cfg->initial_step = d.initial_step;
  cfg->seed = d.seed;
  cfg->threads = d.threads;
}

plp_status plp_optimize(const plp_optimizer_config* cfg, plp_result** out) {
  return guard([&] {
    require(cfg && out, "null argument");
    const plp::OptimizerConfig c = to_cpp(*cfg);
    const plp::OptimizationResult r = plp::minimize(c);
    json j{{"kind", "optimize"},
           {"n", c.n},
           {"lattice", c.lattice},
           {"a", c.a},
           {"restarts", c.restarts},
           {"max_iters", c.max_iters},
           {"seed", c.seed},
           {"best_energy", r.best_energy},
           {"best_restart", r.best_restart},
           {"best_config", points_json(r.best_config.points)},
           {"energies", r.energies},
           {"converged", r.converged},
           {"iterations", r.iterations},
           {"lp_bound", r.lp_bound ? json(*r.lp_bound) : json(nullptr)},
           {"above_lp_bound", r.above_lp_bound}};
    // The named optimal configuration, when it lives on the same lattice.
    try {
      const plp::Configuration star = plp::omega_star(c.n);
      const plp::Lattice lat = plp::Lattice::named(c.lattice);
      const auto f1 = plp::detect_family(star.ambient), f2 = plp::detect_family(lat);
      if (f1 && f2 && *f1 == *f2) j["star_energy"] = plp::periodic_energy(star, plp::GaussianPotential(c.a, lat));
    } catch (const plp::Error&) {
    }
    *out = make_result(j, r.above_lp_bound);
  });
}

plp_status plp_compare_candidates(int n, const char* lattice, double a, const plp_configuration* const* candidates,
                                  const char* const* labels, size_t count, const plp_optimizer_config* opt,
                                  plp_result** out) {
  return guard([&] {
    require(lattice && out && (count == 0 || (candidates && labels)), "null argument");
    std::vector<std::pair<std::string, plp::Configuration>> c;
    for (size_t i = 0; i < count; ++i) {
      require(candidates[i] && labels[i], "null candidate");
      c.emplace_back(labels[i], candidates[i]->cfg);
    }
    std::optional<plp::OptimizerConfig> o;
    if (opt) o = to_cpp(*opt);
    const auto rows = plp::compare_candidates(n, lattice, a, c, o);
    json r = json::array();
    for (const auto& row : rows) r.push_back(json{{"label", row.label}, {"energy", row.energy}});
    *out = make_result(json{{"kind", "compare"}, {"n", n}, {"lattice", lattice}, {"a", a}, {"rows", r}}, true);
  });
}

}  // extern "C"
