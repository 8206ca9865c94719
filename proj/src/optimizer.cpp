#include "plp/optimizer.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <random>
#include <thread>

#include "plp/interpolants.hpp"

namespace plp {

int default_threads() {
  if (const char* s = std::getenv("PLP_THREADS")) {
    char* end = nullptr;
    const long v = std::strtol(s, &end, 10);
    if (end != s && v > 0) return static_cast<int>(std::min(v, 256L));
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

double configuration_energy(const std::vector<Vec>& x, const GaussianPotential& pot, std::vector<Vec>* grad) {
  const std::size_t n = x.size();
  const int d = pot.lattice().dim();
  if (grad) grad->assign(n, Vec::Zero(d));
  double e = 0.0;
  Vec g(d);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) {
      const Vec diff = x[i] - x[j];
      if (grad) {
        e += pot.value_and_gradient(diff, g);
        (*grad)[i] += 2.0 * g;
        (*grad)[j] -= 2.0 * g;
      } else {
        e += pot(diff);
      }
    }
  if (grad && n > 0) (*grad)[0].setZero();
  return 2.0 * e;
}

namespace {

double norm(const std::vector<Vec>& g) {
  double s = 0.0;
  for (const auto& v : g) s += v.squaredNorm();
  return std::sqrt(s);
}

double dot(const std::vector<Vec>& u, const std::vector<Vec>& v) {
  double s = 0.0;
  for (std::size_t i = 0; i < u.size(); ++i) s += u[i].dot(v[i]);
  return s;
}

}  // namespace

DescentResult descend(const GaussianPotential& pot, std::vector<Vec> x, const OptimizerConfig& cfg, bool record_trace) {
  DescentResult r;
  std::vector<Vec> g, gn, xn(x.size());
  double e = configuration_energy(x, pot, &g);
  double gnorm = norm(g);
  double step = cfg.initial_step;
  if (record_trace) r.trace.push_back(e);
  // Energy decreases below ~1e-14 |E| are unresolvable; stop when the last kWindow steps gained nothing more.
  constexpr int kWindow = 100;
  std::vector<double> window;
  bool stalled = false;
  int it = 0;
  for (; it < cfg.max_iters && gnorm > cfg.grad_tol; ++it) {
    // Backtracking from a Barzilai-Borwein trial step.
    double s = step;
    double en = 0.0;
    bool accepted = false;
    for (int k = 0; k < 60; ++k) {
      for (std::size_t i = 0; i < x.size(); ++i) xn[i] = x[i] - s * g[i];
      en = configuration_energy(xn, pot, &gn);
      if (en <= e - cfg.armijo * s * gnorm * gnorm) {
        accepted = true;
        break;
      }
      s *= cfg.shrink;
    }
    if (!accepted) break;  // no representable decrease left
    if (en > e) r.monotone = false;
    std::vector<Vec> sx(x.size()), sy(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) {
      sx[i] = xn[i] - x[i];
      sy[i] = gn[i] - g[i];
    }
    const double sy_dot = dot(sx, sy);
    step = sy_dot > 0 ? std::clamp(dot(sx, sx) / sy_dot, 1e-8, 1e3) : std::min(2.0 * s, 1e3);
    x.swap(xn);
    g.swap(gn);
    e = en;
    gnorm = norm(g);
    if (record_trace) r.trace.push_back(e);
    window.push_back(e);
    if (window.size() > kWindow) {
      window.erase(window.begin());
      if (window.front() - e <= 1e-14 * std::abs(e)) {
        stalled = true;
        ++it;
        break;
      }
    }
  }
  for (auto& p : x) p = reduce(p, pot.lattice());
  r.points = std::move(x);
  r.energy = e;
  r.grad_norm = gnorm;
  r.iterations = it;
  // Stationary to working precision also counts when the gradient is small on the energy's scale.
  const bool at_precision = (stalled || it < cfg.max_iters) && gnorm <= 1e-6 * std::max(1.0, std::abs(e));
  r.converged = gnorm <= cfg.grad_tol || at_precision;
  return r;
}

std::vector<Vec> random_start(const Lattice& lat, int n, std::uint64_t seed, std::uint64_t restart) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(restart), static_cast<std::uint32_t>(restart >> 32)};
  std::mt19937_64 rng(seq);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  const int d = lat.dim();
  std::vector<Vec> x;
  x.push_back(Vec::Zero(d));
  for (int i = 1; i < n; ++i) {
    Vec c(d);
    for (int k = 0; k < d; ++k) c(k) = u(rng);
    x.push_back(lat.point(c));
  }
  return x;
}

OptimizationResult minimize(const OptimizerConfig& cfg) {
  if (cfg.n < 2) throw Error(ErrorCode::InvalidArgument, "minimize: n must be at least 2");
  if (cfg.n > 64) throw Error(ErrorCode::InvalidArgument, "minimize: n must be at most 64");
  if (cfg.restarts < 1) throw Error(ErrorCode::InvalidArgument, "minimize: restarts must be at least 1");
  if (!(cfg.a > 0) || !std::isfinite(cfg.a)) throw Error(ErrorCode::InvalidArgument, "minimize: a must be positive");
  if (cfg.max_iters < 0 || !(cfg.shrink > 0 && cfg.shrink < 1) || !(cfg.initial_step > 0))
    throw Error(ErrorCode::InvalidArgument, "minimize: bad step rule parameters");
  const Lattice lat = Lattice::named(cfg.lattice);
  const GaussianPotential pot(cfg.a, lat);

  std::vector<DescentResult> runs(cfg.restarts);
  std::atomic<int> next{0};
  auto worker = [&] {
    for (int k; (k = next.fetch_add(1)) < cfg.restarts;)
      runs[k] = descend(pot, random_start(lat, cfg.n, cfg.seed, static_cast<std::uint64_t>(k)), cfg);
  };
  const int nt = std::min(cfg.threads > 0 ? cfg.threads : default_threads(), cfg.restarts);
  if (nt <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (int t = 0; t < nt; ++t) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }

  OptimizationResult out{0.0, Configuration{{}, lat}, 0, {}, {}, {}, std::nullopt, true};
  for (int k = 0; k < cfg.restarts; ++k) {
    out.energies.push_back(runs[k].energy);
    out.converged.push_back(runs[k].converged);
    out.iterations.push_back(runs[k].iterations);
    if (runs[k].energy < runs[out.best_restart].energy) out.best_restart = k;
  }
  out.best_energy = runs[out.best_restart].energy;
  out.best_config = make_configuration(runs[out.best_restart].points, lat);

  out.lp_bound = magic_lp_bound(cfg.n, lat, cfg.a);
  if (out.lp_bound)
    for (double e : out.energies)
      if (e < *out.lp_bound - 1e-9 * std::abs(*out.lp_bound)) out.above_lp_bound = false;
  return out;
}

std::vector<CandidateRow> compare_candidates(int n, const std::string& lattice, double a,
                                             const std::vector<std::pair<std::string, Configuration>>& candidates,
                                             const std::optional<OptimizerConfig>& opt) {
  const GaussianPotential pot(a, Lattice::named(lattice));
  std::vector<CandidateRow> rows;
  for (const auto& [label, c] : candidates) {
    if (static_cast<int>(c.size()) != n)
      throw Error(ErrorCode::InvalidArgument, "compare_candidates: " + label + " does not have n points");
    rows.push_back({label, periodic_energy(c, pot)});
  }
  if (opt) {
    OptimizerConfig cfg = *opt;
    cfg.n = n;
    cfg.lattice = lattice;
    cfg.a = a;
    rows.push_back({"minimize", minimize(cfg).best_energy});
  }
  std::stable_sort(rows.begin(), rows.end(), [](const CandidateRow& x, const CandidateRow& y) { return x.energy < y.energy; });
  return rows;
}

}  // namespace plp
