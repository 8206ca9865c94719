#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <ctime>
#include <fstream>
#include <iostream>
#include <map>
#include <memory>
#include <tuple>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json17.hpp"
#include "plp/plp.h"

using nlohmann::json;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitCheckFailed = 1;
constexpr int kExitUsage = 2;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct LibError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string fnv1a(const std::string& bytes) {
  std::uint64_t h = 1469598103934665603ULL;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  char buf[32];
  std::snprintf(buf, sizeof buf, "fnv1a64:%016llx", static_cast<unsigned long long>(h));
  return buf;
}

struct Run {
  std::vector<std::string> argv;
  std::map<std::string, std::string> input_hashes;
  bool stamp = false;
  std::string out;

  std::string read_file(const std::string& path) {
    std::ifstream f(path, std::ios::binary);
    if (!f) throw UsageError("cannot read " + path);
    std::stringstream ss;
    ss << f.rdbuf();
    input_hashes[path] = fnv1a(ss.str());
    return ss.str();
  }

  json manifest(const std::string& command, const json& params) const {
    json h = json::object();
    for (const auto& [k, v] : input_hashes) h[k] = v;
    json ts = nullptr;
    if (stamp) {
      const std::time_t t = std::time(nullptr);
      char buf[32];
      std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", std::gmtime(&t));
      ts = buf;
    }
    return json{{"tool", "plp"}, {"version", plp_version()}, {"command", command},
                {"parameters", params}, {"argv", argv}, {"timestamp", ts}, {"input_hashes", h}};
  }

  void emit(const std::string& text) const {
    if (out.empty()) {
      std::cout << text << '\n';
      return;
    }
    std::ofstream f(out, std::ios::binary);
    if (!f) throw UsageError("cannot write " + out);
    f << text << '\n';
  }

  void emit_json(const std::string& command, const json& params, const json& result) const {
    emit(plp::json17::dump(json{{"manifest", manifest(command, params)}, {"result", result}}));
  }
};

void check(plp_status s) {
  if (s != PLP_OK) throw LibError(std::string(plp_status_name(s)) + ": " + plp_last_error());
}

// Takes ownership of r.
json take(plp_result* r, bool* passed = nullptr) {
  json j = json::parse(plp_result_json(r));
  if (passed) *passed = plp_result_passed(r) != 0;
  plp_result_free(r);
  return j;
}

std::string num(double v) {
  if (!std::isfinite(v)) return "";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string q = "\"";
  for (char c : s) {
    if (c == '"') q += '"';
    q += c;
  }
  return q + '"';
}

// --params file.json: keys become "--key value" unless the flag is already on the command line.
std::vector<std::string> expand_params(std::vector<std::string> args, Run& run) {
  std::string path;
  for (std::size_t i = 0; i < args.size(); ++i) {
    if (args[i] == "--params" && i + 1 < args.size()) path = args[i + 1];
    if (args[i].rfind("--params=", 0) == 0) path = args[i].substr(9);
  }
  if (path.empty()) return args;
  json p;
  try {
    p = json::parse(run.read_file(path));
  } catch (const json::exception& e) {
    throw UsageError("params file " + path + ": " + e.what());
  }
  if (!p.is_object()) throw UsageError("params file must hold a JSON object");
  for (auto it = p.begin(); it != p.end(); ++it) {
    const std::string flag = "--" + it.key();
    const bool present = std::any_of(args.begin(), args.end(), [&](const std::string& a) {
      return a == flag || a.rfind(flag + "=", 0) == 0;
    });
    if (present || it.key() == "params") continue;
    const json& v = it.value();
    if (v.is_boolean()) {
      if (v.get<bool>()) args.push_back(flag);
      continue;
    }
    std::string s;
    if (v.is_array()) {
      for (const auto& e : v) {
        if (!s.empty()) s += ',';
        s += e.is_string() ? e.get<std::string>() : (e.is_number_integer() ? e.dump() : num(e.get<double>()));
      }
    } else if (v.is_string()) {
      s = v.get<std::string>();
    } else if (v.is_number_integer() || v.is_number_unsigned()) {
      s = v.dump();
    } else if (v.is_number()) {
      s = num(v.get<double>());
    } else {
      throw UsageError("params value for " + it.key() + " must be a scalar or array");
    }
    args.push_back(flag);
    args.push_back(s);
  }
  return args;
}

struct CsvRow {
  std::string c;
  double a;
  std::string check;
  bool passed;
  double margin;
  long long points;
};

void flatten(const json& doc, std::vector<CsvRow>& rows) {
  const json& r = doc.contains("result") ? doc.at("result") : doc;
  if (!r.is_object() || !r.contains("kind")) throw LibError("schema: report has no kind");
  const std::string kind = r.at("kind").get<std::string>();
  auto get_double = [](const json& j) { return j.is_null() ? std::nan("") : j.get<double>(); };
  if (kind == "verify-case") {
    const std::string c = r.at("case").get<std::string>();
    for (const auto& row : r.at("rows")) {
      const double a = row.at("a").get<double>();
      for (const auto& ch : row.at("report").at("children"))
        rows.push_back({c, a, ch.at("name").get<std::string>(), ch.at("passed").get<bool>(), get_double(ch.at("min_margin")),
                        ch.at("points_evaluated").get<long long>()});
    }
  } else if (kind == "verify-certificate") {
    const json& rep = r.at("report");
    rows.push_back({r.at("case").get<std::string>(), rep.at("a_range").at(0).get<double>(), r.at("id").get<std::string>(),
                    rep.at("passed").get<bool>(), get_double(rep.at("min_margin")), rep.at("points_evaluated").get<long long>()});
  } else {
    throw LibError("schema: unsupported report kind " + kind);
  }
}

}  // namespace

int main(int argc, char** argv) {
  Run run;
  std::vector<std::string> args(argv + 1, argv + argc);
  try {
    args = expand_params(args, run);
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  }
  run.argv = args;

  CLI::App app{"Periodic LP bounds, magic interpolants and certificates", "plp"};
  app.set_version_flag("--version", std::string(plp_version()));
  app.require_subcommand(1);
  std::string params_path;
  app.add_option("--params", params_path, "JSON object supplying any flag");
  app.add_flag("--stamp", run.stamp, "Include a timestamp in the manifest");
  app.add_option("--out", run.out, "Write output to a file instead of stdout");
  app.fallthrough();

  int code = kExitOk;
  std::function<void()> action;

  // theta eval
  auto* theta = app.add_subcommand("theta", "Theta function evaluation");
  theta->require_subcommand(1);
  auto* theta_eval = theta->add_subcommand("eval", "theta(c;x) or its x-derivative with a certified tail");
  double tc = 0, tx = 0;
  bool tdual = false;
  int tderiv = 0;
  theta_eval->add_option("--c", tc)->required();
  theta_eval->add_option("--x", tx)->required();
  theta_eval->add_flag("--dual", tdual, "Use the dual (Gaussian) series");
  theta_eval->add_option("--deriv", tderiv, "x-derivative order")->check(CLI::Range(0, 12));
  theta_eval->callback([&] {
    action = [&] {
      double v = 0, tail = 0;
      check(plp_theta_eval(tc, tx, tdual, tderiv, &v, &tail));
      run.emit_json("theta eval", {{"c", tc}, {"x", tx}, {"dual", tdual}, {"deriv", tderiv}}, {{"value", v}, {"tail", tail}});
    };
  });

  // energy eval
  auto* energy = app.add_subcommand("energy", "Periodic energies");
  energy->require_subcommand(1);
  auto* energy_eval = energy->add_subcommand("eval", "Energy and LP bound of a configuration");
  std::string elat = "A2", ecfg;
  double ea = 0;
  int estar = 0;
  energy_eval->add_option("--lattice", elat, "A2, L, Z, Z2 or rect:a1,a2");
  energy_eval->add_option("--a", ea)->required();
  auto* ecfg_opt = energy_eval->add_option("--config", ecfg, "JSON file {\"points\": [[x, y], ...]}");
  auto* estar_opt = energy_eval->add_option("--star", estar, "Use the named optimal configuration with n points");
  ecfg_opt->excludes(estar_opt);
  energy_eval->callback([&] {
    action = [&] {
      plp_lattice* lat = nullptr;
      check(plp_lattice_named(elat.c_str(), &lat));
      std::unique_ptr<plp_lattice, void (*)(plp_lattice*)> lat_guard(lat, plp_lattice_free);
      plp_configuration* cfg = nullptr;
      if (!ecfg.empty()) {
        json j;
        try {
          j = json::parse(run.read_file(ecfg));
        } catch (const json::exception& e) {
          throw UsageError("config " + ecfg + ": " + e.what());
        }
        if (!j.contains("points") || !j["points"].is_array()) throw UsageError("config needs a points array");
        std::vector<double> flat;
        const int d = plp_lattice_dim(lat);
        for (const auto& p : j["points"]) {
          if (!p.is_array() || static_cast<int>(p.size()) != d) throw UsageError("config point has the wrong dimension");
          for (const auto& x : p) flat.push_back(x.get<double>());
        }
        check(plp_configuration_create(lat, flat.size() / d, flat.data(), &cfg));
      } else if (estar > 0) {
        check(plp_configuration_omega_star(estar, &cfg));
      } else {
        throw UsageError("energy eval needs --config or --star");
      }
      std::unique_ptr<plp_configuration, void (*)(plp_configuration*)> cfg_guard(cfg, plp_configuration_free);
      plp_energy_report rep{};
      check(plp_energy_eval(lat, ea, cfg, &rep));
      json params{{"lattice", elat}, {"a", ea}};
      if (!ecfg.empty()) params["config"] = ecfg;
      if (estar > 0) params["star"] = estar;
      run.emit_json("energy eval", params,
                    {{"energy", rep.energy},
                     {"lp_bound", rep.has_lp_bound ? json(rep.lp_bound) : json(nullptr)},
                     {"gap", rep.has_lp_bound ? json(rep.gap) : json(nullptr)},
                     {"n", plp_configuration_size(cfg)}});
    };
  });

  // moments nodes
  auto* moments = app.add_subcommand("moments", "Moment index sets and node sets");
  moments->require_subcommand(1);
  auto* nodes = moments->add_subcommand("nodes", "Node set of a family");
  std::string mfam;
  int mm = 1;
  nodes->add_option("--family", mfam, "m2, 2m2, 3m2 or 6m2")->required();
  nodes->add_option("--m", mm)->required();
  nodes->callback([&] {
    action = [&] {
      plp_result* r = nullptr;
      check(plp_moments_nodes(mfam.c_str(), mm, &r));
      run.emit_json("moments nodes", {{"family", mfam}, {"m", mm}}, take(r));
    };
  });

  // interpolant build
  auto* interp = app.add_subcommand("interpolant", "Magic and Z-case interpolants");
  interp->require_subcommand(1);
  auto* build = interp->add_subcommand("build", "Coefficients and node residuals");
  std::string icase;
  double ia = 0;
  int im = 2;
  build->add_option("--case", icase, "4pt, 6pt or Z")->required()->check(CLI::IsMember({"4pt", "6pt", "Z"}));
  build->add_option("--a", ia)->required();
  build->add_option("--m", im, "Z case: 2m equally spaced points");
  build->callback([&] {
    action = [&] {
      plp_result* r = nullptr;
      check(plp_interpolant_build(icase.c_str(), ia, im, &r));
      json params{{"case", icase}, {"a", ia}};
      if (icase == "Z") params["m"] = im;
      run.emit_json("interpolant build", params, take(r));
    };
  });

  // verify
  auto* verify = app.add_subcommand("verify", "Interpolant domination and certificate suites");
  verify->require_subcommand(0, 1);
  std::string vcase;
  std::vector<double> vgrid;
  verify->add_option("--case", vcase, "4pt or 6pt")->check(CLI::IsMember({"4pt", "6pt"}));
  verify->add_option("--a-grid", vgrid, "Comma-separated a values")->delimiter(',');
  auto* vcert = verify->add_subcommand("certificate", "Run one certificate");
  std::string vid;
  std::vector<double> vsamples;
  vcert->add_option("--id", vid)->required();
  vcert->add_option("--a-samples", vsamples, "Comma-separated a values (default: declared samples)")->delimiter(',');
  auto* vlist = verify->add_subcommand("list", "List certificates with their a-ranges");
  vcert->callback([&] {
    action = [&] {
      plp_result* r = nullptr;
      check(plp_verify_certificate(vid.c_str(), vsamples.data(), vsamples.size(), &r));
      bool passed = true;
      json j = take(r, &passed);
      json params{{"id", vid}};
      if (!vsamples.empty()) params["a_samples"] = vsamples;
      run.emit_json("verify certificate", params, j);
      if (!passed) code = kExitCheckFailed;
    };
  });
  vlist->callback([&] {
    action = [&] {
      plp_result* r = nullptr;
      check(plp_certificate_list(&r));
      run.emit_json("verify list", json::object(), take(r));
    };
  });
  verify->callback([&] {
    if (!verify->get_subcommands().empty()) return;
    if (vcase.empty()) throw CLI::RequiredError("--case");
    if (vgrid.empty()) vgrid = {0.3, 1, 3, 9.6, 15, 21, 30, 60};
    action = [&] {
      plp_result* r = nullptr;
      check(plp_verify_case(vcase.c_str(), vgrid.data(), vgrid.size(), &r));
      bool passed = true;
      json j = take(r, &passed);
      run.emit_json("verify case", {{"case", vcase}, {"a_grid", vgrid}}, j);
      if (!passed) code = kExitCheckFailed;
    };
  });

  // optimize
  auto* optimize = app.add_subcommand("optimize", "Gradient-descent energy minimization");
  plp_optimizer_config oc;
  plp_optimizer_config_default(&oc);
  std::string olat = "A2";
  optimize->add_option("--lattice", olat);
  optimize->add_option("--n", oc.n)->required()->check(CLI::Range(2, 64));
  optimize->add_option("--a", oc.a)->required();
  optimize->add_option("--restarts", oc.restarts)->check(CLI::PositiveNumber);
  optimize->add_option("--max-iters", oc.max_iters)->check(CLI::NonNegativeNumber);
  optimize->add_option("--grad-tol", oc.grad_tol);
  optimize->add_option("--seed", oc.seed);
  optimize->add_option("--threads", oc.threads, "0: PLP_THREADS or hardware concurrency")->check(CLI::NonNegativeNumber);
  optimize->callback([&] {
    action = [&] {
      oc.lattice = olat.c_str();
      plp_result* r = nullptr;
      check(plp_optimize(&oc, &r));
      bool passed = true;
      json j = take(r, &passed);
      run.emit_json("optimize",
                    {{"lattice", olat}, {"n", oc.n}, {"a", oc.a}, {"restarts", oc.restarts}, {"max_iters", oc.max_iters},
                     {"grad_tol", oc.grad_tol}, {"seed", oc.seed}},
                    j);
      if (!passed) code = kExitCheckFailed;
    };
  });

  // report
  auto* report = app.add_subcommand("report", "Flatten verify reports to CSV");
  std::vector<std::string> rinputs;
  report->add_option("inputs", rinputs, "verify JSON reports");
  report->callback([&] {
    action = [&] {
      std::vector<CsvRow> rows;
      for (const auto& path : rinputs) {
        json doc;
        try {
          doc = json::parse(run.read_file(path));
          flatten(doc, rows);
        } catch (const json::exception& e) {
          throw LibError("schema: " + path + ": " + e.what());
        }
      }
      std::stable_sort(rows.begin(), rows.end(), [](const CsvRow& x, const CsvRow& y) {
        return std::tie(x.c, x.a, x.check) < std::tie(y.c, y.a, y.check);
      });
      std::string out = "case,a,check,passed,min_margin,points_evaluated";
      for (const auto& r : rows)
        out += "\n" + csv_field(r.c) + "," + num(r.a) + "," + csv_field(r.check) + "," + (r.passed ? "true" : "false") + "," +
               num(r.margin) + "," + std::to_string(r.points);
      run.emit(out);
    };
  });

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
    if (action) action();
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kExitOk : kExitUsage;
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const LibError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  }
  return code;
}
