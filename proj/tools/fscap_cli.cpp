// Command-line front end for the fscap library. Links the C API only.
#include <cinttypes>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "fscap/fscap.h"

using json = nlohmann::ordered_json;

namespace {

constexpr int kExitConfig = 1;
constexpr int kExitVerification = 2;
constexpr int kExitRuntime = 3;

// One-line diagnostic naming the offending field, then exit 1.
[[noreturn]] void config_fail(const std::string& message) {
  std::fprintf(stderr, "config error: %s\n", message.c_str());
  std::exit(kExitConfig);
}

[[noreturn]] void runtime_fail(const std::string& message) {
  std::fprintf(stderr, "error: %s\n", message.c_str());
  std::exit(kExitRuntime);
}

// Flat key = value file, TOML-compatible for scalar keys. '#' starts a
// comment; values may be quoted; vectors are ';'-joined inside one value.
class Config {
 public:
  void load_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) config_fail("cannot read config file '" + path + "'");
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
      ++lineno;
      auto hash = line.find('#');
      if (hash != std::string::npos) line.erase(hash);
      std::string trimmed = trim(line);
      if (trimmed.empty()) continue;
      auto eq = trimmed.find('=');
      if (eq == std::string::npos) {
        config_fail("line " + std::to_string(lineno) + ": expected key = value");
      }
      set(trim(trimmed.substr(0, eq)), trim(trimmed.substr(eq + 1)));
    }
  }

  void apply_override(const std::string& kv) {
    auto eq = kv.find('=');
    if (eq == std::string::npos) config_fail("override '" + kv + "': expected key=value");
    set(trim(kv.substr(0, eq)), trim(kv.substr(eq + 1)));
  }

  bool has(const std::string& key) const { return values_.count(key) > 0; }

  std::string get_string(const std::string& key, const std::string& fallback) const {
    auto it = values_.find(key);
    return it == values_.end() ? fallback : it->second;
  }

  double get_double(const std::string& key, double fallback) const {
    auto it = values_.find(key);
    if (it == values_.end()) return fallback;
    return parse_double(key, it->second);
  }

  int get_int(const std::string& key, int fallback) const {
    auto it = values_.find(key);
    if (it == values_.end()) return fallback;
    try {
      std::size_t pos = 0;
      int v = std::stoi(it->second, &pos);
      if (pos != it->second.size()) throw std::invalid_argument("trailing");
      return v;
    } catch (...) {
      config_fail("field '" + key + "': expected integer, got '" + it->second + "'");
    }
  }

  bool get_bool(const std::string& key, bool fallback) const {
    auto it = values_.find(key);
    if (it == values_.end()) return fallback;
    if (it->second == "true" || it->second == "1") return true;
    if (it->second == "false" || it->second == "0") return false;
    config_fail("field '" + key + "': expected true/false, got '" + it->second + "'");
  }

  std::vector<double> get_vector(const std::string& key) const {
    auto it = values_.find(key);
    if (it == values_.end()) return {};
    std::vector<double> out;
    std::stringstream ss(it->second);
    std::string part;
    while (std::getline(ss, part, ';')) out.push_back(parse_double(key, trim(part)));
    return out;
  }

  const std::map<std::string, std::string>& values() const { return values_; }

 private:
  static std::string trim(const std::string& s) {
    auto b = s.find_first_not_of(" \t\r\n");
    auto e = s.find_last_not_of(" \t\r\n");
    return b == std::string::npos ? std::string() : s.substr(b, e - b + 1);
  }

  static double parse_double(const std::string& key, const std::string& value) {
    try {
      std::size_t pos = 0;
      double v = std::stod(value, &pos);
      if (pos != value.size()) throw std::invalid_argument("trailing");
      return v;
    } catch (...) {
      config_fail("field '" + key + "': expected number, got '" + value + "'");
    }
  }

  void set(const std::string& key, std::string value) {
    if (value.size() >= 2 && value.front() == '"' && value.back() == '"') {
      value = value.substr(1, value.size() - 2);
    }
    values_[key] = value;
  }

  std::map<std::string, std::string> values_;
};

std::string format_sig9(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.9g", v);
  return buf;
}

std::string join_theta(const double* theta, int dim) {
  std::string out;
  for (int i = 0; i < dim; ++i) {
    if (i) out += ';';
    out += format_sig9(theta[i]);
  }
  return out;
}

struct ObjectiveHandle {
  fscap_objective* ptr = nullptr;
  ~ObjectiveHandle() { fscap_objective_free(ptr); }
};

struct TraceHandle {
  fscap_trace* ptr = nullptr;
  ~TraceHandle() { fscap_trace_free(ptr); }
};

struct RunSetup {
  std::string channel;
  int algorithm = 1;
  fscap_algo_opts opts{};
  int grid_points = 41;
  int proxy_k = -1;
  double delta0 = 0.0;
  bool force = false;
  bool y0_from_config = false;
  std::string trace_csv;
  std::string report_json;
};

fscap_objective* build_channel(const Config& cfg, const std::string& channel) {
  fscap_objective* obj = nullptr;
  if (channel == "bec") {
    double eps = cfg.get_double("epsilon", 0.1);
    if (!(eps > 0.0 && eps < 1.0)) config_fail("epsilon must lie in (0,1)");
    obj = fscap_bec_objective(eps);
  } else if (channel == "noiseless") {
    obj = fscap_noiseless_objective();
  } else if (channel == "gilbert-elliott") {
    double chain[4] = {0.7, 0.3, 0.3, 0.7};
    if (cfg.has("state_chain")) {
      auto v = cfg.get_vector("state_chain");
      if (v.size() != 4) config_fail("state_chain must hold 4 values");
      std::copy(v.begin(), v.end(), chain);
    }
    obj = fscap_ge_objective(chain, cfg.get_double("crossover0", 0.01),
                             cfg.get_double("crossover1", 0.1),
                             cfg.get_int("n_max", 22));
  } else if (channel == "generic") {
    int ns = cfg.get_int("ns", 0);
    int ny = cfg.get_int("ny", 0);
    if (ns < 1) config_fail("ns (state count) required for the generic channel");
    if (ny < 1) config_fail("ny (output alphabet) required for the generic channel");
    auto kernel = cfg.get_vector("state_kernel");
    auto emission = cfg.get_vector("emission");
    if (static_cast<int>(kernel.size()) != 2 * ns * ns) {
      config_fail("state_kernel must hold 2*ns*ns values");
    }
    if (static_cast<int>(emission.size()) != 2 * ns * ny) {
      config_fail("emission must hold 2*ns*ny values");
    }
    fscap_constants constants{};
    auto n_poly = cfg.get_vector("n_poly");
    if (n_poly.empty()) config_fail("n_poly required for the generic channel");
    for (std::size_t i = 0; i < 3 && i < n_poly.size(); ++i) {
      constants.n_poly[i] = n_poly[i];
    }
    constants.rho = cfg.get_double("rho", 0.0);
    constants.big_m = cfg.get_double("M", 0.0);
    constants.small_m = cfg.get_double("m", 0.0);
    constants.k0 = cfg.get_int("k0", 0);
    if (!(constants.rho > 0.0 && constants.rho < 1.0)) {
      config_fail("rho required in (0,1) for the generic channel");
    }
    if (!(constants.big_m > 0.0)) config_fail("M required for the generic channel");
    obj = fscap_generic_rll_objective(ns, ny, kernel.data(), emission.data(),
                                      &constants, cfg.get_double("theta_min", 0.05),
                                      cfg.get_double("theta_max", 0.95));
  } else {
    config_fail("channel must be one of bec, noiseless, gilbert-elliott, generic");
  }
  if (!obj) config_fail(std::string("channel construction failed: ") + fscap_last_error());
  return obj;
}

void apply_objective_overrides(const Config& cfg, fscap_objective* obj,
                               const std::string& channel) {
  fscap_constants constants{};
  fscap_objective_constants(obj, &constants);
  bool touched = false;
  if (channel != "generic") {
    if (cfg.has("n_poly")) {
      auto v = cfg.get_vector("n_poly");
      for (std::size_t i = 0; i < 3; ++i) constants.n_poly[i] = i < v.size() ? v[i] : 0.0;
      touched = true;
    }
    for (const char* key : {"rho", "M", "m"}) {
      if (!cfg.has(key)) continue;
      double v = cfg.get_double(key, 0.0);
      if (std::string(key) == "rho") constants.rho = v;
      if (std::string(key) == "M") constants.big_m = v;
      if (std::string(key) == "m") constants.small_m = v;
      touched = true;
    }
    if (cfg.has("k0")) {
      constants.k0 = cfg.get_int("k0", constants.k0);
      touched = true;
    }
  }
  if (touched && fscap_objective_set_constants(obj, &constants) != FSCAP_OK) {
    config_fail(std::string("constants override rejected: ") + fscap_last_error());
  }
  if (cfg.has("theta_min") || cfg.has("theta_max") || cfg.has("interior_margin")) {
    if (channel == "generic") return;  // already applied at construction
    double lower, upper;
    fscap_objective_domain(obj, &lower, &upper);
    lower = cfg.get_double("theta_min", lower);
    upper = cfg.get_double("theta_max", upper);
    if (fscap_objective_set_domain(obj, &lower, &upper,
                                   cfg.get_double("interior_margin", 1e-9)) != FSCAP_OK) {
      config_fail(std::string("domain override rejected: ") + fscap_last_error());
    }
  }
}

RunSetup parse_run_setup(const Config& cfg) {
  RunSetup setup;
  setup.channel = cfg.get_string("channel", "");
  if (setup.channel.empty()) config_fail("channel is required");

  const bool ge_like = setup.channel == "gilbert-elliott";
  setup.algorithm = cfg.get_int("algorithm", ge_like ? 3 : 1);
  if (setup.algorithm != 1 && setup.algorithm != 3) {
    config_fail("algorithm must be 1 or 3");
  }

  setup.opts.alpha = cfg.get_double("alpha", 0.4);
  setup.opts.beta = cfg.get_double("beta", ge_like ? 0.5 : 0.9);
  if (!(setup.opts.alpha > 0.0 && setup.opts.alpha < 0.5)) {
    config_fail("alpha must lie in (0,0.5)");
  }
  if (!(setup.opts.beta > 0.0 && setup.opts.beta < 1.0)) {
    config_fail("beta must lie in (0,1)");
  }
  setup.opts.b = cfg.get_double("b", 0.5);
  if (setup.algorithm == 3 && !(setup.opts.b > 0.0 && setup.opts.b < 1.0)) {
    config_fail("b must lie in (0,1)");
  }
  setup.opts.max_backtracks = cfg.get_int("max_backtracks", 200);
  if (cfg.has("y0")) {
    setup.opts.y0 = cfg.get_double("y0", 0.0);
    setup.y0_from_config = true;
  }
  setup.grid_points = cfg.get_int("grid_points", 41);
  setup.proxy_k = cfg.get_int("proxy_k", -1);
  setup.delta0 = cfg.get_double("delta0", 0.0);
  setup.force = cfg.get_bool("force", false);
  setup.trace_csv = cfg.get_string("trace_csv", "trace.csv");
  setup.report_json = cfg.get_string("report_json", "report.json");
  return setup;
}

void fill_run_defaults(const Config& cfg, const std::string& channel, RunSetup* setup,
                       fscap_objective* obj) {
  fscap_constants constants{};
  fscap_objective_constants(obj, &constants);
  int default_outer = 100;
  double default_theta0;
  if (channel == "bec") {
    default_outer = 110 - constants.k0;  // final objective index 110
    default_theta0 = 0.5;
  } else if (channel == "noiseless") {
    default_outer = 450 - constants.k0;  // final objective index 450
    default_theta0 = 0.5;
  } else if (channel == "gilbert-elliott") {
    default_outer = 16 - constants.k0;   // final objective index 16
    default_theta0 = 0.2;
  } else {
    double lower, upper;
    fscap_objective_domain(obj, &lower, &upper);
    default_theta0 = 0.5 * (lower + upper);
    default_outer = 8;
  }
  setup->opts.outer_iters = cfg.get_int("outer_iters", default_outer);
  if (setup->opts.outer_iters < 1) config_fail("outer_iters must be positive");

  auto theta0 = cfg.get_vector("theta0");
  int dim = fscap_objective_dim(obj);
  if (theta0.empty()) theta0.assign(static_cast<std::size_t>(dim), default_theta0);
  if (static_cast<int>(theta0.size()) != dim) {
    config_fail("theta0 must hold " + std::to_string(dim) + " value(s)");
  }
  for (int i = 0; i < dim; ++i) setup->opts.theta0[i] = theta0[i];
}

void write_trace_csv(const std::string& path, const fscap_trace* trace, int dim) {
  std::ofstream out(path, std::ios::binary);
  if (!out) runtime_fail("cannot write trace CSV '" + path + "'");
  out << "outer_k,theta,f_value,grad_norm,step_t,backtracks,perturbed,floor_active\n";
  for (int i = 0; i < fscap_trace_size(trace); ++i) {
    fscap_iterate rec{};
    fscap_trace_get(trace, i, &rec);
    out << rec.outer_k << ',' << join_theta(rec.theta, dim) << ','
        << format_sig9(rec.f_value) << ',' << format_sig9(rec.grad_norm) << ','
        << format_sig9(rec.step_t) << ',' << rec.backtracks << ',' << rec.perturbed
        << ',' << rec.floor_active << '\n';
  }
}

json constants_to_json(const fscap_constants& c) {
  json j;
  j["N_poly"] = {c.n_poly[0], c.n_poly[1], c.n_poly[2]};
  j["rho"] = c.rho;
  j["M"] = c.big_m;
  if (c.small_m > 0.0) {
    j["m"] = c.small_m;
  } else {
    j["m"] = nullptr;
  }
  j["k0"] = c.k0;
  return j;
}

int cmd_run(const std::string& config_path, const std::vector<std::string>& overrides) {
  Config cfg;
  if (!config_path.empty()) cfg.load_file(config_path);
  for (const auto& kv : overrides) cfg.apply_override(kv);

  RunSetup setup = parse_run_setup(cfg);
  ObjectiveHandle obj{build_channel(cfg, setup.channel)};
  apply_objective_overrides(cfg, obj.ptr, setup.channel);
  fill_run_defaults(cfg, setup.channel, &setup, obj.ptr);

  fscap_constants constants{};
  fscap_objective_constants(obj.ptr, &constants);
  if (setup.algorithm == 1 && !(constants.small_m > 0.0)) {
    config_fail("m (strong-concavity modulus) required for algorithm 1");
  }

  fscap_lemma_report verification{};
  fscap_status vstatus =
      setup.algorithm == 1
          ? fscap_verify_lemma1(obj.ptr, setup.grid_points, setup.proxy_k, &verification)
          : fscap_verify_lemma5(obj.ptr, setup.opts.b, setup.grid_points, setup.proxy_k,
                                &verification);
  if (vstatus != FSCAP_OK) runtime_fail(fscap_last_error());
  if (!verification.passed && !setup.force) {
    std::fprintf(stderr,
                 "verification failed (delta=%g, lemma conditions %g / %g vs delta/8=%g);"
                 " run refused. Set force = true to run anyway.\n",
                 verification.delta, verification.cond_a_lhs[0],
                 verification.cond_a_lhs[1], verification.delta / 8.0);
    return kExitVerification;
  }
  if (setup.algorithm == 3 && !setup.y0_from_config) {
    setup.opts.y0 = verification.passed ? verification.y0 : -1e300;
  }

  TraceHandle trace;
  fscap_status rstatus = setup.algorithm == 1
                             ? fscap_run_algorithm1(obj.ptr, &setup.opts, &trace.ptr)
                             : fscap_run_algorithm3(obj.ptr, &setup.opts, &trace.ptr);
  if (rstatus == FSCAP_ERR_INVALID_ARG) config_fail(fscap_last_error());
  if (rstatus != FSCAP_OK) runtime_fail(fscap_last_error());

  const int dim = fscap_objective_dim(obj.ptr);
  write_trace_csv(setup.trace_csv, trace.ptr, dim);

  json report;
  report["channel"] = setup.channel;
  report["algorithm"] = setup.algorithm;
  report["constants"] = constants_to_json(constants);

  fscap_iterate last{};
  fscap_trace_get(trace.ptr, fscap_trace_size(trace.ptr) - 1, &last);
  json final_state;
  final_state["theta"] = std::vector<double>(last.theta, last.theta + dim);
  final_state["f"] = last.f_value;
  final_state["grad_norm"] = last.grad_norm;
  report["final"] = final_state;

  if (setup.algorithm == 1) {
    fscap_bound_report bound{};
    if (fscap_certified_bound(trace.ptr, obj.ptr, setup.opts.alpha, setup.opts.beta,
                              verification.dist_c_boundary, setup.delta0,
                              &bound) != FSCAP_OK) {
      runtime_fail(fscap_last_error());
    }
    json jb;
    jb["eta"] = bound.eta;
    jb["recursion"] = bound.recursion_bound;
    jb["tail"] = bound.tail;
    jb["interval"] = {bound.lower, bound.upper};
    report["bound"] = jb;
  } else {
    report["bound"] = nullptr;
  }

  json jv;
  jv["passed"] = verification.passed != 0;
  jv["delta"] = verification.delta;
  jv["y0"] = verification.y0;
  jv["dist"] = verification.dist_c_boundary;
  report["verification"] = jv;

  std::ofstream out(setup.report_json, std::ios::binary);
  if (!out) runtime_fail("cannot write report JSON '" + setup.report_json + "'");
  out << report.dump(2) << '\n';

  std::printf("final theta = %s, f = %s; trace -> %s, report -> %s\n",
              join_theta(last.theta, dim).c_str(), format_sig9(last.f_value).c_str(),
              setup.trace_csv.c_str(), setup.report_json.c_str());
  return 0;
}

int cmd_bounds(const std::string& channel, std::optional<double> p_opt,
               std::optional<double> q_opt, std::optional<double> eps_opt) {
  if (channel != "bec" && channel != "noiseless") {
    config_fail("bounds: channel must be bec or noiseless");
  }
  const bool is_bec = channel == "bec";
  double eps = eps_opt.value_or(0.1);
  double p = p_opt.value_or(is_bec ? 0.597275 : 0.674521);
  double q = q_opt.value_or(is_bec ? 0.614746 : 0.595176);

  ObjectiveHandle obj{is_bec ? fscap_bec_objective(eps) : fscap_noiseless_objective()};
  if (!obj.ptr) runtime_fail(fscap_last_error());
  fscap_constants constants{};
  fscap_objective_constants(obj.ptr, &constants);

  fscap_lemma_report verification{};
  if (fscap_verify_lemma1(obj.ptr, 41, -1, &verification) != FSCAP_OK) {
    runtime_fail(fscap_last_error());
  }

  fscap_algo_opts opts{};
  opts.alpha = 0.4;
  opts.beta = 0.9;
  opts.theta0[0] = 0.5;
  opts.outer_iters = (is_bec ? 110 : 450) - constants.k0;
  TraceHandle trace;
  if (fscap_run_algorithm1(obj.ptr, &opts, &trace.ptr) != FSCAP_OK) {
    runtime_fail(fscap_last_error());
  }
  fscap_bound_report bound{};
  if (fscap_certified_bound(trace.ptr, obj.ptr, opts.alpha, opts.beta,
                            verification.dist_c_boundary, 0.0, &bound) != FSCAP_OK) {
    runtime_fail(fscap_last_error());
  }

  double birch = 0.0;
  fscap_status bstatus = is_bec ? fscap_birch_bound_bec(p, q, eps, &birch)
                                : fscap_birch_bound_noiseless(p, q, &birch);
  if (bstatus != FSCAP_OK) runtime_fail(fscap_last_error());

  std::printf("channel: %s (lemma audit %s)\n", channel.c_str(),
              verification.passed ? "passed" : "FAILED");
  std::printf("order-%d certified interval: [%.9f, %.9f]\n", is_bec ? 1 : 0,
              bound.lower, bound.upper);
  std::printf("order-%d Birch lower bound at (p=%g, q=%g%s): %.9f\n", is_bec ? 2 : 1, p,
              q, is_bec ? ", eps" : "", birch);
  if (!is_bec) {
    double adjacency[64];
    int size = 0;
    double capacity = 0.0;
    if (fscap_forbidden_word_adjacency("101", adjacency, &size) != FSCAP_OK ||
        fscap_perron_log_eigenvalue(adjacency, size, &capacity) != FSCAP_OK) {
      runtime_fail(fscap_last_error());
    }
    std::printf("Shannon capacity (Perron eigenvalue, forbidden word 101): %.6f\n",
                capacity);
  }
  if (birch > bound.upper) {
    std::printf("order gain demonstrated: Birch bound exceeds the interval's upper end "
                "by %.3e\n", birch - bound.upper);
  } else {
    std::printf("no order gain at these parameters\n");
  }
  return 0;
}

int cmd_oracle(const std::string& source, int n) {
  if (n > 8) {
    std::fprintf(stderr, "oracle: n must be <= 8 (brute-force cost cap)\n");
    return kExitConfig;
  }
  fscap_hmm* hmm = nullptr;
  if (source == "fair-coin") {
    double trans[1] = {1.0};
    double emit[2] = {0.5, 0.5};
    hmm = fscap_hmm_create(1, 2, trans, emit, nullptr);
  } else if (source == "ge-error") {
    double trans[4] = {0.7, 0.3, 0.3, 0.7};
    double emit[4] = {0.99, 0.01, 0.9, 0.1};
    hmm = fscap_hmm_create(2, 2, trans, emit, nullptr);
  } else if (source == "deterministic") {
    double trans[1] = {1.0};
    double emit[2] = {1.0, 0.0};
    hmm = fscap_hmm_create(1, 2, trans, emit, nullptr);
  } else {
    config_fail("oracle: source must be fair-coin, ge-error or deterministic");
  }
  if (!hmm) runtime_fail(fscap_last_error());
  double forward = 0.0, brute = 0.0;
  if (fscap_conditional_entropy_forward(hmm, n, 0, &forward) != FSCAP_OK ||
      fscap_conditional_entropy_bruteforce(hmm, n, &brute) != FSCAP_OK) {
    std::string err = fscap_last_error();
    fscap_hmm_free(hmm);
    runtime_fail(err);
  }
  fscap_hmm_free(hmm);
  std::printf("source %s, n=%d\n", source.c_str(), n);
  std::printf("forward recursion : %.15f\n", forward);
  std::printf("brute force       : %.15f\n", brute);
  std::printf("difference        : %.3e\n", std::fabs(forward - brute));
  return 0;
}

int cmd_table(const std::string& fixture) {
  if (fixture == "ge-iterates") {
    double chain[4] = {0.7, 0.3, 0.3, 0.7};
    ObjectiveHandle obj{fscap_ge_objective(chain, 0.01, 0.1, 22)};
    fscap_lemma_report verification{};
    fscap_verify_lemma5(obj.ptr, 0.5, 41, -1, &verification);
    fscap_algo_opts opts{};
    opts.alpha = 0.4;
    opts.beta = 0.5;
    opts.theta0[0] = 0.2;
    opts.outer_iters = 10;
    opts.b = 0.5;
    opts.y0 = verification.y0;
    TraceHandle trace;
    if (fscap_run_algorithm3(obj.ptr, &opts, &trace.ptr) != FSCAP_OK) {
      runtime_fail(fscap_last_error());
    }
    std::printf("k theta grad_f f\n");
    for (int i = 0; i < fscap_trace_size(trace.ptr); ++i) {
      fscap_iterate rec{};
      fscap_trace_get(trace.ptr, i, &rec);
      std::printf("%d %s %s %s\n", rec.outer_k, format_sig9(rec.theta[0]).c_str(),
                  format_sig9(rec.grad_norm).c_str(),
                  format_sig9(rec.f_value).c_str());
    }
    return 0;
  }
  if (fixture == "bec-run" || fixture == "noiseless-run") {
    const bool is_bec = fixture == "bec-run";
    ObjectiveHandle obj{is_bec ? fscap_bec_objective(0.1) : fscap_noiseless_objective()};
    fscap_constants constants{};
    fscap_objective_constants(obj.ptr, &constants);
    fscap_algo_opts opts{};
    opts.alpha = 0.4;
    opts.beta = 0.9;
    opts.theta0[0] = 0.5;
    opts.outer_iters = (is_bec ? 110 : 450) - constants.k0;
    TraceHandle trace;
    if (fscap_run_algorithm1(obj.ptr, &opts, &trace.ptr) != FSCAP_OK) {
      runtime_fail(fscap_last_error());
    }
    fscap_iterate last{};
    fscap_trace_get(trace.ptr, fscap_trace_size(trace.ptr) - 1, &last);
    std::printf("k theta f\n%d %s %s\n", last.outer_k,
                format_sig9(last.theta[0]).c_str(), format_sig9(last.f_value).c_str());
    return 0;
  }
  config_fail("table: fixture must be ge-iterates, bec-run or noiseless-run");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"fixed-order Markov capacity of finite-state channels"};
  app.require_subcommand(1);

  auto* run = app.add_subcommand("run", "verify assumptions, run the optimizer, "
                                        "emit trace CSV and report JSON");
  std::string config_path;
  std::vector<std::string> overrides;
  run->add_option("--config", config_path, "flat key = value config file");
  run->add_option("--override", overrides, "key=value override (wins over the file)");

  auto* bounds = app.add_subcommand("bounds", "certified interval vs the next-order "
                                              "Birch lower bound");
  std::string bounds_channel;
  double p_val = 0.0, q_val = 0.0, eps_val = 0.0;
  bounds->add_option("--channel", bounds_channel, "bec or noiseless")->required();
  auto* p_opt = bounds->add_option("--p", p_val, "Birch input parameter p");
  auto* q_opt = bounds->add_option("--q", q_val, "Birch input parameter q");
  auto* e_opt = bounds->add_option("--epsilon", eps_val, "erasure probability");

  auto* oracle = app.add_subcommand("oracle", "forward vs brute-force conditional "
                                              "entropy");
  std::string oracle_source;
  int oracle_n = 4;
  oracle->add_option("--source", oracle_source, "fair-coin, ge-error or deterministic")
      ->required();
  oracle->add_option("--n", oracle_n, "conditioning depth (<= 8)")->required();

  auto* table = app.add_subcommand("table", "re-emit a reference table for regression "
                                            "diffing");
  std::string fixture;
  table->add_option("--fixture", fixture, "ge-iterates, bec-run or noiseless-run")
      ->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : kExitConfig;
  }

  try {
    if (run->parsed()) return cmd_run(config_path, overrides);
    if (bounds->parsed()) {
      return cmd_bounds(bounds_channel,
                        p_opt->count() ? std::optional<double>(p_val) : std::nullopt,
                        q_opt->count() ? std::optional<double>(q_val) : std::nullopt,
                        e_opt->count() ? std::optional<double>(eps_val) : std::nullopt);
    }
    if (oracle->parsed()) return cmd_oracle(oracle_source, oracle_n);
    if (table->parsed()) return cmd_table(fixture);
  } catch (const std::exception& e) {
    runtime_fail(e.what());
  }
  return kExitConfig;
}
