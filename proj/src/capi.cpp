#include "fscap/fscap.h"

#include <cstring>
#include <string>

#include "bec.hpp"
#include "bounds.hpp"
#include "generic_fsc.hpp"
#include "gilbert_elliott.hpp"
#include "hidden_markov.hpp"
#include "noiseless.hpp"
#include "optimizer.hpp"
#include "perron.hpp"
#include "verify.hpp"

using namespace fscap;

struct fscap_objective {
  ObjectiveSequence seq;
};

struct fscap_trace {
  std::vector<IterateRecord> records;
};

struct fscap_hmm {
  HiddenMarkovSource src;
};

namespace {

thread_local std::string g_last_error;

fscap_status classify_exception() {
  try {
    throw;
  } catch (const DimensionError& e) {
    g_last_error = e.what();
    return FSCAP_ERR_DIMENSION;
  } catch (const DomainError& e) {
    g_last_error = e.what();
    return FSCAP_ERR_DOMAIN;
  } catch (const CostError& e) {
    g_last_error = e.what();
    return FSCAP_ERR_COST;
  } catch (const ConfigError& e) {
    g_last_error = e.what();
    return FSCAP_ERR_INVALID_ARG;
  } catch (const AssumptionError& e) {
    g_last_error = e.what();
    return FSCAP_ERR_ASSUMPTION;
  } catch (const BacktrackError& e) {
    g_last_error = e.what();
    return FSCAP_ERR_BACKTRACK;
  } catch (const NumericError& e) {
    g_last_error = e.what();
    return FSCAP_ERR_NUMERIC;
  } catch (const std::exception& e) {
    g_last_error = e.what();
    return FSCAP_ERR_NUMERIC;
  } catch (...) {
    g_last_error = "unknown error";
    return FSCAP_ERR_NUMERIC;
  }
}

template <typename Fn>
fscap_status guarded(Fn&& fn) noexcept {
  try {
    fn();
    return FSCAP_OK;
  } catch (...) {
    return classify_exception();
  }
}

template <typename Fn>
auto guarded_create(Fn&& fn) noexcept -> decltype(fn()) {
  try {
    return fn();
  } catch (...) {
    classify_exception();
    return nullptr;
  }
}

SequenceConstants to_cxx(const fscap_constants& c) {
  SequenceConstants out;
  out.n_poly = {c.n_poly[0], c.n_poly[1], c.n_poly[2]};
  out.rho = c.rho;
  out.big_m = c.big_m;
  if (c.small_m > 0.0) out.small_m = c.small_m;
  out.k0 = c.k0;
  return out;
}

fscap_constants from_cxx(const SequenceConstants& c) {
  fscap_constants out{};
  out.n_poly[0] = c.n_poly[0];
  out.n_poly[1] = c.n_poly[1];
  out.n_poly[2] = c.n_poly[2];
  out.rho = c.rho;
  out.big_m = c.big_m;
  out.small_m = c.small_m ? *c.small_m : 0.0;
  out.k0 = c.k0;
  return out;
}

void require_dim(int dim) {
  if (dim > FSCAP_MAX_DIM) {
    throw DimensionError("parameter dimension exceeds FSCAP_MAX_DIM");
  }
}

Algo1Config to_algo1(const fscap_objective& obj, const fscap_algo_opts& o) {
  Algo1Config cfg;
  cfg.alpha = o.alpha;
  cfg.beta = o.beta;
  cfg.theta0.assign(o.theta0, o.theta0 + obj.seq.dim());
  cfg.outer_iters = o.outer_iters;
  cfg.max_backtracks = o.max_backtracks > 0 ? o.max_backtracks : 200;
  return cfg;
}

}  // namespace

extern "C" {

const char* fscap_last_error(void) { return g_last_error.c_str(); }

fscap_objective* fscap_bec_objective(double epsilon) {
  return guarded_create([&]() -> fscap_objective* {
    return new fscap_objective{bec_objective(BecRllChannel{epsilon})};
  });
}

fscap_objective* fscap_noiseless_objective(void) {
  return guarded_create(
      [&]() -> fscap_objective* { return new fscap_objective{noiseless_objective()}; });
}

fscap_objective* fscap_ge_objective(const double state_chain[4], double crossover0,
                                    double crossover1, int n_max) {
  return guarded_create([&]() -> fscap_objective* {
    Eigen::MatrixXd p(2, 2);
    p << state_chain[0], state_chain[1], state_chain[2], state_chain[3];
    GilbertElliott ch(MarkovChain(p), {crossover0, crossover1});
    return new fscap_objective{ge_objective(ch, n_max > 0 ? n_max : 22)};
  });
}

fscap_objective* fscap_generic_rll_objective(int ns, int ny, const double* state_kernel,
                                             const double* emission,
                                             const fscap_constants* constants,
                                             double lower, double upper) {
  return guarded_create([&]() -> fscap_objective* {
    if (ns < 1 || ny < 1 || !state_kernel || !emission || !constants) {
      throw ConfigError("fscap_generic_rll_objective: missing arguments");
    }
    GenericFsc fsc;
    fsc.nx = 2;
    fsc.ns = ns;
    fsc.ny = ny;
    fsc.input_param = [](std::span<const double> theta) {
      return rll_input_matrix(theta[0]);
    };
    fsc.state_kernel = Eigen::Map<const Eigen::Matrix<double, Eigen::Dynamic,
                                                      Eigen::Dynamic, Eigen::RowMajor>>(
        state_kernel, 2 * ns, ns);
    fsc.emission = Eigen::Map<const Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic,
                                                  Eigen::RowMajor>>(emission, 2 * ns, ny);
    fsc.validate();
    auto eval = [fsc](int k, std::span<const double> theta) {
      return generic_fsc_fk(fsc, theta, std::max(k, 1));
    };
    ObjectiveSequence seq(ParamDomain({lower}, {upper}), to_cxx(*constants),
                          std::move(eval));
    seq.set_proxy_k_limit(8);
    return new fscap_objective{std::move(seq)};
  });
}

void fscap_objective_free(fscap_objective* obj) { delete obj; }

int fscap_objective_dim(const fscap_objective* obj) {
  return obj ? obj->seq.dim() : 0;
}

fscap_status fscap_objective_domain(const fscap_objective* obj, double* lower,
                                    double* upper) {
  return guarded([&] {
    if (!obj || !lower || !upper) throw ConfigError("null argument");
    const auto& d = obj->seq.domain();
    for (int i = 0; i < d.dim(); ++i) {
      lower[i] = d.lower()[i];
      upper[i] = d.upper()[i];
    }
  });
}

fscap_status fscap_objective_set_domain(fscap_objective* obj, const double* lower,
                                        const double* upper, double interior_margin) {
  return guarded([&] {
    if (!obj || !lower || !upper) throw ConfigError("null argument");
    int d = obj->seq.dim();
    obj->seq.set_domain(ParamDomain(std::vector<double>(lower, lower + d),
                                    std::vector<double>(upper, upper + d),
                                    interior_margin > 0 ? interior_margin : 1e-9));
  });
}

fscap_status fscap_objective_constants(const fscap_objective* obj,
                                       fscap_constants* out) {
  return guarded([&] {
    if (!obj || !out) throw ConfigError("null argument");
    *out = from_cxx(obj->seq.constants());
  });
}

fscap_status fscap_objective_set_constants(fscap_objective* obj,
                                           const fscap_constants* c) {
  return guarded([&] {
    if (!obj || !c) throw ConfigError("null argument");
    obj->seq.set_constants(to_cxx(*c));
  });
}

fscap_status fscap_objective_eval(const fscap_objective* obj, int k,
                                  const double* theta, double* value) {
  return guarded([&] {
    if (!obj || !theta || !value) throw ConfigError("null argument");
    *value = obj->seq.eval(k, std::span<const double>(theta, obj->seq.dim()));
  });
}

fscap_status fscap_objective_grad(const fscap_objective* obj, int k,
                                  const double* theta, double* grad) {
  return guarded([&] {
    if (!obj || !theta || !grad) throw ConfigError("null argument");
    auto g = obj->seq.gradient(k, std::span<const double>(theta, obj->seq.dim()));
    std::memcpy(grad, g.data(), g.size() * sizeof(double));
  });
}

fscap_status fscap_run_algorithm1(const fscap_objective* obj,
                                  const fscap_algo_opts* opts, fscap_trace** out) {
  return guarded([&] {
    if (!obj || !opts || !out) throw ConfigError("null argument");
    require_dim(obj->seq.dim());
    *out = new fscap_trace{run_algorithm1(obj->seq, to_algo1(*obj, *opts))};
  });
}

fscap_status fscap_run_algorithm3(const fscap_objective* obj,
                                  const fscap_algo_opts* opts, fscap_trace** out) {
  return guarded([&] {
    if (!obj || !opts || !out) throw ConfigError("null argument");
    require_dim(obj->seq.dim());
    Algo3Config cfg;
    cfg.base = to_algo1(*obj, *opts);
    cfg.b = opts->b;
    cfg.y0 = opts->y0;
    *out = new fscap_trace{run_algorithm3(obj->seq, cfg)};
  });
}

int fscap_trace_size(const fscap_trace* trace) {
  return trace ? static_cast<int>(trace->records.size()) : 0;
}

fscap_status fscap_trace_get(const fscap_trace* trace, int index, fscap_iterate* out) {
  return guarded([&] {
    if (!trace || !out) throw ConfigError("null argument");
    if (index < 0 || index >= static_cast<int>(trace->records.size())) {
      throw ConfigError("fscap_trace_get: index out of range");
    }
    const IterateRecord& r = trace->records[index];
    require_dim(static_cast<int>(r.theta.size()));
    *out = fscap_iterate{};
    out->outer_k = r.outer_k;
    std::memcpy(out->theta, r.theta.data(), r.theta.size() * sizeof(double));
    out->f_value = r.f_value;
    out->grad_norm = r.grad_norm;
    out->step_t = r.step_t;
    out->backtracks = r.backtracks;
    out->perturbed = r.perturbed ? 1 : 0;
    out->floor_active = r.floor_active ? 1 : 0;
  });
}

void fscap_trace_free(fscap_trace* trace) { delete trace; }

fscap_status fscap_verify_lemma1(const fscap_objective* obj, int grid_points,
                                 int proxy_k, fscap_lemma_report* out) {
  return guarded([&] {
    if (!obj || !out) throw ConfigError("null argument");
    LemmaReport rep = verify_lemma1(obj->seq, grid_points, proxy_k);
    *out = fscap_lemma_report{};
    out->delta = rep.delta_est;
    out->y0 = rep.y0;
    out->k0_checked = rep.k0_checked;
    out->cond_a_lhs[0] = rep.cond_a_lhs[0];
    out->cond_a_lhs[1] = rep.cond_a_lhs[1];
    out->dist_c_boundary = rep.dist_c_boundary;
    out->passed = rep.passed ? 1 : 0;
  });
}

fscap_status fscap_verify_lemma5(const fscap_objective* obj, double b, int grid_points,
                                 int proxy_k, fscap_lemma_report* out) {
  return guarded([&] {
    if (!obj || !out) throw ConfigError("null argument");
    LemmaReport rep = verify_lemma5(obj->seq, b, grid_points, proxy_k);
    *out = fscap_lemma_report{};
    out->delta = rep.delta_est;
    out->y0 = rep.y0;
    out->k0_checked = rep.k0_checked;
    out->cond_a_lhs[0] = rep.cond_a_lhs[0];
    out->cond_a_lhs[1] = rep.cond_a_lhs[1];
    out->dist_c_boundary = rep.dist_c_boundary;
    out->passed = rep.passed ? 1 : 0;
    if (!rep.witness.empty()) {
      require_dim(static_cast<int>(rep.witness.size()));
      out->has_witness = 1;
      std::memcpy(out->witness, rep.witness.data(),
                  rep.witness.size() * sizeof(double));
    }
  });
}

fscap_status fscap_certified_bound(const fscap_trace* trace, const fscap_objective* obj,
                                   double alpha, double beta, double dist_c,
                                   double delta0, fscap_bound_report* out) {
  return guarded([&] {
    if (!trace || !obj || !out) throw ConfigError("null argument");
    double d0 = delta0 > 0.0 ? delta0 : 2.0 * obj->seq.constants().big_m;
    BoundReport rep =
        certified_bound(trace->records, obj->seq, alpha, beta, dist_c, d0);
    *out = fscap_bound_report{};
    out->eta = rep.eta;
    out->eta_formula = rep.eta_formula;
    out->gamma_coeff = rep.gamma_coeff;
    out->recursion_bound = rep.recursion_bound;
    out->tail = rep.tail;
    out->lower = rep.interval.first;
    out->upper = rep.interval.second;
    out->delta0 = rep.delta0;
    out->max_backtracks_seen = rep.max_backtracks_seen;
  });
}

fscap_hmm* fscap_hmm_create(int n_hidden, int n_obs, const double* trans,
                            const double* emit, const double* init) {
  return guarded_create([&]() -> fscap_hmm* {
    if (n_hidden < 1 || n_obs < 1 || !trans || !emit) {
      throw ConfigError("fscap_hmm_create: missing arguments");
    }
    using RowMajor =
        Eigen::Map<const Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic,
                                       Eigen::RowMajor>>;
    MarkovChain chain{Eigen::MatrixXd(RowMajor(trans, n_hidden, n_hidden))};
    Eigen::MatrixXd emission = RowMajor(emit, n_hidden, n_obs);
    if (init) {
      Eigen::VectorXd init_vec = Eigen::Map<const Eigen::VectorXd>(init, n_hidden);
      return new fscap_hmm{
          HiddenMarkovSource(std::move(chain), std::move(emission), std::move(init_vec))};
    }
    return new fscap_hmm{HiddenMarkovSource(std::move(chain), std::move(emission))};
  });
}

void fscap_hmm_free(fscap_hmm* hmm) { delete hmm; }

fscap_status fscap_conditional_entropy_forward(const fscap_hmm* hmm, int n, int n_max,
                                               double* out) {
  return guarded([&] {
    if (!hmm || !out) throw ConfigError("null argument");
    *out = conditional_entropy_forward(hmm->src, n, n_max > 0 ? n_max : 22);
  });
}

fscap_status fscap_conditional_entropy_bruteforce(const fscap_hmm* hmm, int n,
                                                  double* out) {
  return guarded([&] {
    if (!hmm || !out) throw ConfigError("null argument");
    *out = conditional_entropy_bruteforce(hmm->src, n);
  });
}

fscap_status fscap_binary_entropy(double p, double* out) {
  return guarded([&] {
    if (!out) throw ConfigError("null argument");
    *out = binary_entropy(p);
  });
}

fscap_status fscap_stationary_distribution(const double* p, int s, double* pi_out) {
  return guarded([&] {
    if (!p || !pi_out || s < 1) throw ConfigError("bad arguments");
    using RowMajor =
        Eigen::Map<const Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic,
                                       Eigen::RowMajor>>;
    Eigen::VectorXd pi = stationary_distribution(MarkovChain{Eigen::MatrixXd(
        RowMajor(p, s, s))});
    std::memcpy(pi_out, pi.data(), s * sizeof(double));
  });
}

fscap_status fscap_perron_log_eigenvalue(const double* a, int s, double* out) {
  return guarded([&] {
    if (!a || !out || s < 1) throw ConfigError("bad arguments");
    using RowMajor =
        Eigen::Map<const Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic,
                                       Eigen::RowMajor>>;
    *out = perron_log_eigenvalue(Eigen::MatrixXd(RowMajor(a, s, s)));
  });
}

fscap_status fscap_forbidden_word_adjacency(const char* word, double* adjacency_out,
                                            int* size_out) {
  return guarded([&] {
    if (!word || !adjacency_out || !size_out) throw ConfigError("null argument");
    Eigen::MatrixXd adj = build_forbidden_word_adjacency(word);
    int n = static_cast<int>(adj.rows());
    *size_out = n;
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < n; ++j) adjacency_out[i * n + j] = adj(i, j);
    }
  });
}

fscap_status fscap_birch_bound_bec(double p, double q, double epsilon, double* out) {
  return guarded([&] {
    if (!out) throw ConfigError("null argument");
    *out = birch_bound_bec(p, q, epsilon);
  });
}

fscap_status fscap_birch_bound_noiseless(double p, double q, double* out) {
  return guarded([&] {
    if (!out) throw ConfigError("null argument");
    *out = birch_bound_noiseless(p, q);
  });
}

}  // extern "C"
