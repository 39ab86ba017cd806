/* fscap - fixed-order Markov capacity of finite-state channels.
 *
 * C interface to the capacity library: channel objective sequences, the two
 * modified gradient-ascent optimizers, the initialization-lemma audits, the
 * certified error-bound recursion, and the entropy/Perron primitives behind
 * them. All functions are thread-safe as long as each handle is used from
 * one thread at a time; error messages are thread-local.
 */
#ifndef FSCAP_H
#define FSCAP_H

#ifdef __cplusplus
extern "C" {
#endif

#define FSCAP_MAX_DIM 8

typedef enum fscap_status {
  FSCAP_OK = 0,
  FSCAP_ERR_INVALID_ARG = 1, /* bad configuration or parameter */
  FSCAP_ERR_DIMENSION = 2,   /* vector/matrix dimension mismatch */
  FSCAP_ERR_DOMAIN = 3,      /* point or probability outside its domain */
  FSCAP_ERR_COST = 4,        /* request beyond a cost cap (entropy depth, size) */
  FSCAP_ERR_ASSUMPTION = 5,  /* constants inconsistent with a guarantee */
  FSCAP_ERR_BACKTRACK = 6,   /* backtracking exhausted; partial trace available */
  FSCAP_ERR_NUMERIC = 7,     /* internal consistency or convergence failure */
} fscap_status;

/* Message for the most recent failure on this thread. */
const char* fscap_last_error(void);

/* ------------------------------------------------------------------ */
/* Objective sequences                                                  */

typedef struct fscap_objective fscap_objective;

typedef struct fscap_constants {
  double n_poly[3]; /* N(k) = n_poly[0] + n_poly[1] k + n_poly[2] k^2 */
  double rho;
  double big_m;
  double small_m; /* <= 0 means absent (no strong-concavity modulus) */
  int k0;
} fscap_constants;

/* Binary erasure channel under the (1,inf)-RLL constraint, Theta = [0.2,0.6],
 * constants N=371, rho=0.1, M=5.81, m=1.88, k0=18. */
fscap_objective* fscap_bec_objective(double epsilon);

/* Noiseless two-state channel (forbidden word 101), Theta = [0.4,0.9],
 * k0=120, polynomial N, rho=0.875, m=1.2, M=10.37. */
fscap_objective* fscap_noiseless_objective(void);

/* Gilbert-Elliott channel: 2x2 state chain (row-major), BSC crossover per
 * state, Theta = [0.05,0.95]. Constants are calibrated for the reference
 * channel ([[0.7,0.3],[0.3,0.7]], 0.01/0.1) and fitted from the objective
 * increments otherwise; override with fscap_objective_set_constants. n_max
 * caps the conditional-entropy depth (pass 0 for the default 22). */
fscap_objective* fscap_ge_objective(const double state_chain[4], double crossover0,
                                    double crossover1, int n_max);

/* Generic finite-state channel with the (1,inf)-RLL input family
 * [[1-theta, theta],[1,0]]. state_kernel is (2*ns) x ns row-major with rows
 * indexed by (x, s_prev); emission is (2*ns) x ny. Evaluation cost is
 * exponential in k and capped at k <= 10. */
fscap_objective* fscap_generic_rll_objective(int ns, int ny, const double* state_kernel,
                                             const double* emission,
                                             const fscap_constants* constants,
                                             double lower, double upper);

void fscap_objective_free(fscap_objective* obj);
int fscap_objective_dim(const fscap_objective* obj);
fscap_status fscap_objective_domain(const fscap_objective* obj, double* lower,
                                    double* upper);
fscap_status fscap_objective_set_domain(fscap_objective* obj, const double* lower,
                                        const double* upper, double interior_margin);
fscap_status fscap_objective_constants(const fscap_objective* obj,
                                       fscap_constants* out);
fscap_status fscap_objective_set_constants(fscap_objective* obj,
                                           const fscap_constants* c);

/* f_k(theta); theta has fscap_objective_dim entries. */
fscap_status fscap_objective_eval(const fscap_objective* obj, int k,
                                  const double* theta, double* value);
/* Gradient of f_k (analytic if the objective carries one, otherwise central
 * finite differences with h = 1e-6 max(1,|theta|)). */
fscap_status fscap_objective_grad(const fscap_objective* obj, int k,
                                  const double* theta, double* grad);

/* ------------------------------------------------------------------ */
/* Optimizers                                                           */

typedef struct fscap_algo_opts {
  double alpha;       /* Armijo fraction in (0, 0.5) */
  double beta;        /* backtracking factor in (0, 1) */
  double theta0[FSCAP_MAX_DIM];
  int outer_iters;
  int max_backtracks; /* pass 0 for the default 200 */
  double b;           /* Algorithm 3 only: gradient-floor parameter in (0,1) */
  double y0;          /* Algorithm 3 only: level of the B set at Step 0 */
} fscap_algo_opts;

typedef struct fscap_iterate {
  int outer_k; /* index of the objective used at this step: k0 + k */
  double theta[FSCAP_MAX_DIM];
  double f_value;
  double grad_norm;
  double step_t;
  int backtracks;
  int perturbed;
  int floor_active;
} fscap_iterate;

typedef struct fscap_trace fscap_trace;

fscap_status fscap_run_algorithm1(const fscap_objective* obj,
                                  const fscap_algo_opts* opts, fscap_trace** out);
fscap_status fscap_run_algorithm3(const fscap_objective* obj,
                                  const fscap_algo_opts* opts, fscap_trace** out);
int fscap_trace_size(const fscap_trace* trace);
fscap_status fscap_trace_get(const fscap_trace* trace, int index, fscap_iterate* out);
void fscap_trace_free(fscap_trace* trace);

/* ------------------------------------------------------------------ */
/* Lemma audits and certified bounds                                    */

typedef struct fscap_lemma_report {
  double delta;       /* interior max - boundary max of the proxy objective */
  double y0;
  int k0_checked;
  double cond_a_lhs[2];
  double dist_c_boundary;
  int passed;
  int has_witness;
  double witness[FSCAP_MAX_DIM];
} fscap_lemma_report;

/* proxy_k < 0 uses the default k0 + 40 (clamped to the objective's cost cap). */
fscap_status fscap_verify_lemma1(const fscap_objective* obj, int grid_points,
                                 int proxy_k, fscap_lemma_report* out);
fscap_status fscap_verify_lemma5(const fscap_objective* obj, double b, int grid_points,
                                 int proxy_k, fscap_lemma_report* out);

typedef struct fscap_bound_report {
  double eta;         /* contraction rate witnessed by the run */
  double eta_formula; /* a-priori three-term value at the measured dist_c */
  double gamma_coeff;
  double recursion_bound;
  double tail;
  double lower;
  double upper;
  double delta0;
  int max_backtracks_seen;
} fscap_bound_report;

/* delta0 <= 0 selects the always-valid default 2M. */
fscap_status fscap_certified_bound(const fscap_trace* trace, const fscap_objective* obj,
                                   double alpha, double beta, double dist_c,
                                   double delta0, fscap_bound_report* out);

/* ------------------------------------------------------------------ */
/* Markov / entropy primitives                                          */

typedef struct fscap_hmm fscap_hmm;

/* trans: n_hidden x n_hidden row-major; emit: n_hidden x n_obs; init: length
 * n_hidden or NULL for the stationary distribution of trans. */
fscap_hmm* fscap_hmm_create(int n_hidden, int n_obs, const double* trans,
                            const double* emit, const double* init);
void fscap_hmm_free(fscap_hmm* hmm);

/* H(Y_n | Y_1^{n-1}) in nats. n_max caps the depth (0 -> default 22). */
fscap_status fscap_conditional_entropy_forward(const fscap_hmm* hmm, int n, int n_max,
                                               double* out);
/* Same quantity by explicit hidden-path summation; n <= 8. */
fscap_status fscap_conditional_entropy_bruteforce(const fscap_hmm* hmm, int n,
                                                  double* out);

fscap_status fscap_binary_entropy(double p, double* out);
/* p: s x s row-major transition matrix; pi_out: length s. */
fscap_status fscap_stationary_distribution(const double* p, int s, double* pi_out);
/* a: s x s row-major non-negative irreducible matrix; out: ln(lambda_max). */
fscap_status fscap_perron_log_eigenvalue(const double* a, int s, double* out);
/* word: 0/1 string of length 2..6. adjacency_out must hold 4^(len-1) doubles
 * (the matrix is (2^(len-1)) x (2^(len-1)) at most); size_out gets the state
 * count. */
fscap_status fscap_forbidden_word_adjacency(const char* word, double* adjacency_out,
                                            int* size_out);

/* ------------------------------------------------------------------ */
/* Birch lower bounds                                                   */

/* H(Y_6|Y_5,Y_4,Y_3,X_2,X_1) - H(eps) for the second-order RLL input chain. */
fscap_status fscap_birch_bound_bec(double p, double q, double epsilon, double* out);
/* H(Y_4|Y_3,X_2,X_1) for the first-order input chain of the noiseless channel. */
fscap_status fscap_birch_bound_noiseless(double p, double q, double* out);

#ifdef __cplusplus
}
#endif

#endif /* FSCAP_H */
