// Scratch experiment driver used during development; not installed.
#include <cstdio>
#include <cstring>
#include <map>
#include <array>

#include "bec.hpp"
#include "gilbert_elliott.hpp"
#include "hidden_markov.hpp"
#include "markov.hpp"
#include "noiseless.hpp"
#include "optimizer.hpp"
#include "perron.hpp"

using namespace fscap;

static GilbertElliott paper_ge() {
  Eigen::MatrixXd ps(2, 2);
  ps << 0.7, 0.3, 0.3, 0.7;
  return GilbertElliott(MarkovChain(ps), {0.01, 0.1});
}

int main(int argc, char** argv) {
  if (argc < 2) return 1;

  if (!std::strcmp(argv[1], "paper-values")) {
    // Spot-check closed-form paper values.
    BecRllChannel bec{0.1};
    std::printf("bec f_0(0.5)        = %.7f (expect 0.3742993)\n", bec_fk(bec, 0.5, 0));
    double best = -1, best_theta = 0;
    for (int i = 0; i <= 3000; ++i) {
      double th = 0.25 + i * (0.30 / 3000.0);
      double v = bec_fk(bec, th, 100);
      if (v > best) { best = v; best_theta = th; }
    }
    std::printf("bec max f_100       = %.7f at %.5f (expect in (0.442239,0.442240))\n",
                best, best_theta);
    std::printf("noiseless f_0(0.5)  = %.7f (expect 0.0866434)\n", noiseless_fk(0.5, 0));
    std::printf("noiseless f_450     = %.7f (expect 0.4292892)\n",
                noiseless_fk(0.6257911, 450));
    std::printf("perron 101          = %.6f (expect 0.562399)\n",
                perron_log_eigenvalue(build_forbidden_word_adjacency("101")));
    std::printf("birch bec           = %.6f (expect 0.442329)\n",
                birch_bound_bec(0.597275, 0.614746, 0.1));
    std::printf("birch noiseless     = %.6f (expect 0.513259)\n",
                birch_bound_noiseless(0.674521, 0.595176));
    GilbertElliott ge = paper_ge();
    std::printf("ge f_16(0.423653)   = %.6f (expect 0.350289)\n",
                ge_fk(ge, 0.423653, 16));
    std::printf("ge f_7(0.28824)     = %.6f (expect 0.327527)\n", ge_fk(ge, 0.28824, 7));
    return 0;
  }

  if (!std::strcmp(argv[1], "ge-fit")) {
    GilbertElliott ge = paper_ge();
    double prev = ge_fk(ge, 0.3, 3);
    for (int k = 4; k <= 16; ++k) {
      double cur = ge_fk(ge, 0.3, k);
      std::printf("k=%2d f=%.12f diff=%.6e\n", k, cur, std::abs(cur - prev));
      prev = cur;
    }
    ObjectiveSequence seq = ge_objective(ge);
    std::printf("fitted N=%.6f rho=%.6f\n", seq.constants().n_poly[0],
                seq.constants().rho);
    return 0;
  }

  if (!std::strcmp(argv[1], "ge-grad")) {
    GilbertElliott ge = paper_ge();
    ObjectiveSequence seq = ge_objective(ge);
    for (double th : {0.2, 0.25, 0.3, 0.35, 0.4, 0.42}) {
      std::vector<double> p{th};
      for (int k : {1, 4, 7, 16}) {
        auto g = seq.gradient(k, p);
        std::printf("grad f_%d(%.3f) = %.6f   ", k, th, g[0]);
      }
      std::printf("\n");
    }
    return 0;
  }

  if (!std::strcmp(argv[1], "ge-run")) {
    // args: alpha beta b Nmult rho(<=0 -> fitted) k0
    double alpha = argc > 2 ? atof(argv[2]) : 0.4;
    double beta = argc > 3 ? atof(argv[3]) : 0.9;
    double b = argc > 4 ? atof(argv[4]) : 0.5;
    double nmult = argc > 5 ? atof(argv[5]) : 1.0;
    double rho_in = argc > 6 ? atof(argv[6]) : 0.0;
    int k0 = argc > 7 ? atoi(argv[7]) : 0;
    GilbertElliott ge = paper_ge();
    ObjectiveSequence seq = ge_objective(ge);
    SequenceConstants c = seq.constants();
    std::printf("fitted N=%.4f rho=%.6f -> ", c.n_poly[0], c.rho);
    c.n_poly[0] *= nmult;
    if (rho_in > 0) c.rho = rho_in;
    c.k0 = k0;
    std::printf("using N=%.4f rho=%.6f k0=%d alpha=%.3f beta=%.3f b=%.3f\n",
                c.n_poly[0], c.rho, c.k0, alpha, beta, b);
    seq.set_constants(c);

    Algo3Config cfg;
    cfg.base.alpha = alpha;
    cfg.base.beta = beta;
    cfg.base.theta0 = {0.2};
    cfg.base.outer_iters = 16;
    cfg.b = b;
    try {
      auto trace = run_algorithm3(seq, cfg);
      for (const auto& r : trace) {
        std::printf("k=%2d theta=%.6f grad=%.6g f=%.6f t=%.6g bt=%d floor=%d\n",
                    r.outer_k, r.theta[0], r.grad_norm, r.f_value, r.step_t,
                    r.backtracks, r.floor_active);
      }
    } catch (const BacktrackError& e) {
      std::printf("backtracking exhausted: %s\n", e.what());
      for (const auto& r : e.partial_trace) {
        std::printf("k=%2d theta=%.6f grad=%.6g f=%.6f t=%.6g bt=%d\n", r.outer_k,
                    r.theta[0], r.grad_norm, r.f_value, r.step_t, r.backtracks);
      }
    } catch (const Error& e) {
      std::printf("error: %s\n", e.what());
    }
    return 0;
  }

  if (!std::strcmp(argv[1], "bec-oracle")) {
    // Independent check of bec_fk via the hidden-Markov output process:
    // I(X;Y) = H(Y) - H(eps), H(Y) ~= H(Y_n | Y_1^{n-1}).
    const double eps = 0.1;
    BecRllChannel bec{eps};
    for (double th : {0.3, 0.3955, 0.395485, 0.45}) {
      Eigen::MatrixXd px(2, 2);
      px << 1.0 - th, th, 1.0, 0.0;
      Eigen::MatrixXd emit(2, 3);  // outputs {erased, 1, 2}
      emit << eps, 1.0 - eps, 0.0,
              eps, 0.0, 1.0 - eps;
      Eigen::Vector2d init(1.0 / (1.0 + th), th / (1.0 + th));
      HiddenMarkovSource y(MarkovChain(px), emit, init, true);
      double h18 = conditional_entropy_forward(y, 18);
      double h17 = conditional_entropy_forward(y, 17);
      double i_oracle = h18 - binary_entropy(eps);
      std::printf("theta=%.6f f_100=%.9f oracle=%.9f (conv %.2e)\n", th,
                  bec_fk(bec, th, 100), i_oracle, std::abs(h18 - h17));
    }
    double best = -1, best_theta = 0;
    for (int i = 0; i <= 30000; ++i) {
      double th = 0.25 + i * (0.30 / 30000.0);
      double v = bec_fk(bec, th, 100);
      if (v > best) { best = v; best_theta = th; }
    }
    std::printf("max f_100 over [0.25,0.55] = %.9f at theta=%.6f\n", best, best_theta);
    return 0;
  }

  if (!std::strcmp(argv[1], "birch-check")) {
    // Independent enumeration of H(Y_6|Y_5,Y_4,Y_3,X_2,X_1) - H(eps): walk
    // x_1^6 from the stationary block distribution and average the erasure
    // patterns in a different slicing (per-x-path conditional sums).
    double p = 0.597275, q = 0.614746, eps = 0.1;
    Eigen::MatrixXd blocks(3, 3);
    blocks << p, 1 - p, 0, 0, 0, 1, q, 1 - q, 0;
    Eigen::VectorXd pi = stationary_distribution(MarkovChain(blocks));
    int second_of[3] = {1, 2, 1};
    int first_of[3] = {1, 1, 2};
    // joint over (x1,x2 block, y3..y6), y in {0,1,2}
    std::map<std::array<int, 6>, double> joint;
    for (int z2 = 0; z2 < 3; ++z2) {
      for (int z3 = 0; z3 < 3; ++z3) {
        if (blocks(z2, z3) <= 0) continue;
        for (int z4 = 0; z4 < 3; ++z4) {
          if (blocks(z3, z4) <= 0) continue;
          for (int z5 = 0; z5 < 3; ++z5) {
            if (blocks(z4, z5) <= 0) continue;
            for (int z6 = 0; z6 < 3; ++z6) {
              if (blocks(z5, z6) <= 0) continue;
              double px = pi(z2) * blocks(z2, z3) * blocks(z3, z4) * blocks(z4, z5) *
                          blocks(z5, z6);
              int xs[4] = {second_of[z3], second_of[z4], second_of[z5], second_of[z6]};
              for (int e = 0; e < 16; ++e) {
                double pe = 1;
                std::array<int, 6> key{};
                key[0] = z2;
                key[1] = 0;
                for (int t = 0; t < 4; ++t) {
                  bool erased = ((e >> t) & 1) == 0;
                  pe *= erased ? eps : 1 - eps;
                  key[2 + t] = erased ? 0 : xs[t];
                }
                joint[key] += px * pe;
              }
            }
          }
        }
      }
    }
    std::map<std::array<int, 5>, double> pre;
    for (auto& [k, v] : joint) pre[{k[0], k[1], k[2], k[3], k[4]}] += v;
    double h = 0, total = 0;
    for (auto& [k, v] : joint) {
      total += v;
      if (v > 0) h += v * std::log(pre.at({k[0], k[1], k[2], k[3], k[4]}) / v);
    }
    std::printf("independent H=%.9f total=%.12f bound=%.9f\n", h, total,
                h - binary_entropy(eps));
    std::printf("birch_bound_bec = %.9f\n", birch_bound_bec(p, q, eps));
    // scan around (p,q) for the value 0.442329
    for (double dp = -0.02; dp <= 0.02; dp += 0.005) {
      std::printf("p=%.6f: ", p + dp);
      for (double dq = -0.02; dq <= 0.02; dq += 0.005)
        std::printf("%.6f ", birch_bound_bec(p + dp, q + dq, eps));
      std::printf("\n");
    }
    return 0;
  }

  if (!std::strcmp(argv[1], "ge-search")) {
    // Scan (A, rho) with N = A*(1-b)/2, b = 0.5, k0 = 6, alpha = 0.4, beta = 0.5.
    static const double table_theta[10] = {0.28824, 0.378401, 0.404626, 0.415306,
                                           0.417635, 0.421001, 0.422514, 0.4232,
                                           0.423511, 0.423653};
    static const double table_f[10] = {0.327527, 0.347958, 0.349884, 0.350211,
                                       0.350248, 0.350281, 0.350288, 0.350289,
                                       0.350289, 0.350289};
    GilbertElliott ge = paper_ge();
    double a_lo = argc > 2 ? atof(argv[2]) : 44.0;
    double a_hi = argc > 3 ? atof(argv[3]) : 54.0;
    double r_lo = argc > 4 ? atof(argv[4]) : 0.086;
    double r_hi = argc > 5 ? atof(argv[5]) : 0.102;
    int na = argc > 6 ? atoi(argv[6]) : 21;
    int nr = argc > 7 ? atoi(argv[7]) : 17;
    for (int ia = 0; ia < na; ++ia) {
      double A = a_lo + ia * (a_hi - a_lo) / (na - 1);
      for (int ir = 0; ir < nr; ++ir) {
        double rho = r_lo + ir * (r_hi - r_lo) / (nr - 1);
        SequenceConstants c;
        c.n_poly = {A / 4.0, 0.0, 0.0};
        c.rho = rho;
        c.big_m = 4.0;
        c.k0 = 6;
        ObjectiveSequence seq = ge_objective(ge, c, ParamDomain({0.05}, {0.95}));
        Algo3Config cfg;
        cfg.base.alpha = 0.4;
        cfg.base.beta = 0.5;
        cfg.base.theta0 = {0.2};
        cfg.base.outer_iters = 10;
        cfg.b = 0.5;
        double worst_theta = 1e9, worst_f = 1e9;
        try {
          auto trace = run_algorithm3(seq, cfg);
          worst_theta = 0.0;
          worst_f = 0.0;
          for (int i = 0; i < 10; ++i) {
            worst_theta = std::max(worst_theta,
                                   std::abs(trace[i].theta[0] - table_theta[i]));
            worst_f = std::max(worst_f, std::abs(trace[i].f_value - table_f[i]));
          }
        } catch (const Error&) {
        }
        if (worst_theta < 5e-4 && worst_f < 1e-5) {
          std::printf("MATCH  A=%.3f rho=%.5f  worst_dtheta=%.2e worst_df=%.2e\n", A,
                      rho, worst_theta, worst_f);
        } else if (worst_theta < 5e-3) {
          std::printf("close  A=%.3f rho=%.5f  worst_dtheta=%.2e worst_df=%.2e\n", A,
                      rho, worst_theta, worst_f);
        }
      }
    }
    return 0;
  }

  if (!std::strcmp(argv[1], "bec-run")) {
    BecRllChannel bec{0.1};
    ObjectiveSequence seq = bec_objective(bec);
    Algo1Config cfg;
    cfg.alpha = 0.4;
    cfg.beta = 0.9;
    cfg.theta0 = {0.5};
    cfg.outer_iters = 110;
    auto trace = run_algorithm1(seq, cfg);
    const auto& last = trace.back();
    int btmax = 0, btmax_moving = 0;
    std::vector<double> prev = cfg.theta0;
    for (const auto& r : trace) {
      btmax = std::max(btmax, r.backtracks);
      if (r.theta != prev) btmax_moving = std::max(btmax_moving, r.backtracks);
      prev = r.theta;
    }
    std::printf("theta_110=%.6f f=%.7f (expect 0.395485 / 0.442239) btmax=%d moving=%d\n",
                last.theta[0], last.f_value, btmax, btmax_moving);
    for (const auto& r : trace) {
      if (r.backtracks > 17)
        std::printf("  k=%3d theta=%.12f grad=%.3e t=%.3e bt=%d\n", r.outer_k,
                    r.theta[0], r.grad_norm, r.step_t, r.backtracks);
    }
    return 0;
  }

  if (!std::strcmp(argv[1], "noiseless-run")) {
    ObjectiveSequence seq = noiseless_objective();
    Algo1Config cfg;
    cfg.alpha = 0.4;
    cfg.beta = 0.9;
    cfg.theta0 = {0.5};
    cfg.outer_iters = 450;
    auto trace = run_algorithm1(seq, cfg);
    const auto& last = trace.back();
    int btmax = 0;
    for (const auto& r : trace) btmax = std::max(btmax, r.backtracks);
    std::printf("theta_450=%.7f f=%.7f (expect 0.6257911 / 0.4292892) btmax=%d\n",
                last.theta[0], last.f_value, btmax);
    for (const auto& r : trace) {
      if (r.backtracks > 25 || r.outer_k <= 4 || r.perturbed) {
        std::printf("  k=%3d theta=%.9f grad=%.3e t=%.3e bt=%d pert=%d\n", r.outer_k,
                    r.theta[0], r.grad_norm, r.step_t, r.backtracks, r.perturbed);
      }
    }
    return 0;
  }

  std::fprintf(stderr, "unknown experiment %s\n", argv[1]);
  return 1;
}
