#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <array>
#include <cmath>
#include <map>

#include "bec.hpp"
#include "generic_fsc.hpp"
#include "gilbert_elliott.hpp"
#include "hidden_markov.hpp"
#include "markov.hpp"
#include "noiseless.hpp"

using namespace fscap;

namespace {

GilbertElliott reference_ge() {
  Eigen::MatrixXd p(2, 2);
  p << 0.7, 0.3, 0.3, 0.7;
  return GilbertElliott(MarkovChain(p), {0.01, 0.1});
}

// BEC output process as a hidden Markov source over {erased, 1, 2}: an
// independent oracle for the series formula, I = H(Y) - H(eps).
double bec_mutual_information_oracle(double theta, double eps, int depth) {
  Eigen::MatrixXd px(2, 2);
  px << 1.0 - theta, theta, 1.0, 0.0;
  Eigen::MatrixXd emit(2, 3);
  emit << eps, 1.0 - eps, 0.0,
          eps, 0.0, 1.0 - eps;
  Eigen::Vector2d init(1.0 / (1.0 + theta), theta / (1.0 + theta));
  HiddenMarkovSource y(MarkovChain(px), emit, init, true);
  return conditional_entropy_forward(y, depth) - binary_entropy(eps);
}

// First-order analogue of the second-order Birch enumeration, used as the
// collapse oracle for p = q.
double birch_bec_first_order(double p, double eps) {
  Eigen::MatrixXd chain(2, 2);
  chain << p, 1.0 - p, 1.0, 0.0;
  Eigen::VectorXd pi = stationary_distribution(MarkovChain(chain));
  std::map<std::array<int, 6>, double> joint;
  std::map<std::array<int, 5>, double> prefix;
  for (int x1 = 0; x1 < 2; ++x1) {
    for (int x2 = 0; x2 < 2; ++x2) {
      double p2 = pi(x1) * chain(x1, x2);
      if (p2 <= 0.0) continue;
      for (int x3 = 0; x3 < 2; ++x3) {
        for (int x4 = 0; x4 < 2; ++x4) {
          for (int x5 = 0; x5 < 2; ++x5) {
            for (int x6 = 0; x6 < 2; ++x6) {
              double px = p2 * chain(x2, x3) * chain(x3, x4) * chain(x4, x5) *
                          chain(x5, x6);
              if (px <= 0.0) continue;
              int xs[4] = {x3 + 1, x4 + 1, x5 + 1, x6 + 1};  // alphabet {1,2}
              for (int e = 0; e < 16; ++e) {
                double pe = 1.0;
                std::array<int, 6> key{x1, x2, 0, 0, 0, 0};
                for (int t = 0; t < 4; ++t) {
                  bool erased = ((e >> t) & 1) == 0;
                  pe *= erased ? eps : 1.0 - eps;
                  key[2 + t] = erased ? 0 : xs[t];
                }
                joint[key] += px * pe;
                prefix[{key[0], key[1], key[2], key[3], key[4]}] += px * pe;
              }
            }
          }
        }
      }
    }
  }
  double h = 0.0;
  for (const auto& [key, pj] : joint) {
    if (pj <= 0.0) continue;
    h += pj * std::log(prefix.at({key[0], key[1], key[2], key[3], key[4]}) / pj);
  }
  return h - binary_entropy(eps);
}

}  // namespace

TEST_CASE("bec_fk reference values") {
  BecRllChannel ch{0.1};
  SUBCASE("deterministic input gives zero") {
    CHECK(bec_fk(ch, 0.0, 0) == 0.0);
    CHECK(bec_fk(ch, 0.0, 50) == 0.0);
    CHECK(bec_fk(ch, 1.0, 50) == doctest::Approx(0.0).epsilon(1e-15));
  }
  SUBCASE("f_0 = f_1 = 0.81 ln2 / 1.5 at theta = 0.5") {
    double expected = 0.81 * std::log(2.0) / 1.5;
    CHECK(bec_fk(ch, 0.5, 0) == doctest::Approx(expected).epsilon(1e-14));
    CHECK(bec_fk(ch, 0.5, 1) == bec_fk(ch, 0.5, 0));
  }
  SUBCASE("max of f_100 over [0.25, 0.55]") {
    // Two independent routes (series formula and the hidden-Markov output
    // oracle) agree on 0.4422386; the reference bracket (0.442239, 0.442240)
    // is 4e-7 high. Assert the verified value at the criterion-1 precision.
    double best = -1.0;
    for (int i = 0; i <= 3000; ++i) {
      best = std::max(best, bec_fk(ch, 0.25 + i * 0.3 / 3000.0, 100));
    }
    CHECK(std::abs(best - 0.442239) <= 1e-5);
    CHECK(std::abs(best - 0.4422386) <= 1e-6);
  }
  SUBCASE("series agrees with the hidden-Markov oracle") {
    for (double theta : {0.3, 0.3955, 0.5}) {
      double oracle = bec_mutual_information_oracle(theta, 0.1, 18);
      CHECK(std::abs(bec_fk(ch, theta, 100) - oracle) <= 1e-9);
    }
  }
  SUBCASE("validation") {
    CHECK_THROWS_AS(bec_fk(ch, -0.1, 3), DomainError);
    CHECK_THROWS_AS(bec_fk(ch, 0.5, -1), DomainError);
    CHECK_THROWS_AS(bec_fk(BecRllChannel{1.5}, 0.5, 3), ConfigError);
  }
}

TEST_CASE("bec objective constants and domain readback") {
  ObjectiveSequence seq = bec_objective(BecRllChannel{0.1});
  const auto& c = seq.constants();
  CHECK(c.n_poly[0] == 371.0);
  CHECK(c.n_poly[1] == 0.0);
  CHECK(c.rho == 0.1);
  CHECK(c.big_m == 5.81);
  CHECK(c.small_m.value() == 1.88);
  CHECK(c.k0 == 18);
  CHECK(seq.domain().lower()[0] == 0.2);
  CHECK(seq.domain().upper()[0] == 0.6);
  double v = seq.eval(100, std::vector<double>{0.4});
  CHECK(v > 0.4420);
  CHECK(v < 0.4423);
}

TEST_CASE("bec f_k monotone non-decreasing in k") {
  BecRllChannel ch{0.1};
  for (int i = 0; i < 41; ++i) {
    double theta = 0.2 + i * 0.4 / 40.0;
    double prev = bec_fk(ch, theta, 0);
    for (int k = 1; k <= 60; ++k) {
      double cur = bec_fk(ch, theta, k);
      CHECK(cur >= prev - 1e-15);
      prev = cur;
    }
  }
}

TEST_CASE("bec f_k below the limit (tail proxy)") {
  BecRllChannel ch{0.1};
  const double n = 371.0, rho = 0.1;
  for (int i = 0; i < 41; ++i) {
    double theta = 0.2 + i * 0.4 / 40.0;
    for (int k : {5, 20, 40}) {
      double fk = bec_fk(ch, theta, k);
      double proxy = bec_fk(ch, theta, k + 200) + n * std::pow(rho, k + 1) / (1.0 - rho);
      CHECK(fk <= proxy);
    }
  }
}

TEST_CASE("bec boundary exclusion audit") {
  // max over [0,0.25] u [0.55,1] of H(Y_3|Y_1,Y_2) - H(eps) < 0.414483.
  const double eps = 0.1;
  double worst = -1.0;
  auto check_region = [&](double lo, double hi) {
    for (double theta = lo; theta <= hi + 1e-12; theta += 1e-3) {
      Eigen::MatrixXd px(2, 2);
      px << 1.0 - theta, theta, 1.0, 0.0;
      Eigen::MatrixXd emit(2, 3);
      emit << eps, 1.0 - eps, 0.0,
              eps, 0.0, 1.0 - eps;
      Eigen::Vector2d init(1.0 / (1.0 + theta), theta / (1.0 + theta));
      HiddenMarkovSource y(MarkovChain(px), emit, init, true);
      worst = std::max(worst, conditional_entropy_forward(y, 3) - binary_entropy(eps));
    }
  };
  check_region(0.0, 0.25);
  check_region(0.55, 1.0);
  CHECK(worst < 0.414483);
}

TEST_CASE("birch bound for the bec") {
  SUBCASE("value at the reference parameters") {
    // Verified against an independent flat enumeration; the reference prints
    // 0.442329, which sits 1.8e-6 below the enumerated value.
    double bound = birch_bound_bec(0.597275, 0.614746, 0.1);
    CHECK(bound == doctest::Approx(0.442330788).epsilon(1e-8));
    CHECK(std::abs(bound - 0.442329) < 2e-6);
  }
  SUBCASE("fully erased channel carries no information") {
    CHECK(std::abs(birch_bound_bec(0.597275, 0.614746, 1.0 - 1e-6)) <= 1e-5);
  }
  SUBCASE("p = q collapses to the first-order computation") {
    for (double p : {0.3, 0.55, 0.8}) {
      CHECK(birch_bound_bec(p, p, 0.1) ==
            doctest::Approx(birch_bec_first_order(p, 0.1)).epsilon(1e-12));
    }
  }
}

TEST_CASE("noiseless_fk reference values") {
  SUBCASE("l = 0 term at theta = 0.5") {
    double expected = -0.25 * 0.5 * std::log(0.5);
    CHECK(noiseless_fk(0.5, 0) == doctest::Approx(expected).epsilon(1e-14));
    CHECK(noiseless_fk(0.5, 0) == doctest::Approx(0.0866434).epsilon(1e-6));
  }
  SUBCASE("reference endpoint value") {
    CHECK(noiseless_fk(0.6257911, 450) == doctest::Approx(0.4292892).epsilon(1e-6));
  }
  SUBCASE("cross-check against the hidden-Markov entropy rate") {
    // 4-state hidden chain (X_{n-1}, X_n) with deterministic emission
    // y = 1 iff the block is 00.
    double theta = 0.5;
    Eigen::MatrixXd blocks(4, 4);
    blocks << theta, 1 - theta, 0, 0,
              0, 0, theta, 1 - theta,
              theta, 1 - theta, 0, 0,
              0, 0, theta, 1 - theta;
    Eigen::MatrixXd emit(4, 2);
    emit << 0, 1,
            1, 0,
            1, 0,
            1, 0;
    HiddenMarkovSource y{MarkovChain(blocks), emit};
    double rate = conditional_entropy_forward(y, 18);
    CHECK(std::abs(noiseless_fk(theta, 400) - rate) <= 2e-3);
  }
  SUBCASE("validation") {
    CHECK_THROWS_AS(noiseless_fk(-0.2, 3), DomainError);
    CHECK_THROWS_AS(noiseless_fk(0.5, -1), DomainError);
  }
}

TEST_CASE("noiseless objective constants readback") {
  ObjectiveSequence seq = noiseless_objective();
  const auto& c = seq.constants();
  CHECK(c.n_poly[0] == 46587.2);
  CHECK(c.n_poly[1] == 6207.73);
  CHECK(c.n_poly[2] == 374.945);
  CHECK(c.n_at(0) == 46587.2);
  CHECK(c.rho == 0.875);
  CHECK(c.big_m == 10.37);
  CHECK(c.small_m.value() == 1.2);
  CHECK(c.k0 == 120);
  CHECK(seq.domain().lower()[0] == 0.4);
  CHECK(seq.domain().upper()[0] == 0.9);
}

TEST_CASE("birch bound for the noiseless channel") {
  SUBCASE("reference value") {
    CHECK(birch_bound_noiseless(0.674521, 0.595176) ==
          doctest::Approx(0.513259).epsilon(1e-6));
  }
  SUBCASE("non-negative everywhere sampled") {
    for (double p : {0.2, 0.5, 0.9}) {
      for (double q : {0.2, 0.5, 0.9}) {
        CHECK(birch_bound_noiseless(p, q) >= 0.0);
      }
    }
  }
  SUBCASE("deterministic input gives ~0") {
    CHECK(birch_bound_noiseless(1.0 - 1e-9, 1.0 - 1e-9) ==
          doctest::Approx(0.0).epsilon(1e-6));
  }
}

TEST_CASE("gilbert-elliott objective") {
  GilbertElliott ge = reference_ge();
  SUBCASE("degenerate input: Y equals E so f vanishes") {
    for (int k : {1, 4, 9}) {
      CHECK(ge_fk(ge, 0.0, k) == doctest::Approx(0.0).epsilon(1e-12));
    }
  }
  SUBCASE("reference table endpoints") {
    CHECK(ge_fk(ge, 0.423653, 16) == doctest::Approx(0.350289).epsilon(1e-5));
    CHECK(ge_fk(ge, 0.28824, 7) == doctest::Approx(0.327527).epsilon(1e-5));
  }
  SUBCASE("error-process entropy never consumes theta") {
    HiddenMarkovSource e1 = ge_error_source(ge);
    HiddenMarkovSource e2 = ge_error_source(ge);
    for (int n : {1, 5, 9}) {
      CHECK(conditional_entropy_forward(e1, n) == conditional_entropy_forward(e2, n));
    }
    // f at two thetas differs only through the Y part: reconstruct H(E...)
    // from both and compare bitwise.
    int n = 8;
    double he1 = conditional_entropy_forward(ge_output_source(ge, 0.3), n) -
                 ge_fk(ge, 0.3, n);
    double he2 = conditional_entropy_forward(ge_output_source(ge, 0.7), n) -
                 ge_fk(ge, 0.7, n);
    CHECK(he1 == he2);
  }
  SUBCASE("objective values lie in [0, ln 2]") {
    for (int i = 0; i <= 10; ++i) {
      double theta = 0.05 + i * 0.09;
      double v = ge_fk(ge, theta, 8);
      CHECK(v >= -1e-12);
      CHECK(v <= std::log(2.0));
    }
  }
  SUBCASE("cost cap propagates") {
    ObjectiveSequence seq = ge_objective(ge);
    CHECK_THROWS_AS(seq.eval(23, std::vector<double>{0.3}), CostError);
  }
  SUBCASE("reference channel carries calibrated constants") {
    ObjectiveSequence seq = ge_objective(ge);
    CHECK(seq.constants().n_poly[0] == 7.0);
    CHECK(seq.constants().rho == 0.11);
    CHECK(seq.constants().k0 == 6);
    CHECK_FALSE(seq.constants().small_m.has_value());
    CHECK(seq.domain().lower()[0] == 0.05);
    CHECK(seq.domain().upper()[0] == 0.95);
  }
  SUBCASE("non-reference channel falls back to the fit recipe") {
    Eigen::MatrixXd p(2, 2);
    p << 0.8, 0.2, 0.2, 0.8;
    GilbertElliott other(MarkovChain(p), {0.02, 0.15});
    ObjectiveSequence seq = ge_objective(other);
    CHECK(seq.constants().rho > 0.0);
    CHECK(seq.constants().rho < 1.0);
    CHECK(seq.constants().n_poly[0] > 0.0);
    CHECK(seq.constants().n_poly[0] != 7.0);
  }
}

TEST_CASE("generic finite-state channel") {
  SUBCASE("memoryless near-identity channel reduces to the input entropy") {
    const double leak = 1e-9;
    GenericFsc fsc;
    fsc.nx = 2;
    fsc.ns = 1;
    fsc.ny = 2;
    fsc.input_param = [](std::span<const double>) {
      Eigen::MatrixXd m(2, 2);
      m << 0.5, 0.5, 0.5, 0.5;
      return m;
    };
    fsc.state_kernel = Eigen::MatrixXd::Ones(2, 1);
    fsc.emission = Eigen::MatrixXd(2, 2);
    fsc.emission << 1.0 - leak, leak, leak, 1.0 - leak;
    for (int k : {1, 3, 5}) {
      CHECK(generic_fsc_fk(fsc, std::vector<double>{0.5}, k) ==
            doctest::Approx(std::log(2.0)).epsilon(1e-6));
    }
  }
  SUBCASE("GE expressed as a generic FSC agrees with the direct objective") {
    GilbertElliott ge = reference_ge();
    GenericFsc fsc;
    fsc.nx = 2;
    fsc.ns = 2;
    fsc.ny = 2;
    fsc.input_param = [](std::span<const double> th) { return rll_input_matrix(th[0]); };
    fsc.state_kernel = Eigen::MatrixXd(4, 2);
    fsc.emission = Eigen::MatrixXd(4, 2);
    for (int x = 0; x < 2; ++x) {
      for (int s = 0; s < 2; ++s) {
        for (int sn = 0; sn < 2; ++sn) {
          fsc.state_kernel(x * 2 + s, sn) = ge.state_chain.matrix()(s, sn);
        }
        double cross = ge.crossover[s];
        fsc.emission(x * 2 + s, x) = 1.0 - cross;
        fsc.emission(x * 2 + s, 1 - x) = cross;
      }
    }
    double direct = ge_fk(ge, 0.4, 6);
    double generic = generic_fsc_fk(fsc, std::vector<double>{0.4}, 6);
    CHECK(std::abs(direct - generic) <= 2e-2);
  }
  SUBCASE("deterministic input keeps f_k non-negative") {
    GenericFsc fsc;
    fsc.nx = 2;
    fsc.ns = 1;
    fsc.ny = 2;
    fsc.input_param = [](std::span<const double>) {
      Eigen::MatrixXd m(2, 2);
      m << 1.0 - 1e-9, 1e-9, 1.0 - 1e-9, 1e-9;
      return m;
    };
    fsc.state_kernel = Eigen::MatrixXd::Ones(2, 1);
    fsc.emission = Eigen::MatrixXd(2, 2);
    fsc.emission << 0.9, 0.1, 0.2, 0.8;
    for (int k : {1, 4}) {
      CHECK(generic_fsc_fk(fsc, std::vector<double>{0.0}, k) >= -1e-12);
    }
  }
  SUBCASE("cost cap and validation") {
    GenericFsc fsc;
    fsc.nx = 2;
    fsc.ns = 1;
    fsc.ny = 2;
    fsc.input_param = [](std::span<const double>) {
      Eigen::MatrixXd m(2, 2);
      m << 0.5, 0.5, 0.5, 0.5;
      return m;
    };
    fsc.state_kernel = Eigen::MatrixXd::Ones(2, 1);
    fsc.emission = Eigen::MatrixXd(2, 2);
    fsc.emission << 0.9, 0.1, 0.2, 0.8;
    CHECK_THROWS_AS(generic_fsc_fk(fsc, std::vector<double>{0.5}, 11), CostError);
    fsc.emission(0, 0) = 1.0;
    fsc.emission(0, 1) = 0.0;  // violates strict positivity
    CHECK_THROWS_AS(generic_fsc_fk(fsc, std::vector<double>{0.5}, 2), DomainError);
  }
}
