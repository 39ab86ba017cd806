#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "hidden_markov.hpp"
#include "markov.hpp"
#include "perron.hpp"

using namespace fscap;

namespace {

Eigen::MatrixXd random_stochastic(std::mt19937& rng, int rows, int cols) {
  std::uniform_real_distribution<double> uni(0.05, 1.0);
  Eigen::MatrixXd m(rows, cols);
  for (int i = 0; i < rows; ++i) {
    double sum = 0.0;
    for (int j = 0; j < cols; ++j) {
      m(i, j) = uni(rng);
      sum += m(i, j);
    }
    for (int j = 0; j < cols; ++j) m(i, j) /= sum;
  }
  return m;
}

HiddenMarkovSource ge_error_process() {
  Eigen::MatrixXd p(2, 2);
  p << 0.7, 0.3, 0.3, 0.7;
  Eigen::MatrixXd emit(2, 2);
  emit << 0.99, 0.01, 0.9, 0.1;
  return HiddenMarkovSource(MarkovChain(p), emit);
}

HiddenMarkovSource fair_coin() {
  Eigen::MatrixXd p(1, 1);
  p << 1.0;
  Eigen::MatrixXd emit(1, 2);
  emit << 0.5, 0.5;
  return HiddenMarkovSource(MarkovChain(p), emit);
}

}  // namespace

TEST_CASE("binary entropy reference points") {
  CHECK(binary_entropy(0.5) == doctest::Approx(std::log(2.0)).epsilon(1e-12));
  CHECK(binary_entropy(0.0) == 0.0);
  CHECK(binary_entropy(1.0) == 0.0);
  double expected = -0.1 * std::log(0.1) - 0.9 * std::log(0.9);
  CHECK(binary_entropy(0.1) == doctest::Approx(expected).epsilon(1e-12));
  CHECK(binary_entropy(0.1) == doctest::Approx(0.3250830).epsilon(1e-6));
}

TEST_CASE("binary entropy domain handling") {
  CHECK(binary_entropy(-5e-13) == 0.0);     // clamped
  CHECK(binary_entropy(1.0 + 5e-13) == 0.0);
  CHECK_THROWS_AS(binary_entropy(-1e-6), DomainError);
  CHECK_THROWS_AS(binary_entropy(1.001), DomainError);
}

TEST_CASE("markov chain validation") {
  Eigen::MatrixXd bad(2, 2);
  bad << 0.5, 0.4, 0.3, 0.7;
  CHECK_THROWS_AS(MarkovChain{bad}, DomainError);
  bad << 1.1, -0.1, 0.3, 0.7;
  CHECK_THROWS_AS(MarkovChain{bad}, DomainError);
}

TEST_CASE("stationary distribution") {
  SUBCASE("symmetric chain") {
    Eigen::MatrixXd p(2, 2);
    p << 0.7, 0.3, 0.3, 0.7;
    Eigen::VectorXd pi = stationary_distribution(MarkovChain(p));
    CHECK(pi(0) == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(pi(1) == doctest::Approx(0.5).epsilon(1e-12));
  }
  SUBCASE("RLL input chain at theta = 0.4") {
    // Closed form (1/(1+theta), theta/(1+theta)).
    Eigen::MatrixXd p(2, 2);
    p << 0.6, 0.4, 1.0, 0.0;
    Eigen::VectorXd pi = stationary_distribution(MarkovChain(p));
    CHECK(pi(0) == doctest::Approx(1.0 / 1.4).epsilon(1e-12));
    CHECK(pi(1) == doctest::Approx(0.4 / 1.4).epsilon(1e-12));
  }
  SUBCASE("reducible chain is rejected") {
    CHECK_THROWS_WITH_AS(stationary_distribution(MarkovChain(Eigen::MatrixXd::Identity(2, 2))),
                         doctest::Contains("no unique stationary distribution"),
                         DomainError);
  }
  SUBCASE("residual property on random chains") {
    std::mt19937 rng(7);
    for (int trial = 0; trial < 10; ++trial) {
      int s = 2 + trial % 3;
      MarkovChain chain(random_stochastic(rng, s, s));
      Eigen::VectorXd pi = stationary_distribution(chain);
      double residual =
          (pi.transpose() * chain.matrix() - pi.transpose()).cwiseAbs().maxCoeff();
      CHECK(residual <= 1e-12);
      CHECK(pi.sum() == doctest::Approx(1.0).epsilon(1e-12));
    }
  }
}

TEST_CASE("conditional entropy: reference sources") {
  SUBCASE("fair coin is memoryless uniform") {
    auto src = fair_coin();
    CHECK(conditional_entropy_forward(src, 5) ==
          doctest::Approx(std::log(2.0)).epsilon(1e-12));
    CHECK(conditional_entropy_bruteforce(src, 3) ==
          doctest::Approx(std::log(2.0)).epsilon(1e-12));
  }
  SUBCASE("deterministic emitter has zero entropy") {
    Eigen::MatrixXd p(1, 1);
    p << 1.0;
    Eigen::MatrixXd emit(1, 2);
    emit << 1.0, 0.0;
    HiddenMarkovSource src(MarkovChain(p), emit);
    for (int n : {1, 3, 5}) {
      CHECK(conditional_entropy_forward(src, n) == doctest::Approx(0.0).epsilon(1e-15));
    }
    CHECK(conditional_entropy_bruteforce(src, 5) == doctest::Approx(0.0).epsilon(1e-15));
  }
  SUBCASE("GE error process at n = 1") {
    // P(E_1 = 1) = 0.5*0.01 + 0.5*0.1, then the binary entropy.
    auto src = ge_error_process();
    double expected = binary_entropy(0.055);
    CHECK(conditional_entropy_forward(src, 1) ==
          doctest::Approx(expected).epsilon(1e-12));
    CHECK(conditional_entropy_bruteforce(src, 1) ==
          doctest::Approx(expected).epsilon(1e-12));
    CHECK(expected == doctest::Approx(0.2129885).epsilon(1e-6));
  }
}

TEST_CASE("forward recursion matches the brute-force oracle") {
  std::mt19937 rng(20240811);
  for (int trial = 0; trial < 10; ++trial) {
    int hidden = 2 + trial % 3;
    MarkovChain chain(random_stochastic(rng, hidden, hidden));
    Eigen::MatrixXd emit = random_stochastic(rng, hidden, 2);
    HiddenMarkovSource src(chain, emit);
    for (int n : {1, 2, 4, 6, 8}) {
      double fwd = conditional_entropy_forward(src, n);
      double brute = conditional_entropy_bruteforce(src, n);
      CHECK(std::abs(fwd - brute) <= 1e-12);
    }
  }
}

TEST_CASE("conditional entropy properties") {
  std::mt19937 rng(42);
  for (int trial = 0; trial < 5; ++trial) {
    int hidden = 2 + trial % 3;
    HiddenMarkovSource src(MarkovChain(random_stochastic(rng, hidden, hidden)),
                           random_stochastic(rng, hidden, 2));
    double prev = std::log(2.0) + 1e-12;
    for (int n = 1; n <= 10; ++n) {
      double h = conditional_entropy_forward(src, n);
      CHECK(h >= 0.0);
      CHECK(h <= std::log(2.0) + 1e-12);
      // Conditioning reduces entropy; stationarity makes it monotone in n.
      CHECK(h <= prev + 1e-12);
      prev = h;
    }
  }
}

TEST_CASE("conditional entropy cost caps") {
  auto src = fair_coin();
  CHECK_THROWS_AS(conditional_entropy_forward(src, 23), CostError);
  CHECK_THROWS_AS(conditional_entropy_forward(src, 30, 25), CostError);
  CHECK_NOTHROW(conditional_entropy_forward(src, 23, 23));
  CHECK_THROWS_AS(conditional_entropy_bruteforce(src, 9), CostError);
  CHECK_THROWS_AS(conditional_entropy_forward(src, 0), DomainError);
}

TEST_CASE("hidden markov source validation") {
  Eigen::MatrixXd p(2, 2);
  p << 0.7, 0.3, 0.3, 0.7;
  Eigen::MatrixXd emit(2, 2);
  emit << 0.9, 0.1, 0.2, 0.8;
  SUBCASE("emission rows must be stochastic") {
    Eigen::MatrixXd bad = emit;
    bad(0, 0) = 0.95;
    CHECK_THROWS_AS(HiddenMarkovSource(MarkovChain(p), bad), DomainError);
  }
  SUBCASE("stationary flag is checked") {
    Eigen::VectorXd skew(2);
    skew << 0.9, 0.1;
    CHECK_THROWS_AS(HiddenMarkovSource(MarkovChain(p), emit, skew, true), DomainError);
    CHECK_NOTHROW(HiddenMarkovSource(MarkovChain(p), emit, skew, false));
  }
}

TEST_CASE("perron log eigenvalue") {
  SUBCASE("all-ones 2x2") {
    Eigen::MatrixXd a(2, 2);
    a << 1, 1, 1, 1;
    CHECK(perron_log_eigenvalue(a) == doctest::Approx(std::log(2.0)).epsilon(1e-12));
  }
  SUBCASE("golden-mean shift") {
    Eigen::MatrixXd a(2, 2);
    a << 1, 1, 1, 0;
    double expected = std::log((1.0 + std::sqrt(5.0)) / 2.0);
    CHECK(perron_log_eigenvalue(a) == doctest::Approx(expected).epsilon(1e-12));
    CHECK(perron_log_eigenvalue(a) == doctest::Approx(0.4812118).epsilon(1e-7));
  }
  SUBCASE("reducible matrix is rejected") {
    Eigen::MatrixXd a = Eigen::MatrixXd::Identity(3, 3);
    CHECK_THROWS_WITH_AS(perron_log_eigenvalue(a),
                         doctest::Contains("Perron eigenvalue not unique"), DomainError);
  }
  SUBCASE("row-stochastic matrices have zero log eigenvalue") {
    std::mt19937 rng(3);
    for (int trial = 0; trial < 5; ++trial) {
      Eigen::MatrixXd p = random_stochastic(rng, 3, 3);
      CHECK(std::abs(perron_log_eigenvalue(p)) <= 1e-12);
    }
  }
}

TEST_CASE("forbidden word adjacency") {
  SUBCASE("word 101") {
    Eigen::MatrixXd adj = build_forbidden_word_adjacency("101");
    REQUIRE(adj.rows() == 4);
    // States 00, 01, 10, 11; 10 -> 01 is the single forbidden transition.
    Eigen::MatrixXd expected(4, 4);
    expected << 1, 1, 0, 0,
                0, 0, 1, 1,
                1, 0, 0, 0,
                0, 0, 1, 1;
    CHECK((adj - expected).cwiseAbs().maxCoeff() == 0.0);
    CHECK(perron_log_eigenvalue(adj) == doctest::Approx(0.562399).epsilon(1e-6));
  }
  SUBCASE("word 11 gives the golden mean") {
    Eigen::MatrixXd adj = build_forbidden_word_adjacency("11");
    Eigen::MatrixXd expected(2, 2);
    expected << 1, 1, 1, 0;
    CHECK((adj - expected).cwiseAbs().maxCoeff() == 0.0);
  }
  SUBCASE("input validation") {
    CHECK_THROWS_AS(build_forbidden_word_adjacency("1"), DomainError);
    CHECK_THROWS_AS(build_forbidden_word_adjacency("1010101"), DomainError);
    CHECK_THROWS_AS(build_forbidden_word_adjacency("10a"), DomainError);
  }
}
