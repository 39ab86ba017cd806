#pragma once

#include <Eigen/Dense>
#include <string>

#include "errors.hpp"

namespace fscap {

// ln(lambda_max) of a non-negative irreducible matrix (size <= 64), by power
// iteration from the all-ones vector, iterated until successive Rayleigh
// quotients differ by < 1e-13.
double perron_log_eigenvalue(const Eigen::MatrixXd& a);

// Adjacency matrix of the (L-1)-block presentation of the binary shift with
// the single forbidden word `word` (a 0/1 string, 2 <= L <= 6). States are
// the (L-1)-blocks not containing the word, in lexicographic order; u -> v
// iff u and v overlap in L-2 symbols and the merged L-block differs from the
// word.
Eigen::MatrixXd build_forbidden_word_adjacency(const std::string& word);

}  // namespace fscap
