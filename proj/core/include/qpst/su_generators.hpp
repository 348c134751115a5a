#pragma once

#include <cstddef>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "qpst/tensor_core.hpp"

namespace qpst {

// Level indices k, j, r are 1-based at this API, as in the usual SU(d)
// construction; |k><j| lives at 0-based (k-1, j-1).

// |k><j| as a d x d matrix.
CMatrix projector(std::size_t k, std::size_t j, std::size_t d);

// P^{k,j} + P^{j,k}, 1 <= k < j <= d.
CMatrix theta(std::size_t k, std::size_t j, std::size_t d);

// -i (P^{k,j} - P^{j,k}), 1 <= k < j <= d.
CMatrix beta(std::size_t k, std::size_t j, std::size_t d);

// sqrt(2 / (r (r+1))) [ sum_{j<=r} P^{j,j} - r P^{r+1,r+1} ], 1 <= r <= d-1.
CMatrix eta(std::size_t r, std::size_t d);

struct NamedGenerator {
  std::string name;
  CMatrix matrix;
};

struct GeneratorSet {
  using LevelPair = std::pair<std::size_t, std::size_t>;

  std::size_t d = 0;
  std::map<LevelPair, CMatrix> theta;
  std::map<LevelPair, CMatrix> beta;
  std::vector<CMatrix> eta;  // eta[r - 1]

  std::size_t size() const noexcept { return theta.size() + beta.size() + eta.size(); }

  // Generalized Gell-Mann ordering: for j = 2..d, the pairs (k, j) for
  // k < j as theta then beta, followed by eta(j - 1). Gives the Pauli
  // order for d = 2 and lambda_1..lambda_8 for d = 3.
  std::vector<NamedGenerator> ordered() const;
};

GeneratorSet generator_set(std::size_t d);

}  // namespace qpst
