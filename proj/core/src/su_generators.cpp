#include "qpst/su_generators.hpp"

#include <cmath>
#include <string>

namespace qpst {

namespace {

void require_levels(std::size_t d) {
  if (d < 2) throw ArgumentError("SU(d) generators need d >= 2, got " + std::to_string(d));
}

void require_ordered_pair(std::size_t k, std::size_t j, std::size_t d, const char* who) {
  require_levels(d);
  if (k < 1 || j > d || k >= j) {
    throw ArgumentError(std::string(who) + ": need 1 <= k < j <= d, got k=" + std::to_string(k) +
                        " j=" + std::to_string(j) + " d=" + std::to_string(d));
  }
}

std::string pair_name(const char* family, std::size_t k, std::size_t j) {
  return std::string(family) + "(" + std::to_string(k) + "," + std::to_string(j) + ")";
}

}  // namespace

CMatrix projector(std::size_t k, std::size_t j, std::size_t d) {
  require_levels(d);
  if (k < 1 || k > d || j < 1 || j > d) {
    throw ArgumentError("projector: levels must lie in [1, d], got k=" + std::to_string(k) +
                        " j=" + std::to_string(j) + " d=" + std::to_string(d));
  }
  CMatrix p(d, d);
  p.at(k - 1, j - 1) = 1.0;
  return p;
}

CMatrix theta(std::size_t k, std::size_t j, std::size_t d) {
  require_ordered_pair(k, j, d, "theta");
  return projector(k, j, d) + projector(j, k, d);
}

CMatrix beta(std::size_t k, std::size_t j, std::size_t d) {
  require_ordered_pair(k, j, d, "beta");
  return Complex(0.0, -1.0) * (projector(k, j, d) - projector(j, k, d));
}

CMatrix eta(std::size_t r, std::size_t d) {
  require_levels(d);
  if (r < 1 || r > d - 1) {
    throw ArgumentError("eta: need 1 <= r <= d-1, got r=" + std::to_string(r) +
                        " d=" + std::to_string(d));
  }
  const double rr = static_cast<double>(r);
  const double scale = std::sqrt(2.0 / (rr * (rr + 1.0)));
  CMatrix m(d, d);
  for (std::size_t level = 0; level < r; ++level) m.at(level, level) = scale;
  m.at(r, r) = -rr * scale;
  return m;
}

GeneratorSet generator_set(std::size_t d) {
  require_levels(d);
  GeneratorSet set;
  set.d = d;
  for (std::size_t k = 1; k <= d; ++k) {
    for (std::size_t j = k + 1; j <= d; ++j) {
      set.theta.emplace(GeneratorSet::LevelPair{k, j}, theta(k, j, d));
      set.beta.emplace(GeneratorSet::LevelPair{k, j}, beta(k, j, d));
    }
  }
  for (std::size_t r = 1; r < d; ++r) set.eta.push_back(eta(r, d));
  return set;
}

std::vector<NamedGenerator> GeneratorSet::ordered() const {
  std::vector<NamedGenerator> out;
  out.reserve(size());
  for (std::size_t j = 2; j <= d; ++j) {
    for (std::size_t k = 1; k < j; ++k) {
      out.push_back({pair_name("theta", k, j), theta.at({k, j})});
      out.push_back({pair_name("beta", k, j), beta.at({k, j})});
    }
    out.push_back({"eta(" + std::to_string(j - 1) + ")", eta.at(j - 2)});
  }
  return out;
}

}  // namespace qpst
