#include "citestat/distribution.hpp"

#include <cmath>
#include <numeric>
#include <string>

#include "citestat/error.hpp"

namespace citestat {

CitationDistribution::CitationDistribution(std::vector<double> probabilities)
    : p_(std::move(probabilities)) {
  if (p_.empty()) throw Error("citation distribution has no bins");
  for (std::size_t i = 0; i < p_.size(); ++i) {
    if (!std::isfinite(p_[i]) || p_[i] < 0.0) {
      throw Error("citation distribution entry " + std::to_string(i) +
                  " is negative or not finite");
    }
  }
  const double total = sum();
  if (std::abs(total - 1.0) > kSumTolerance) {
    throw Error("citation distribution sums to " + std::to_string(total) +
                ", expected 1");
  }
}

CitationDistribution CitationDistribution::table1() {
  return CitationDistribution({0.267, 0.444, 0.224, 0.0380, 0.0250, 0.00184});
}

double CitationDistribution::sum() const {
  return std::accumulate(p_.begin(), p_.end(), 0.0);
}

CitationDistribution CitationDistribution::renormalized() const {
  const double total = sum();
  std::vector<double> q(p_.size());
  for (std::size_t i = 0; i < p_.size(); ++i) q[i] = p_[i] / total;
  return CitationDistribution(std::move(q));
}

}  // namespace citestat
