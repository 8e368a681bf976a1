#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace citestat {

// Probabilities P(i) over citation bins. Accepts vectors whose sum is within
// 1e-3 of one so that published tables (the default one sums to 0.99984) can be used
// verbatim; renormalized() gives an exact probability vector.
class CitationDistribution {
 public:
  static constexpr double kSumTolerance = 1e-3;

  CitationDistribution() = default;
  explicit CitationDistribution(std::vector<double> probabilities);

  // Default probabilities of the six citation bins.
  static CitationDistribution table1();

  std::size_t size() const { return p_.size(); }
  double operator[](std::size_t i) const { return p_[i]; }
  std::span<const double> probabilities() const { return p_; }
  double sum() const;

  CitationDistribution renormalized() const;

  friend bool operator==(const CitationDistribution&, const CitationDistribution&) = default;

 private:
  std::vector<double> p_;
};

}  // namespace citestat
