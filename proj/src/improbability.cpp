#include "citestat/improbability.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "citestat/error.hpp"

namespace citestat {

namespace {

void check_dims(std::size_t record_bins, std::size_t dist_bins) {
  if (record_bins != dist_bins) {
    throw Error("dimension mismatch: record has " + std::to_string(record_bins) +
                " bins, distribution has " + std::to_string(dist_bins));
  }
}

}  // namespace

double log10_factorial(double n) { return std::lgamma(n + 1.0) / std::numbers::ln10; }

double log10_likelihood_kernel(std::span<const std::int64_t> counts,
                               std::span<const double> probabilities) {
  check_dims(counts.size(), probabilities.size());
  double s = 0.0;
  for (std::size_t i = 0; i < counts.size(); ++i) {
    if (counts[i] == 0) continue;
    if (probabilities[i] <= 0.0) return -std::numeric_limits<double>::infinity();
    s += static_cast<double>(counts[i]) * std::log10(probabilities[i]);
  }
  return s;
}

double log10_record_probability(const BinnedRecord& binned, const CitationDistribution& dist) {
  check_dims(binned.size(), dist.size());
  double s = log10_factorial(static_cast<double>(binned.total()));
  for (std::size_t i = 0; i < binned.size(); ++i) {
    const auto n = binned.counts[i];
    if (n < 0) throw Error("negative bin count");
    if (n == 0) continue;
    if (dist[i] <= 0.0) {
      throw Error("record outside distribution support (bin " + std::to_string(i) + ")");
    }
    s += static_cast<double>(n) * std::log10(dist[i]) - log10_factorial(static_cast<double>(n));
  }
  return s;
}

double log10_max_probability(std::int64_t num_papers, const CitationDistribution& dist) {
  if (num_papers < 0) throw Error("negative paper count");
  if (num_papers == 0) return 0.0;
  const double n_total = static_cast<double>(num_papers);
  double s = log10_factorial(n_total);
  for (std::size_t i = 0; i < dist.size(); ++i) {
    const double p = dist[i];
    if (p <= 0.0) continue;  // n_i = 0 contributes nothing
    const double n = n_total * p;
    s += n * std::log10(p) - log10_factorial(n);
  }
  return s;
}

Unlikelihood unlikelihood(const BinnedRecord& binned, const CitationDistribution& dist) {
  Unlikelihood u;
  u.log10_record = log10_record_probability(binned, dist);
  u.log10_max = log10_max_probability(binned.total(), dist);
  u.r = u.log10_max - u.log10_record;
  return u;
}

}  // namespace citestat
