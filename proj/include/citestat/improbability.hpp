#pragma once

// Multinomial probability of a binned citation record and the unlikelihood
//
//   r = log10 P({n_i}_max) - log10 P({n_i}),
//
// where the reference record places n_i = N P(i) papers in each bin. Every
// quantity is kept in log10 space.

#include <cstdint>
#include <span>

#include "citestat/corpus.hpp"
#include "citestat/distribution.hpp"

namespace citestat {

struct Unlikelihood {
  double r = 0.0;
  double log10_record = 0.0;
  double log10_max = 0.0;
};

// log10 of N! prod_i P(i)^n_i / n_i!. Throws on a bin-count mismatch or when a
// paper sits in a bin of zero probability.
double log10_record_probability(const BinnedRecord& binned, const CitationDistribution& dist);

// The same formula at n_i = N P(i), with n_i! continued to Gamma(n_i + 1).
double log10_max_probability(std::int64_t num_papers, const CitationDistribution& dist);

Unlikelihood unlikelihood(const BinnedRecord& binned, const CitationDistribution& dist);

// sum_i n_i log10 P(i): the record likelihood without the multinomial
// coefficient. Returns -inf if a paper falls in a zero-probability bin.
double log10_likelihood_kernel(std::span<const std::int64_t> counts,
                               std::span<const double> probabilities);

// log10 of n! continued to real arguments.
double log10_factorial(double n);

}  // namespace citestat
