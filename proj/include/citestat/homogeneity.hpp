#pragma once

// Comparing referencing cultures between fields, and ranking authors against
// the peers of their own field.

#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "citestat/corpus.hpp"
#include "citestat/indicators.hpp"

namespace citestat {

// field tag -> sub-corpus holding, for each author, only the papers of that field
using FieldPartition = std::map<std::string, Corpus>;

// Throws InputError if any paper has no field tag.
FieldPartition partition_by_field(const Corpus& corpus);

double mean_citations_per_paper(const Corpus& corpus);

// Mean citations per paper of a over that of b.
double mean_ratio(const Corpus& a, const Corpus& b);

struct ChiSquareResult {
  double chi_square = 0.0;
  int degrees_of_freedom = 0;
  double p_value = 1.0;
};

// Two-sample chi-square test on a 2 x k table of binned counts. Bins empty on
// both sides are dropped before counting degrees of freedom.
ChiSquareResult chi_square_homogeneity(std::span<const std::int64_t> a,
                                       std::span<const std::int64_t> b);

// Regularized upper incomplete gamma function Q(a, x) = Gamma(a, x) / Gamma(a).
double regularized_gamma_q(double a, double x);

struct HomogeneityReport {
  std::string field_a;
  std::string field_b;
  double mean_ratio = 0.0;
  double chi_square = 0.0;
  int degrees_of_freedom = 0;
  double p_value = 1.0;

  friend bool operator==(const HomogeneityReport&, const HomogeneityReport&) = default;
};

HomogeneityReport compare_fields(const std::string& name_a, const Corpus& a,
                                 const std::string& name_b, const Corpus& b,
                                 const BinningScheme& scheme);

// Report for every unordered pair of fields, in tag order.
std::vector<HomogeneityReport> compare_all_fields(const FieldPartition& partition,
                                                  const BinningScheme& scheme);

// Mid-rank percentile: (below + equal / 2) / population, where the population
// is the peers (any peer with the author's id is skipped) plus the author.
double percentile_of(const CitationRecord& author, const Corpus& peers, IndicatorKind kind);
double percentile_of_value(double value, std::span<const double> others);

struct FieldPercentile {
  std::string field;
  std::size_t papers = 0;
  double percentile = 0.0;

  friend bool operator==(const FieldPercentile&, const FieldPercentile&) = default;
};

struct CrossFieldScore {
  std::vector<FieldPercentile> fields;
  // paper-count-weighted mean of the per-field percentiles
  double combined = 0.0;

  friend bool operator==(const CrossFieldScore&, const CrossFieldScore&) = default;
};

CrossFieldScore combine_percentiles(std::vector<FieldPercentile> fields);

// Throws Error for an unknown field tag or an empty per-field record.
CrossFieldScore cross_field_rank(const std::map<std::string, CitationRecord>& author_records,
                                 const FieldPartition& partition, IndicatorKind kind);

}  // namespace citestat
