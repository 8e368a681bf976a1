#pragma once

// Seeded generative corpora. Every author belongs to a latent quality class
// ("true class", meaningful only inside the simulation) whose citation
// distribution generates that author's binned papers; concrete counts are then
// drawn uniformly inside each bin.

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "citestat/bayes.hpp"
#include "citestat/corpus.hpp"
#include "citestat/distribution.hpp"
#include "citestat/random.hpp"

namespace citestat {

struct QualityClass {
  double weight = 1.0;
  CitationDistribution distribution;
};

struct PaperCountRange {
  std::size_t min = 50;
  std::size_t max = 50;
};

struct GenerativeModel {
  std::vector<QualityClass> classes;
  PaperCountRange papers_per_author;
  BinningScheme scheme = BinningScheme::table1();
  // Inclusive upper citation count used when sampling inside the last bin.
  std::int64_t top_bin_ceiling = 5000;

  // Throws Error unless weights sum to 1, every class matches the scheme and
  // the paper range is ordered.
  void validate() const;
};

inline constexpr double kDefaultSeparation = 0.8;
inline constexpr std::size_t kSeparatedClasses = 10;

// `base` reweighted by exp(g (k - (classes - 1) / 2) i) for class k and
// citation bin i, then renormalized. Stochastically increasing in k for g > 0.
CitationDistribution tilted_distribution(const CitationDistribution& base, double separation,
                                         std::size_t class_index, std::size_t num_classes);

// "separated": ten tilted classes with equal weight; "homogeneous": one
// renormalized default class; "table1_global": one class with the raw default
// probabilities. Throws Error for an unknown name.
GenerativeModel preset_model(std::string_view name, double separation = kDefaultSeparation,
                             std::size_t papers_per_author = 50);

// {classes: [{weight, probabilities[]}], papers_per_author: N | [min, max]}
GenerativeModel model_from_json(std::string_view text);
GenerativeModel load_model(const std::string& path);

struct SyntheticCorpus {
  Corpus corpus;
  // Latent class per author, aligned with corpus.authors().
  std::vector<std::size_t> true_class;
};

struct SampledAuthor {
  CitationRecord record;
  std::size_t true_class = 0;
};

// Author `index` depends only on (model, seed, index).
SampledAuthor sample_author(const GenerativeModel& model, std::size_t index, Seed seed,
                            std::string_view id_prefix = "a");

SyntheticCorpus sample_corpus(const GenerativeModel& model, std::size_t num_authors, Seed seed);

inline constexpr std::string_view kBaseField = "base";
inline constexpr std::string_view kInflatedField = "inflated";

// Two disjoint author groups drawn from the same model, tagged "base" and
// "inflated"; every citation count in the inflated group is multiplied by
// citation_scale (rounded to nearest).
Corpus sample_two_field_corpus(const GenerativeModel& model, std::size_t authors_per_field,
                               double citation_scale, Seed seed);

// Scales every citation count of a record, tagging papers with `field`.
CitationRecord scaled_record(const CitationRecord& record, double citation_scale,
                             std::string_view field, std::string_view author_id);

// Samples num_authors authors with max(Ns) papers each and runs the
// subsampling accuracy curve on them.
std::vector<CurvePoint> accuracy_curve(const GenerativeModel& model, std::size_t num_authors,
                                       const AuthorScorer& scorer,
                                       std::span<const std::size_t> paper_counts,
                                       const CurveOptions& options);

}  // namespace citestat
