#pragma once

// Discriminatory ability of an author indicator.
//
// Authors are split into quantile bins alpha by the indicator. For each bin the
// conditional citation distribution P(i|alpha) is estimated from the papers of
// its authors. Bayes' theorem then gives, for any binned record {n_i},
//
//   P(alpha|{n_i}) ∝ P({n_i}|alpha) p(alpha),
//
// and averaging these posteriors over the authors initially placed in bin beta
// yields the confusion matrix P(alpha|beta). A good indicator concentrates this
// matrix on its diagonal; an indicator unrelated to citations reproduces the
// prior in every row.

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "citestat/corpus.hpp"
#include "citestat/distribution.hpp"
#include "citestat/indicators.hpp"
#include "citestat/random.hpp"

namespace citestat {

inline constexpr std::size_t kDefaultAuthorBins = 10;
inline constexpr double kDefaultPseudocount = 0.5;

struct AuthorBinning {
  std::size_t num_bins = 0;
  // Bin of each author, aligned with Corpus::authors().
  std::vector<std::size_t> assignment;
  std::vector<std::size_t> bin_sizes;
  // p(alpha) = bin size / author count
  std::vector<double> prior;

  // Builds sizes and prior from an explicit assignment.
  static AuthorBinning from_assignment(std::vector<std::size_t> assignment, std::size_t num_bins);
};

// Sorts authors by value (ties by id) and cuts them into num_bins contiguous
// groups whose sizes differ by at most one. Group g holds sorted positions
// [floor(g n / k), floor((g + 1) n / k)).
AuthorBinning quantile_binning(std::span<const double> values,
                               std::span<const std::string> author_ids, std::size_t num_bins);

// Throws Error if num_bins < 2, there are fewer authors than bins, or the
// indicator is undefined for some authors (all offending ids are listed).
AuthorBinning bin_authors(const Corpus& corpus, IndicatorKind kind,
                          std::size_t num_bins = kDefaultAuthorBins);
AuthorBinning bin_authors(const Corpus& corpus, const AuthorScorer& scorer,
                          std::size_t num_bins = kDefaultAuthorBins);

class ConditionalDistributions {
 public:
  ConditionalDistributions(BinningScheme scheme, std::vector<std::vector<double>> paper_counts,
                           double pseudocount);

  std::size_t num_author_bins() const { return rows_.size(); }
  std::size_t num_citation_bins() const { return scheme_.num_bins(); }
  double pseudocount() const { return pseudocount_; }
  const BinningScheme& scheme() const { return scheme_; }

  const CitationDistribution& row(std::size_t alpha) const { return rows_.at(alpha); }
  std::span<const CitationDistribution> rows() const { return rows_; }
  // Raw (unsmoothed) paper counts of bin alpha.
  std::span<const double> paper_counts(std::size_t alpha) const { return counts_.at(alpha); }

  // Row alpha re-estimated with one record's papers removed.
  CitationDistribution row_without(std::size_t alpha, const BinnedRecord& removed) const;

 private:
  CitationDistribution smooth(std::span<const double> counts) const;

  BinningScheme scheme_;
  std::vector<std::vector<double>> counts_;
  double pseudocount_;
  std::vector<CitationDistribution> rows_;
};

// P(i|alpha) = (c_alpha,i + pseudocount) / (C_alpha + pseudocount * bins).
ConditionalDistributions conditional_distributions(const Corpus& corpus,
                                                   const AuthorBinning& binning,
                                                   const BinningScheme& scheme,
                                                   double pseudocount = kDefaultPseudocount);

struct Posterior {
  std::vector<double> probabilities;

  // Most probable bin; the lowest index wins ties.
  std::size_t mode() const;
};

// Normalized P(alpha|{n_i}); the multinomial coefficient cancels and is left
// out. Throws on dimension mismatch, a prior that does not sum to one, or a
// record impossible under every row.
Posterior posterior(const BinnedRecord& binned, std::span<const CitationDistribution> rows,
                    std::span<const double> prior);
Posterior posterior(const BinnedRecord& binned, const ConditionalDistributions& conditionals,
                    std::span<const double> prior);

struct AuthorPosterior {
  std::string author_id;
  std::size_t assigned_bin = 0;
  Posterior posterior;
};

// Posterior of every author, in corpus order. With leave_one_out each author's
// own papers are removed from its bin's conditional before evaluation.
std::vector<AuthorPosterior> author_posteriors(const Corpus& corpus, const AuthorBinning& binning,
                                               const ConditionalDistributions& conditionals,
                                               bool leave_one_out = false);

struct ConfusionMatrix {
  // rows[beta][alpha] = P(alpha|beta)
  std::vector<std::vector<double>> rows;
  std::vector<std::size_t> author_counts;

  std::size_t size() const { return rows.size(); }
  double operator()(std::size_t beta, std::size_t alpha) const { return rows[beta][alpha]; }

  friend bool operator==(const ConfusionMatrix&, const ConfusionMatrix&) = default;
};

ConfusionMatrix confusion_matrix(std::span<const AuthorPosterior> posteriors,
                                 std::size_t num_bins);
ConfusionMatrix confusion_matrix(const Corpus& corpus, const AuthorBinning& binning,
                                 const ConditionalDistributions& conditionals,
                                 bool leave_one_out = false);

struct AssignmentMetrics {
  // fraction of authors whose posterior mode is their assigned bin
  double argmax_accuracy = 0.0;
  // average P(beta|{n_i}) over authors assigned to beta
  double mean_correct_mass = 0.0;
  std::vector<double> per_bin_accuracy;
  std::vector<double> per_bin_correct_mass;

  friend bool operator==(const AssignmentMetrics&, const AssignmentMetrics&) = default;
};

AssignmentMetrics assignment_metrics(const ConfusionMatrix& matrix,
                                     std::span<const AuthorPosterior> posteriors);

// KL(p || q) in nats, with 0 ln(0/q) = 0. Throws if q is zero where p is not.
double kl_divergence(std::span<const double> p, std::span<const double> q);
double kl_divergence(const CitationDistribution& p, const CitationDistribution& q);

// KL(row alpha || row alpha+1) for each adjacent pair.
std::vector<double> adjacent_kl(const ConditionalDistributions& conditionals);
// Mean of KL(row a || row b) over all ordered pairs a != b.
double mean_pairwise_kl(const ConditionalDistributions& conditionals);

struct CurveOptions {
  std::size_t num_bins = kDefaultAuthorBins;
  double pseudocount = kDefaultPseudocount;
  std::size_t trials = 1;
  Seed seed{};
};

struct CurvePoint {
  std::size_t papers = 0;
  double argmax_accuracy = 0.0;
  double mean_correct_mass = 0.0;

  friend bool operator==(const CurvePoint&, const CurvePoint&) = default;
};

// Bins authors and builds conditionals on the full records, then for each N
// draws N papers per author without replacement and averages the assignment
// metrics over trials. Throws if an author has fewer than max(Ns) papers.
std::vector<CurvePoint> accuracy_curve(const Corpus& corpus, const AuthorScorer& scorer,
                                       const BinningScheme& scheme,
                                       std::span<const std::size_t> paper_counts,
                                       const CurveOptions& options);

// Least-squares slope of ln(1 - mean_correct_mass) against N.
double ln_error_slope(std::span<const CurvePoint> curve);

}  // namespace citestat
