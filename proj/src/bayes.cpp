#include "citestat/bayes.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

#include "citestat/error.hpp"
#include "citestat/improbability.hpp"

namespace citestat {

// --- author binning ---------------------------------------------------------

AuthorBinning AuthorBinning::from_assignment(std::vector<std::size_t> assignment,
                                             std::size_t num_bins) {
  if (num_bins == 0) throw Error("binning needs at least one bin");
  if (assignment.empty()) throw Error("binning needs at least one author");
  AuthorBinning b;
  b.num_bins = num_bins;
  b.bin_sizes.assign(num_bins, 0);
  for (auto bin : assignment) {
    if (bin >= num_bins) throw Error("author bin index out of range");
    ++b.bin_sizes[bin];
  }
  b.prior.resize(num_bins);
  const double n = static_cast<double>(assignment.size());
  for (std::size_t a = 0; a < num_bins; ++a) b.prior[a] = static_cast<double>(b.bin_sizes[a]) / n;
  b.assignment = std::move(assignment);
  return b;
}

AuthorBinning quantile_binning(std::span<const double> values,
                               std::span<const std::string> author_ids, std::size_t num_bins) {
  if (values.size() != author_ids.size()) throw Error("values and ids differ in length");
  if (num_bins < 2) throw Error("num_bins must be at least 2");
  const std::size_t n = values.size();
  if (n < num_bins) {
    throw Error("too few authors: " + std::to_string(n) + " authors for " +
                std::to_string(num_bins) + " bins");
  }
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    if (values[a] != values[b]) return values[a] < values[b];
    return author_ids[a] < author_ids[b];
  });
  std::vector<std::size_t> assignment(n);
  for (std::size_t g = 0; g < num_bins; ++g) {
    const std::size_t lo = g * n / num_bins;
    const std::size_t hi = (g + 1) * n / num_bins;
    for (std::size_t pos = lo; pos < hi; ++pos) assignment[order[pos]] = g;
  }
  return AuthorBinning::from_assignment(std::move(assignment), num_bins);
}

AuthorBinning bin_authors(const Corpus& corpus, IndicatorKind kind, std::size_t num_bins) {
  return bin_authors(corpus, scorer_for(kind), num_bins);
}

AuthorBinning bin_authors(const Corpus& corpus, const AuthorScorer& scorer,
                          std::size_t num_bins) {
  if (num_bins < 2) throw Error("num_bins must be at least 2");
  if (corpus.size() < num_bins) {
    throw Error("too few authors: " + std::to_string(corpus.size()) + " authors for " +
                std::to_string(num_bins) + " bins");
  }
  std::vector<double> values;
  std::vector<std::string> ids;
  std::string failed;
  std::string reason;
  values.reserve(corpus.size());
  ids.reserve(corpus.size());
  for (const auto& rec : corpus.authors()) {
    ids.push_back(rec.author_id);
    try {
      values.push_back(scorer(rec));
    } catch (const Error& e) {
      values.push_back(0.0);
      if (!failed.empty()) failed += ", ";
      failed += rec.author_id;
      if (reason.empty()) reason = e.what();
    }
  }
  if (!failed.empty()) {
    throw Error("indicator undefined (" + reason + ") for authors: " + failed);
  }
  return quantile_binning(values, ids, num_bins);
}

// --- conditional distributions ----------------------------------------------

ConditionalDistributions::ConditionalDistributions(BinningScheme scheme,
                                                   std::vector<std::vector<double>> paper_counts,
                                                   double pseudocount)
    : scheme_(std::move(scheme)), counts_(std::move(paper_counts)), pseudocount_(pseudocount) {
  if (!(pseudocount_ >= 0.0) || !std::isfinite(pseudocount_)) {
    throw Error("pseudocount must be non-negative");
  }
  if (counts_.empty()) throw Error("no author bins");
  rows_.reserve(counts_.size());
  for (std::size_t a = 0; a < counts_.size(); ++a) {
    if (counts_[a].size() != scheme_.num_bins()) throw Error("citation bin count mismatch");
    try {
      rows_.push_back(smooth(counts_[a]));
    } catch (const Error&) {
      throw Error("empty author bin " + std::to_string(a) + " with zero pseudocount");
    }
  }
}

CitationDistribution ConditionalDistributions::smooth(std::span<const double> counts) const {
  double total = 0.0;
  for (double c : counts) total += c;
  const double denom = total + pseudocount_ * static_cast<double>(counts.size());
  if (!(denom > 0.0)) throw Error("empty author bin with zero pseudocount");
  std::vector<double> p(counts.size());
  for (std::size_t i = 0; i < counts.size(); ++i) p[i] = (counts[i] + pseudocount_) / denom;
  return CitationDistribution(std::move(p));
}

CitationDistribution ConditionalDistributions::row_without(std::size_t alpha,
                                                           const BinnedRecord& removed) const {
  const auto& c = counts_.at(alpha);
  if (removed.size() != c.size()) throw Error("citation bin count mismatch");
  std::vector<double> rest(c.size());
  for (std::size_t i = 0; i < c.size(); ++i) {
    rest[i] = c[i] - static_cast<double>(removed.counts[i]);
    if (rest[i] < 0.0) throw Error("removed record is not part of author bin");
  }
  return smooth(rest);
}

ConditionalDistributions conditional_distributions(const Corpus& corpus,
                                                   const AuthorBinning& binning,
                                                   const BinningScheme& scheme,
                                                   double pseudocount) {
  if (binning.assignment.size() != corpus.size()) {
    throw Error("binning does not match corpus");
  }
  std::vector<std::vector<double>> counts(binning.num_bins,
                                          std::vector<double>(scheme.num_bins(), 0.0));
  const auto authors = corpus.authors();
  for (std::size_t i = 0; i < authors.size(); ++i) {
    auto& row = counts[binning.assignment[i]];
    for (const auto& p : authors[i].papers) row[scheme.bin_of(p.citations)] += 1.0;
  }
  return ConditionalDistributions(scheme, std::move(counts), pseudocount);
}

// --- posterior --------------------------------------------------------------

std::size_t Posterior::mode() const {
  return static_cast<std::size_t>(
      std::max_element(probabilities.begin(), probabilities.end()) - probabilities.begin());
}

Posterior posterior(const BinnedRecord& binned, std::span<const CitationDistribution> rows,
                    std::span<const double> prior) {
  if (rows.empty() || rows.size() != prior.size()) {
    throw Error("dimension mismatch: " + std::to_string(rows.size()) + " conditional rows, " +
                std::to_string(prior.size()) + " prior entries");
  }
  const double prior_sum = std::accumulate(prior.begin(), prior.end(), 0.0);
  if (std::abs(prior_sum - 1.0) > 1e-9) throw Error("prior must sum to 1");

  constexpr double kNegInf = -std::numeric_limits<double>::infinity();
  std::vector<double> log_mass(rows.size());
  double top = kNegInf;
  for (std::size_t a = 0; a < rows.size(); ++a) {
    if (rows[a].size() != binned.size()) throw Error("dimension mismatch: citation bins");
    if (prior[a] < 0.0) throw Error("negative prior entry");
    log_mass[a] = prior[a] > 0.0
                      ? log10_likelihood_kernel(binned.counts, rows[a].probabilities()) +
                            std::log10(prior[a])
                      : kNegInf;
    top = std::max(top, log_mass[a]);
  }
  if (top == kNegInf) throw Error("record outside the support of every author bin");

  Posterior post;
  post.probabilities.resize(rows.size());
  double z = 0.0;
  for (std::size_t a = 0; a < rows.size(); ++a) {
    const double w = log_mass[a] == kNegInf ? 0.0 : std::pow(10.0, log_mass[a] - top);
    post.probabilities[a] = w;
    z += w;
  }
  for (auto& p : post.probabilities) p /= z;
  return post;
}

Posterior posterior(const BinnedRecord& binned, const ConditionalDistributions& conditionals,
                    std::span<const double> prior) {
  return posterior(binned, conditionals.rows(), prior);
}

std::vector<AuthorPosterior> author_posteriors(const Corpus& corpus, const AuthorBinning& binning,
                                               const ConditionalDistributions& conditionals,
                                               bool leave_one_out) {
  if (binning.assignment.size() != corpus.size()) throw Error("binning does not match corpus");
  if (binning.num_bins != conditionals.num_author_bins()) {
    throw Error("binning and conditionals disagree on the number of author bins");
  }
  const auto& scheme = conditionals.scheme();
  const auto authors = corpus.authors();
  std::vector<AuthorPosterior> out;
  out.reserve(authors.size());
  std::vector<CitationDistribution> rows;
  for (std::size_t i = 0; i < authors.size(); ++i) {
    const auto binned = bin_record(authors[i], scheme);
    const std::size_t beta = binning.assignment[i];
    AuthorPosterior ap{authors[i].author_id, beta, {}};
    if (leave_one_out) {
      rows.assign(conditionals.rows().begin(), conditionals.rows().end());
      rows[beta] = conditionals.row_without(beta, binned);
      ap.posterior = posterior(binned, rows, binning.prior);
    } else {
      ap.posterior = posterior(binned, conditionals, binning.prior);
    }
    out.push_back(std::move(ap));
  }
  return out;
}

// --- confusion matrix and metrics -------------------------------------------

ConfusionMatrix confusion_matrix(std::span<const AuthorPosterior> posteriors,
                                 std::size_t num_bins) {
  ConfusionMatrix m;
  m.rows.assign(num_bins, std::vector<double>(num_bins, 0.0));
  m.author_counts.assign(num_bins, 0);
  for (const auto& ap : posteriors) {
    if (ap.assigned_bin >= num_bins || ap.posterior.probabilities.size() != num_bins) {
      throw Error("posterior dimension mismatch");
    }
    auto& row = m.rows[ap.assigned_bin];
    for (std::size_t a = 0; a < num_bins; ++a) row[a] += ap.posterior.probabilities[a];
    ++m.author_counts[ap.assigned_bin];
  }
  for (std::size_t b = 0; b < num_bins; ++b) {
    if (m.author_counts[b] == 0) throw Error("empty author bin " + std::to_string(b));
    for (auto& v : m.rows[b]) v /= static_cast<double>(m.author_counts[b]);
  }
  return m;
}

ConfusionMatrix confusion_matrix(const Corpus& corpus, const AuthorBinning& binning,
                                 const ConditionalDistributions& conditionals,
                                 bool leave_one_out) {
  const auto posts = author_posteriors(corpus, binning, conditionals, leave_one_out);
  return confusion_matrix(posts, binning.num_bins);
}

AssignmentMetrics assignment_metrics(const ConfusionMatrix& matrix,
                                     std::span<const AuthorPosterior> posteriors) {
  const std::size_t k = matrix.size();
  AssignmentMetrics out;
  out.per_bin_accuracy.assign(k, 0.0);
  out.per_bin_correct_mass.assign(k, 0.0);
  for (std::size_t b = 0; b < k; ++b) out.per_bin_correct_mass[b] = matrix(b, b);

  std::vector<std::size_t> hits(k, 0), seen(k, 0);
  std::size_t correct = 0;
  double mass = 0.0;
  for (const auto& ap : posteriors) {
    if (ap.assigned_bin >= k || ap.posterior.probabilities.size() != k) {
      throw Error("posterior dimension mismatch");
    }
    ++seen[ap.assigned_bin];
    if (ap.posterior.mode() == ap.assigned_bin) {
      ++hits[ap.assigned_bin];
      ++correct;
    }
    mass += ap.posterior.probabilities[ap.assigned_bin];
  }
  for (std::size_t b = 0; b < k; ++b) {
    if (seen[b] > 0) {
      out.per_bin_accuracy[b] = static_cast<double>(hits[b]) / static_cast<double>(seen[b]);
    }
  }
  if (!posteriors.empty()) {
    const double n = static_cast<double>(posteriors.size());
    out.argmax_accuracy = static_cast<double>(correct) / n;
    out.mean_correct_mass = mass / n;
  }
  return out;
}

// --- divergences ------------------------------------------------------------

double kl_divergence(std::span<const double> p, std::span<const double> q) {
  if (p.size() != q.size()) throw Error("dimension mismatch in KL divergence");
  double d = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (p[i] <= 0.0) continue;
    if (q[i] <= 0.0) throw Error("KL divergence support violation at bin " + std::to_string(i));
    d += p[i] * std::log(p[i] / q[i]);
  }
  return d;
}

double kl_divergence(const CitationDistribution& p, const CitationDistribution& q) {
  return kl_divergence(p.probabilities(), q.probabilities());
}

std::vector<double> adjacent_kl(const ConditionalDistributions& conditionals) {
  std::vector<double> out;
  const auto rows = conditionals.rows();
  for (std::size_t a = 0; a + 1 < rows.size(); ++a) out.push_back(kl_divergence(rows[a], rows[a + 1]));
  return out;
}

double mean_pairwise_kl(const ConditionalDistributions& conditionals) {
  const auto rows = conditionals.rows();
  if (rows.size() < 2) return 0.0;
  double total = 0.0;
  std::size_t pairs = 0;
  for (std::size_t a = 0; a < rows.size(); ++a) {
    for (std::size_t b = 0; b < rows.size(); ++b) {
      if (a == b) continue;
      total += kl_divergence(rows[a], rows[b]);
      ++pairs;
    }
  }
  return total / static_cast<double>(pairs);
}

// --- accuracy curve ---------------------------------------------------------

std::vector<CurvePoint> accuracy_curve(const Corpus& corpus, const AuthorScorer& scorer,
                                       const BinningScheme& scheme,
                                       std::span<const std::size_t> paper_counts,
                                       const CurveOptions& options) {
  if (paper_counts.empty()) throw Error("empty N list");
  if (options.trials == 0) throw Error("trials must be at least 1");
  const std::size_t max_n = *std::max_element(paper_counts.begin(), paper_counts.end());
  for (auto n : paper_counts) {
    if (n == 0) throw Error("paper counts must be at least 1");
  }
  for (const auto& rec : corpus.authors()) {
    if (rec.papers.size() < max_n) {
      throw Error("insufficient papers: author '" + rec.author_id + "' has " +
                  std::to_string(rec.papers.size()) + " papers, N = " + std::to_string(max_n) +
                  " requested");
    }
  }

  const auto binning = bin_authors(corpus, scorer, options.num_bins);
  const auto conditionals = conditional_distributions(corpus, binning, scheme, options.pseudocount);
  const auto authors = corpus.authors();
  const double num_authors = static_cast<double>(authors.size());

  std::vector<CurvePoint> curve;
  std::vector<std::size_t> pick;
  std::vector<Paper> subset;
  for (const std::size_t n : paper_counts) {
    double acc_sum = 0.0;
    double mass_sum = 0.0;
    for (std::size_t t = 0; t < options.trials; ++t) {
      std::size_t correct = 0;
      double mass = 0.0;
      for (std::size_t i = 0; i < authors.size(); ++i) {
        const auto& papers = authors[i].papers;
        auto rng = Rng::substream(options.seed, {n, t, i});
        pick.resize(papers.size());
        std::iota(pick.begin(), pick.end(), 0);
        // partial Fisher-Yates: the first n slots become the sample
        for (std::size_t j = 0; j < n; ++j) {
          const auto k = j + static_cast<std::size_t>(rng.below(papers.size() - j));
          std::swap(pick[j], pick[k]);
        }
        subset.clear();
        for (std::size_t j = 0; j < n; ++j) subset.push_back(papers[pick[j]]);
        const auto post = posterior(bin_papers(subset, scheme), conditionals, binning.prior);
        const std::size_t beta = binning.assignment[i];
        if (post.mode() == beta) ++correct;
        mass += post.probabilities[beta];
      }
      acc_sum += static_cast<double>(correct) / num_authors;
      mass_sum += mass / num_authors;
    }
    const double trials = static_cast<double>(options.trials);
    curve.push_back({n, acc_sum / trials, mass_sum / trials});
  }
  return curve;
}

double ln_error_slope(std::span<const CurvePoint> curve) {
  if (curve.size() < 2) throw Error("slope needs at least two curve points");
  const double n = static_cast<double>(curve.size());
  double sx = 0.0, sy = 0.0;
  std::vector<double> ys;
  for (const auto& pt : curve) {
    const double err = std::max(1.0 - pt.mean_correct_mass, std::numeric_limits<double>::min());
    ys.push_back(std::log(err));
    sx += static_cast<double>(pt.papers);
    sy += ys.back();
  }
  const double mx = sx / n, my = sy / n;
  double sxx = 0.0, sxy = 0.0;
  for (std::size_t i = 0; i < curve.size(); ++i) {
    const double dx = static_cast<double>(curve[i].papers) - mx;
    sxx += dx * dx;
    sxy += dx * (ys[i] - my);
  }
  if (sxx == 0.0) throw Error("slope needs at least two distinct N values");
  return sxy / sxx;
}

}  // namespace citestat
