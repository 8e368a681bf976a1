#pragma once

// Papers, authors and corpora, plus the citation-count binning that turns an
// author's record into the per-bin counts {n_i}.

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "citestat/distribution.hpp"

namespace citestat {

struct Paper {
  std::string paper_id;
  std::int64_t citations = 0;
  std::optional<int> year;
  std::optional<std::string> field;

  friend bool operator==(const Paper&, const Paper&) = default;
};

inline constexpr int kMinYear = 1800;
inline constexpr int kMaxYear = 2200;

struct CitationRecord {
  std::string author_id;
  std::vector<Paper> papers;

  friend bool operator==(const CitationRecord&, const CitationRecord&) = default;
};

// Immutable collection of author records with unique ids. Author order is the
// order of construction (first appearance when loaded from a file).
class Corpus {
 public:
  Corpus() = default;
  explicit Corpus(std::vector<CitationRecord> authors);

  std::span<const CitationRecord> authors() const { return authors_; }
  std::size_t size() const { return authors_.size(); }
  bool empty() const { return authors_.empty(); }
  std::size_t total_papers() const;

  const CitationRecord* find(std::string_view author_id) const;
  std::optional<std::size_t> index_of(std::string_view author_id) const;

  friend bool operator==(const Corpus& a, const Corpus& b) { return a.authors_ == b.authors_; }

 private:
  std::vector<CitationRecord> authors_;
  std::unordered_map<std::string, std::size_t> index_;
};

// Half-open citation-count intervals [edge_k, edge_{k+1}), last one unbounded.
class BinningScheme {
 public:
  explicit BinningScheme(std::vector<std::int64_t> lower_edges,
                         std::vector<std::string> labels = {});

  // [0], [1-9], [10-49], [50-99], [100-499], [500+]
  static BinningScheme table1();

  std::size_t num_bins() const { return edges_.size(); }
  std::size_t bin_of(std::int64_t citations) const;

  std::int64_t lower_edge(std::size_t bin) const { return edges_.at(bin); }
  // Inclusive upper edge, or nullopt for the last (unbounded) bin.
  std::optional<std::int64_t> upper_edge(std::size_t bin) const;

  std::span<const std::int64_t> lower_edges() const { return edges_; }
  const std::vector<std::string>& labels() const { return labels_; }

  friend bool operator==(const BinningScheme&, const BinningScheme&) = default;

 private:
  std::vector<std::int64_t> edges_;
  std::vector<std::string> labels_;
};

// Parses a JSON array of lower edges, e.g. [0,1,10,50,100,500].
BinningScheme binning_scheme_from_json(std::string_view text);
BinningScheme load_binning_scheme(const std::string& path);

struct BinnedRecord {
  std::vector<std::int64_t> counts;

  std::int64_t total() const;
  std::size_t size() const { return counts.size(); }

  friend bool operator==(const BinnedRecord&, const BinnedRecord&) = default;
};

std::size_t bin_paper(std::int64_t citations, const BinningScheme& scheme);
BinnedRecord bin_papers(std::span<const Paper> papers, const BinningScheme& scheme);
BinnedRecord bin_record(const CitationRecord& record, const BinningScheme& scheme);

// Bin frequencies of a paper collection. Throws on an empty collection.
CitationDistribution empirical_distribution(std::span<const Paper> papers,
                                            const BinningScheme& scheme);

enum class CorpusFormat { csv, json };

// Picks json for a ".json" extension, csv otherwise.
CorpusFormat corpus_format_for_path(std::string_view path);

// Throws InputError with the offending line (csv) or author index (json).
Corpus load_corpus(std::istream& in, CorpusFormat format);
Corpus load_corpus_file(const std::string& path);

void write_corpus(std::ostream& out, const Corpus& corpus, CorpusFormat format);

void validate_paper(const Paper& paper);

}  // namespace citestat
