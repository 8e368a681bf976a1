#pragma once

#include <functional>
#include <optional>
#include <span>
#include <string_view>

#include "citestat/corpus.hpp"

namespace citestat {

enum class IndicatorKind {
  mean_citations,
  median_citations,
  total_citations,
  max_citations,
  h_index,
  papers_per_year,
};

std::span<const IndicatorKind> all_indicator_kinds();
std::string_view to_string(IndicatorKind kind);
std::optional<IndicatorKind> parse_indicator_kind(std::string_view name);

struct IndicatorValue {
  double value = 0.0;
  IndicatorKind kind = IndicatorKind::mean_citations;
};

// Throws Error for an empty record, or for papers_per_year without any year.
IndicatorValue evaluate(IndicatorKind kind, const CitationRecord& record);

// Largest h such that at least h papers have >= h citations.
int h_index(std::span<const Paper> papers);

// Any scalar function of a record; used to bin authors.
using AuthorScorer = std::function<double(const CitationRecord&)>;

AuthorScorer scorer_for(IndicatorKind kind);

// Null indicator: a hash of the author id mapped into [0, 1). Unrelated to the
// citation record by construction.
double author_hash_score(const CitationRecord& record);

}  // namespace citestat
