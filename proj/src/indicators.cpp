#include "citestat/indicators.hpp"

#include <algorithm>
#include <array>
#include <cstdint>
#include <functional>
#include <vector>

#include "citestat/error.hpp"

namespace citestat {

namespace {

constexpr std::array kKinds = {
    IndicatorKind::mean_citations, IndicatorKind::median_citations,
    IndicatorKind::total_citations, IndicatorKind::max_citations,
    IndicatorKind::h_index,        IndicatorKind::papers_per_year,
};

std::vector<std::int64_t> sorted_citations(std::span<const Paper> papers) {
  std::vector<std::int64_t> c;
  c.reserve(papers.size());
  for (const auto& p : papers) c.push_back(p.citations);
  std::sort(c.begin(), c.end());
  return c;
}

}  // namespace

std::span<const IndicatorKind> all_indicator_kinds() { return kKinds; }

std::string_view to_string(IndicatorKind kind) {
  switch (kind) {
    case IndicatorKind::mean_citations: return "mean_citations";
    case IndicatorKind::median_citations: return "median_citations";
    case IndicatorKind::total_citations: return "total_citations";
    case IndicatorKind::max_citations: return "max_citations";
    case IndicatorKind::h_index: return "h_index";
    case IndicatorKind::papers_per_year: return "papers_per_year";
  }
  return "unknown";
}

std::optional<IndicatorKind> parse_indicator_kind(std::string_view name) {
  for (auto k : kKinds) {
    if (to_string(k) == name) return k;
  }
  return std::nullopt;
}

int h_index(std::span<const Paper> papers) {
  auto c = sorted_citations(papers);
  std::sort(c.begin(), c.end(), std::greater<>());
  int h = 0;
  while (h < static_cast<int>(c.size()) && c[h] >= h + 1) ++h;
  return h;
}

IndicatorValue evaluate(IndicatorKind kind, const CitationRecord& record) {
  const auto& papers = record.papers;
  if (papers.empty()) throw Error("indicator undefined for empty record");
  IndicatorValue out{0.0, kind};
  switch (kind) {
    case IndicatorKind::mean_citations:
    case IndicatorKind::total_citations: {
      std::int64_t total = 0;
      for (const auto& p : papers) total += p.citations;
      out.value = static_cast<double>(total);
      if (kind == IndicatorKind::mean_citations) out.value /= static_cast<double>(papers.size());
      break;
    }
    case IndicatorKind::median_citations: {
      const auto c = sorted_citations(papers);
      const std::size_t n = c.size();
      out.value = n % 2 == 1 ? static_cast<double>(c[n / 2])
                             : 0.5 * (static_cast<double>(c[n / 2 - 1]) +
                                      static_cast<double>(c[n / 2]));
      break;
    }
    case IndicatorKind::max_citations: {
      std::int64_t m = 0;
      for (const auto& p : papers) m = std::max(m, p.citations);
      out.value = static_cast<double>(m);
      break;
    }
    case IndicatorKind::h_index:
      out.value = h_index(papers);
      break;
    case IndicatorKind::papers_per_year: {
      std::optional<int> lo, hi;
      for (const auto& p : papers) {
        if (!p.year) continue;
        lo = lo ? std::min(*lo, *p.year) : *p.year;
        hi = hi ? std::max(*hi, *p.year) : *p.year;
      }
      if (!lo) throw Error("year data required");
      out.value = static_cast<double>(papers.size()) / static_cast<double>(*hi - *lo + 1);
      break;
    }
  }
  return out;
}

AuthorScorer scorer_for(IndicatorKind kind) {
  return [kind](const CitationRecord& r) { return evaluate(kind, r).value; };
}

double author_hash_score(const CitationRecord& record) {
  // FNV-1a, 64 bit
  std::uint64_t h = 14695981039346656037ull;
  for (unsigned char c : record.author_id) {
    h ^= c;
    h *= 1099511628211ull;
  }
  // final avalanche so nearby ids spread over [0, 1)
  h ^= h >> 33;
  h *= 0xff51afd7ed558ccdull;
  h ^= h >> 33;
  return static_cast<double>(h >> 11) * 0x1.0p-53;
}

}  // namespace citestat
