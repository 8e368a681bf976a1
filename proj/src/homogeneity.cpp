#include "citestat/homogeneity.hpp"

#include <algorithm>
#include <cmath>
#include <iterator>
#include <limits>
#include <string>

#include "citestat/error.hpp"

namespace citestat {

namespace {

// relative convergence; keeps the absolute error of Q well under 1e-10
constexpr double kGammaEpsilon = 1e-15;
constexpr int kGammaMaxIterations = 10000;

// P(a, x) by its power series; converges quickly for x < a + 1.
double gamma_p_series(double a, double x) {
  double term = 1.0 / a;
  double sum = term;
  for (int n = 1; n < kGammaMaxIterations; ++n) {
    term *= x / (a + n);
    sum += term;
    if (std::abs(term) < std::abs(sum) * kGammaEpsilon) break;
  }
  return sum * std::exp(-x + a * std::log(x) - std::lgamma(a));
}

// Q(a, x) by Lentz's continued fraction; used for x >= a + 1.
double gamma_q_continued_fraction(double a, double x) {
  constexpr double kTiny = std::numeric_limits<double>::min() / std::numeric_limits<double>::epsilon();
  double b = x + 1.0 - a;
  double c = 1.0 / kTiny;
  double d = 1.0 / b;
  double h = d;
  for (int i = 1; i < kGammaMaxIterations; ++i) {
    const double an = -i * (i - a);
    b += 2.0;
    d = an * d + b;
    if (std::abs(d) < kTiny) d = kTiny;
    c = b + an / c;
    if (std::abs(c) < kTiny) c = kTiny;
    d = 1.0 / d;
    const double delta = d * c;
    h *= delta;
    if (std::abs(delta - 1.0) < kGammaEpsilon) break;
  }
  return std::exp(-x + a * std::log(x) - std::lgamma(a)) * h;
}

}  // namespace

double regularized_gamma_q(double a, double x) {
  if (!(a > 0.0) || !(x >= 0.0)) throw Error("regularized_gamma_q needs a > 0 and x >= 0");
  if (x == 0.0) return 1.0;
  if (std::isinf(x)) return 0.0;
  if (x < a + 1.0) return std::clamp(1.0 - gamma_p_series(a, x), 0.0, 1.0);
  return std::clamp(gamma_q_continued_fraction(a, x), 0.0, 1.0);
}

FieldPartition partition_by_field(const Corpus& corpus) {
  std::map<std::string, std::vector<CitationRecord>> groups;
  for (const auto& rec : corpus.authors()) {
    std::map<std::string, CitationRecord> per_field;
    for (const auto& p : rec.papers) {
      if (!p.field || p.field->empty()) {
        throw InputError("paper '" + p.paper_id + "' of author '" + rec.author_id +
                         "' has no field tag");
      }
      auto& sub = per_field[*p.field];
      sub.author_id = rec.author_id;
      sub.papers.push_back(p);
    }
    for (auto& [field, sub] : per_field) groups[field].push_back(std::move(sub));
  }
  FieldPartition out;
  for (auto& [field, records] : groups) out.emplace(field, Corpus(std::move(records)));
  return out;
}

double mean_citations_per_paper(const Corpus& corpus) {
  double total = 0.0;
  std::size_t n = 0;
  for (const auto& rec : corpus.authors()) {
    for (const auto& p : rec.papers) total += static_cast<double>(p.citations);
    n += rec.papers.size();
  }
  if (n == 0) throw Error("sub-corpus has no papers");
  return total / static_cast<double>(n);
}

double mean_ratio(const Corpus& a, const Corpus& b) {
  const double ma = mean_citations_per_paper(a);
  const double mb = mean_citations_per_paper(b);
  if (mb == 0.0) throw Error("ratio undefined");
  return ma / mb;
}

ChiSquareResult chi_square_homogeneity(std::span<const std::int64_t> a,
                                       std::span<const std::int64_t> b) {
  if (a.size() != b.size()) throw Error("count vectors differ in length");
  double ta = 0.0, tb = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] < 0 || b[i] < 0) throw Error("negative count");
    ta += static_cast<double>(a[i]);
    tb += static_cast<double>(b[i]);
  }
  if (ta == 0.0 || tb == 0.0) throw Error("all bins empty on one side");
  const double total = ta + tb;
  ChiSquareResult out;
  int shared = 0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double col = static_cast<double>(a[i] + b[i]);
    if (col == 0.0) continue;
    ++shared;
    const double ea = ta * col / total;
    const double eb = tb * col / total;
    const double da = static_cast<double>(a[i]) - ea;
    const double db = static_cast<double>(b[i]) - eb;
    out.chi_square += da * da / ea + db * db / eb;
  }
  out.degrees_of_freedom = shared - 1;
  out.p_value = out.degrees_of_freedom > 0
                    ? regularized_gamma_q(0.5 * out.degrees_of_freedom, 0.5 * out.chi_square)
                    : 1.0;
  return out;
}

HomogeneityReport compare_fields(const std::string& name_a, const Corpus& a,
                                 const std::string& name_b, const Corpus& b,
                                 const BinningScheme& scheme) {
  auto pooled = [&](const Corpus& c) {
    std::vector<std::int64_t> counts(scheme.num_bins(), 0);
    for (const auto& rec : c.authors()) {
      for (const auto& p : rec.papers) ++counts[scheme.bin_of(p.citations)];
    }
    return counts;
  };
  const auto chi = chi_square_homogeneity(pooled(a), pooled(b));
  return {name_a, name_b, mean_ratio(a, b), chi.chi_square, chi.degrees_of_freedom, chi.p_value};
}

std::vector<HomogeneityReport> compare_all_fields(const FieldPartition& partition,
                                                  const BinningScheme& scheme) {
  std::vector<HomogeneityReport> out;
  for (auto i = partition.begin(); i != partition.end(); ++i) {
    for (auto j = std::next(i); j != partition.end(); ++j) {
      out.push_back(compare_fields(i->first, i->second, j->first, j->second, scheme));
    }
  }
  return out;
}

double percentile_of_value(double value, std::span<const double> others) {
  double below = 0.0, equal = 1.0;  // the author ties with itself
  for (double v : others) {
    if (v < value) {
      below += 1.0;
    } else if (v == value) {
      equal += 1.0;
    }
  }
  return (below + 0.5 * equal) / static_cast<double>(others.size() + 1);
}

double percentile_of(const CitationRecord& author, const Corpus& peers, IndicatorKind kind) {
  if (peers.empty()) throw Error("no peers to rank against");
  const double value = evaluate(kind, author).value;
  std::vector<double> others;
  others.reserve(peers.size());
  for (const auto& rec : peers.authors()) {
    if (rec.author_id == author.author_id) continue;
    others.push_back(evaluate(kind, rec).value);
  }
  return percentile_of_value(value, others);
}

CrossFieldScore combine_percentiles(std::vector<FieldPercentile> fields) {
  if (fields.empty()) throw Error("no fields to combine");
  double weighted = 0.0, weight = 0.0;
  for (const auto& f : fields) {
    weighted += static_cast<double>(f.papers) * f.percentile;
    weight += static_cast<double>(f.papers);
  }
  if (weight == 0.0) throw Error("empty field record");
  return {std::move(fields), weighted / weight};
}

CrossFieldScore cross_field_rank(const std::map<std::string, CitationRecord>& author_records,
                                 const FieldPartition& partition, IndicatorKind kind) {
  std::vector<FieldPercentile> fields;
  for (const auto& [field, record] : author_records) {
    auto it = partition.find(field);
    if (it == partition.end()) throw Error("unknown field tag '" + field + "'");
    if (record.papers.empty()) throw Error("empty field record for '" + field + "'");
    fields.push_back({field, record.papers.size(), percentile_of(record, it->second, kind)});
  }
  return combine_percentiles(std::move(fields));
}

}  // namespace citestat
