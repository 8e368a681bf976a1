#include <doctest.h>

#include "citestat/report.hpp"

using namespace citestat;

namespace {

template <typename T>
T round_trip(const T& value) {
  const auto text = nlohmann::json(value).dump();
  return nlohmann::json::parse(text).get<T>();
}

}  // namespace

TEST_CASE("report types survive a JSON round trip") {
  const ScoreRow row{"A", 10, {0, 0, 0, 0, 10, 0}, -16.02, -1.57, 14.45};
  CHECK(round_trip(row) == row);

  ConfusionMatrix m{{{0.75, 0.25}, {0.125, 0.875}}, {3, 4}};
  CHECK(round_trip(m) == m);

  const AssignmentMetrics metrics{0.5, 0.8125, {1.0, 0.0}, {0.75, 0.875}};
  CHECK(round_trip(metrics) == metrics);

  const IndicatorReport report{"h_index", m, metrics, {0.3}, "bits"};
  CHECK(round_trip(report) == report);

  const CurveReport curve{{{5, 0.25, 0.3}, {50, 0.8, 0.7}}, -0.0123};
  CHECK(round_trip(curve) == curve);
  CHECK(nlohmann::json(curve.points[0]).at("N") == 5);

  const HomogeneityReport h{"base", "inflated", 0.5, 321.5, 5, 1e-60};
  CHECK(round_trip(h) == h);

  const RankRow rank{"x", {{{"a", 10, 0.9}, {"b", 30, 0.5}}, 0.6}};
  CHECK(round_trip(rank) == rank);
}

TEST_CASE("score rows are sorted by unlikelihood") {
  std::vector<CitationRecord> authors{
      {"B", {{"1", 1000, {}, {}}, {"2", 0, {}, {}}}},
      {"A", {{"1", 100, {}, {}}, {"2", 100, {}, {}}}},
      {"C", {{"1", 3, {}, {}}, {"2", 3, {}, {}}}},
      {"D", {{"1", 3, {}, {}}, {"2", 3, {}, {}}}}};
  const auto rows = score_corpus(Corpus(authors), BinningScheme::table1(),
                                 CitationDistribution::table1());
  REQUIRE(rows.size() == 4);
  for (std::size_t i = 1; i < rows.size(); ++i) CHECK(rows[i - 1].r >= rows[i].r);
  CHECK(rows[0].author_id == "A");
  CHECK(rows[2].author_id == "C");
  CHECK(rows[3].author_id == "D");
  CHECK(rows[0].counts == std::vector<std::int64_t>{0, 0, 0, 0, 2, 0});
}

TEST_CASE("rank_authors covers every tagged author") {
  std::vector<CitationRecord> authors{
      {"x", {{"1", 10, {}, "math"}, {"2", 30, {}, "bio"}}},
      {"y", {{"3", 2, {}, "math"}}},
      {"z", {{"4", 50, {}, "bio"}}}};
  const Corpus corpus(authors);
  const auto rows = rank_authors(corpus, partition_by_field(corpus), IndicatorKind::mean_citations);
  REQUIRE(rows.size() == 3);
  CHECK(rows[0].author_id == "x");
  CHECK(rows[0].score.fields.size() == 2);
  CHECK(rows[1].score.fields.size() == 1);
  CHECK(rows[1].score.combined == doctest::Approx(0.25));
}
