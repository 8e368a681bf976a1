#pragma once

// Report rows produced by the command-line tool, with JSON conversions.

#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

#include "citestat/bayes.hpp"
#include "citestat/corpus.hpp"
#include "citestat/distribution.hpp"
#include "citestat/homogeneity.hpp"

namespace citestat {

struct ScoreRow {
  std::string author_id;
  std::int64_t papers = 0;
  std::vector<std::int64_t> counts;
  double log10_probability = 0.0;
  double log10_max = 0.0;
  double r = 0.0;

  friend bool operator==(const ScoreRow&, const ScoreRow&) = default;
};

// One row per author, sorted by r descending (ties by author id).
std::vector<ScoreRow> score_corpus(const Corpus& corpus, const BinningScheme& scheme,
                                   const CitationDistribution& dist);

struct IndicatorReport {
  std::string indicator;
  ConfusionMatrix confusion;
  AssignmentMetrics metrics;
  std::vector<double> adjacent_kl;
  std::string kl_unit = "nats";

  friend bool operator==(const IndicatorReport&, const IndicatorReport&) = default;
};

struct CurveReport {
  std::vector<CurvePoint> points;
  double ln_error_slope = 0.0;

  friend bool operator==(const CurveReport&, const CurveReport&) = default;
};

struct RankRow {
  std::string author_id;
  CrossFieldScore score;

  friend bool operator==(const RankRow&, const RankRow&) = default;
};

// Per-field percentiles of every author against the peers of each field.
std::vector<RankRow> rank_authors(const Corpus& corpus, const FieldPartition& partition,
                                  IndicatorKind kind);

void to_json(nlohmann::json& j, const ScoreRow& row);
void from_json(const nlohmann::json& j, ScoreRow& row);
void to_json(nlohmann::json& j, const ConfusionMatrix& m);
void from_json(const nlohmann::json& j, ConfusionMatrix& m);
void to_json(nlohmann::json& j, const AssignmentMetrics& m);
void from_json(const nlohmann::json& j, AssignmentMetrics& m);
void to_json(nlohmann::json& j, const IndicatorReport& r);
void from_json(const nlohmann::json& j, IndicatorReport& r);
void to_json(nlohmann::json& j, const CurvePoint& p);
void from_json(const nlohmann::json& j, CurvePoint& p);
void to_json(nlohmann::json& j, const CurveReport& r);
void from_json(const nlohmann::json& j, CurveReport& r);
void to_json(nlohmann::json& j, const HomogeneityReport& r);
void from_json(const nlohmann::json& j, HomogeneityReport& r);
void to_json(nlohmann::json& j, const FieldPercentile& f);
void from_json(const nlohmann::json& j, FieldPercentile& f);
void to_json(nlohmann::json& j, const RankRow& r);
void from_json(const nlohmann::json& j, RankRow& r);

}  // namespace citestat
