#include "citestat/report.hpp"

#include <algorithm>

#include "citestat/improbability.hpp"

namespace citestat {

std::vector<ScoreRow> score_corpus(const Corpus& corpus, const BinningScheme& scheme,
                                   const CitationDistribution& dist) {
  std::vector<ScoreRow> rows;
  rows.reserve(corpus.size());
  for (const auto& rec : corpus.authors()) {
    const auto binned = bin_record(rec, scheme);
    const auto u = unlikelihood(binned, dist);
    rows.push_back({rec.author_id, binned.total(), binned.counts, u.log10_record, u.log10_max, u.r});
  }
  std::sort(rows.begin(), rows.end(), [](const ScoreRow& a, const ScoreRow& b) {
    if (a.r != b.r) return a.r > b.r;
    return a.author_id < b.author_id;
  });
  return rows;
}

std::vector<RankRow> rank_authors(const Corpus& corpus, const FieldPartition& partition,
                                  IndicatorKind kind) {
  std::vector<RankRow> out;
  out.reserve(corpus.size());
  for (const auto& rec : corpus.authors()) {
    std::map<std::string, CitationRecord> per_field;
    for (const auto& [field, sub] : partition) {
      if (const auto* r = sub.find(rec.author_id)) per_field.emplace(field, *r);
    }
    if (per_field.empty()) continue;
    out.push_back({rec.author_id, cross_field_rank(per_field, partition, kind)});
  }
  return out;
}

void to_json(nlohmann::json& j, const ScoreRow& row) {
  j = {{"author_id", row.author_id},   {"papers", row.papers},
       {"counts", row.counts},         {"log10_probability", row.log10_probability},
       {"log10_max", row.log10_max},   {"r", row.r}};
}

void from_json(const nlohmann::json& j, ScoreRow& row) {
  j.at("author_id").get_to(row.author_id);
  j.at("papers").get_to(row.papers);
  j.at("counts").get_to(row.counts);
  j.at("log10_probability").get_to(row.log10_probability);
  j.at("log10_max").get_to(row.log10_max);
  j.at("r").get_to(row.r);
}

void to_json(nlohmann::json& j, const ConfusionMatrix& m) {
  j = {{"rows", m.rows}, {"author_counts", m.author_counts}};
}

void from_json(const nlohmann::json& j, ConfusionMatrix& m) {
  j.at("rows").get_to(m.rows);
  j.at("author_counts").get_to(m.author_counts);
}

void to_json(nlohmann::json& j, const AssignmentMetrics& m) {
  j = {{"argmax_accuracy", m.argmax_accuracy},
       {"mean_correct_mass", m.mean_correct_mass},
       {"per_bin_accuracy", m.per_bin_accuracy},
       {"per_bin_correct_mass", m.per_bin_correct_mass}};
}

void from_json(const nlohmann::json& j, AssignmentMetrics& m) {
  j.at("argmax_accuracy").get_to(m.argmax_accuracy);
  j.at("mean_correct_mass").get_to(m.mean_correct_mass);
  j.at("per_bin_accuracy").get_to(m.per_bin_accuracy);
  j.at("per_bin_correct_mass").get_to(m.per_bin_correct_mass);
}

void to_json(nlohmann::json& j, const IndicatorReport& r) {
  j = {{"indicator", r.indicator},
       {"confusion", r.confusion},
       {"metrics", r.metrics},
       {"adjacent_kl", r.adjacent_kl},
       {"kl_unit", r.kl_unit}};
}

void from_json(const nlohmann::json& j, IndicatorReport& r) {
  j.at("indicator").get_to(r.indicator);
  j.at("confusion").get_to(r.confusion);
  j.at("metrics").get_to(r.metrics);
  j.at("adjacent_kl").get_to(r.adjacent_kl);
  j.at("kl_unit").get_to(r.kl_unit);
}

void to_json(nlohmann::json& j, const CurvePoint& p) {
  j = {{"N", p.papers},
       {"argmax_accuracy", p.argmax_accuracy},
       {"mean_correct_mass", p.mean_correct_mass}};
}

void from_json(const nlohmann::json& j, CurvePoint& p) {
  j.at("N").get_to(p.papers);
  j.at("argmax_accuracy").get_to(p.argmax_accuracy);
  j.at("mean_correct_mass").get_to(p.mean_correct_mass);
}

void to_json(nlohmann::json& j, const CurveReport& r) {
  j = {{"points", r.points}, {"ln_error_slope", r.ln_error_slope}};
}

void from_json(const nlohmann::json& j, CurveReport& r) {
  j.at("points").get_to(r.points);
  j.at("ln_error_slope").get_to(r.ln_error_slope);
}

void to_json(nlohmann::json& j, const HomogeneityReport& r) {
  j = {{"field_a", r.field_a},       {"field_b", r.field_b},
       {"mean_ratio", r.mean_ratio}, {"chi_square", r.chi_square},
       {"degrees_of_freedom", r.degrees_of_freedom}, {"p_value", r.p_value}};
}

void from_json(const nlohmann::json& j, HomogeneityReport& r) {
  j.at("field_a").get_to(r.field_a);
  j.at("field_b").get_to(r.field_b);
  j.at("mean_ratio").get_to(r.mean_ratio);
  j.at("chi_square").get_to(r.chi_square);
  j.at("degrees_of_freedom").get_to(r.degrees_of_freedom);
  j.at("p_value").get_to(r.p_value);
}

void to_json(nlohmann::json& j, const FieldPercentile& f) {
  j = {{"field", f.field}, {"papers", f.papers}, {"percentile", f.percentile}};
}

void from_json(const nlohmann::json& j, FieldPercentile& f) {
  j.at("field").get_to(f.field);
  j.at("papers").get_to(f.papers);
  j.at("percentile").get_to(f.percentile);
}

void to_json(nlohmann::json& j, const RankRow& r) {
  j = {{"author_id", r.author_id}, {"combined", r.score.combined}, {"fields", r.score.fields}};
}

void from_json(const nlohmann::json& j, RankRow& r) {
  j.at("author_id").get_to(r.author_id);
  j.at("combined").get_to(r.score.combined);
  j.at("fields").get_to(r.score.fields);
}

}  // namespace citestat
