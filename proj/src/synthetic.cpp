#include "citestat/synthetic.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "citestat/error.hpp"

namespace citestat {

namespace {

std::string numbered_id(std::string_view prefix, std::size_t index, int width) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%0*zu", width, index);
  return std::string(prefix) + buf;
}

}  // namespace

void GenerativeModel::validate() const {
  if (classes.empty()) throw Error("generative model needs at least one class");
  double total = 0.0;
  for (const auto& c : classes) {
    if (!(c.weight >= 0.0)) throw Error("class weights must be non-negative");
    if (c.distribution.size() != scheme.num_bins()) {
      throw Error("class distribution does not match the binning scheme");
    }
    total += c.weight;
  }
  if (std::abs(total - 1.0) > 1e-9) throw Error("class weights must sum to 1");
  if (papers_per_author.min > papers_per_author.max) throw Error("empty paper-count range");
  if (top_bin_ceiling < scheme.lower_edges().back()) {
    throw Error("top bin ceiling below the last bin edge");
  }
}

CitationDistribution tilted_distribution(const CitationDistribution& base, double separation,
                                         std::size_t class_index, std::size_t num_classes) {
  const double centre = 0.5 * static_cast<double>(num_classes - 1);
  const double slope = separation * (static_cast<double>(class_index) - centre);
  std::vector<double> w(base.size());
  double total = 0.0;
  for (std::size_t i = 0; i < base.size(); ++i) {
    w[i] = base[i] * std::exp(slope * static_cast<double>(i));
    total += w[i];
  }
  for (auto& x : w) x /= total;
  return CitationDistribution(std::move(w));
}

GenerativeModel preset_model(std::string_view name, double separation,
                             std::size_t papers_per_author) {
  GenerativeModel model;
  model.papers_per_author = {papers_per_author, papers_per_author};
  const auto table1 = CitationDistribution::table1();
  if (name == "table1_global") {
    model.classes.push_back({1.0, table1});
  } else if (name == "homogeneous") {
    model.classes.push_back({1.0, table1.renormalized()});
  } else if (name == "separated") {
    const double w = 1.0 / static_cast<double>(kSeparatedClasses);
    for (std::size_t k = 0; k < kSeparatedClasses; ++k) {
      model.classes.push_back({w, tilted_distribution(table1, separation, k, kSeparatedClasses)});
    }
  } else {
    throw Error("unknown preset '" + std::string(name) + "'");
  }
  model.validate();
  return model;
}

GenerativeModel model_from_json(std::string_view text) {
  GenerativeModel model;
  try {
    const auto doc = nlohmann::json::parse(text);
    for (const auto& c : doc.at("classes")) {
      model.classes.push_back(
          {c.at("weight").get<double>(),
           CitationDistribution(c.at("probabilities").get<std::vector<double>>())});
    }
    const auto& ppa = doc.at("papers_per_author");
    if (ppa.is_array()) {
      const auto range = ppa.get<std::vector<std::size_t>>();
      if (range.size() != 2) throw InputError("papers_per_author range must be [min, max]");
      model.papers_per_author = {range[0], range[1]};
    } else {
      const auto n = ppa.get<std::size_t>();
      model.papers_per_author = {n, n};
    }
    model.validate();
  } catch (const nlohmann::json::exception& e) {
    throw InputError(std::string("invalid model: ") + e.what());
  } catch (const InputError&) {
    throw;
  } catch (const Error& e) {
    throw InputError(std::string("invalid model: ") + e.what());
  }
  return model;
}

GenerativeModel load_model(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open model file '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return model_from_json(ss.str());
}

SampledAuthor sample_author(const GenerativeModel& model, std::size_t index, Seed seed,
                            std::string_view id_prefix) {
  auto rng = Rng::substream(seed, {index});
  std::vector<double> weights;
  weights.reserve(model.classes.size());
  for (const auto& c : model.classes) weights.push_back(c.weight);

  SampledAuthor out;
  out.true_class = rng.categorical(weights);
  const auto& dist = model.classes[out.true_class].distribution;
  const auto& range = model.papers_per_author;
  const auto num_papers =
      range.min + static_cast<std::size_t>(rng.below(range.max - range.min + 1));

  out.record.author_id = numbered_id(id_prefix, index, 5);
  out.record.papers.reserve(num_papers);
  for (std::size_t p = 0; p < num_papers; ++p) {
    const auto bin = rng.categorical(dist.probabilities());
    const auto lo = model.scheme.lower_edge(bin);
    const auto hi = model.scheme.upper_edge(bin).value_or(model.top_bin_ceiling);
    Paper paper;
    paper.paper_id = numbered_id("p", p, 4);
    paper.citations = rng.between(lo, hi);
    out.record.papers.push_back(std::move(paper));
  }
  return out;
}

SyntheticCorpus sample_corpus(const GenerativeModel& model, std::size_t num_authors, Seed seed) {
  model.validate();
  if (num_authors == 0) throw Error("num_authors must be at least 1");
  std::vector<CitationRecord> records;
  std::vector<std::size_t> classes;
  records.reserve(num_authors);
  classes.reserve(num_authors);
  for (std::size_t i = 0; i < num_authors; ++i) {
    auto a = sample_author(model, i, seed);
    records.push_back(std::move(a.record));
    classes.push_back(a.true_class);
  }
  return {Corpus(std::move(records)), std::move(classes)};
}

CitationRecord scaled_record(const CitationRecord& record, double citation_scale,
                             std::string_view field, std::string_view author_id) {
  if (!(citation_scale > 0.0)) throw Error("citation scale must be positive");
  CitationRecord out{std::string(author_id), record.papers};
  for (auto& p : out.papers) {
    p.citations = std::llround(static_cast<double>(p.citations) * citation_scale);
    p.field = std::string(field);
  }
  return out;
}

Corpus sample_two_field_corpus(const GenerativeModel& model, std::size_t authors_per_field,
                               double citation_scale, Seed seed) {
  model.validate();
  if (authors_per_field == 0) throw Error("authors_per_field must be at least 1");
  std::vector<CitationRecord> records;
  records.reserve(2 * authors_per_field);
  // distinct substreams per field: the inflated group uses indices offset by
  // authors_per_field so the two groups never share a draw
  for (std::size_t i = 0; i < authors_per_field; ++i) {
    auto a = sample_author(model, i, seed, "base-");
    records.push_back(scaled_record(a.record, 1.0, kBaseField, a.record.author_id));
  }
  for (std::size_t i = 0; i < authors_per_field; ++i) {
    auto a = sample_author(model, authors_per_field + i, seed, "inflated-");
    records.push_back(scaled_record(a.record, citation_scale, kInflatedField, a.record.author_id));
  }
  return Corpus(std::move(records));
}

std::vector<CurvePoint> accuracy_curve(const GenerativeModel& model, std::size_t num_authors,
                                       const AuthorScorer& scorer,
                                       std::span<const std::size_t> paper_counts,
                                       const CurveOptions& options) {
  if (paper_counts.empty()) throw Error("empty N list");
  auto full = model;
  const auto max_n = *std::max_element(paper_counts.begin(), paper_counts.end());
  full.papers_per_author = {std::max(max_n, model.papers_per_author.min),
                            std::max(max_n, model.papers_per_author.max)};
  const auto sample = sample_corpus(full, num_authors, options.seed);
  return accuracy_curve(sample.corpus, scorer, model.scheme, paper_counts, options);
}

}  // namespace citestat
