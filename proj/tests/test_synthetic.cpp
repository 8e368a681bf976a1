#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numeric>

#include "citestat/bayes.hpp"
#include "citestat/error.hpp"
#include "citestat/synthetic.hpp"

using namespace citestat;

namespace {

double mean_bin_index(const CitationDistribution& d) {
  double m = 0.0;
  for (std::size_t i = 0; i < d.size(); ++i) m += static_cast<double>(i) * d[i];
  return m;
}

}  // namespace

TEST_CASE("presets") {
  const auto global = preset_model("table1_global");
  REQUIRE(global.classes.size() == 1);
  CHECK(global.classes[0].distribution == CitationDistribution::table1());
  const auto homogeneous = preset_model("homogeneous");
  CHECK(std::abs(homogeneous.classes[0].distribution.sum() - 1.0) < 1e-12);

  const auto separated = preset_model("separated");
  REQUIRE(separated.classes.size() == kSeparatedClasses);
  for (std::size_t k = 0; k < separated.classes.size(); ++k) {
    CHECK(separated.classes[k].weight == doctest::Approx(0.1));
    CHECK(std::abs(separated.classes[k].distribution.sum() - 1.0) < 1e-12);
    if (k > 0) {
      CHECK(mean_bin_index(separated.classes[k].distribution) >
            mean_bin_index(separated.classes[k - 1].distribution));
    }
  }
  CHECK(separated.papers_per_author.min == 50);
  CHECK(preset_model("separated", 0.8, 7).papers_per_author.max == 7);
  CHECK_THROWS_WITH_AS(preset_model("bogus"), "unknown preset 'bogus'", Error);
}

TEST_CASE("zero separation gives identical classes") {
  const auto base = CitationDistribution::table1();
  const auto flat = tilted_distribution(base, 0.0, 3, 10);
  for (std::size_t i = 0; i < base.size(); ++i) CHECK(flat[i] == doctest::Approx(base.renormalized()[i]));
}

TEST_CASE("sampling is deterministic and per-author") {
  const auto model = preset_model("separated", kDefaultSeparation, 20);
  const auto a = sample_corpus(model, 50, Seed{42});
  const auto b = sample_corpus(model, 50, Seed{42});
  CHECK(a.corpus == b.corpus);
  CHECK(a.true_class == b.true_class);
  CHECK_FALSE(sample_corpus(model, 50, Seed{43}).corpus == a.corpus);

  // author 17 does not depend on how many authors were drawn before it
  const auto alone = sample_author(model, 17, Seed{42});
  CHECK(alone.record == a.corpus.authors()[17]);
  CHECK(alone.true_class == a.true_class[17]);
  CHECK(a.corpus.authors()[17].author_id == "a00017");
  CHECK(a.corpus.authors()[17].papers[3].paper_id == "p0003");
}

TEST_CASE("sampled counts lie inside the binning scheme") {
  GenerativeModel model = preset_model("separated", 2.0, 30);
  model.papers_per_author = {5, 40};
  const auto sample = sample_corpus(model, 300, Seed{8});
  std::size_t min_seen = 1000, max_seen = 0;
  for (const auto& rec : sample.corpus.authors()) {
    min_seen = std::min(min_seen, rec.papers.size());
    max_seen = std::max(max_seen, rec.papers.size());
    for (const auto& p : rec.papers) {
      REQUIRE(p.citations >= 0);
      REQUIRE(p.citations <= model.top_bin_ceiling);
    }
  }
  CHECK(min_seen >= 5);
  CHECK(max_seen <= 40);
  CHECK(max_seen > min_seen);
}

TEST_CASE("the global preset reproduces the default distribution") {
  const auto model = preset_model("table1_global", kDefaultSeparation, 10);
  const auto sample = sample_corpus(model, 100'000, Seed{2009});
  std::vector<double> counts(6, 0.0);
  double n = 0.0;
  for (const auto& rec : sample.corpus.authors()) {
    const auto b = bin_record(rec, model.scheme);
    for (std::size_t i = 0; i < 6; ++i) counts[i] += static_cast<double>(b.counts[i]);
    n += static_cast<double>(b.total());
  }
  const auto t1 = CitationDistribution::table1().renormalized();
  for (std::size_t i = 0; i < 6; ++i) {
    const double se = std::sqrt(t1[i] * (1.0 - t1[i]) / n);
    INFO("bin " << i);
    CHECK(std::abs(counts[i] / n - t1[i]) < 3.0 * se);
  }
}

TEST_CASE("the posterior mode recovers the true class") {
  const auto sample = sample_corpus(preset_model("separated"), 1000, Seed{77});
  const auto binning = bin_authors(sample.corpus, IndicatorKind::mean_citations, kSeparatedClasses);
  const auto cond = conditional_distributions(sample.corpus, binning, BinningScheme::table1());
  const auto posts = author_posteriors(sample.corpus, binning, cond);
  std::size_t hits = 0;
  for (std::size_t i = 0; i < posts.size(); ++i) hits += posts[i].posterior.mode() == sample.true_class[i];
  CHECK(static_cast<double>(hits) / static_cast<double>(posts.size()) > 0.5);
}

TEST_CASE("two-field corpus") {
  const auto model = preset_model("homogeneous", kDefaultSeparation, 10);
  const auto c = sample_two_field_corpus(model, 20, 2.0, Seed{3});
  REQUIRE(c.size() == 40);
  CHECK(c.authors()[0].author_id == "base-00000");
  CHECK(c.authors()[20].author_id == "inflated-00020");
  for (const auto& rec : c.authors()) {
    const std::string expected = rec.author_id.starts_with("base") ? "base" : "inflated";
    for (const auto& p : rec.papers) {
      REQUIRE(p.field == expected);
      if (expected == "inflated") REQUIRE(p.citations % 2 == 0);
    }
  }
  const auto scaled = scaled_record(c.authors()[0], 1.5, "x", "clone");
  CHECK(scaled.author_id == "clone");
  CHECK(scaled.papers[0].citations == std::llround(1.5 * static_cast<double>(c.authors()[0].papers[0].citations)));
  CHECK_THROWS_AS(scaled_record(c.authors()[0], 0.0, "x", "y"), Error);
}

TEST_CASE("model files") {
  const auto m = model_from_json(
      R"({"classes": [{"weight": 0.25, "probabilities": [0.5, 0.5, 0, 0, 0, 0]},
                      {"weight": 0.75, "probabilities": [0, 0, 0, 0, 0.5, 0.5]}],
          "papers_per_author": [3, 8]})");
  CHECK(m.classes.size() == 2);
  CHECK(m.papers_per_author.min == 3);
  CHECK(m.papers_per_author.max == 8);
  const auto fixed = model_from_json(
      R"({"classes": [{"weight": 1, "probabilities": [0.267, 0.444, 0.224, 0.038, 0.025, 0.00184]}],
          "papers_per_author": 12})");
  CHECK(fixed.papers_per_author.min == 12);

  CHECK_THROWS_AS(model_from_json("{"), InputError);
  CHECK_THROWS_WITH_AS(
      model_from_json(R"({"classes": [{"weight": 0.5, "probabilities": [1, 0, 0, 0, 0, 0]}],
                          "papers_per_author": 4})"),
      doctest::Contains("weights must sum to 1"), InputError);
  CHECK_THROWS_WITH_AS(
      model_from_json(R"({"classes": [{"weight": 1, "probabilities": [1, 0]}],
                          "papers_per_author": 4})"),
      doctest::Contains("scheme"), InputError);
  CHECK_THROWS_AS(load_model("/nonexistent/model.json"), InputError);
}
