#include "citestat/cli.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <iostream>
#include <optional>
#include <set>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "citestat/bayes.hpp"
#include "citestat/corpus.hpp"
#include "citestat/error.hpp"
#include "citestat/homogeneity.hpp"
#include "citestat/indicators.hpp"
#include "citestat/report.hpp"
#include "citestat/synthetic.hpp"

namespace citestat::cli {

namespace {

enum class OutputFormat { table, csv, json };

struct RunConfig {
  std::string input;
  std::string bins;
  std::string distribution;
  bool renormalize = false;
  std::string indicator = "mean_citations";
  std::size_t num_bins = kDefaultAuthorBins;
  double pseudocount = kDefaultPseudocount;
  std::uint64_t seed = 0;
  bool leave_one_out = false;
  OutputFormat format = OutputFormat::table;
  std::string out;
  std::string matrix_out;
  bool kl_bits = false;
  // synthetic sources
  std::string simulate;
  std::string model;
  std::string preset;
  std::size_t authors = 1000;
  std::size_t papers = 50;
  double separation = kDefaultSeparation;
  double field_scale = 0.0;
  std::string classes_out;
  // curve
  std::vector<std::size_t> ns;
  std::size_t trials = 1;
};

std::string num(double v, int precision = 10) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*g", precision, v);
  return buf;
}

std::string csv_cell(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + '"';
}

// Column-oriented output shared by the table and csv formats.
struct TextTable {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;

  void write(std::ostream& os, OutputFormat format) const {
    if (format == OutputFormat::csv) {
      auto line = [&](const std::vector<std::string>& cells) {
        for (std::size_t i = 0; i < cells.size(); ++i) os << (i ? "," : "") << csv_cell(cells[i]);
        os << '\n';
      };
      line(header);
      for (const auto& r : rows) line(r);
      return;
    }
    std::vector<std::size_t> width(header.size(), 0);
    for (std::size_t i = 0; i < header.size(); ++i) width[i] = header[i].size();
    for (const auto& r : rows) {
      for (std::size_t i = 0; i < r.size() && i < width.size(); ++i) {
        width[i] = std::max(width[i], r[i].size());
      }
    }
    auto line = [&](const std::vector<std::string>& cells) {
      std::string text;
      for (std::size_t i = 0; i < cells.size(); ++i) {
        if (i) text += "  ";
        text += cells[i];
        if (i + 1 < cells.size()) text.append(width[i] - cells[i].size(), ' ');
      }
      os << text << '\n';
    };
    line(header);
    for (const auto& r : rows) line(r);
  }
};

// Routes data to --out when given, otherwise to the command's output stream.
class Sink {
 public:
  Sink(const std::string& path, std::ostream& fallback) : os_(&fallback) {
    if (!path.empty()) {
      file_.open(path, std::ios::binary);
      if (!file_) throw InputError("cannot open output file '" + path + "'");
      os_ = &file_;
    }
  }
  std::ostream& stream() { return *os_; }

 private:
  std::ofstream file_;
  std::ostream* os_;
};

BinningScheme scheme_for(const RunConfig& cfg) {
  return cfg.bins.empty() ? BinningScheme::table1() : load_binning_scheme(cfg.bins);
}

CitationDistribution distribution_for(const RunConfig& cfg, const BinningScheme& scheme) {
  CitationDistribution dist = CitationDistribution::table1();
  if (!cfg.distribution.empty()) {
    std::ifstream in(cfg.distribution);
    if (!in) throw InputError("cannot open distribution file '" + cfg.distribution + "'");
    try {
      dist = CitationDistribution(nlohmann::json::parse(in).get<std::vector<double>>());
    } catch (const nlohmann::json::exception& e) {
      throw InputError("invalid distribution file '" + cfg.distribution + "': " + e.what());
    } catch (const Error& e) {
      throw InputError("invalid distribution file '" + cfg.distribution + "': " + e.what());
    }
  }
  if (dist.size() != scheme.num_bins()) {
    throw InputError("distribution has " + std::to_string(dist.size()) + " bins, scheme has " +
                     std::to_string(scheme.num_bins()) + "; pass --distribution");
  }
  return cfg.renormalize ? dist.renormalized() : dist;
}

GenerativeModel model_for(const RunConfig& cfg, const std::string& preset, std::size_t papers) {
  if (!cfg.model.empty()) return load_model(cfg.model);
  if (!(cfg.separation >= 0.0)) throw InputError("--separation must be non-negative");
  try {
    return preset_model(preset, cfg.separation, papers);
  } catch (const Error& e) {
    throw InputError(e.what());
  }
}

// Corpus from --input, or sampled when --simulate names a preset.
Corpus corpus_for(const RunConfig& cfg, std::size_t papers) {
  if (!cfg.simulate.empty() || !cfg.model.empty()) {
    auto model = model_for(cfg, cfg.simulate, papers);
    return sample_corpus(model, cfg.authors, Seed{cfg.seed}).corpus;
  }
  if (cfg.input.empty()) throw InputError("--input or --simulate is required");
  return load_corpus_file(cfg.input);
}

AuthorScorer scorer_from_name(const std::string& name, bool allow_hash) {
  if (allow_hash && name == "hash") return author_hash_score;
  auto kind = parse_indicator_kind(name);
  if (!kind) throw InputError("unknown indicator '" + name + "'");
  return scorer_for(*kind);
}

IndicatorKind kind_from_name(const std::string& name) {
  auto kind = parse_indicator_kind(name);
  if (!kind) throw InputError("unknown indicator '" + name + "'");
  return *kind;
}

// --- commands ---------------------------------------------------------------

int cmd_score(const RunConfig& cfg, std::ostream& out) {
  if (cfg.input.empty()) throw InputError("--input is required");
  const auto corpus = load_corpus_file(cfg.input);
  const auto scheme = scheme_for(cfg);
  const auto dist = distribution_for(cfg, scheme);
  const auto rows = score_corpus(corpus, scheme, dist);

  Sink sink(cfg.out, out);
  auto& os = sink.stream();
  if (cfg.format == OutputFormat::json) {
    os << nlohmann::json(rows).dump(2) << '\n';
    return kExitOk;
  }
  TextTable t;
  t.header = {"author_id", "N"};
  for (std::size_t i = 0; i < scheme.num_bins(); ++i) t.header.push_back("n_" + std::to_string(i));
  t.header.insert(t.header.end(), {"log10_p", "r"});
  const int precision = cfg.format == OutputFormat::table ? 6 : 10;
  for (const auto& r : rows) {
    std::vector<std::string> cells{r.author_id, std::to_string(r.papers)};
    for (auto c : r.counts) cells.push_back(std::to_string(c));
    cells.push_back(num(r.log10_probability, precision));
    cells.push_back(num(r.r, precision));
    t.rows.push_back(std::move(cells));
  }
  t.write(os, cfg.format);
  return kExitOk;
}

void write_confusion_csv(std::ostream& os, const ConfusionMatrix& m) {
  os << "assigned_bin";
  for (std::size_t a = 0; a < m.size(); ++a) os << ',' << a;
  os << ",authors\n";
  for (std::size_t b = 0; b < m.size(); ++b) {
    os << b;
    for (double v : m.rows[b]) os << ',' << num(v);
    os << ',' << m.author_counts[b] << '\n';
  }
}

int cmd_eval_indicator(const RunConfig& cfg, std::ostream& out) {
  const auto corpus = corpus_for(cfg, cfg.papers);
  const auto scheme = scheme_for(cfg);
  const auto scorer = scorer_from_name(cfg.indicator, true);
  if (cfg.num_bins < 2) throw InputError("--num-bins must be at least 2");
  if (corpus.size() < cfg.num_bins) {
    throw InputError("too few authors: " + std::to_string(corpus.size()) + " authors for " +
                     std::to_string(cfg.num_bins) + " bins");
  }
  const auto binning = bin_authors(corpus, scorer, cfg.num_bins);
  const auto conditionals = conditional_distributions(corpus, binning, scheme, cfg.pseudocount);
  const auto posts = author_posteriors(corpus, binning, conditionals, cfg.leave_one_out);

  IndicatorReport report;
  report.indicator = cfg.indicator;
  report.confusion = confusion_matrix(posts, binning.num_bins);
  report.metrics = assignment_metrics(report.confusion, posts);
  report.adjacent_kl = adjacent_kl(conditionals);
  if (cfg.kl_bits) {
    for (auto& d : report.adjacent_kl) d /= std::log(2.0);
    report.kl_unit = "bits";
  }

  if (!cfg.matrix_out.empty()) {
    Sink matrix(cfg.matrix_out, out);
    write_confusion_csv(matrix.stream(), report.confusion);
  }

  Sink sink(cfg.out, out);
  auto& os = sink.stream();
  if (cfg.format == OutputFormat::json) {
    os << nlohmann::json(report).dump(2) << '\n';
    return kExitOk;
  }
  const bool csv = cfg.format == OutputFormat::csv;
  os << (csv ? "# " : "") << "confusion matrix P(alpha|beta), indicator " << cfg.indicator << '\n';
  TextTable cm;
  cm.header = {"assigned_bin"};
  for (std::size_t a = 0; a < binning.num_bins; ++a) cm.header.push_back(std::to_string(a));
  cm.header.push_back("authors");
  for (std::size_t b = 0; b < binning.num_bins; ++b) {
    std::vector<std::string> cells{std::to_string(b)};
    for (double v : report.confusion.rows[b]) cells.push_back(num(v, csv ? 10 : 4));
    cells.push_back(std::to_string(report.confusion.author_counts[b]));
    cm.rows.push_back(std::move(cells));
  }
  cm.write(os, cfg.format);

  os << '\n' << (csv ? "# " : "") << "assignment metrics\n";
  TextTable mt;
  mt.header = {"bin", "argmax_accuracy", "mean_correct_mass", "authors"};
  for (std::size_t b = 0; b < binning.num_bins; ++b) {
    mt.rows.push_back({std::to_string(b), num(report.metrics.per_bin_accuracy[b]),
                       num(report.metrics.per_bin_correct_mass[b]),
                       std::to_string(report.confusion.author_counts[b])});
  }
  mt.rows.push_back({"all", num(report.metrics.argmax_accuracy),
                     num(report.metrics.mean_correct_mass), std::to_string(corpus.size())});
  mt.write(os, cfg.format);

  os << '\n' << (csv ? "# " : "") << "adjacent KL divergence (" << report.kl_unit << ")\n";
  TextTable kl;
  kl.header = {"alpha", "next", "kl"};
  for (std::size_t a = 0; a < report.adjacent_kl.size(); ++a) {
    kl.rows.push_back({std::to_string(a), std::to_string(a + 1), num(report.adjacent_kl[a])});
  }
  kl.write(os, cfg.format);
  return kExitOk;
}

int cmd_curve(const RunConfig& cfg, std::ostream& out) {
  if (cfg.ns.empty()) throw InputError("empty N list");
  for (auto n : cfg.ns) {
    if (n == 0) throw InputError("N values must be at least 1");
  }
  const auto scorer = scorer_from_name(cfg.indicator, true);
  CurveOptions opts;
  opts.num_bins = cfg.num_bins;
  opts.pseudocount = cfg.pseudocount;
  opts.trials = cfg.trials;
  opts.seed = Seed{cfg.seed};

  CurveReport report;
  if (!cfg.simulate.empty() || !cfg.model.empty()) {
    const auto model = model_for(cfg, cfg.simulate, cfg.papers);
    report.points = accuracy_curve(model, cfg.authors, scorer, cfg.ns, opts);
  } else {
    if (cfg.input.empty()) throw InputError("--input or --simulate is required");
    const auto corpus = load_corpus_file(cfg.input);
    try {
      report.points = accuracy_curve(corpus, scorer, scheme_for(cfg), cfg.ns, opts);
    } catch (const Error& e) {
      throw InputError(e.what());
    }
  }
  report.ln_error_slope =
      report.points.size() >= 2 ? ln_error_slope(report.points) : std::nan("");

  Sink sink(cfg.out, out);
  auto& os = sink.stream();
  if (cfg.format == OutputFormat::json) {
    os << nlohmann::json(report).dump(2) << '\n';
    return kExitOk;
  }
  os << "N\targmax_accuracy\tmean_correct_mass\n";
  for (const auto& p : report.points) {
    os << p.papers << '\t' << num(p.argmax_accuracy) << '\t' << num(p.mean_correct_mass) << '\n';
  }
  os << "# fitted_ln_error_slope\t" << num(report.ln_error_slope) << '\n';
  return kExitOk;
}

int cmd_homogeneity(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  if (cfg.input.empty()) throw InputError("--input is required");
  const auto corpus = load_corpus_file(cfg.input);
  const auto scheme = scheme_for(cfg);
  const auto partition = partition_by_field(corpus);
  if (partition.size() < 2) {
    err << "homogeneity: " << partition.size() << " field(s) present, nothing to compare\n";
  }
  const auto reports = compare_all_fields(partition, scheme);

  Sink sink(cfg.out, out);
  auto& os = sink.stream();
  if (cfg.format == OutputFormat::json) {
    os << nlohmann::json(reports).dump(2) << '\n';
    return kExitOk;
  }
  if (cfg.format == OutputFormat::csv) {
    TextTable t;
    t.header = {"field_a", "field_b", "mean_ratio", "chi_square", "df", "p_value"};
    for (const auto& r : reports) {
      t.rows.push_back({r.field_a, r.field_b, num(r.mean_ratio), num(r.chi_square),
                        std::to_string(r.degrees_of_freedom), num(r.p_value)});
    }
    t.write(os, cfg.format);
    return kExitOk;
  }
  for (std::size_t i = 0; i < reports.size(); ++i) {
    const auto& r = reports[i];
    if (i) os << '\n';
    TextTable t;
    t.header = {"quantity", "value"};
    t.rows = {{"field_a", r.field_a},
              {"field_b", r.field_b},
              {"mean_ratio", num(r.mean_ratio, 6)},
              {"chi_square", num(r.chi_square, 6)},
              {"degrees_of_freedom", std::to_string(r.degrees_of_freedom)},
              {"p_value", num(r.p_value, 6)}};
    t.write(os, cfg.format);
  }
  return kExitOk;
}

int cmd_rank(const RunConfig& cfg, std::ostream& out) {
  if (cfg.input.empty()) throw InputError("--input is required");
  const auto corpus = load_corpus_file(cfg.input);
  const auto kind = kind_from_name(cfg.indicator);
  const auto partition = partition_by_field(corpus);
  const auto rows = rank_authors(corpus, partition, kind);

  Sink sink(cfg.out, out);
  auto& os = sink.stream();
  if (cfg.format == OutputFormat::json) {
    os << nlohmann::json(rows).dump(2) << '\n';
    return kExitOk;
  }
  TextTable t;
  t.header = {"author_id", "combined"};
  for (const auto& [field, sub] : partition) {
    t.header.push_back(field + "_papers");
    t.header.push_back(field + "_percentile");
  }
  const int precision = cfg.format == OutputFormat::table ? 4 : 10;
  for (const auto& row : rows) {
    std::vector<std::string> cells{row.author_id, num(row.score.combined, precision)};
    for (const auto& [field, sub] : partition) {
      auto it = std::find_if(row.score.fields.begin(), row.score.fields.end(),
                             [&](const FieldPercentile& f) { return f.field == field; });
      if (it == row.score.fields.end()) {
        cells.insert(cells.end(), {"", ""});
      } else {
        cells.push_back(std::to_string(it->papers));
        cells.push_back(num(it->percentile, precision));
      }
    }
    t.rows.push_back(std::move(cells));
  }
  t.write(os, cfg.format);
  return kExitOk;
}

int cmd_simulate(const RunConfig& cfg, std::ostream& out) {
  if (cfg.authors == 0) throw InputError("--authors must be at least 1");
  if (cfg.preset.empty() && cfg.model.empty()) throw InputError("--preset or --model is required");
  const auto model = model_for(cfg, cfg.preset, cfg.papers);
  const auto format = cfg.format == OutputFormat::json ? CorpusFormat::json : CorpusFormat::csv;

  Sink sink(cfg.out, out);
  if (cfg.field_scale > 0.0) {
    write_corpus(sink.stream(),
                 sample_two_field_corpus(model, cfg.authors, cfg.field_scale, Seed{cfg.seed}),
                 format);
    return kExitOk;
  }
  const auto sample = sample_corpus(model, cfg.authors, Seed{cfg.seed});
  write_corpus(sink.stream(), sample.corpus, format);
  if (!cfg.classes_out.empty()) {
    Sink classes(cfg.classes_out, out);
    auto& os = classes.stream();
    os << "author_id,true_class\n";
    const auto authors = sample.corpus.authors();
    for (std::size_t i = 0; i < authors.size(); ++i) {
      os << authors[i].author_id << ',' << sample.true_class[i] << '\n';
    }
  }
  return kExitOk;
}

void add_shared_options(CLI::App* sub, RunConfig& cfg) {
  static const std::map<std::string, OutputFormat> kFormats{
      {"table", OutputFormat::table}, {"csv", OutputFormat::csv}, {"json", OutputFormat::json}};
  sub->add_option("--input", cfg.input, "Corpus file (.csv or .json)");
  sub->add_option("--format", cfg.format, "Output format: table, csv or json")
      ->transform(CLI::CheckedTransformer(kFormats, CLI::ignore_case));
  sub->add_option("--bins", cfg.bins, "Binning scheme: JSON array of lower edges");
  sub->add_option("--indicator", cfg.indicator, "Indicator name");
  sub->add_option("--num-bins", cfg.num_bins, "Number of author bins")->check(CLI::Range(2, 100000));
  sub->add_option("--pseudocount", cfg.pseudocount, "Smoothing pseudocount per citation bin")
      ->check(CLI::NonNegativeNumber);
  sub->add_option("--seed", cfg.seed, "Random seed");
  sub->add_flag("--leave-one-out", cfg.leave_one_out, "Remove each author from its own bin");
  sub->add_option("--out", cfg.out, "Write output to PATH");
}

void add_source_options(CLI::App* sub, RunConfig& cfg) {
  sub->add_option("--simulate", cfg.simulate, "Sample a corpus from a preset model");
  sub->add_option("--model", cfg.model, "Sample a corpus from a JSON model file");
  sub->add_option("--authors", cfg.authors, "Number of simulated authors");
  sub->add_option("--papers", cfg.papers, "Papers per simulated author");
  sub->add_option("--separation", cfg.separation, "Class separation g of the separated preset");
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"citestat: citation statistics and indicator evaluation"};
  app.require_subcommand(1);
  RunConfig cfg;

  auto* score = app.add_subcommand("score", "Unlikelihood r of every author");
  add_shared_options(score, cfg);
  score->add_option("--distribution", cfg.distribution, "JSON array of bin probabilities");
  score->add_flag("--renormalize", cfg.renormalize, "Rescale the distribution to sum to 1");

  auto* eval = app.add_subcommand("eval-indicator", "Confusion matrix and metrics of an indicator");
  add_shared_options(eval, cfg);
  add_source_options(eval, cfg);
  eval->add_option("--matrix-out", cfg.matrix_out, "Write the confusion matrix CSV to PATH");
  eval->add_flag("--kl-bits", cfg.kl_bits, "Report KL divergence in bits");

  auto* curve = app.add_subcommand("curve", "Assignment accuracy against papers per author");
  add_shared_options(curve, cfg);
  add_source_options(curve, cfg);
  curve->add_option("--ns", cfg.ns, "Comma-separated paper counts")->delimiter(',');
  curve->add_option("--trials", cfg.trials, "Subsampling trials per N")->check(CLI::PositiveNumber);

  auto* homog = app.add_subcommand("homogeneity", "Compare citation cultures between fields");
  add_shared_options(homog, cfg);

  auto* rank = app.add_subcommand("rank", "Per-field and combined percentiles");
  add_shared_options(rank, cfg);

  auto* sim = app.add_subcommand("simulate", "Write a synthetic corpus");
  add_shared_options(sim, cfg);
  sim->add_option("--preset", cfg.preset, "separated, homogeneous or table1_global");
  sim->add_option("--model", cfg.model, "JSON model file");
  sim->add_option("--authors", cfg.authors, "Number of authors (per field with --field-scale)");
  sim->add_option("--papers", cfg.papers, "Papers per author");
  sim->add_option("--separation", cfg.separation, "Class separation g of the separated preset");
  sim->add_option("--field-scale", cfg.field_scale,
                  "Emit two fields, citations of the second multiplied by this factor");
  sim->add_option("--classes-out", cfg.classes_out, "Write true classes to PATH");

  std::vector<const char*> argv;
  argv.reserve(args.size());
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return kExitInputError;
  }

  try {
    if (score->parsed()) return cmd_score(cfg, out);
    if (eval->parsed()) return cmd_eval_indicator(cfg, out);
    if (curve->parsed()) return cmd_curve(cfg, out);
    if (homog->parsed()) return cmd_homogeneity(cfg, out, err);
    if (rank->parsed()) return cmd_rank(cfg, out);
    if (sim->parsed()) return cmd_simulate(cfg, out);
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return kExitInputError;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitInputError;
  }
  return kExitInputError;
}

}  // namespace citestat::cli
