#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "citestat/bayes.hpp"
#include "citestat/corpus.hpp"
#include "citestat/error.hpp"
#include "citestat/homogeneity.hpp"
#include "citestat/improbability.hpp"
#include "citestat/indicators.hpp"
#include "citestat/synthetic.hpp"

namespace py = pybind11;
using namespace citestat;

namespace {

AuthorScorer scorer_named(const std::string& name) {
  if (name == "hash") return author_hash_score;
  auto kind = parse_indicator_kind(name);
  if (!kind) throw py::value_error("unknown indicator '" + name + "'");
  return scorer_for(*kind);
}

IndicatorKind kind_named(const std::string& name) {
  auto kind = parse_indicator_kind(name);
  if (!kind) throw py::value_error("unknown indicator '" + name + "'");
  return *kind;
}

BinnedRecord as_binned(std::vector<std::int64_t> counts) { return BinnedRecord{std::move(counts)}; }

}  // namespace

PYBIND11_MODULE(_citestat, m) {
  m.doc() = "Citation statistics: unlikelihood scores, indicator evaluation, field homogeneity";

  py::register_exception<Error>(m, "CitestatError", PyExc_ValueError);

  py::class_<Paper>(m, "Paper")
      .def(py::init([](std::string paper_id, std::int64_t citations, std::optional<int> year,
                       std::optional<std::string> field) {
             Paper p{std::move(paper_id), citations, year, std::move(field)};
             validate_paper(p);
             return p;
           }),
           py::arg("paper_id"), py::arg("citations"), py::arg("year") = py::none(),
           py::arg("field") = py::none())
      .def_readonly("paper_id", &Paper::paper_id)
      .def_readonly("citations", &Paper::citations)
      .def_readonly("year", &Paper::year)
      .def_readonly("field", &Paper::field);

  py::class_<CitationRecord>(m, "CitationRecord")
      .def(py::init<std::string, std::vector<Paper>>(), py::arg("author_id"), py::arg("papers"))
      .def_readonly("author_id", &CitationRecord::author_id)
      .def_readonly("papers", &CitationRecord::papers);

  py::class_<Corpus>(m, "Corpus")
      .def(py::init<std::vector<CitationRecord>>(), py::arg("authors"))
      .def_property_readonly("authors",
                             [](const Corpus& c) {
                               return std::vector<CitationRecord>(c.authors().begin(),
                                                                  c.authors().end());
                             })
      .def("__len__", &Corpus::size)
      .def("total_papers", &Corpus::total_papers)
      .def("to_csv", [](const Corpus& c) {
        std::ostringstream os;
        write_corpus(os, c, CorpusFormat::csv);
        return os.str();
      });

  m.def("load_corpus", &load_corpus_file, py::arg("path"));
  m.def(
      "parse_corpus",
      [](const std::string& text, const std::string& format) {
        std::istringstream in(text);
        return load_corpus(in, format == "json" ? CorpusFormat::json : CorpusFormat::csv);
      },
      py::arg("text"), py::arg("format") = "csv");

  py::class_<BinningScheme>(m, "BinningScheme")
      .def(py::init<std::vector<std::int64_t>>(), py::arg("lower_edges"))
      .def_static("table1", &BinningScheme::table1)
      .def_property_readonly("num_bins", &BinningScheme::num_bins)
      .def_property_readonly("lower_edges",
                             [](const BinningScheme& s) {
                               return std::vector<std::int64_t>(s.lower_edges().begin(),
                                                                s.lower_edges().end());
                             })
      .def("bin_of", &BinningScheme::bin_of, py::arg("citations"));

  py::class_<CitationDistribution>(m, "CitationDistribution")
      .def(py::init<std::vector<double>>(), py::arg("probabilities"))
      .def_static("table1", &CitationDistribution::table1)
      .def_property_readonly("probabilities",
                             [](const CitationDistribution& d) {
                               return std::vector<double>(d.probabilities().begin(),
                                                          d.probabilities().end());
                             })
      .def("renormalized", &CitationDistribution::renormalized);

  m.def(
      "bin_record",
      [](const CitationRecord& r, const BinningScheme& s) { return bin_record(r, s).counts; },
      py::arg("record"), py::arg("scheme") = BinningScheme::table1());

  py::class_<Unlikelihood>(m, "Unlikelihood")
      .def_readonly("r", &Unlikelihood::r)
      .def_readonly("log10_record", &Unlikelihood::log10_record)
      .def_readonly("log10_max", &Unlikelihood::log10_max);

  m.def(
      "log10_record_probability",
      [](std::vector<std::int64_t> counts, const CitationDistribution& d) {
        return log10_record_probability(as_binned(std::move(counts)), d);
      },
      py::arg("counts"), py::arg("dist") = CitationDistribution::table1());
  m.def("log10_max_probability", &log10_max_probability, py::arg("num_papers"),
        py::arg("dist") = CitationDistribution::table1());
  m.def(
      "unlikelihood",
      [](std::vector<std::int64_t> counts, const CitationDistribution& d) {
        return unlikelihood(as_binned(std::move(counts)), d);
      },
      py::arg("counts"), py::arg("dist") = CitationDistribution::table1());

  m.def(
      "evaluate",
      [](const std::string& kind, const CitationRecord& r) {
        return evaluate(kind_named(kind), r).value;
      },
      py::arg("kind"), py::arg("record"));
  m.def("indicator_kinds", [] {
    std::vector<std::string> names;
    for (auto k : all_indicator_kinds()) names.emplace_back(to_string(k));
    return names;
  });

  py::class_<AuthorBinning>(m, "AuthorBinning")
      .def_readonly("num_bins", &AuthorBinning::num_bins)
      .def_readonly("assignment", &AuthorBinning::assignment)
      .def_readonly("bin_sizes", &AuthorBinning::bin_sizes)
      .def_readonly("prior", &AuthorBinning::prior);

  m.def(
      "bin_authors",
      [](const Corpus& c, const std::string& indicator, std::size_t num_bins) {
        return bin_authors(c, scorer_named(indicator), num_bins);
      },
      py::arg("corpus"), py::arg("indicator"), py::arg("num_bins") = kDefaultAuthorBins);

  py::class_<ConditionalDistributions>(m, "ConditionalDistributions")
      .def_property_readonly("rows",
                             [](const ConditionalDistributions& c) {
                               std::vector<std::vector<double>> rows;
                               for (const auto& r : c.rows()) {
                                 rows.emplace_back(r.probabilities().begin(),
                                                   r.probabilities().end());
                               }
                               return rows;
                             })
      .def_property_readonly("pseudocount", &ConditionalDistributions::pseudocount);

  m.def("conditional_distributions", &conditional_distributions, py::arg("corpus"),
        py::arg("binning"), py::arg("scheme") = BinningScheme::table1(),
        py::arg("pseudocount") = kDefaultPseudocount);

  m.def(
      "posterior",
      [](std::vector<std::int64_t> counts, const ConditionalDistributions& c,
         std::vector<double> prior) {
        return posterior(as_binned(std::move(counts)), c, prior).probabilities;
      },
      py::arg("counts"), py::arg("conditionals"), py::arg("prior"));

  py::class_<ConfusionMatrix>(m, "ConfusionMatrix")
      .def_readonly("rows", &ConfusionMatrix::rows)
      .def_readonly("author_counts", &ConfusionMatrix::author_counts);

  py::class_<AssignmentMetrics>(m, "AssignmentMetrics")
      .def_readonly("argmax_accuracy", &AssignmentMetrics::argmax_accuracy)
      .def_readonly("mean_correct_mass", &AssignmentMetrics::mean_correct_mass)
      .def_readonly("per_bin_accuracy", &AssignmentMetrics::per_bin_accuracy)
      .def_readonly("per_bin_correct_mass", &AssignmentMetrics::per_bin_correct_mass);

  m.def(
      "confusion_matrix",
      [](const Corpus& c, const AuthorBinning& b, const ConditionalDistributions& cd, bool loo) {
        return confusion_matrix(c, b, cd, loo);
      },
      py::arg("corpus"), py::arg("binning"), py::arg("conditionals"),
      py::arg("leave_one_out") = false);
  m.def(
      "assignment_metrics",
      [](const Corpus& c, const AuthorBinning& b, const ConditionalDistributions& cd, bool loo) {
        const auto posts = author_posteriors(c, b, cd, loo);
        return assignment_metrics(confusion_matrix(posts, b.num_bins), posts);
      },
      py::arg("corpus"), py::arg("binning"), py::arg("conditionals"),
      py::arg("leave_one_out") = false);

  m.def(
      "kl_divergence",
      [](std::vector<double> p, std::vector<double> q) { return kl_divergence(p, q); },
      py::arg("p"), py::arg("q"));

  py::class_<GenerativeModel>(m, "GenerativeModel")
      .def_property_readonly("num_classes", [](const GenerativeModel& g) { return g.classes.size(); })
      .def_property_readonly("class_distributions", [](const GenerativeModel& g) {
        std::vector<std::vector<double>> rows;
        for (const auto& c : g.classes) {
          rows.emplace_back(c.distribution.probabilities().begin(),
                            c.distribution.probabilities().end());
        }
        return rows;
      });

  m.def("preset_model", &preset_model, py::arg("name"),
        py::arg("separation") = kDefaultSeparation, py::arg("papers_per_author") = 50);
  m.def(
      "sample_corpus",
      [](const GenerativeModel& model, std::size_t n, std::uint64_t seed) {
        auto s = sample_corpus(model, n, Seed{seed});
        return py::make_tuple(std::move(s.corpus), std::move(s.true_class));
      },
      py::arg("model"), py::arg("num_authors"), py::arg("seed") = 0);
  m.def(
      "sample_two_field_corpus",
      [](const GenerativeModel& model, std::size_t n, double scale, std::uint64_t seed) {
        return sample_two_field_corpus(model, n, scale, Seed{seed});
      },
      py::arg("model"), py::arg("authors_per_field"), py::arg("citation_scale"),
      py::arg("seed") = 0);

  m.def(
      "accuracy_curve",
      [](const GenerativeModel& model, std::size_t num_authors, const std::string& indicator,
         std::vector<std::size_t> ns, std::size_t trials, std::uint64_t seed,
         std::size_t num_bins, double pseudocount) {
        CurveOptions opts{num_bins, pseudocount, trials, Seed{seed}};
        std::vector<std::tuple<std::size_t, double, double>> out;
        for (const auto& p : accuracy_curve(model, num_authors, scorer_named(indicator), ns, opts)) {
          out.emplace_back(p.papers, p.argmax_accuracy, p.mean_correct_mass);
        }
        return out;
      },
      py::arg("model"), py::arg("num_authors"), py::arg("indicator"), py::arg("ns"),
      py::arg("trials") = 1, py::arg("seed") = 0, py::arg("num_bins") = kDefaultAuthorBins,
      py::arg("pseudocount") = kDefaultPseudocount);

  m.def(
      "chi_square_homogeneity",
      [](std::vector<std::int64_t> a, std::vector<std::int64_t> b) {
        const auto r = chi_square_homogeneity(a, b);
        return py::make_tuple(r.chi_square, r.degrees_of_freedom, r.p_value);
      },
      py::arg("a"), py::arg("b"));
  m.def("regularized_gamma_q", &regularized_gamma_q, py::arg("a"), py::arg("x"));
  m.def("mean_ratio", &mean_ratio, py::arg("a"), py::arg("b"));
  m.def("partition_by_field", &partition_by_field, py::arg("corpus"));
  m.def(
      "percentile_of",
      [](const CitationRecord& r, const Corpus& peers, const std::string& kind) {
        return percentile_of(r, peers, kind_named(kind));
      },
      py::arg("author"), py::arg("peers"), py::arg("kind") = "mean_citations");
}
