#include "citestat/corpus.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <istream>
#include <ostream>
#include <set>
#include <sstream>
#include <utility>

#include <json.hpp>

#include "citestat/error.hpp"

namespace citestat {

namespace {

constexpr std::string_view kCsvHeader = "author_id,paper_id,citations,year,field";

std::vector<std::string> split_csv_line(std::string_view line, std::size_t line_no) {
  std::vector<std::string> cells;
  std::string cell;
  bool quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    const char c = line[i];
    if (quoted) {
      if (c == '"') {
        if (i + 1 < line.size() && line[i + 1] == '"') {
          cell += '"';
          ++i;
        } else {
          quoted = false;
        }
      } else {
        cell += c;
      }
    } else if (c == '"') {
      quoted = true;
    } else if (c == ',') {
      cells.push_back(std::move(cell));
      cell.clear();
    } else {
      cell += c;
    }
  }
  if (quoted) throw InputError("line " + std::to_string(line_no) + ": unterminated quote");
  cells.push_back(std::move(cell));
  return cells;
}

std::string csv_escape(std::string_view s) {
  if (s.find_first_of(",\"\n") == std::string_view::npos) return std::string(s);
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
  return out;
}

template <typename Int>
bool parse_int(std::string_view text, Int& value) {
  if (text.empty()) return false;
  const auto* end = text.data() + text.size();
  auto [ptr, ec] = std::from_chars(text.data(), end, value);
  return ec == std::errc() && ptr == end;
}

// Groups papers by author in order of first appearance.
class CorpusBuilder {
 public:
  void add(const std::string& author_id, Paper paper, const std::string& where) {
    if (author_id.empty()) throw InputError(where + ": empty author_id");
    try {
      validate_paper(paper);
    } catch (const Error& e) {
      throw InputError(where + ": " + e.what());
    }
    if (!seen_.insert({author_id, paper.paper_id}).second) {
      throw InputError(where + ": duplicate paper '" + paper.paper_id + "' for author '" +
                       author_id + "'");
    }
    auto [it, inserted] = index_.try_emplace(author_id, records_.size());
    if (inserted) records_.push_back(CitationRecord{author_id, {}});
    records_[it->second].papers.push_back(std::move(paper));
  }

  // Authors listed without papers (json only).
  void add_author(const std::string& author_id, const std::string& where) {
    if (author_id.empty()) throw InputError(where + ": empty author_id");
    auto [it, inserted] = index_.try_emplace(author_id, records_.size());
    if (inserted) records_.push_back(CitationRecord{author_id, {}});
  }

  Corpus build() && { return Corpus(std::move(records_)); }

 private:
  std::vector<CitationRecord> records_;
  std::unordered_map<std::string, std::size_t> index_;
  std::set<std::pair<std::string, std::string>> seen_;
};

Corpus load_csv(std::istream& in) {
  std::string line;
  std::size_t line_no = 0;
  bool have_header = false;
  CorpusBuilder builder;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (!have_header) {
      if (line_no == 1 && line.starts_with("\xEF\xBB\xBF")) line.erase(0, 3);
      if (line != kCsvHeader) {
        throw InputError("line " + std::to_string(line_no) + ": expected header '" +
                         std::string(kCsvHeader) + "'");
      }
      have_header = true;
      continue;
    }
    if (line.empty()) continue;
    const std::string where = "line " + std::to_string(line_no);
    auto cells = split_csv_line(line, line_no);
    if (cells.size() != 5) {
      throw InputError(where + ": expected 5 fields, found " + std::to_string(cells.size()));
    }
    Paper paper;
    paper.paper_id = cells[1];
    if (paper.paper_id.empty()) throw InputError(where + ": empty paper_id");
    if (!parse_int(cells[2], paper.citations)) {
      throw InputError(where + ": invalid citation count '" + cells[2] + "'");
    }
    if (!cells[3].empty()) {
      int year = 0;
      if (!parse_int(cells[3], year)) throw InputError(where + ": invalid year '" + cells[3] + "'");
      paper.year = year;
    }
    if (!cells[4].empty()) paper.field = cells[4];
    builder.add(cells[0], std::move(paper), where);
  }
  if (!have_header) throw InputError("line 1: missing header");
  return std::move(builder).build();
}

Corpus load_json(std::istream& in) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw InputError(std::string("invalid JSON: ") + e.what());
  }
  if (!doc.is_array()) throw InputError("JSON corpus must be an array of authors");
  CorpusBuilder builder;
  for (std::size_t a = 0; a < doc.size(); ++a) {
    const auto& author = doc[a];
    const std::string where = "author " + std::to_string(a);
    try {
      const auto id = author.at("author_id").get<std::string>();
      builder.add_author(id, where);
      const auto& papers = author.at("papers");
      if (!papers.is_array()) throw InputError(where + ": papers must be an array");
      for (std::size_t p = 0; p < papers.size(); ++p) {
        const auto& jp = papers[p];
        Paper paper;
        paper.paper_id = jp.at("paper_id").get<std::string>();
        paper.citations = jp.at("citations").get<std::int64_t>();
        if (jp.contains("year") && !jp["year"].is_null()) paper.year = jp["year"].get<int>();
        if (jp.contains("field") && !jp["field"].is_null()) {
          paper.field = jp["field"].get<std::string>();
        }
        builder.add(id, std::move(paper), where + ", paper " + std::to_string(p));
      }
    } catch (const nlohmann::json::exception& e) {
      throw InputError(where + ": " + e.what());
    }
  }
  return std::move(builder).build();
}

}  // namespace

// --- Corpus -----------------------------------------------------------------

Corpus::Corpus(std::vector<CitationRecord> authors) : authors_(std::move(authors)) {
  index_.reserve(authors_.size());
  for (std::size_t i = 0; i < authors_.size(); ++i) {
    const auto& rec = authors_[i];
    if (rec.author_id.empty()) throw Error("author_id must be non-empty");
    if (!index_.emplace(rec.author_id, i).second) {
      throw Error("duplicate author_id '" + rec.author_id + "'");
    }
    for (const auto& paper : rec.papers) validate_paper(paper);
  }
}

std::size_t Corpus::total_papers() const {
  std::size_t n = 0;
  for (const auto& rec : authors_) n += rec.papers.size();
  return n;
}

const CitationRecord* Corpus::find(std::string_view author_id) const {
  auto idx = index_of(author_id);
  return idx ? &authors_[*idx] : nullptr;
}

std::optional<std::size_t> Corpus::index_of(std::string_view author_id) const {
  auto it = index_.find(std::string(author_id));
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

void validate_paper(const Paper& paper) {
  if (paper.citations < 0) {
    throw Error("negative citation count " + std::to_string(paper.citations));
  }
  if (paper.year && (*paper.year < kMinYear || *paper.year > kMaxYear)) {
    throw Error("year " + std::to_string(*paper.year) + " outside [1800, 2200]");
  }
}

// --- BinningScheme ----------------------------------------------------------

BinningScheme::BinningScheme(std::vector<std::int64_t> lower_edges,
                             std::vector<std::string> labels)
    : edges_(std::move(lower_edges)), labels_(std::move(labels)) {
  if (edges_.size() < 2) throw Error("binning scheme needs at least 2 bins");
  if (edges_.front() != 0) throw Error("first bin edge must be 0");
  for (std::size_t i = 1; i < edges_.size(); ++i) {
    if (edges_[i] <= edges_[i - 1]) throw Error("bin edges must be strictly increasing");
  }
  if (!labels_.empty() && labels_.size() != edges_.size()) {
    throw Error("binning scheme labels must match the number of bins");
  }
}

BinningScheme BinningScheme::table1() {
  return BinningScheme({0, 1, 10, 50, 100, 500},
                       {"Unknown papers", "Less known papers", "Known papers",
                        "Well-known papers", "Famous papers", "Renowned papers"});
}

std::size_t BinningScheme::bin_of(std::int64_t citations) const {
  if (citations < 0) throw Error("negative citation count");
  auto it = std::upper_bound(edges_.begin(), edges_.end(), citations);
  return static_cast<std::size_t>(it - edges_.begin()) - 1;
}

std::optional<std::int64_t> BinningScheme::upper_edge(std::size_t bin) const {
  if (bin >= edges_.size()) throw Error("bin index out of range");
  if (bin + 1 == edges_.size()) return std::nullopt;
  return edges_[bin + 1] - 1;
}

BinningScheme binning_scheme_from_json(std::string_view text) {
  try {
    auto doc = nlohmann::json::parse(text);
    return BinningScheme(doc.get<std::vector<std::int64_t>>());
  } catch (const nlohmann::json::exception& e) {
    throw InputError(std::string("invalid binning scheme: ") + e.what());
  } catch (const InputError&) {
    throw;
  } catch (const Error& e) {
    throw InputError(std::string("invalid binning scheme: ") + e.what());
  }
}

BinningScheme load_binning_scheme(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open binning scheme '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return binning_scheme_from_json(ss.str());
}

// --- binning ----------------------------------------------------------------

std::int64_t BinnedRecord::total() const {
  std::int64_t n = 0;
  for (auto c : counts) n += c;
  return n;
}

std::size_t bin_paper(std::int64_t citations, const BinningScheme& scheme) {
  return scheme.bin_of(citations);
}

BinnedRecord bin_papers(std::span<const Paper> papers, const BinningScheme& scheme) {
  BinnedRecord binned{std::vector<std::int64_t>(scheme.num_bins(), 0)};
  for (const auto& paper : papers) ++binned.counts[scheme.bin_of(paper.citations)];
  return binned;
}

BinnedRecord bin_record(const CitationRecord& record, const BinningScheme& scheme) {
  return bin_papers(record.papers, scheme);
}

CitationDistribution empirical_distribution(std::span<const Paper> papers,
                                            const BinningScheme& scheme) {
  if (papers.empty()) throw Error("no papers");
  const auto binned = bin_papers(papers, scheme);
  const double total = static_cast<double>(papers.size());
  std::vector<double> p(binned.size());
  for (std::size_t i = 0; i < p.size(); ++i) p[i] = static_cast<double>(binned.counts[i]) / total;
  return CitationDistribution(std::move(p));
}

// --- I/O --------------------------------------------------------------------

CorpusFormat corpus_format_for_path(std::string_view path) {
  return path.ends_with(".json") ? CorpusFormat::json : CorpusFormat::csv;
}

Corpus load_corpus(std::istream& in, CorpusFormat format) {
  return format == CorpusFormat::json ? load_json(in) : load_csv(in);
}

Corpus load_corpus_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot open input file '" + path + "'");
  return load_corpus(in, corpus_format_for_path(path));
}

void write_corpus(std::ostream& out, const Corpus& corpus, CorpusFormat format) {
  if (format == CorpusFormat::csv) {
    out << kCsvHeader << '\n';
    for (const auto& rec : corpus.authors()) {
      for (const auto& p : rec.papers) {
        out << csv_escape(rec.author_id) << ',' << csv_escape(p.paper_id) << ',' << p.citations
            << ',';
        if (p.year) out << *p.year;
        out << ',';
        if (p.field) out << csv_escape(*p.field);
        out << '\n';
      }
    }
    return;
  }
  auto doc = nlohmann::json::array();
  for (const auto& rec : corpus.authors()) {
    auto papers = nlohmann::json::array();
    for (const auto& p : rec.papers) {
      nlohmann::json jp{{"paper_id", p.paper_id}, {"citations", p.citations}};
      if (p.year) jp["year"] = *p.year;
      if (p.field) jp["field"] = *p.field;
      papers.push_back(std::move(jp));
    }
    doc.push_back({{"author_id", rec.author_id}, {"papers", std::move(papers)}});
  }
  out << doc.dump(1) << '\n';
}

}  // namespace citestat
