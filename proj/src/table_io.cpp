#include "citenet/table_io.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include <nlohmann/json.hpp>

namespace citenet::io {

std::string format_double(double v) {
  if (v == 0.0) return "0";
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.12g", v);
  return buf;
}

std::string csv_escape(const std::string& field) {
  if (field.find_first_of(",\"\n\r") == std::string::npos) return field;
  std::string out = "\"";
  for (const char c : field) {
    if (c == '"') out += "\"\"";
    else out.push_back(c);
  }
  out += '"';
  return out;
}

std::string Table::to_csv() const {
  std::ostringstream os;
  for (const auto& [k, v] : metadata) os << "# " << k << '=' << v << '\n';
  for (size_t i = 0; i < columns.size(); ++i) {
    if (i) os << ',';
    os << csv_escape(columns[i]);
  }
  os << '\n';
  for (const auto& row : rows) {
    for (size_t i = 0; i < row.size(); ++i) {
      if (i) os << ',';
      os << csv_escape(row[i]);
    }
    os << '\n';
  }
  return os.str();
}

std::string Table::to_json() const {
  nlohmann::json j;
  j["metadata"] = metadata;
  j["columns"] = columns;
  j["rows"] = rows;
  return j.dump(2) + "\n";
}

namespace {

constexpr const char* kAbsent = "N/A";

Metadata merged(const Metadata& base, const Metadata& extra) {
  Metadata out = base;
  for (const auto& [k, v] : extra) out[k] = v;
  return out;
}

const char* bool_name(bool b) { return b ? "true" : "false"; }

}  // namespace

Table centrality_table(const CentralityTable& t, int year,
                       const Metadata& extra) {
  Table out;
  out.metadata = extra;
  out.metadata["measure"] = centrality_kind_name(t.kind);
  out.metadata["year"] = std::to_string(year);
  switch (t.kind) {
    case CentralityKind::degree:
    case CentralityKind::in_degree:
    case CentralityKind::out_degree:
      out.metadata["counting"] =
          t.params.distinct_degree ? "distinct" : "multiplicity";
      break;
    case CentralityKind::betweenness:
      out.metadata["normalizer"] =
          t.params.normalizer == BetweennessNormalizer::undirected_pairs
              ? "(n-1)(n-2)/2"
              : "(n-1)(n-2)";
      break;
    case CentralityKind::closeness:
      out.metadata["closeness_mode"] =
          t.params.closeness_mode == ClosenessMode::strict ? "strict"
                                                           : "per_component";
      break;
    case CentralityKind::pagerank:
      out.metadata["q"] = format_double(t.params.q);
      out.metadata["tol"] = format_double(t.params.tol);
      out.metadata["max_iter"] = std::to_string(t.params.max_iter);
      out.metadata["converged"] = bool_name(t.converged);
      out.metadata["iterations"] = std::to_string(t.iterations);
      break;
    case CentralityKind::volume:
      out.metadata["h"] = std::to_string(t.params.h);
      break;
    default:
      break;
  }
  out.columns = {"node", "score"};
  out.rows.reserve(t.nodes.size());
  for (size_t i = 0; i < t.nodes.size(); ++i)
    out.rows.push_back({t.nodes[i], format_double(t.scores[i])});
  return out;
}

Table share_table(const analytics::ShareTable& t, const Metadata& extra) {
  Table out;
  out.metadata = merged(t.metadata, extra);
  out.metadata["mode"] =
      t.mode == analytics::ShareTable::Mode::counts ? "counts" : "percentage";
  out.columns.push_back("year");
  for (const auto& c : t.categories) out.columns.push_back(c);
  out.columns.push_back("empty");
  for (size_t yi = 0; yi < t.years.size(); ++yi) {
    std::vector<std::string> row;
    row.push_back(std::to_string(t.years[yi]));
    for (const double v : t.values[yi]) row.push_back(format_double(v));
    row.push_back(bool_name(t.empty_year[yi]));
    out.rows.push_back(std::move(row));
  }
  return out;
}

Table rank_series_table(const analytics::RankSeries& r, const Metadata& extra) {
  Table out;
  out.metadata = merged(r.metadata, extra);
  out.metadata["measure"] = centrality_kind_name(r.kind);
  out.columns.push_back("node");
  for (const int y : r.years) {
    out.columns.push_back("rank_" + std::to_string(y));
    out.columns.push_back("score_" + std::to_string(y));
  }
  for (const auto& row : r.rows) {
    std::vector<std::string> cells;
    cells.push_back(row.node);
    for (const auto& cell : row.by_year) {
      if (cell) {
        cells.push_back(std::to_string(cell->rank));
        cells.push_back(format_double(cell->score));
      } else {
        cells.push_back(kAbsent);
        cells.push_back(kAbsent);
      }
    }
    out.rows.push_back(std::move(cells));
  }
  return out;
}

Table self_cite_table(const std::vector<analytics::SelfCiteYear>& rows,
                      const Metadata& extra) {
  Table out;
  out.metadata = extra;
  out.columns = {"year",
                 "total_self_citations",
                 "self_citing_authors",
                 "publishing_authors",
                 "mean",
                 "normalized_mean",
                 "histogram"};
  for (const auto& r : rows) {
    size_t self_citing = 0;
    std::string histogram;
    for (const auto& [count, authors] : r.histogram) {
      self_citing += authors;
      if (!histogram.empty()) histogram += ';';
      histogram += std::to_string(count) + ":" + std::to_string(authors);
    }
    out.rows.push_back(
        {std::to_string(r.year), std::to_string(r.total_self_loops),
         std::to_string(self_citing), std::to_string(r.publishing_authors),
         r.mean ? format_double(*r.mean) : kAbsent,
         r.normalized_mean ? format_double(*r.normalized_mean) : kAbsent,
         histogram});
  }
  return out;
}

Table overlap_table(const std::vector<analytics::OverlapYear>& rows,
                    const Metadata& extra) {
  Table out;
  out.metadata = extra;
  out.metadata["denominator"] = "union (Jaccard)";
  out.columns = {"year",         "authors_a", "authors_b",
                 "intersection", "union",     "jaccard_pct"};
  for (const auto& r : rows)
    out.rows.push_back({std::to_string(r.year), std::to_string(r.in_a),
                        std::to_string(r.in_b), std::to_string(r.intersection),
                        std::to_string(r.union_size),
                        r.jaccard_pct ? format_double(*r.jaccard_pct)
                                      : kAbsent});
  return out;
}

Table paper_size_table(const std::vector<analytics::PaperSizeYear>& rows,
                       const Metadata& extra) {
  Table out;
  out.metadata = extra;
  out.metadata["percentile_method"] = "nearest-rank";
  out.columns = {"year", "records", "zero_author_records",
                 "mean", "median",  "p95",
                 "p99"};
  for (const auto& r : rows)
    out.rows.push_back({std::to_string(r.year), std::to_string(r.records),
                        std::to_string(r.zero_author_records),
                        format_double(r.mean), format_double(r.median),
                        format_double(r.p95), format_double(r.p99)});
  return out;
}

Table correlation_table(const std::vector<analytics::CorrelationYear>& rows,
                        const Metadata& extra) {
  Table out;
  out.metadata = extra;
  out.columns = {"year", "rho", "flag", "shared_vocabulary", "zero_variance"};
  for (const auto& r : rows) {
    const char* flag = "ok";
    if (r.flag == analytics::CorrelationYear::Flag::insufficient_overlap)
      flag = "insufficient_overlap";
    else if (r.flag == analytics::CorrelationYear::Flag::empty_side)
      flag = "empty_side";
    out.rows.push_back({std::to_string(r.year),
                        r.rho ? format_double(*r.rho) : kAbsent, flag,
                        std::to_string(r.overlap),
                        bool_name(r.zero_variance)});
  }
  return out;
}

Table coverage_table(const std::vector<geo::CoverageRow>& rows,
                     const Metadata& extra) {
  Table out;
  out.metadata = extra;
  out.columns = {"year", "resolved", "unresolved", "resolution_rate"};
  for (const auto& r : rows)
    out.rows.push_back({std::to_string(r.year), std::to_string(r.resolved),
                        std::to_string(r.unresolved),
                        format_double(r.resolution_rate)});
  return out;
}

Table new_author_venue_table(const analytics::NewAuthorStats& s,
                             const Metadata& extra) {
  Table out = share_table(s.venue_share, extra);
  // Weave a per-year debut count in right after the year column.
  out.columns.insert(out.columns.begin() + 1, "debuts");
  for (size_t yi = 0; yi < s.venue_share.years.size(); ++yi) {
    const auto it = s.debuts_per_year.find(s.venue_share.years[yi]);
    const size_t debuts = it == s.debuts_per_year.end() ? 0 : it->second;
    out.rows[yi].insert(out.rows[yi].begin() + 1, std::to_string(debuts));
  }
  return out;
}

Table new_author_coauthor_table(const analytics::NewAuthorStats& s,
                                const Metadata& extra) {
  Table out;
  out.metadata = extra;
  out.metadata["mean_new_coauthors"] = format_double(s.mean_new_coauthors);
  out.metadata["stddev_new_coauthors"] = format_double(s.stddev_new_coauthors);
  out.metadata["mean_per_career_year"] = format_double(s.mean_per_career_year);
  out.metadata["stddev_per_career_year"] =
      format_double(s.stddev_per_career_year);
  out.columns = {"author", "debut_year", "last_year", "new_coauthors",
                 "per_career_year"};
  for (const auto& r : s.authors)
    out.rows.push_back({r.author, std::to_string(r.debut_year),
                        std::to_string(r.last_year),
                        std::to_string(r.new_coauthors),
                        format_double(r.per_career_year)});
  return out;
}

void write_file(const std::string& path, const std::string& content) {
  const std::filesystem::path p(path);
  std::error_code ec;
  if (p.has_parent_path())
    std::filesystem::create_directories(p.parent_path(), ec);
  std::ofstream out(p, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot open for writing: " + path);
  out.write(content.data(), static_cast<std::streamsize>(content.size()));
  out.flush();
  if (!out) throw std::runtime_error("write failed: " + path);
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open for reading: " + path);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

}  // namespace citenet::io
