#pragma once

#include <map>
#include <string>
#include <vector>

#include "citenet/analytics.hpp"
#include "citenet/centrality.hpp"
#include "citenet/geo.hpp"

namespace citenet::io {

using Metadata = std::map<std::string, std::string>;

/// Deterministic decimal rendering used by every CSV emitter.
std::string format_double(double v);

/// Generic table: CSV renders metadata as leading "# key=value" lines
/// (sorted), then a header row, then data rows. JSON renders
/// {"metadata": {...}, "columns": [...], "rows": [[...], ...]}.
struct Table {
  Metadata metadata;
  std::vector<std::string> columns;
  std::vector<std::vector<std::string>> rows;

  std::string to_csv() const;
  std::string to_json() const;
};

Table centrality_table(const CentralityTable& t, int year,
                       const Metadata& extra);
Table share_table(const analytics::ShareTable& t, const Metadata& extra);
Table rank_series_table(const analytics::RankSeries& r, const Metadata& extra);
Table self_cite_table(const std::vector<analytics::SelfCiteYear>& rows,
                      const Metadata& extra);
Table overlap_table(const std::vector<analytics::OverlapYear>& rows,
                    const Metadata& extra);
Table paper_size_table(const std::vector<analytics::PaperSizeYear>& rows,
                       const Metadata& extra);
Table correlation_table(const std::vector<analytics::CorrelationYear>& rows,
                        const Metadata& extra);
Table coverage_table(const std::vector<geo::CoverageRow>& rows,
                     const Metadata& extra);
Table new_author_venue_table(const analytics::NewAuthorStats& s,
                             const Metadata& extra);
Table new_author_coauthor_table(const analytics::NewAuthorStats& s,
                                const Metadata& extra);

/// Creates parent directories as needed; throws std::runtime_error on
/// failure.
void write_file(const std::string& path, const std::string& content);
std::string read_file(const std::string& path);

/// CSV field quoting (RFC-style: quote when a comma, quote, or newline is
/// present; embedded quotes double).
std::string csv_escape(const std::string& field);

}  // namespace citenet::io
