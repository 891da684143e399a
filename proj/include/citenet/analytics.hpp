#pragma once

#include <map>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "citenet/centrality.hpp"
#include "citenet/geo.hpp"
#include "citenet/graph.hpp"
#include "citenet/ingest.hpp"
#include "citenet/snapshots.hpp"

namespace citenet::analytics {

/// Year-by-category value table. Percentage-mode rows sum to 100 for every
/// year not flagged empty.
struct ShareTable {
  enum class Mode { counts, percentage };

  Mode mode = Mode::counts;
  std::vector<std::string> categories;
  std::vector<int> years;                   // ascending
  std::vector<std::vector<double>> values;  // [year index][category index]
  std::vector<bool> empty_year;             // flagged years carry no data
  std::map<std::string, std::string> metadata;

  double value(int year, const std::string& category) const;
};

/// Converts a counts table to percentages per year. Empty years stay
/// flagged with zero values.
ShareTable to_percentage(const ShareTable& counts);

// ---- rankings ----------------------------------------------------------

struct RankSeries {
  CentralityKind kind = CentralityKind::degree;
  std::vector<int> years;  // the sampled years actually available
  struct Cell {
    double score = 0.0;
    int rank = 0;  // 1-based position in the full ranking of that year
  };
  struct Row {
    std::string node;
    std::vector<std::optional<Cell>> by_year;  // nullopt = absent that year
  };
  std::vector<Row> rows;  // sorted by node label
  std::map<std::string, std::string> metadata;
};

/// Tracks every node that enters the top `top_k` of any sampled year across
/// all sampled years. Ranking order is score descending, node label
/// ascending; ranks are dense 1..n. Sampled years missing from `tables` are
/// dropped and noted in metadata.
RankSeries rank_over_time(const std::map<int, CentralityTable>& tables,
                          const std::vector<int>& sample_years, int top_k);

/// Venue composition of each year's k highest-scoring papers (counts mode;
/// see to_percentage). Years with fewer than k papers use all papers and
/// are noted in metadata.
ShareTable top_k_venue_share(const std::map<int, CentralityTable>& paper_tables,
                             const std::unordered_map<std::string, Venue>& venue_of,
                             int k = 100);

// ---- citation behavior -------------------------------------------------

/// Venue distribution (percentage) of citation targets, grouped by the
/// source paper's publication year, restricted to source papers of
/// `source_venue`. `pc` is the full paper-citation graph. Years in which
/// source-venue papers exist but cast no citations are flagged empty.
ShareTable citation_share_by_source(
    const LabeledGraph& pc,
    const std::unordered_map<std::string, int>& year_of,
    const std::unordered_map<std::string, Venue>& venue_of,
    Venue source_venue);

struct SelfCiteYear {
  int year = 0;
  std::map<size_t, size_t> histogram;  // self-loop count -> authors with it (count >= 1)
  size_t total_self_loops = 0;
  size_t publishing_authors = 0;       // distinct authors with a record that year
  std::optional<double> mean;          // over authors with >= 1 self-loop
  std::optional<double> normalized_mean;  // total / publishing_authors
};

/// Self-citation profile from a per-year author-citation series: an edge
/// u -> u created by year-y records is one self-citation by u in y. The
/// buckets supply the publishing-author denominator (the graphs also hold
/// cited authors who published nothing that year).
std::vector<SelfCiteYear> self_citation_stats(const SnapshotSeries& per_year_aci,
                                              const YearBuckets& buckets);

// ---- author population -------------------------------------------------

struct NewAuthorStats {
  /// Percentage of each year's debuting authors attributed to each venue;
  /// an author debuting in k venues that year contributes 1/k to each.
  ShareTable venue_share;
  std::map<int, size_t> debuts_per_year;

  struct AuthorRow {
    std::string author;
    int debut_year = 0;
    int last_year = 0;
    size_t new_coauthors = 0;      // distinct coauthors first met in the
                                   // coauthor's own debut year
    double per_career_year = 0.0;  // new_coauthors / (last - debut + 1)
  };
  std::vector<AuthorRow> authors;  // sorted by author id

  double mean_new_coauthors = 0.0;
  double stddev_new_coauthors = 0.0;  // population stddev
  double mean_per_career_year = 0.0;
  double stddev_per_career_year = 0.0;
};

/// Debut year = year of the author's first record in the corpus. A
/// coauthor B counts toward A's new-coauthor tally when some shared record
/// falls in B's debut year (mutual debuts count for both sides).
NewAuthorStats new_author_stats(const YearBuckets& buckets);

struct OverlapYear {
  int year = 0;
  size_t in_a = 0;
  size_t in_b = 0;
  size_t intersection = 0;
  size_t union_size = 0;
  std::optional<double> jaccard_pct;  // nullopt when both venues are empty
};

/// Jaccard overlap (percent) between the author sets publishing in two
/// venues, per year.
std::vector<OverlapYear> author_overlap(const YearBuckets& buckets, Venue a,
                                        Venue b);

struct PaperSizeYear {
  int year = 0;
  size_t records = 0;
  size_t zero_author_records = 0;
  double mean = 0.0;
  double median = 0.0;
  double p95 = 0.0;  // nearest-rank percentiles
  double p99 = 0.0;
};

/// Author-list length statistics per year. Zero-author records are part of
/// the distribution and also counted separately.
std::vector<PaperSizeYear> authors_per_paper(const YearBuckets& buckets);

// ---- geography ---------------------------------------------------------

/// Publication share by country: each record contributes one attribution to
/// every distinct country among its resolved authors. Records with no
/// resolved author fall into "Unknown" when include_unresolved is set and
/// are dropped otherwise.
ShareTable country_share(const std::vector<geo::RecordCountries>& records,
                         ShareTable::Mode mode, bool include_unresolved);

/// Trailing-window mean over [year - width + 1, year] per category. Years
/// absent from the axis, and years flagged empty, do not participate; a
/// window with no participating year leaves the output year flagged empty.
/// The first axis year therefore equals its raw value.
ShareTable sliding_window_average(const ShareTable& table, int width = 2);

// ---- text --------------------------------------------------------------

struct SpearmanResult {
  enum class Flag { ok, too_short, zero_variance };
  std::optional<double> rho;
  Flag flag = Flag::ok;
};

/// Spearman rank correlation with average-rank tie handling. Undefined
/// (flagged) for fewer than two observations or zero variance in either
/// input.
SpearmanResult spearman(std::span<const double> x, std::span<const double> y);

/// Lower-cases and splits on any non-alphanumeric byte, dropping stop words
/// and tokens shorter than two characters.
std::vector<std::string> tokenize_title(
    std::string_view title, const std::unordered_set<std::string>& stopwords);

/// Aggregate TF-IDF weight per word over a title collection: each title is
/// one document, tf = raw count within the title, idf = ln(N / df), and
/// per-word weights sum over documents. Duplicating every document scales
/// all weights uniformly, leaving ranks unchanged.
std::unordered_map<std::string, double> tfidf_scores(
    const std::vector<std::string>& titles,
    const std::unordered_set<std::string>& stopwords);

struct CorrelationYear {
  enum class Flag { ok, insufficient_overlap, empty_side };
  int year = 0;
  std::optional<double> rho;
  Flag flag = Flag::ok;
  size_t overlap = 0;  // shared vocabulary size
  bool zero_variance = false;
};

/// Per-year Spearman correlation between TF-IDF word rankings of two title
/// collections, over their shared vocabulary. Years present in either map
/// are reported; a side with no titles, or a shared vocabulary smaller than
/// three words, flags the year instead of producing a coefficient.
std::vector<CorrelationYear> tfidf_rank_correlation(
    const std::map<int, std::vector<std::string>>& left_titles,
    const std::map<int, std::vector<std::string>>& right_titles,
    const std::unordered_set<std::string>& stopwords);

/// One word per line; '#' comments and blank lines ignored.
std::unordered_set<std::string> load_stopwords(const std::string& path);

// ---- corpus-derived maps -----------------------------------------------

std::unordered_map<std::string, Venue> venue_of_map(
    const std::vector<PaperRecord>& records);
std::unordered_map<std::string, int> year_of_map(
    const std::vector<PaperRecord>& records);

}  // namespace citenet::analytics
