#pragma once

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "citenet/ingest.hpp"

namespace citenet::geo {

/// Normalizes an affiliation string for table matching: keep the last
/// comma-separated segment, delete "#TAB#" markers (either case), delete the
/// characters ( ) [ ] - _ and trim surrounding whitespace.
std::string preprocess_org(std::string_view raw);

/// Lookup state for country inference. org_table and author_table are
/// curated inputs; past_table accumulates per-author hits during a run and
/// starts empty.
struct CountryLookup {
  std::map<std::string, std::string> org_table;     // org string -> country
  std::map<std::string, std::string> author_table;  // author id -> country
  std::unordered_map<std::string, std::string> past_table;
};

/// Which rule produced a resolution.
enum class ResolutionStep {
  curated_author,  // author_table hit, consulted first
  exact,           // preprocessed org found verbatim
  first_word,      // first whitespace token of preprocessed org
  last_word,       // last whitespace token of preprocessed org
  raw,             // original affiliation string (trimmed)
  past_author,     // author resolved earlier in this run
  unresolved,
};

const char* resolution_step_name(ResolutionStep s);

struct CountryResolution {
  std::optional<std::string> country;
  ResolutionStep step = ResolutionStep::unresolved;
};

/// Runs the resolution cascade for one author occurrence. Stages run in
/// declaration order of ResolutionStep; the first hit wins. Hits on the
/// org-string stages (exact, first_word, last_word, raw) record the author
/// in lookup.past_table; the curated_author and past_author stages never
/// write it. Matching is case-sensitive after trimming.
///
/// Callers must present records in ascending year order, since past_table
/// makes results order-sensitive.
CountryResolution infer_country(std::string_view raw_org,
                                std::string_view author_id,
                                CountryLookup& lookup);

/// Loads curated tables. `org_json_path` is a JSON object {org: country},
/// `author_yaml_path` a YAML mapping {author id: country}; either may be ""
/// for an empty table. Keys are trimmed; duplicate keys resolve last-wins
/// with a diagnostic appended to `diagnostics` (when given). Unreadable or
/// unparseable files, and values outside the country vocabulary, raise
/// std::runtime_error naming the file and offending location.
CountryLookup load_lookup(const std::string& org_json_path,
                          const std::string& author_yaml_path,
                          std::vector<std::string>* diagnostics = nullptr);

/// Closed vocabulary of ISO-style country names accepted as table values.
bool is_known_country(std::string_view name);
const std::vector<std::string>& country_vocabulary();

struct CoverageRow {
  int year = 0;
  size_t resolved = 0;
  size_t unresolved = 0;
  double resolution_rate = 0.0;  // resolved / (resolved + unresolved)
};

/// Attempts resolution for every (record, author) occurrence, bucketed by
/// record year, ascending. The lookup is taken by value: a report is a fresh
/// pass with an empty past_table.
std::vector<CoverageRow> coverage_report(const YearBuckets& buckets,
                                         CountryLookup lookup);

/// Per-record resolution results, in ascending-year order. `countries`
/// holds one entry per *resolved* author occurrence, in author order
/// (duplicates preserved; consumers dedupe as needed).
struct RecordCountries {
  std::string paper_id;
  int year = 0;
  std::vector<std::string> countries;
  size_t author_count = 0;
  size_t unresolved_count = 0;
};

std::vector<RecordCountries> resolve_records(const YearBuckets& buckets,
                                             CountryLookup& lookup);

}  // namespace citenet::geo
