#pragma once

#include <functional>
#include <iosfwd>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "citenet/record.hpp"

namespace citenet {

struct Diagnostic {
  size_t line = 0;  // 1-based input line, 0 when not line-scoped
  std::string reason;
};

/// Pull-based line supplier. Implementations must hold at most one line in
/// memory at a time so corpus size never bounds memory use.
class LineSource {
 public:
  virtual ~LineSource() = default;
  /// Fills `line` (without trailing newline) and returns true, or returns
  /// false at end of input.
  virtual bool next(std::string& line) = 0;
};

/// Opens a records file. Gzip input is detected from the 0x1f 0x8b magic
/// bytes, not the file name; plain files pass through untouched.
/// Throws std::runtime_error if the file cannot be opened.
std::unique_ptr<LineSource> open_line_source(const std::string& path);

/// Adapts an already-open stream (used by tests and stdin-style input).
std::unique_ptr<LineSource> make_stream_line_source(std::istream& in);

/// Parses one newline-delimited record. On failure returns nullopt and
/// stores a human-readable reason in `error`.
///
/// Field notes: `references`, `authors`, and `title` may be absent (treated
/// as empty), `indexed_abstract` is optional and its declared-length key is
/// accepted with either an upper- or lower-case leading letter. Records
/// violating structural invariants (empty id, empty venue string, year not a
/// positive integer, inverted-index positions not strictly increasing or not
/// below the declared length) are rejected.
std::optional<PaperRecord> parse_record_line(const std::string& line,
                                             std::string* error);

/// Serializes a record back to its JSON-line shape. parse_record_line of the
/// output reconstructs a structurally equal record.
std::string record_to_json_line(const PaperRecord& rec);

/// Streams records out of a line source. `on_record` is invoked for every
/// well-formed line (second argument: 1-based line number), `on_diagnostic`
/// for every malformed one. Memory use is bounded by the largest single
/// line.
void for_each_record(
    LineSource& src,
    const std::function<void(PaperRecord&&, size_t)>& on_record,
    const std::function<void(Diagnostic&&)>& on_diagnostic);

struct Corpus {
  std::vector<PaperRecord> records;
  std::vector<Diagnostic> diagnostics;
  size_t lines_read = 0;
  size_t malformed = 0;
  size_t duplicate_ids = 0;
};

/// Materializes a corpus. Duplicate paper ids resolve last-record-wins (the
/// surviving record keeps the first occurrence's position) and each
/// collision is reported as a diagnostic.
Corpus read_corpus(LineSource& src);
Corpus read_corpus_file(const std::string& path);

/// Alias table mapping raw venue strings to canonical venues. Matching is
/// case-insensitive after trimming; anything unmatched is Venue::Other.
class VenueAliasTable {
 public:
  VenueAliasTable() = default;

  /// Loads a JSON object {alias: canonical-name}. Throws std::runtime_error
  /// naming the file on unreadable/unparseable input or unknown canonical
  /// names.
  static VenueAliasTable load(const std::string& path);

  void add_alias(const std::string& alias, Venue v);
  Venue canonical(const std::string& raw) const;
  size_t size() const { return aliases_.size(); }

 private:
  std::map<std::string, Venue> aliases_;  // keyed by trimmed lower-case alias
};

/// Stamps venue.canonical on every record.
void canonicalize_venues(std::vector<PaperRecord>& records,
                         const VenueAliasTable& table);

/// Keeps records whose canonical venue is in `venues`, preserving order.
/// Records must have been canonicalized first.
std::vector<PaperRecord> filter_by_venues(std::vector<PaperRecord> records,
                                          const std::set<Venue>& venues);

/// Year -> records published that year, ascending iteration order. Every
/// input record lands in exactly one bucket.
using YearBuckets = std::map<int, std::vector<PaperRecord>>;
YearBuckets bucket_by_year(std::vector<PaperRecord> records);

/// Analysis window. Records outside it stay in the corpus and the buckets;
/// consumers that honor the window skip them and report how many they
/// skipped.
struct YearWindow {
  int min_year;
  int max_year;
  bool contains(int year) const { return year >= min_year && year <= max_year; }
};

/// SHA-256 over the canonical serialization of the records, in order.
/// Any one-byte change to a surviving record changes the digest.
std::string corpus_digest(const std::vector<PaperRecord>& records);

}  // namespace citenet
