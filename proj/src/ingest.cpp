#include "citenet/ingest.hpp"

#include <zlib.h>

#include <fstream>
#include <istream>
#include <stdexcept>
#include <unordered_map>
#include <utility>

#include <nlohmann/json.hpp>

#include "citenet/digest.hpp"
#include "citenet/strings.hpp"

namespace citenet {

using nlohmann::json;

const char* venue_name(Venue v) {
  switch (v) {
    case Venue::IJCAI: return "IJCAI";
    case Venue::AAAI: return "AAAI";
    case Venue::NeurIPS: return "NeurIPS";
    case Venue::CVPR: return "CVPR";
    case Venue::ECCV: return "ECCV";
    case Venue::ICCV: return "ICCV";
    case Venue::ACL: return "ACL";
    case Venue::NAACL: return "NAACL";
    case Venue::EMNLP: return "EMNLP";
    case Venue::ICML: return "ICML";
    case Venue::KDD: return "KDD";
    case Venue::SIGIR: return "SIGIR";
    case Venue::WWW: return "WWW";
    case Venue::Other: return "Other";
  }
  return "Other";
}

std::optional<Venue> parse_venue_name(const std::string& name) {
  const std::string key = to_lower(trim_view(name));
  static const std::unordered_map<std::string, Venue> kNames = [] {
    std::unordered_map<std::string, Venue> m;
    for (int i = 0; i < kVenueCount; ++i) {
      const Venue v = static_cast<Venue>(i);
      m[to_lower(venue_name(v))] = v;
    }
    m["nips"] = Venue::NeurIPS;
    return m;
  }();
  const auto it = kNames.find(key);
  if (it == kNames.end()) return std::nullopt;
  return it->second;
}

// ---- line sources --------------------------------------------------------

namespace {

// Reads via zlib's gz layer, which sniffs the gzip magic bytes itself and
// passes uncompressed files through verbatim. Holds one chunk plus one
// pending line, so memory stays bounded by the longest line.
class GzLineSource : public LineSource {
 public:
  explicit GzLineSource(const std::string& path) {
    file_ = gzopen(path.c_str(), "rb");
    if (!file_) throw std::runtime_error("cannot open input file: " + path);
    gzbuffer(file_, 1 << 16);
  }
  ~GzLineSource() override {
    if (file_) gzclose(file_);
  }

  bool next(std::string& line) override {
    line.clear();
    while (true) {
      if (pos_ < buf_.size()) {
        const size_t nl = buf_.find('\n', pos_);
        if (nl != std::string::npos) {
          line.append(buf_, pos_, nl - pos_);
          pos_ = nl + 1;
          strip_cr(line);
          return true;
        }
        line.append(buf_, pos_, buf_.size() - pos_);
        pos_ = buf_.size();
      }
      if (eof_) {
        if (!line.empty()) {
          strip_cr(line);
          return true;
        }
        return false;
      }
      buf_.resize(1 << 16);
      const int got = gzread(file_, buf_.data(), static_cast<unsigned>(buf_.size()));
      if (got < 0) throw std::runtime_error("error while reading input stream");
      buf_.resize(static_cast<size_t>(got));
      pos_ = 0;
      if (got == 0) eof_ = true;
    }
  }

 private:
  static void strip_cr(std::string& line) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
  }

  gzFile file_ = nullptr;
  std::string buf_;
  size_t pos_ = 0;
  bool eof_ = false;
};

class StreamLineSource : public LineSource {
 public:
  explicit StreamLineSource(std::istream& in) : in_(in) {}
  bool next(std::string& line) override {
    if (!std::getline(in_, line)) return false;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    return true;
  }

 private:
  std::istream& in_;
};

}  // namespace

std::unique_ptr<LineSource> open_line_source(const std::string& path) {
  return std::make_unique<GzLineSource>(path);
}

std::unique_ptr<LineSource> make_stream_line_source(std::istream& in) {
  return std::make_unique<StreamLineSource>(in);
}

// ---- record parsing ------------------------------------------------------

namespace {

// Ids appear as strings in current dumps but were plain integers in older
// ones; accept both.
bool id_string(const json& j, std::string& out) {
  if (j.is_string()) {
    out = j.get<std::string>();
    return true;
  }
  if (j.is_number_integer() || j.is_number_unsigned()) {
    out = std::to_string(j.get<long long>());
    return true;
  }
  return false;
}

bool parse_abstract(const json& j, IndexedAbstract& out, std::string* error) {
  if (!j.is_object()) {
    *error = "indexed_abstract is not an object";
    return false;
  }
  const json* len = nullptr;
  if (auto it = j.find("IndexLength"); it != j.end()) len = &*it;
  else if (auto it2 = j.find("indexLength"); it2 != j.end()) len = &*it2;
  if (!len || !len->is_number_integer()) {
    *error = "indexed_abstract missing integer index length";
    return false;
  }
  out.length = len->get<int>();
  if (out.length < 0) {
    *error = "indexed_abstract has negative index length";
    return false;
  }
  const auto inv = j.find("InvertedIndex");
  if (inv == j.end() || !inv->is_object()) {
    *error = "indexed_abstract missing InvertedIndex object";
    return false;
  }
  for (auto it = inv->begin(); it != inv->end(); ++it) {
    if (!it.value().is_array()) {
      *error = "inverted-index entry is not an array";
      return false;
    }
    std::vector<int>& positions = out.inverted[it.key()];
    int prev = -1;
    for (const auto& p : it.value()) {
      if (!p.is_number_integer()) {
        *error = "inverted-index position is not an integer";
        return false;
      }
      const int pos = p.get<int>();
      if (pos <= prev) {
        *error = "inverted-index positions not strictly increasing";
        return false;
      }
      if (pos < 0 || pos >= out.length) {
        *error = "inverted-index position outside declared length";
        return false;
      }
      positions.push_back(pos);
      prev = pos;
    }
  }
  return true;
}

}  // namespace

std::optional<PaperRecord> parse_record_line(const std::string& line,
                                             std::string* error) {
  const json j = json::parse(line, nullptr, /*allow_exceptions=*/false);
  if (j.is_discarded()) {
    *error = "invalid JSON";
    return std::nullopt;
  }
  if (!j.is_object()) {
    *error = "line is not a JSON object";
    return std::nullopt;
  }

  PaperRecord rec;
  if (auto it = j.find("id"); it == j.end() || !id_string(*it, rec.id)) {
    *error = "missing or non-string id";
    return std::nullopt;
  }
  if (rec.id.empty()) {
    *error = "empty id";
    return std::nullopt;
  }

  if (auto it = j.find("title"); it != j.end()) {
    if (!it->is_string()) {
      *error = "title is not a string";
      return std::nullopt;
    }
    rec.title = it->get<std::string>();
  }

  const auto year_it = j.find("year");
  if (year_it == j.end() ||
      !(year_it->is_number_integer() || year_it->is_number_unsigned())) {
    *error = "missing or non-integer year";
    return std::nullopt;
  }
  rec.year = year_it->get<int>();
  if (rec.year <= 0) {
    *error = "year is not a positive integer";
    return std::nullopt;
  }

  const auto venue_it = j.find("venue");
  if (venue_it == j.end()) {
    *error = "missing venue";
    return std::nullopt;
  }
  if (venue_it->is_string()) {
    rec.venue.raw = venue_it->get<std::string>();
  } else if (venue_it->is_object()) {
    if (auto raw = venue_it->find("raw");
        raw != venue_it->end() && raw->is_string()) {
      rec.venue.raw = raw->get<std::string>();
    }
    if (auto vid = venue_it->find("id"); vid != venue_it->end()) {
      std::string s;
      if (id_string(*vid, s)) rec.venue.source_id = std::move(s);
    }
  } else {
    *error = "venue is neither object nor string";
    return std::nullopt;
  }
  if (rec.venue.raw.empty()) {
    *error = "empty venue string";
    return std::nullopt;
  }

  if (auto it = j.find("authors"); it != j.end()) {
    if (!it->is_array()) {
      *error = "authors is not an array";
      return std::nullopt;
    }
    for (const auto& a : *it) {
      if (!a.is_object()) {
        *error = "author entry is not an object";
        return std::nullopt;
      }
      AuthorRef ref;
      if (auto aid = a.find("id"); aid == a.end() || !id_string(*aid, ref.id) ||
                                   ref.id.empty()) {
        *error = "author entry missing id";
        return std::nullopt;
      }
      if (auto an = a.find("name"); an != a.end() && an->is_string())
        ref.name = an->get<std::string>();
      if (auto org = a.find("org"); org != a.end() && org->is_string())
        ref.org = org->get<std::string>();
      rec.authors.push_back(std::move(ref));
    }
  }

  if (auto it = j.find("references"); it != j.end()) {
    if (!it->is_array()) {
      *error = "references is not an array";
      return std::nullopt;
    }
    for (const auto& r : *it) {
      std::string rid;
      if (!id_string(r, rid)) {
        *error = "reference entry is not an id";
        return std::nullopt;
      }
      rec.references.push_back(std::move(rid));
    }
  }

  if (auto it = j.find("indexed_abstract"); it != j.end() && !it->is_null()) {
    IndexedAbstract abs;
    if (!parse_abstract(*it, abs, error)) return std::nullopt;
    rec.abstract = std::move(abs);
  }

  return rec;
}

std::string record_to_json_line(const PaperRecord& rec) {
  json j;
  j["id"] = rec.id;
  j["title"] = rec.title;
  j["year"] = rec.year;
  json authors = json::array();
  for (const auto& a : rec.authors) {
    json ja;
    ja["id"] = a.id;
    ja["name"] = a.name;
    if (a.org) ja["org"] = *a.org;
    authors.push_back(std::move(ja));
  }
  j["authors"] = std::move(authors);
  json venue;
  venue["raw"] = rec.venue.raw;
  if (rec.venue.source_id) venue["id"] = *rec.venue.source_id;
  j["venue"] = std::move(venue);
  j["references"] = rec.references;
  if (rec.abstract) {
    json abs;
    abs["IndexLength"] = rec.abstract->length;
    json inv = json::object();
    for (const auto& [word, positions] : rec.abstract->inverted)
      inv[word] = positions;
    abs["InvertedIndex"] = std::move(inv);
    j["indexed_abstract"] = std::move(abs);
  }
  return j.dump();
}

void for_each_record(
    LineSource& src,
    const std::function<void(PaperRecord&&, size_t)>& on_record,
    const std::function<void(Diagnostic&&)>& on_diagnostic) {
  std::string line;
  size_t line_no = 0;
  std::string error;
  while (src.next(line)) {
    ++line_no;
    if (trim_view(line).empty()) continue;  // blank lines carry no record
    auto rec = parse_record_line(line, &error);
    if (rec) {
      on_record(std::move(*rec), line_no);
    } else {
      on_diagnostic(Diagnostic{line_no, error});
    }
  }
}

Corpus read_corpus(LineSource& src) {
  Corpus corpus;
  std::unordered_map<std::string, size_t> by_id;
  size_t lines = 0;
  for_each_record(
      src,
      [&](PaperRecord&& rec, size_t line_no) {
        ++lines;
        auto [it, inserted] = by_id.emplace(rec.id, corpus.records.size());
        if (inserted) {
          corpus.records.push_back(std::move(rec));
        } else {
          corpus.diagnostics.push_back(
              {line_no,
               "duplicate paper id " + rec.id + ": keeping last occurrence"});
          ++corpus.duplicate_ids;
          corpus.records[it->second] = std::move(rec);
        }
      },
      [&](Diagnostic&& d) {
        ++lines;
        corpus.diagnostics.push_back(std::move(d));
        ++corpus.malformed;
      });
  corpus.lines_read = lines;
  return corpus;
}

Corpus read_corpus_file(const std::string& path) {
  auto src = open_line_source(path);
  return read_corpus(*src);
}

// ---- venues --------------------------------------------------------------

VenueAliasTable VenueAliasTable::load(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open venue alias table: " + path);
  json j = json::parse(in, nullptr, /*allow_exceptions=*/false);
  if (j.is_discarded() || !j.is_object())
    throw std::runtime_error("venue alias table is not a JSON object: " + path);
  VenueAliasTable table;
  for (auto it = j.begin(); it != j.end(); ++it) {
    if (!it.value().is_string())
      throw std::runtime_error("venue alias value is not a string: " + path +
                               " key " + it.key());
    const auto venue = parse_venue_name(it.value().get<std::string>());
    if (!venue)
      throw std::runtime_error("unknown canonical venue \"" +
                               it.value().get<std::string>() + "\" in " + path);
    table.add_alias(it.key(), *venue);
  }
  return table;
}

void VenueAliasTable::add_alias(const std::string& alias, Venue v) {
  aliases_[to_lower(trim_view(alias))] = v;
}

Venue VenueAliasTable::canonical(const std::string& raw) const {
  const auto it = aliases_.find(to_lower(trim_view(raw)));
  if (it != aliases_.end()) return it->second;
  // Canonical names match themselves even without an alias entry.
  if (const auto v = parse_venue_name(raw)) return *v;
  return Venue::Other;
}

void canonicalize_venues(std::vector<PaperRecord>& records,
                         const VenueAliasTable& table) {
  for (auto& rec : records) rec.venue.canonical = table.canonical(rec.venue.raw);
}

std::vector<PaperRecord> filter_by_venues(std::vector<PaperRecord> records,
                                          const std::set<Venue>& venues) {
  std::vector<PaperRecord> out;
  out.reserve(records.size());
  for (auto& rec : records) {
    const Venue v = rec.venue.canonical.value_or(Venue::Other);
    if (venues.count(v)) out.push_back(std::move(rec));
  }
  return out;
}

YearBuckets bucket_by_year(std::vector<PaperRecord> records) {
  YearBuckets buckets;
  for (auto& rec : records) buckets[rec.year].push_back(std::move(rec));
  return buckets;
}

std::string corpus_digest(const std::vector<PaperRecord>& records) {
  Sha256 hash;
  for (const auto& rec : records) {
    hash.update(record_to_json_line(rec));
    hash.update("\n");
  }
  return hash.hex_digest();
}

}  // namespace citenet
