#include "citenet/geo.hpp"

#include <algorithm>
#include <climits>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include <nlohmann/json.hpp>
#include <yaml-cpp/yaml.h>

#include "citenet/strings.hpp"

namespace citenet::geo {

using nlohmann::json;

std::string preprocess_org(std::string_view raw) {
  // Keep what follows the final comma; affiliations usually end with the
  // institution or country there.
  const size_t comma = raw.rfind(',');
  std::string org(comma == std::string_view::npos ? raw
                                                  : raw.substr(comma + 1));

  for (const char* marker : {"#TAB#", "#tab#"}) {
    size_t pos;
    while ((pos = org.find(marker)) != std::string::npos) org.erase(pos, 5);
  }

  std::erase_if(org, [](char c) {
    return c == '(' || c == ')' || c == '[' || c == ']' || c == '-' || c == '_';
  });

  return trim(org);
}

const char* resolution_step_name(ResolutionStep s) {
  switch (s) {
    case ResolutionStep::curated_author: return "curated_author";
    case ResolutionStep::exact: return "exact";
    case ResolutionStep::first_word: return "first_word";
    case ResolutionStep::last_word: return "last_word";
    case ResolutionStep::raw: return "raw";
    case ResolutionStep::past_author: return "past_author";
    case ResolutionStep::unresolved: return "unresolved";
  }
  return "unresolved";
}

namespace {

const std::string* org_hit(const std::map<std::string, std::string>& table,
                           const std::string& key) {
  if (key.empty()) return nullptr;
  const auto it = table.find(key);
  return it == table.end() ? nullptr : &it->second;
}

}  // namespace

CountryResolution infer_country(std::string_view raw_org,
                                std::string_view author_id,
                                CountryLookup& lookup) {
  const std::string author(author_id);

  if (const auto it = lookup.author_table.find(author);
      it != lookup.author_table.end())
    return {it->second, ResolutionStep::curated_author};

  const std::string cleaned = preprocess_org(raw_org);
  const auto table_hit = [&](const std::string& key,
                             ResolutionStep step) -> std::optional<CountryResolution> {
    if (const std::string* country = org_hit(lookup.org_table, key)) {
      lookup.past_table[author] = *country;
      return CountryResolution{*country, step};
    }
    return std::nullopt;
  };

  if (auto hit = table_hit(cleaned, ResolutionStep::exact)) return *hit;

  const auto words = split_whitespace(cleaned);
  if (!words.empty()) {
    if (auto hit = table_hit(words.front(), ResolutionStep::first_word))
      return *hit;
    if (auto hit = table_hit(words.back(), ResolutionStep::last_word))
      return *hit;
  }

  if (auto hit = table_hit(trim(raw_org), ResolutionStep::raw)) return *hit;

  if (const auto it = lookup.past_table.find(author);
      it != lookup.past_table.end())
    return {it->second, ResolutionStep::past_author};

  return {std::nullopt, ResolutionStep::unresolved};
}

// ---- table loading ---------------------------------------------------------

namespace {

// SAX handler for a flat {string: string} object that surfaces duplicate
// keys (the DOM parser would silently collapse them).
struct FlatMapHandler : json::json_sax_t {
  std::vector<std::pair<std::string, std::string>> entries;
  std::string pending_key;
  int depth = 0;
  std::string error;

  bool reject(const std::string& what) {
    if (error.empty()) error = what;
    return false;
  }
  bool key(string_t& val) override {
    pending_key = val;
    return true;
  }
  bool string(string_t& val) override {
    if (depth != 1) return reject("unexpected nesting");
    entries.emplace_back(pending_key, val);
    return true;
  }
  bool start_object(std::size_t) override {
    if (++depth > 1) return reject("nested objects are not allowed");
    return true;
  }
  bool end_object() override {
    --depth;
    return true;
  }
  bool start_array(std::size_t) override { return reject("arrays are not allowed"); }
  bool end_array() override { return reject("arrays are not allowed"); }
  bool null() override { return reject("null value"); }
  bool boolean(bool) override { return reject("non-string value"); }
  bool number_integer(number_integer_t) override { return reject("non-string value"); }
  bool number_unsigned(number_unsigned_t) override { return reject("non-string value"); }
  bool number_float(number_float_t, const string_t&) override {
    return reject("non-string value");
  }
  bool binary(binary_t&) override { return reject("non-string value"); }
  bool parse_error(std::size_t position, const std::string&,
                   const nlohmann::detail::exception& ex) override {
    if (error.empty())
      error = std::string(ex.what()) + " (byte " + std::to_string(position) + ")";
    return false;
  }
};

void insert_validated(std::map<std::string, std::string>& table,
                      const std::string& raw_key, const std::string& raw_value,
                      const std::string& file, const char* what,
                      std::vector<std::string>* diagnostics) {
  const std::string key = trim(raw_key);
  const std::string value = trim(raw_value);
  if (key.empty()) {
    if (diagnostics)
      diagnostics->push_back(file + ": ignoring entry with empty key");
    return;
  }
  if (!is_known_country(value))
    throw std::runtime_error(file + ": unknown country \"" + value +
                             "\" for " + what + " \"" + key + "\"");
  if (table.count(key) && diagnostics)
    diagnostics->push_back(file + ": duplicate " + what + " \"" + key +
                           "\": keeping last value");
  table[key] = value;
}

std::map<std::string, std::string> load_org_table(
    const std::string& path, std::vector<std::string>* diagnostics) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open org table: " + path);
  std::stringstream buf;
  buf << in.rdbuf();
  const std::string text = buf.str();

  FlatMapHandler handler;
  const bool ok = json::sax_parse(text, &handler);
  if (!ok || !handler.error.empty()) {
    std::string detail = handler.error.empty() ? "parse failed" : handler.error;
    throw std::runtime_error("org table " + path + ": " + detail);
  }

  std::map<std::string, std::string> table;
  for (const auto& [key, value] : handler.entries)
    insert_validated(table, key, value, path, "org", diagnostics);
  return table;
}

std::map<std::string, std::string> load_author_table(
    const std::string& path, std::vector<std::string>* diagnostics) {
  YAML::Node root;
  try {
    root = YAML::LoadFile(path);
  } catch (const YAML::BadFile&) {
    throw std::runtime_error("cannot open author table: " + path);
  } catch (const YAML::Exception& ex) {
    throw std::runtime_error("author table " + path + " line " +
                             std::to_string(ex.mark.line + 1) + ": " +
                             ex.msg);
  }
  if (root.IsNull() || (root.IsSequence() && root.size() == 0)) return {};
  if (!root.IsMap())
    throw std::runtime_error("author table " + path +
                             ": top level is not a mapping");

  std::map<std::string, std::string> table;
  for (const auto& entry : root) {
    if (!entry.first.IsScalar() || !entry.second.IsScalar())
      throw std::runtime_error("author table " + path + " line " +
                               std::to_string(entry.first.Mark().line + 1) +
                               ": entries must be scalar key: value pairs");
    insert_validated(table, entry.first.Scalar(), entry.second.Scalar(), path,
                     "author id", diagnostics);
  }
  return table;
}

}  // namespace

CountryLookup load_lookup(const std::string& org_json_path,
                          const std::string& author_yaml_path,
                          std::vector<std::string>* diagnostics) {
  CountryLookup lookup;
  if (!org_json_path.empty())
    lookup.org_table = load_org_table(org_json_path, diagnostics);
  if (!author_yaml_path.empty())
    lookup.author_table = load_author_table(author_yaml_path, diagnostics);
  return lookup;
}

// ---- corpus passes ---------------------------------------------------------

std::vector<CoverageRow> coverage_report(const YearBuckets& buckets,
                                         CountryLookup lookup) {
  std::vector<CoverageRow> rows;
  int last_year = INT_MIN;
  for (const auto& [year, records] : buckets) {
    if (year < last_year) throw std::logic_error("buckets out of order");
    last_year = year;
    CoverageRow row;
    row.year = year;
    for (const auto& rec : records) {
      for (const auto& author : rec.authors) {
        const auto res =
            infer_country(author.org.value_or(""), author.id, lookup);
        if (res.country) ++row.resolved;
        else ++row.unresolved;
      }
    }
    const size_t total = row.resolved + row.unresolved;
    row.resolution_rate =
        total == 0 ? 0.0 : static_cast<double>(row.resolved) / total;
    rows.push_back(row);
  }
  return rows;
}

std::vector<RecordCountries> resolve_records(const YearBuckets& buckets,
                                             CountryLookup& lookup) {
  std::vector<RecordCountries> out;
  int last_year = INT_MIN;
  for (const auto& [year, records] : buckets) {
    if (year < last_year) throw std::logic_error("buckets out of order");
    last_year = year;
    for (const auto& rec : records) {
      RecordCountries rc;
      rc.paper_id = rec.id;
      rc.year = year;
      rc.author_count = rec.authors.size();
      for (const auto& author : rec.authors) {
        const auto res =
            infer_country(author.org.value_or(""), author.id, lookup);
        if (res.country) rc.countries.push_back(*res.country);
        else ++rc.unresolved_count;
      }
      out.push_back(std::move(rc));
    }
  }
  return out;
}

}  // namespace citenet::geo
