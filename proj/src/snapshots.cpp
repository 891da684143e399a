#include "citenet/snapshots.hpp"

#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include <nlohmann/json.hpp>

#include "citenet/table_io.hpp"

namespace citenet {

namespace fs = std::filesystem;
using nlohmann::json;

const char* snapshot_mode_name(SnapshotMode m) {
  return m == SnapshotMode::cumulative ? "cumulative" : "per_year";
}

SnapshotSeries build_snapshots(const YearBuckets& buckets, GraphKind kind,
                               SnapshotMode mode, int from, int to,
                               const geo::CountryLookup* curated) {
  if (from > to) throw std::invalid_argument("snapshot range is empty");
  SnapshotSeries series;
  series.kind = kind;
  series.mode = mode;

  auto builder = make_builder(kind, curated);
  auto it = buckets.begin();
  if (mode == SnapshotMode::cumulative) {
    for (int year = from; year <= to; ++year) {
      while (it != buckets.end() && it->first <= year) {
        builder->add_year(it->first, it->second);
        ++it;
      }
      series.snapshots.emplace_back(year, builder->graph());
    }
  } else {
    // Per-year graphs hold only the edges contributed by that year's
    // records, but references still resolve against every earlier record,
    // so a year's citations of older papers (self-citations included)
    // appear in its snapshot.
    for (int year = from; year <= to; ++year) {
      while (it != buckets.end() && it->first < year) {
        builder->add_year(it->first, it->second);
        ++it;
      }
      builder->reset_graph();
      if (it != buckets.end() && it->first == year) {
        builder->add_year(year, it->second);
        ++it;
      }
      series.snapshots.emplace_back(year, builder->graph());
    }
  }
  series.stats = builder->stats();
  return series;
}

std::string snapshot_cache_key(GraphKind kind, const std::set<Venue>& venues,
                               SnapshotMode mode, int year,
                               const std::string& corpus_digest) {
  std::ostringstream key;
  key << "g" << GraphCache::kFormatVersion << '-' << graph_kind_name(kind)
      << '-' << snapshot_mode_name(mode) << '-';
  if (venues.empty()) {
    key << "all";
  } else {
    bool first = true;
    for (const Venue v : venues) {
      if (!first) key << '+';
      key << venue_name(v);
      first = false;
    }
  }
  key << "-y" << year << '-' << corpus_digest;
  return key.str();
}

bool GraphCache::contains(const std::string& key) const {
  return fs::exists(path_for(key));
}

std::string GraphCache::path_for(const std::string& key) const {
  return (fs::path(dir_) / (key + ".json")).string();
}

std::optional<LabeledGraph> GraphCache::load(
    const std::string& key,
    const std::function<void(const std::string&)>& warn) const {
  const std::string path = path_for(key);
  std::ifstream in(path, std::ios::binary);
  if (!in) return std::nullopt;
  std::stringstream buf;
  buf << in.rdbuf();
  try {
    const json j = json::parse(buf.str());
    if (j.at("format_version").get<int>() != kFormatVersion) {
      warn("cache entry " + path + " has an unsupported format version; rebuilding");
      return std::nullopt;
    }
    if (j.at("key").get<std::string>() != key) {
      warn("cache entry " + path + " does not match its key; rebuilding");
      return std::nullopt;
    }
    return graph_from_json(j.at("graph").dump());
  } catch (const std::exception& ex) {
    warn("cache entry " + path + " is corrupt (" + ex.what() + "); rebuilding");
    return std::nullopt;
  }
}

void GraphCache::store(const std::string& key, const LabeledGraph& g) const {
  std::error_code ec;
  fs::create_directories(dir_, ec);
  if (ec)
    throw std::runtime_error("cannot create cache directory " + dir_ + ": " +
                             ec.message());
  json j;
  j["format_version"] = kFormatVersion;
  j["key"] = key;
  j["graph"] = json::parse(graph_to_json(g));
  const std::string path = path_for(key);
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot write cache entry " + path);
  out << j.dump();
  out.flush();
  if (!out) throw std::runtime_error("failed writing cache entry " + path);
}

}  // namespace citenet
