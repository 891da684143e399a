#pragma once

#include <functional>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "citenet/builders.hpp"
#include "citenet/graph.hpp"
#include "citenet/ingest.hpp"

namespace citenet {

enum class SnapshotMode {
  cumulative,  // snapshot(y) covers every bucket with year <= y
  per_year,    // snapshot(y) covers bucket y alone
};

const char* snapshot_mode_name(SnapshotMode m);

struct SnapshotSeries {
  GraphKind kind = GraphKind::author_citation;
  SnapshotMode mode = SnapshotMode::cumulative;
  std::vector<std::pair<int, LabeledGraph>> snapshots;  // ascending years
  BuildStats stats;
};

/// Builds one snapshot per year in [from, to] inclusive. Cumulative
/// snapshots fold every bucket up to the snapshot year, including buckets
/// before `from`; a range preceding all data yields empty graphs. Years are
/// processed ascending in a single fold, so an n-year series costs one
/// build plus n graph copies.
SnapshotSeries build_snapshots(const YearBuckets& buckets, GraphKind kind,
                               SnapshotMode mode, int from, int to,
                               const geo::CountryLookup* curated = nullptr);

/// Cache key for one snapshot. Injective over (kind, venue set, mode, year,
/// digest): any change to any component changes the key.
std::string snapshot_cache_key(GraphKind kind,
                               const std::set<Venue>& venues,
                               SnapshotMode mode, int year,
                               const std::string& corpus_digest);

/// Content-addressed snapshot store: one JSON file per key under `dir`.
/// Load failures (missing, unreadable, corrupt, version or key mismatch)
/// return nullopt after reporting through `warn`; callers then rebuild.
class GraphCache {
 public:
  explicit GraphCache(std::string dir) : dir_(std::move(dir)) {}

  static constexpr int kFormatVersion = 1;

  bool contains(const std::string& key) const;
  std::optional<LabeledGraph> load(
      const std::string& key,
      const std::function<void(const std::string&)>& warn) const;
  /// Throws std::runtime_error when the directory or file cannot be written.
  void store(const std::string& key, const LabeledGraph& g) const;

  std::string path_for(const std::string& key) const;

 private:
  std::string dir_;
};

}  // namespace citenet
