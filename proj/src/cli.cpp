#include "citenet/cli.hpp"

#include <algorithm>
#include <ctime>
#include <fstream>
#include <iostream>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <CLI/CLI.hpp>
#include <nlohmann/json.hpp>
#include <yaml-cpp/yaml.h>

#include "citenet/analytics.hpp"
#include "citenet/builders.hpp"
#include "citenet/centrality.hpp"
#include "citenet/geo.hpp"
#include "citenet/ingest.hpp"
#include "citenet/snapshots.hpp"
#include "citenet/strings.hpp"
#include "citenet/table_io.hpp"

namespace citenet::cli {

namespace {

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct EnvError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Options {
  std::string config_file;
  std::string input;
  std::vector<std::string> venues;  // canonical names; empty = no filter
  std::string years;                // "FROM:TO"; empty = span of the data
  std::vector<std::string> graphs{"ACi", "ACo", "PC", "APC", "CC"};
  std::vector<std::string> centralities;  // empty = per-command default
  std::string mode = "cumulative";
  double q = 0.15;
  double tol = 1e-10;
  int max_iter = 200;
  int h = 2;
  int workers = 1;
  std::string normalizer = "undirected-pairs";
  std::string closeness_mode = "strict";
  bool distinct = false;
  std::string org_table;
  std::string author_table;
  std::string laureates;
  std::string venue_aliases;
  std::string stopwords;
  std::string out = "out";
  std::string cache = "cache";
  std::string format = "csv";
  bool include_unresolved = false;
  int window = 2;
  int top_k = 0;  // 0 = per-analysis default
  std::vector<int> sample_years;
  std::string source_venue = "NeurIPS";
};

std::string join(const std::vector<std::string>& xs, char sep = ',') {
  std::string out;
  for (size_t i = 0; i < xs.size(); ++i) {
    if (i) out.push_back(sep);
    out += xs[i];
  }
  return out;
}

std::string join_ints(const std::vector<int>& xs, char sep = ',') {
  std::string out;
  for (size_t i = 0; i < xs.size(); ++i) {
    if (i) out.push_back(sep);
    out += std::to_string(xs[i]);
  }
  return out;
}

std::string iso_utc_now() {
  const std::time_t t = std::time(nullptr);
  char buf[32];
  std::tm tm_utc{};
  gmtime_r(&t, &tm_utc);
  std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm_utc);
  return buf;
}

CentralityParams params_of(const Options& o) {
  CentralityParams p;
  p.q = o.q;
  p.tol = o.tol;
  p.max_iter = o.max_iter;
  p.h = o.h;
  p.workers = o.workers;
  p.normalizer = o.normalizer == "directed-pairs"
                     ? BetweennessNormalizer::directed_pairs
                     : BetweennessNormalizer::undirected_pairs;
  p.closeness_mode = o.closeness_mode == "per_component"
                         ? ClosenessMode::per_component
                         : ClosenessMode::strict;
  p.distinct_degree = o.distinct;
  return p;
}

// Everything the run depends on, resolved once: corpus, filters, year range,
// curated lookup tables.
struct Pipeline {
  Options opt;
  Corpus corpus;             // canonicalized, venue-filtered
  std::set<Venue> venue_set; // empty = all venues pass
  YearBuckets buckets;       // every filtered record, keyed by year
  int from = 0;
  int to = -1;               // from > to encodes an empty range
  std::string digest;
  geo::CountryLookup lookup;
  size_t out_of_window = 0;  // records kept but outside [from, to]
};

Pipeline prepare(const Options& opt) {
  Pipeline p;
  p.opt = opt;

  std::unique_ptr<LineSource> src;
  try {
    src = open_line_source(opt.input);
  } catch (const std::exception& e) {
    throw UsageError(e.what());
  }
  p.corpus = read_corpus(*src);
  for (const auto& d : p.corpus.diagnostics)
    std::cerr << "note: line " << d.line << ": " << d.reason << "\n";

  VenueAliasTable aliases;
  if (!opt.venue_aliases.empty())
    aliases = VenueAliasTable::load(opt.venue_aliases);
  canonicalize_venues(p.corpus.records, aliases);

  if (!opt.venues.empty()) {
    for (const auto& name : opt.venues) {
      const auto v = parse_venue_name(name);
      if (!v) throw UsageError("unknown venue: " + name);
      p.venue_set.insert(*v);
    }
    p.corpus.records =
        filter_by_venues(std::move(p.corpus.records), p.venue_set);
  }

  p.digest = corpus_digest(p.corpus.records);
  p.buckets = bucket_by_year(p.corpus.records);

  if (!opt.years.empty()) {
    const auto pos = opt.years.find(':');
    if (pos == std::string::npos)
      throw UsageError("--years must be FROM:TO, got: " + opt.years);
    try {
      p.from = std::stoi(opt.years.substr(0, pos));
      p.to = std::stoi(opt.years.substr(pos + 1));
    } catch (const std::exception&) {
      throw UsageError("--years must be FROM:TO with integer years, got: " +
                       opt.years);
    }
    if (p.from > p.to)
      throw UsageError("--years range is inverted: " + opt.years);
  } else if (!p.buckets.empty()) {
    p.from = p.buckets.begin()->first;
    p.to = p.buckets.rbegin()->first;
  }

  for (const auto& [year, records] : p.buckets)
    if (year < p.from || year > p.to) p.out_of_window += records.size();
  if (p.out_of_window > 0)
    std::cerr << "note: " << p.out_of_window
              << " record(s) outside the analysis window were skipped by "
                 "windowed computations\n";

  if (!opt.org_table.empty() || !opt.author_table.empty()) {
    std::vector<std::string> diags;
    p.lookup = geo::load_lookup(opt.org_table, opt.author_table, &diags);
    for (const auto& d : diags) std::cerr << "note: " << d << "\n";
  }
  return p;
}

YearBuckets window_buckets(const Pipeline& p) {
  YearBuckets out;
  for (const auto& [year, records] : p.buckets)
    if (year >= p.from && year <= p.to) out.emplace(year, records);
  return out;
}

io::Metadata config_echo(const Pipeline& p) {
  const Options& o = p.opt;
  io::Metadata md;
  md["config.input"] = o.input;
  md["config.venues"] = o.venues.empty() ? "all" : join(o.venues);
  md["config.years"] = std::to_string(p.from) + ":" + std::to_string(p.to);
  md["config.graphs"] = join(o.graphs);
  md["config.centralities"] =
      o.centralities.empty() ? "default" : join(o.centralities);
  md["config.mode"] = o.mode;
  md["config.q"] = io::format_double(o.q);
  md["config.tol"] = io::format_double(o.tol);
  md["config.max_iter"] = std::to_string(o.max_iter);
  md["config.h"] = std::to_string(o.h);
  md["config.workers"] = std::to_string(o.workers);
  md["config.normalizer"] = o.normalizer;
  md["config.closeness_mode"] = o.closeness_mode;
  md["config.distinct"] = o.distinct ? "true" : "false";
  md["config.org_table"] = o.org_table;
  md["config.author_table"] = o.author_table;
  md["config.laureates"] = o.laureates;
  md["config.venue_aliases"] = o.venue_aliases;
  md["config.stopwords"] = o.stopwords;
  md["config.format"] = o.format;
  md["config.include_unresolved"] = o.include_unresolved ? "true" : "false";
  md["config.window"] = std::to_string(o.window);
  md["config.top_k"] =
      o.top_k > 0 ? std::to_string(o.top_k) : std::string("default");
  md["config.sample_years"] =
      o.sample_years.empty() ? "all" : join_ints(o.sample_years);
  md["config.source_venue"] = o.source_venue;
  return md;
}

GraphKind graph_kind_or_throw(const std::string& name) {
  const auto kind = parse_graph_kind(name);
  if (!kind) throw UsageError("unknown graph kind: " + name);
  return *kind;
}

CentralityKind centrality_kind_or_throw(const std::string& name) {
  const auto kind = parse_centrality_kind(name);
  if (!kind) throw UsageError("unknown centrality: " + name);
  return *kind;
}

SnapshotMode mode_of(const Options& o) {
  return o.mode == "per_year" ? SnapshotMode::per_year
                              : SnapshotMode::cumulative;
}

struct SeriesWithKeys {
  SnapshotSeries series;
  std::vector<std::string> keys;  // parallel to series.snapshots
};

// Loads the whole snapshot series from cache when every year is present,
// otherwise rebuilds the series in one fold and stores each snapshot.
// Cache traffic is reported on stderr only, keeping files byte-stable
// between cold and warm runs.
SeriesWithKeys snapshots_for(const Pipeline& p, GraphKind kind,
                             SnapshotMode mode, const GraphCache& cache) {
  SeriesWithKeys out;
  out.series.kind = kind;
  out.series.mode = mode;
  if (p.from > p.to) return out;

  for (int year = p.from; year <= p.to; ++year)
    out.keys.push_back(
        snapshot_cache_key(kind, p.venue_set, mode, year, p.digest));

  const auto warn = [](const std::string& message) {
    std::cerr << "warning: " << message << "\n";
  };

  bool all_cached = true;
  for (const auto& key : out.keys)
    if (!cache.contains(key)) {
      all_cached = false;
      break;
    }
  if (all_cached) {
    int year = p.from;
    for (const auto& key : out.keys) {
      auto g = cache.load(key, warn);
      if (!g) {
        all_cached = false;
        break;
      }
      std::cerr << "note: cache hit " << key << "\n";
      out.series.snapshots.emplace_back(year++, std::move(*g));
    }
    if (all_cached) return out;
    out.series.snapshots.clear();
  }

  out.series = build_snapshots(p.buckets, kind, mode, p.from, p.to, &p.lookup);
  for (size_t i = 0; i < out.series.snapshots.size(); ++i) {
    try {
      cache.store(out.keys[i], out.series.snapshots[i].second);
    } catch (const std::exception& e) {
      throw EnvError(e.what());
    }
    std::cerr << "note: cache store " << out.keys[i] << "\n";
  }
  const BuildStats& s = out.series.stats;
  std::cerr << "note: " << graph_kind_name(kind)
            << ": skipped_references=" << s.skipped_references
            << " self_references=" << s.self_references
            << " unresolved_citing_authors=" << s.unresolved_citing_authors
            << "\n";
  return out;
}

void write_output(const std::string& path, const std::string& content) {
  try {
    io::write_file(path, content);
  } catch (const std::exception& e) {
    throw EnvError(e.what());
  }
}

// Emits a table under out/<base>.<format> and records the file name.
struct Emitter {
  const Options& opt;
  std::vector<std::string> written;

  void emit(const std::string& base, const io::Table& table) {
    const bool as_json = opt.format == "json";
    const std::string name = base + (as_json ? ".json" : ".csv");
    write_output(opt.out + "/" + name,
                 as_json ? table.to_json() : table.to_csv());
    written.push_back(name);
  }
};

void write_manifest(const Pipeline& p, const std::string& command,
                    nlohmann::json extra) {
  nlohmann::json manifest = std::move(extra);
  manifest["command"] = command;
  manifest["config"] = config_echo(p);
  manifest["corpus"] = {{"records", p.corpus.records.size()},
                        {"lines_read", p.corpus.lines_read},
                        {"malformed", p.corpus.malformed},
                        {"duplicate_ids", p.corpus.duplicate_ids},
                        {"out_of_window", p.out_of_window}};
  manifest["timestamp"] = iso_utc_now();
  write_output(p.opt.out + "/manifest.json", manifest.dump(2) + "\n");
}

// ---- build -----------------------------------------------------------------

int run_build(const Pipeline& p) {
  const GraphCache cache(p.opt.cache);
  const SnapshotMode mode = mode_of(p.opt);
  nlohmann::json rows = nlohmann::json::array();
  for (const auto& name : p.opt.graphs) {
    const GraphKind kind = graph_kind_or_throw(name);
    const SeriesWithKeys got = snapshots_for(p, kind, mode, cache);
    for (size_t i = 0; i < got.series.snapshots.size(); ++i) {
      const auto& [year, graph] = got.series.snapshots[i];
      rows.push_back({{"kind", graph_kind_name(kind)},
                      {"mode", snapshot_mode_name(mode)},
                      {"year", year},
                      {"nodes", graph.node_count()},
                      {"edges", graph.edge_count()},
                      {"cache_key", got.keys[i]}});
    }
  }
  write_manifest(p, "build", {{"graphs", std::move(rows)}});
  return kExitOk;
}

// ---- centrality ------------------------------------------------------------

int run_centrality(const Pipeline& p) {
  const GraphCache cache(p.opt.cache);
  const SnapshotMode mode = mode_of(p.opt);
  const CentralityParams params = params_of(p.opt);
  const io::Metadata echo = config_echo(p);

  std::vector<CentralityKind> kinds;
  if (p.opt.centralities.empty())
    kinds = all_centrality_kinds();
  else
    for (const auto& name : p.opt.centralities)
      kinds.push_back(centrality_kind_or_throw(name));

  Emitter emitter{p.opt, {}};
  std::vector<std::string> warnings;
  for (const auto& name : p.opt.graphs) {
    const GraphKind kind = graph_kind_or_throw(name);
    const SeriesWithKeys got = snapshots_for(p, kind, mode, cache);
    const CentralityBatch batch = all_centralities(got.series, kinds, params);
    for (const auto& [year_kind, outcome] : batch) {
      const auto& [year, ckind] = year_kind;
      if (!outcome.table) {
        warnings.push_back(std::string(graph_kind_name(kind)) + " " +
                           centrality_kind_name(ckind) + " " +
                           std::to_string(year) + ": " + outcome.error);
        continue;
      }
      const std::string base = std::string(graph_kind_name(kind)) + "_" +
                               centrality_kind_name(ckind) + "_" +
                               std::to_string(year);
      emitter.emit(base, io::centrality_table(*outcome.table, year, echo));
    }
  }
  for (const auto& w : warnings) std::cerr << "warning: " << w << "\n";
  write_manifest(p, "centrality",
                 {{"outputs", emitter.written}, {"warnings", warnings}});
  return kExitOk;
}

// ---- analyze ---------------------------------------------------------------

CentralityKind first_centrality(const Options& o, CentralityKind fallback) {
  if (o.centralities.empty()) return fallback;
  return centrality_kind_or_throw(o.centralities.front());
}

// Per-year centrality tables over a snapshot series; failures become
// warnings and drop the year.
std::map<int, CentralityTable> tables_over(const SnapshotSeries& series,
                                           CentralityKind kind,
                                           const CentralityParams& params,
                                           std::vector<std::string>& warnings) {
  std::map<int, CentralityTable> tables;
  const CentralityBatch batch = all_centralities(series, {kind}, params);
  for (const auto& [year_kind, outcome] : batch) {
    if (outcome.table)
      tables.emplace(year_kind.first, *outcome.table);
    else
      warnings.push_back(std::to_string(year_kind.first) + ": " +
                         outcome.error);
  }
  return tables;
}

int run_analyze(const Pipeline& p, const std::string& analysis) {
  const GraphCache cache(p.opt.cache);
  const CentralityParams params = params_of(p.opt);
  const io::Metadata echo = config_echo(p);
  Emitter emitter{p.opt, {}};
  std::vector<std::string> warnings;
  const YearBuckets wb = window_buckets(p);

  if (analysis == "rank-over-time") {
    const GraphKind gkind = graph_kind_or_throw(
        p.opt.graphs.empty() ? "ACi" : p.opt.graphs.front());
    const CentralityKind ckind =
        first_centrality(p.opt, CentralityKind::degree);
    const SeriesWithKeys got =
        snapshots_for(p, gkind, mode_of(p.opt), cache);
    const auto tables = tables_over(got.series, ckind, params, warnings);
    std::vector<int> sample = p.opt.sample_years;
    if (sample.empty())
      for (const auto& [year, table] : tables) sample.push_back(year);
    const int k = p.opt.top_k > 0 ? p.opt.top_k : 10;
    const auto series = analytics::rank_over_time(tables, sample, k);
    emitter.emit(std::string("rank_over_time_") + graph_kind_name(gkind) +
                     "_" + centrality_kind_name(ckind),
                 io::rank_series_table(series, echo));
  } else if (analysis == "top-k-share") {
    const CentralityKind ckind =
        first_centrality(p.opt, CentralityKind::pagerank);
    const SeriesWithKeys got = snapshots_for(
        p, GraphKind::paper_citation, mode_of(p.opt), cache);
    const auto tables = tables_over(got.series, ckind, params, warnings);
    const auto venue_of = analytics::venue_of_map(p.corpus.records);
    const int k = p.opt.top_k > 0 ? p.opt.top_k : 100;
    const auto counts = analytics::top_k_venue_share(tables, venue_of, k);
    emitter.emit("top_k_venue_share_counts", io::share_table(counts, echo));
    emitter.emit("top_k_venue_share_pct",
                 io::share_table(analytics::to_percentage(counts), echo));
  } else if (analysis == "citation-share") {
    const auto source = parse_venue_name(p.opt.source_venue);
    if (!source) throw UsageError("unknown venue: " + p.opt.source_venue);
    const SeriesWithKeys got = snapshots_for(
        p, GraphKind::paper_citation, SnapshotMode::cumulative, cache);
    LabeledGraph pc(true, false);
    if (!got.series.snapshots.empty()) pc = got.series.snapshots.back().second;
    const auto share = analytics::citation_share_by_source(
        pc, analytics::year_of_map(p.corpus.records),
        analytics::venue_of_map(p.corpus.records), *source);
    emitter.emit(std::string("citation_share_") + venue_name(*source),
                 io::share_table(share, echo));
  } else if (analysis == "self-cite") {
    const SeriesWithKeys got = snapshots_for(
        p, GraphKind::author_citation, SnapshotMode::per_year, cache);
    const auto rows = analytics::self_citation_stats(got.series, wb);
    emitter.emit("self_citations", io::self_cite_table(rows, echo));
  } else if (analysis == "new-authors") {
    const auto stats = analytics::new_author_stats(wb);
    emitter.emit("new_author_venue_share",
                 io::new_author_venue_table(stats, echo));
    emitter.emit("new_author_coauthors",
                 io::new_author_coauthor_table(stats, echo));
  } else if (analysis == "overlap") {
    if (p.opt.venues.size() < 2)
      throw UsageError("overlap needs two venues via --venues");
    const auto va = parse_venue_name(p.opt.venues[0]);
    const auto vb = parse_venue_name(p.opt.venues[1]);
    if (!va || !vb) throw UsageError("unknown venue in --venues");
    const auto rows = analytics::author_overlap(wb, *va, *vb);
    emitter.emit(std::string("author_overlap_") + venue_name(*va) + "_" +
                     venue_name(*vb),
                 io::overlap_table(rows, echo));
  } else if (analysis == "authors-per-paper") {
    const auto rows = analytics::authors_per_paper(wb);
    emitter.emit("authors_per_paper", io::paper_size_table(rows, echo));
  } else if (analysis == "country-share" || analysis == "sliding-window") {
    geo::CountryLookup lookup = p.lookup;  // fresh past_table per run
    const auto resolved = geo::resolve_records(wb, lookup);
    const auto counts = analytics::country_share(
        resolved, analytics::ShareTable::Mode::counts,
        p.opt.include_unresolved);
    if (analysis == "country-share") {
      emitter.emit("country_share_counts", io::share_table(counts, echo));
      emitter.emit("country_share_pct",
                   io::share_table(analytics::to_percentage(counts), echo));
    } else {
      const auto smoothed = analytics::sliding_window_average(
          analytics::to_percentage(counts), p.opt.window);
      emitter.emit("country_share_window", io::share_table(smoothed, echo));
    }
  } else if (analysis == "coverage") {
    const auto rows = geo::coverage_report(wb, p.lookup);
    emitter.emit("country_coverage", io::coverage_table(rows, echo));
  } else if (analysis == "laureate-correlation") {
    if (p.opt.laureates.empty())
      throw UsageError("laureate-correlation requires --laureates");
    std::unordered_set<std::string> stopwords;
    if (!p.opt.stopwords.empty())
      stopwords = analytics::load_stopwords(p.opt.stopwords);

    std::map<std::string, const PaperRecord*> by_id;
    for (const auto& rec : p.corpus.records) by_id[rec.id] = &rec;

    std::map<int, std::vector<std::string>> laureate_titles;
    try {
      const YAML::Node root = YAML::LoadFile(p.opt.laureates);
      if (!root.IsMap())
        throw UsageError("laureate file must be a mapping: " +
                         p.opt.laureates);
      for (const auto& entry : root) {
        const YAML::Node papers = entry.second["papers"];
        if (!papers || !papers.IsSequence())
          throw UsageError("laureate entry without a papers list: " +
                           entry.first.as<std::string>());
        for (const auto& id : papers) {
          const auto it = by_id.find(id.as<std::string>());
          if (it == by_id.end()) {
            warnings.push_back("laureate paper not in corpus: " +
                               id.as<std::string>());
            continue;
          }
          const PaperRecord& rec = *it->second;
          if (rec.year < p.from || rec.year > p.to) continue;
          laureate_titles[rec.year].push_back(rec.title);
        }
      }
    } catch (const YAML::Exception& e) {
      throw UsageError("cannot parse laureate file " + p.opt.laureates +
                       ": " + e.what());
    }

    std::map<int, std::vector<std::string>> corpus_titles;
    for (const auto& [year, records] : wb)
      for (const auto& rec : records)
        corpus_titles[year].push_back(rec.title);

    auto rows = analytics::tfidf_rank_correlation(laureate_titles,
                                                  corpus_titles, stopwords);
    io::Metadata md = echo;
    md["tfidf"] = "document=title, tf=raw count, idf=ln(N/df), "
                  "aggregation=sum, ties=average-rank";
    emitter.emit("laureate_title_correlation",
                 io::correlation_table(rows, md));
  } else {
    throw UsageError("unknown analysis: " + analysis);
  }

  for (const auto& w : warnings) std::cerr << "warning: " << w << "\n";
  write_manifest(p, "analyze",
                 {{"analysis", analysis},
                  {"outputs", emitter.written},
                  {"warnings", warnings}});
  return kExitOk;
}

// ---- flag wiring -------------------------------------------------------------

void add_common(CLI::App* sub, Options& o) {
  // --h is the volume radius, so help must not claim the short -h form.
  sub->set_help_flag("--help", "print this help message and exit");
  sub->add_option("--config", o.config_file,
                  "key=value file mirroring the flags; flags take precedence");
  sub->add_option("--input", o.input,
                  "records file, newline-delimited JSON, plain or gzip")
      ->required();
  sub->add_option("--venues", o.venues,
                  "venue filter, canonical names, comma separated")
      ->delimiter(',');
  sub->add_option("--years", o.years, "analysis window FROM:TO");
  sub->add_option("--graphs", o.graphs, "graph kinds: ACi,ACo,PC,APC,CC")
      ->delimiter(',');
  sub->add_option("--centralities", o.centralities,
                  "centrality kinds (default depends on the command)")
      ->delimiter(',');
  sub->add_option("--mode", o.mode, "snapshot mode")
      ->check(CLI::IsMember({"cumulative", "per_year"}));
  sub->add_option("--q", o.q, "pagerank teleport probability");
  sub->add_option("--tol", o.tol, "pagerank convergence threshold");
  sub->add_option("--max-iter", o.max_iter, "pagerank iteration cap");
  sub->add_option("--h", o.h, "volume centrality radius");
  sub->add_option("--workers", o.workers, "worker threads")
      ->check(CLI::PositiveNumber);
  sub->add_option("--normalizer", o.normalizer, "betweenness normalizer")
      ->check(CLI::IsMember({"undirected-pairs", "directed-pairs"}));
  sub->add_option("--closeness-mode", o.closeness_mode, "closeness handling")
      ->check(CLI::IsMember({"strict", "per_component"}));
  sub->add_flag("--distinct", o.distinct,
                "degree counts distinct neighbors instead of endpoints");
  sub->add_option("--org-table", o.org_table,
                  "JSON organization-to-country table");
  sub->add_option("--author-table", o.author_table,
                  "YAML author-to-country table");
  sub->add_option("--laureates", o.laureates, "YAML laureate paper list");
  sub->add_option("--venue-aliases", o.venue_aliases,
                  "JSON venue alias table");
  sub->add_option("--stopwords", o.stopwords, "stop word list, one per line");
  sub->add_option("--out", o.out, "output directory");
  sub->add_option("--cache", o.cache, "snapshot cache directory");
  sub->add_option("--format", o.format, "output format")
      ->check(CLI::IsMember({"csv", "json"}));
  sub->add_flag("--include-unresolved", o.include_unresolved,
                "count unresolved records as Unknown in country shares");
  sub->add_option("--window", o.window, "sliding window width in years")
      ->check(CLI::PositiveNumber);
  sub->add_option("--top-k", o.top_k, "ranking cutoff");
  sub->add_option("--sample-years", o.sample_years,
                  "years to sample for rank-over-time")
      ->delimiter(',');
  sub->add_option("--source-venue", o.source_venue,
                  "source venue for citation-share");
}

// ---- config file expansion ---------------------------------------------------

// Turns a key=value config file into "--key=value" tokens, skipping keys the
// command line already sets so explicit flags always win. Boolean flag keys
// take true/false words instead of bare presence.
std::vector<std::string> tokens_from_config(const std::string& path,
                                            const std::set<std::string>& given) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot open config file: " + path);
  static const std::set<std::string> flag_keys{"distinct",
                                               "include-unresolved"};
  std::vector<std::string> out;
  std::string line;
  size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const std::string text = trim(line);
    if (text.empty() || text[0] == '#') continue;
    const auto at = [&] {
      return path + " line " + std::to_string(lineno);
    };
    const auto eq = text.find('=');
    if (eq == std::string::npos)
      throw UsageError(at() + ": expected key=value, got: " + text);
    const std::string key = trim(text.substr(0, eq));
    const std::string value = trim(text.substr(eq + 1));
    if (key.empty()) throw UsageError(at() + ": empty key");
    if (given.count(key)) continue;
    if (flag_keys.count(key)) {
      const std::string word = to_lower(value);
      if (word == "true" || word == "1" || word == "yes" || word == "on")
        out.push_back("--" + key);
      else if (word != "false" && word != "0" && word != "no" &&
               word != "off")
        throw UsageError(at() + ": flag " + key + " must be true or false");
      continue;
    }
    out.push_back("--" + key + "=" + value);
  }
  return out;
}

// Injects the expanded config tokens at the (last) --config occurrence,
// which always sits after the subcommand name.
std::vector<std::string> expand_config_args(int argc,
                                            const char* const* argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  size_t cfg_pos = args.size();
  std::string path;
  for (size_t i = 0; i < args.size(); ++i) {
    if (args[i] == "--config" && i + 1 < args.size()) {
      cfg_pos = i;
      path = args[i + 1];
    } else if (args[i].rfind("--config=", 0) == 0) {
      cfg_pos = i;
      path = args[i].substr(std::string("--config=").size());
    }
  }
  if (cfg_pos == args.size()) return args;

  std::set<std::string> given;
  for (const auto& arg : args) {
    if (arg.size() <= 2 || arg.rfind("--", 0) != 0) continue;
    const auto stop = arg.find('=');
    given.insert(arg.substr(2, stop == std::string::npos ? stop : stop - 2));
  }
  const auto extra = tokens_from_config(path, given);
  args.insert(args.begin() + static_cast<std::ptrdiff_t>(cfg_pos),
              extra.begin(), extra.end());
  return args;
}

}  // namespace

int run(int argc, const char* const* argv) {
  CLI::App app{"citation graph construction and analysis over scholarly "
               "paper records"};
  app.require_subcommand(1);

  Options opt;
  CLI::App* build = app.add_subcommand(
      "build", "construct graph snapshots and write a manifest");
  CLI::App* centrality = app.add_subcommand(
      "centrality", "compute centrality tables over snapshots");
  CLI::App* analyze =
      app.add_subcommand("analyze", "run one named analysis");
  std::string analysis;
  analyze
      ->add_option("analysis", analysis,
                   "rank-over-time | top-k-share | citation-share | "
                   "self-cite | new-authors | overlap | authors-per-paper | "
                   "country-share | sliding-window | coverage | "
                   "laureate-correlation")
      ->required();
  for (CLI::App* sub : {build, centrality, analyze}) add_common(sub, opt);

  try {
    std::vector<std::string> args = expand_config_args(argc, argv);
    std::reverse(args.begin(), args.end());  // the vector overload wants this
    app.parse(std::move(args));
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  }

  try {
    const Pipeline p = prepare(opt);
    if (build->parsed()) return run_build(p);
    if (centrality->parsed()) return run_centrality(p);
    return run_analyze(p, analysis);
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const EnvError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitEnv;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  }
}

}  // namespace citenet::cli
