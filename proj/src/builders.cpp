#include "citenet/builders.hpp"

#include <stdexcept>
#include <unordered_map>
#include <unordered_set>

namespace citenet {

namespace {

constexpr size_t kMaxStoredDiagnostics = 100;

void add_diagnostic(BuildStats& stats, std::string message) {
  if (stats.diagnostics.size() < kMaxStoredDiagnostics)
    stats.diagnostics.push_back(std::move(message));
}

std::vector<std::string> distinct_author_ids(const PaperRecord& rec) {
  std::vector<std::string> out;
  std::unordered_set<std::string> seen;
  for (const auto& a : rec.authors)
    if (seen.insert(a.id).second) out.push_back(a.id);
  return out;
}

// References deduplicated in first-occurrence order; a record citing its own
// id loses that reference (dataset fault: a paper cannot cite itself).
std::vector<std::string> usable_references(const PaperRecord& rec,
                                           BuildStats& stats) {
  std::vector<std::string> out;
  std::unordered_set<std::string> seen;
  for (const auto& ref : rec.references) {
    if (!seen.insert(ref).second) continue;
    if (ref == rec.id) {
      ++stats.self_references;
      add_diagnostic(stats, "record " + rec.id +
                                " lists itself in references: dropped");
      continue;
    }
    out.push_back(ref);
  }
  return out;
}

}  // namespace

const char* graph_kind_name(GraphKind k) {
  switch (k) {
    case GraphKind::author_citation: return "ACi";
    case GraphKind::collaboration: return "ACo";
    case GraphKind::paper_citation: return "PC";
    case GraphKind::author_paper: return "APC";
    case GraphKind::country_citation: return "CC";
  }
  return "ACi";
}

std::optional<GraphKind> parse_graph_kind(const std::string& name) {
  for (GraphKind k :
       {GraphKind::author_citation, GraphKind::collaboration,
        GraphKind::paper_citation, GraphKind::author_paper,
        GraphKind::country_citation}) {
    if (name == graph_kind_name(k)) return k;
  }
  return std::nullopt;
}

void BuildStats::merge(const BuildStats& other) {
  skipped_references += other.skipped_references;
  self_references += other.self_references;
  unresolved_citing_authors += other.unresolved_citing_authors;
  for (const auto& d : other.diagnostics) add_diagnostic(*this, d);
}

void GraphBuilder::add_year(int year, std::span<const PaperRecord> records) {
  if (year <= last_year_)
    throw std::logic_error("years must be folded in ascending order");
  last_year_ = year;
  fold_year(year, records);
}

namespace {

// Author-citation graph: directed multigraph over authors; an edge per
// (citing author, cited author) pair for each (citing record, cited record)
// pair. Authors citing their own earlier (or same-year) papers produce
// self-loops.
class AuthorCitationBuilder : public GraphBuilder {
 public:
  AuthorCitationBuilder() : GraphBuilder(/*directed=*/true, /*multigraph=*/true) {}

 protected:
  void fold_year(int, std::span<const PaperRecord> records) override {
    // The year's own papers become citable before any of its references
    // resolve, so same-year citations connect.
    for (const auto& rec : records) {
      auto authors = distinct_author_ids(rec);
      for (const auto& id : authors) graph_.ensure_node(NodeKind::author, id);
      paper_authors_[rec.id] = std::move(authors);
    }
    for (const auto& rec : records) {
      const auto& citing = paper_authors_[rec.id];
      for (const auto& ref : usable_references(rec, stats_)) {
        const auto it = paper_authors_.find(ref);
        if (it == paper_authors_.end()) {
          ++stats_.skipped_references;
          continue;
        }
        for (const auto& cited : it->second) {
          const NodeId cited_node = graph_.ensure_node(NodeKind::author, cited);
          for (const auto& author : citing) {
            const NodeId citing_node =
                graph_.ensure_node(NodeKind::author, author);
            graph_.add_edge(citing_node, cited_node, EdgeKind::citation);
          }
        }
      }
    }
  }

 private:
  std::unordered_map<std::string, std::vector<std::string>> paper_authors_;
};

// Collaboration graph: undirected simple graph; a clique over each record's
// distinct authors.
class CollaborationBuilder : public GraphBuilder {
 public:
  CollaborationBuilder()
      : GraphBuilder(/*directed=*/false, /*multigraph=*/false) {}

 protected:
  void fold_year(int, std::span<const PaperRecord> records) override {
    for (const auto& rec : records) {
      const auto authors = distinct_author_ids(rec);
      std::vector<NodeId> nodes;
      nodes.reserve(authors.size());
      for (const auto& id : authors)
        nodes.push_back(graph_.ensure_node(NodeKind::author, id));
      for (size_t i = 0; i < nodes.size(); ++i)
        for (size_t j = i + 1; j < nodes.size(); ++j)
          graph_.add_edge(nodes[i], nodes[j], EdgeKind::collaboration);
    }
  }
};

// Paper-citation graph: directed simple graph; every record is a node.
class PaperCitationBuilder : public GraphBuilder {
 public:
  PaperCitationBuilder()
      : GraphBuilder(/*directed=*/true, /*multigraph=*/false) {}

 protected:
  void fold_year(int, std::span<const PaperRecord> records) override {
    for (const auto& rec : records) {
      graph_.ensure_node(NodeKind::paper, rec.id);
      known_.insert(rec.id);
    }
    for (const auto& rec : records) {
      const NodeId src = *graph_.find_node(NodeKind::paper, rec.id);
      for (const auto& ref : usable_references(rec, stats_)) {
        if (!known_.count(ref)) {
          ++stats_.skipped_references;
          continue;
        }
        graph_.add_edge(src, graph_.ensure_node(NodeKind::paper, ref),
                        EdgeKind::citation);
      }
    }
  }

 private:
  std::unordered_set<std::string> known_;
};

// Author-paper graph: paper-citation edges plus one authorship edge
// author -> paper per distinct (author, record) pair.
class AuthorPaperBuilder : public GraphBuilder {
 public:
  AuthorPaperBuilder() : GraphBuilder(/*directed=*/true, /*multigraph=*/false) {}

 protected:
  void fold_year(int, std::span<const PaperRecord> records) override {
    for (const auto& rec : records) {
      const NodeId paper = graph_.ensure_node(NodeKind::paper, rec.id);
      known_.insert(rec.id);
      for (const auto& id : distinct_author_ids(rec)) {
        const NodeId author = graph_.ensure_node(NodeKind::author, id);
        graph_.add_edge(author, paper, EdgeKind::authorship);
      }
    }
    for (const auto& rec : records) {
      const NodeId src = *graph_.find_node(NodeKind::paper, rec.id);
      for (const auto& ref : usable_references(rec, stats_)) {
        if (!known_.count(ref)) {
          ++stats_.skipped_references;
          continue;
        }
        graph_.add_edge(src, graph_.ensure_node(NodeKind::paper, ref),
                        EdgeKind::citation);
      }
    }
  }

 private:
  std::unordered_set<std::string> known_;
};

// Country-citation graph: directed multigraph over countries. Author
// occurrences resolve through the country-inference cascade when their
// record is registered; countries become nodes as soon as a resolved author
// publishes. Each resolvable citation contributes one edge per (resolved
// citing author, resolved cited author) pair; unresolved citing authors are
// counted instead.
class CountryCitationBuilder : public GraphBuilder {
 public:
  explicit CountryCitationBuilder(const geo::CountryLookup* curated)
      : GraphBuilder(/*directed=*/true, /*multigraph=*/true) {
    if (curated) {
      lookup_.org_table = curated->org_table;
      lookup_.author_table = curated->author_table;
    }
  }

 protected:
  void fold_year(int, std::span<const PaperRecord> records) override {
    for (const auto& rec : records) {
      std::vector<std::optional<std::string>> countries;
      countries.reserve(rec.authors.size());
      for (const auto& author : rec.authors) {
        auto res = geo::infer_country(author.org.value_or(""), author.id, lookup_);
        if (res.country) graph_.ensure_node(NodeKind::country, *res.country);
        countries.push_back(std::move(res.country));
      }
      paper_countries_[rec.id] = std::move(countries);
    }
    for (const auto& rec : records) {
      const auto& citing = paper_countries_[rec.id];
      for (const auto& ref : usable_references(rec, stats_)) {
        const auto it = paper_countries_.find(ref);
        if (it == paper_countries_.end()) {
          ++stats_.skipped_references;
          continue;
        }
        for (const auto& citing_country : citing) {
          if (!citing_country) {
            ++stats_.unresolved_citing_authors;
            continue;
          }
          const NodeId src =
              graph_.ensure_node(NodeKind::country, *citing_country);
          for (const auto& cited_country : it->second) {
            if (!cited_country) continue;
            graph_.add_edge(
                src, graph_.ensure_node(NodeKind::country, *cited_country),
                EdgeKind::citation);
          }
        }
      }
    }
  }

 private:
  geo::CountryLookup lookup_;
  std::unordered_map<std::string, std::vector<std::optional<std::string>>>
      paper_countries_;
};

}  // namespace

std::unique_ptr<GraphBuilder> make_builder(GraphKind kind,
                                           const geo::CountryLookup* curated) {
  switch (kind) {
    case GraphKind::author_citation:
      return std::make_unique<AuthorCitationBuilder>();
    case GraphKind::collaboration:
      return std::make_unique<CollaborationBuilder>();
    case GraphKind::paper_citation:
      return std::make_unique<PaperCitationBuilder>();
    case GraphKind::author_paper:
      return std::make_unique<AuthorPaperBuilder>();
    case GraphKind::country_citation:
      return std::make_unique<CountryCitationBuilder>(curated);
  }
  throw std::logic_error("unknown graph kind");
}

LabeledGraph build_graph(GraphKind kind, const YearBuckets& buckets,
                         BuildStats* stats, const geo::CountryLookup* curated) {
  auto builder = make_builder(kind, curated);
  for (const auto& [year, records] : buckets)
    builder->add_year(year, records);
  if (stats) *stats = builder->stats();
  return builder->graph();
}

}  // namespace citenet
