#include "citenet/analytics.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <fstream>
#include <numeric>
#include <set>
#include <sstream>
#include <stdexcept>

#include "citenet/strings.hpp"

namespace citenet::analytics {

namespace {

std::vector<std::string> venue_categories() {
  std::vector<std::string> out;
  out.reserve(kVenueCount);
  for (int i = 0; i < kVenueCount; ++i)
    out.push_back(venue_name(static_cast<Venue>(i)));
  return out;
}

std::string join_ints(const std::vector<int>& xs) {
  std::ostringstream os;
  for (size_t i = 0; i < xs.size(); ++i) {
    if (i) os << ',';
    os << xs[i];
  }
  return os.str();
}

constexpr const char* kTieRule = "score desc, node asc";

}  // namespace

double ShareTable::value(int year, const std::string& category) const {
  const auto yit = std::find(years.begin(), years.end(), year);
  if (yit == years.end())
    throw std::out_of_range("year " + std::to_string(year) +
                            " not in table axis");
  const auto cit = std::find(categories.begin(), categories.end(), category);
  if (cit == categories.end())
    throw std::out_of_range("category " + category + " not in table");
  return values[yit - years.begin()][cit - categories.begin()];
}

ShareTable to_percentage(const ShareTable& counts) {
  ShareTable out = counts;
  out.mode = ShareTable::Mode::percentage;
  for (size_t yi = 0; yi < out.years.size(); ++yi) {
    double total = 0.0;
    for (const double v : out.values[yi]) total += v;
    if (out.empty_year[yi] || total == 0.0) {
      out.empty_year[yi] = true;
      std::fill(out.values[yi].begin(), out.values[yi].end(), 0.0);
      continue;
    }
    for (double& v : out.values[yi]) v = v * 100.0 / total;
  }
  return out;
}

// ---- rankings ----------------------------------------------------------

namespace {

// Indices of `scores` ordered score descending, label ascending.
std::vector<size_t> ranking_order(const std::vector<std::string>& nodes,
                                  const std::vector<double>& scores) {
  std::vector<size_t> order(nodes.size());
  std::iota(order.begin(), order.end(), size_t{0});
  std::sort(order.begin(), order.end(), [&](size_t a, size_t b) {
    if (scores[a] != scores[b]) return scores[a] > scores[b];
    return nodes[a] < nodes[b];
  });
  return order;
}

}  // namespace

RankSeries rank_over_time(const std::map<int, CentralityTable>& tables,
                          const std::vector<int>& sample_years, int top_k) {
  RankSeries out;
  if (!tables.empty()) out.kind = tables.begin()->second.kind;

  std::vector<int> kept, dropped;
  {
    std::vector<int> sorted = sample_years;
    std::sort(sorted.begin(), sorted.end());
    sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
    for (const int y : sorted)
      (tables.count(y) ? kept : dropped).push_back(y);
  }
  out.years = kept;

  std::map<int, std::map<std::string, RankSeries::Cell>> cells;
  std::set<std::string> tracked;
  for (const int y : kept) {
    const CentralityTable& t = tables.at(y);
    const auto order = ranking_order(t.nodes, t.scores);
    auto& year_cells = cells[y];
    for (size_t pos = 0; pos < order.size(); ++pos) {
      const size_t i = order[pos];
      year_cells[t.nodes[i]] = {t.scores[i], static_cast<int>(pos) + 1};
      if (static_cast<int>(pos) < top_k) tracked.insert(t.nodes[i]);
    }
  }

  for (const std::string& node : tracked) {
    RankSeries::Row row;
    row.node = node;
    for (const int y : kept) {
      const auto& year_cells = cells[y];
      const auto it = year_cells.find(node);
      row.by_year.push_back(it == year_cells.end()
                                ? std::optional<RankSeries::Cell>{}
                                : std::optional{it->second});
    }
    out.rows.push_back(std::move(row));
  }

  out.metadata["tie_rule"] = kTieRule;
  out.metadata["top_k"] = std::to_string(top_k);
  if (!dropped.empty()) out.metadata["dropped_years"] = join_ints(dropped);
  return out;
}

ShareTable top_k_venue_share(
    const std::map<int, CentralityTable>& paper_tables,
    const std::unordered_map<std::string, Venue>& venue_of, int k) {
  ShareTable out;
  out.mode = ShareTable::Mode::counts;
  out.categories = venue_categories();
  out.metadata["k"] = std::to_string(k);
  out.metadata["tie_rule"] = kTieRule;

  std::vector<std::string> short_years;
  for (const auto& [year, table] : paper_tables) {
    out.years.push_back(year);
    std::vector<double> row(out.categories.size(), 0.0);
    const auto order = ranking_order(table.nodes, table.scores);
    const size_t take = std::min<size_t>(order.size(), static_cast<size_t>(k));
    if (order.size() < static_cast<size_t>(k))
      short_years.push_back(std::to_string(year) + ":" +
                            std::to_string(order.size()));
    for (size_t pos = 0; pos < take; ++pos) {
      const std::string& paper = table.nodes[order[pos]];
      const auto it = venue_of.find(paper);
      const Venue v = it == venue_of.end() ? Venue::Other : it->second;
      row[static_cast<size_t>(v)] += 1.0;
    }
    out.empty_year.push_back(take == 0);
    out.values.push_back(std::move(row));
  }
  if (!short_years.empty()) {
    std::string joined;
    for (size_t i = 0; i < short_years.size(); ++i) {
      if (i) joined += ',';
      joined += short_years[i];
    }
    out.metadata["years_with_fewer_than_k"] = joined;
  }
  return out;
}

// ---- citation behavior -------------------------------------------------

ShareTable citation_share_by_source(
    const LabeledGraph& pc,
    const std::unordered_map<std::string, int>& year_of,
    const std::unordered_map<std::string, Venue>& venue_of,
    Venue source_venue) {
  ShareTable counts;
  counts.mode = ShareTable::Mode::counts;
  counts.categories = venue_categories();
  counts.metadata["source_venue"] = venue_name(source_venue);

  // Axis: every year with at least one source-venue paper.
  std::set<int> years;
  for (const auto& [paper, v] : venue_of) {
    if (v != source_venue) continue;
    const auto yit = year_of.find(paper);
    if (yit != year_of.end()) years.insert(yit->second);
  }
  counts.years.assign(years.begin(), years.end());
  counts.values.assign(counts.years.size(),
                       std::vector<double>(counts.categories.size(), 0.0));
  counts.empty_year.assign(counts.years.size(), false);

  std::map<int, size_t> year_index;
  for (size_t i = 0; i < counts.years.size(); ++i)
    year_index[counts.years[i]] = i;

  for (const auto& e : pc.edges()) {
    const std::string& src = pc.node(e.src).key;
    const auto vit = venue_of.find(src);
    if (vit == venue_of.end() || vit->second != source_venue) continue;
    const auto yit = year_of.find(src);
    if (yit == year_of.end()) continue;
    const auto idx = year_index.find(yit->second);
    if (idx == year_index.end()) continue;
    const std::string& dst = pc.node(e.dst).key;
    const auto tit = venue_of.find(dst);
    const Venue target = tit == venue_of.end() ? Venue::Other : tit->second;
    counts.values[idx->second][static_cast<size_t>(target)] += 1.0;
  }

  for (size_t yi = 0; yi < counts.years.size(); ++yi) {
    double total = 0.0;
    for (const double v : counts.values[yi]) total += v;
    if (total == 0.0) counts.empty_year[yi] = true;
  }
  return to_percentage(counts);
}

std::vector<SelfCiteYear> self_citation_stats(
    const SnapshotSeries& per_year_aci, const YearBuckets& buckets) {
  std::vector<SelfCiteYear> out;
  for (const auto& [year, g] : per_year_aci.snapshots) {
    SelfCiteYear row;
    row.year = year;
    if (const auto it = buckets.find(year); it != buckets.end()) {
      std::set<std::string> publishing;
      for (const auto& rec : it->second)
        for (const auto& a : rec.authors) publishing.insert(a.id);
      row.publishing_authors = publishing.size();
    }
    std::vector<size_t> loops(g.node_count(), 0);
    for (const auto& e : g.edges())
      if (e.src == e.dst) ++loops[e.src];
    size_t self_citing = 0;
    for (const size_t c : loops) {
      if (c == 0) continue;
      ++row.histogram[c];
      row.total_self_loops += c;
      ++self_citing;
    }
    if (self_citing > 0)
      row.mean = static_cast<double>(row.total_self_loops) /
                 static_cast<double>(self_citing);
    if (row.publishing_authors > 0)
      row.normalized_mean = static_cast<double>(row.total_self_loops) /
                            static_cast<double>(row.publishing_authors);
    out.push_back(std::move(row));
  }
  return out;
}

// ---- author population -------------------------------------------------

namespace {

std::vector<std::string> distinct_in_order(const std::vector<AuthorRef>& refs) {
  std::vector<std::string> out;
  for (const auto& a : refs)
    if (std::find(out.begin(), out.end(), a.id) == out.end())
      out.push_back(a.id);
  return out;
}

}  // namespace

NewAuthorStats new_author_stats(const YearBuckets& buckets) {
  NewAuthorStats stats;

  std::unordered_map<std::string, int> debut, last;
  for (const auto& [year, records] : buckets)
    for (const auto& rec : records)
      for (const auto& a : rec.authors) {
        debut.emplace(a.id, year);
        last[a.id] = year;
      }

  // Venue attribution of each debut plus the debut-year coauthor rule.
  std::map<int, std::vector<double>> venue_counts;
  std::map<std::string, std::set<std::string>> new_coauthors;
  for (const auto& [year, records] : buckets) {
    std::map<std::string, std::set<Venue>> debut_venues;
    for (const auto& rec : records) {
      const Venue v = rec.venue.canonical.value_or(Venue::Other);
      const auto ids = distinct_in_order(rec.authors);
      for (const auto& id : ids)
        if (debut.at(id) == year) debut_venues[id].insert(v);
      for (size_t i = 0; i < ids.size(); ++i)
        for (size_t j = 0; j < ids.size(); ++j) {
          if (i == j) continue;
          if (debut.at(ids[j]) == year) new_coauthors[ids[i]].insert(ids[j]);
        }
    }
    stats.debuts_per_year[year] = debut_venues.size();
    auto& row = venue_counts[year];
    row.assign(kVenueCount, 0.0);
    for (const auto& [id, venues] : debut_venues) {
      const double share = 1.0 / static_cast<double>(venues.size());
      for (const Venue v : venues) row[static_cast<size_t>(v)] += share;
    }
  }

  ShareTable counts;
  counts.mode = ShareTable::Mode::counts;
  counts.categories = venue_categories();
  counts.metadata["attribution"] =
      "author debuting in k venues contributes 1/k to each";
  for (auto& [year, row] : venue_counts) {
    counts.years.push_back(year);
    double total = 0.0;
    for (const double v : row) total += v;
    counts.empty_year.push_back(total == 0.0);
    counts.values.push_back(std::move(row));
  }
  stats.venue_share = to_percentage(counts);

  std::vector<std::string> ids;
  ids.reserve(debut.size());
  for (const auto& [id, y] : debut) {
    (void)y;
    ids.push_back(id);
  }
  std::sort(ids.begin(), ids.end());
  for (const auto& id : ids) {
    NewAuthorStats::AuthorRow row;
    row.author = id;
    row.debut_year = debut.at(id);
    row.last_year = last.at(id);
    const auto it = new_coauthors.find(id);
    row.new_coauthors = it == new_coauthors.end() ? 0 : it->second.size();
    const int career = row.last_year - row.debut_year + 1;
    row.per_career_year = static_cast<double>(row.new_coauthors) / career;
    stats.authors.push_back(std::move(row));
  }

  const size_t n = stats.authors.size();
  if (n > 0) {
    double sum_c = 0.0, sum_r = 0.0;
    for (const auto& row : stats.authors) {
      sum_c += static_cast<double>(row.new_coauthors);
      sum_r += row.per_career_year;
    }
    stats.mean_new_coauthors = sum_c / n;
    stats.mean_per_career_year = sum_r / n;
    double var_c = 0.0, var_r = 0.0;
    for (const auto& row : stats.authors) {
      const double dc = row.new_coauthors - stats.mean_new_coauthors;
      const double dr = row.per_career_year - stats.mean_per_career_year;
      var_c += dc * dc;
      var_r += dr * dr;
    }
    stats.stddev_new_coauthors = std::sqrt(var_c / n);
    stats.stddev_per_career_year = std::sqrt(var_r / n);
  }
  return stats;
}

std::vector<OverlapYear> author_overlap(const YearBuckets& buckets, Venue a,
                                        Venue b) {
  std::vector<OverlapYear> out;
  for (const auto& [year, records] : buckets) {
    std::set<std::string> in_a, in_b;
    for (const auto& rec : records) {
      const Venue v = rec.venue.canonical.value_or(Venue::Other);
      if (v != a && v != b) continue;
      for (const auto& author : rec.authors) {
        if (v == a) in_a.insert(author.id);
        if (v == b) in_b.insert(author.id);
      }
    }
    OverlapYear row;
    row.year = year;
    row.in_a = in_a.size();
    row.in_b = in_b.size();
    std::vector<std::string> both;
    std::set_intersection(in_a.begin(), in_a.end(), in_b.begin(), in_b.end(),
                          std::back_inserter(both));
    row.intersection = both.size();
    std::vector<std::string> either;
    std::set_union(in_a.begin(), in_a.end(), in_b.begin(), in_b.end(),
                   std::back_inserter(either));
    row.union_size = either.size();
    if (row.union_size > 0)
      row.jaccard_pct = 100.0 * static_cast<double>(row.intersection) /
                        static_cast<double>(row.union_size);
    out.push_back(std::move(row));
  }
  return out;
}

namespace {

double nearest_rank(const std::vector<size_t>& sorted, double pct) {
  const size_t n = sorted.size();
  size_t rank = static_cast<size_t>(
      std::ceil(pct / 100.0 * static_cast<double>(n)));
  if (rank < 1) rank = 1;
  if (rank > n) rank = n;
  return static_cast<double>(sorted[rank - 1]);
}

}  // namespace

std::vector<PaperSizeYear> authors_per_paper(const YearBuckets& buckets) {
  std::vector<PaperSizeYear> out;
  for (const auto& [year, records] : buckets) {
    if (records.empty()) continue;
    PaperSizeYear row;
    row.year = year;
    row.records = records.size();
    std::vector<size_t> lens;
    lens.reserve(records.size());
    size_t total = 0;
    for (const auto& rec : records) {
      lens.push_back(rec.authors.size());
      total += rec.authors.size();
      if (rec.authors.empty()) ++row.zero_author_records;
    }
    std::sort(lens.begin(), lens.end());
    row.mean = static_cast<double>(total) / static_cast<double>(lens.size());
    const size_t n = lens.size();
    row.median = n % 2 == 1 ? static_cast<double>(lens[n / 2])
                            : (static_cast<double>(lens[n / 2 - 1]) +
                               static_cast<double>(lens[n / 2])) /
                                  2.0;
    row.p95 = nearest_rank(lens, 95.0);
    row.p99 = nearest_rank(lens, 99.0);
    out.push_back(std::move(row));
  }
  return out;
}

// ---- geography ---------------------------------------------------------

ShareTable country_share(const std::vector<geo::RecordCountries>& records,
                         ShareTable::Mode mode, bool include_unresolved) {
  constexpr const char* kUnknown = "Unknown";

  // Attribution pass: record -> one hit per distinct resolved country.
  std::map<int, std::map<std::string, double>> hits;
  std::set<int> years;
  bool any_unknown = false;
  std::set<std::string> countries;
  for (const auto& rec : records) {
    years.insert(rec.year);
    const std::set<std::string> distinct(rec.countries.begin(),
                                         rec.countries.end());
    if (distinct.empty()) {
      if (include_unresolved) {
        hits[rec.year][kUnknown] += 1.0;
        any_unknown = true;
      }
      continue;
    }
    for (const auto& c : distinct) {
      hits[rec.year][c] += 1.0;
      countries.insert(c);
    }
  }

  ShareTable counts;
  counts.mode = ShareTable::Mode::counts;
  counts.categories.assign(countries.begin(), countries.end());
  if (include_unresolved && any_unknown) counts.categories.push_back(kUnknown);
  counts.metadata["attribution"] =
      "one attribution per distinct resolved country per record";
  for (const int year : years) {
    counts.years.push_back(year);
    std::vector<double> row(counts.categories.size(), 0.0);
    double total = 0.0;
    const auto it = hits.find(year);
    if (it != hits.end()) {
      for (size_t ci = 0; ci < counts.categories.size(); ++ci) {
        const auto hit = it->second.find(counts.categories[ci]);
        if (hit != it->second.end()) {
          row[ci] = hit->second;
          total += hit->second;
        }
      }
    }
    counts.empty_year.push_back(total == 0.0);
    counts.values.push_back(std::move(row));
  }
  return mode == ShareTable::Mode::counts ? counts : to_percentage(counts);
}

ShareTable sliding_window_average(const ShareTable& table, int width) {
  if (width < 1) throw std::invalid_argument("window width must be >= 1");
  ShareTable out = table;
  out.metadata["window_width"] = std::to_string(width);
  std::map<int, size_t> index;
  for (size_t i = 0; i < table.years.size(); ++i) index[table.years[i]] = i;
  for (size_t i = 0; i < table.years.size(); ++i) {
    const int year = table.years[i];
    std::vector<size_t> in_window;
    for (int y = year - width + 1; y <= year; ++y) {
      const auto it = index.find(y);
      if (it == index.end()) continue;
      if (table.empty_year[it->second]) continue;
      in_window.push_back(it->second);
    }
    if (in_window.empty()) {
      out.empty_year[i] = true;
      std::fill(out.values[i].begin(), out.values[i].end(), 0.0);
      continue;
    }
    out.empty_year[i] = false;
    for (size_t ci = 0; ci < table.categories.size(); ++ci) {
      double sum = 0.0;
      for (const size_t yi : in_window) sum += table.values[yi][ci];
      out.values[i][ci] = sum / static_cast<double>(in_window.size());
    }
  }
  return out;
}

// ---- text --------------------------------------------------------------

namespace {

std::vector<double> average_ranks(std::span<const double> xs) {
  const size_t n = xs.size();
  std::vector<size_t> order(n);
  std::iota(order.begin(), order.end(), size_t{0});
  std::sort(order.begin(), order.end(),
            [&](size_t a, size_t b) { return xs[a] < xs[b]; });
  std::vector<double> ranks(n, 0.0);
  size_t i = 0;
  while (i < n) {
    size_t j = i;
    while (j < n && xs[order[j]] == xs[order[i]]) ++j;
    // Positions i+1 .. j share the average rank.
    const double avg = (static_cast<double>(i + 1) + static_cast<double>(j)) / 2.0;
    for (size_t k = i; k < j; ++k) ranks[order[k]] = avg;
    i = j;
  }
  return ranks;
}

}  // namespace

SpearmanResult spearman(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size())
    throw std::invalid_argument("rank vectors differ in length");
  SpearmanResult result;
  if (x.size() < 2) {
    result.flag = SpearmanResult::Flag::too_short;
    return result;
  }
  const auto rx = average_ranks(x);
  const auto ry = average_ranks(y);
  const double n = static_cast<double>(x.size());
  double mean_x = 0.0, mean_y = 0.0;
  for (size_t i = 0; i < rx.size(); ++i) {
    mean_x += rx[i];
    mean_y += ry[i];
  }
  mean_x /= n;
  mean_y /= n;
  double cov = 0.0, var_x = 0.0, var_y = 0.0;
  for (size_t i = 0; i < rx.size(); ++i) {
    const double dx = rx[i] - mean_x;
    const double dy = ry[i] - mean_y;
    cov += dx * dy;
    var_x += dx * dx;
    var_y += dy * dy;
  }
  if (var_x == 0.0 || var_y == 0.0) {
    result.flag = SpearmanResult::Flag::zero_variance;
    return result;
  }
  result.rho = cov / std::sqrt(var_x * var_y);
  return result;
}

std::vector<std::string> tokenize_title(
    std::string_view title, const std::unordered_set<std::string>& stopwords) {
  std::vector<std::string> out;
  std::string current;
  auto flush = [&] {
    if (current.size() >= 2 && !stopwords.count(current))
      out.push_back(current);
    current.clear();
  };
  for (const char raw : title) {
    const unsigned char c = static_cast<unsigned char>(raw);
    if (std::isalnum(c))
      current.push_back(static_cast<char>(std::tolower(c)));
    else
      flush();
  }
  flush();
  return out;
}

std::unordered_map<std::string, double> tfidf_scores(
    const std::vector<std::string>& titles,
    const std::unordered_set<std::string>& stopwords) {
  const double n_docs = static_cast<double>(titles.size());
  std::vector<std::map<std::string, double>> tf(titles.size());
  std::unordered_map<std::string, size_t> df;
  for (size_t d = 0; d < titles.size(); ++d) {
    for (const auto& w : tokenize_title(titles[d], stopwords)) tf[d][w] += 1.0;
    for (const auto& [w, c] : tf[d]) {
      (void)c;
      ++df[w];
    }
  }
  std::unordered_map<std::string, double> scores;
  for (const auto& doc : tf)
    for (const auto& [w, count] : doc)
      scores[w] += count * std::log(n_docs / static_cast<double>(df.at(w)));
  return scores;
}

std::vector<CorrelationYear> tfidf_rank_correlation(
    const std::map<int, std::vector<std::string>>& left_titles,
    const std::map<int, std::vector<std::string>>& right_titles,
    const std::unordered_set<std::string>& stopwords) {
  std::set<int> years;
  for (const auto& [y, t] : left_titles) {
    (void)t;
    years.insert(y);
  }
  for (const auto& [y, t] : right_titles) {
    (void)t;
    years.insert(y);
  }

  std::vector<CorrelationYear> out;
  for (const int year : years) {
    CorrelationYear row;
    row.year = year;
    const auto lit = left_titles.find(year);
    const auto rit = right_titles.find(year);
    if (lit == left_titles.end() || lit->second.empty() ||
        rit == right_titles.end() || rit->second.empty()) {
      row.flag = CorrelationYear::Flag::empty_side;
      out.push_back(std::move(row));
      continue;
    }
    const auto left = tfidf_scores(lit->second, stopwords);
    const auto right = tfidf_scores(rit->second, stopwords);
    std::vector<std::string> shared;
    for (const auto& [w, s] : left) {
      (void)s;
      if (right.count(w)) shared.push_back(w);
    }
    std::sort(shared.begin(), shared.end());
    row.overlap = shared.size();
    if (shared.size() < 3) {
      row.flag = CorrelationYear::Flag::insufficient_overlap;
      out.push_back(std::move(row));
      continue;
    }
    std::vector<double> xs, ys;
    xs.reserve(shared.size());
    ys.reserve(shared.size());
    for (const auto& w : shared) {
      xs.push_back(left.at(w));
      ys.push_back(right.at(w));
    }
    const SpearmanResult r = spearman(xs, ys);
    if (r.flag == SpearmanResult::Flag::zero_variance)
      row.zero_variance = true;
    else
      row.rho = r.rho;
    out.push_back(std::move(row));
  }
  return out;
}

std::unordered_set<std::string> load_stopwords(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open stop word list: " + path);
  std::unordered_set<std::string> words;
  std::string line;
  while (std::getline(in, line)) {
    std::string word{trim_view(line)};
    if (word.empty() || word[0] == '#') continue;
    for (char& c : word)
      c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    words.insert(word);
  }
  return words;
}

// ---- corpus-derived maps -----------------------------------------------

std::unordered_map<std::string, Venue> venue_of_map(
    const std::vector<PaperRecord>& records) {
  std::unordered_map<std::string, Venue> out;
  out.reserve(records.size());
  for (const auto& rec : records)
    out[rec.id] = rec.venue.canonical.value_or(Venue::Other);
  return out;
}

std::unordered_map<std::string, int> year_of_map(
    const std::vector<PaperRecord>& records) {
  std::unordered_map<std::string, int> out;
  out.reserve(records.size());
  for (const auto& rec : records) out[rec.id] = rec.year;
  return out;
}

}  // namespace citenet::analytics
