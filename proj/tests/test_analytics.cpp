#include <doctest/doctest.h>

#include <cmath>
#include <random>
#include <string>
#include <unordered_set>
#include <vector>

#include "citenet/analytics.hpp"
#include "citenet/graph.hpp"
#include "citenet/ingest.hpp"
#include "citenet/snapshots.hpp"

using namespace citenet;
namespace an = citenet::analytics;
using an::ShareTable;

namespace {

std::string fixture_path(const std::string& name) {
  return std::string(CITENET_DATA_DIR) + "/" + name;
}

PaperRecord make_record(const std::string& id, int year, Venue venue,
                        const std::vector<std::string>& author_ids,
                        const std::vector<std::string>& refs = {}) {
  PaperRecord rec;
  rec.id = id;
  rec.year = year;
  rec.venue.raw = venue_name(venue);
  rec.venue.canonical = venue;
  for (const auto& aid : author_ids) {
    AuthorRef a;
    a.id = aid;
    rec.authors.push_back(a);
  }
  rec.references = refs;
  return rec;
}

ShareTable make_counts(const std::vector<std::string>& categories,
                       const std::vector<int>& years,
                       const std::vector<std::vector<double>>& values) {
  ShareTable t;
  t.mode = ShareTable::Mode::counts;
  t.categories = categories;
  t.years = years;
  t.values = values;
  t.empty_year.assign(years.size(), false);
  return t;
}

}  // namespace

TEST_CASE("spearman: worked example is exact") {
  const std::vector<double> x{1, 2, 3, 4};
  const std::vector<double> y{1, 3, 2, 4};
  const auto r = an::spearman(x, y);
  REQUIRE(r.rho.has_value());
  CHECK(*r.rho == 0.8);
  CHECK(r.flag == an::SpearmanResult::Flag::ok);
}

TEST_CASE("spearman: ties, extremes, and degenerate inputs") {
  const std::vector<double> up{1, 2, 3};
  const std::vector<double> down{3, 2, 1};
  CHECK(*an::spearman(up, up).rho == doctest::Approx(1.0));
  CHECK(*an::spearman(up, down).rho == doctest::Approx(-1.0));

  // average ranks: x ranks (1.5, 1.5, 3)
  const std::vector<double> tied{7, 7, 9};
  const auto r = an::spearman(tied, up);
  REQUIRE(r.rho.has_value());
  CHECK(std::abs(*r.rho - std::sqrt(3.0) / 2.0) < 1e-12);

  const std::vector<double> one{1};
  CHECK(an::spearman(one, one).flag == an::SpearmanResult::Flag::too_short);
  CHECK_FALSE(an::spearman(one, one).rho.has_value());
  const std::vector<double> none;
  CHECK(an::spearman(none, none).flag == an::SpearmanResult::Flag::too_short);

  const std::vector<double> flat{5, 5, 5};
  CHECK(an::spearman(flat, up).flag ==
        an::SpearmanResult::Flag::zero_variance);
  CHECK(an::spearman(up, flat).flag ==
        an::SpearmanResult::Flag::zero_variance);

  const std::vector<double> shorter{1, 2};
  CHECK_THROWS_AS(an::spearman(up, shorter), std::invalid_argument);
}

TEST_CASE("sliding window: worked example and edge rules") {
  const auto t = make_counts({"x"}, {2000, 2001}, {{0.0}, {100.0}});
  const auto w2 = an::sliding_window_average(t, 2);
  CHECK(w2.values[0][0] == doctest::Approx(0.0));
  CHECK(w2.values[1][0] == doctest::Approx(50.0));
  CHECK(w2.metadata.at("window_width") == "2");

  const auto w1 = an::sliding_window_average(t, 1);
  CHECK(w1.values[1][0] == doctest::Approx(100.0));

  CHECK_THROWS_AS(an::sliding_window_average(t, 0), std::invalid_argument);

  // a year missing from the axis does not contribute to the window
  const auto gap = make_counts({"x"}, {2000, 2002}, {{10.0}, {30.0}});
  const auto g2 = an::sliding_window_average(gap, 2);
  CHECK(g2.values[1][0] == doctest::Approx(30.0));  // 2001 absent, not zero

  // empty years neither contribute nor receive values
  auto flagged = make_counts({"x"}, {2000, 2001, 2002},
                             {{10.0}, {999.0}, {30.0}});
  flagged.empty_year[1] = true;
  const auto f2 = an::sliding_window_average(flagged, 2);
  CHECK(f2.values[1][0] == doctest::Approx(10.0));  // only 2000 participates
  CHECK_FALSE(f2.empty_year[1]);
  CHECK(f2.values[2][0] == doctest::Approx(30.0));  // 2001 is skipped

  auto all_empty = make_counts({"x"}, {2000, 2001}, {{5.0}, {7.0}});
  all_empty.empty_year[0] = true;
  const auto e1 = an::sliding_window_average(all_empty, 1);
  CHECK(e1.empty_year[0]);
  CHECK(e1.values[0][0] == 0.0);
}

TEST_CASE("percentage conversion: rows sum to 100 unless flagged empty") {
  std::mt19937 rng(42);
  std::uniform_real_distribution<double> val(0.0, 50.0);
  for (int trial = 0; trial < 30; ++trial) {
    const size_t n_cat = 1 + trial % 5;
    const size_t n_years = 1 + trial % 7;
    ShareTable t;
    t.mode = ShareTable::Mode::counts;
    for (size_t c = 0; c < n_cat; ++c)
      t.categories.push_back("c" + std::to_string(c));
    for (size_t y = 0; y < n_years; ++y) {
      t.years.push_back(2000 + static_cast<int>(y));
      std::vector<double> row(n_cat);
      for (auto& v : row) v = val(rng);
      const bool empty = trial % 4 == 1 && y == 0;
      if (empty) std::fill(row.begin(), row.end(), 0.0);
      t.empty_year.push_back(empty);
      t.values.push_back(row);
    }
    const auto pct = an::to_percentage(t);
    CHECK(pct.mode == ShareTable::Mode::percentage);
    for (size_t y = 0; y < n_years; ++y) {
      double sum = 0.0;
      for (const double v : pct.values[y]) sum += v;
      if (pct.empty_year[y]) {
        CHECK(sum == 0.0);
      } else {
        CHECK(std::abs(sum - 100.0) <= 1e-6);
      }
    }
  }
}

TEST_CASE("share table accessor finds cells and rejects unknown axes") {
  const auto t = make_counts({"a", "b"}, {1999, 2000}, {{1, 2}, {3, 4}});
  CHECK(t.value(2000, "a") == 3.0);
  CHECK(t.value(1999, "b") == 2.0);
  CHECK_THROWS_AS(t.value(1998, "a"), std::out_of_range);
  CHECK_THROWS_AS(t.value(2000, "zzz"), std::out_of_range);
}

TEST_CASE("rank over time tracks top entrants with dense tie-broken ranks") {
  std::map<int, CentralityTable> tables;
  CentralityTable t2000;
  t2000.nodes = {"a", "b", "c"};
  t2000.scores = {3.0, 1.0, 2.0};
  tables[2000] = t2000;
  CentralityTable t2005;
  t2005.nodes = {"b", "c"};
  t2005.scores = {5.0, 5.0};
  tables[2005] = t2005;

  const auto series = an::rank_over_time(tables, {2000, 2005, 2010}, 2);
  CHECK(series.years == std::vector<int>{2000, 2005});
  CHECK(series.metadata.at("dropped_years").find("2010") !=
        std::string::npos);

  // a and c enter the 2000 top two; b enters in 2005 (tie broken by label)
  REQUIRE(series.rows.size() == 3);
  CHECK(series.rows[0].node == "a");
  CHECK(series.rows[1].node == "b");
  CHECK(series.rows[2].node == "c");

  const auto& a = series.rows[0].by_year;
  REQUIRE(a[0].has_value());
  CHECK(a[0]->score == 3.0);
  CHECK(a[0]->rank == 1);
  CHECK_FALSE(a[1].has_value());

  const auto& b = series.rows[1].by_year;
  CHECK(b[0]->rank == 3);
  CHECK(b[1]->rank == 1);  // score tie with c, label "b" sorts first

  const auto& c = series.rows[2].by_year;
  CHECK(c[0]->rank == 2);
  CHECK(c[1]->rank == 2);
  CHECK(c[1]->score == 5.0);
}

TEST_CASE("top-k venue composition counts the k best papers per year") {
  std::map<int, CentralityTable> tables;
  CentralityTable t;
  t.nodes = {"p1", "p2", "p3", "p4"};
  t.scores = {4.0, 3.0, 2.0, 1.0};
  tables[2000] = t;
  std::unordered_map<std::string, Venue> venue_of{
      {"p1", Venue::NeurIPS},
      {"p2", Venue::ICML},
      {"p3", Venue::NeurIPS},
      {"p4", Venue::KDD}};

  const auto top2 = an::top_k_venue_share(tables, venue_of, 2);
  CHECK(top2.value(2000, "NeurIPS") == 1.0);
  CHECK(top2.value(2000, "ICML") == 1.0);
  CHECK(top2.value(2000, "KDD") == 0.0);
  CHECK(top2.metadata.count("years_with_fewer_than_k") == 0);

  const auto top10 = an::top_k_venue_share(tables, venue_of, 10);
  CHECK(top10.value(2000, "NeurIPS") == 2.0);
  CHECK(top10.value(2000, "KDD") == 1.0);
  CHECK(top10.metadata.at("years_with_fewer_than_k").find("2000") !=
        std::string::npos);

  // unknown papers land in Other
  std::unordered_map<std::string, Venue> partial{{"p1", Venue::NeurIPS}};
  const auto fallback = an::top_k_venue_share(tables, partial, 4);
  CHECK(fallback.value(2000, "Other") == 3.0);
}

TEST_CASE("citation targets by source venue, percentages per source year") {
  LabeledGraph pc(true, false);
  const auto s1 = pc.ensure_node(NodeKind::paper, "s1");
  const auto s2 = pc.ensure_node(NodeKind::paper, "s2");
  const auto other = pc.ensure_node(NodeKind::paper, "o1");
  const auto t1 = pc.ensure_node(NodeKind::paper, "t1");
  const auto t2 = pc.ensure_node(NodeKind::paper, "t2");
  pc.add_edge(s1, t1, EdgeKind::citation);
  pc.add_edge(s1, t2, EdgeKind::citation);
  pc.add_edge(other, t1, EdgeKind::citation);

  std::unordered_map<std::string, int> year_of{
      {"s1", 2000}, {"s2", 2001}, {"o1", 2000}, {"t1", 1995}, {"t2", 1996}};
  std::unordered_map<std::string, Venue> venue_of{
      {"s1", Venue::NeurIPS}, {"s2", Venue::NeurIPS}, {"o1", Venue::ICML},
      {"t1", Venue::ICML},    {"t2", Venue::KDD}};

  const auto pct = an::citation_share_by_source(pc, year_of, venue_of,
                                                Venue::NeurIPS);
  CHECK(pct.mode == ShareTable::Mode::percentage);
  CHECK(pct.years == std::vector<int>{2000, 2001});
  CHECK(pct.value(2000, "ICML") == doctest::Approx(50.0));
  CHECK(pct.value(2000, "KDD") == doctest::Approx(50.0));
  CHECK(pct.value(2000, "NeurIPS") == doctest::Approx(0.0));
  // source papers exist in 2001 but cast no citations
  CHECK(pct.empty_year[1]);
  CHECK(pct.metadata.at("source_venue") == std::string("NeurIPS"));

  // a cited paper with no venue mapping counts as Other
  std::unordered_map<std::string, Venue> missing_targets{
      {"s1", Venue::NeurIPS}, {"o1", Venue::ICML}};
  const auto fallback = an::citation_share_by_source(pc, year_of,
                                                     missing_targets,
                                                     Venue::NeurIPS);
  CHECK(fallback.value(2000, "Other") == doctest::Approx(100.0));
}

TEST_CASE("self-citations: per-year loops over publishing authors") {
  std::vector<PaperRecord> records{
      make_record("r1", 1990, Venue::NeurIPS, {"a"}),
      make_record("r2", 1991, Venue::NeurIPS, {"a"}, {"r1"}),
      make_record("r3", 1991, Venue::NeurIPS, {"a"}, {"r1"}),
      make_record("r4", 1991, Venue::NeurIPS, {"b"})};
  const auto buckets = bucket_by_year(records);
  const auto series = build_snapshots(buckets, GraphKind::author_citation,
                                      SnapshotMode::per_year, 1990, 1991);
  const auto rows = an::self_citation_stats(series, buckets);
  REQUIRE(rows.size() == 2);

  CHECK(rows[0].year == 1990);
  CHECK(rows[0].total_self_loops == 0);
  CHECK(rows[0].publishing_authors == 1);
  CHECK_FALSE(rows[0].mean.has_value());
  REQUIRE(rows[0].normalized_mean.has_value());
  CHECK(*rows[0].normalized_mean == 0.0);

  CHECK(rows[1].year == 1991);
  CHECK(rows[1].total_self_loops == 2);  // both 1991 papers cite r1
  CHECK(rows[1].publishing_authors == 2);
  REQUIRE(rows[1].histogram.size() == 1);
  CHECK(rows[1].histogram.at(2) == 1);
  CHECK(*rows[1].mean == doctest::Approx(2.0));
  CHECK(*rows[1].normalized_mean == doctest::Approx(1.0));
}

TEST_CASE("self-citations: sample corpus reproduces the late self-cite") {
  const auto records =
      read_corpus_file(fixture_path("fixtures/sample_corpus.jsonl")).records;
  const auto buckets = bucket_by_year(records);
  const auto series = build_snapshots(buckets, GraphKind::author_citation,
                                      SnapshotMode::per_year, 1967, 2003);
  const auto rows = an::self_citation_stats(series, buckets);
  REQUIRE(rows.size() == 2003 - 1967 + 1);
  const auto& last = rows.back();
  CHECK(last.year == 2003);
  CHECK(last.total_self_loops == 1);
  CHECK(last.publishing_authors == 1);
  CHECK(*last.normalized_mean == doctest::Approx(1.0));
  // intermediate years without records have no denominator
  CHECK(rows[1].year == 1968);
  CHECK(rows[1].publishing_authors == 0);
  CHECK_FALSE(rows[1].normalized_mean.has_value());
}

TEST_CASE("new-author population: debuts, venue shares, coauthor tallies") {
  std::vector<PaperRecord> records{
      make_record("p1", 1990, Venue::NeurIPS, {"a", "b"}),
      make_record("p2", 1990, Venue::ICML, {"a"}),
      make_record("p3", 1992, Venue::ICML, {"b", "c"})};
  const auto stats = an::new_author_stats(bucket_by_year(records));

  CHECK(stats.debuts_per_year.at(1990) == 2);
  CHECK(stats.debuts_per_year.at(1992) == 1);

  // a debuts in two venues (half credit each), b in one
  CHECK(stats.venue_share.mode == ShareTable::Mode::percentage);
  CHECK(stats.venue_share.value(1990, "NeurIPS") == doctest::Approx(75.0));
  CHECK(stats.venue_share.value(1990, "ICML") == doctest::Approx(25.0));
  CHECK(stats.venue_share.value(1992, "ICML") == doctest::Approx(100.0));

  REQUIRE(stats.authors.size() == 3);
  const auto& a = stats.authors[0];
  CHECK(a.author == "a");
  CHECK(a.debut_year == 1990);
  CHECK(a.last_year == 1990);
  CHECK(a.new_coauthors == 1);  // b, met in b's debut year
  CHECK(a.per_career_year == doctest::Approx(1.0));

  const auto& b = stats.authors[1];
  CHECK(b.new_coauthors == 2);  // a in 1990, c in 1992
  CHECK(b.last_year == 1992);
  CHECK(b.per_career_year == doctest::Approx(2.0 / 3.0));

  // c met b only after b's debut year, so b does not count for c
  const auto& c = stats.authors[2];
  CHECK(c.new_coauthors == 0);
  CHECK(c.per_career_year == doctest::Approx(0.0));

  CHECK(stats.mean_new_coauthors == doctest::Approx(1.0));
  CHECK(stats.stddev_new_coauthors == doctest::Approx(std::sqrt(2.0 / 3.0)));
  CHECK(stats.mean_per_career_year == doctest::Approx(5.0 / 9.0));
  CHECK(stats.stddev_per_career_year ==
        doctest::Approx(std::sqrt(42.0 / 243.0)));
}

TEST_CASE("new-author stats: repeated author ids in one record count once") {
  std::vector<PaperRecord> records{
      make_record("p1", 1990, Venue::NeurIPS, {"a", "a", "b"})};
  const auto stats = an::new_author_stats(bucket_by_year(records));
  CHECK(stats.debuts_per_year.at(1990) == 2);
  CHECK(stats.authors[0].new_coauthors == 1);
  CHECK(stats.authors[1].new_coauthors == 1);
}

TEST_CASE("author overlap: jaccard percentages per year") {
  std::vector<PaperRecord> records{
      make_record("p1", 1990, Venue::NeurIPS, {"a", "b"}),
      make_record("p2", 1990, Venue::ICML, {"b", "c"}),
      make_record("p3", 1991, Venue::NeurIPS, {"a"}),
      make_record("p4", 1991, Venue::ICML, {"d"}),
      make_record("p5", 1992, Venue::KDD, {"x"})};
  const auto rows = an::author_overlap(bucket_by_year(records),
                                       Venue::NeurIPS, Venue::ICML);
  REQUIRE(rows.size() == 3);

  CHECK(rows[0].year == 1990);
  CHECK(rows[0].in_a == 2);
  CHECK(rows[0].in_b == 2);
  CHECK(rows[0].intersection == 1);
  CHECK(rows[0].union_size == 3);
  CHECK(*rows[0].jaccard_pct == doctest::Approx(100.0 / 3.0));

  CHECK(rows[1].intersection == 0);
  CHECK(*rows[1].jaccard_pct == doctest::Approx(0.0));

  // neither venue appears in 1992
  CHECK(rows[2].in_a == 0);
  CHECK(rows[2].in_b == 0);
  CHECK_FALSE(rows[2].jaccard_pct.has_value());
}

TEST_CASE("authors-per-paper distribution with nearest-rank percentiles") {
  std::vector<PaperRecord> records{
      make_record("p1", 1990, Venue::Other, {"a"}),
      make_record("p2", 1990, Venue::Other, {"a", "b"}),
      make_record("p3", 1990, Venue::Other, {"a", "b", "c"}),
      make_record("p4", 1990, Venue::Other, {})};
  const auto rows = an::authors_per_paper(bucket_by_year(records));
  REQUIRE(rows.size() == 1);
  const auto& r = rows[0];
  CHECK(r.records == 4);
  CHECK(r.zero_author_records == 1);
  CHECK(r.mean == doctest::Approx(1.5));
  CHECK(r.median == doctest::Approx(1.5));  // even count: midpoint average
  CHECK(r.p95 == doctest::Approx(3.0));     // ceil(.95 * 4) = 4th of [0,1,2,3]
  CHECK(r.p99 == doctest::Approx(3.0));

  std::vector<PaperRecord> odd{
      make_record("q1", 1991, Venue::Other, {"a"}),
      make_record("q2", 1991, Venue::Other, {"a", "b", "c", "d", "e"}),
      make_record("q3", 1991, Venue::Other, {"a", "b"})};
  const auto row = an::authors_per_paper(bucket_by_year(odd))[0];
  CHECK(row.median == doctest::Approx(2.0));
  CHECK(row.p95 == doctest::Approx(5.0));
}

TEST_CASE("country share: distinct countries per record, Unknown optional") {
  std::vector<geo::RecordCountries> recs(3);
  recs[0] = {"p1", 1990, {"USA", "USA", "Brazil"}, 3, 0};
  recs[1] = {"p2", 1990, {}, 2, 2};  // wholly unresolved
  recs[2] = {"p3", 1990, {"Brazil"}, 2, 1};  // partially unresolved

  const auto with = an::country_share(recs, ShareTable::Mode::counts, true);
  CHECK(with.value(1990, "USA") == 1.0);
  CHECK(with.value(1990, "Brazil") == 2.0);
  CHECK(with.value(1990, "Unknown") == 1.0);  // only the wholly unresolved one

  const auto without =
      an::country_share(recs, ShareTable::Mode::counts, false);
  CHECK(without.value(1990, "USA") == 1.0);
  CHECK(without.value(1990, "Brazil") == 2.0);
  CHECK_THROWS_AS(without.value(1990, "Unknown"), std::out_of_range);

  const auto pct = an::country_share(recs, ShareTable::Mode::percentage, true);
  CHECK(pct.value(1990, "Brazil") == doctest::Approx(50.0));
  double sum = 0.0;
  for (const double v : pct.values[0]) sum += v;
  CHECK(std::abs(sum - 100.0) <= 1e-6);
}

TEST_CASE("title tokenization lower-cases, splits, and filters") {
  const std::unordered_set<std::string> stop{"the", "of"};
  const auto tokens =
      an::tokenize_title("The Gradient-based FOO of a1 networks!", stop);
  CHECK(tokens == std::vector<std::string>{"gradient", "based", "foo", "a1",
                                           "networks"});
  CHECK(an::tokenize_title("", stop).empty());
  CHECK(an::tokenize_title("a b c", stop).empty());  // all length-1 tokens
  CHECK(an::tokenize_title("THE the The", stop).empty());
}

TEST_CASE("tf-idf scores: shared words vanish, duplication scales weights") {
  const std::unordered_set<std::string> stop;
  const std::vector<std::string> titles{"alpha beta", "alpha gamma"};
  const auto scores = an::tfidf_scores(titles, stop);
  CHECK(scores.at("alpha") == doctest::Approx(0.0));
  CHECK(scores.at("beta") == doctest::Approx(std::log(2.0)));
  CHECK(scores.at("gamma") == doctest::Approx(std::log(2.0)));

  const std::vector<std::string> doubled{"alpha beta", "alpha gamma",
                                         "alpha beta", "alpha gamma"};
  const auto scaled = an::tfidf_scores(doubled, stop);
  CHECK(scaled.at("beta") == doctest::Approx(2.0 * std::log(2.0)));
  CHECK(scaled.at("alpha") == doctest::Approx(0.0));

  // single-document collections have zero idf everywhere
  const auto flat = an::tfidf_scores({"alpha beta gamma"}, stop);
  for (const auto& [word, weight] : flat) CHECK(weight == doctest::Approx(0.0));
}

TEST_CASE("tf-idf rank correlation per year with flagged degenerate cases") {
  const std::unordered_set<std::string> stop;
  std::map<int, std::vector<std::string>> left{
      {2000, {"alpha beta", "alpha gamma delta"}},
      {2001, {"alpha beta"}},
      {2002, {"solo words here", "more solo words"}}};
  std::map<int, std::vector<std::string>> right{
      {2000, {"alpha beta", "alpha gamma delta"}},
      {2002, {"unrelated vocabulary entirely", "completely disjoint terms"}},
      {2003, {}}};

  const auto rows = an::tfidf_rank_correlation(left, right, stop);
  REQUIRE(rows.size() == 4);

  CHECK(rows[0].year == 2000);
  CHECK(rows[0].flag == an::CorrelationYear::Flag::ok);
  CHECK(rows[0].overlap == 4);
  REQUIRE(rows[0].rho.has_value());
  CHECK(std::abs(*rows[0].rho - 1.0) < 1e-12);
  CHECK_FALSE(rows[0].zero_variance);

  CHECK(rows[1].year == 2001);
  CHECK(rows[1].flag == an::CorrelationYear::Flag::empty_side);

  CHECK(rows[2].year == 2002);
  CHECK(rows[2].flag == an::CorrelationYear::Flag::insufficient_overlap);
  CHECK(rows[2].overlap < 3);

  CHECK(rows[3].year == 2003);
  CHECK(rows[3].flag == an::CorrelationYear::Flag::empty_side);
}

TEST_CASE("tf-idf rank correlation flags zero variance separately") {
  const std::unordered_set<std::string> stop;
  // single-document sides: every weight is zero, so ranks cannot vary
  std::map<int, std::vector<std::string>> left{
      {2000, {"alpha beta gamma delta"}}};
  const auto rows = an::tfidf_rank_correlation(left, left, stop);
  REQUIRE(rows.size() == 1);
  CHECK(rows[0].flag == an::CorrelationYear::Flag::ok);
  CHECK(rows[0].zero_variance);
  CHECK_FALSE(rows[0].rho.has_value());
  CHECK(rows[0].overlap == 4);
}

TEST_CASE("stop word list: shipped file loads, comments skipped") {
  const auto words = an::load_stopwords(fixture_path("stopwords.txt"));
  CHECK(words.count("the") == 1);
  CHECK(words.count("of") == 1);
  CHECK(words.count("#") == 0);
  CHECK(words.size() > 50);
  CHECK_THROWS_AS(an::load_stopwords("/nonexistent/stopwords.txt"),
                  std::runtime_error);
}

TEST_CASE("corpus-derived venue and year maps") {
  std::vector<PaperRecord> records{
      make_record("p1", 1990, Venue::NeurIPS, {"a"}),
      make_record("p2", 1995, Venue::ICML, {"b"})};
  records.push_back(make_record("p3", 1999, Venue::Other, {"c"}));
  records[2].venue.canonical.reset();  // never canonicalized

  const auto venues = an::venue_of_map(records);
  CHECK(venues.at("p1") == Venue::NeurIPS);
  CHECK(venues.at("p3") == Venue::Other);
  const auto years = an::year_of_map(records);
  CHECK(years.at("p2") == 1995);
  CHECK(years.size() == 3);
}
