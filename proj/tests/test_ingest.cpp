#include <doctest/doctest.h>

#include <zlib.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "citenet/ingest.hpp"

using namespace citenet;

namespace {

Corpus corpus_from(const std::string& text) {
  std::istringstream in(text);
  auto src = make_stream_line_source(in);
  return read_corpus(*src);
}

std::string fixture_path(const char* name) {
  return std::string(CITENET_DATA_DIR) + "/" + name;
}

}  // namespace

TEST_CASE("parse_record_line accepts the full arnet shape") {
  std::string err;
  const auto rec = parse_record_line(
      R"({"id":"1533861849","title":"T","year":2010,)"
      R"("venue":{"raw":"international conference on artificial intelligence and statistics","id":"v7"},)"
      R"("authors":[{"id":"a1","name":"A","org":"MIT"},{"id":"a2","name":"B"}],)"
      R"("references":["9","12"]})",
      &err);
  REQUIRE(rec.has_value());
  CHECK(rec->id == "1533861849");
  CHECK(rec->year == 2010);
  CHECK(rec->authors.size() == 2);
  CHECK(rec->authors[0].org == "MIT");
  CHECK_FALSE(rec->authors[1].org.has_value());
  CHECK(rec->venue.raw ==
        "international conference on artificial intelligence and statistics");
  CHECK(rec->venue.source_id == "v7");
  CHECK(rec->references == std::vector<std::string>{"9", "12"});
}

TEST_CASE("parse_record_line accepts venue as a plain string") {
  std::string err;
  const auto rec = parse_record_line(
      R"({"id":"2","year":1970,"venue":"NIPS"})", &err);
  REQUIRE(rec.has_value());
  CHECK(rec->venue.raw == "NIPS");
  CHECK_FALSE(rec->venue.source_id.has_value());
  CHECK(rec->authors.empty());
  CHECK(rec->references.empty());
}

TEST_CASE("parse_record_line accepts integer ids") {
  std::string err;
  const auto rec = parse_record_line(
      R"({"id":77,"year":1999,"venue":"x","references":[5],)"
      R"("authors":[{"id":3}]})",
      &err);
  REQUIRE(rec.has_value());
  CHECK(rec->id == "77");
  CHECK(rec->references == std::vector<std::string>{"5"});
  CHECK(rec->authors[0].id == "3");
}

TEST_CASE("parse_record_line rejects structural faults") {
  std::string err;
  CHECK_FALSE(parse_record_line("not json", &err));
  CHECK(err == "invalid JSON");
  CHECK_FALSE(parse_record_line("[1,2]", &err));
  CHECK_FALSE(parse_record_line(R"({"year":1970,"venue":"x"})", &err));
  CHECK_FALSE(parse_record_line(R"({"id":"","year":1970,"venue":"x"})", &err));
  CHECK_FALSE(parse_record_line(R"({"id":"1","venue":"x"})", &err));
  CHECK_FALSE(parse_record_line(R"({"id":"1","year":0,"venue":"x"})", &err));
  CHECK_FALSE(parse_record_line(R"({"id":"1","year":-3,"venue":"x"})", &err));
  CHECK_FALSE(parse_record_line(R"({"id":"1","year":1970})", &err));
  CHECK_FALSE(parse_record_line(R"({"id":"1","year":1970,"venue":""})", &err));
  CHECK_FALSE(parse_record_line(
      R"({"id":"1","year":1970,"venue":"x","authors":[{"name":"N"}]})", &err));
}

TEST_CASE("indexed abstract positions are validated") {
  std::string err;
  const char* good =
      R"({"id":"1","year":1970,"venue":"x",)"
      R"("indexed_abstract":{"IndexLength":4,"InvertedIndex":{"a":[0,3],"b":[1]}}})";
  auto rec = parse_record_line(good, &err);
  REQUIRE(rec.has_value());
  REQUIRE(rec->abstract.has_value());
  CHECK(rec->abstract->length == 4);
  CHECK(rec->abstract->inverted.at("a") == std::vector<int>{0, 3});

  // lower-case length key variant
  CHECK(parse_record_line(
      R"({"id":"1","year":1970,"venue":"x",)"
      R"("indexed_abstract":{"indexLength":2,"InvertedIndex":{"a":[1]}}})",
      &err));

  // not strictly increasing
  CHECK_FALSE(parse_record_line(
      R"({"id":"1","year":1970,"venue":"x",)"
      R"("indexed_abstract":{"IndexLength":4,"InvertedIndex":{"a":[2,2]}}})",
      &err));
  // position beyond declared length
  CHECK_FALSE(parse_record_line(
      R"({"id":"1","year":1970,"venue":"x",)"
      R"("indexed_abstract":{"IndexLength":2,"InvertedIndex":{"a":[2]}}})",
      &err));
  // negative length
  CHECK_FALSE(parse_record_line(
      R"({"id":"1","year":1970,"venue":"x",)"
      R"("indexed_abstract":{"IndexLength":-1,"InvertedIndex":{}}})",
      &err));
}

TEST_CASE("record round-trips through its serialized form") {
  std::string err;
  const char* line =
      R"({"id":"1","title":"Gradient methods","year":1967,)"
      R"("venue":{"raw":"NIPS","id":"v-nips"},)"
      R"("authors":[{"id":"1","name":"Ada","org":"MIT"}],"references":["9"],)"
      R"("indexed_abstract":{"IndexLength":2,"InvertedIndex":{"hi":[0,1]}}})";
  const auto rec = parse_record_line(line, &err);
  REQUIRE(rec.has_value());
  const auto again = parse_record_line(record_to_json_line(*rec), &err);
  REQUIRE(again.has_value());
  CHECK(again->id == rec->id);
  CHECK(again->title == rec->title);
  CHECK(again->year == rec->year);
  CHECK(again->venue.raw == rec->venue.raw);
  CHECK(again->venue.source_id == rec->venue.source_id);
  CHECK(again->references == rec->references);
  REQUIRE(again->authors.size() == 1);
  CHECK(again->authors[0].org == rec->authors[0].org);
  REQUIRE(again->abstract.has_value());
  CHECK(again->abstract->length == 2);
  CHECK(again->abstract->inverted == rec->abstract->inverted);
}

TEST_CASE("read_corpus keeps order, counts faults, dedupes last-wins") {
  const auto corpus = corpus_from(
      R"({"id":"1","year":1967,"venue":"a","title":"first"})" "\n"
      "\n"  // blank line: skipped silently
      "garbage\n"
      R"({"id":"2","year":1970,"venue":"b"})" "\n"
      R"({"id":"1","year":1969,"venue":"c","title":"second"})" "\n");
  CHECK(corpus.lines_read == 4);  // blank line carries no record
  CHECK(corpus.malformed == 1);
  CHECK(corpus.duplicate_ids == 1);
  REQUIRE(corpus.records.size() == 2);
  // survivor keeps slot 0 but carries the later record's content
  CHECK(corpus.records[0].id == "1");
  CHECK(corpus.records[0].title == "second");
  CHECK(corpus.records[0].year == 1969);
  CHECK(corpus.records[1].id == "2");
  REQUIRE(corpus.diagnostics.size() == 2);
  CHECK(corpus.diagnostics[0].line == 3);
  CHECK(corpus.diagnostics[1].line == 5);
}

TEST_CASE("empty stream yields an empty corpus") {
  const auto corpus = corpus_from("");
  CHECK(corpus.records.empty());
  CHECK(corpus.diagnostics.empty());
  CHECK(corpus.lines_read == 0);
}

TEST_CASE("open_line_source reads plain and gzip files alike") {
  namespace fs = std::filesystem;
  const fs::path dir = fs::temp_directory_path() / "citenet_ingest_test";
  fs::create_directories(dir);
  const std::string payload =
      R"({"id":"1","year":1967,"venue":"a"})" "\n"
      R"({"id":"2","year":1970,"venue":"b"})" "\n";

  const fs::path plain = dir / "plain.jsonl";
  std::ofstream(plain, std::ios::binary) << payload;
  auto c1 = read_corpus_file(plain.string());
  CHECK(c1.records.size() == 2);

  const fs::path gz = dir / "compressed.jsonl.gz";
  gzFile f = gzopen(gz.string().c_str(), "wb");
  REQUIRE(f != nullptr);
  gzwrite(f, payload.data(), static_cast<unsigned>(payload.size()));
  gzclose(f);
  auto c2 = read_corpus_file(gz.string());
  CHECK(c2.records.size() == 2);
  CHECK(c2.records[0].id == "1");
  CHECK(c2.records[1].id == "2");

  CHECK_THROWS_AS(read_corpus_file((dir / "missing.jsonl").string()),
                  std::runtime_error);
  fs::remove_all(dir);
}

TEST_CASE("carriage returns are stripped from line ends") {
  const auto corpus = corpus_from(
      "{\"id\":\"1\",\"year\":1967,\"venue\":\"a\"}\r\n");
  REQUIRE(corpus.records.size() == 1);
  CHECK(corpus.records[0].venue.raw == "a");
}

TEST_CASE("venue parsing is case-insensitive and knows the nips rename") {
  CHECK(parse_venue_name("NeurIPS") == Venue::NeurIPS);
  CHECK(parse_venue_name("neurips") == Venue::NeurIPS);
  CHECK(parse_venue_name("NIPS") == Venue::NeurIPS);
  CHECK(parse_venue_name("  icml ") == Venue::ICML);
  CHECK_FALSE(parse_venue_name("Some Conference").has_value());
}

TEST_CASE("alias table canonicalizes, falls back to names, defaults to Other") {
  VenueAliasTable table;
  table.add_alias("Neural Information Processing Systems", Venue::NeurIPS);
  CHECK(table.canonical("neural information processing systems") ==
        Venue::NeurIPS);
  CHECK(table.canonical("  NIPS ") == Venue::NeurIPS);  // name fallback
  CHECK(table.canonical("KDD") == Venue::KDD);
  CHECK(table.canonical("Some Conference") == Venue::Other);
}

TEST_CASE("alias table loads from the shipped data file") {
  const auto table = VenueAliasTable::load(fixture_path("venue_aliases.json"));
  CHECK(table.size() > 0);
  CHECK(table.canonical("NIPS") == Venue::NeurIPS);
  CHECK(table.canonical("International Conference on Machine Learning") ==
        Venue::ICML);
  CHECK_THROWS_AS(VenueAliasTable::load("/nonexistent/aliases.json"),
                  std::runtime_error);
}

TEST_CASE("canonicalize + filter keep order and drop other venues") {
  auto corpus = corpus_from(
      R"({"id":"1","year":1967,"venue":"NIPS"})" "\n"
      R"({"id":"2","year":1970,"venue":"Some Conference"})" "\n"
      R"({"id":"3","year":2003,"venue":"icml"})" "\n");
  VenueAliasTable table;
  canonicalize_venues(corpus.records, table);
  CHECK(corpus.records[0].venue.canonical == Venue::NeurIPS);
  CHECK(corpus.records[1].venue.canonical == Venue::Other);
  CHECK(corpus.records[2].venue.canonical == Venue::ICML);

  const auto kept = filter_by_venues(corpus.records,
                                     {Venue::NeurIPS, Venue::ICML});
  REQUIRE(kept.size() == 2);
  CHECK(kept[0].id == "1");
  CHECK(kept[1].id == "3");

  CHECK(filter_by_venues(corpus.records, {Venue::IJCAI}).empty());
  const auto others = filter_by_venues(corpus.records, {Venue::Other});
  REQUIRE(others.size() == 1);
  CHECK(others[0].id == "2");
}

TEST_CASE("bucket_by_year partitions and preserves in-year order") {
  auto corpus = corpus_from(
      R"({"id":"a","year":1970,"venue":"x"})" "\n"
      R"({"id":"b","year":1967,"venue":"x"})" "\n"
      R"({"id":"c","year":1970,"venue":"x"})" "\n");
  const auto buckets = bucket_by_year(corpus.records);
  REQUIRE(buckets.size() == 2);
  CHECK(buckets.at(1967).size() == 1);
  REQUIRE(buckets.at(1970).size() == 2);
  CHECK(buckets.at(1970)[0].id == "a");
  CHECK(buckets.at(1970)[1].id == "c");
  size_t total = 0;
  for (const auto& [year, records] : buckets) total += records.size();
  CHECK(total == corpus.records.size());
  CHECK(bucket_by_year({}).empty());
}

TEST_CASE("corpus digest is stable and content-sensitive") {
  auto c1 = corpus_from(R"({"id":"1","year":1967,"venue":"a"})" "\n");
  auto c2 = corpus_from(R"({"id":"1","year":1967,"venue":"a"})" "\n");
  auto c3 = corpus_from(R"({"id":"1","year":1968,"venue":"a"})" "\n");
  CHECK(corpus_digest(c1.records) == corpus_digest(c2.records));
  CHECK(corpus_digest(c1.records) != corpus_digest(c3.records));
  CHECK(corpus_digest(c1.records).size() == 64);
  CHECK(corpus_digest({}) != "");
}

TEST_CASE("shipped sample corpus parses cleanly") {
  const auto corpus =
      read_corpus_file(fixture_path("fixtures/sample_corpus.jsonl"));
  CHECK(corpus.records.size() == 3);
  CHECK(corpus.malformed == 0);
  CHECK(corpus.duplicate_ids == 0);
  const auto buckets = bucket_by_year(corpus.records);
  CHECK(buckets.count(1967) == 1);
  CHECK(buckets.count(1970) == 1);
  CHECK(buckets.count(2003) == 1);
}
