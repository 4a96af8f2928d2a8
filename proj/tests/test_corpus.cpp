#include <doctest.h>

#include <cctype>
#include <zlib.h>

#include "dsm/corpus.hpp"
#include "test_util.hpp"

using namespace dsm;

TEST_SUITE_BEGIN("corpus");

TEST_CASE("parse_token maps tags to coarse classes") {
  TagMap tags = TagMap::defaults();

  auto t = parse_token("Dog_NN", tags);
  REQUIRE(t.has_value());
  CHECK(t->lemma == "dog");
  CHECK(t->pos == Pos::N);

  t = parse_token("run_VVZ", tags);
  REQUIRE(t.has_value());
  CHECK(t->lemma == "run");
  CHECK(t->pos == Pos::V);

  t = parse_token("the_DT", tags);
  REQUIRE(t.has_value());
  CHECK(t->lemma == "the");
  CHECK(t->pos == Pos::O);  // DT is not a content tag

  t = parse_token("Happy_JJR", tags);
  REQUIRE(t.has_value());
  CHECK(t->lemma == "happy");
  CHECK(t->pos == Pos::J);
}

TEST_CASE("parse_token splits on the last underscore") {
  TagMap tags = TagMap::defaults();
  auto t = parse_token("vice_president_NN", tags);
  REQUIRE(t.has_value());
  CHECK(t->lemma == "vice_president");
  CHECK(t->pos == Pos::N);
}

TEST_CASE("parse_token rejects malformed tokens") {
  TagMap tags = TagMap::defaults();
  CHECK_FALSE(parse_token("noseparator", tags).has_value());
  CHECK_FALSE(parse_token("_NN", tags).has_value());
  CHECK_FALSE(parse_token("word_", tags).has_value());
  CHECK_FALSE(parse_token("", tags).has_value());
}

TEST_CASE("parse_token output is lowercase without whitespace") {
  TagMap tags = TagMap::defaults();
  const char* inputs[] = {"DOG_NN", "MiXeD_VVZ", "A1B2_JJ", "x_NP"};
  for (const char* raw : inputs) {
    auto t = parse_token(raw, tags);
    REQUIRE(t.has_value());
    CHECK_FALSE(t->lemma.empty());
    for (char c : t->lemma) {
      CHECK_FALSE(std::isspace(static_cast<unsigned char>(c)));
      CHECK_FALSE(std::isupper(static_cast<unsigned char>(c)));
    }
  }
}

TEST_CASE("content_filter keeps nouns, verbs, adjectives in order") {
  Sentence s = {{"the", Pos::O}, {"dog", Pos::N}, {"runs", Pos::V}};
  Sentence f = content_filter(s);
  REQUIRE(f.size() == 2);
  CHECK(f[0].lemma == "dog");
  CHECK(f[1].lemma == "runs");

  Sentence all_o = {{"the", Pos::O}, {"of", Pos::O}};
  CHECK(content_filter(all_o).empty());
}

TEST_CASE("content_filter is idempotent") {
  Sentence s = {{"a", Pos::O}, {"b", Pos::N}, {"c", Pos::V},
                {"d", Pos::O}, {"e", Pos::J}};
  Sentence once = content_filter(s);
  Sentence twice = content_filter(once);
  CHECK(once == twice);
}

TEST_CASE("stream_sentences yields one sentence per line") {
  testutil::TempDir dir;
  std::string path = dir.file("corpus.txt");
  testutil::write_file(path, "dog_NN barks_VVZ\ncat_NN sleeps_VVZ\n");

  TagMap tags = TagMap::defaults();
  SentenceReader reader(path, tags);
  Sentence s;
  REQUIRE(reader.next(s));
  REQUIRE(s.size() == 2);
  CHECK(s[0] == Token{"dog", Pos::N});
  CHECK(s[1] == Token{"barks", Pos::V});
  REQUIRE(reader.next(s));
  CHECK(s.size() == 2);
  CHECK_FALSE(reader.next(s));
  CHECK(reader.lines_read() == 2);
}

TEST_CASE("stream_sentences on an empty file") {
  testutil::TempDir dir;
  std::string path = dir.file("empty.txt");
  testutil::write_file(path, "");
  TagMap tags = TagMap::defaults();
  SentenceReader reader(path, tags);
  Sentence s;
  CHECK_FALSE(reader.next(s));
  CHECK(reader.lines_read() == 0);
}

TEST_CASE("line count matches sentence count whatever the content") {
  testutil::TempDir dir;
  std::string path = dir.file("mixed.txt");
  testutil::write_file(path,
                       "dog_NN\n\nbad token here\nthe_DT of_IN\nx_NN y_VV\n");
  TagMap tags = TagMap::defaults();
  SentenceReader reader(path, tags);
  Sentence s;
  size_t n = 0;
  while (reader.next(s)) ++n;
  CHECK(n == 5);
  CHECK(reader.lines_read() == 5);
  // "bad", "token", "here" have no underscore: counted, skipped
  CHECK(reader.malformed_tokens() == 3);
}

TEST_CASE("missing corpus file is a fatal error") {
  TagMap tags = TagMap::defaults();
  CHECK_THROWS_AS(SentenceReader("/nonexistent/corpus.txt", tags), Error);
}

TEST_CASE("gzip corpora stream transparently") {
  testutil::TempDir dir;
  std::string path = dir.file("corpus.txt.gz");
  gzFile gz = gzopen(path.c_str(), "wb");
  REQUIRE(gz != nullptr);
  const char* text = "dog_NN cat_NN\nrun_VV fast_JJ\n";
  gzwrite(gz, text, static_cast<unsigned>(strlen(text)));
  gzclose(gz);

  TagMap tags = TagMap::defaults();
  SentenceReader reader(path, tags);
  Sentence s;
  REQUIRE(reader.next(s));
  CHECK(s.size() == 2);
  REQUIRE(reader.next(s));
  CHECK(s[1] == Token{"fast", Pos::J});
  CHECK_FALSE(reader.next(s));
}

TEST_CASE("tag map file overrides the defaults") {
  testutil::TempDir dir;
  std::string path = dir.file("tags.map");
  testutil::write_file(path, "# custom tagset\nS=N\nAZ=J\nVERB=V\n");
  TagMap tags = TagMap::from_file(path);
  CHECK(tags.classify("S") == Pos::N);
  CHECK(tags.classify("S3") == Pos::N);
  CHECK(tags.classify("AZN") == Pos::J);
  CHECK(tags.classify("VERB2") == Pos::V);
  CHECK(tags.classify("NN") == Pos::O);  // defaults are replaced, not merged
}

TEST_CASE("longest tag prefix wins") {
  TagMap m;
  m.add("V", Pos::V);
  m.add("VA", Pos::J);  // contrived: more specific prefix
  CHECK(m.classify("VB") == Pos::V);
  CHECK(m.classify("VAX") == Pos::J);
}

TEST_CASE("bad tag map lines are parse errors") {
  testutil::TempDir dir;
  std::string path = dir.file("tags.map");
  testutil::write_file(path, "NN=N\nbroken line\n");
  CHECK_THROWS_AS(TagMap::from_file(path), Error);
}

TEST_SUITE_END();
