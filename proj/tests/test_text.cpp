#include "doctest.h"

#include "newsplot/text.hpp"
#include "newsplot/util.hpp"

using namespace newsplot;

TEST_CASE("scan_tokens yields alphanumeric runs with byte offsets") {
  auto toks = scan_tokens("U.S Coast Guard");
  REQUIRE(toks.size() == 4);
  CHECK(toks[0].text == "U");
  CHECK(toks[1].text == "S");
  CHECK(toks[2].text == "Coast");
  CHECK(toks[3].text == "Guard");
  CHECK(toks[0].begin == 0);
  CHECK(toks[0].end == 1);
  CHECK(toks[2].begin == 4);
  CHECK(toks[2].end == 9);

  CHECK(scan_tokens("").empty());
  CHECK(scan_tokens("...!?").empty());

  auto nums = scan_tokens("370 miles");
  REQUIRE(nums.size() == 2);
  CHECK(nums[0].text == "370");
}

TEST_CASE("alnum_tokens lowercases and drops punctuation") {
  auto t = alnum_tokens("The crew died, sadly.");
  REQUIRE(t.size() == 4);
  CHECK(t[0] == "the");
  CHECK(t[1] == "crew");
  CHECK(t[2] == "died");
  CHECK(t[3] == "sadly");
}

TEST_CASE("word_count counts whitespace separated words") {
  CHECK(word_count("") == 0);
  CHECK(word_count("   ") == 0);
  CHECK(word_count("one") == 1);
  CHECK(word_count("one two  three\nfour") == 4);
}

TEST_CASE("normalize_phrase is the shared matching key") {
  CHECK(normalize_phrase("OceanGate Expeditions") == "oceangate expeditions");
  CHECK(normalize_phrase("  Paul-Henri   Nargeloe ") == "paul henri nargeloe");
  CHECK(normalize_phrase("U.S Coast Guard") == "us coast guard");
  CHECK(normalize_phrase("370 miles") == "370 miles");
  CHECK(normalize_phrase("\"quoted!\"") == "quoted");
  // Hyphens become separators while other punctuation vanishes, so
  // hyphenated names keep their word boundary.
  CHECK(normalize_phrase("a-b") == "a b");
  CHECK(normalize_phrase("a.b") == "ab");
}

TEST_CASE("contains_phrase matches whole normalized phrases only") {
  CHECK(contains_phrase("The U.S Coast Guard deployed buoys.", "u.s coast guard"));
  CHECK(contains_phrase("near the Titanic wreck today", "Titanic wreck"));
  CHECK_FALSE(contains_phrase("a wrecking ball", "wreck"));
  CHECK_FALSE(contains_phrase("", "wreck"));
  CHECK(contains_phrase("wreck", "wreck"));
}

TEST_CASE("split_sentences ends on terminal punctuation before a capital") {
  auto s = split_sentences("The dive began at dawn. Contact was lost soon after.");
  REQUIRE(s.size() == 2);
  CHECK(s[0].text == "The dive began at dawn.");
  CHECK(s[1].text == "Contact was lost soon after.");
  CHECK(s[0].begin == 0);
  CHECK(s[1].begin == 24);
}

TEST_CASE("split_sentences keeps single letter abbreviations intact") {
  auto s = split_sentences("The U.S Coast Guard led the search. Ships arrived.");
  REQUIRE(s.size() == 2);
  CHECK(s[0].text == "The U.S Coast Guard led the search.");
}

TEST_CASE("split_sentences keeps blocklisted abbreviations intact") {
  auto s = split_sentences("Mr. Rush piloted the craft. Dr. Harding observed.");
  REQUIRE(s.size() == 2);
  CHECK(s[0].text == "Mr. Rush piloted the craft.");
  CHECK(s[1].text == "Dr. Harding observed.");
}

TEST_CASE("split_sentences carries a closing quote with the sentence") {
  auto s = split_sentences("\"We found debris.\" The search continued.");
  REQUIRE(s.size() == 2);
  CHECK(s[0].text == "\"We found debris.\"");
  CHECK(s[1].text == "The search continued.");
}

TEST_CASE("split_sentences always closes the final sentence") {
  auto s = split_sentences("No terminal punctuation here");
  REQUIRE(s.size() == 1);
  CHECK(s[0].text == "No terminal punctuation here");

  CHECK(split_sentences("").empty());
  CHECK(split_sentences("   ").empty());
}

TEST_CASE("split_sentences handles question and exclamation marks") {
  auto s = split_sentences("Why did it fail? Nobody knows! Reviews continue.");
  REQUIRE(s.size() == 3);
  CHECK(s[0].text == "Why did it fail?");
  CHECK(s[1].text == "Nobody knows!");
}

TEST_CASE("normalize_whitespace collapses runs and trims") {
  CHECK(normalize_whitespace("  a \t b\n c  ") == "a b c");
  CHECK(normalize_whitespace("") == "");
  CHECK(normalize_whitespace(" \n ") == "");
}

TEST_CASE("stopwords cover articles and prepositions but not content words") {
  CHECK(is_stopword("the"));
  CHECK(is_stopword("of"));
  CHECK(is_stopword("and"));
  CHECK_FALSE(is_stopword("submersible"));
  CHECK_FALSE(is_stopword("wreck"));
}

TEST_CASE("iso8601 round trips and rejects junk") {
  auto t = parse_iso8601("2023-06-22T12:00:00Z");
  REQUIRE(t.has_value());
  CHECK(format_iso8601(*t) == "2023-06-22T12:00:00Z");
  CHECK(format_iso8601(0) == "1970-01-01T00:00:00Z");
  CHECK_FALSE(parse_iso8601("22 June 2023").has_value());
  CHECK_FALSE(parse_iso8601("2023-06-22").has_value());
  CHECK_FALSE(parse_iso8601("").has_value());
}

TEST_CASE("rfc822 dates parse with named and numeric zones") {
  auto a = parse_rfc822("Mon, 19 Jun 2023 10:04:00 GMT");
  REQUIRE(a.has_value());
  CHECK(format_iso8601(*a) == "2023-06-19T10:04:00Z");

  auto b = parse_rfc822("Mon, 19 Jun 2023 10:04:00 +0200");
  REQUIRE(b.has_value());
  CHECK(format_iso8601(*b) == "2023-06-19T08:04:00Z");

  CHECK_FALSE(parse_rfc822("not a date").has_value());
}

TEST_CASE("fnv1a64 is stable and hex64 is sixteen lowercase digits") {
  CHECK(fnv1a64("") == 14695981039346656037ull);
  CHECK(fnv1a64("a") != fnv1a64("b"));
  CHECK(hex64(0) == "0000000000000000");
  CHECK(hex64(0xdeadbeefull) == "00000000deadbeef");
}
