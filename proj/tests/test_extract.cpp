#include "doctest.h"

#include <algorithm>
#include <cmath>
#include <map>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "newsplot/extract.hpp"
#include "newsplot/text.hpp"
#include "newsplot/util.hpp"

using namespace newsplot;

namespace {

std::string fixture(const std::string& rel) { return std::string(FIXTURES_DIR) + "/" + rel; }

ArticleRecord article_from(std::vector<std::string> paragraphs) {
  ArticleRecord a;
  a.headline = "Test headline";
  a.url = "http://news.test/articles/t.html";
  a.paragraphs = std::move(paragraphs);
  for (size_t i = 0; i < a.paragraphs.size(); ++i) {
    if (i) a.body_text += " ";
    a.body_text += a.paragraphs[i];
  }
  a.id = article_id_for(a.url, a.body_text);
  return a;
}

// Reference term-frequency vector: lowercased alphabetic tokens minus
// stopwords, L2 normalized.
std::map<std::string, double> ref_tf(const std::string& sentence) {
  std::map<std::string, double> tf;
  for (const auto& tok : alnum_tokens(sentence)) {
    bool alpha = std::all_of(tok.begin(), tok.end(), [](char c) { return c >= 'a' && c <= 'z'; });
    if (!alpha || is_stopword(tok)) continue;
    tf[tok] += 1.0;
  }
  double norm = 0.0;
  for (const auto& [_, v] : tf) norm += v * v;
  norm = std::sqrt(norm);
  if (norm > 0.0)
    for (auto& [_, v] : tf) v /= norm;
  return tf;
}

double ref_dot(const std::map<std::string, double>& a, const std::map<std::string, double>& b) {
  double d = 0.0;
  for (const auto& [k, v] : a) {
    auto it = b.find(k);
    if (it != b.end()) d += v * it->second;
  }
  return d;
}

std::vector<std::string> article_sentences(const ArticleRecord& a) {
  std::vector<std::string> out;
  for (const auto& p : a.paragraphs)
    for (const auto& s : split_sentences(p)) out.push_back(s.text);
  return out;
}

// Medoid under summed cosine distance; strict improvement beyond the same
// margin the extractor uses, so ties resolve to the lower index.
size_t medoid_index(const std::vector<std::map<std::string, double>>& vecs,
                    const std::vector<size_t>& members) {
  size_t best = members[0];
  double best_cost = 0.0;
  bool first = true;
  for (size_t i : members) {
    double cost = 0.0;
    for (size_t j : members) cost += 1.0 - ref_dot(vecs[i], vecs[j]);
    if (first || cost < best_cost - 1e-9) {
      best = i;
      best_cost = cost;
      first = false;
    }
  }
  return best;
}

}  // namespace

TEST_CASE("plot kinds serialize to stable strings and map onto levels") {
  const std::vector<std::pair<PlotKind, std::string>> table = {
      {PlotKind::Who, "who"},           {PlotKind::What, "what"},
      {PlotKind::When, "when"},         {PlotKind::Where, "where"},
      {PlotKind::Why, "why"},           {PlotKind::Evidence, "evidence"},
      {PlotKind::Quote, "quote"},       {PlotKind::Photo, "photo"},
      {PlotKind::Video, "video"},       {PlotKind::Audio, "audio"},
      {PlotKind::Opinion, "opinion"},   {PlotKind::PersTactic, "pers_tactic"},
      {PlotKind::Sentiment, "sentiment"}};
  for (const auto& [kind, name] : table) {
    CHECK(std::string(to_string(kind)) == name);
    CHECK(plot_kind_from_string(name) == kind);
  }
  CHECK_FALSE(plot_kind_from_string("unknown").has_value());

  for (auto k : {PlotKind::Who, PlotKind::What, PlotKind::When, PlotKind::Where, PlotKind::Why})
    CHECK(level_of(k) == PlotLevel::Lead);
  for (auto k : {PlotKind::Evidence, PlotKind::Quote, PlotKind::Photo, PlotKind::Video,
                 PlotKind::Audio})
    CHECK(level_of(k) == PlotLevel::Body);
  for (auto k : {PlotKind::Opinion, PlotKind::PersTactic, PlotKind::Sentiment})
    CHECK(level_of(k) == PlotLevel::Tail);

  CHECK(std::string(to_string(PlotLevel::Lead)) == "lead");
  CHECK(std::string(to_string(PlotLevel::Body)) == "body");
  CHECK(std::string(to_string(PlotLevel::Tail)) == "tail");
  CHECK(plot_level_from_string("tail") == PlotLevel::Tail);
  CHECK_FALSE(plot_level_from_string("middle").has_value());
}

TEST_CASE("entity labels map onto the lead kinds") {
  CHECK(kind_for_entity_label("PERSON") == PlotKind::Who);
  CHECK(kind_for_entity_label("NORP") == PlotKind::Who);
  CHECK(kind_for_entity_label("ORG") == PlotKind::Who);
  CHECK(kind_for_entity_label("EVENT") == PlotKind::What);
  CHECK(kind_for_entity_label("FAC") == PlotKind::What);
  CHECK(kind_for_entity_label("PRODUCT") == PlotKind::What);
  CHECK(kind_for_entity_label("WORK_OF_ART") == PlotKind::What);
  CHECK(kind_for_entity_label("QUANTITY") == PlotKind::What);
  CHECK(kind_for_entity_label("DATE") == PlotKind::When);
  CHECK(kind_for_entity_label("TIME") == PlotKind::When);
  CHECK(kind_for_entity_label("GPE") == PlotKind::Where);
  CHECK(kind_for_entity_label("LOC") == PlotKind::Where);
  CHECK_FALSE(kind_for_entity_label("EMAIL").has_value());
}

TEST_CASE("gazetteer prefers the longest match and keeps source casing") {
  Gazetteer gaz;
  gaz.add("Coast Guard", "ORG");
  gaz.add("U.S Coast Guard", "ORG");
  gaz.add("guard", "PERSON");
  ArticleRecord a = article_from({"The U.S COAST Guard arrived."});
  auto points = extract_lead(a, gaz, CausalCueSet{});
  REQUIRE(points.size() == 1);
  CHECK(points[0].kind == PlotKind::Who);
  // Surface text is the article's own span, not the gazetteer entry.
  CHECK(points[0].surface_text == "U.S COAST Guard");
  REQUIRE(points[0].span.has_value());
  CHECK(points[0].span->paragraph == 0);
}

TEST_CASE("lead extraction dedups repeated surfaces and keeps the first span") {
  Gazetteer gaz;
  gaz.add("Titanic", "WORK_OF_ART");
  ArticleRecord a = article_from({"The Titanic sank.", "Titanic relics remain."});
  auto points = extract_lead(a, gaz, CausalCueSet{});
  REQUIRE(points.size() == 1);
  CHECK(points[0].span->paragraph == 0);
}

TEST_CASE("date and clock expressions become When points without a gazetteer") {
  Gazetteer gaz;
  ArticleRecord a = article_from({"The hull failed at 9pm on 3 February."});
  auto points = extract_lead(a, gaz, CausalCueSet{});
  std::set<std::string> values;
  for (const auto& p : points) {
    CHECK(p.kind == PlotKind::When);
    values.insert(p.surface_text);
  }
  CHECK(values == std::set<std::string>{"9pm", "3 February"});
}

TEST_CASE("strong causal cues mark the whole sentence as Why") {
  ArticleRecord a = article_from(
      {"The crew died because the hull failed. Rescue ships arrived quickly."});
  auto points = extract_why(a, CausalCueSet::defaults());
  REQUIRE(points.size() == 1);
  CHECK(points[0].kind == PlotKind::Why);
  CHECK(points[0].surface_text == "The crew died because the hull failed.");
}

TEST_CASE("weak causal cues need at least three following tokens") {
  CausalCueSet cues = CausalCueSet::defaults();
  auto few = extract_why(article_from({"They searched after the storm."}), cues);
  CHECK(few.empty());
  auto enough = extract_why(article_from({"They searched after the storm had passed by."}), cues);
  REQUIRE(enough.size() == 1);
  // Cue matching is token based, so a word merely containing a cue is not
  // causal.
  auto embedded = extract_why(article_from({"The aftermath was documented there."}), cues);
  CHECK(embedded.empty());
}

TEST_CASE("multi word strong cues match as phrases") {
  CausalCueSet cues = CausalCueSet::defaults();
  auto points = extract_why(article_from({"The collapse was caused by metal fatigue."}), cues);
  REQUIRE(points.size() == 1);
}

TEST_CASE("quotes need balanced marks, enough words, and attribution") {
  auto ok = extract_quotes(article_from(
      {"\"We found debris on the sea floor,\" said the commander."}));
  REQUIRE(ok.size() == 1);
  CHECK(ok[0].kind == PlotKind::Quote);
  CHECK(ok[0].level == PlotLevel::Body);

  // Too short.
  CHECK(extract_quotes(article_from({"\"No comment,\" said the operator."})).empty());
  // Without an attribution verb the surface shrinks to the quoted text.
  auto bare = extract_quotes(
      article_from({"The sign read \"authorized personnel only beyond here\"."}));
  REQUIRE(bare.size() == 1);
  CHECK(bare[0].surface_text == "authorized personnel only beyond here");
}

TEST_CASE("unbalanced quotation marks surface as a diagnostic, not a throw") {
  std::vector<Diagnostic> diags;
  auto points = extract_quotes(article_from({"She said \"this quote never closes."}), &diags);
  CHECK(points.empty());
  REQUIRE(diags.size() == 1);
  CHECK(diags[0].message.find("quote") != std::string::npos);
}

TEST_CASE("media links become body points of the matching kind") {
  ArticleRecord a = article_from({"Text."});
  a.media_links.push_back({MediaKind::Photo, "http://news.test/a.jpg"});
  a.media_links.push_back({MediaKind::Video, "http://news.test/b.mp4"});
  a.media_links.push_back({MediaKind::Audio, "http://news.test/c.mp3"});
  auto points = extract_media(a);
  REQUIRE(points.size() == 3);
  CHECK(points[0].kind == PlotKind::Photo);
  CHECK(points[1].kind == PlotKind::Video);
  CHECK(points[2].kind == PlotKind::Audio);
  CHECK(points[1].surface_text == "http://news.test/b.mp4");
  CHECK_FALSE(points[0].span.has_value());
}

TEST_CASE("sentiment polarity is the signed hit ratio with a neutral band") {
  SentimentLexicon lex;
  lex.positive = {"safe", "hope"};
  lex.negative = {"died", "disaster"};

  auto neg = extract_sentiment(article_from({"The crew died in the disaster."}), lex);
  CHECK(neg.kind == PlotKind::Sentiment);
  CHECK(neg.surface_text == "negative");
  CHECK(neg.meta.at("polarity") == "-1");

  auto pos = extract_sentiment(article_from({"All safe, there is hope."}), lex);
  CHECK(pos.surface_text == "positive");

  auto mixed = extract_sentiment(article_from({"Safe at last after the disaster."}), lex);
  CHECK(mixed.surface_text == "neutral");
  CHECK(mixed.meta.at("polarity") == "0");

  auto none = extract_sentiment(article_from({"The committee met on Tuesday."}), lex);
  CHECK(none.surface_text == "neutral");
}

TEST_CASE("tactic patterns tag the snippet and record the rule label") {
  TacticRuleSet rules;
  rules.rules.push_back({"exaggeration", {"overblown", "overshadowed"}});
  ArticleRecord a = article_from(
      {"Critics called it overblown reporting.", "Others disagreed entirely."});
  auto points = extract_tactics(a, rules);
  REQUIRE(points.size() == 1);
  CHECK(points[0].kind == PlotKind::PersTactic);
  CHECK(points[0].meta.at("tactic") == "exaggeration");
  CHECK(points[0].surface_text.find("overblown") != std::string::npos);
}

TEST_CASE("opinion cues mark subjective sentences") {
  auto points = extract_opinions(
      article_from({"Clearly the operator should have waited. The ship sailed on."}),
      default_opinion_cues());
  REQUIRE(points.size() == 1);
  CHECK(points[0].kind == PlotKind::Opinion);
  CHECK(points[0].surface_text == "Clearly the operator should have waited.");
}

TEST_CASE("evidence with k at least the sentence count returns every sentence") {
  ArticleRecord a = article_from({"First sentence here. Second sentence here."});
  auto points = extract_evidence(a, 5);
  CHECK(points.size() == 2);
  CHECK(extract_evidence(article_from({}), 3).empty());
}

TEST_CASE("evidence with k one picks the summed-distance medoid") {
  std::mt19937 rng(20230622);
  std::vector<std::string> pool = {
      "submersible", "wreck",  "sonar",  "debris",  "crew",   "search", "vessel",
      "freight",     "cars",   "river",  "foam",    "night",  "dawn",   "floor"};
  for (int trial = 0; trial < 40; ++trial) {
    std::uniform_int_distribution<size_t> n_sent(2, 7);
    std::uniform_int_distribution<size_t> n_word(1, 6);
    std::uniform_int_distribution<size_t> pick(0, pool.size() - 1);
    size_t n = n_sent(rng);
    std::string para;
    for (size_t i = 0; i < n; ++i) {
      std::string sent = "They saw";
      size_t words = n_word(rng);
      for (size_t w = 0; w < words; ++w) sent += " " + pool[pick(rng)];
      sent += ".";
      if (i) para += " ";
      para += sent;
    }
    ArticleRecord a = article_from({para});
    auto sentences = article_sentences(a);
    if (sentences.size() < 2) continue;

    auto points = extract_evidence(a, 1);
    REQUIRE(points.size() == 1);

    std::vector<std::map<std::string, double>> vecs;
    for (const auto& s : sentences) vecs.push_back(ref_tf(s));
    std::vector<size_t> all(sentences.size());
    for (size_t i = 0; i < all.size(); ++i) all[i] = i;
    size_t expect = medoid_index(vecs, all);
    CHECK(points[0].surface_text == sentences[expect]);
  }
}

TEST_CASE("evidence with k two matches the exhaustive bipartition oracle") {
  // Two clearly separated topics; seed sentences land one in each.
  ArticleRecord a = article_from({
      "The submersible dove toward the wreck at dawn.",
      "Freight cars derailed beside the river at night.",
      "The submersible carried five passengers toward the wreck.",
      "Workers pumped foam where the freight cars derailed.",
      "Sonar located the submersible near the wreck floor.",
      "Crews cleared the derailed freight cars from the river.",
  });
  auto sentences = article_sentences(a);
  REQUIRE(sentences.size() == 6);

  std::vector<std::map<std::string, double>> vecs;
  for (const auto& s : sentences) vecs.push_back(ref_tf(s));

  // Every split of 6 sentences into two nonempty clusters, scored by summed
  // cosine distance to the cluster mean.
  double best_cost = 0.0;
  std::set<std::string> best_reps;
  bool first = true;
  for (unsigned mask = 1; mask < 63; ++mask) {
    std::vector<size_t> left, right;
    for (size_t i = 0; i < 6; ++i) ((mask >> i) & 1u ? left : right).push_back(i);
    if (right.empty()) continue;
    double cost = 0.0;
    for (const auto* cluster : {&left, &right}) {
      std::map<std::string, double> mean;
      for (size_t i : *cluster)
        for (const auto& [k, v] : vecs[i]) mean[k] += v;
      for (auto& [_, v] : mean) v /= static_cast<double>(cluster->size());
      double norm = 0.0;
      for (const auto& [_, v] : mean) norm += v * v;
      norm = std::sqrt(norm);
      for (size_t i : *cluster)
        cost += 1.0 - (norm > 0.0 ? ref_dot(vecs[i], mean) / norm : 0.0);
    }
    if (first || cost < best_cost - 1e-9) {
      best_cost = cost;
      best_reps = {sentences[medoid_index(vecs, left)], sentences[medoid_index(vecs, right)]};
      first = false;
    }
  }

  auto points = extract_evidence(a, 2);
  REQUIRE(points.size() == 2);
  std::set<std::string> got = {points[0].surface_text, points[1].surface_text};
  CHECK(got == best_reps);
}

TEST_CASE("npce reproduces the golden fixture extraction") {
  const FeedSource source{"Global Wire", "http://news.test/feeds/globalwire.xml", FeedKind::Rss};
  auto entries = parse_rss(read_file(fixture("corpus/feeds/globalwire.xml")), source);
  REQUIRE(!entries.empty());
  REQUIRE(entries[0].link == "http://news.test/articles/ocean-1.html");
  ArticleRecord article = extract_article(read_file(fixture("corpus/articles/ocean-1.html")),
                                          entries[0], source, 0);

  Gazetteer gaz = load_gazetteer(fixture("resources/gazetteer.tsv"));
  CausalCueSet cues{load_term_list(fixture("resources/causal_cues.txt"))};
  SentimentLexicon lex = load_sentiment_lexicon(fixture("resources/sentiment_positive.txt"),
                                                fixture("resources/sentiment_negative.txt"));
  TacticRuleSet rules = load_tactic_rules(fixture("resources/tactics.tsv"));
  auto opinion_cues = load_term_list(fixture("resources/opinion_cues.txt"));

  ExtractionResult result = run_npce(article, gaz, cues, lex, rules, 2, opinion_cues);
  ExtractionResult again = run_npce(article, gaz, cues, lex, rules, 2, opinion_cues);
  CHECK(result.plot_points == again.plot_points);

  auto golden = read_lines(fixture("golden/ocean1_points.ndjson"));
  REQUIRE(result.plot_points.size() == golden.size());
  for (size_t i = 0; i < golden.size(); ++i) {
    CHECK(plot_point_to_json_line(result.plot_points[i]) == golden[i]);
  }
  CHECK(result.mapping.at(article.id).size() == result.plot_points.size());
}

TEST_CASE("every extracted point keeps level consistent with kind") {
  const FeedSource source{"Global Wire", "http://news.test/feeds/globalwire.xml", FeedKind::Rss};
  auto entries = parse_rss(read_file(fixture("corpus/feeds/globalwire.xml")), source);
  Gazetteer gaz = load_gazetteer(fixture("resources/gazetteer.tsv"));
  CausalCueSet cues{load_term_list(fixture("resources/causal_cues.txt"))};
  SentimentLexicon lex = load_sentiment_lexicon(fixture("resources/sentiment_positive.txt"),
                                                fixture("resources/sentiment_negative.txt"));
  TacticRuleSet rules = load_tactic_rules(fixture("resources/tactics.tsv"));

  for (const auto& entry : entries) {
    std::string base = entry.link.substr(entry.link.rfind('/') + 1);
    ArticleRecord article =
        extract_article(read_file(fixture("corpus/articles/" + base)), entry, source, 0);
    auto result = run_npce(article, gaz, cues, lex, rules, 3);
    std::set<std::string> ids;
    for (const auto& p : result.plot_points) {
      CHECK(p.level == level_of(p.kind));
      CHECK(p.article_id == article.id);
      CHECK(!p.surface_text.empty());
      CHECK(ids.insert(p.id).second);
      if (p.span.has_value()) {
        REQUIRE(p.span->paragraph < article.paragraphs.size());
        const std::string& para = article.paragraphs[p.span->paragraph];
        REQUIRE(p.span->end <= para.size());
        REQUIRE(p.span->begin < p.span->end);
        CHECK(para.substr(p.span->begin, p.span->end - p.span->begin) == p.surface_text);
      }
    }
  }
}

TEST_CASE("plot point json lines round trip") {
  PlotPoint p;
  p.id = "deadbeefdeadbeef";
  p.article_id = "0123456789abcdef";
  p.level = PlotLevel::Tail;
  p.kind = PlotKind::PersTactic;
  p.surface_text = "overblown \"scare\" coverage";
  p.span = Span{2, 5, 31};
  p.meta["tactic"] = "exaggeration";
  auto back = plot_point_from_json_line(plot_point_to_json_line(p));
  REQUIRE(back.has_value());
  CHECK(*back == p);
  CHECK_FALSE(plot_point_from_json_line("not json").has_value());
}

TEST_CASE("resource loaders skip comments and blank lines") {
  Gazetteer gaz = load_gazetteer(fixture("resources/gazetteer.tsv"));
  CHECK(!gaz.empty());
  bool has_coast_guard = false;
  for (const auto& e : gaz.entries())
    if (e.surface == "U.S Coast Guard") has_coast_guard = true;
  CHECK(has_coast_guard);

  auto cues = load_term_list(fixture("resources/causal_cues.txt"));
  CHECK(std::find(cues.begin(), cues.end(), "caused by") != cues.end());

  SentimentLexicon lex = load_sentiment_lexicon(fixture("resources/sentiment_positive.txt"),
                                                fixture("resources/sentiment_negative.txt"));
  CHECK(lex.positive.count("safe"));
  CHECK(lex.negative.count("catastrophic"));

  TacticRuleSet rules = load_tactic_rules(fixture("resources/tactics.tsv"));
  bool has_attack = false;
  for (const auto& r : rules.rules)
    if (r.label == "attack on reputation") has_attack = !r.patterns.empty();
  CHECK(has_attack);
}
