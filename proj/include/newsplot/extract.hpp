#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "newsplot/corpus.hpp"
#include "newsplot/http.hpp"
#include "newsplot/util.hpp"

namespace newsplot {

enum class PlotLevel { Lead, Body, Tail };

enum class PlotKind {
  Who,
  What,
  When,
  Where,
  Why,
  Evidence,
  Quote,
  Photo,
  Video,
  Audio,
  Opinion,
  PersTactic,
  Sentiment,
};

const char* to_string(PlotLevel level);
const char* to_string(PlotKind kind);
std::optional<PlotLevel> plot_level_from_string(const std::string& s);
std::optional<PlotKind> plot_kind_from_string(const std::string& s);

// Each kind belongs to exactly one pyramid level.
PlotLevel level_of(PlotKind kind);

// Character range inside one paragraph of the source article.
struct Span {
  size_t paragraph = 0;
  size_t begin = 0;
  size_t end = 0;
  bool operator==(const Span&) const = default;
};

struct PlotPoint {
  std::string id;
  std::string article_id;
  PlotLevel level = PlotLevel::Lead;
  PlotKind kind = PlotKind::Who;
  std::string surface_text;
  std::optional<Span> span;
  std::map<std::string, std::string> meta;
  bool operator==(const PlotPoint&) const = default;
};

// Entity surface forms mapped to NER-style labels. Matching is longest
// match first over alphanumeric token sequences, case-insensitive; entries
// are kept ordered by token count so the scan can take the first hit.
class Gazetteer {
 public:
  struct Entry {
    std::string surface;
    std::string label;
    std::vector<std::string> tokens;  // lowercased
  };

  void add(const std::string& surface, const std::string& label);
  const std::vector<Entry>& entries() const { return entries_; }
  bool empty() const { return entries_.empty(); }

 private:
  std::vector<Entry> entries_;
};

struct CausalCueSet {
  std::vector<std::string> cues;
  static CausalCueSet defaults();
};

struct SentimentLexicon {
  std::set<std::string> positive;
  std::set<std::string> negative;
  double neg_cut = -0.1;
  double pos_cut = 0.1;
};

struct TacticRule {
  std::string label;
  std::vector<std::string> patterns;
};

struct TacticRuleSet {
  std::vector<TacticRule> rules;
};

struct ExtractionResult {
  std::string article_id;
  std::vector<PlotPoint> plot_points;
  std::map<std::string, std::vector<std::string>> mapping;
  std::vector<Diagnostic> diagnostics;
};

// NER label -> plot kind. Unknown labels yield nullopt and are skipped.
std::optional<PlotKind> kind_for_entity_label(const std::string& label);

std::vector<PlotPoint> extract_lead(const ArticleRecord& article, const Gazetteer& gaz,
                                    const CausalCueSet& cues);
std::vector<PlotPoint> extract_why(const ArticleRecord& article, const CausalCueSet& cues);
std::vector<PlotPoint> extract_quotes(const ArticleRecord& article,
                                      std::vector<Diagnostic>* diagnostics = nullptr,
                                      size_t min_words = 3);
std::vector<PlotPoint> extract_evidence(const ArticleRecord& article, size_t k);
std::vector<PlotPoint> extract_media(const ArticleRecord& article);
PlotPoint extract_sentiment(const ArticleRecord& article, const SentimentLexicon& lex);
std::vector<PlotPoint> extract_tactics(const ArticleRecord& article, const TacticRuleSet& rules);
std::vector<PlotPoint> extract_opinions(const ArticleRecord& article,
                                        const std::vector<std::string>& subjective_cues);
std::vector<std::string> default_opinion_cues();

ExtractionResult run_npce(const ArticleRecord& article, const Gazetteer& gaz,
                          const CausalCueSet& cues, const SentimentLexicon& lex,
                          const TacticRuleSet& rules, size_t k,
                          const std::vector<std::string>& opinion_cues = default_opinion_cues());

// Resource files: one entry per line, # starts a comment line.
Gazetteer load_gazetteer(const std::string& path);
std::vector<std::string> load_term_list(const std::string& path);
SentimentLexicon load_sentiment_lexicon(const std::string& positive_path,
                                        const std::string& negative_path);
TacticRuleSet load_tactic_rules(const std::string& path);

std::string plot_point_to_json_line(const PlotPoint& p);
std::optional<PlotPoint> plot_point_from_json_line(const std::string& line);
void save_plot_points(const std::string& path, const std::vector<PlotPoint>& points);
std::vector<PlotPoint> load_plot_points(const std::string& path,
                                        std::vector<Diagnostic>* diagnostics = nullptr);

// Optional remote tagger speaking the same label space as the gazetteer.
struct NerEntity {
  std::string surface;
  std::string label;
  size_t start = 0;
  size_t end = 0;
};

class ExternalNerError : public Error {
  using Error::Error;
};

std::vector<NerEntity> query_external_ner(const std::string& endpoint, const std::string& text,
                                          const HttpPoster& poster);

// Folds remotely tagged entities into Lead points; spans are omitted since
// offsets refer to the posted text, not article paragraphs.
std::vector<PlotPoint> lead_points_from_entities(const ArticleRecord& article,
                                                 const std::vector<NerEntity>& entities);

}  // namespace newsplot
