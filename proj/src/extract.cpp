#include "newsplot/extract.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <regex>
#include <sstream>

#include "newsplot/text.hpp"
#include "json.hpp"

namespace newsplot {

using nlohmann::json;

const char* to_string(PlotLevel level) {
  switch (level) {
    case PlotLevel::Lead: return "lead";
    case PlotLevel::Body: return "body";
    case PlotLevel::Tail: return "tail";
  }
  return "lead";
}

const char* to_string(PlotKind kind) {
  switch (kind) {
    case PlotKind::Who: return "who";
    case PlotKind::What: return "what";
    case PlotKind::When: return "when";
    case PlotKind::Where: return "where";
    case PlotKind::Why: return "why";
    case PlotKind::Evidence: return "evidence";
    case PlotKind::Quote: return "quote";
    case PlotKind::Photo: return "photo";
    case PlotKind::Video: return "video";
    case PlotKind::Audio: return "audio";
    case PlotKind::Opinion: return "opinion";
    case PlotKind::PersTactic: return "pers_tactic";
    case PlotKind::Sentiment: return "sentiment";
  }
  return "who";
}

std::optional<PlotLevel> plot_level_from_string(const std::string& s) {
  if (s == "lead") return PlotLevel::Lead;
  if (s == "body") return PlotLevel::Body;
  if (s == "tail") return PlotLevel::Tail;
  return std::nullopt;
}

std::optional<PlotKind> plot_kind_from_string(const std::string& s) {
  static const std::map<std::string, PlotKind> table = {
      {"who", PlotKind::Who},          {"what", PlotKind::What},
      {"when", PlotKind::When},        {"where", PlotKind::Where},
      {"why", PlotKind::Why},          {"evidence", PlotKind::Evidence},
      {"quote", PlotKind::Quote},      {"photo", PlotKind::Photo},
      {"video", PlotKind::Video},      {"audio", PlotKind::Audio},
      {"opinion", PlotKind::Opinion},  {"pers_tactic", PlotKind::PersTactic},
      {"sentiment", PlotKind::Sentiment}};
  auto it = table.find(s);
  if (it == table.end()) return std::nullopt;
  return it->second;
}

PlotLevel level_of(PlotKind kind) {
  switch (kind) {
    case PlotKind::Who:
    case PlotKind::What:
    case PlotKind::When:
    case PlotKind::Where:
    case PlotKind::Why:
      return PlotLevel::Lead;
    case PlotKind::Evidence:
    case PlotKind::Quote:
    case PlotKind::Photo:
    case PlotKind::Video:
    case PlotKind::Audio:
      return PlotLevel::Body;
    case PlotKind::Opinion:
    case PlotKind::PersTactic:
    case PlotKind::Sentiment:
      return PlotLevel::Tail;
  }
  return PlotLevel::Lead;
}

void Gazetteer::add(const std::string& surface, const std::string& label) {
  Entry e;
  e.surface = surface;
  e.label = label;
  for (const auto& t : scan_tokens(surface)) e.tokens.push_back(to_lower_ascii(t.text));
  if (e.tokens.empty()) return;
  // Stable position: after the last entry with at least as many tokens.
  auto it = std::find_if(entries_.begin(), entries_.end(), [&](const Entry& other) {
    return other.tokens.size() < e.tokens.size();
  });
  entries_.insert(it, std::move(e));
}

CausalCueSet CausalCueSet::defaults() {
  return CausalCueSet{
      {"cause", "causing", "caused by", "because", "since", "after", "for", "as", "of"}};
}

std::optional<PlotKind> kind_for_entity_label(const std::string& label) {
  static const std::map<std::string, PlotKind> table = {
      {"PERSON", PlotKind::Who},      {"NORP", PlotKind::Who},
      {"ORG", PlotKind::Who},         {"EVENT", PlotKind::What},
      {"FAC", PlotKind::What},        {"PRODUCT", PlotKind::What},
      {"WORK_OF_ART", PlotKind::What},{"LAW", PlotKind::What},
      {"MONEY", PlotKind::What},      {"LANGUAGE", PlotKind::What},
      {"PERCENT", PlotKind::What},    {"QUANTITY", PlotKind::What},
      {"ORDINAL", PlotKind::What},    {"CARDINAL", PlotKind::What},
      {"DATE", PlotKind::When},       {"TIME", PlotKind::When},
      {"GPE", PlotKind::Where},       {"LOC", PlotKind::Where}};
  auto it = table.find(label);
  if (it == table.end()) return std::nullopt;
  return it->second;
}

namespace {

PlotPoint make_point(const ArticleRecord& article, PlotKind kind, std::string surface,
                     std::optional<Span> span = std::nullopt) {
  PlotPoint p;
  p.article_id = article.id;
  p.kind = kind;
  p.level = level_of(kind);
  p.surface_text = std::move(surface);
  p.span = span;
  return p;
}

// Date and clock expressions the gazetteer does not need to list. Bare years
// are deliberately not matched.
const std::vector<std::regex>& when_patterns() {
  static const std::vector<std::regex> patterns = [] {
    const std::string month =
        "(January|February|March|April|May|June|July|August|September|October|"
        "November|December)";
    std::vector<std::regex> v;
    auto icase = std::regex::ECMAScript | std::regex::icase;
    v.emplace_back("\\b\\d{1,2}(st|nd|rd|th)?\\s+" + month + "\\b", icase);
    v.emplace_back("\\b" + month + "\\s+\\d{1,2}(st|nd|rd|th)?\\b", icase);
    v.emplace_back("\\b\\d{4}-\\d{2}-\\d{2}\\b", icase);
    v.emplace_back("\\b\\d{1,2}(:\\d{2})?\\s?(am|pm)\\b", icase);
    v.emplace_back("\\b\\d{1,2}:\\d{2}\\b", icase);
    return v;
  }();
  return patterns;
}

struct CueMatch {
  size_t token_index = 0;  // first token of the cue
  size_t token_count = 0;
  bool weak = false;
};

bool is_weak_cue(const std::string& cue) {
  return cue == "for" || cue == "as" || cue == "of" || cue == "since" || cue == "after";
}

// Whole-word (phrase for multi-word cues) match over lowercased tokens.
std::vector<CueMatch> find_cues(const std::vector<std::string>& lower_tokens,
                                const CausalCueSet& cues) {
  std::vector<CueMatch> matches;
  for (const auto& cue : cues.cues) {
    std::vector<std::string> cue_tokens = alnum_tokens(cue);
    if (cue_tokens.empty() || cue_tokens.size() > lower_tokens.size()) continue;
    for (size_t i = 0; i + cue_tokens.size() <= lower_tokens.size(); ++i) {
      bool hit = true;
      for (size_t j = 0; j < cue_tokens.size(); ++j) {
        if (lower_tokens[i + j] != cue_tokens[j]) {
          hit = false;
          break;
        }
      }
      if (hit) matches.push_back({i, cue_tokens.size(), is_weak_cue(cue)});
    }
  }
  return matches;
}

std::string trim(const std::string& s) {
  size_t b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return "";
  size_t e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

}  // namespace

std::vector<PlotPoint> extract_why(const ArticleRecord& article, const CausalCueSet& cues) {
  std::vector<PlotPoint> points;
  for (size_t pidx = 0; pidx < article.paragraphs.size(); ++pidx) {
    for (const auto& sent : split_sentences(article.paragraphs[pidx])) {
      std::vector<std::string> lower_tokens;
      for (const auto& t : scan_tokens(sent.text)) lower_tokens.push_back(to_lower_ascii(t.text));
      bool causal = false;
      for (const auto& m : find_cues(lower_tokens, cues)) {
        size_t following = lower_tokens.size() - (m.token_index + m.token_count);
        if (!m.weak || following >= 3) {
          causal = true;
          break;
        }
      }
      if (causal) {
        points.push_back(make_point(article, PlotKind::Why, sent.text,
                                    Span{pidx, sent.begin, sent.end}));
      }
    }
  }
  return points;
}

std::vector<PlotPoint> extract_lead(const ArticleRecord& article, const Gazetteer& gaz,
                                    const CausalCueSet& cues) {
  std::vector<PlotPoint> points;

  // Longest-match gazetteer scan, paragraph by paragraph.
  for (size_t pidx = 0; pidx < article.paragraphs.size(); ++pidx) {
    const std::string& para = article.paragraphs[pidx];
    std::vector<TokenSpan> tokens = scan_tokens(para);
    std::vector<std::string> lower;
    lower.reserve(tokens.size());
    for (const auto& t : tokens) lower.push_back(to_lower_ascii(t.text));

    size_t i = 0;
    while (i < tokens.size()) {
      const Gazetteer::Entry* hit = nullptr;
      for (const auto& entry : gaz.entries()) {
        size_t m = entry.tokens.size();
        if (i + m > tokens.size()) continue;
        bool match = true;
        for (size_t j = 0; j < m; ++j) {
          if (lower[i + j] != entry.tokens[j]) {
            match = false;
            break;
          }
        }
        if (match) {
          hit = &entry;
          break;
        }
      }
      if (hit) {
        auto kind = kind_for_entity_label(hit->label);
        size_t m = hit->tokens.size();
        size_t begin = tokens[i].begin;
        size_t end = tokens[i + m - 1].end;
        if (kind) {
          points.push_back(make_point(article, *kind, para.substr(begin, end - begin),
                                      Span{pidx, begin, end}));
        }
        i += m;
      } else {
        ++i;
      }
    }
  }

  // Date and time expressions missed by the gazetteer.
  for (size_t pidx = 0; pidx < article.paragraphs.size(); ++pidx) {
    const std::string& para = article.paragraphs[pidx];
    for (const auto& re : when_patterns()) {
      auto begin_it = std::sregex_iterator(para.begin(), para.end(), re);
      for (auto it = begin_it; it != std::sregex_iterator(); ++it) {
        size_t begin = static_cast<size_t>(it->position());
        size_t end = begin + static_cast<size_t>(it->length());
        points.push_back(make_point(article, PlotKind::When, it->str(), Span{pidx, begin, end}));
      }
    }
  }

  for (auto& p : extract_why(article, cues)) points.push_back(std::move(p));

  // Collapse duplicates (same kind + normalized surface), first span wins.
  std::vector<PlotPoint> unique;
  std::set<std::pair<int, std::string>> seen;
  for (auto& p : points) {
    auto key = std::make_pair(static_cast<int>(p.kind), normalize_phrase(p.surface_text));
    if (seen.insert(key).second) unique.push_back(std::move(p));
  }
  return unique;
}

std::vector<PlotPoint> extract_quotes(const ArticleRecord& article,
                                      std::vector<Diagnostic>* diagnostics, size_t min_words) {
  static const std::vector<std::string> attribution_verbs = {
      "said", "says", "say",   "told",  "added", "stated",
      "asked", "wrote", "noted", "claimed", "according"};

  std::vector<PlotPoint> points;
  for (size_t pidx = 0; pidx < article.paragraphs.size(); ++pidx) {
    const std::string& para = article.paragraphs[pidx];

    // Delimiter positions: straight double quotes plus typographic pairs.
    struct Mark {
      size_t pos;
      size_t len;
    };
    std::vector<Mark> marks;
    for (size_t i = 0; i < para.size(); ++i) {
      if (para[i] == '"') {
        marks.push_back({i, 1});
      } else if (i + 2 < para.size() && static_cast<unsigned char>(para[i]) == 0xE2 &&
                 static_cast<unsigned char>(para[i + 1]) == 0x80 &&
                 (static_cast<unsigned char>(para[i + 2]) == 0x9C ||
                  static_cast<unsigned char>(para[i + 2]) == 0x9D)) {
        marks.push_back({i, 3});
        i += 2;
      }
    }
    if (marks.size() % 2 != 0) {
      if (diagnostics) {
        diagnostics->push_back({"paragraph " + std::to_string(pidx),
                                "unbalanced quotation marks, trailing quote ignored"});
      }
      marks.pop_back();
    }

    std::vector<SentenceSpan> sentences = split_sentences(para);
    for (size_t m = 0; m + 1 < marks.size(); m += 2) {
      size_t content_begin = marks[m].pos + marks[m].len;
      size_t content_end = marks[m + 1].pos;
      if (content_end <= content_begin) continue;
      std::string quoted = trim(para.substr(content_begin, content_end - content_begin));
      if (word_count(quoted) < min_words) continue;

      // Attribution stays in the surface when the enclosing sentence has a
      // speech verb outside the quotation marks.
      const SentenceSpan* enclosing = nullptr;
      for (const auto& s : sentences) {
        if (s.begin <= marks[m].pos && marks[m].pos < s.end) {
          enclosing = &s;
          break;
        }
      }
      bool attributed = false;
      if (enclosing) {
        std::string outside = para.substr(enclosing->begin, marks[m].pos - enclosing->begin);
        size_t tail_begin = std::min(content_end + marks[m + 1].len, enclosing->end);
        outside += " " + para.substr(tail_begin, enclosing->end - tail_begin);
        for (const auto& tok : alnum_tokens(outside)) {
          if (std::find(attribution_verbs.begin(), attribution_verbs.end(), tok) !=
              attribution_verbs.end()) {
            attributed = true;
            break;
          }
        }
      }
      if (attributed && enclosing) {
        points.push_back(make_point(article, PlotKind::Quote, enclosing->text,
                                    Span{pidx, enclosing->begin, enclosing->end}));
      } else {
        points.push_back(make_point(article, PlotKind::Quote, quoted,
                                    Span{pidx, content_begin, content_end}));
      }
    }
  }

  // A sentence holding several long quotes should appear once.
  std::vector<PlotPoint> unique;
  std::set<std::string> seen;
  for (auto& p : points) {
    if (seen.insert(normalize_phrase(p.surface_text)).second) unique.push_back(std::move(p));
  }
  return unique;
}

namespace {

struct SentenceVec {
  size_t index = 0;
  size_t paragraph = 0;
  SentenceSpan span;
  std::map<std::string, double> tf;  // unit L2 norm
};

std::map<std::string, double> tf_vector(const std::string& sentence) {
  std::map<std::string, double> tf;
  for (const auto& tok : alnum_tokens(sentence)) {
    bool alpha = std::all_of(tok.begin(), tok.end(), [](char c) {
      return c >= 'a' && c <= 'z';
    });
    if (!alpha || is_stopword(tok)) continue;
    tf[tok] += 1.0;
  }
  double norm = 0.0;
  for (const auto& [_, v] : tf) norm += v * v;
  norm = std::sqrt(norm);
  if (norm > 0.0) {
    for (auto& [_, v] : tf) v /= norm;
  }
  return tf;
}

double dot(const std::map<std::string, double>& a, const std::map<std::string, double>& b) {
  const auto& small = a.size() <= b.size() ? a : b;
  const auto& large = a.size() <= b.size() ? b : a;
  double d = 0.0;
  for (const auto& [k, v] : small) {
    auto it = large.find(k);
    if (it != large.end()) d += v * it->second;
  }
  return d;
}

// Cosine distance to a (not necessarily unit) centroid.
double cosine_distance(const std::map<std::string, double>& unit_vec,
                       const std::map<std::string, double>& centroid) {
  double cn = 0.0;
  for (const auto& [_, v] : centroid) cn += v * v;
  cn = std::sqrt(cn);
  if (cn == 0.0) return 1.0;
  return 1.0 - dot(unit_vec, centroid) / cn;
}

}  // namespace

std::vector<PlotPoint> extract_evidence(const ArticleRecord& article, size_t k) {
  if (k == 0) k = 1;
  std::vector<SentenceVec> sentences;
  for (size_t pidx = 0; pidx < article.paragraphs.size(); ++pidx) {
    for (const auto& s : split_sentences(article.paragraphs[pidx])) {
      SentenceVec sv;
      sv.index = sentences.size();
      sv.paragraph = pidx;
      sv.span = s;
      sv.tf = tf_vector(s.text);
      sentences.push_back(std::move(sv));
    }
  }

  std::vector<PlotPoint> points;
  if (sentences.empty()) return points;
  if (sentences.size() <= k) {
    for (const auto& s : sentences) {
      points.push_back(make_point(article, PlotKind::Evidence, s.span.text,
                                  Span{s.paragraph, s.span.begin, s.span.end}));
    }
    return points;
  }

  // Seeds: first k sentences with pairwise-distinct vectors, padded with the
  // earliest remaining ones when fewer than k are distinct.
  std::vector<size_t> seeds;
  for (size_t i = 0; i < sentences.size() && seeds.size() < k; ++i) {
    bool dup = std::any_of(seeds.begin(), seeds.end(), [&](size_t s) {
      return sentences[s].tf == sentences[i].tf;
    });
    if (!dup) seeds.push_back(i);
  }
  for (size_t i = 0; i < sentences.size() && seeds.size() < k; ++i) {
    if (std::find(seeds.begin(), seeds.end(), i) == seeds.end()) seeds.push_back(i);
  }

  std::vector<std::map<std::string, double>> centroids;
  for (size_t s : seeds) centroids.push_back(sentences[s].tf);

  std::vector<size_t> assignment(sentences.size(), 0);
  for (int iter = 0; iter < 50; ++iter) {
    bool moved = false;
    for (const auto& s : sentences) {
      size_t best = 0;
      double best_d = cosine_distance(s.tf, centroids[0]);
      for (size_t c = 1; c < centroids.size(); ++c) {
        double d = cosine_distance(s.tf, centroids[c]);
        if (d < best_d - 1e-12) {
          best_d = d;
          best = c;
        }
      }
      if (assignment[s.index] != best) {
        assignment[s.index] = best;
        moved = true;
      }
    }
    if (!moved && iter > 0) break;

    for (size_t c = 0; c < centroids.size(); ++c) {
      std::map<std::string, double> mean;
      size_t n = 0;
      for (const auto& s : sentences) {
        if (assignment[s.index] != c) continue;
        for (const auto& [k2, v] : s.tf) mean[k2] += v;
        ++n;
      }
      if (n == 0) {
        centroids[c] = sentences[seeds[c]].tf;  // empty cluster keeps its seed
        continue;
      }
      for (auto& [_, v] : mean) v /= static_cast<double>(n);
      centroids[c] = std::move(mean);
    }
  }

  // Nearest sentence per centroid, ties to the lower index.
  std::set<size_t> chosen;
  for (size_t c = 0; c < centroids.size(); ++c) {
    size_t best = sentences.size();
    double best_d = 0.0;
    for (const auto& s : sentences) {
      if (assignment[s.index] != c) continue;
      double d = cosine_distance(s.tf, centroids[c]);
      if (best == sentences.size() || d < best_d - 1e-12) {
        best = s.index;
        best_d = d;
      }
    }
    if (best == sentences.size()) best = seeds[c];
    chosen.insert(best);
  }
  for (size_t idx : chosen) {
    const auto& s = sentences[idx];
    points.push_back(make_point(article, PlotKind::Evidence, s.span.text,
                                Span{s.paragraph, s.span.begin, s.span.end}));
  }
  return points;
}

std::vector<PlotPoint> extract_media(const ArticleRecord& article) {
  std::vector<PlotPoint> points;
  for (const auto& m : article.media_links) {
    PlotKind kind = PlotKind::Photo;
    if (m.kind == MediaKind::Video) kind = PlotKind::Video;
    if (m.kind == MediaKind::Audio) kind = PlotKind::Audio;
    points.push_back(make_point(article, kind, m.url));
  }
  return points;
}

PlotPoint extract_sentiment(const ArticleRecord& article, const SentimentLexicon& lex) {
  size_t pos_hits = 0;
  size_t neg_hits = 0;
  for (const auto& tok : alnum_tokens(article.body_text)) {
    if (lex.positive.count(tok)) ++pos_hits;
    if (lex.negative.count(tok)) ++neg_hits;
  }
  double polarity = (static_cast<double>(pos_hits) - static_cast<double>(neg_hits)) /
                    std::max<double>(1.0, static_cast<double>(pos_hits + neg_hits));
  std::string label = "neutral";
  if (polarity <= lex.neg_cut) label = "negative";
  else if (polarity >= lex.pos_cut) label = "positive";

  PlotPoint p = make_point(article, PlotKind::Sentiment, label);
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%g", polarity);
  p.meta["polarity"] = buf;
  return p;
}

std::vector<PlotPoint> extract_tactics(const ArticleRecord& article, const TacticRuleSet& rules) {
  constexpr size_t kSnippetWordCap = 12;
  std::vector<PlotPoint> points;
  std::set<std::pair<std::string, size_t>> seen;  // label + paragraph

  for (size_t pidx = 0; pidx < article.paragraphs.size(); ++pidx) {
    const std::string& para = article.paragraphs[pidx];
    std::string lower_para = to_lower_ascii(para);
    for (const auto& rule : rules.rules) {
      size_t match_pos = std::string::npos;
      for (const auto& pattern : rule.patterns) {
        size_t pos = lower_para.find(to_lower_ascii(pattern));
        if (pos != std::string::npos && (match_pos == std::string::npos || pos < match_pos)) {
          match_pos = pos;
        }
      }
      if (match_pos == std::string::npos) continue;
      if (!seen.insert({rule.label, pidx}).second) continue;

      // Snippet runs from the match to the sentence end, capped in words.
      size_t snippet_end = para.size();
      for (const auto& s : split_sentences(para)) {
        if (s.begin <= match_pos && match_pos < s.end) {
          snippet_end = s.end;
          break;
        }
      }
      std::string snippet = para.substr(match_pos, snippet_end - match_pos);
      while (!snippet.empty() &&
             (snippet.back() == '.' || snippet.back() == '!' || snippet.back() == '?' ||
              snippet.back() == ',' || snippet.back() == ';' || snippet.back() == ' ')) {
        snippet.pop_back();
      }
      std::vector<TokenSpan> words = scan_tokens(snippet);
      if (words.size() > kSnippetWordCap) snippet = snippet.substr(0, words[kSnippetWordCap].begin);
      snippet = trim(snippet);
      if (snippet.empty()) continue;

      PlotPoint p = make_point(article, PlotKind::PersTactic, snippet,
                               Span{pidx, match_pos, match_pos + snippet.size()});
      p.meta["tactic"] = rule.label;
      points.push_back(std::move(p));
    }
  }
  return points;
}

std::vector<std::string> default_opinion_cues() {
  return {"believe",  "believes", "believed", "clearly",       "should",
          "must",     "outrageous", "in my view", "in my opinion", "arguably",
          "unacceptable"};
}

std::vector<PlotPoint> extract_opinions(const ArticleRecord& article,
                                        const std::vector<std::string>& subjective_cues) {
  std::vector<PlotPoint> points;
  for (size_t pidx = 0; pidx < article.paragraphs.size(); ++pidx) {
    for (const auto& sent : split_sentences(article.paragraphs[pidx])) {
      std::vector<std::string> lower_tokens;
      for (const auto& t : scan_tokens(sent.text)) lower_tokens.push_back(to_lower_ascii(t.text));
      bool subjective = false;
      for (const auto& cue : subjective_cues) {
        std::vector<std::string> cue_tokens = alnum_tokens(cue);
        if (cue_tokens.empty() || cue_tokens.size() > lower_tokens.size()) continue;
        for (size_t i = 0; i + cue_tokens.size() <= lower_tokens.size() && !subjective; ++i) {
          bool hit = true;
          for (size_t j = 0; j < cue_tokens.size(); ++j) {
            if (lower_tokens[i + j] != cue_tokens[j]) {
              hit = false;
              break;
            }
          }
          subjective = hit;
        }
        if (subjective) break;
      }
      if (subjective) {
        points.push_back(make_point(article, PlotKind::Opinion, sent.text,
                                    Span{pidx, sent.begin, sent.end}));
      }
    }
  }
  return points;
}

namespace {

std::string span_key(const std::optional<Span>& span) {
  if (!span) return "";
  return std::to_string(span->paragraph) + ":" + std::to_string(span->begin) + ":" +
         std::to_string(span->end);
}

std::string mint_point_id(const PlotPoint& p) {
  return hex64(fnv1a64(p.article_id + "|" + to_string(p.kind) + "|" + p.surface_text + "|" +
                       span_key(p.span)));
}

}  // namespace

ExtractionResult run_npce(const ArticleRecord& article, const Gazetteer& gaz,
                          const CausalCueSet& cues, const SentimentLexicon& lex,
                          const TacticRuleSet& rules, size_t k,
                          const std::vector<std::string>& opinion_cues) {
  ExtractionResult result;
  result.article_id = article.id;

  std::vector<PlotPoint> points;
  if (!article.paragraphs.empty()) {
    for (auto& p : extract_lead(article, gaz, cues)) points.push_back(std::move(p));
    for (auto& p : extract_quotes(article, &result.diagnostics)) points.push_back(std::move(p));
    for (auto& p : extract_evidence(article, k)) points.push_back(std::move(p));
  }
  for (auto& p : extract_media(article)) points.push_back(std::move(p));
  if (!article.paragraphs.empty()) {
    for (auto& p : extract_opinions(article, opinion_cues)) points.push_back(std::move(p));
    for (auto& p : extract_tactics(article, rules)) points.push_back(std::move(p));
  }
  points.push_back(extract_sentiment(article, lex));

  std::set<std::string> ids;
  for (auto& p : points) {
    p.id = mint_point_id(p);
    if (!ids.insert(p.id).second) continue;  // exact duplicate
    result.mapping[result.article_id].push_back(p.id);
    result.plot_points.push_back(std::move(p));
  }
  return result;
}

Gazetteer load_gazetteer(const std::string& path) {
  Gazetteer gaz;
  for (const auto& line : read_lines(path)) {
    if (line.empty() || line[0] == '#') continue;
    size_t tab = line.find('\t');
    if (tab == std::string::npos) continue;
    gaz.add(trim(line.substr(0, tab)), trim(line.substr(tab + 1)));
  }
  return gaz;
}

std::vector<std::string> load_term_list(const std::string& path) {
  std::vector<std::string> terms;
  for (const auto& line : read_lines(path)) {
    if (line.empty() || line[0] == '#') continue;
    std::string t = trim(line);
    if (!t.empty()) terms.push_back(t);
  }
  return terms;
}

SentimentLexicon load_sentiment_lexicon(const std::string& positive_path,
                                        const std::string& negative_path) {
  SentimentLexicon lex;
  for (const auto& t : load_term_list(positive_path)) lex.positive.insert(to_lower_ascii(t));
  for (const auto& t : load_term_list(negative_path)) lex.negative.insert(to_lower_ascii(t));
  return lex;
}

TacticRuleSet load_tactic_rules(const std::string& path) {
  TacticRuleSet rules;
  for (const auto& line : read_lines(path)) {
    if (line.empty() || line[0] == '#') continue;
    size_t tab = line.find('\t');
    if (tab == std::string::npos) continue;
    TacticRule rule;
    rule.label = trim(line.substr(0, tab));
    std::string patterns = line.substr(tab + 1);
    size_t start = 0;
    while (start <= patterns.size()) {
      size_t bar = patterns.find('|', start);
      std::string p = trim(patterns.substr(start, bar == std::string::npos ? std::string::npos
                                                                           : bar - start));
      if (!p.empty()) rule.patterns.push_back(p);
      if (bar == std::string::npos) break;
      start = bar + 1;
    }
    if (!rule.label.empty() && !rule.patterns.empty()) rules.rules.push_back(std::move(rule));
  }
  return rules;
}

std::string plot_point_to_json_line(const PlotPoint& p) {
  json j;
  j["id"] = p.id;
  j["article_id"] = p.article_id;
  j["level"] = to_string(p.level);
  j["kind"] = to_string(p.kind);
  j["surface_text"] = p.surface_text;
  if (p.span) {
    j["span"] = {p.span->paragraph, p.span->begin, p.span->end};
  } else {
    j["span"] = nullptr;
  }
  j["meta"] = p.meta;
  return j.dump();
}

std::optional<PlotPoint> plot_point_from_json_line(const std::string& line) {
  json j = json::parse(line, nullptr, false);
  if (j.is_discarded() || !j.is_object()) return std::nullopt;
  try {
    PlotPoint p;
    p.id = j.at("id").get<std::string>();
    p.article_id = j.at("article_id").get<std::string>();
    auto level = plot_level_from_string(j.at("level").get<std::string>());
    auto kind = plot_kind_from_string(j.at("kind").get<std::string>());
    if (!level || !kind || level_of(*kind) != *level) return std::nullopt;
    p.level = *level;
    p.kind = *kind;
    p.surface_text = j.at("surface_text").get<std::string>();
    if (p.surface_text.empty()) return std::nullopt;
    if (j.contains("span") && !j["span"].is_null()) {
      auto arr = j["span"];
      if (!arr.is_array() || arr.size() != 3) return std::nullopt;
      p.span = Span{arr[0].get<size_t>(), arr[1].get<size_t>(), arr[2].get<size_t>()};
    }
    if (j.contains("meta")) {
      p.meta = j["meta"].get<std::map<std::string, std::string>>();
    }
    return p;
  } catch (const json::exception&) {
    return std::nullopt;
  }
}

void save_plot_points(const std::string& path, const std::vector<PlotPoint>& points) {
  std::ostringstream out;
  for (const auto& p : points) out << plot_point_to_json_line(p) << "\n";
  write_file(path, out.str());
}

std::vector<PlotPoint> load_plot_points(const std::string& path,
                                        std::vector<Diagnostic>* diagnostics) {
  std::vector<PlotPoint> points;
  std::vector<std::string> lines = read_lines(path);
  for (size_t i = 0; i < lines.size(); ++i) {
    if (lines[i].empty()) continue;
    auto p = plot_point_from_json_line(lines[i]);
    if (p) {
      points.push_back(std::move(*p));
    } else if (diagnostics) {
      diagnostics->push_back({path + ":" + std::to_string(i + 1), "corrupt plot record skipped"});
    }
  }
  return points;
}

std::vector<NerEntity> query_external_ner(const std::string& endpoint, const std::string& text,
                                          const HttpPoster& poster) {
  json body;
  body["text"] = text;
  HttpRequest req;
  req.url = endpoint;
  req.body = body.dump();
  auto res = poster(req);
  if (!res) throw ExternalNerError("NER endpoint unreachable: " + endpoint);
  if (res->status != 200) {
    throw ExternalNerError("NER endpoint returned status " + std::to_string(res->status));
  }
  json j = json::parse(res->body, nullptr, false);
  if (j.is_discarded() || !j.contains("entities") || !j["entities"].is_array()) {
    throw ExternalNerError("NER endpoint returned malformed JSON");
  }
  std::vector<NerEntity> entities;
  for (const auto& e : j["entities"]) {
    NerEntity ne;
    ne.surface = e.value("surface", "");
    ne.label = e.value("label", "");
    ne.start = e.value("start", 0u);
    ne.end = e.value("end", 0u);
    if (!ne.surface.empty() && !ne.label.empty()) entities.push_back(std::move(ne));
  }
  return entities;
}

std::vector<PlotPoint> lead_points_from_entities(const ArticleRecord& article,
                                                 const std::vector<NerEntity>& entities) {
  std::vector<PlotPoint> points;
  std::set<std::pair<int, std::string>> seen;
  for (const auto& e : entities) {
    auto kind = kind_for_entity_label(e.label);
    if (!kind) continue;
    auto key = std::make_pair(static_cast<int>(*kind), normalize_phrase(e.surface));
    if (!seen.insert(key).second) continue;
    points.push_back(make_point(article, *kind, e.surface));
  }
  return points;
}

}  // namespace newsplot
