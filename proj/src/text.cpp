#include "newsplot/text.hpp"

#include <algorithm>
#include <cctype>
#include <unordered_set>

namespace newsplot {

namespace {

bool is_alnum(unsigned char c) { return std::isalnum(c) != 0; }

bool is_space(unsigned char c) { return std::isspace(c) != 0; }

// UTF-8 aware enough for the typographic quote marks used in news text.
bool starts_with(const std::string& s, size_t i, const char* utf8) {
  size_t n = std::char_traits<char>::length(utf8);
  return s.compare(i, n, utf8) == 0;
}

}  // namespace

std::vector<TokenSpan> scan_tokens(const std::string& text) {
  std::vector<TokenSpan> out;
  size_t i = 0;
  while (i < text.size()) {
    if (is_alnum(text[i])) {
      size_t j = i;
      while (j < text.size() && is_alnum(text[j])) ++j;
      out.push_back({text.substr(i, j - i), i, j});
      i = j;
    } else {
      ++i;
    }
  }
  return out;
}

std::vector<std::string> alnum_tokens(const std::string& text) {
  std::vector<std::string> out;
  for (const auto& t : scan_tokens(text)) out.push_back(to_lower_ascii(t.text));
  return out;
}

size_t word_count(const std::string& text) {
  size_t n = 0;
  bool in_word = false;
  for (unsigned char c : text) {
    if (is_space(c)) {
      in_word = false;
    } else if (!in_word) {
      in_word = true;
      ++n;
    }
  }
  return n;
}

std::string to_lower_ascii(const std::string& s) {
  std::string out = s;
  std::transform(out.begin(), out.end(), out.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return out;
}

std::string normalize_phrase(const std::string& s) {
  std::string out;
  out.reserve(s.size());
  for (unsigned char c : s) {
    if (is_alnum(c)) {
      out.push_back(static_cast<char>(std::tolower(c)));
    } else if (c == '-' || is_space(c)) {
      if (!out.empty() && out.back() != ' ') out.push_back(' ');
    }
    // other punctuation dropped
  }
  while (!out.empty() && out.back() == ' ') out.pop_back();
  return out;
}

bool contains_phrase(const std::string& text, const std::string& phrase) {
  std::string t = " " + normalize_phrase(text) + " ";
  std::string p = normalize_phrase(phrase);
  if (p.empty()) return false;
  return t.find(" " + p + " ") != std::string::npos;
}

namespace {

// Abbreviations whose trailing period does not end a sentence.
const std::unordered_set<std::string>& abbreviations() {
  static const std::unordered_set<std::string> kAbbrev = {
      "mr",   "mrs", "ms",  "dr",  "prof", "gen", "sen", "rep", "st",
      "mt",   "no",  "vs",  "etc", "e.g",  "i.e", "u.s", "u.k", "u.n",
      "jan",  "feb", "mar", "apr", "jun",  "jul", "aug", "sep", "sept",
      "oct",  "nov", "dec", "approx"};
  return kAbbrev;
}

bool ends_with_abbreviation(const std::string& text, size_t period_pos) {
  // Word immediately before the period, dots kept so "u.s" survives.
  size_t end = period_pos;
  size_t begin = end;
  while (begin > 0) {
    unsigned char c = text[begin - 1];
    if (is_alnum(c) || c == '.') {
      --begin;
    } else {
      break;
    }
  }
  if (begin == end) return false;
  std::string word = to_lower_ascii(text.substr(begin, end - begin));
  // Single letters ("J. Smith") behave like abbreviations too.
  if (word.size() == 1 && std::isalpha(static_cast<unsigned char>(word[0]))) return true;
  return abbreviations().count(word) > 0;
}

bool is_opening_context(const std::string& text, size_t i) {
  if (i >= text.size()) return true;  // end of input
  unsigned char c = text[i];
  if (std::isupper(c) || std::isdigit(c)) return true;
  if (c == '"' || c == '\'') return true;
  if (starts_with(text, i, "\xE2\x80\x9C")) return true;  // left double quote
  return false;
}

}  // namespace

std::vector<SentenceSpan> split_sentences(const std::string& text) {
  std::vector<SentenceSpan> out;
  size_t start = 0;
  size_t i = 0;
  auto flush = [&](size_t end) {
    while (start < end && is_space(static_cast<unsigned char>(text[start]))) ++start;
    size_t e = end;
    while (e > start && is_space(static_cast<unsigned char>(text[e - 1]))) --e;
    if (e > start) out.push_back({text.substr(start, e - start), start, e});
    start = end;
  };
  while (i < text.size()) {
    char c = text[i];
    if (c == '.' || c == '!' || c == '?') {
      if (c == '.' && ends_with_abbreviation(text, i)) {
        ++i;
        continue;
      }
      size_t j = i + 1;
      while (j < text.size() && (text[j] == '.' || text[j] == '!' || text[j] == '?')) ++j;
      // Closing quote may trail the terminal punctuation.
      if (j < text.size() && text[j] == '"') ++j;
      if (starts_with(text, j, "\xE2\x80\x9D")) j += 3;
      size_t k = j;
      while (k < text.size() && is_space(static_cast<unsigned char>(text[k]))) ++k;
      if (k > j && is_opening_context(text, k)) {
        flush(j);
        i = k;
        continue;
      }
      if (k >= text.size()) {
        flush(j);
        i = k;
        continue;
      }
      i = j;
    } else {
      ++i;
    }
  }
  flush(text.size());
  return out;
}

std::string normalize_whitespace(const std::string& s) {
  std::string out;
  out.reserve(s.size());
  for (unsigned char c : s) {
    if (is_space(c)) {
      if (!out.empty() && out.back() != ' ') out.push_back(' ');
    } else {
      out.push_back(static_cast<char>(c));
    }
  }
  while (!out.empty() && out.back() == ' ') out.pop_back();
  return out;
}

bool is_stopword(const std::string& lower_token) {
  static const std::unordered_set<std::string> kStop = {
      "a",    "an",   "and",  "are",  "as",    "at",   "be",   "been", "but",
      "by",   "for",  "from", "had",  "has",   "have", "he",   "her",  "his",
      "i",    "in",   "into", "is",   "it",    "its",  "of",   "on",   "or",
      "she",  "that", "the",  "their", "them", "they", "this", "to",   "was",
      "we",   "were", "which", "who", "will",  "with", "you",  "not",  "all",
      "also", "after", "over", "said"};
  return kStop.count(lower_token) > 0;
}

}  // namespace newsplot
