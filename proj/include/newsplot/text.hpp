#pragma once

#include <cstddef>
#include <string>
#include <vector>

namespace newsplot {

// Tokenization and normalization shared by the extractors, the report
// coverage check, and the evaluation metrics. Supp/Cont matching and keyword
// coverage deliberately share normalize_phrase so the two stay consistent.

struct TokenSpan {
  std::string text;
  size_t begin = 0;  // byte offsets into the source string
  size_t end = 0;
};

// Alphanumeric runs, positions preserved. "U.S Coast" -> ["U","S","Coast"].
std::vector<TokenSpan> scan_tokens(const std::string& text);

// Lowercased alphanumeric tokens (ROUGE / term-frequency tokenization).
std::vector<std::string> alnum_tokens(const std::string& text);

// Whitespace-separated word count (generation caps).
size_t word_count(const std::string& text);

std::string to_lower_ascii(const std::string& s);

// Lowercase, hyphens to spaces, other punctuation dropped, whitespace
// collapsed. The shared key for dedup, coverage, and Supp/Cont matching.
std::string normalize_phrase(const std::string& s);

// Whole-phrase containment on normalized token boundaries.
bool contains_phrase(const std::string& text, const std::string& phrase);

struct SentenceSpan {
  std::string text;
  size_t begin = 0;
  size_t end = 0;
};

// Terminal-punctuation splitter: [.!?]+ (plus closing quote) followed by
// whitespace and a capital or opening quote ends a sentence, except after a
// blocklisted abbreviation. End of input always ends the last sentence.
std::vector<SentenceSpan> split_sentences(const std::string& text);

// Collapse internal whitespace runs to single spaces and trim the ends.
std::string normalize_whitespace(const std::string& s);

bool is_stopword(const std::string& lower_token);

}  // namespace newsplot
