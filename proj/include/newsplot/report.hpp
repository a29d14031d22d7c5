#pragma once

#include <map>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "newsplot/graph.hpp"
#include "newsplot/http.hpp"
#include "newsplot/util.hpp"

namespace newsplot {

enum class Section { Lead, Body, Tail };
const char* to_string(Section s);

struct NarrativePromptSet {
  std::string event_query;
  std::vector<std::string> lead;
  std::vector<std::string> body;
  std::vector<std::string> tail;
  std::map<std::string, std::string> provenance;  // keyword -> plot point IRI

  const std::vector<std::string>& section(Section s) const;
};

struct PromptOptions {
  bool include_why = true;       // Why values join the Lead keywords
  bool tail_tactic_only = true;  // Tail keeps PersTactic only
};

struct StubBackend {
  bool operator==(const StubBackend&) const = default;
};

struct RemoteBackend {
  std::string endpoint;
  std::string auth_env;  // environment variable holding the bearer token
  std::string model;
  int timeout_seconds = 30;
  int max_retries = 3;
  bool operator==(const RemoteBackend&) const = default;
};

using BackendSpec = std::variant<StubBackend, RemoteBackend>;

std::string backend_id(const BackendSpec& spec);

struct GenerationConfig {
  size_t lead_body_word_cap = 500;
  size_t tail_word_cap = 100;
  BackendSpec backend = StubBackend{};

  size_t cap_for(Section s) const {
    return s == Section::Tail ? tail_word_cap : lead_body_word_cap;
  }
};

struct SectionReport {
  std::string text;
  std::vector<std::string> keywords;    // prompt keywords, section order
  std::vector<std::string> matched;     // keywords found in the text
  std::vector<std::string> provenance;  // plot point IRIs, keyword order
  double coverage = 0.0;                // |matched| / |keywords|
  bool operator==(const SectionReport&) const = default;
};

struct IntelligenceReport {
  std::string event_query;
  std::optional<SectionReport> lead;
  std::optional<SectionReport> body;
  std::optional<SectionReport> tail;
  int64_t generated_at = 0;
  std::string backend_id;
  bool operator==(const IntelligenceReport&) const = default;
};

class EmptyRetrieval : public Error {
 public:
  explicit EmptyRetrieval(const std::string& what) : Error(what) {}
};

class EmptySection : public Error {
 public:
  explicit EmptySection(const std::string& what) : Error(what) {}
};

class BackendTimeout : public Error {
 public:
  explicit BackendTimeout(const std::string& what) : Error(what) {}
};

class BackendHttp : public Error {
 public:
  BackendHttp(int status, const std::string& what) : Error(what), status_(status) {}
  int status() const { return status_; }

 private:
  int status_;
};

class CapUnsatisfiable : public Error {
 public:
  explicit CapUnsatisfiable(const std::string& what) : Error(what) {}
};

// Runs the level templates against the graph and orders each section's
// keywords by point kind, then canonical term order, deduplicated
// case-insensitively. Throws EmptyRetrieval when every section is empty.
NarrativePromptSet build_prompt_set(const EventPlotGraph& g, const std::string& event,
                                    const PromptOptions& options = {});

// Fixed instruction sentence plus the angle-bracket keyword list.
std::string linearize(const NarrativePromptSet& ps, Section section);

// Splits a linearized prompt back into its keyword list (the stub backend
// regenerates text from exactly these).
std::vector<std::string> prompt_keywords(const std::string& prompt);

// Stub: fixed carrier text embedding the keyword list verbatim, always within
// cap or CapUnsatisfiable. Remote: POST {model, prompt, max_tokens}, retries
// with exponential backoff, reply truncated at the last sentence boundary
// within cap. The poster is injectable for tests.
std::string generate_section(const BackendSpec& backend, const std::string& prompt, size_t cap,
                             const HttpPoster& poster = default_http_poster());

// Longest prefix of whole sentences whose word count fits the cap; falls back
// to a hard word cut when even the first sentence is too long.
std::string truncate_to_cap(const std::string& text, size_t cap);

IntelligenceReport assemble_report(const NarrativePromptSet& ps,
                                   const std::optional<std::string>& lead_text,
                                   const std::optional<std::string>& body_text,
                                   const std::optional<std::string>& tail_text,
                                   const std::string& backend_id, int64_t generated_at);

// Prompt building, per-section generation, and assembly in one call; skips
// sections with no keywords.
IntelligenceReport generate_report(const EventPlotGraph& g, const std::string& event,
                                   const GenerationConfig& config,
                                   const PromptOptions& options = {}, int64_t generated_at = 0,
                                   const HttpPoster& poster = default_http_poster());

std::string report_to_json(const IntelligenceReport& r);
std::optional<IntelligenceReport> report_from_json(const std::string& text);

// Markdown-ish rendering with Lead/Body/Tail headings.
std::string render_report(const IntelligenceReport& r);

}  // namespace newsplot
