#pragma once

#include <optional>
#include <string>
#include <vector>

#include "newsplot/corpus.hpp"
#include "newsplot/report.hpp"
#include "newsplot/util.hpp"

namespace newsplot {

// Carries every problem found, so one run reports the whole set.
class ConfigError : public Error {
 public:
  explicit ConfigError(std::vector<std::string> problems);
  const std::vector<std::string>& problems() const { return problems_; }

 private:
  std::vector<std::string> problems_;
};

struct PipelineConfig {
  // [feeds] name = url
  std::vector<FeedSource> feeds;

  // [resources]
  std::string gazetteer_path;
  std::string causal_cues_path;
  std::string opinion_cues_path;
  std::string sentiment_positive_path;
  std::string sentiment_negative_path;
  std::string tactics_path;

  // [store]
  std::string articles_path = "data/articles.ndjson";
  std::string plots_path = "data/plots.ndjson";
  std::string graph_path = "data/epg.ttl";
  std::string report_path = "data/report.json";

  // [generate]
  GenerationConfig generation;
  PromptOptions prompt_options;
  size_t evidence_k = 4;

  // [evaluate] defaults, optional; flags override
  std::string reference_path;
  std::string gold_path;
  std::string annotations_path;
  std::string likert_path;

  // [pipeline] clock = system | fixed ISO-8601 instant
  std::optional<int64_t> fixed_clock;

  // Directory of the config file; relative paths resolve against it.
  std::string base_dir;

  int64_t now() const;
};

// Parses and structurally validates the INI-style config; unknown sections
// or keys, bad enums, and malformed numbers are all collected into one
// ConfigError.
PipelineConfig load_config(const std::string& path);

// Existence checks for the resource files the extractors need.
std::vector<std::string> missing_resources(const PipelineConfig& config);

}  // namespace newsplot
