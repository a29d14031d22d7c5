#include "newsplot/config.hpp"

#include "newsplot/text.hpp"

#include <chrono>
#include <cstdlib>
#include <sys/stat.h>

#include <algorithm>
#include <map>
#include <sstream>

namespace newsplot {

namespace {

std::string trim(const std::string& s) {
  size_t b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  size_t e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

std::string join_problems(const std::vector<std::string>& problems) {
  std::ostringstream out;
  out << "invalid config";
  for (const auto& p : problems) out << "\n  - " << p;
  return out.str();
}

bool file_exists(const std::string& path) {
  struct stat st{};
  return ::stat(path.c_str(), &st) == 0 && S_ISREG(st.st_mode);
}

std::string dir_of(const std::string& path) {
  size_t slash = path.find_last_of('/');
  if (slash == std::string::npos) return ".";
  if (slash == 0) return "/";
  return path.substr(0, slash);
}

std::string resolve(const std::string& base, const std::string& path) {
  if (path.empty() || path.front() == '/') return path;
  return base + "/" + path;
}

struct ParsedBool {
  bool ok;
  bool value;
};

ParsedBool parse_bool(const std::string& raw) {
  std::string v = to_lower_ascii(raw);
  if (v == "true" || v == "yes" || v == "1" || v == "on") return {true, true};
  if (v == "false" || v == "no" || v == "0" || v == "off") return {true, false};
  return {false, false};
}

}  // namespace

ConfigError::ConfigError(std::vector<std::string> problems)
    : Error(join_problems(problems)), problems_(std::move(problems)) {}

int64_t PipelineConfig::now() const {
  if (fixed_clock) return *fixed_clock;
  return std::chrono::duration_cast<std::chrono::seconds>(
             std::chrono::system_clock::now().time_since_epoch())
      .count();
}

PipelineConfig load_config(const std::string& path) {
  std::vector<std::string> lines = read_lines(path);
  PipelineConfig config;
  config.base_dir = dir_of(path);
  std::vector<std::string> problems;

  // section -> key -> (value, line). Feeds keep insertion order separately.
  std::string section;
  std::map<std::string, std::map<std::string, std::string>> values;
  std::vector<std::pair<std::string, std::string>> feed_entries;

  static const std::map<std::string, std::vector<std::string>> known_keys = {
      {"resources",
       {"gazetteer", "causal_cues", "opinion_cues", "sentiment_positive",
        "sentiment_negative", "tactics"}},
      {"store", {"articles", "plots", "graph", "report"}},
      {"generate",
       {"backend", "endpoint", "model", "auth_env", "timeout_seconds",
        "max_retries", "lead_body_word_cap", "tail_word_cap", "include_why",
        "tail_tactic_only", "evidence_k"}},
      {"evaluate", {"reference", "gold", "annotations", "likert"}},
      {"pipeline", {"clock"}},
  };

  for (size_t i = 0; i < lines.size(); ++i) {
    std::string line = trim(lines[i]);
    if (line.empty() || line.front() == '#' || line.front() == ';') continue;
    if (line.front() == '[') {
      if (line.back() != ']') {
        problems.push_back("line " + std::to_string(i + 1) +
                           ": unterminated section header");
        continue;
      }
      section = trim(line.substr(1, line.size() - 2));
      if (section != "feeds" && !known_keys.count(section)) {
        problems.push_back("line " + std::to_string(i + 1) +
                           ": unknown section [" + section + "]");
        section.clear();
      }
      continue;
    }
    size_t eq = line.find('=');
    if (eq == std::string::npos) {
      problems.push_back("line " + std::to_string(i + 1) +
                         ": expected key = value");
      continue;
    }
    std::string key = trim(line.substr(0, eq));
    std::string value = trim(line.substr(eq + 1));
    if (key.empty()) {
      problems.push_back("line " + std::to_string(i + 1) + ": empty key");
      continue;
    }
    if (section.empty()) {
      problems.push_back("line " + std::to_string(i + 1) +
                         ": key outside any section");
      continue;
    }
    if (section == "feeds") {
      feed_entries.emplace_back(key, value);
      continue;
    }
    const auto& allowed = known_keys.at(section);
    if (std::find(allowed.begin(), allowed.end(), key) == allowed.end()) {
      problems.push_back("line " + std::to_string(i + 1) + ": unknown key '" +
                         key + "' in section [" + section + "]");
      continue;
    }
    values[section][key] = value;
  }

  for (const auto& [name, url] : feed_entries) {
    FeedSource source;
    source.name = name;
    source.url = url;
    source.kind = FeedKind::Rss;
    config.feeds.push_back(source);
  }

  auto get = [&](const std::string& sec,
                 const std::string& key) -> std::optional<std::string> {
    auto sit = values.find(sec);
    if (sit == values.end()) return std::nullopt;
    auto kit = sit->second.find(key);
    if (kit == sit->second.end()) return std::nullopt;
    return kit->second;
  };
  auto get_path = [&](const std::string& sec, const std::string& key,
                      std::string& target) {
    if (auto v = get(sec, key)) target = resolve(config.base_dir, *v);
  };
  auto get_size = [&](const std::string& sec, const std::string& key,
                      size_t& target) {
    auto v = get(sec, key);
    if (!v) return;
    try {
      size_t pos = 0;
      long long n = std::stoll(*v, &pos);
      if (pos != v->size() || n < 0) throw std::invalid_argument("range");
      target = static_cast<size_t>(n);
    } catch (const std::exception&) {
      problems.push_back("[" + sec + "] " + key + ": expected a non-negative integer, got '" +
                         *v + "'");
    }
  };
  auto get_flag = [&](const std::string& sec, const std::string& key,
                      bool& target) {
    auto v = get(sec, key);
    if (!v) return;
    ParsedBool b = parse_bool(*v);
    if (!b.ok) {
      problems.push_back("[" + sec + "] " + key + ": expected a boolean, got '" + *v + "'");
      return;
    }
    target = b.value;
  };

  get_path("resources", "gazetteer", config.gazetteer_path);
  get_path("resources", "causal_cues", config.causal_cues_path);
  get_path("resources", "opinion_cues", config.opinion_cues_path);
  get_path("resources", "sentiment_positive", config.sentiment_positive_path);
  get_path("resources", "sentiment_negative", config.sentiment_negative_path);
  get_path("resources", "tactics", config.tactics_path);

  config.articles_path = resolve(config.base_dir, config.articles_path);
  config.plots_path = resolve(config.base_dir, config.plots_path);
  config.graph_path = resolve(config.base_dir, config.graph_path);
  config.report_path = resolve(config.base_dir, config.report_path);
  get_path("store", "articles", config.articles_path);
  get_path("store", "plots", config.plots_path);
  get_path("store", "graph", config.graph_path);
  get_path("store", "report", config.report_path);

  StubBackend stub;
  RemoteBackend remote;
  std::string backend_name = "stub";
  if (auto v = get("generate", "backend")) backend_name = to_lower_ascii(*v);
  if (auto v = get("generate", "endpoint")) remote.endpoint = *v;
  if (auto v = get("generate", "model")) remote.model = *v;
  if (auto v = get("generate", "auth_env")) remote.auth_env = *v;
  size_t timeout_seconds = static_cast<size_t>(remote.timeout_seconds);
  size_t max_retries = static_cast<size_t>(remote.max_retries);
  get_size("generate", "timeout_seconds", timeout_seconds);
  get_size("generate", "max_retries", max_retries);
  remote.timeout_seconds = static_cast<int>(timeout_seconds);
  remote.max_retries = static_cast<int>(max_retries);
  get_size("generate", "lead_body_word_cap", config.generation.lead_body_word_cap);
  get_size("generate", "tail_word_cap", config.generation.tail_word_cap);
  get_flag("generate", "include_why", config.prompt_options.include_why);
  get_flag("generate", "tail_tactic_only", config.prompt_options.tail_tactic_only);
  get_size("generate", "evidence_k", config.evidence_k);

  if (backend_name == "stub") {
    config.generation.backend = stub;
  } else if (backend_name == "remote") {
    if (remote.endpoint.empty())
      problems.push_back("[generate] endpoint: required for the remote backend");
    config.generation.backend = remote;
  } else {
    problems.push_back("[generate] backend: expected 'stub' or 'remote', got '" +
                       backend_name + "'");
  }
  if (config.generation.lead_body_word_cap == 0)
    problems.push_back("[generate] lead_body_word_cap: must be positive");
  if (config.generation.tail_word_cap == 0)
    problems.push_back("[generate] tail_word_cap: must be positive");
  if (config.evidence_k == 0)
    problems.push_back("[generate] evidence_k: must be positive");

  get_path("evaluate", "reference", config.reference_path);
  get_path("evaluate", "gold", config.gold_path);
  get_path("evaluate", "annotations", config.annotations_path);
  get_path("evaluate", "likert", config.likert_path);

  if (auto v = get("pipeline", "clock")) {
    if (to_lower_ascii(*v) == "system") {
      config.fixed_clock.reset();
    } else if (auto t = parse_iso8601(*v)) {
      config.fixed_clock = *t;
    } else {
      problems.push_back("[pipeline] clock: expected 'system' or an ISO-8601 instant, got '" +
                         *v + "'");
    }
  }

  if (!problems.empty()) throw ConfigError(std::move(problems));
  return config;
}

std::vector<std::string> missing_resources(const PipelineConfig& config) {
  std::vector<std::string> problems;
  auto require = [&](const std::string& key, const std::string& path) {
    if (path.empty())
      problems.push_back("[resources] " + key + ": not configured");
    else if (!file_exists(path))
      problems.push_back("[resources] " + key + ": file not found: " + path);
  };
  require("gazetteer", config.gazetteer_path);
  require("causal_cues", config.causal_cues_path);
  require("opinion_cues", config.opinion_cues_path);
  require("sentiment_positive", config.sentiment_positive_path);
  require("sentiment_negative", config.sentiment_negative_path);
  require("tactics", config.tactics_path);
  return problems;
}

}  // namespace newsplot
