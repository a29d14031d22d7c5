#include "newsplot/report.hpp"

#include <cctype>
#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <set>
#include <thread>

#include "newsplot/sparql.hpp"
#include "newsplot/text.hpp"
#include "json.hpp"

namespace newsplot {

using nlohmann::json;

const char* to_string(Section s) {
  switch (s) {
    case Section::Lead: return "lead";
    case Section::Body: return "body";
    case Section::Tail: return "tail";
  }
  return "lead";
}

const std::vector<std::string>& NarrativePromptSet::section(Section s) const {
  switch (s) {
    case Section::Lead: return lead;
    case Section::Body: return body;
    case Section::Tail: return tail;
  }
  return lead;
}

std::string backend_id(const BackendSpec& spec) {
  if (std::holds_alternative<StubBackend>(spec)) return "stub";
  const RemoteBackend& r = std::get<RemoteBackend>(spec);
  return "remote:" + (r.model.empty() ? r.endpoint : r.model);
}

namespace {

// Keywords for one section, ordered by point kind then by the canonical
// (value, point) term order the engine already guarantees.
void fill_section(const EventPlotGraph& g, const std::string& event,
                  const std::vector<std::string>& classes, std::vector<std::string>& keywords,
                  std::map<std::string, std::string>& provenance) {
  std::set<std::string> seen;
  for (const auto& cls : classes) {
    SelectQuery q = subclass_value_template({cls}, event);
    BindingSet rows = execute(g, q);
    for (const auto& row : rows.rows) {
      if (!std::holds_alternative<Literal>(row[0])) continue;
      const std::string& value = std::get<Literal>(row[0]).lexical;
      if (value.empty()) continue;
      std::string key = normalize_phrase(value);
      if (!seen.insert(key).second) continue;
      keywords.push_back(value);
      if (!provenance.count(value) && std::holds_alternative<Iri>(row[1])) {
        provenance[value] = std::get<Iri>(row[1]).value;
      }
    }
  }
}

}  // namespace

NarrativePromptSet build_prompt_set(const EventPlotGraph& g, const std::string& event,
                                    const PromptOptions& options) {
  NarrativePromptSet ps;
  ps.event_query = event;

  std::vector<std::string> lead_cls = {"Who", "What", "When", "Where"};
  if (options.include_why) lead_cls.push_back("Why");
  std::vector<std::string> tail_cls;
  if (options.tail_tactic_only) {
    tail_cls = {"PersTactic"};
  } else {
    tail_cls = eno::tail_classes();
  }

  fill_section(g, event, lead_cls, ps.lead, ps.provenance);
  fill_section(g, event, eno::body_classes(), ps.body, ps.provenance);
  fill_section(g, event, tail_cls, ps.tail, ps.provenance);

  if (ps.lead.empty() && ps.body.empty() && ps.tail.empty()) {
    throw EmptyRetrieval("no plot points retrieved for event \"" + event + "\"");
  }
  return ps;
}

namespace {

const char* instruction_for(Section s) {
  switch (s) {
    case Section::Lead:
      return "Write the lead section of an intelligence report stating the principal "
             "facts of the event, grounded in these plot points:";
    case Section::Body:
      return "Write the body section of the report laying out the supporting material, "
             "grounded in these plot points:";
    case Section::Tail:
      return "Write the tail section of the report noting commentary and framing, "
             "grounded in these plot points:";
  }
  return "";
}

std::string join(const std::vector<std::string>& parts, const std::string& sep) {
  std::string out;
  for (size_t i = 0; i < parts.size(); ++i) {
    if (i) out += sep;
    out += parts[i];
  }
  return out;
}

}  // namespace

std::string linearize(const NarrativePromptSet& ps, Section section) {
  const std::vector<std::string>& keywords = ps.section(section);
  if (keywords.empty()) {
    throw EmptySection(std::string(to_string(section)) + " section has no keywords");
  }
  return std::string(instruction_for(section)) + " <" + join(keywords, ", ") + ">";
}

std::vector<std::string> prompt_keywords(const std::string& prompt) {
  size_t open = prompt.find('<');
  size_t close = prompt.rfind('>');
  if (open == std::string::npos || close == std::string::npos || close <= open) return {};
  std::string inner = prompt.substr(open + 1, close - open - 1);
  std::vector<std::string> keywords;
  size_t start = 0;
  while (start <= inner.size()) {
    size_t sep = inner.find(", ", start);
    std::string part =
        inner.substr(start, sep == std::string::npos ? std::string::npos : sep - start);
    if (!part.empty()) keywords.push_back(part);
    if (sep == std::string::npos) break;
    start = sep + 2;
  }
  return keywords;
}

std::string truncate_to_cap(const std::string& text, size_t cap) {
  if (word_count(text) <= cap) return text;
  std::vector<SentenceSpan> sentences = split_sentences(text);
  size_t words = 0;
  size_t end = 0;
  for (const auto& s : sentences) {
    size_t n = word_count(s.text);
    if (words + n > cap) break;
    words += n;
    end = s.end;
  }
  if (end == 0) {
    // Even the first sentence is over the cap; cut at the cap'th word.
    std::vector<TokenSpan> tokens;
    size_t count = 0;
    size_t pos = 0;
    while (pos < text.size() && count < cap) {
      while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
      size_t start = pos;
      while (pos < text.size() && !std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
      if (pos > start) {
        ++count;
        end = pos;
      }
    }
  }
  std::string out = text.substr(0, end);
  while (!out.empty() && std::isspace(static_cast<unsigned char>(out.back()))) out.pop_back();
  return out;
}

namespace {

std::string stub_text(const std::string& prompt, size_t cap) {
  size_t open = prompt.find('<');
  size_t close = prompt.rfind('>');
  std::string inner;
  if (open != std::string::npos && close != std::string::npos && close > open) {
    inner = prompt.substr(open + 1, close - open - 1);
  }
  if (inner.empty()) throw EmptySection("prompt carries no keywords");

  // The keyword list is embedded contiguously, so every prompt keyword
  // appears verbatim and coverage is 1.0 by construction. All other words
  // are this fixed frame.
  const std::string head = "This section reports the retrieved event plot points. "
                           "The key items on record are: ";
  const std::string tail = ". Each item restates a stored plot point verbatim.";
  std::string text = head + inner + tail;
  if (word_count(text) > cap) {
    throw CapUnsatisfiable("prompt keywords cannot fit within a " + std::to_string(cap) +
                           " word cap");
  }
  return text;
}

std::string remote_text(const RemoteBackend& backend, const std::string& prompt, size_t cap,
                        const HttpPoster& poster) {
  json body;
  body["model"] = backend.model;
  body["prompt"] = prompt;
  body["max_tokens"] = 2 * cap;

  HttpRequest req;
  req.url = backend.endpoint;
  req.body = body.dump();
  req.timeout_seconds = backend.timeout_seconds;
  if (!backend.auth_env.empty()) {
    const char* token = std::getenv(backend.auth_env.c_str());
    if (token && *token) req.headers["Authorization"] = std::string("Bearer ") + token;
  }

  std::optional<HttpResponse> res;
  int attempts = backend.max_retries + 1;
  for (int attempt = 0; attempt < attempts; ++attempt) {
    if (attempt > 0) {
      auto delay = std::chrono::milliseconds(50LL << (attempt - 1));
      std::this_thread::sleep_for(delay);
    }
    res = poster(req);
    if (!res) continue;                                   // transport failure
    if (res->status >= 500 || res->status == 429) continue;  // retryable
    break;
  }
  if (!res) {
    throw BackendTimeout("backend unreachable after " + std::to_string(attempts) +
                         " attempts: " + backend.endpoint);
  }
  if (res->status != 200) {
    throw BackendHttp(res->status,
                      "backend returned status " + std::to_string(res->status));
  }
  json reply = json::parse(res->body, nullptr, false);
  if (reply.is_discarded() || !reply.contains("text") || !reply["text"].is_string()) {
    throw BackendHttp(res->status, "backend response is not a {\"text\": ...} object");
  }
  return truncate_to_cap(reply["text"].get<std::string>(), cap);
}

}  // namespace

std::string generate_section(const BackendSpec& backend, const std::string& prompt, size_t cap,
                             const HttpPoster& poster) {
  if (std::holds_alternative<StubBackend>(backend)) return stub_text(prompt, cap);
  return remote_text(std::get<RemoteBackend>(backend), prompt, cap, poster);
}

namespace {

std::optional<SectionReport> section_report(const std::vector<std::string>& keywords,
                                            const std::optional<std::string>& text,
                                            const std::map<std::string, std::string>& provenance) {
  if (keywords.empty() || !text) return std::nullopt;
  SectionReport sr;
  sr.text = *text;
  sr.keywords = keywords;
  for (const auto& kw : keywords) {
    if (contains_phrase(sr.text, kw)) sr.matched.push_back(kw);
    auto it = provenance.find(kw);
    if (it != provenance.end()) sr.provenance.push_back(it->second);
  }
  sr.coverage = keywords.empty()
                    ? 0.0
                    : static_cast<double>(sr.matched.size()) / static_cast<double>(keywords.size());
  return sr;
}

}  // namespace

IntelligenceReport assemble_report(const NarrativePromptSet& ps,
                                   const std::optional<std::string>& lead_text,
                                   const std::optional<std::string>& body_text,
                                   const std::optional<std::string>& tail_text,
                                   const std::string& backend_id, int64_t generated_at) {
  IntelligenceReport r;
  r.event_query = ps.event_query;
  r.lead = section_report(ps.lead, lead_text, ps.provenance);
  r.body = section_report(ps.body, body_text, ps.provenance);
  r.tail = section_report(ps.tail, tail_text, ps.provenance);
  r.backend_id = backend_id;
  r.generated_at = generated_at;
  return r;
}

IntelligenceReport generate_report(const EventPlotGraph& g, const std::string& event,
                                   const GenerationConfig& config, const PromptOptions& options,
                                   int64_t generated_at, const HttpPoster& poster) {
  NarrativePromptSet ps = build_prompt_set(g, event, options);
  std::optional<std::string> lead_text, body_text, tail_text;
  for (Section s : {Section::Lead, Section::Body, Section::Tail}) {
    if (ps.section(s).empty()) continue;
    std::string text = generate_section(config.backend, linearize(ps, s), config.cap_for(s),
                                        poster);
    switch (s) {
      case Section::Lead: lead_text = std::move(text); break;
      case Section::Body: body_text = std::move(text); break;
      case Section::Tail: tail_text = std::move(text); break;
    }
  }
  return assemble_report(ps, lead_text, body_text, tail_text, backend_id(config.backend),
                         generated_at);
}

namespace {

json section_to_json(const SectionReport& sr) {
  json j;
  j["text"] = sr.text;
  j["keywords"] = sr.keywords;
  j["matched"] = sr.matched;
  j["provenance"] = sr.provenance;
  j["coverage"] = sr.coverage;
  return j;
}

std::optional<SectionReport> section_from_json(const json& j) {
  if (!j.is_object()) return std::nullopt;
  try {
    SectionReport sr;
    sr.text = j.at("text").get<std::string>();
    sr.keywords = j.at("keywords").get<std::vector<std::string>>();
    sr.matched = j.at("matched").get<std::vector<std::string>>();
    sr.provenance = j.at("provenance").get<std::vector<std::string>>();
    sr.coverage = j.at("coverage").get<double>();
    return sr;
  } catch (const json::exception&) {
    return std::nullopt;
  }
}

}  // namespace

std::string report_to_json(const IntelligenceReport& r) {
  json j;
  j["event_query"] = r.event_query;
  j["backend_id"] = r.backend_id;
  j["generated_at"] = format_iso8601(r.generated_at);
  json sections = json::object();
  if (r.lead) sections["lead"] = section_to_json(*r.lead);
  if (r.body) sections["body"] = section_to_json(*r.body);
  if (r.tail) sections["tail"] = section_to_json(*r.tail);
  j["sections"] = sections;
  return j.dump(2) + "\n";
}

std::optional<IntelligenceReport> report_from_json(const std::string& text) {
  json j = json::parse(text, nullptr, false);
  if (j.is_discarded() || !j.is_object()) return std::nullopt;
  try {
    IntelligenceReport r;
    r.event_query = j.at("event_query").get<std::string>();
    r.backend_id = j.at("backend_id").get<std::string>();
    auto ts = parse_iso8601(j.at("generated_at").get<std::string>());
    if (!ts) return std::nullopt;
    r.generated_at = *ts;
    const json& sections = j.at("sections");
    if (sections.contains("lead")) r.lead = section_from_json(sections["lead"]);
    if (sections.contains("body")) r.body = section_from_json(sections["body"]);
    if (sections.contains("tail")) r.tail = section_from_json(sections["tail"]);
    return r;
  } catch (const json::exception&) {
    return std::nullopt;
  }
}

std::string render_report(const IntelligenceReport& r) {
  std::string out = "# Intelligence Report: " + r.event_query + "\n";
  auto add = [&](const char* title, const std::optional<SectionReport>& sr) {
    if (!sr) return;
    out += "\n## " + std::string(title) + "\n" + sr->text + "\n";
  };
  add("Lead", r.lead);
  add("Body", r.body);
  add("Tail", r.tail);
  out += "\nBackend: " + r.backend_id + "\nGenerated: " + format_iso8601(r.generated_at) + "\n";
  auto cov = [&](const char* name, const std::optional<SectionReport>& sr) {
    if (!sr) return;
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%s coverage: %.2f\n", name, sr->coverage);
    out += buf;
  };
  cov("Lead", r.lead);
  cov("Body", r.body);
  cov("Tail", r.tail);
  return out;
}

}  // namespace newsplot
