#include "newsplot/pipeline.hpp"

#include <cstdio>
#include <filesystem>
#include <map>
#include <optional>
#include <sstream>

#include "json.hpp"

#include "newsplot/evaluate.hpp"
#include "newsplot/extract.hpp"
#include "newsplot/graph.hpp"
#include "newsplot/http.hpp"
#include "newsplot/report.hpp"
#include "newsplot/sparql.hpp"

namespace newsplot {

namespace {

using nlohmann::json;

bool file_exists(const std::string& path) {
  std::error_code ec;
  return std::filesystem::is_regular_file(path, ec);
}

void ensure_parent_dir(const std::string& path) {
  std::filesystem::path p(path);
  if (p.has_parent_path()) {
    std::error_code ec;
    std::filesystem::create_directories(p.parent_path(), ec);
  }
}

std::string fixed4(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.4f", v);
  return buf;
}

// Maps a URL onto a saved file under `dir`: first the URL's full path
// component, then just its basename. Strings without a scheme are treated
// as paths under `dir` directly.
Fetcher file_fetcher(const std::string& dir) {
  return [dir](const std::string& url) -> std::optional<std::string> {
    std::string path = url;
    size_t scheme = url.find("://");
    if (scheme != std::string::npos) {
      size_t slash = url.find('/', scheme + 3);
      path = (slash == std::string::npos) ? "" : url.substr(slash + 1);
    }
    std::vector<std::string> candidates;
    if (!path.empty()) candidates.push_back(dir + "/" + path);
    size_t base = url.find_last_of('/');
    std::string basename = (base == std::string::npos) ? url : url.substr(base + 1);
    if (!basename.empty()) candidates.push_back(dir + "/" + basename);
    for (const auto& candidate : candidates) {
      if (!file_exists(candidate)) continue;
      try {
        return read_file(candidate);
      } catch (const IoFailure&) {
        return std::nullopt;
      }
    }
    return std::nullopt;
  };
}

struct LoadedGraph {
  bool ok = false;
  EventPlotGraph graph;
};

LoadedGraph load_graph_or_report(const std::string& path, const char* command,
                                 std::ostream& err) {
  LoadedGraph out;
  if (!file_exists(path)) {
    err << command << ": graph not found: " << path << "\n";
    return out;
  }
  try {
    out.graph = parse_turtle(read_file(path));
  } catch (const TurtleSyntax& e) {
    err << command << ": graph unreadable: " << path << ": " << e.what() << "\n";
    return out;
  } catch (const IoFailure& e) {
    err << command << ": " << e.what() << "\n";
    return out;
  }
  out.ok = true;
  return out;
}

}  // namespace

int cmd_ingest(const PipelineConfig& config, const IngestOptions& opt,
               const GlobalOptions& global, std::ostream& out, std::ostream& err) {
  ArticleStore store;
  store.path = config.articles_path;
  if (file_exists(config.articles_path)) {
    LoadResult loaded = load_store(config.articles_path);
    store = std::move(loaded.store);
    for (const auto& d : loaded.diagnostics)
      err << "warning: " << d.where << ": " << d.message << "\n";
  }

  Fetcher fetch = opt.fetcher;
  if (!fetch) {
    if (opt.fetch) {
      fetch = [](const std::string& url) { return http_get(url); };
    } else if (!opt.from_files.empty()) {
      fetch = file_fetcher(opt.from_files);
    } else if (opt.report_files.empty()) {
      err << "ingest: pass --from-files <dir>, --fetch, or --reports <file>...\n";
      return kExitConfig;
    }
  }

  size_t sources = 0;
  size_t failed = 0;
  size_t added = 0;
  size_t duplicates = 0;
  int64_t fetched_at = config.now();

  for (const auto& feed : config.feeds) {
    ++sources;
    std::optional<std::string> xml = fetch ? fetch(feed.url) : std::nullopt;
    if (!xml) {
      err << "warning: feed unreachable: " << feed.name << " (" << feed.url << ")\n";
      ++failed;
      continue;
    }
    std::vector<FeedEntry> entries;
    try {
      entries = parse_rss(*xml, feed);
    } catch (const MalformedFeed& e) {
      err << "warning: feed malformed: " << feed.name << ": " << e.what() << "\n";
      ++failed;
      continue;
    }
    for (const auto& entry : entries) {
      std::optional<std::string> html = fetch(entry.link);
      if (!html) {
        err << "warning: article unreachable: " << entry.link << "\n";
        continue;
      }
      try {
        ArticleRecord record = extract_article(*html, entry, feed, fetched_at);
        if (store.append(std::move(record)))
          ++added;
        else
          ++duplicates;
      } catch (const EmptyBody& e) {
        err << "warning: " << entry.link << ": " << e.what() << "\n";
      }
    }
  }

  for (const auto& path : opt.report_files) {
    ++sources;
    std::string content;
    try {
      content = read_file(path);
    } catch (const IoFailure& e) {
      err << "warning: " << e.what() << "\n";
      ++failed;
      continue;
    }
    try {
      ArticleRecord record = import_report_document(content, path, "import", fetched_at);
      if (store.append(std::move(record)))
        ++added;
      else
        ++duplicates;
    } catch (const EmptyBody& e) {
      err << "warning: " << path << ": " << e.what() << "\n";
      ++failed;
    }
  }

  if (sources == 0) {
    err << "ingest: no feeds configured and no report files given\n";
    return kExitAllSourcesFailed;
  }
  if (failed == sources) {
    err << "ingest: all " << sources << " sources failed\n";
    return kExitAllSourcesFailed;
  }

  ensure_parent_dir(store.path);
  save_store(store);

  if (global.json) {
    json summary = {{"sources", sources},
                    {"failed", failed},
                    {"added", added},
                    {"duplicates", duplicates},
                    {"total", store.records.size()}};
    out << summary.dump() << "\n";
  } else if (!global.quiet) {
    out << "ingested " << added << " new articles, " << duplicates
        << " duplicates skipped (" << (sources - failed) << "/" << sources
        << " sources ok); store holds " << store.records.size() << "\n";
  }
  return kExitOk;
}

int cmd_extract(const PipelineConfig& config, const GlobalOptions& global,
                std::ostream& out, std::ostream& err) {
  if (!file_exists(config.articles_path)) {
    err << "extract: article store not found: " << config.articles_path << "\n";
    return kExitStoreRead;
  }
  std::vector<std::string> missing = missing_resources(config);
  if (!missing.empty()) {
    for (const auto& m : missing) err << "extract: " << m << "\n";
    return kExitConfig;
  }

  Gazetteer gazetteer;
  CausalCueSet cues;
  SentimentLexicon lexicon;
  TacticRuleSet tactics;
  std::vector<std::string> opinion_cues;
  try {
    gazetteer = load_gazetteer(config.gazetteer_path);
    cues.cues = load_term_list(config.causal_cues_path);
    opinion_cues = load_term_list(config.opinion_cues_path);
    lexicon = load_sentiment_lexicon(config.sentiment_positive_path,
                                     config.sentiment_negative_path);
    tactics = load_tactic_rules(config.tactics_path);
  } catch (const Error& e) {
    err << "extract: " << e.what() << "\n";
    return kExitConfig;
  }
  if (cues.cues.empty()) cues = CausalCueSet::defaults();
  if (opinion_cues.empty()) opinion_cues = default_opinion_cues();

  LoadResult loaded = load_store(config.articles_path);
  for (const auto& d : loaded.diagnostics)
    err << "warning: " << d.where << ": " << d.message << "\n";

  std::vector<PlotPoint> points;
  for (const auto& article : loaded.store.records) {
    ExtractionResult result =
        run_npce(article, gazetteer, cues, lexicon, tactics, config.evidence_k, opinion_cues);
    for (const auto& d : result.diagnostics)
      err << "warning: " << d.where << ": " << d.message << "\n";
    points.insert(points.end(), result.plot_points.begin(), result.plot_points.end());
  }

  ensure_parent_dir(config.plots_path);
  save_plot_points(config.plots_path, points);

  if (global.json) {
    json summary = {{"articles", loaded.store.records.size()},
                    {"plot_points", points.size()}};
    out << summary.dump() << "\n";
  } else if (!global.quiet) {
    out << "extracted " << points.size() << " plot points from "
        << loaded.store.records.size() << " articles\n";
  }
  return kExitOk;
}

int cmd_assert(const PipelineConfig& config, const GlobalOptions& global,
               std::ostream& out, std::ostream& err) {
  if (!file_exists(config.articles_path)) {
    err << "assert: article store not found: " << config.articles_path << "\n";
    return kExitStoreRead;
  }
  if (!file_exists(config.plots_path)) {
    err << "assert: plot-point file not found: " << config.plots_path << "\n";
    return kExitStoreRead;
  }

  EventPlotGraph graph;
  if (file_exists(config.graph_path)) {
    try {
      graph = parse_turtle(read_file(config.graph_path));
    } catch (const TurtleSyntax& e) {
      err << "assert: existing graph unreadable: " << e.what() << "\n";
      return kExitStoreRead;
    } catch (const IoFailure& e) {
      err << "assert: " << e.what() << "\n";
      return kExitStoreRead;
    }
  }

  LoadResult loaded = load_store(config.articles_path);
  for (const auto& d : loaded.diagnostics)
    err << "warning: " << d.where << ": " << d.message << "\n";

  std::vector<Diagnostic> plot_diagnostics;
  std::vector<PlotPoint> points;
  try {
    points = load_plot_points(config.plots_path, &plot_diagnostics);
  } catch (const IoFailure& e) {
    err << "assert: " << e.what() << "\n";
    return kExitStoreRead;
  }
  for (const auto& d : plot_diagnostics)
    err << "warning: " << d.where << ": " << d.message << "\n";

  std::map<std::string, Iri> article_iris;
  for (const auto& article : loaded.store.records)
    article_iris[article.id] = assert_article(graph, article);

  size_t asserted = 0;
  for (const auto& point : points) {
    auto it = article_iris.find(point.article_id);
    if (it == article_iris.end()) {
      err << "warning: plot point " << point.id << ": article " << point.article_id
          << " not in store, skipped\n";
      continue;
    }
    assert_plot_point(graph, it->second, point);
    ++asserted;
  }

  ensure_parent_dir(config.graph_path);
  write_file(config.graph_path, serialize_turtle(graph));

  if (global.json) {
    json summary = {{"articles", loaded.store.records.size()},
                    {"plot_points", asserted},
                    {"triples", graph.size()}};
    out << summary.dump() << "\n";
  } else if (!global.quiet) {
    out << "asserted " << loaded.store.records.size() << " articles and " << asserted
        << " plot points; graph holds " << graph.size() << " triples\n";
  }
  return kExitOk;
}

int cmd_query(const PipelineConfig& config, const QueryOptions& opt,
              const GlobalOptions& global, std::ostream& out, std::ostream& err) {
  LoadedGraph loaded = load_graph_or_report(config.graph_path, "query", err);
  if (!loaded.ok) return kExitStoreRead;

  SelectQuery query;
  try {
    if (!opt.file.empty()) {
      std::string text;
      try {
        text = read_file(opt.file);
      } catch (const IoFailure& e) {
        err << "query: " << e.what() << "\n";
        return kExitFailure;
      }
      query = parse_query(text);
    } else if (!opt.event.empty()) {
      if (opt.level == "lead")
        query = lead_template(opt.event);
      else if (opt.level == "body")
        query = body_template(opt.event);
      else if (opt.level == "tail")
        query = tail_template(opt.event);
      else {
        err << "query: --level must be lead, body, or tail\n";
        return kExitConfig;
      }
    } else {
      err << "query: pass --event <text> or --file <query>\n";
      return kExitConfig;
    }
  } catch (const QuerySyntax& e) {
    err << "query: syntax error at " << e.line() << ":" << e.col() << ": " << e.what()
        << "\n";
    return kExitQuerySyntax;
  } catch (const UnsupportedFeature& e) {
    err << "query: unsupported: " << e.what() << "\n";
    return kExitQuerySyntax;
  } catch (const InvalidRegex& e) {
    err << "query: " << e.what() << "\n";
    return kExitQuerySyntax;
  }

  BindingSet rows;
  try {
    rows = execute(loaded.graph, query);
  } catch (const UnboundFilterVariable& e) {
    err << "query: " << e.what() << "\n";
    return kExitQuerySyntax;
  } catch (const InvalidRegex& e) {
    err << "query: " << e.what() << "\n";
    return kExitQuerySyntax;
  }

  if (global.json) {
    json doc;
    doc["variables"] = rows.variables;
    json out_rows = json::array();
    for (const auto& row : rows.rows) {
      json r = json::array();
      for (const auto& term : row) r.push_back(term_string(term));
      out_rows.push_back(std::move(r));
    }
    doc["rows"] = std::move(out_rows);
    out << doc.dump() << "\n";
  } else {
    out << to_tsv(rows);
  }
  return kExitOk;
}

int cmd_generate(const PipelineConfig& config, const GenerateOptions& opt,
                 const GlobalOptions& global, std::ostream& out, std::ostream& err) {
  LoadedGraph loaded = load_graph_or_report(config.graph_path, "generate", err);
  if (!loaded.ok) return kExitStoreRead;
  if (opt.event.empty()) {
    err << "generate: pass --event <text>\n";
    return kExitConfig;
  }

  IntelligenceReport report;
  try {
    report = generate_report(loaded.graph, opt.event, config.generation,
                             config.prompt_options, config.now());
  } catch (const EmptyRetrieval& e) {
    err << "generate: " << e.what() << "\n";
    return kExitEmptyRetrieval;
  } catch (const BackendTimeout& e) {
    err << "generate: backend timeout: " << e.what() << "\n";
    return kExitBackend;
  } catch (const BackendHttp& e) {
    err << "generate: backend error: " << e.what() << "\n";
    return kExitBackend;
  } catch (const CapUnsatisfiable& e) {
    err << "generate: " << e.what() << "\n";
    return kExitBackend;
  } catch (const EmptySection& e) {
    err << "generate: " << e.what() << "\n";
    return kExitBackend;
  }

  std::string report_path = opt.output.empty() ? config.report_path : opt.output;
  ensure_parent_dir(report_path);
  write_file(report_path, report_to_json(report));

  if (global.json) {
    out << report_to_json(report);
  } else if (!global.quiet) {
    out << render_report(report);
  }
  return kExitOk;
}

int cmd_evaluate(const PipelineConfig& config, const EvaluateOptions& opt,
                 const GlobalOptions& global, std::ostream& out, std::ostream& err) {
  std::string report_path =
      opt.report_path.empty() ? config.report_path : opt.report_path;
  std::string reference_path =
      opt.reference_path.empty() ? config.reference_path : opt.reference_path;
  std::string gold_path = opt.gold_path.empty() ? config.gold_path : opt.gold_path;
  std::string annotations_path =
      opt.annotations_path.empty() ? config.annotations_path : opt.annotations_path;
  std::string likert_path =
      opt.likert_path.empty() ? config.likert_path : opt.likert_path;

  if (reference_path.empty()) {
    err << "evaluate: pass --reference <file> (or set [evaluate] reference)\n";
    return kExitConfig;
  }

  std::optional<IntelligenceReport> report;
  try {
    report = report_from_json(read_file(report_path));
  } catch (const IoFailure& e) {
    err << "evaluate: " << e.what() << "\n";
    return kExitStoreRead;
  }
  if (!report) {
    err << "evaluate: report unreadable: " << report_path << "\n";
    return kExitStoreRead;
  }

  std::string reference;
  try {
    reference = read_file(reference_path);
  } catch (const IoFailure& e) {
    err << "evaluate: " << e.what() << "\n";
    return kExitStoreRead;
  }

  std::string candidate;
  std::vector<std::string> matched_keywords;
  for (const std::optional<SectionReport>* section :
       {&report->lead, &report->body, &report->tail}) {
    if (!section->has_value()) continue;
    if (!candidate.empty()) candidate += "\n\n";
    candidate += (*section)->text;
    matched_keywords.insert(matched_keywords.end(), (*section)->matched.begin(),
                            (*section)->matched.end());
  }

  RougeScore rouge1 = rouge_n(candidate, reference, 1);
  RougeScore rouge2 = rouge_n(candidate, reference, 2);

  json doc;
  doc["rouge_1"] = {{"recall", rouge1.recall},
                    {"precision", rouge1.precision},
                    {"f1", rouge1.f1}};
  doc["rouge_2"] = {{"recall", rouge2.recall},
                    {"precision", rouge2.precision},
                    {"f1", rouge2.f1}};

  std::ostringstream text;
  text << "rouge-1 recall " << fixed4(rouge1.recall) << " precision "
       << fixed4(rouge1.precision) << " f1 " << fixed4(rouge1.f1) << "\n";
  text << "rouge-2 recall " << fixed4(rouge2.recall) << " precision "
       << fixed4(rouge2.precision) << " f1 " << fixed4(rouge2.f1) << "\n";

  if (!gold_path.empty()) {
    GoldPlotSet gold;
    try {
      gold = load_gold_set(gold_path);
    } catch (const IoFailure& e) {
      err << "evaluate: " << e.what() << "\n";
      return kExitStoreRead;
    }
    SuppContScore sc = supp_cont(matched_keywords, gold);
    doc["supp"] = sc.supp;
    doc["cont"] = sc.cont;
    doc["gold_size"] = sc.gold_size;
    text << "supp " << sc.supp << " cont " << sc.cont << " gold " << sc.gold_size
         << "\n";
  }

  if (!annotations_path.empty()) {
    try {
      AnnotationTable table = load_annotations(annotations_path);
      double kappa = cohen_kappa(table);
      doc["kappa"] = kappa;
      text << "kappa " << fixed4(kappa) << "\n";
    } catch (const LabelOutsideSet& e) {
      err << "evaluate: " << e.what() << "\n";
      return kExitFailure;
    } catch (const IoFailure& e) {
      err << "evaluate: " << e.what() << "\n";
      return kExitStoreRead;
    }
  }

  if (!likert_path.empty()) {
    try {
      std::vector<int> scores = load_likert_scores(likert_path);
      double fluency = likert_average(scores);
      doc["fluency"] = fluency;
      text << "fluency " << fixed4(fluency) << "\n";
    } catch (const ScoreOutOfRange& e) {
      err << "evaluate: " << e.what() << "\n";
      return kExitFailure;
    } catch (const IoFailure& e) {
      err << "evaluate: " << e.what() << "\n";
      return kExitStoreRead;
    }
  }

  if (global.json)
    out << doc.dump(2) << "\n";
  else
    out << text.str();
  return kExitOk;
}

int cmd_kappa(const std::string& annotations_path, const GlobalOptions& global,
              std::ostream& out, std::ostream& err) {
  AnnotationTable table;
  try {
    table = load_annotations(annotations_path);
  } catch (const IoFailure& e) {
    err << "kappa: " << e.what() << "\n";
    return kExitStoreRead;
  }
  double kappa = 0.0;
  try {
    kappa = cohen_kappa(table);
  } catch (const LabelOutsideSet& e) {
    err << "kappa: " << e.what() << "\n";
    return kExitFailure;
  }
  if (global.json)
    out << json{{"kappa", kappa}}.dump() << "\n";
  else
    out << "kappa " << fixed4(kappa) << "\n";
  return kExitOk;
}

}  // namespace newsplot
