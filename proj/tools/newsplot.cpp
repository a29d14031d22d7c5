#include <iostream>
#include <string>

#include "CLI11.hpp"

#include "newsplot/config.hpp"
#include "newsplot/pipeline.hpp"

int main(int argc, char** argv) {
  CLI::App app{"newsplot: news ingestion, event plot graphs, and grounded report generation"};
  app.require_subcommand(1);

  std::string config_path = "newsplot.ini";
  newsplot::GlobalOptions global;
  app.add_option("--config", config_path, "pipeline config file")->capture_default_str();
  app.add_flag("--quiet", global.quiet, "suppress informational stdout");
  app.add_flag("--json", global.json, "machine-readable stdout");

  auto* ingest = app.add_subcommand("ingest", "pull feeds, extract articles, grow the store");
  newsplot::IngestOptions ingest_opt;
  ingest->add_option("--from-files", ingest_opt.from_files,
                     "resolve feed and article URLs against this directory");
  ingest->add_flag("--fetch", ingest_opt.fetch, "fetch live over http");
  ingest->add_option("--reports", ingest_opt.report_files,
                     "import plain text or HTML documents directly");

  auto* extract = app.add_subcommand("extract", "run plot-point extraction over the store");

  auto* assert_cmd =
      app.add_subcommand("assert", "assert articles and plot points into the Turtle graph");

  auto* query = app.add_subcommand("query", "run a query against the graph");
  newsplot::QueryOptions query_opt;
  query->add_option("--event", query_opt.event, "event text to match against headlines");
  query->add_option("--level", query_opt.level, "template level (lead, body, tail)")
      ->capture_default_str();
  query->add_option("--file", query_opt.file, "query file to run instead of a template");

  auto* generate = app.add_subcommand("generate", "generate an intelligence report");
  newsplot::GenerateOptions generate_opt;
  generate->add_option("--event", generate_opt.event, "event text to report on")->required();
  generate->add_option("--output", generate_opt.output, "report file (overrides config)");

  auto* evaluate = app.add_subcommand("evaluate", "score a report against references");
  newsplot::EvaluateOptions evaluate_opt;
  evaluate->add_option("--report", evaluate_opt.report_path, "report JSON file");
  evaluate->add_option("--reference", evaluate_opt.reference_path, "reference text file");
  evaluate->add_option("--gold", evaluate_opt.gold_path, "gold plot-point set");
  evaluate->add_option("--annotations", evaluate_opt.annotations_path,
                       "two-annotator label table");
  evaluate->add_option("--likert", evaluate_opt.likert_path, "fluency scores, one per line");

  auto* kappa = app.add_subcommand("kappa", "inter-annotator agreement for a label table");
  std::string annotations_path;
  kappa->add_option("file", annotations_path, "annotation table (item TAB a TAB b)")
      ->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : newsplot::kExitConfig;
  }

  try {
    if (kappa->parsed())
      return newsplot::cmd_kappa(annotations_path, global, std::cout, std::cerr);

    newsplot::PipelineConfig config = newsplot::load_config(config_path);
    if (ingest->parsed())
      return newsplot::cmd_ingest(config, ingest_opt, global, std::cout, std::cerr);
    if (extract->parsed())
      return newsplot::cmd_extract(config, global, std::cout, std::cerr);
    if (assert_cmd->parsed())
      return newsplot::cmd_assert(config, global, std::cout, std::cerr);
    if (query->parsed())
      return newsplot::cmd_query(config, query_opt, global, std::cout, std::cerr);
    if (generate->parsed())
      return newsplot::cmd_generate(config, generate_opt, global, std::cout, std::cerr);
    if (evaluate->parsed())
      return newsplot::cmd_evaluate(config, evaluate_opt, global, std::cout, std::cerr);
  } catch (const newsplot::ConfigError& e) {
    std::cerr << "config: " << e.what() << "\n";
    return newsplot::kExitConfig;
  } catch (const newsplot::IoFailure& e) {
    std::cerr << "config: " << e.what() << "\n";
    return newsplot::kExitConfig;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return newsplot::kExitFailure;
  }
  return newsplot::kExitFailure;
}
