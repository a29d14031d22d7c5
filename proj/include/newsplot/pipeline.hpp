#pragma once

#include <ostream>
#include <string>
#include <vector>

#include "newsplot/config.hpp"
#include "newsplot/corpus.hpp"

namespace newsplot {

// Process exit codes; part of the CLI contract, keep stable.
inline constexpr int kExitOk = 0;
inline constexpr int kExitFailure = 1;
inline constexpr int kExitConfig = 2;
inline constexpr int kExitAllSourcesFailed = 3;
inline constexpr int kExitStoreRead = 4;
inline constexpr int kExitQuerySyntax = 5;
inline constexpr int kExitEmptyRetrieval = 6;
inline constexpr int kExitBackend = 7;

struct GlobalOptions {
  bool quiet = false;  // suppress informational stdout
  bool json = false;   // machine-readable stdout
};

struct IngestOptions {
  // Directory holding saved feed XML and article HTML; a feed or article URL
  // resolves to <dir>/<url path>, falling back to <dir>/<basename>.
  std::string from_files;
  bool fetch = false;  // live HTTP GET instead of local files
  std::vector<std::string> report_files;  // plain documents imported directly
  Fetcher fetcher;  // overrides both modes when set (tests inject this)
};

struct QueryOptions {
  std::string event;
  std::string level = "lead";  // lead | body | tail, with --event
  std::string file;            // query file; takes precedence over --event
};

struct GenerateOptions {
  std::string event;
  std::string output;  // overrides the configured report path
};

struct EvaluateOptions {
  std::string report_path;
  std::string reference_path;
  std::string gold_path;
  std::string annotations_path;
  std::string likert_path;
};

// Every command writes data to `out` and diagnostics to `err`, returning a
// process exit code.
int cmd_ingest(const PipelineConfig& config, const IngestOptions& opt,
               const GlobalOptions& global, std::ostream& out, std::ostream& err);
int cmd_extract(const PipelineConfig& config, const GlobalOptions& global,
                std::ostream& out, std::ostream& err);
int cmd_assert(const PipelineConfig& config, const GlobalOptions& global,
               std::ostream& out, std::ostream& err);
int cmd_query(const PipelineConfig& config, const QueryOptions& opt,
              const GlobalOptions& global, std::ostream& out, std::ostream& err);
int cmd_generate(const PipelineConfig& config, const GenerateOptions& opt,
                 const GlobalOptions& global, std::ostream& out, std::ostream& err);
int cmd_evaluate(const PipelineConfig& config, const EvaluateOptions& opt,
                 const GlobalOptions& global, std::ostream& out, std::ostream& err);
int cmd_kappa(const std::string& annotations_path, const GlobalOptions& global,
              std::ostream& out, std::ostream& err);

}  // namespace newsplot
