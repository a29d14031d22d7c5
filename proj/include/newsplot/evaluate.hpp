#pragma once

#include <set>
#include <string>
#include <utility>
#include <vector>

#include "newsplot/util.hpp"

namespace newsplot {

struct RougeScore {
  int n = 1;
  double recall = 0.0;
  double precision = 0.0;
  double f1 = 0.0;
  bool operator==(const RougeScore&) const = default;
};

// Clipped n-gram overlap over lowercased alphanumeric tokens. Degenerate
// inputs (fewer than n tokens) score zero everywhere.
RougeScore rouge_n(const std::string& candidate, const std::string& reference, int n);

struct GoldPlotSet {
  std::string event_query;
  std::vector<std::string> points;
};

struct SuppContScore {
  size_t supp = 0;
  size_t cont = 0;
  size_t gold_size = 0;
  bool operator==(const SuppContScore&) const = default;
};

// Membership of each gold point in the report's matched-keyword set, both
// sides normalized the same way keyword coverage is.
SuppContScore supp_cont(const std::vector<std::string>& report_keywords,
                        const GoldPlotSet& gold);

struct AnnotationTable {
  std::vector<std::string> items;
  std::vector<std::string> labels_a;
  std::vector<std::string> labels_b;
  // Empty means "derive from the observed labels".
  std::set<std::string> label_set;
};

class LabelOutsideSet : public Error {
 public:
  explicit LabelOutsideSet(const std::string& what) : Error(what) {}
};

// (p_o - p_e) / (1 - p_e); the all-agreement single-label table degenerates
// to 1.0.
double cohen_kappa(const AnnotationTable& t);

GoldPlotSet filter_gold_by_kappa(
    const std::vector<std::pair<std::string, AnnotationTable>>& candidates,
    double threshold = 0.6);

class ScoreOutOfRange : public Error {
 public:
  explicit ScoreOutOfRange(const std::string& what) : Error(what) {}
};

// Arithmetic mean of 1..5 scores.
double likert_average(const std::vector<int>& scores);

// Gold set file: optional "#event: <query>" header, one keyword per line.
GoldPlotSet load_gold_set(const std::string& path);

// Annotation file: item<TAB>labelA<TAB>labelB.
AnnotationTable load_annotations(const std::string& path);

// Likert file: one integer per line.
std::vector<int> load_likert_scores(const std::string& path);

}  // namespace newsplot
