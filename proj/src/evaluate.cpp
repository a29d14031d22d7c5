#include "newsplot/evaluate.hpp"

#include <map>

#include "newsplot/text.hpp"

namespace newsplot {

namespace {

std::map<std::vector<std::string>, size_t> ngram_counts(const std::vector<std::string>& tokens,
                                                        size_t n) {
  std::map<std::vector<std::string>, size_t> counts;
  if (tokens.size() < n) return counts;
  for (size_t i = 0; i + n <= tokens.size(); ++i) {
    counts[std::vector<std::string>(tokens.begin() + i, tokens.begin() + i + n)] += 1;
  }
  return counts;
}

}  // namespace

RougeScore rouge_n(const std::string& candidate, const std::string& reference, int n) {
  RougeScore score;
  score.n = n;
  if (n < 1) return score;
  size_t un = static_cast<size_t>(n);

  auto cand = ngram_counts(alnum_tokens(candidate), un);
  auto ref = ngram_counts(alnum_tokens(reference), un);

  size_t cand_total = 0;
  for (const auto& [_, c] : cand) cand_total += c;
  size_t ref_total = 0;
  for (const auto& [_, c] : ref) ref_total += c;

  size_t overlap = 0;
  for (const auto& [gram, c] : cand) {
    auto it = ref.find(gram);
    if (it != ref.end()) overlap += std::min(c, it->second);
  }

  if (ref_total > 0) score.recall = static_cast<double>(overlap) / static_cast<double>(ref_total);
  if (cand_total > 0) {
    score.precision = static_cast<double>(overlap) / static_cast<double>(cand_total);
  }
  if (score.recall + score.precision > 0.0) {
    score.f1 = 2.0 * score.recall * score.precision / (score.recall + score.precision);
  }
  return score;
}

SuppContScore supp_cont(const std::vector<std::string>& report_keywords,
                        const GoldPlotSet& gold) {
  std::set<std::string> report_normed;
  for (const auto& kw : report_keywords) report_normed.insert(normalize_phrase(kw));

  SuppContScore score;
  score.gold_size = gold.points.size();
  for (const auto& point : gold.points) {
    if (report_normed.count(normalize_phrase(point))) {
      ++score.supp;
    } else {
      ++score.cont;
    }
  }
  return score;
}

double cohen_kappa(const AnnotationTable& t) {
  if (t.labels_a.size() != t.labels_b.size() || t.labels_a.empty()) {
    throw LabelOutsideSet("annotation table must pair one label from each annotator per item");
  }
  if (!t.label_set.empty()) {
    for (const auto& l : t.labels_a) {
      if (!t.label_set.count(l)) throw LabelOutsideSet("label \"" + l + "\" outside label set");
    }
    for (const auto& l : t.labels_b) {
      if (!t.label_set.count(l)) throw LabelOutsideSet("label \"" + l + "\" outside label set");
    }
  }

  double n = static_cast<double>(t.labels_a.size());
  size_t agree = 0;
  std::map<std::string, size_t> marg_a, marg_b;
  for (size_t i = 0; i < t.labels_a.size(); ++i) {
    if (t.labels_a[i] == t.labels_b[i]) ++agree;
    marg_a[t.labels_a[i]] += 1;
    marg_b[t.labels_b[i]] += 1;
  }
  double p_o = static_cast<double>(agree) / n;
  double p_e = 0.0;
  for (const auto& [label, ca] : marg_a) {
    auto it = marg_b.find(label);
    if (it == marg_b.end()) continue;
    p_e += (static_cast<double>(ca) / n) * (static_cast<double>(it->second) / n);
  }
  if (1.0 - p_e == 0.0) return 1.0;  // both annotators constant on one label
  return (p_o - p_e) / (1.0 - p_e);
}

GoldPlotSet filter_gold_by_kappa(
    const std::vector<std::pair<std::string, AnnotationTable>>& candidates, double threshold) {
  GoldPlotSet gold;
  for (const auto& [point, table] : candidates) {
    if (cohen_kappa(table) > threshold) gold.points.push_back(point);
  }
  return gold;
}

double likert_average(const std::vector<int>& scores) {
  if (scores.empty()) throw ScoreOutOfRange("no scores given");
  double total = 0.0;
  for (int s : scores) {
    if (s < 1 || s > 5) {
      throw ScoreOutOfRange("score " + std::to_string(s) + " outside 1..5");
    }
    total += s;
  }
  return total / static_cast<double>(scores.size());
}

namespace {

std::string trim_ws(const std::string& s) {
  size_t b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return "";
  size_t e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

}  // namespace

GoldPlotSet load_gold_set(const std::string& path) {
  GoldPlotSet gold;
  for (const auto& raw : read_lines(path)) {
    std::string line = trim_ws(raw);
    if (line.empty()) continue;
    if (line.rfind("#event:", 0) == 0) {
      gold.event_query = trim_ws(line.substr(7));
      continue;
    }
    if (line[0] == '#') continue;
    gold.points.push_back(line);
  }
  return gold;
}

AnnotationTable load_annotations(const std::string& path) {
  AnnotationTable t;
  for (const auto& raw : read_lines(path)) {
    std::string line = trim_ws(raw);
    if (line.empty() || line[0] == '#') continue;
    size_t tab1 = line.find('\t');
    size_t tab2 = tab1 == std::string::npos ? std::string::npos : line.find('\t', tab1 + 1);
    if (tab2 == std::string::npos) {
      throw IoFailure(path + ": annotation lines need item<TAB>labelA<TAB>labelB");
    }
    t.items.push_back(trim_ws(line.substr(0, tab1)));
    t.labels_a.push_back(trim_ws(line.substr(tab1 + 1, tab2 - tab1 - 1)));
    t.labels_b.push_back(trim_ws(line.substr(tab2 + 1)));
  }
  return t;
}

std::vector<int> load_likert_scores(const std::string& path) {
  std::vector<int> scores;
  for (const auto& raw : read_lines(path)) {
    std::string line = trim_ws(raw);
    if (line.empty() || line[0] == '#') continue;
    try {
      scores.push_back(std::stoi(line));
    } catch (...) {
      throw IoFailure(path + ": expected one integer score per line, got \"" + line + "\"");
    }
  }
  return scores;
}

}  // namespace newsplot
