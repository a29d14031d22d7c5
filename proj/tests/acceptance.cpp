// Acceptance gate for the whole pipeline: ten independent checks, one
// PASS/FAIL line each, nonzero exit when any check fails. Each check builds
// its own inputs, so the binary runs from any directory.

#include <sys/wait.h>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <map>
#include <optional>
#include <random>
#include <regex>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "newsplot/corpus.hpp"
#include "newsplot/evaluate.hpp"
#include "newsplot/extract.hpp"
#include "newsplot/graph.hpp"
#include "newsplot/report.hpp"
#include "newsplot/sparql.hpp"
#include "newsplot/text.hpp"
#include "newsplot/util.hpp"

using namespace newsplot;

namespace {

struct Outcome {
  bool ok = false;
  std::string detail;
};

std::string fixture(const std::string& rel) { return std::string(FIXTURES_DIR) + "/" + rel; }

// ---------------------------------------------------------------------------
// Shared scratch-sandbox plumbing for the pipeline-level checks.

std::string sandbox(const std::string& name) {
  auto dir = std::filesystem::temp_directory_path() / "newsplot_acceptance" / name;
  std::filesystem::remove_all(dir);
  std::filesystem::create_directories(dir);
  return dir.string();
}

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_pipeline_config(const std::string& dir) {
  std::string res = fixture("resources");
  std::string ini;
  ini += "[feeds]\n";
  ini += "globalwire = http://news.test/feeds/globalwire.xml\n";
  ini += "harbortimes = http://news.test/feeds/harbortimes.xml\n";
  ini += "[resources]\n";
  ini += "gazetteer = " + res + "/gazetteer.tsv\n";
  ini += "causal_cues = " + res + "/causal_cues.txt\n";
  ini += "opinion_cues = " + res + "/opinion_cues.txt\n";
  ini += "sentiment_positive = " + res + "/sentiment_positive.txt\n";
  ini += "sentiment_negative = " + res + "/sentiment_negative.txt\n";
  ini += "tactics = " + res + "/tactics.tsv\n";
  ini += "[generate]\nbackend = stub\nevidence_k = 2\n";
  ini += "[pipeline]\nclock = 2023-06-22T12:00:00Z\n";
  std::ofstream(dir + "/newsplot.ini", std::ios::binary) << ini;
}

int run_cli(const std::string& dir, const std::string& args) {
  std::string cmd = "cd '" + dir + "' && '" + NEWSPLOT_BIN + "' --quiet " + args +
                    " >/dev/null 2>'" + dir + "/.stderr'";
  int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

// ---------------------------------------------------------------------------
// Independent ROUGE reference: its own tokenizer and joined-string n-gram
// keys.

std::vector<std::string> ref_tokens(const std::string& text) {
  std::vector<std::string> tokens;
  std::string cur;
  for (char ch : text) {
    if (std::isalnum(static_cast<unsigned char>(ch))) {
      cur += static_cast<char>(std::tolower(static_cast<unsigned char>(ch)));
    } else if (!cur.empty()) {
      tokens.push_back(cur);
      cur.clear();
    }
  }
  if (!cur.empty()) tokens.push_back(cur);
  return tokens;
}

RougeScore ref_rouge(const std::string& candidate, const std::string& reference, int n) {
  auto grams = [n](const std::vector<std::string>& tokens) {
    std::map<std::string, size_t> out;
    if (tokens.size() < static_cast<size_t>(n)) return out;
    for (size_t i = 0; i + n <= tokens.size(); ++i) {
      std::string key;
      for (size_t j = 0; j < static_cast<size_t>(n); ++j) key += tokens[i + j] + "\x1f";
      out[key] += 1;
    }
    return out;
  };
  auto cand = grams(ref_tokens(candidate));
  auto ref = grams(ref_tokens(reference));
  size_t cand_total = 0, ref_total = 0, overlap = 0;
  for (const auto& [_, c] : cand) cand_total += c;
  for (const auto& [_, c] : ref) ref_total += c;
  for (const auto& [gram, c] : cand) {
    auto it = ref.find(gram);
    if (it != ref.end()) overlap += std::min(c, it->second);
  }
  RougeScore s;
  s.n = n;
  if (ref_total) s.recall = double(overlap) / double(ref_total);
  if (cand_total) s.precision = double(overlap) / double(cand_total);
  if (s.recall + s.precision > 0.0) {
    s.f1 = 2.0 * s.recall * s.precision / (s.recall + s.precision);
  }
  return s;
}

Outcome c1_rouge_oracle() {
  std::mt19937 rng(101);
  const std::vector<std::string> vocab = {"crews", "searched", "the",   "debris", "field",
                                          "near",  "wreck",    "on",    "Sunday", "370",
                                          "miles", "deep",     "ocean", "floor",  "teams"};
  std::uniform_int_distribution<size_t> len(0, 40);
  std::uniform_int_distribution<size_t> pick(0, vocab.size() - 1);
  auto sample = [&] {
    std::string text;
    size_t n = len(rng);
    for (size_t i = 0; i < n; ++i) {
      if (i) text += ' ';
      text += vocab[pick(rng)];
    }
    return text;
  };
  auto start = std::chrono::steady_clock::now();
  for (int trial = 0; trial < 200; ++trial) {
    std::string cand = sample();
    std::string ref = sample();
    for (int n : {1, 2}) {
      RougeScore got = rouge_n(cand, ref, n);
      RougeScore want = ref_rouge(cand, ref, n);
      if (std::abs(got.recall - want.recall) > 1e-12 ||
          std::abs(got.precision - want.precision) > 1e-12 ||
          std::abs(got.f1 - want.f1) > 1e-12) {
        return {false, "mismatch on trial " + std::to_string(trial)};
      }
    }
    if (!ref.empty() && std::abs(rouge_n(ref, ref, 1).recall - 1.0) > 1e-12) {
      return {false, "identical-text recall below 1.0"};
    }
  }
  auto elapsed = std::chrono::duration_cast<std::chrono::milliseconds>(
                     std::chrono::steady_clock::now() - start)
                     .count();
  if (elapsed >= 5000) return {false, "took " + std::to_string(elapsed) + " ms"};
  return {true, ""};
}

// ---------------------------------------------------------------------------
// Exhaustive SPARQL evaluation over every assignment of group variables.

std::vector<std::vector<Term>> brute_force(const EventPlotGraph& g, const SelectQuery& q) {
  std::vector<std::vector<TriplePattern>> groups;
  if (q.unions.empty()) {
    groups.push_back(q.patterns);
  } else {
    for (const auto& u : q.unions) {
      auto merged = q.patterns;
      merged.insert(merged.end(), u.patterns.begin(), u.patterns.end());
      groups.push_back(merged);
    }
  }

  std::set<Term> term_pool;
  for (const auto& t : g.triples()) {
    term_pool.insert(Term{t.s});
    term_pool.insert(Term{t.p});
    term_pool.insert(t.o);
  }
  std::vector<Term> terms(term_pool.begin(), term_pool.end());

  std::vector<std::regex> compiled;
  for (const auto& f : q.filters) {
    auto flags = std::regex::ECMAScript;
    if (f.icase) flags |= std::regex::icase;
    compiled.emplace_back(f.pattern, flags);
  }

  std::vector<std::vector<Term>> rows;
  for (const auto& group : groups) {
    std::set<std::string> var_set;
    for (const auto& p : group)
      for (const auto* t : {&p.s, &p.p, &p.o})
        if (const auto* v = std::get_if<Variable>(t)) var_set.insert(v->name);
    std::vector<std::string> vars(var_set.begin(), var_set.end());

    auto resolve = [&](const PatternTerm& pt, const std::map<std::string, Term>& b) {
      if (const auto* v = std::get_if<Variable>(&pt)) return b.at(v->name);
      if (const auto* i = std::get_if<Iri>(&pt)) return Term{*i};
      return Term{std::get<Literal>(pt)};
    };
    auto satisfied = [&](const std::map<std::string, Term>& b) {
      for (const auto& p : group) {
        Term s = resolve(p.s, b), pr = resolve(p.p, b), o = resolve(p.o, b);
        if (!std::holds_alternative<Iri>(s) || !std::holds_alternative<Iri>(pr)) return false;
        if (!g.contains({std::get<Iri>(s), std::get<Iri>(pr), o})) return false;
      }
      return true;
    };

    std::map<std::string, Term> binding;
    std::vector<size_t> idx(vars.size(), 0);
    bool done = vars.empty();
    if (vars.empty() && satisfied(binding)) rows.push_back({});
    while (!done && !terms.empty()) {
      for (size_t i = 0; i < vars.size(); ++i) binding[vars[i]] = terms[idx[i]];
      bool pass = satisfied(binding);
      if (pass) {
        for (size_t i = 0; i < q.filters.size() && pass; ++i) {
          pass = std::regex_search(term_string(binding.at(q.filters[i].variable)), compiled[i]);
        }
      }
      if (pass) {
        std::vector<Term> row;
        bool complete = true;
        for (const auto& v : q.projection) {
          if (!binding.count(v)) {
            complete = false;
            break;
          }
          row.push_back(binding.at(v));
        }
        if (complete) rows.push_back(std::move(row));
      }
      size_t pos = 0;
      while (pos < idx.size()) {
        if (++idx[pos] < terms.size()) break;
        idx[pos] = 0;
        ++pos;
      }
      done = pos == idx.size();
    }
  }

  if (q.distinct) {
    std::set<std::vector<Term>> unique(rows.begin(), rows.end());
    rows.assign(unique.begin(), unique.end());
  } else {
    std::sort(rows.begin(), rows.end());
  }
  return rows;
}

EventPlotGraph random_graph(std::mt19937& rng) {
  static const std::vector<std::string> subjects = {"http://g.test/s0", "http://g.test/s1",
                                                    "http://g.test/s2", "http://g.test/s3",
                                                    "http://g.test/s4", "http://g.test/s5"};
  static const std::vector<std::string> predicates = {
      "http://g.test/p0", "http://g.test/p1", "http://g.test/p2",
      "http://www.w3.org/1999/02/22-rdf-syntax-ns#type"};
  static const std::vector<std::string> literal_values = {
      "alpha", "Beta gamma", "OceanGate", "370 miles", "negative", "18 June"};

  EventPlotGraph g;
  std::uniform_int_distribution<size_t> n_triples(5, 50);
  std::uniform_int_distribution<size_t> s_pick(0, subjects.size() - 1);
  std::uniform_int_distribution<size_t> p_pick(0, predicates.size() - 1);
  std::uniform_int_distribution<size_t> o_kind(0, 2);
  std::uniform_int_distribution<size_t> l_pick(0, literal_values.size() - 1);
  size_t n = n_triples(rng);
  for (size_t i = 0; i < n; ++i) {
    Iri s{subjects[s_pick(rng)]};
    Iri p{predicates[p_pick(rng)]};
    Term o;
    switch (o_kind(rng)) {
      case 0: o = Iri{subjects[s_pick(rng)]}; break;
      case 1: o = Literal{literal_values[l_pick(rng)], LiteralType::String}; break;
      default: o = Literal{"2023-06-18T10:00:00Z", LiteralType::DateTime}; break;
    }
    g.insert({s, p, o});
  }
  return g;
}

SelectQuery random_query(const EventPlotGraph& g, std::mt19937& rng) {
  static const std::vector<std::string> var_names = {"x", "y", "z"};
  static const std::vector<std::string> filter_patterns = {"alpha", "gate", "^http", "3",
                                                           "a.*a", "negative|beta"};
  std::vector<Triple> triples(g.triples().begin(), g.triples().end());
  std::uniform_int_distribution<size_t> t_pick(0, triples.size() - 1);
  std::uniform_int_distribution<int> coin(0, 1);
  std::uniform_int_distribution<size_t> v_pick(0, var_names.size() - 1);

  auto make_pattern = [&](bool force_var) {
    const Triple& base = triples[t_pick(rng)];
    TriplePattern p;
    p.s = coin(rng) ? PatternTerm{Variable{var_names[v_pick(rng)]}} : PatternTerm{base.s};
    p.p = coin(rng) ? PatternTerm{Variable{var_names[v_pick(rng)]}} : PatternTerm{base.p};
    if (coin(rng)) {
      p.o = Variable{var_names[v_pick(rng)]};
    } else if (std::holds_alternative<Iri>(base.o)) {
      p.o = std::get<Iri>(base.o);
    } else {
      p.o = Literal{std::get<Literal>(base.o).lexical, LiteralType::String};
    }
    if (force_var && !std::holds_alternative<Variable>(p.s) &&
        !std::holds_alternative<Variable>(p.p) && !std::holds_alternative<Variable>(p.o)) {
      p.o = Variable{var_names[v_pick(rng)]};
    }
    return p;
  };

  SelectQuery q;
  q.distinct = coin(rng) == 1;
  std::uniform_int_distribution<size_t> n_base(1, 3);
  size_t nb = n_base(rng);
  for (size_t i = 0; i < nb; ++i) q.patterns.push_back(make_pattern(i == 0));

  if (coin(rng)) {
    std::uniform_int_distribution<size_t> n_groups(2, 3);
    std::uniform_int_distribution<size_t> n_inner(1, 2);
    size_t ng = n_groups(rng);
    for (size_t gi = 0; gi < ng && q.patterns.size() < 8; ++gi) {
      PatternGroup group;
      size_t ni = n_inner(rng);
      for (size_t i = 0; i < ni; ++i) group.patterns.push_back(make_pattern(false));
      q.unions.push_back(std::move(group));
    }
  }

  std::set<std::string> common;
  for (const auto& p : q.patterns)
    for (const auto* t : {&p.s, &p.p, &p.o})
      if (const auto* v = std::get_if<Variable>(t)) common.insert(v->name);
  std::vector<std::string> commons(common.begin(), common.end());
  std::uniform_int_distribution<size_t> c_pick(0, commons.size() - 1);
  q.projection.push_back(commons[c_pick(rng)]);
  if (commons.size() > 1 && coin(rng)) {
    std::string second = commons[c_pick(rng)];
    if (second != q.projection[0]) q.projection.push_back(second);
  }

  if (coin(rng) == 0) {
    std::uniform_int_distribution<size_t> f_pick(0, filter_patterns.size() - 1);
    RegexFilter f;
    f.variable = commons[c_pick(rng)];
    f.pattern = filter_patterns[f_pick(rng)];
    f.icase = coin(rng) == 1;
    q.filters.push_back(f);
  }
  return q;
}

Outcome c2_sparql_oracle() {
  std::mt19937 rng(202);
  auto start = std::chrono::steady_clock::now();
  for (int trial = 0; trial < 100; ++trial) {
    EventPlotGraph g = random_graph(rng);
    SelectQuery q = random_query(g, rng);
    BindingSet got = execute(g, q);
    std::vector<std::vector<Term>> want = brute_force(g, q);
    if (got.rows != want) return {false, "row mismatch on trial " + std::to_string(trial)};
  }
  auto elapsed = std::chrono::duration_cast<std::chrono::milliseconds>(
                     std::chrono::steady_clock::now() - start)
                     .count();
  if (elapsed >= 30000) return {false, "took " + std::to_string(elapsed) + " ms"};
  return {true, ""};
}

Outcome c3_listing_reproduction() {
  EventPlotGraph g = parse_turtle(read_file(fixture("graphs/listing1.ttl")));
  const std::set<std::string> expected = {
      "OceanGate Expeditions", "Stockton Rush", "Paul-Henri Nargeloe", "Hamish Harding",
      "Shahzada Dawood",       "Suleman Dawood", "Titanic",            "wreck",
      "submersible",           "18 June",        "370 miles",          "Newfoundland",
      "Canada",                "Atlantic Ocean"};
  BindingSet rows = execute(g, lead_template("Oceangate"));
  std::set<std::string> values;
  for (const auto& row : rows.rows) values.insert(term_string(row.at(0)));
  if (values != expected) {
    return {false, "lead value set has " + std::to_string(values.size()) + " entries"};
  }
  std::string once = to_tsv(rows);
  std::string twice = to_tsv(execute(parse_turtle(serialize_turtle(g)), lead_template("Oceangate")));
  if (once != twice) return {false, "output not byte-stable"};
  return {true, ""};
}

ArticleRecord acceptance_article(std::mt19937& rng) {
  std::string tag = "r" + std::to_string(rng() % 100000);
  ArticleRecord a;
  a.url = "http://news.test/articles/" + tag + ".html";
  a.headline = "Headline " + tag;
  a.authors = {"Author " + tag};
  a.source = "Test Wire";
  a.published = 1687168800;
  a.body_text = "Body " + tag + ".";
  a.paragraphs = {a.body_text};
  a.id = article_id_for(a.url, a.body_text);
  return a;
}

Outcome c4_turtle_round_trip() {
  static const std::vector<PlotKind> kinds = {
      PlotKind::Who,     PlotKind::What,       PlotKind::When,     PlotKind::Where,
      PlotKind::Why,     PlotKind::Quote,      PlotKind::Evidence, PlotKind::Photo,
      PlotKind::Opinion, PlotKind::PersTactic, PlotKind::Sentiment};
  static const std::vector<std::string> values = {
      "alpha", "beta value", "gamma, with comma", "delta \"quoted\"", "18 June",
      "negative", "370 miles", "line\nbreak", "tab\there", "back\\slash"};
  std::mt19937 rng(404);
  std::uniform_int_distribution<size_t> n_articles(1, 3);
  std::uniform_int_distribution<size_t> n_points(0, 6);
  std::uniform_int_distribution<size_t> pick_kind(0, kinds.size() - 1);
  std::uniform_int_distribution<size_t> pick_value(0, values.size() - 1);

  for (int trial = 0; trial < 100; ++trial) {
    EventPlotGraph g;
    size_t na = n_articles(rng);
    for (size_t i = 0; i < na; ++i) {
      ArticleRecord a = acceptance_article(rng);
      Iri art = assert_article(g, a);
      size_t np = n_points(rng);
      for (size_t j = 0; j < np; ++j) {
        PlotPoint p;
        p.article_id = a.id;
        p.kind = kinds[pick_kind(rng)];
        p.level = level_of(p.kind);
        p.surface_text = values[pick_value(rng)];
        p.id = hex64(fnv1a64(a.id + p.surface_text + to_string(p.kind))) + std::to_string(j);
        assert_plot_point(g, art, p);
      }
    }
    std::string once = serialize_turtle(g);
    EventPlotGraph back = parse_turtle(once);
    if (!(back == g)) return {false, "parse(serialize(g)) != g on trial " + std::to_string(trial)};
    if (serialize_turtle(back) != once) {
      return {false, "serializer not byte-idempotent on trial " + std::to_string(trial)};
    }
  }
  return {true, ""};
}

Outcome c5_well_formedness() {
  std::string dir = sandbox("wellformed");
  write_pipeline_config(dir);
  if (run_cli(dir, "ingest --from-files '" + fixture("corpus") + "'") != 0)
    return {false, "ingest failed"};
  if (run_cli(dir, "extract") != 0) return {false, "extract failed"};
  if (run_cli(dir, "assert") != 0) return {false, "assert failed"};
  EventPlotGraph g = parse_turtle(read_file(dir + "/data/epg.ttl"));
  if (g.size() == 0) return {false, "asserted graph is empty"};
  std::vector<std::string> violations = well_formedness_violations(g);
  if (!violations.empty()) {
    return {false, std::to_string(violations.size()) + " violations, first: " + violations[0]};
  }
  return {true, ""};
}

Outcome c6_end_to_end_golden() {
  auto start = std::chrono::steady_clock::now();
  std::string dir = sandbox("golden");
  write_pipeline_config(dir);
  if (run_cli(dir, "ingest --from-files '" + fixture("corpus") + "'") != 0)
    return {false, "ingest failed"};
  if (run_cli(dir, "extract") != 0) return {false, "extract failed"};
  if (run_cli(dir, "assert") != 0) return {false, "assert failed"};
  if (run_cli(dir, "generate --event Oceangate") != 0) return {false, "generate failed"};
  std::string first = slurp(dir + "/data/report.json");
  if (run_cli(dir, "generate --event Oceangate --output second.json") != 0)
    return {false, "second generate failed"};
  auto elapsed = std::chrono::duration_cast<std::chrono::milliseconds>(
                     std::chrono::steady_clock::now() - start)
                     .count();
  if (slurp(dir + "/second.json") != first) return {false, "runs not byte-identical"};

  std::optional<IntelligenceReport> report = report_from_json(first);
  if (!report) return {false, "report JSON unreadable"};
  size_t sections = 0;
  for (const std::optional<SectionReport>* section :
       {&report->lead, &report->body, &report->tail}) {
    if (!section->has_value()) continue;
    ++sections;
    if ((*section)->coverage != 1.0) {
      return {false, "section coverage " + std::to_string((*section)->coverage)};
    }
  }
  if (sections == 0) return {false, "report has no sections"};
  if (report->lead && word_count(report->lead->text) > 500) return {false, "lead over cap"};
  if (report->body && word_count(report->body->text) > 500) return {false, "body over cap"};
  if (report->tail && word_count(report->tail->text) > 100) return {false, "tail over cap"};
  if (elapsed >= 10000) return {false, "took " + std::to_string(elapsed) + " ms"};
  return {true, ""};
}

Outcome c7_supp_cont() {
  GoldPlotSet gold = load_gold_set(fixture("gold/oceangate_gold.txt"));
  if (gold.points.size() != 16) {
    return {false, "gold set holds " + std::to_string(gold.points.size())};
  }
  std::vector<std::string> report = {
      "OceanGate Expeditions", "Stockton Rush",  "Paul-Henri Nargeloe", "Hamish Harding",
      "Shahzada Dawood",       "Suleman Dawood", "Titanic",             "wreck",
      "submersible",           "18 June",        "370 miles",           "Newfoundland",
      "Canada"};
  SuppContScore score = supp_cont(report, gold);
  if (score.supp != 13 || score.cont != 3) {
    return {false, "supp " + std::to_string(score.supp) + " cont " + std::to_string(score.cont)};
  }
  std::mt19937 rng(707);
  std::bernoulli_distribution keep(0.5);
  for (int trial = 0; trial < 100; ++trial) {
    std::vector<std::string> perturbed;
    for (const auto& point : gold.points)
      if (keep(rng)) perturbed.push_back(point);
    if (keep(rng)) perturbed.push_back("noise " + std::to_string(trial));
    SuppContScore s = supp_cont(perturbed, gold);
    if (s.supp + s.cont != 16) {
      return {false, "partition broke on trial " + std::to_string(trial)};
    }
  }
  return {true, ""};
}

AnnotationTable agreement_table(size_t a, size_t b, size_t c, size_t d) {
  AnnotationTable t;
  auto add = [&](size_t count, const char* la, const char* lb) {
    for (size_t i = 0; i < count; ++i) {
      t.items.push_back("item" + std::to_string(t.items.size()));
      t.labels_a.push_back(la);
      t.labels_b.push_back(lb);
    }
  };
  add(a, "yes", "yes");
  add(b, "yes", "no");
  add(c, "no", "yes");
  add(d, "no", "no");
  return t;
}

Outcome c8_kappa() {
  if (std::abs(cohen_kappa(agreement_table(5, 0, 0, 5)) - 1.0) > 1e-12) {
    return {false, "perfect agreement not 1.0"};
  }
  double ten_item = cohen_kappa(load_annotations(fixture("eval/annotations_10.tsv")));
  if (std::abs(ten_item - 0.5833) > 1e-4) {
    return {false, "10-item table scored " + std::to_string(ten_item)};
  }
  AnnotationTable above = agreement_table(17, 0, 10, 23);  // kappa 0.60998
  AnnotationTable below = agreement_table(12, 4, 4, 21);   // kappa 0.59
  double k_above = cohen_kappa(above);
  double k_below = cohen_kappa(below);
  if (!(k_above > 0.6 && k_above < 0.62)) return {false, "high table off target"};
  if (std::abs(k_below - 0.59) > 1e-9) return {false, "low table off target"};
  GoldPlotSet filtered = filter_gold_by_kappa({{"kept", above}, {"dropped", below}});
  if (filtered.points != std::vector<std::string>{"kept"}) {
    return {false, "threshold filter kept the wrong candidates"};
  }
  return {true, ""};
}

Outcome c9_npce_golden() {
  const FeedSource source{"Global Wire", "http://news.test/feeds/globalwire.xml", FeedKind::Rss};
  auto entries = parse_rss(read_file(fixture("corpus/feeds/globalwire.xml")), source);
  if (entries.empty() || entries[0].link != "http://news.test/articles/ocean-1.html") {
    return {false, "fixture feed lost its first entry"};
  }
  ArticleRecord article = extract_article(read_file(fixture("corpus/articles/ocean-1.html")),
                                          entries[0], source, 0);
  Gazetteer gaz = load_gazetteer(fixture("resources/gazetteer.tsv"));
  CausalCueSet cues{load_term_list(fixture("resources/causal_cues.txt"))};
  SentimentLexicon lex = load_sentiment_lexicon(fixture("resources/sentiment_positive.txt"),
                                                fixture("resources/sentiment_negative.txt"));
  TacticRuleSet rules = load_tactic_rules(fixture("resources/tactics.tsv"));
  auto opinion_cues = load_term_list(fixture("resources/opinion_cues.txt"));

  ExtractionResult result = run_npce(article, gaz, cues, lex, rules, 2, opinion_cues);
  ExtractionResult again = run_npce(article, gaz, cues, lex, rules, 2, opinion_cues);
  if (!(result.plot_points == again.plot_points)) return {false, "extraction not deterministic"};

  auto golden = read_lines(fixture("golden/ocean1_points.ndjson"));
  if (golden.empty()) return {false, "golden file is empty"};
  if (result.plot_points.size() != golden.size()) {
    return {false, std::to_string(result.plot_points.size()) + " points vs golden " +
                       std::to_string(golden.size())};
  }
  for (size_t i = 0; i < golden.size(); ++i) {
    if (plot_point_to_json_line(result.plot_points[i]) != golden[i]) {
      return {false, "line " + std::to_string(i + 1) + " differs from golden"};
    }
  }
  return {true, ""};
}

Outcome c10_likert() {
  double fluency = likert_average({4, 4, 5, 4, 4});
  if (std::abs(fluency - 4.2) > 1e-12) return {false, "mean " + std::to_string(fluency)};
  return {true, ""};
}

}  // namespace

int main() {
  struct Criterion {
    int num;
    const char* name;
    Outcome (*check)();
  };
  const Criterion criteria[] = {
      {1, "rouge oracle equivalence", c1_rouge_oracle},
      {2, "sparql oracle equivalence", c2_sparql_oracle},
      {3, "lead template value set reproduction", c3_listing_reproduction},
      {4, "turtle round trip and canonical idempotence", c4_turtle_round_trip},
      {5, "graph well-formedness after full corpus assert", c5_well_formedness},
      {6, "end-to-end golden run determinism and caps", c6_end_to_end_golden},
      {7, "supp/cont arithmetic and partition", c7_supp_cont},
      {8, "kappa values and threshold filter", c8_kappa},
      {9, "npce golden extraction", c9_npce_golden},
      {10, "likert averaging", c10_likert},
  };

  int failures = 0;
  for (const auto& criterion : criteria) {
    Outcome outcome;
    try {
      outcome = criterion.check();
    } catch (const std::exception& e) {
      outcome = {false, e.what()};
    }
    std::string line = outcome.ok ? "PASS" : "FAIL";
    line += " " + std::to_string(criterion.num) + " " + criterion.name;
    if (!outcome.ok && !outcome.detail.empty()) line += " (" + outcome.detail + ")";
    std::puts(line.c_str());
    if (!outcome.ok) ++failures;
  }
  if (failures) {
    std::printf("%d of 10 criteria failed\n", failures);
    return 1;
  }
  std::puts("all 10 criteria passed");
  return 0;
}
