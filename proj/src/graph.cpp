#include "newsplot/graph.hpp"

#include <algorithm>
#include <regex>
#include <sstream>

#include "newsplot/text.hpp"

namespace newsplot {

namespace eno {

Iri narr(const std::string& local) { return Iri{kNarrNs + local}; }
Iri inst(const std::string& local) { return Iri{kInstNs + local}; }
Iri rdf_type() { return Iri{kRdfNs + "type"}; }

Iri article_headline() { return narr("articleHeadline"); }
Iri author_of_article() { return narr("authorOfArticle"); }
Iri published_by() { return narr("publishedBy"); }
Iri published_date() { return narr("publishedDate"); }
Iri has_plot_point() { return narr("hasPlotPoint"); }
Iri value_property() { return narr("value"); }

const std::vector<std::string>& all_classes() {
  static const std::vector<std::string> classes = {
      "NewsArticle", "PlotPoint", "Lead",     "Body",    "Tail",       "Who",
      "What",        "When",      "Where",    "Why",     "Evidence",   "Quote",
      "MediaObject", "Opinion",   "PersTactic", "Sentiment"};
  return classes;
}

std::string class_for_kind(PlotKind kind) {
  switch (kind) {
    case PlotKind::Who: return "Who";
    case PlotKind::What: return "What";
    case PlotKind::When: return "When";
    case PlotKind::Where: return "Where";
    case PlotKind::Why: return "Why";
    case PlotKind::Evidence: return "Evidence";
    case PlotKind::Quote: return "Quote";
    case PlotKind::Photo:
    case PlotKind::Video:
    case PlotKind::Audio:
      return "MediaObject";
    case PlotKind::Opinion: return "Opinion";
    case PlotKind::PersTactic: return "PersTactic";
    case PlotKind::Sentiment: return "Sentiment";
  }
  return "Who";
}

namespace {

const std::map<std::string, std::string>& parent_of() {
  static const std::map<std::string, std::string> parents = {
      {"Lead", "PlotPoint"},   {"Body", "PlotPoint"},      {"Tail", "PlotPoint"},
      {"Who", "Lead"},         {"What", "Lead"},           {"When", "Lead"},
      {"Where", "Lead"},       {"Why", "Lead"},            {"Evidence", "Body"},
      {"Quote", "Body"},       {"MediaObject", "Body"},    {"Opinion", "Tail"},
      {"PersTactic", "Tail"},  {"Sentiment", "Tail"}};
  return parents;
}

}  // namespace

std::vector<std::string> type_closure(const std::string& leaf_class) {
  std::vector<std::string> chain;
  std::string cur = leaf_class;
  chain.push_back(cur);
  auto& parents = parent_of();
  while (true) {
    auto it = parents.find(cur);
    if (it == parents.end()) break;
    cur = it->second;
    chain.push_back(cur);
  }
  return chain;
}

const std::vector<std::string>& leaf_classes() {
  static const std::vector<std::string> leaves = {
      "Who",   "What",        "When",    "Where",      "Why",      "Evidence",
      "Quote", "MediaObject", "Opinion", "PersTactic", "Sentiment"};
  return leaves;
}

const std::vector<std::string>& lead_classes() {
  static const std::vector<std::string> v = {"Who", "What", "When", "Where", "Why"};
  return v;
}

const std::vector<std::string>& body_classes() {
  static const std::vector<std::string> v = {"Evidence", "Quote", "MediaObject"};
  return v;
}

const std::vector<std::string>& tail_classes() {
  static const std::vector<std::string> v = {"Opinion", "PersTactic", "Sentiment"};
  return v;
}

}  // namespace eno

TurtleSyntax::TurtleSyntax(const std::string& what, size_t line, size_t col)
    : Error(what + " at line " + std::to_string(line) + ", column " + std::to_string(col)),
      line_(line),
      col_(col) {}

EventPlotGraph::EventPlotGraph(const EventPlotGraph& other) : triples_(other.triples_) {
  rebuild_indexes();
}

EventPlotGraph& EventPlotGraph::operator=(const EventPlotGraph& other) {
  if (this != &other) {
    triples_ = other.triples_;
    rebuild_indexes();
  }
  return *this;
}

void EventPlotGraph::index(const Triple& stored) {
  by_subject_[stored.s].push_back(&stored);
  by_predicate_[stored.p].push_back(&stored);
  by_object_[stored.o].push_back(&stored);
}

void EventPlotGraph::rebuild_indexes() {
  by_subject_.clear();
  by_predicate_.clear();
  by_object_.clear();
  for (const auto& t : triples_) index(t);
}

bool EventPlotGraph::insert(Triple t) {
  auto [it, added] = triples_.insert(std::move(t));
  if (added) index(*it);
  return added;
}

bool EventPlotGraph::contains(const Triple& t) const { return triples_.count(t) > 0; }

std::vector<Triple> EventPlotGraph::match(const std::optional<Iri>& s,
                                          const std::optional<Iri>& p,
                                          const std::optional<Term>& o) const {
  // Drive the scan from the most selective bound position.
  const std::vector<const Triple*>* candidates = nullptr;
  auto narrower = [&](const std::vector<const Triple*>* v) {
    if (v && (!candidates || v->size() < candidates->size())) candidates = v;
  };
  static const std::vector<const Triple*> kEmpty;
  if (s) {
    auto it = by_subject_.find(*s);
    narrower(it == by_subject_.end() ? &kEmpty : &it->second);
  }
  if (p) {
    auto it = by_predicate_.find(*p);
    narrower(it == by_predicate_.end() ? &kEmpty : &it->second);
  }
  if (o) {
    auto it = by_object_.find(*o);
    narrower(it == by_object_.end() ? &kEmpty : &it->second);
  }

  std::vector<Triple> out;
  auto keep = [&](const Triple& t) {
    return (!s || t.s == *s) && (!p || t.p == *p) && (!o || t.o == *o);
  };
  if (candidates) {
    for (const Triple* t : *candidates) {
      if (keep(*t)) out.push_back(*t);
    }
  } else {
    for (const auto& t : triples_) {
      if (keep(t)) out.push_back(t);
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

size_t EventPlotGraph::count(const std::optional<Iri>& s, const std::optional<Iri>& p,
                             const std::optional<Term>& o) const {
  return match(s, p, o).size();
}

Iri article_iri(const std::string& article_id) { return eno::inst("News" + article_id); }
Iri point_iri(const std::string& point_id) { return eno::inst("Point" + point_id); }

Iri assert_article(EventPlotGraph& g, const ArticleRecord& a) {
  Iri iri = article_iri(a.id);
  g.insert({iri, eno::rdf_type(), eno::narr("NewsArticle")});
  g.insert({iri, eno::article_headline(), Literal{a.headline, LiteralType::String}});
  for (const auto& author : a.authors) {
    g.insert({iri, eno::author_of_article(), Literal{author, LiteralType::String}});
  }
  if (!a.source.empty()) {
    g.insert({iri, eno::published_by(), Literal{a.source, LiteralType::String}});
  }
  if (a.published) {
    g.insert({iri, eno::published_date(),
              Literal{format_iso8601(*a.published), LiteralType::DateTime}});
  }
  return iri;
}

Iri assert_plot_point(EventPlotGraph& g, const Iri& article, const PlotPoint& p) {
  if (!g.contains({article, eno::rdf_type(), eno::narr("NewsArticle")})) {
    throw UnknownArticle(article.value + " is not typed NewsArticle");
  }
  Iri iri = point_iri(p.id);
  for (const auto& cls : eno::type_closure(eno::class_for_kind(p.kind))) {
    g.insert({iri, eno::rdf_type(), eno::narr(cls)});
  }
  g.insert({iri, eno::value_property(), Literal{p.surface_text, LiteralType::String}});
  g.insert({article, eno::has_plot_point(), iri});
  return iri;
}

namespace {

std::string escape_literal(const std::string& s) {
  std::string out;
  out.reserve(s.size() + 8);
  for (char c : s) {
    switch (c) {
      case '\\': out += "\\\\"; break;
      case '"': out += "\\\""; break;
      case '\n': out += "\\n"; break;
      case '\r': out += "\\r"; break;
      case '\t': out += "\\t"; break;
      default: out += c;
    }
  }
  return out;
}

bool plain_local(const std::string& local) {
  if (local.empty()) return false;
  for (char c : local) {
    bool ok = (c >= 'A' && c <= 'Z') || (c >= 'a' && c <= 'z') || (c >= '0' && c <= '9') ||
              c == '_';
    if (!ok) return false;
  }
  return true;
}

std::string render_iri(const Iri& iri, bool predicate_position) {
  if (predicate_position && iri == eno::rdf_type()) return "a";
  if (iri.value.rfind(eno::kNarrNs, 0) == 0) {
    std::string local = iri.value.substr(eno::kNarrNs.size());
    if (plain_local(local)) return "narr:" + local;
  }
  if (iri.value.rfind(eno::kRdfNs, 0) == 0) {
    std::string local = iri.value.substr(eno::kRdfNs.size());
    if (plain_local(local)) return "rdf:" + local;
  }
  return "<" + iri.value + ">";
}

std::string render_term(const Term& t) {
  if (std::holds_alternative<Iri>(t)) return render_iri(std::get<Iri>(t), false);
  const Literal& lit = std::get<Literal>(t);
  std::string out = "\"" + escape_literal(lit.lexical) + "\"";
  if (lit.type == LiteralType::DateTime) out += "^^<" + eno::kXsdDateTime + ">";
  return out;
}

}  // namespace

std::string serialize_turtle(const EventPlotGraph& g) {
  std::ostringstream out;
  out << "@prefix narr: <" << eno::kNarrNs << "> .\n";
  out << "@prefix rdf: <" << eno::kRdfNs << "> .\n";

  // triples() is already in canonical (s, p, o) order.
  const Iri* current = nullptr;
  bool first_po = true;
  for (const auto& t : g.triples()) {
    if (!current || !(t.s == *current)) {
      if (current) out << " .\n";
      out << "\n" << render_iri(t.s, false) << " ";
      current = &t.s;
      first_po = true;
    }
    if (!first_po) out << " ;\n    ";
    out << render_iri(t.p, true) << " " << render_term(t.o);
    first_po = false;
  }
  if (current) out << " .\n";
  return out.str();
}

namespace {

enum class TokKind { IriRef, Pname, A, String, Caret, Dot, Semi, Comma, PrefixDecl, End };

struct Token {
  TokKind kind = TokKind::End;
  std::string text;    // IRI value, literal value, or pname text
  std::string prefix;  // pname namespace part
  std::string local;   // pname local part
  size_t line = 1;
  size_t col = 1;
};

class Lexer {
 public:
  explicit Lexer(const std::string& text) : text_(text) {}

  Token next() {
    skip_space();
    Token tok;
    tok.line = line_;
    tok.col = col_;
    if (pos_ >= text_.size()) {
      tok.kind = TokKind::End;
      return tok;
    }
    char c = text_[pos_];
    if (c == '<') return iri_ref(tok);
    if (c == '"') return string_literal(tok);
    if (c == '.') return punct(tok, TokKind::Dot);
    if (c == ';') return punct(tok, TokKind::Semi);
    if (c == ',') return punct(tok, TokKind::Comma);
    if (c == '^') return caret(tok);
    if (c == '@') return at_keyword(tok);
    if (is_name_char(c) || c == ':') return name(tok);
    throw TurtleSyntax(std::string("unexpected character '") + c + "'", line_, col_);
  }

 private:
  const std::string& text_;
  size_t pos_ = 0;
  size_t line_ = 1;
  size_t col_ = 1;

  void advance() {
    if (text_[pos_] == '\n') {
      ++line_;
      col_ = 1;
    } else {
      ++col_;
    }
    ++pos_;
  }

  void skip_space() {
    while (pos_ < text_.size()) {
      char c = text_[pos_];
      if (c == ' ' || c == '\t' || c == '\r' || c == '\n') {
        advance();
      } else if (c == '#') {
        while (pos_ < text_.size() && text_[pos_] != '\n') advance();
      } else {
        break;
      }
    }
  }

  static bool is_name_char(char c) {
    return (c >= 'A' && c <= 'Z') || (c >= 'a' && c <= 'z') || (c >= '0' && c <= '9') ||
           c == '_' || c == '-';
  }

  Token punct(Token tok, TokKind kind) {
    tok.kind = kind;
    advance();
    return tok;
  }

  Token caret(Token tok) {
    advance();
    if (pos_ >= text_.size() || text_[pos_] != '^') {
      throw TurtleSyntax("expected '^^'", tok.line, tok.col);
    }
    advance();
    tok.kind = TokKind::Caret;
    return tok;
  }

  Token iri_ref(Token tok) {
    advance();  // consume '<'
    std::string value;
    while (pos_ < text_.size() && text_[pos_] != '>') {
      if (text_[pos_] == '\n') {
        throw TurtleSyntax("unterminated IRI", tok.line, tok.col);
      }
      value += text_[pos_];
      advance();
    }
    if (pos_ >= text_.size()) throw TurtleSyntax("unterminated IRI", tok.line, tok.col);
    advance();  // consume '>'
    tok.kind = TokKind::IriRef;
    tok.text = std::move(value);
    return tok;
  }

  Token string_literal(Token tok) {
    advance();  // consume opening quote
    std::string value;
    while (pos_ < text_.size()) {
      char c = text_[pos_];
      if (c == '"') {
        advance();
        tok.kind = TokKind::String;
        tok.text = std::move(value);
        return tok;
      }
      if (c == '\n') break;
      if (c == '\\') {
        advance();
        if (pos_ >= text_.size()) break;
        char esc = text_[pos_];
        switch (esc) {
          case '\\': value += '\\'; break;
          case '"': value += '"'; break;
          case 'n': value += '\n'; break;
          case 'r': value += '\r'; break;
          case 't': value += '\t'; break;
          default:
            throw TurtleSyntax(std::string("unknown escape '\\") + esc + "'", line_, col_);
        }
        advance();
      } else {
        value += c;
        advance();
      }
    }
    throw TurtleSyntax("unterminated string literal", tok.line, tok.col);
  }

  Token at_keyword(Token tok) {
    advance();  // consume '@'
    std::string word;
    while (pos_ < text_.size() && is_name_char(text_[pos_])) {
      word += text_[pos_];
      advance();
    }
    if (word != "prefix") {
      throw TurtleSyntax("unsupported directive '@" + word + "'", tok.line, tok.col);
    }
    tok.kind = TokKind::PrefixDecl;
    return tok;
  }

  Token name(Token tok) {
    std::string word;
    bool has_colon = false;
    while (pos_ < text_.size() && (is_name_char(text_[pos_]) || text_[pos_] == ':')) {
      if (text_[pos_] == ':') {
        if (has_colon) break;  // one namespace separator only
        has_colon = true;
      }
      word += text_[pos_];
      advance();
    }
    if (word == "a") {
      tok.kind = TokKind::A;
      return tok;
    }
    if (!has_colon) {
      throw TurtleSyntax("unexpected token '" + word + "'", tok.line, tok.col);
    }
    size_t colon = word.find(':');
    tok.kind = TokKind::Pname;
    tok.prefix = word.substr(0, colon);
    tok.local = word.substr(colon + 1);
    return tok;
  }
};

class TurtleParser {
 public:
  explicit TurtleParser(const std::string& text) : lexer_(text) {
    prefixes_["narr"] = eno::kNarrNs;
    prefixes_["rdf"] = eno::kRdfNs;
    advance();
  }

  EventPlotGraph parse() {
    EventPlotGraph g;
    while (tok_.kind != TokKind::End) {
      if (tok_.kind == TokKind::PrefixDecl) {
        prefix_decl();
      } else {
        triple_block(g);
      }
    }
    return g;
  }

 private:
  Lexer lexer_;
  Token tok_;
  std::map<std::string, std::string> prefixes_;

  void advance() { tok_ = lexer_.next(); }

  [[noreturn]] void fail(const std::string& msg) {
    throw TurtleSyntax(msg, tok_.line, tok_.col);
  }

  void expect(TokKind kind, const std::string& what) {
    if (tok_.kind != kind) fail("expected " + what);
    advance();
  }

  Iri resolve_pname(const Token& tok) {
    auto it = prefixes_.find(tok.prefix);
    if (it == prefixes_.end()) fail("undeclared prefix '" + tok.prefix + ":'");
    return Iri{it->second + tok.local};
  }

  void prefix_decl() {
    advance();  // consume @prefix
    if (tok_.kind != TokKind::Pname || !tok_.local.empty()) fail("expected prefix name");
    std::string name = tok_.prefix;
    advance();
    if (tok_.kind != TokKind::IriRef) fail("expected namespace IRI");
    prefixes_[name] = tok_.text;
    advance();
    expect(TokKind::Dot, "'.'");
  }

  Iri iri_only(const std::string& position) {
    if (tok_.kind == TokKind::IriRef) {
      Iri out{tok_.text};
      advance();
      return out;
    }
    if (tok_.kind == TokKind::Pname) {
      Iri out = resolve_pname(tok_);
      advance();
      return out;
    }
    fail("expected IRI in " + position + " position");
  }

  Iri predicate() {
    if (tok_.kind == TokKind::A) {
      advance();
      return eno::rdf_type();
    }
    return iri_only("predicate");
  }

  Term object() {
    if (tok_.kind == TokKind::String) {
      Literal lit{tok_.text, LiteralType::String};
      Token str_tok = tok_;
      advance();
      if (tok_.kind == TokKind::Caret) {
        advance();
        Iri dtype = iri_only("datatype");
        if (dtype.value != eno::kXsdDateTime) {
          throw TurtleSyntax("unsupported datatype <" + dtype.value + ">", str_tok.line,
                             str_tok.col);
        }
        if (!parse_iso8601(lit.lexical)) {
          throw TurtleSyntax("invalid dateTime literal \"" + lit.lexical + "\"", str_tok.line,
                             str_tok.col);
        }
        lit.type = LiteralType::DateTime;
      }
      return lit;
    }
    return iri_only("object");
  }

  void triple_block(EventPlotGraph& g) {
    Iri subject = iri_only("subject");
    while (true) {
      Iri pred = predicate();
      while (true) {
        Term obj = object();
        g.insert({subject, pred, std::move(obj)});
        if (tok_.kind == TokKind::Comma) {
          advance();
          continue;
        }
        break;
      }
      if (tok_.kind == TokKind::Semi) {
        advance();
        continue;
      }
      break;
    }
    expect(TokKind::Dot, "'.'");
  }
};

}  // namespace

EventPlotGraph parse_turtle(const std::string& text) {
  TurtleParser parser(text);
  return parser.parse();
}

EventPlotGraph subgraph_for_event(const EventPlotGraph& g, const std::string& event_query) {
  // The query is a regex; an invalid pattern degrades to a literal
  // case-insensitive substring test.
  std::optional<std::regex> re;
  try {
    re.emplace(event_query, std::regex::ECMAScript | std::regex::icase);
  } catch (const std::regex_error&) {
    re.reset();
  }
  std::string query_lower = to_lower_ascii(event_query);
  auto headline_matches = [&](const std::string& headline) {
    if (re) return std::regex_search(headline, *re);
    return to_lower_ascii(headline).find(query_lower) != std::string::npos;
  };

  EventPlotGraph out;
  for (const auto& t : g.match(std::nullopt, eno::article_headline(), std::nullopt)) {
    if (!std::holds_alternative<Literal>(t.o)) continue;
    if (!headline_matches(std::get<Literal>(t.o).lexical)) continue;
    const Iri& article = t.s;
    if (!g.contains({article, eno::rdf_type(), eno::narr("NewsArticle")})) continue;
    for (const auto& at : g.match(article, std::nullopt, std::nullopt)) {
      out.insert(at);
      if (at.p == eno::has_plot_point() && std::holds_alternative<Iri>(at.o)) {
        for (const auto& pt : g.match(std::get<Iri>(at.o), std::nullopt, std::nullopt)) {
          out.insert(pt);
        }
      }
    }
  }
  return out;
}

std::vector<std::string> well_formedness_violations(const EventPlotGraph& g) {
  std::set<std::string> point_class_set;
  for (const auto& cls : eno::all_classes()) {
    if (cls != "NewsArticle") point_class_set.insert(cls);
  }
  std::set<std::string> leaf_set(eno::leaf_classes().begin(), eno::leaf_classes().end());

  // Instances carrying any point-class type.
  std::set<Iri> instances;
  for (const auto& t : g.match(std::nullopt, eno::rdf_type(), std::nullopt)) {
    if (!std::holds_alternative<Iri>(t.o)) continue;
    const std::string& type_iri = std::get<Iri>(t.o).value;
    if (type_iri.rfind(eno::kNarrNs, 0) != 0) continue;
    if (point_class_set.count(type_iri.substr(eno::kNarrNs.size()))) instances.insert(t.s);
  }

  std::vector<std::string> violations;
  for (const auto& inst : instances) {
    size_t leaf_types = 0;
    for (const auto& t : g.match(inst, eno::rdf_type(), std::nullopt)) {
      if (!std::holds_alternative<Iri>(t.o)) continue;
      const std::string& type_iri = std::get<Iri>(t.o).value;
      if (type_iri.rfind(eno::kNarrNs, 0) == 0 &&
          leaf_set.count(type_iri.substr(eno::kNarrNs.size()))) {
        ++leaf_types;
      }
    }
    if (leaf_types != 1) {
      violations.push_back(inst.value + ": expected exactly one subclass type, found " +
                           std::to_string(leaf_types));
    }
    bool linked = false;
    for (const auto& t : g.match(std::nullopt, eno::has_plot_point(), Term{inst})) {
      if (g.contains({t.s, eno::rdf_type(), eno::narr("NewsArticle")})) {
        linked = true;
        break;
      }
    }
    if (!linked) {
      violations.push_back(inst.value + ": no incoming hasPlotPoint edge from a NewsArticle");
    }
  }
  std::sort(violations.begin(), violations.end());
  return violations;
}

}  // namespace newsplot
