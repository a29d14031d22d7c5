#include "newsplot/sparql.hpp"

#include <algorithm>
#include <cctype>
#include <regex>
#include <set>
#include <sstream>

namespace newsplot {

QuerySyntax::QuerySyntax(const std::string& what, size_t line, size_t col)
    : Error(what + " at line " + std::to_string(line) + ", column " + std::to_string(col)),
      line_(line),
      col_(col) {}

namespace {

enum class TokKind {
  Ident,   // bare word: keywords, `a`
  Var,     // ?name
  IriRef,  // <...>
  Pname,   // prefix:local
  String,
  LBrace,
  RBrace,
  LParen,
  RParen,
  Comma,
  Dot,
  Star,
  End,
};

struct Token {
  TokKind kind = TokKind::End;
  std::string text;
  std::string prefix;
  std::string local;
  size_t line = 1;
  size_t col = 1;
};

std::string upper(const std::string& s) {
  std::string out = s;
  for (char& c : out) c = static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
  return out;
}

class Lexer {
 public:
  explicit Lexer(const std::string& text) : text_(text) {}

  Token next() {
    skip_space();
    Token tok;
    tok.line = line_;
    tok.col = col_;
    if (pos_ >= text_.size()) return tok;
    char c = text_[pos_];
    switch (c) {
      case '{': return punct(tok, TokKind::LBrace);
      case '}': return punct(tok, TokKind::RBrace);
      case '(': return punct(tok, TokKind::LParen);
      case ')': return punct(tok, TokKind::RParen);
      case ',': return punct(tok, TokKind::Comma);
      case '.': return punct(tok, TokKind::Dot);
      case '*': return punct(tok, TokKind::Star);
      case '?':
      case '$': return variable(tok);
      case '<': return iri_ref(tok);
      case '"': return string_literal(tok);
      default: break;
    }
    if (is_name_char(c) || c == ':') return name(tok);
    throw QuerySyntax(std::string("unexpected character '") + c + "'", line_, col_);
  }

 private:
  const std::string& text_;
  size_t pos_ = 0;
  size_t line_ = 1;
  size_t col_ = 1;

  static bool is_name_char(char c) {
    return (c >= 'A' && c <= 'Z') || (c >= 'a' && c <= 'z') || (c >= '0' && c <= '9') ||
           c == '_' || c == '-';
  }

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

  Token punct(Token tok, TokKind kind) {
    tok.kind = kind;
    advance();
    return tok;
  }

  Token variable(Token tok) {
    advance();  // consume '?' or '$'
    std::string name;
    while (pos_ < text_.size() && is_name_char(text_[pos_])) {
      name += text_[pos_];
      advance();
    }
    if (name.empty()) throw QuerySyntax("empty variable name", tok.line, tok.col);
    tok.kind = TokKind::Var;
    tok.text = std::move(name);
    return tok;
  }

  Token iri_ref(Token tok) {
    advance();
    std::string value;
    while (pos_ < text_.size() && text_[pos_] != '>') {
      if (text_[pos_] == '\n') throw QuerySyntax("unterminated IRI", tok.line, tok.col);
      value += text_[pos_];
      advance();
    }
    if (pos_ >= text_.size()) throw QuerySyntax("unterminated IRI", tok.line, tok.col);
    advance();
    tok.kind = TokKind::IriRef;
    tok.text = std::move(value);
    return tok;
  }

  Token string_literal(Token tok) {
    advance();
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
            // Regex patterns carry their own escapes (\., \d, ...).
            value += '\\';
            value += esc;
        }
        advance();
      } else {
        value += c;
        advance();
      }
    }
    throw QuerySyntax("unterminated string literal", tok.line, tok.col);
  }

  Token name(Token tok) {
    std::string word;
    bool has_colon = false;
    while (pos_ < text_.size() && (is_name_char(text_[pos_]) || text_[pos_] == ':')) {
      if (text_[pos_] == ':') {
        if (has_colon) break;
        has_colon = true;
      }
      word += text_[pos_];
      advance();
    }
    if (has_colon) {
      size_t colon = word.find(':');
      tok.kind = TokKind::Pname;
      tok.prefix = word.substr(0, colon);
      tok.local = word.substr(colon + 1);
      return tok;
    }
    tok.kind = TokKind::Ident;
    tok.text = std::move(word);
    return tok;
  }
};

const std::set<std::string>& unsupported_keywords() {
  static const std::set<std::string> kws = {
      "OPTIONAL", "PREFIX",  "BASE",   "ORDER",    "LIMIT",  "OFFSET",
      "GROUP",    "HAVING",  "BIND",   "MINUS",    "GRAPH",  "SERVICE",
      "VALUES",   "ASK",     "CONSTRUCT", "DESCRIBE", "INSERT", "DELETE",
      "EXISTS",   "NOT",     "REDUCED"};
  return kws;
}

class QueryParser {
 public:
  explicit QueryParser(const std::string& text) : lexer_(text) { advance(); }

  SelectQuery parse() {
    reject_unsupported();
    expect_keyword("SELECT");
    SelectQuery q;
    if (is_keyword("DISTINCT")) {
      q.distinct = true;
      advance();
    }
    if (tok_.kind == TokKind::Star) throw UnsupportedFeature("SELECT *");
    while (tok_.kind == TokKind::Var) {
      q.projection.push_back(tok_.text);
      advance();
    }
    if (q.projection.empty()) fail("expected at least one projected variable");

    expect_keyword("WHERE");
    expect(TokKind::LBrace, "'{'");
    bool saw_union = false;
    while (tok_.kind != TokKind::RBrace) {
      if (tok_.kind == TokKind::End) fail("expected '}'");
      if (tok_.kind == TokKind::Ident) {
        std::string kw = upper(tok_.text);
        if (kw == "FILTER") {
          advance();
          q.filters.push_back(parse_filter());
          if (tok_.kind == TokKind::Dot) advance();
          continue;
        }
        if (kw == "UNION") fail("UNION without a preceding group");
        if (unsupported_keywords().count(kw)) throw UnsupportedFeature(kw);
        if (kw != "A") fail("unexpected keyword '" + tok_.text + "'");
      }
      if (tok_.kind == TokKind::LBrace) {
        if (saw_union) throw UnsupportedFeature("multiple UNION blocks");
        saw_union = true;
        parse_union_chain(q);
        continue;
      }
      q.patterns.push_back(parse_pattern());
      if (tok_.kind == TokKind::Dot) advance();
    }
    advance();  // consume '}'
    if (tok_.kind == TokKind::Ident) {
      std::string kw = upper(tok_.text);
      if (unsupported_keywords().count(kw)) throw UnsupportedFeature(kw);
    }
    if (tok_.kind != TokKind::End) fail("unexpected trailing input");

    validate(q);
    return q;
  }

 private:
  Lexer lexer_;
  Token tok_;

  void advance() { tok_ = lexer_.next(); }

  [[noreturn]] void fail(const std::string& msg) {
    throw QuerySyntax(msg, tok_.line, tok_.col);
  }

  bool is_keyword(const std::string& kw) const {
    return tok_.kind == TokKind::Ident && upper(tok_.text) == kw;
  }

  void expect_keyword(const std::string& kw) {
    if (!is_keyword(kw)) fail("expected " + kw);
    advance();
  }

  void expect(TokKind kind, const std::string& what) {
    if (tok_.kind != kind) fail("expected " + what);
    advance();
  }

  void reject_unsupported() {
    if (tok_.kind == TokKind::Ident) {
      std::string kw = upper(tok_.text);
      if (kw != "SELECT" && unsupported_keywords().count(kw)) throw UnsupportedFeature(kw);
    }
  }

  Iri resolve_pname(const Token& tok) {
    if (tok.prefix == "narr") return Iri{eno::kNarrNs + tok.local};
    if (tok.prefix == "rdf") return Iri{eno::kRdfNs + tok.local};
    throw QuerySyntax("undeclared prefix '" + tok.prefix + ":'", tok.line, tok.col);
  }

  PatternTerm parse_term(bool allow_literal, bool predicate_position) {
    if (tok_.kind == TokKind::Var) {
      Variable v{tok_.text};
      advance();
      return v;
    }
    if (tok_.kind == TokKind::IriRef) {
      Iri iri{tok_.text};
      advance();
      return iri;
    }
    if (tok_.kind == TokKind::Pname) {
      Iri iri = resolve_pname(tok_);
      advance();
      return iri;
    }
    if (tok_.kind == TokKind::Ident && upper(tok_.text) == "A" && predicate_position) {
      advance();
      return eno::rdf_type();
    }
    if (tok_.kind == TokKind::String) {
      if (!allow_literal) fail("literal not allowed in this position");
      Literal lit{tok_.text, LiteralType::String};
      advance();
      return lit;
    }
    fail("expected variable, IRI, or literal");
  }

  TriplePattern parse_pattern() {
    TriplePattern p;
    p.s = parse_term(false, false);
    p.p = parse_term(false, true);
    p.o = parse_term(true, false);
    return p;
  }

  void parse_union_chain(SelectQuery& q) {
    q.unions.push_back(parse_group());
    if (!is_keyword("UNION")) fail("expected UNION after group");
    while (is_keyword("UNION")) {
      advance();
      q.unions.push_back(parse_group());
    }
  }

  PatternGroup parse_group() {
    expect(TokKind::LBrace, "'{'");
    PatternGroup group;
    while (tok_.kind != TokKind::RBrace) {
      if (tok_.kind == TokKind::End) fail("expected '}'");
      if (tok_.kind == TokKind::Ident) {
        std::string kw = upper(tok_.text);
        if (unsupported_keywords().count(kw)) throw UnsupportedFeature(kw);
        if (kw == "FILTER") throw UnsupportedFeature("FILTER inside UNION group");
        if (kw == "UNION") throw UnsupportedFeature("nested UNION");
      }
      if (tok_.kind == TokKind::LBrace) throw UnsupportedFeature("nested group");
      group.patterns.push_back(parse_pattern());
      if (tok_.kind == TokKind::Dot) advance();
    }
    advance();  // consume '}'
    if (group.patterns.empty()) fail("empty UNION group");
    return group;
  }

  RegexFilter parse_filter() {
    if (!is_keyword("REGEX")) {
      std::string fn = tok_.kind == TokKind::Ident ? tok_.text : "non-regex expression";
      throw UnsupportedFeature("FILTER " + fn);
    }
    advance();
    expect(TokKind::LParen, "'('");
    if (!is_keyword("STR")) fail("expected str(?var)");
    advance();
    expect(TokKind::LParen, "'('");
    if (tok_.kind != TokKind::Var) fail("expected variable in str()");
    RegexFilter f;
    f.variable = tok_.text;
    advance();
    expect(TokKind::RParen, "')'");
    expect(TokKind::Comma, "','");
    if (tok_.kind != TokKind::String) fail("expected regex pattern string");
    f.pattern = tok_.text;
    Token pattern_tok = tok_;
    advance();
    if (tok_.kind == TokKind::Comma) {
      advance();
      if (tok_.kind != TokKind::String) fail("expected regex flags string");
      if (tok_.text == "i") {
        f.icase = true;
      } else if (tok_.text.empty()) {
        f.icase = false;
      } else {
        throw UnsupportedFeature("regex flags \"" + tok_.text + "\"");
      }
      advance();
    }
    expect(TokKind::RParen, "')'");
    try {
      std::regex probe(f.pattern, std::regex::ECMAScript);
    } catch (const std::regex_error&) {
      throw QuerySyntax("regex pattern does not compile", pattern_tok.line, pattern_tok.col);
    }
    return f;
  }

  static void collect_vars(const std::vector<TriplePattern>& patterns,
                           std::set<std::string>& vars) {
    auto add = [&](const PatternTerm& t) {
      if (std::holds_alternative<Variable>(t)) vars.insert(std::get<Variable>(t).name);
    };
    for (const auto& p : patterns) {
      add(p.s);
      add(p.p);
      add(p.o);
    }
  }

  void validate(const SelectQuery& q) {
    if (q.patterns.empty() && q.unions.empty()) {
      throw QuerySyntax("empty WHERE clause", 1, 1);
    }
    std::set<std::string> base_vars;
    collect_vars(q.patterns, base_vars);
    std::vector<std::set<std::string>> group_vars;
    for (const auto& u : q.unions) {
      std::set<std::string> vars = base_vars;
      collect_vars(u.patterns, vars);
      group_vars.push_back(std::move(vars));
    }
    if (group_vars.empty()) group_vars.push_back(base_vars);
    for (const auto& v : q.projection) {
      for (const auto& vars : group_vars) {
        if (!vars.count(v)) {
          throw QuerySyntax("projected variable ?" + v + " is not bound in every branch", 1, 1);
        }
      }
    }
  }
};

}  // namespace

SelectQuery parse_query(const std::string& text) {
  QueryParser parser(text);
  return parser.parse();
}

std::string term_string(const Term& t) {
  if (std::holds_alternative<Iri>(t)) return std::get<Iri>(t).value;
  return std::get<Literal>(t).lexical;
}

namespace {

using Binding = std::map<std::string, Term>;

bool unify(const PatternTerm& pt, const Term& actual, Binding& b) {
  if (std::holds_alternative<Variable>(pt)) {
    const std::string& name = std::get<Variable>(pt).name;
    auto it = b.find(name);
    if (it == b.end()) {
      b.emplace(name, actual);
      return true;
    }
    return it->second == actual;
  }
  if (std::holds_alternative<Iri>(pt)) {
    return std::holds_alternative<Iri>(actual) && std::get<Iri>(pt) == std::get<Iri>(actual);
  }
  return std::holds_alternative<Literal>(actual) &&
         std::get<Literal>(pt) == std::get<Literal>(actual);
}

// Bound positions become index hints for the store scan.
std::vector<Triple> candidates(const EventPlotGraph& g, const TriplePattern& pat,
                               const Binding& b) {
  auto iri_hint = [&](const PatternTerm& t) -> std::optional<Iri> {
    if (std::holds_alternative<Iri>(t)) return std::get<Iri>(t);
    if (std::holds_alternative<Variable>(t)) {
      auto it = b.find(std::get<Variable>(t).name);
      if (it != b.end() && std::holds_alternative<Iri>(it->second)) {
        return std::get<Iri>(it->second);
      }
    }
    return std::nullopt;
  };
  auto term_hint = [&](const PatternTerm& t) -> std::optional<Term> {
    if (std::holds_alternative<Iri>(t)) return Term{std::get<Iri>(t)};
    if (std::holds_alternative<Literal>(t)) return Term{std::get<Literal>(t)};
    auto it = b.find(std::get<Variable>(t).name);
    if (it != b.end()) return it->second;
    return std::nullopt;
  };

  // A subject/predicate bound to a literal can never match.
  auto impossible = [&](const PatternTerm& t) {
    if (!std::holds_alternative<Variable>(t)) return false;
    auto it = b.find(std::get<Variable>(t).name);
    return it != b.end() && std::holds_alternative<Literal>(it->second);
  };
  if (impossible(pat.s) || impossible(pat.p)) return {};

  return g.match(iri_hint(pat.s), iri_hint(pat.p), term_hint(pat.o));
}

std::vector<Binding> join_patterns(const EventPlotGraph& g,
                                   const std::vector<TriplePattern>& patterns) {
  std::vector<Binding> solutions = {Binding{}};
  for (const auto& pat : patterns) {
    std::vector<Binding> next;
    for (const auto& sol : solutions) {
      for (const auto& t : candidates(g, pat, sol)) {
        Binding extended = sol;
        if (unify(pat.s, Term{t.s}, extended) && unify(pat.p, Term{t.p}, extended) &&
            unify(pat.o, t.o, extended)) {
          next.push_back(std::move(extended));
        }
      }
    }
    solutions = std::move(next);
    if (solutions.empty()) break;
  }
  return solutions;
}

void pattern_vars(const std::vector<TriplePattern>& patterns, std::set<std::string>& vars) {
  auto add = [&](const PatternTerm& t) {
    if (std::holds_alternative<Variable>(t)) vars.insert(std::get<Variable>(t).name);
  };
  for (const auto& p : patterns) {
    add(p.s);
    add(p.p);
    add(p.o);
  }
}

}  // namespace

BindingSet execute(const EventPlotGraph& g, const SelectQuery& q) {
  std::vector<std::vector<TriplePattern>> groups;
  if (q.unions.empty()) {
    groups.push_back(q.patterns);
  } else {
    for (const auto& u : q.unions) {
      std::vector<TriplePattern> merged = q.patterns;
      merged.insert(merged.end(), u.patterns.begin(), u.patterns.end());
      groups.push_back(std::move(merged));
    }
  }

  std::vector<std::regex> compiled;
  compiled.reserve(q.filters.size());
  for (const auto& f : q.filters) {
    auto flags = std::regex::ECMAScript;
    if (f.icase) flags |= std::regex::icase;
    compiled.emplace_back(f.pattern, flags);
  }

  std::vector<std::vector<Term>> rows;
  for (const auto& group : groups) {
    std::set<std::string> vars;
    pattern_vars(group, vars);
    for (const auto& f : q.filters) {
      if (!vars.count(f.variable)) {
        throw UnboundFilterVariable("filter variable ?" + f.variable +
                                    " is not bound by any pattern");
      }
    }
    for (const auto& sol : join_patterns(g, group)) {
      bool pass = true;
      for (size_t i = 0; i < q.filters.size(); ++i) {
        const Term& bound = sol.at(q.filters[i].variable);
        if (!std::regex_search(term_string(bound), compiled[i])) {
          pass = false;
          break;
        }
      }
      if (!pass) continue;
      std::vector<Term> row;
      row.reserve(q.projection.size());
      bool complete = true;
      for (const auto& v : q.projection) {
        auto it = sol.find(v);
        if (it == sol.end()) {
          complete = false;
          break;
        }
        row.push_back(it->second);
      }
      if (complete) rows.push_back(std::move(row));
    }
  }

  if (q.distinct) {
    std::set<std::vector<Term>> unique(rows.begin(), rows.end());
    rows.assign(unique.begin(), unique.end());
  } else {
    std::sort(rows.begin(), rows.end());
  }

  BindingSet out;
  out.variables = q.projection;
  out.rows = std::move(rows);
  return out;
}

std::string escape_regex(const std::string& s) {
  static const std::string meta = "\\^$.|?*+()[]{}/";
  std::string out;
  out.reserve(s.size() + 4);
  for (char c : s) {
    if (meta.find(c) != std::string::npos) out += '\\';
    out += c;
  }
  return out;
}

SelectQuery subclass_value_template(const std::vector<std::string>& classes,
                                    const std::string& event, bool raw_regex) {
  std::string pattern = raw_regex ? event : escape_regex(event);
  try {
    std::regex probe(pattern, std::regex::ECMAScript | std::regex::icase);
  } catch (const std::regex_error& e) {
    throw InvalidRegex(std::string("event pattern does not compile: ") + e.what());
  }

  auto branch = [&](const std::string& cls) {
    PatternGroup g;
    Variable x{"x"}, v{"v"}, y{"y"}, h{"h"};
    g.patterns.push_back({x, eno::rdf_type(), eno::narr(cls)});
    g.patterns.push_back({x, eno::value_property(), v});
    g.patterns.push_back({y, eno::has_plot_point(), x});
    g.patterns.push_back({y, eno::rdf_type(), eno::narr("NewsArticle")});
    g.patterns.push_back({y, eno::article_headline(), h});
    return g;
  };

  SelectQuery q;
  q.distinct = true;
  q.projection = {"v", "x"};
  if (classes.size() == 1) {
    q.patterns = branch(classes.front()).patterns;
  } else {
    for (const auto& cls : classes) q.unions.push_back(branch(cls));
  }
  q.filters.push_back(RegexFilter{"h", pattern, true});
  return q;
}

namespace {

SelectQuery level_template(const std::vector<std::string>& classes, const std::string& event,
                           bool raw_regex) {
  SelectQuery q = subclass_value_template(classes, event, raw_regex);
  q.projection = {"v"};
  return q;
}

}  // namespace

SelectQuery lead_template(const std::string& event, bool raw_regex) {
  return level_template(eno::lead_classes(), event, raw_regex);
}

SelectQuery body_template(const std::string& event, bool raw_regex) {
  return level_template(eno::body_classes(), event, raw_regex);
}

SelectQuery tail_template(const std::string& event, bool raw_regex) {
  return level_template(eno::tail_classes(), event, raw_regex);
}

std::string to_tsv(const BindingSet& bs) {
  std::ostringstream out;
  for (size_t i = 0; i < bs.variables.size(); ++i) {
    if (i) out << "\t";
    out << "?" << bs.variables[i];
  }
  out << "\n";
  for (const auto& row : bs.rows) {
    for (size_t i = 0; i < row.size(); ++i) {
      if (i) out << "\t";
      std::string v = term_string(row[i]);
      for (char& c : v) {
        if (c == '\t' || c == '\n' || c == '\r') c = ' ';
      }
      out << v;
    }
    out << "\n";
  }
  return out.str();
}

}  // namespace newsplot
