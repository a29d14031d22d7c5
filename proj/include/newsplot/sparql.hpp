#pragma once

#include <map>
#include <string>
#include <variant>
#include <vector>

#include "newsplot/graph.hpp"
#include "newsplot/util.hpp"

namespace newsplot {

struct Variable {
  std::string name;  // without the leading '?'
  auto operator<=>(const Variable&) const = default;
};

using PatternTerm = std::variant<Variable, Iri, Literal>;

struct TriplePattern {
  PatternTerm s;
  PatternTerm p;
  PatternTerm o;
  bool operator==(const TriplePattern&) const = default;
};

struct RegexFilter {
  std::string variable;
  std::string pattern;
  bool icase = true;
  bool operator==(const RegexFilter&) const = default;
};

struct PatternGroup {
  std::vector<TriplePattern> patterns;
  bool operator==(const PatternGroup&) const = default;
};

// SELECT [DISTINCT] ?v... WHERE { patterns [{...} UNION {...}] FILTER... }.
// `patterns` always applies; each union group adds its own conjuncts and the
// result is the union over groups.
struct SelectQuery {
  bool distinct = false;
  std::vector<std::string> projection;  // variable names, query order
  std::vector<TriplePattern> patterns;
  std::vector<PatternGroup> unions;
  std::vector<RegexFilter> filters;
  bool operator==(const SelectQuery&) const = default;
};

struct BindingSet {
  std::vector<std::string> variables;   // projection order
  std::vector<std::vector<Term>> rows;  // canonical row order
  bool operator==(const BindingSet&) const = default;
};

class QuerySyntax : public Error {
 public:
  QuerySyntax(const std::string& what, size_t line, size_t col);
  size_t line() const { return line_; }
  size_t col() const { return col_; }

 private:
  size_t line_;
  size_t col_;
};

// Syntactically valid SPARQL outside the supported subset; carries the
// construct's name.
class UnsupportedFeature : public Error {
 public:
  explicit UnsupportedFeature(const std::string& construct)
      : Error("unsupported construct: " + construct), construct_(construct) {}
  const std::string& construct() const { return construct_; }

 private:
  std::string construct_;
};

class UnboundFilterVariable : public Error {
 public:
  explicit UnboundFilterVariable(const std::string& what) : Error(what) {}
};

class InvalidRegex : public Error {
 public:
  explicit InvalidRegex(const std::string& what) : Error(what) {}
};

SelectQuery parse_query(const std::string& text);

// Conjunctive join per group, union across groups, regex filters on the
// string form of bound terms, projection, distinct, canonical row sort.
BindingSet execute(const EventPlotGraph& g, const SelectQuery& q);

// Retrieval templates: per pyramid level, a UNION over the level's point
// subclasses, each branch anchored to articles whose headline matches the
// event pattern, projecting the point value literal as ?v.
SelectQuery lead_template(const std::string& event, bool raw_regex = false);
SelectQuery body_template(const std::string& event, bool raw_regex = false);
SelectQuery tail_template(const std::string& event, bool raw_regex = false);

// Template over an explicit subclass list (what the prompt builder uses to
// retrieve one kind at a time; ?v value, ?x the point IRI).
SelectQuery subclass_value_template(const std::vector<std::string>& classes,
                                    const std::string& event, bool raw_regex = false);

// Backslash-escapes regex metacharacters so an event string matches itself.
std::string escape_regex(const std::string& s);

// SPARQL str(): IRI value or literal lexical form.
std::string term_string(const Term& t);

// Tab-separated rows with a ?var header line.
std::string to_tsv(const BindingSet& bs);

}  // namespace newsplot
