#pragma once

#include <compare>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <variant>
#include <vector>

#include "newsplot/corpus.hpp"
#include "newsplot/extract.hpp"
#include "newsplot/util.hpp"

namespace newsplot {

struct Iri {
  std::string value;
  auto operator<=>(const Iri&) const = default;
};

enum class LiteralType { String, DateTime };

struct Literal {
  std::string lexical;
  LiteralType type = LiteralType::String;
  auto operator<=>(const Literal&) const = default;
};

// IRIs order before literals; that is the canonical term order everywhere.
using Term = std::variant<Iri, Literal>;

struct Triple {
  Iri s;
  Iri p;
  Term o;
  auto operator<=>(const Triple&) const = default;
};

// Schema vocabulary. Classes live under narr:, instances under a separate
// instance namespace so the prefix never captures them.
namespace eno {

inline const std::string kNarrNs = "http://example.org/narr#";
inline const std::string kInstNs = "http://example.org/narr/inst/";
inline const std::string kRdfNs = "http://www.w3.org/1999/02/22-rdf-syntax-ns#";
inline const std::string kXsdDateTime = "http://www.w3.org/2001/XMLSchema#dateTime";

Iri narr(const std::string& local);
Iri inst(const std::string& local);
Iri rdf_type();

Iri article_headline();
Iri author_of_article();
Iri published_by();
Iri published_date();
Iri has_plot_point();
Iri value_property();

// All 16 class local names: NewsArticle, PlotPoint, the 3 levels, and the
// 11 point subclasses (the three media kinds share MediaObject).
const std::vector<std::string>& all_classes();

// Leaf class local name for a plot kind (Photo/Video/Audio -> MediaObject).
std::string class_for_kind(PlotKind kind);

// Leaf class plus its ancestors up to PlotPoint, leaf first.
std::vector<std::string> type_closure(const std::string& leaf_class);

// The 11 Table-style subclasses a well-formed point carries exactly one of.
const std::vector<std::string>& leaf_classes();

const std::vector<std::string>& lead_classes();  // Who..Why
const std::vector<std::string>& body_classes();  // Evidence, Quote, MediaObject
const std::vector<std::string>& tail_classes();  // Opinion, PersTactic, Sentiment

}  // namespace eno

class UnknownArticle : public Error {
 public:
  explicit UnknownArticle(const std::string& what) : Error(what) {}
};

class TurtleSyntax : public Error {
 public:
  TurtleSyntax(const std::string& what, size_t line, size_t col);
  size_t line() const { return line_; }
  size_t col() const { return col_; }

 private:
  size_t line_;
  size_t col_;
};

// Triple store with set semantics and subject/predicate/object indexes.
// Triples are only ever added.
class EventPlotGraph {
 public:
  EventPlotGraph() = default;
  EventPlotGraph(const EventPlotGraph& other);
  EventPlotGraph& operator=(const EventPlotGraph& other);
  EventPlotGraph(EventPlotGraph&&) = default;
  EventPlotGraph& operator=(EventPlotGraph&&) = default;

  bool insert(Triple t);  // true when the triple is new
  bool contains(const Triple& t) const;
  size_t size() const { return triples_.size(); }
  bool empty() const { return triples_.empty(); }
  const std::set<Triple>& triples() const { return triples_; }

  // Wildcard positions are nullopt; results come back in canonical order.
  std::vector<Triple> match(const std::optional<Iri>& s, const std::optional<Iri>& p,
                            const std::optional<Term>& o) const;
  size_t count(const std::optional<Iri>& s, const std::optional<Iri>& p,
               const std::optional<Term>& o) const;

  bool operator==(const EventPlotGraph& other) const { return triples_ == other.triples_; }

 private:
  std::set<Triple> triples_;
  std::map<Iri, std::vector<const Triple*>> by_subject_;
  std::map<Iri, std::vector<const Triple*>> by_predicate_;
  std::map<Term, std::vector<const Triple*>> by_object_;

  void index(const Triple& stored);
  void rebuild_indexes();
};

// Instance IRI minted for an article id / plot point id.
Iri article_iri(const std::string& article_id);
Iri point_iri(const std::string& point_id);

// Asserts type and metadata triples; idempotent. Returns the instance IRI.
Iri assert_article(EventPlotGraph& g, const ArticleRecord& a);

// Asserts the point's leaf type plus materialized level/PlotPoint types, its
// value literal, and the hasPlotPoint edge. The article IRI must already be
// typed NewsArticle, otherwise UnknownArticle.
Iri assert_plot_point(EventPlotGraph& g, const Iri& article, const PlotPoint& p);

// Canonical Turtle: prefix header, subjects sorted by IRI, predicates sorted
// within subject, objects sorted within predicate, `a` for rdf:type.
std::string serialize_turtle(const EventPlotGraph& g);

// Accepts the serializer's dialect plus object comma lists and arbitrary
// @prefix declarations. Throws TurtleSyntax with position on bad input.
EventPlotGraph parse_turtle(const std::string& text);

// Closure of every article whose headline matches the query, case-insensitive
// regex search: article triples, hasPlotPoint edges, and point triples.
EventPlotGraph subgraph_for_event(const EventPlotGraph& g, const std::string& event_query);

// One line per violating instance: a point-typed node must carry exactly one
// leaf subclass type and at least one incoming hasPlotPoint edge from a
// NewsArticle-typed node.
std::vector<std::string> well_formedness_violations(const EventPlotGraph& g);

}  // namespace newsplot
