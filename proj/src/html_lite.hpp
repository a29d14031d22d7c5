#pragma once

// Tolerant tag-soup HTML reader: enough structure to find paragraph
// containers, headings, and media elements. Unknown or mismatched closing
// tags are recovered from rather than rejected.

#include <functional>
#include <map>
#include <memory>
#include <string>
#include <vector>

namespace newsplot::html {

struct Node {
  std::string tag;   // lowercase; empty for text nodes
  std::string text;  // text nodes only (entities decoded)
  std::map<std::string, std::string> attrs;
  std::vector<std::unique_ptr<Node>> children;
  Node* parent = nullptr;

  bool is_text() const { return tag.empty(); }
  std::string attr(const std::string& name) const;
  // Visible descendant text, script/style subtrees skipped.
  std::string visible_text() const;
};

// Never throws; any input produces a tree under a synthetic "#document" root.
std::unique_ptr<Node> parse(const std::string& input);

// Pre-order walk over elements.
void walk(const Node& root, const std::function<void(const Node&)>& visit);

}  // namespace newsplot::html
