#pragma once

// Minimal XML reader for RSS feeds: elements, attributes, text, CDATA,
// comments, processing instructions, the five predefined entities and
// numeric character references. No namespaces beyond literal tag names.

#include <map>
#include <memory>
#include <string>
#include <vector>

namespace newsplot::xml {

struct Node {
  std::string name;  // empty for text nodes
  std::string text;  // text nodes only
  std::map<std::string, std::string> attrs;
  std::vector<std::unique_ptr<Node>> children;

  bool is_text() const { return name.empty(); }
  // Concatenated descendant text.
  std::string all_text() const;
  const Node* first_child(const std::string& tag) const;
  std::vector<const Node*> children_named(const std::string& tag) const;
};

struct ParseError {
  size_t offset;
  std::string message;
};

// Returns the document root element. Throws xml::Exception on malformed
// input (mismatched tags, unterminated constructs, stray text at top level).
class Exception : public std::exception {
 public:
  Exception(size_t offset, std::string message)
      : offset_(offset), message_(std::move(message)) {
    full_ = "xml parse error at offset " + std::to_string(offset_) + ": " + message_;
  }
  const char* what() const noexcept override { return full_.c_str(); }
  size_t offset() const { return offset_; }

 private:
  size_t offset_;
  std::string message_;
  std::string full_;
};

std::unique_ptr<Node> parse(const std::string& input);

std::string decode_entities(const std::string& s);

}  // namespace newsplot::xml
