#include "xml_lite.hpp"

#include <cctype>
#include <cstring>

namespace newsplot::xml {

std::string Node::all_text() const {
  if (is_text()) return text;
  std::string out;
  for (const auto& c : children) out += c->all_text();
  return out;
}

const Node* Node::first_child(const std::string& tag) const {
  for (const auto& c : children) {
    if (c->name == tag) return c.get();
  }
  return nullptr;
}

std::vector<const Node*> Node::children_named(const std::string& tag) const {
  std::vector<const Node*> out;
  for (const auto& c : children) {
    if (c->name == tag) out.push_back(c.get());
  }
  return out;
}

std::string decode_entities(const std::string& s) {
  std::string out;
  out.reserve(s.size());
  size_t i = 0;
  while (i < s.size()) {
    if (s[i] != '&') {
      out.push_back(s[i++]);
      continue;
    }
    size_t semi = s.find(';', i);
    if (semi == std::string::npos || semi - i > 10) {
      out.push_back(s[i++]);
      continue;
    }
    std::string ent = s.substr(i + 1, semi - i - 1);
    if (ent == "amp") {
      out.push_back('&');
    } else if (ent == "lt") {
      out.push_back('<');
    } else if (ent == "gt") {
      out.push_back('>');
    } else if (ent == "quot") {
      out.push_back('"');
    } else if (ent == "apos") {
      out.push_back('\'');
    } else if (!ent.empty() && ent[0] == '#') {
      long code = 0;
      try {
        code = (ent.size() > 1 && (ent[1] == 'x' || ent[1] == 'X'))
                   ? std::stol(ent.substr(2), nullptr, 16)
                   : std::stol(ent.substr(1));
      } catch (...) {
        code = -1;
      }
      if (code < 0 || code > 0x10FFFF) {
        out.append(s, i, semi - i + 1);
      } else if (code < 0x80) {
        out.push_back(static_cast<char>(code));
      } else if (code < 0x800) {
        out.push_back(static_cast<char>(0xC0 | (code >> 6)));
        out.push_back(static_cast<char>(0x80 | (code & 0x3F)));
      } else if (code < 0x10000) {
        out.push_back(static_cast<char>(0xE0 | (code >> 12)));
        out.push_back(static_cast<char>(0x80 | ((code >> 6) & 0x3F)));
        out.push_back(static_cast<char>(0x80 | (code & 0x3F)));
      } else {
        out.push_back(static_cast<char>(0xF0 | (code >> 18)));
        out.push_back(static_cast<char>(0x80 | ((code >> 12) & 0x3F)));
        out.push_back(static_cast<char>(0x80 | ((code >> 6) & 0x3F)));
        out.push_back(static_cast<char>(0x80 | (code & 0x3F)));
      }
    } else {
      out.append(s, i, semi - i + 1);  // unknown entity kept verbatim
    }
    i = semi + 1;
  }
  return out;
}

namespace {

class Parser {
 public:
  explicit Parser(const std::string& input) : in_(input) {}

  std::unique_ptr<Node> parse_document() {
    skip_misc();
    if (pos_ >= in_.size() || in_[pos_] != '<') {
      throw Exception(pos_, "expected root element");
    }
    auto root = parse_element();
    skip_misc();
    if (pos_ < in_.size()) throw Exception(pos_, "trailing content after root element");
    return root;
  }

 private:
  void skip_ws() {
    while (pos_ < in_.size() && std::isspace(static_cast<unsigned char>(in_[pos_]))) ++pos_;
  }

  bool starts(const char* s) const { return in_.compare(pos_, std::strlen(s), s) == 0; }

  void skip_until(const char* terminator, const char* what) {
    size_t p = in_.find(terminator, pos_);
    if (p == std::string::npos) throw Exception(pos_, std::string("unterminated ") + what);
    pos_ = p + std::strlen(terminator);
  }

  // Prolog, comments, PIs, DOCTYPE between top-level constructs.
  void skip_misc() {
    for (;;) {
      skip_ws();
      if (starts("<?")) {
        skip_until("?>", "processing instruction");
      } else if (starts("<!--")) {
        skip_until("-->", "comment");
      } else if (starts("<!DOCTYPE") || starts("<!doctype")) {
        skip_until(">", "doctype");
      } else {
        return;
      }
    }
  }

  std::string parse_name() {
    size_t start = pos_;
    while (pos_ < in_.size()) {
      char c = in_[pos_];
      if (std::isalnum(static_cast<unsigned char>(c)) || c == ':' || c == '_' || c == '-' ||
          c == '.') {
        ++pos_;
      } else {
        break;
      }
    }
    if (pos_ == start) throw Exception(pos_, "expected name");
    return in_.substr(start, pos_ - start);
  }

  std::unique_ptr<Node> parse_element() {
    ++pos_;  // consume '<'
    auto node = std::make_unique<Node>();
    node->name = parse_name();
    for (;;) {
      skip_ws();
      if (pos_ >= in_.size()) throw Exception(pos_, "unterminated start tag");
      if (in_[pos_] == '>') {
        ++pos_;
        break;
      }
      if (starts("/>")) {
        pos_ += 2;
        return node;
      }
      std::string attr = parse_name();
      skip_ws();
      if (pos_ >= in_.size() || in_[pos_] != '=') throw Exception(pos_, "expected '='");
      ++pos_;
      skip_ws();
      if (pos_ >= in_.size() || (in_[pos_] != '"' && in_[pos_] != '\'')) {
        throw Exception(pos_, "expected quoted attribute value");
      }
      char quote = in_[pos_++];
      size_t endq = in_.find(quote, pos_);
      if (endq == std::string::npos) throw Exception(pos_, "unterminated attribute value");
      node->attrs[attr] = decode_entities(in_.substr(pos_, endq - pos_));
      pos_ = endq + 1;
    }
    parse_content(*node);
    return node;
  }

  void parse_content(Node& node) {
    std::string text;
    auto flush_text = [&] {
      if (!text.empty()) {
        auto t = std::make_unique<Node>();
        t->text = decode_entities(text);
        node.children.push_back(std::move(t));
        text.clear();
      }
    };
    while (pos_ < in_.size()) {
      if (in_[pos_] == '<') {
        if (starts("</")) {
          flush_text();
          pos_ += 2;
          std::string name = parse_name();
          skip_ws();
          if (pos_ >= in_.size() || in_[pos_] != '>') throw Exception(pos_, "expected '>'");
          ++pos_;
          if (name != node.name) {
            throw Exception(pos_, "mismatched closing tag </" + name + "> for <" + node.name + ">");
          }
          return;
        }
        if (starts("<!--")) {
          flush_text();
          skip_until("-->", "comment");
          continue;
        }
        if (starts("<![CDATA[")) {
          pos_ += 9;
          size_t p = in_.find("]]>", pos_);
          if (p == std::string::npos) throw Exception(pos_, "unterminated CDATA");
          // CDATA content is literal, no entity decoding.
          auto t = std::make_unique<Node>();
          t->text = in_.substr(pos_, p - pos_);
          flush_text();
          node.children.push_back(std::move(t));
          pos_ = p + 3;
          continue;
        }
        if (starts("<?")) {
          flush_text();
          skip_until("?>", "processing instruction");
          continue;
        }
        flush_text();
        node.children.push_back(parse_element());
      } else {
        text.push_back(in_[pos_++]);
      }
    }
    throw Exception(pos_, "unterminated element <" + node.name + ">");
  }

  const std::string& in_;
  size_t pos_ = 0;
};

}  // namespace

std::unique_ptr<Node> parse(const std::string& input) {
  Parser p(input);
  return p.parse_document();
}

}  // namespace newsplot::xml
