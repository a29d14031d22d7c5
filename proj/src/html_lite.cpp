#include "html_lite.hpp"

#include <algorithm>
#include <cctype>
#include <cstring>
#include <functional>
#include <unordered_set>

#include "xml_lite.hpp"  // decode_entities

namespace newsplot::html {

namespace {

const std::unordered_set<std::string>& void_elements() {
  static const std::unordered_set<std::string> kVoid = {
      "area", "base", "br",    "col",   "embed",  "hr",  "img", "input",
      "link", "meta", "param", "source", "track", "wbr"};
  return kVoid;
}

std::string lower(const std::string& s) {
  std::string out = s;
  std::transform(out.begin(), out.end(), out.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return out;
}

}  // namespace

std::string Node::attr(const std::string& name) const {
  auto it = attrs.find(name);
  return it == attrs.end() ? std::string() : it->second;
}

std::string Node::visible_text() const {
  if (is_text()) return text;
  if (tag == "script" || tag == "style") return {};
  std::string out;
  for (const auto& c : children) {
    std::string t = c->visible_text();
    if (t.empty()) continue;
    if (!out.empty() && !std::isspace(static_cast<unsigned char>(out.back())) &&
        !std::isspace(static_cast<unsigned char>(t.front()))) {
      out.push_back(' ');
    }
    out += t;
  }
  return out;
}

namespace {

class Parser {
 public:
  explicit Parser(const std::string& input) : in_(input) {}

  std::unique_ptr<Node> run() {
    auto root = std::make_unique<Node>();
    root->tag = "#document";
    stack_.push_back(root.get());
    while (pos_ < in_.size()) {
      if (in_[pos_] == '<') {
        handle_markup();
      } else {
        handle_text();
      }
    }
    return root;
  }

 private:
  Node* top() { return stack_.back(); }

  void append_text(const std::string& raw) {
    if (raw.find_first_not_of(" \t\r\n") == std::string::npos) return;
    auto t = std::make_unique<Node>();
    t->text = xml::decode_entities(raw);
    t->parent = top();
    top()->children.push_back(std::move(t));
  }

  void handle_text() {
    size_t p = in_.find('<', pos_);
    if (p == std::string::npos) p = in_.size();
    append_text(in_.substr(pos_, p - pos_));
    pos_ = p;
  }

  void skip_until(const char* term) {
    size_t p = in_.find(term, pos_);
    pos_ = (p == std::string::npos) ? in_.size() : p + std::strlen(term);
  }

  void handle_markup() {
    if (in_.compare(pos_, 4, "<!--") == 0) {
      pos_ += 4;
      skip_until("-->");
      return;
    }
    if (in_.compare(pos_, 2, "<!") == 0 || in_.compare(pos_, 2, "<?") == 0) {
      pos_ += 2;
      skip_until(">");
      return;
    }
    if (in_.compare(pos_, 2, "</") == 0) {
      pos_ += 2;
      std::string name = lower(read_name());
      size_t p = in_.find('>', pos_);
      pos_ = (p == std::string::npos) ? in_.size() : p + 1;
      close_tag(name);
      return;
    }
    ++pos_;  // '<'
    if (pos_ >= in_.size() || !std::isalpha(static_cast<unsigned char>(in_[pos_]))) {
      append_text("<");
      return;
    }
    auto node = std::make_unique<Node>();
    node->tag = lower(read_name());
    bool self_closing = read_attrs(*node);
    Node* raw = node.get();
    raw->parent = top();
    top()->children.push_back(std::move(node));
    if (raw->tag == "script" || raw->tag == "style") {
      swallow_raw_text(*raw);
      return;
    }
    if (!self_closing && void_elements().count(raw->tag) == 0) {
      stack_.push_back(raw);
    }
  }

  // script/style content is opaque until the matching close tag.
  void swallow_raw_text(Node& node) {
    std::string close = "</" + node.tag;
    size_t p = pos_;
    for (;;) {
      p = in_.find(close, p);
      if (p == std::string::npos) {
        pos_ = in_.size();
        return;
      }
      size_t after = p + close.size();
      if (after < in_.size() && (in_[after] == '>' || std::isspace(static_cast<unsigned char>(in_[after])))) {
        break;
      }
      ++p;
    }
    auto t = std::make_unique<Node>();
    t->text = in_.substr(pos_, p - pos_);
    t->parent = &node;
    node.children.push_back(std::move(t));
    size_t gt = in_.find('>', p);
    pos_ = (gt == std::string::npos) ? in_.size() : gt + 1;
  }

  std::string read_name() {
    size_t start = pos_;
    while (pos_ < in_.size()) {
      char c = in_[pos_];
      if (std::isalnum(static_cast<unsigned char>(c)) || c == '-' || c == ':' || c == '_') {
        ++pos_;
      } else {
        break;
      }
    }
    return in_.substr(start, pos_ - start);
  }

  bool read_attrs(Node& node) {
    bool self_closing = false;
    while (pos_ < in_.size()) {
      while (pos_ < in_.size() && std::isspace(static_cast<unsigned char>(in_[pos_]))) ++pos_;
      if (pos_ >= in_.size()) break;
      if (in_[pos_] == '>') {
        ++pos_;
        return self_closing;
      }
      if (in_.compare(pos_, 2, "/>") == 0) {
        pos_ += 2;
        return true;
      }
      if (in_[pos_] == '/') {
        ++pos_;
        continue;
      }
      std::string name = lower(read_name());
      if (name.empty()) {
        ++pos_;
        continue;
      }
      std::string value;
      while (pos_ < in_.size() && std::isspace(static_cast<unsigned char>(in_[pos_]))) ++pos_;
      if (pos_ < in_.size() && in_[pos_] == '=') {
        ++pos_;
        while (pos_ < in_.size() && std::isspace(static_cast<unsigned char>(in_[pos_]))) ++pos_;
        if (pos_ < in_.size() && (in_[pos_] == '"' || in_[pos_] == '\'')) {
          char q = in_[pos_++];
          size_t endq = in_.find(q, pos_);
          if (endq == std::string::npos) endq = in_.size();
          value = in_.substr(pos_, endq - pos_);
          pos_ = std::min(endq + 1, in_.size());
        } else {
          size_t start = pos_;
          while (pos_ < in_.size() && !std::isspace(static_cast<unsigned char>(in_[pos_])) &&
                 in_[pos_] != '>') {
            ++pos_;
          }
          value = in_.substr(start, pos_ - start);
        }
      }
      node.attrs[name] = xml::decode_entities(value);
    }
    return self_closing;
  }

  void close_tag(const std::string& name) {
    // Pop to the nearest matching open element; ignore strays.
    for (size_t i = stack_.size(); i-- > 1;) {
      if (stack_[i]->tag == name) {
        stack_.resize(i);
        return;
      }
    }
  }

  const std::string& in_;
  size_t pos_ = 0;
  std::vector<Node*> stack_;
};

}  // namespace

std::unique_ptr<Node> parse(const std::string& input) {
  Parser p(input);
  return p.run();
}

void walk(const Node& root, const std::function<void(const Node&)>& visit) {
  if (!root.is_text()) visit(root);
  for (const auto& c : root.children) walk(*c, visit);
}

}  // namespace newsplot::html
