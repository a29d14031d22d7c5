#include "newsplot/corpus.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include "html_lite.hpp"
#include "newsplot/text.hpp"
#include "xml_lite.hpp"
#include "json.hpp"

namespace newsplot {

using nlohmann::json;

const char* to_string(MediaKind k) {
  switch (k) {
    case MediaKind::Photo: return "photo";
    case MediaKind::Video: return "video";
    case MediaKind::Audio: return "audio";
  }
  return "photo";
}

std::optional<MediaKind> media_kind_from_string(const std::string& s) {
  if (s == "photo") return MediaKind::Photo;
  if (s == "video") return MediaKind::Video;
  if (s == "audio") return MediaKind::Audio;
  return std::nullopt;
}

std::string article_id_for(const std::string& url, const std::string& body_text) {
  return hex64(fnv1a64(url + "\n" + body_text));
}

std::vector<FeedEntry> parse_rss(const std::string& feed_xml, const FeedSource& source) {
  (void)source;
  std::unique_ptr<xml::Node> root;
  try {
    root = xml::parse(feed_xml);
  } catch (const xml::Exception& e) {
    throw MalformedFeed(e.what());
  }

  std::vector<FeedEntry> entries;
  const xml::Node* channel = root->first_child("channel");
  const xml::Node* scope = channel ? channel : root.get();
  for (const auto* item : scope->children_named("item")) {
    FeedEntry e;
    if (const auto* t = item->first_child("title")) e.title = normalize_whitespace(t->all_text());
    if (const auto* l = item->first_child("link")) e.link = normalize_whitespace(l->all_text());
    for (const auto* a : item->children_named("author")) {
      std::string name = normalize_whitespace(a->all_text());
      if (!name.empty()) e.authors.push_back(name);
    }
    for (const auto* a : item->children_named("dc:creator")) {
      std::string name = normalize_whitespace(a->all_text());
      if (!name.empty()) e.authors.push_back(name);
    }
    if (const auto* d = item->first_child("description")) {
      std::string s = normalize_whitespace(d->all_text());
      if (!s.empty()) e.summary = s;
    }
    if (const auto* p = item->first_child("pubDate")) {
      e.published = parse_rfc822(normalize_whitespace(p->all_text()));
    }
    entries.push_back(std::move(e));
  }
  return entries;
}

namespace {

bool under_stripped_section(const html::Node* node) {
  for (const html::Node* p = node; p != nullptr; p = p->parent) {
    const std::string& t = p->tag;
    if (t == "nav" || t == "header" || t == "footer" || t == "aside" || t == "script" ||
        t == "style") {
      return true;
    }
  }
  return false;
}

}  // namespace

ArticleRecord extract_article(const std::string& html_text, const FeedEntry& entry,
                              const FeedSource& source, int64_t fetched_at) {
  auto doc = html::parse(html_text);

  // Paragraphs grouped by parent element; the parent carrying the most
  // paragraph text is taken as the article container.
  std::vector<const html::Node*> all_paragraphs;
  html::walk(*doc, [&](const html::Node& n) {
    if (n.tag == "p" && !under_stripped_section(&n)) all_paragraphs.push_back(&n);
  });

  const html::Node* best_container = nullptr;
  size_t best_score = 0;
  for (const auto* p : all_paragraphs) {
    const html::Node* container = p->parent;
    size_t score = 0;
    for (const auto* q : all_paragraphs) {
      if (q->parent == container) score += normalize_whitespace(q->visible_text()).size();
    }
    if (score > best_score) {
      best_score = score;
      best_container = container;
    }
  }

  std::vector<std::string> paragraphs;
  for (const auto* p : all_paragraphs) {
    if (p->parent != best_container) continue;
    std::string t = normalize_whitespace(p->visible_text());
    if (!t.empty()) paragraphs.push_back(std::move(t));
  }
  if (paragraphs.empty()) {
    throw EmptyBody("no paragraph text found for " + entry.link);
  }

  ArticleRecord a;
  a.headline = entry.title;
  if (a.headline.empty()) {
    html::walk(*doc, [&](const html::Node& n) {
      if (a.headline.empty() && n.tag == "h1") {
        a.headline = normalize_whitespace(n.visible_text());
      }
    });
  }
  a.authors = entry.authors;
  a.source = source.name;
  a.url = entry.link;
  a.published = entry.published;
  a.paragraphs = paragraphs;
  std::string body;
  for (const auto& p : paragraphs) {
    if (!body.empty()) body += " ";
    body += p;
  }
  a.body_text = body;

  html::walk(*doc, [&](const html::Node& n) {
    auto add = [&](MediaKind kind, const std::string& url) {
      if (!url.empty()) a.media_links.push_back({kind, url});
    };
    if (n.tag == "img") {
      add(MediaKind::Photo, n.attr("src"));
    } else if (n.tag == "video" || n.tag == "audio") {
      MediaKind kind = (n.tag == "video") ? MediaKind::Video : MediaKind::Audio;
      std::string src = n.attr("src");
      if (src.empty()) {
        for (const auto& c : n.children) {
          if (c->tag == "source" && !c->attr("src").empty()) {
            src = c->attr("src");
            break;
          }
        }
      }
      add(kind, src);
    }
  });

  a.fetched_at = fetched_at;
  a.id = article_id_for(a.url, a.body_text);
  return a;
}

bool ArticleStore::contains(const std::string& id) const {
  return std::any_of(records.begin(), records.end(),
                     [&](const ArticleRecord& r) { return r.id == id; });
}

bool ArticleStore::append(ArticleRecord record) {
  if (contains(record.id)) return false;
  records.push_back(std::move(record));
  return true;
}

std::string article_to_json_line(const ArticleRecord& a) {
  json j;
  j["id"] = a.id;
  j["headline"] = a.headline;
  j["authors"] = a.authors;
  j["source"] = a.source;
  j["url"] = a.url;
  if (a.published) j["published"] = format_iso8601(*a.published);
  j["body_text"] = a.body_text;
  j["paragraphs"] = a.paragraphs;
  json media = json::array();
  for (const auto& m : a.media_links) {
    media.push_back({{"kind", to_string(m.kind)}, {"url", m.url}});
  }
  j["media_links"] = media;
  j["fetched_at"] = format_iso8601(a.fetched_at);
  return j.dump();
}

std::optional<ArticleRecord> article_from_json_line(const std::string& line) {
  json j = json::parse(line, nullptr, false);
  if (j.is_discarded() || !j.is_object()) return std::nullopt;
  try {
    ArticleRecord a;
    a.id = j.at("id").get<std::string>();
    a.headline = j.at("headline").get<std::string>();
    a.authors = j.at("authors").get<std::vector<std::string>>();
    a.source = j.at("source").get<std::string>();
    a.url = j.at("url").get<std::string>();
    if (j.contains("published") && !j["published"].is_null()) {
      a.published = parse_iso8601(j["published"].get<std::string>());
    }
    a.body_text = j.at("body_text").get<std::string>();
    a.paragraphs = j.at("paragraphs").get<std::vector<std::string>>();
    for (const auto& m : j.at("media_links")) {
      auto kind = media_kind_from_string(m.at("kind").get<std::string>());
      if (!kind) return std::nullopt;
      a.media_links.push_back({*kind, m.at("url").get<std::string>()});
    }
    auto fetched = parse_iso8601(j.at("fetched_at").get<std::string>());
    if (!fetched) return std::nullopt;
    a.fetched_at = *fetched;
    return a;
  } catch (const json::exception&) {
    return std::nullopt;
  }
}

void save_store(const ArticleStore& store) {
  std::ostringstream out;
  for (const auto& r : store.records) out << article_to_json_line(r) << "\n";
  write_file(store.path, out.str());
}

LoadResult load_store(const std::string& path) {
  LoadResult result;
  result.store.path = path;
  std::vector<std::string> lines = read_lines(path);
  for (size_t i = 0; i < lines.size(); ++i) {
    if (lines[i].empty()) continue;
    auto rec = article_from_json_line(lines[i]);
    if (rec) {
      result.store.records.push_back(std::move(*rec));
    } else {
      result.diagnostics.push_back(
          {path + ":" + std::to_string(i + 1), "corrupt record skipped"});
    }
  }
  return result;
}

ArticleRecord import_report_document(const std::string& content, const std::string& filename,
                                     const std::string& source_name, int64_t fetched_at) {
  ArticleRecord a;
  a.source = source_name;
  a.url = "file://" + filename;
  a.fetched_at = fetched_at;

  bool looks_like_html = content.find('<') != std::string::npos &&
                         (content.find("<p") != std::string::npos ||
                          content.find("<html") != std::string::npos ||
                          content.find("<P") != std::string::npos);
  if (looks_like_html) {
    FeedEntry entry;
    entry.link = a.url;
    FeedSource src{source_name, "", FeedKind::Rss};
    ArticleRecord parsed = extract_article(content, entry, src, fetched_at);
    parsed.source = source_name;
    return parsed;
  }

  // Plain text: first non-empty line is the headline, blank lines split
  // paragraphs.
  std::istringstream in(content);
  std::string line;
  std::vector<std::string> paragraphs;
  std::string cur;
  while (std::getline(in, line)) {
    std::string t = normalize_whitespace(line);
    if (t.empty()) {
      if (!cur.empty()) paragraphs.push_back(cur);
      cur.clear();
    } else if (a.headline.empty()) {
      a.headline = t;
    } else {
      if (!cur.empty()) cur += " ";
      cur += t;
    }
  }
  if (!cur.empty()) paragraphs.push_back(cur);
  if (paragraphs.empty()) throw EmptyBody("no paragraph text found in " + filename);
  a.paragraphs = paragraphs;
  std::string body;
  for (const auto& p : paragraphs) {
    if (!body.empty()) body += " ";
    body += p;
  }
  a.body_text = body;
  a.id = article_id_for(a.url, a.body_text);
  return a;
}

}  // namespace newsplot
