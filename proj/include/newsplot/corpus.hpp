#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "newsplot/util.hpp"

namespace newsplot {

enum class FeedKind { Rss };

struct FeedSource {
  std::string name;
  std::string url;
  FeedKind kind = FeedKind::Rss;
};

struct FeedEntry {
  std::string title;
  std::string link;
  std::vector<std::string> authors;
  std::optional<std::string> summary;
  std::optional<int64_t> published;  // epoch seconds UTC
};

enum class MediaKind { Photo, Video, Audio };

const char* to_string(MediaKind k);
std::optional<MediaKind> media_kind_from_string(const std::string& s);

struct MediaLink {
  MediaKind kind = MediaKind::Photo;
  std::string url;
  bool operator==(const MediaLink&) const = default;
};

// One normalized news document. `id` is derived from (url, body_text) only,
// so re-fetching the same page yields the same record id.
struct ArticleRecord {
  std::string id;
  std::string headline;
  std::vector<std::string> authors;
  std::string source;  // FeedSource name
  std::string url;
  std::optional<int64_t> published;
  std::string body_text;                 // paragraphs joined by single spaces
  std::vector<std::string> paragraphs;   // whitespace-normalized
  std::vector<MediaLink> media_links;
  int64_t fetched_at = 0;

  bool operator==(const ArticleRecord&) const = default;
};

std::string article_id_for(const std::string& url, const std::string& body_text);

class MalformedFeed : public Error {
 public:
  explicit MalformedFeed(const std::string& what) : Error(what) {}
};

class EmptyBody : public Error {
 public:
  explicit EmptyBody(const std::string& what) : Error(what) {}
};

// One FeedEntry per <item>, document order preserved. Throws MalformedFeed
// when the XML itself does not parse; a channel with no items is just empty.
std::vector<FeedEntry> parse_rss(const std::string& feed_xml, const FeedSource& source);

// Readability-style extraction: paragraph text from the densest container,
// scripts/styles/navigation stripped, media links lifted from the whole
// document. Throws EmptyBody when no paragraph text survives.
ArticleRecord extract_article(const std::string& html, const FeedEntry& entry,
                              const FeedSource& source, int64_t fetched_at = 0);

struct ArticleStore {
  std::string path;
  std::vector<ArticleRecord> records;  // append order

  bool operator==(const ArticleStore&) const = default;

  bool contains(const std::string& id) const;
  // Appends unless the id is already present; returns true when added.
  bool append(ArticleRecord record);
};

void save_store(const ArticleStore& store);  // line-delimited JSON, UTF-8

struct LoadResult {
  ArticleStore store;
  std::vector<Diagnostic> diagnostics;  // one per corrupt line, load continues
};

LoadResult load_store(const std::string& path);

std::string article_to_json_line(const ArticleRecord& a);
std::optional<ArticleRecord> article_from_json_line(const std::string& line);

// Downloads are isolated behind this interface so every parser runs offline.
using Fetcher = std::function<std::optional<std::string>(const std::string& url)>;

// Plain-text / loose-HTML report import (blank-line separated paragraphs for
// .txt, paragraph extraction for .html). Same store, source name flags them.
ArticleRecord import_report_document(const std::string& content, const std::string& filename,
                                     const std::string& source_name, int64_t fetched_at);

}  // namespace newsplot
