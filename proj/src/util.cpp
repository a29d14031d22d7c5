#include "newsplot/util.hpp"

#include <cstdio>
#include <ctime>
#include <fstream>
#include <sstream>

namespace newsplot {

uint64_t fnv1a64(const std::string& data) {
  uint64_t h = 14695981039346656037ULL;
  for (unsigned char c : data) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  return h;
}

std::string hex64(uint64_t v) {
  char buf[17];
  std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(v));
  return std::string(buf);
}

std::string format_iso8601(int64_t epoch_seconds) {
  std::time_t t = static_cast<std::time_t>(epoch_seconds);
  std::tm tm{};
  gmtime_r(&t, &tm);
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%04d-%02d-%02dT%02d:%02d:%02dZ", tm.tm_year + 1900,
                tm.tm_mon + 1, tm.tm_mday, tm.tm_hour, tm.tm_min, tm.tm_sec);
  return std::string(buf);
}

std::optional<int64_t> parse_iso8601(const std::string& s) {
  std::tm tm{};
  int y, mo, d, h, mi, se;
  if (std::sscanf(s.c_str(), "%d-%d-%dT%d:%d:%dZ", &y, &mo, &d, &h, &mi, &se) != 6) {
    return std::nullopt;
  }
  if (mo < 1 || mo > 12 || d < 1 || d > 31 || h > 23 || mi > 59 || se > 60) {
    return std::nullopt;
  }
  tm.tm_year = y - 1900;
  tm.tm_mon = mo - 1;
  tm.tm_mday = d;
  tm.tm_hour = h;
  tm.tm_min = mi;
  tm.tm_sec = se;
  return static_cast<int64_t>(timegm(&tm));
}

namespace {

int month_index(const std::string& name) {
  static const char* kMonths[] = {"Jan", "Feb", "Mar", "Apr", "May", "Jun",
                                  "Jul", "Aug", "Sep", "Oct", "Nov", "Dec"};
  for (int i = 0; i < 12; ++i) {
    if (name.compare(0, 3, kMonths[i]) == 0) return i;
  }
  return -1;
}

}  // namespace

std::optional<int64_t> parse_rfc822(const std::string& s) {
  // "Mon, 19 Jun 2023 10:04:00 GMT"; the weekday part is optional.
  std::istringstream in(s);
  std::vector<std::string> parts;
  std::string tok;
  while (in >> tok) parts.push_back(tok);
  size_t i = 0;
  if (!parts.empty() && parts[0].size() >= 4 && parts[0].back() == ',') i = 1;
  if (parts.size() < i + 5) return std::nullopt;

  int day = 0, year = 0, h = 0, mi = 0, se = 0;
  try {
    day = std::stoi(parts[i]);
    year = std::stoi(parts[i + 2]);
  } catch (...) {
    return std::nullopt;
  }
  int mon = month_index(parts[i + 1]);
  if (mon < 0 || day < 1 || day > 31) return std::nullopt;
  if (year < 100) year += 2000;
  int fields = std::sscanf(parts[i + 3].c_str(), "%d:%d:%d", &h, &mi, &se);
  if (fields < 2) return std::nullopt;

  std::tm tm{};
  tm.tm_year = year - 1900;
  tm.tm_mon = mon;
  tm.tm_mday = day;
  tm.tm_hour = h;
  tm.tm_min = mi;
  tm.tm_sec = se;
  int64_t t = static_cast<int64_t>(timegm(&tm));

  const std::string& zone = parts[i + 4];
  if ((zone[0] == '+' || zone[0] == '-') && zone.size() == 5) {
    int off = 0;
    try {
      off = std::stoi(zone.substr(1, 2)) * 3600 + std::stoi(zone.substr(3, 2)) * 60;
    } catch (...) {
      return std::nullopt;
    }
    t += (zone[0] == '+') ? -off : off;
  }
  // GMT/UT/UTC/Z need no adjustment; other named zones are ignored rather
  // than guessed, which keeps ids and graphs stable across locales.
  return t;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoFailure("cannot open for reading: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoFailure("cannot open for writing: " + path);
  out << content;
  if (!out) throw IoFailure("write failed: " + path);
}

std::vector<std::string> read_lines(const std::string& path) {
  std::string all = read_file(path);
  std::vector<std::string> lines;
  std::string cur;
  for (char c : all) {
    if (c == '\n') {
      if (!cur.empty() && cur.back() == '\r') cur.pop_back();
      lines.push_back(cur);
      cur.clear();
    } else {
      cur.push_back(c);
    }
  }
  if (!cur.empty()) lines.push_back(cur);
  return lines;
}

}  // namespace newsplot
