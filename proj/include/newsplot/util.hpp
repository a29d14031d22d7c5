#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace newsplot {

// Base class for all typed errors thrown by the library.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

class IoFailure : public Error {
 public:
  explicit IoFailure(const std::string& what) : Error(what) {}
};

// Non-fatal problems collected while processing (corrupt store lines,
// unbalanced quotes, ...). Carried out-of-band, never thrown.
struct Diagnostic {
  std::string where;
  std::string message;
};

uint64_t fnv1a64(const std::string& data);

// 16 lowercase hex chars.
std::string hex64(uint64_t v);

// --- UTC timestamps -------------------------------------------------------
// Timestamps are epoch seconds, always UTC. Formatting/parsing uses the
// xsd:dateTime shape "YYYY-MM-DDTHH:MM:SSZ".

std::string format_iso8601(int64_t epoch_seconds);
std::optional<int64_t> parse_iso8601(const std::string& s);

// RFC 822 style pubDate ("Mon, 19 Jun 2023 10:04:00 GMT", numeric zones
// accepted). Returns nullopt rather than guessing on anything unparseable.
std::optional<int64_t> parse_rfc822(const std::string& s);

std::string read_file(const std::string& path);  // throws IoFailure
void write_file(const std::string& path, const std::string& content);

std::vector<std::string> read_lines(const std::string& path);

}  // namespace newsplot
