#pragma once

#include <functional>
#include <map>
#include <optional>
#include <string>

namespace newsplot {

struct HttpRequest {
  std::string url;
  std::string body;
  std::map<std::string, std::string> headers;
  int timeout_seconds = 30;
};

struct HttpResponse {
  int status = 0;
  std::string body;
};

// Transport failure (unreachable, timeout) is nullopt; HTTP errors come back
// as a response with its status code.
using HttpPoster = std::function<std::optional<HttpResponse>(const HttpRequest&)>;

// POSTs JSON over plain http. https URLs are rejected as transport failures.
HttpPoster default_http_poster();

// GETs a plain-http URL. nullopt on transport failure or a non-2xx status.
std::optional<std::string> http_get(const std::string& url, int timeout_seconds = 30);

}  // namespace newsplot
