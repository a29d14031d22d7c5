#include "newsplot/http.hpp"

#include "httplib.h"

namespace newsplot {

namespace {

struct ParsedUrl {
  std::string host;
  int port = 80;
  std::string path = "/";
};

std::optional<ParsedUrl> parse_http_url(const std::string& url) {
  const std::string scheme = "http://";
  if (url.rfind(scheme, 0) != 0) return std::nullopt;
  ParsedUrl out;
  std::string rest = url.substr(scheme.size());
  size_t slash = rest.find('/');
  std::string authority = (slash == std::string::npos) ? rest : rest.substr(0, slash);
  if (slash != std::string::npos) out.path = rest.substr(slash);
  size_t colon = authority.find(':');
  if (colon == std::string::npos) {
    out.host = authority;
  } else {
    out.host = authority.substr(0, colon);
    try {
      out.port = std::stoi(authority.substr(colon + 1));
    } catch (...) {
      return std::nullopt;
    }
  }
  if (out.host.empty()) return std::nullopt;
  return out;
}

}  // namespace

HttpPoster default_http_poster() {
  return [](const HttpRequest& req) -> std::optional<HttpResponse> {
    auto parsed = parse_http_url(req.url);
    if (!parsed) return std::nullopt;
    httplib::Client cli(parsed->host, parsed->port);
    cli.set_connection_timeout(req.timeout_seconds, 0);
    cli.set_read_timeout(req.timeout_seconds, 0);
    cli.set_write_timeout(req.timeout_seconds, 0);
    httplib::Headers headers;
    for (const auto& [k, v] : req.headers) headers.emplace(k, v);
    auto res = cli.Post(parsed->path, headers, req.body, "application/json");
    if (!res) return std::nullopt;
    return HttpResponse{res->status, res->body};
  };
}

std::optional<std::string> http_get(const std::string& url, int timeout_seconds) {
  auto parsed = parse_http_url(url);
  if (!parsed) return std::nullopt;
  httplib::Client cli(parsed->host, parsed->port);
  cli.set_connection_timeout(timeout_seconds, 0);
  cli.set_read_timeout(timeout_seconds, 0);
  cli.set_write_timeout(timeout_seconds, 0);
  auto res = cli.Get(parsed->path);
  if (!res || res->status < 200 || res->status >= 300) return std::nullopt;
  return res->body;
}

}  // namespace newsplot
