// Remote CSV fetch. The only translation unit that touches the network.
#include <thread>

#ifdef TDAC_WITH_TLS
#define CPPHTTPLIB_OPENSSL_SUPPORT
#endif
#include <httplib.h>

#include "tdac/errors.hpp"
#include "tdac/market_data.hpp"

namespace tdac {
namespace {

std::string substitute(std::string tmpl, const std::string& key,
                       const std::string& value) {
  const std::string token = "{" + key + "}";
  size_t pos = 0;
  while ((pos = tmpl.find(token, pos)) != std::string::npos) {
    tmpl.replace(pos, token.size(), value);
    pos += value.size();
  }
  return tmpl;
}

struct SplitUrl {
  std::string base;  // scheme://host[:port]
  std::string path;  // /path?query
};

SplitUrl split_url(const std::string& url) {
  auto scheme_end = url.find("://");
  if (scheme_end == std::string::npos) {
    throw ValidationError("fetch: endpoint must start with http:// or https://");
  }
  auto path_start = url.find('/', scheme_end + 3);
  if (path_start == std::string::npos) return {url, "/"};
  return {url.substr(0, path_start), url.substr(path_start)};
}

FetchOutcome fetch_one(const FetchSpec& spec, const std::string& symbol) {
  FetchOutcome out;
  out.symbol = symbol;
  try {
    std::string url = substitute(spec.endpoint, "symbol", symbol);
    url = substitute(url, "start", spec.start.iso());
    url = substitute(url, "end", spec.end.iso());
    SplitUrl split = split_url(url);

    httplib::Client client(split.base);
    client.set_connection_timeout(10, 0);
    client.set_read_timeout(30, 0);
    auto res = client.Get(split.path);
    if (!res) {
      out.error = "transport failure: " + httplib::to_string(res.error());
      return out;
    }
    if (res->status != 200) {
      out.error = "HTTP " + std::to_string(res->status);
      return out;
    }
    if (res->body.empty()) {
      out.error = "empty payload";
      return out;
    }
    out.table = parse_price_csv(res->body, symbol, spec.columns);
    if (out.table->rows.empty()) {
      out.table.reset();
      out.error = "no data rows";
    }
  } catch (const std::exception& e) {
    out.table.reset();
    out.error = e.what();
  }
  return out;
}

}  // namespace

std::vector<FetchOutcome> fetch_prices(const FetchSpec& spec) {
  std::vector<FetchOutcome> results(spec.symbols.size());
  std::vector<std::thread> workers;
  workers.reserve(spec.symbols.size());
  for (size_t i = 0; i < spec.symbols.size(); ++i) {
    workers.emplace_back(
        [&, i] { results[i] = fetch_one(spec, spec.symbols[i]); });
  }
  for (auto& w : workers) w.join();
  return results;
}

}  // namespace tdac
