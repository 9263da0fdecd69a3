#include <regex>

#include "httplib.h"
#include "json.hpp"
#include "refute/parser.hpp"
#include "refute/translator.hpp"

namespace refute {

namespace {

struct Url {
  std::string host;
  int port = 80;
  std::string path;
};

Url parse_url(const std::string& url) {
  static const std::regex re(R"(^http://([^/:]+)(?::(\d+))?(/.*)?$)");
  std::smatch m;
  if (!std::regex_match(url, m, re)) throw TransportError("unsupported translator url: " + url);
  Url out;
  out.host = m[1];
  if (m[2].matched) out.port = std::stoi(m[2]);
  out.path = m[3].matched ? std::string(m[3]) : "/translate";
  if (out.path == "/") out.path = "/translate";
  return out;
}

std::vector<std::string> string_array(const nlohmann::json& j, const char* key) {
  if (!j.contains(key) || !j.at(key).is_array()) throw SchemaError(std::string("missing array '") + key + "'");
  std::vector<std::string> out;
  for (const auto& e : j.at(key)) {
    if (!e.is_string()) throw SchemaError(std::string("non-string entry in '") + key + "'");
    out.push_back(e.get<std::string>());
  }
  return out;
}

TranslatedProblem decode(const std::string& body) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(body);
  } catch (const nlohmann::json::parse_error& e) {
    throw TransportError(std::string("response is not JSON: ") + e.what());
  }
  if (!j.is_object()) throw SchemaError("response is not an object");
  TranslatedProblem out;
  std::vector<std::string> texts = string_array(j, "facts");
  for (std::string& r : string_array(j, "rules")) texts.push_back(std::move(r));
  if (!j.contains("query") || !j.at("query").is_string()) throw SchemaError("missing string 'query'");
  for (std::size_t i = 0; i < texts.size(); ++i) {
    try {
      out.premises.push_back(parse_formula(texts[i]));
    } catch (const ParseError& e) {
      throw ParseError(std::string("remote payload: ") + e.what(), e.line(), e.column(), i + 1);
    }
  }
  out.premise_texts = std::move(texts);
  out.query_text = j.at("query").get<std::string>();
  try {
    out.query = parse_formula(out.query_text);
  } catch (const ParseError& e) {
    throw ParseError(std::string("remote payload, query: ") + e.what(), e.line(), e.column());
  }
  return out;
}

}  // namespace

TranslatedProblem translate_remote(const std::vector<std::string>& premises_nl,
                                   const std::string& statement_nl,
                                   const RemoteTranslatorEndpoint& ep, RemoteCallLog* log) {
  const Url url = parse_url(ep.base_url);
  httplib::Client client(url.host, url.port);
  const auto secs = std::chrono::duration_cast<std::chrono::seconds>(ep.timeout);
  const auto usecs = std::chrono::duration_cast<std::chrono::microseconds>(ep.timeout - secs);
  client.set_connection_timeout(secs.count(), usecs.count());
  client.set_read_timeout(secs.count(), usecs.count());
  client.set_write_timeout(secs.count(), usecs.count());
  if (ep.bearer_token) client.set_bearer_token_auth(*ep.bearer_token);

  const nlohmann::json req{
      {"premises", premises_nl}, {"statement", statement_nl}, {"schema_version", ep.schema_version}};
  const std::string payload = req.dump();

  RemoteCallLog local;
  RemoteCallLog& lg = log ? *log : local;
  // Transport failures and replies that do not parse are retried; a reply
  // with the wrong shape fails at once.
  std::string last;
  std::optional<ParseError> last_parse;
  for (unsigned attempt = 0; attempt <= ep.retries; ++attempt) {
    ++lg.attempts;
    auto res = client.Post(url.path, payload, "application/json");
    try {
      if (!res) throw TransportError("request failed: " + httplib::to_string(res.error()));
      if (res->status != 200) throw TransportError("HTTP status " + std::to_string(res->status));
      return decode(res->body);
    } catch (const TransportError& e) {
      last = e.what();
      last_parse.reset();
    } catch (const ParseError& e) {
      last = e.what();
      last_parse = e;
    }
    lg.failures.push_back("attempt " + std::to_string(attempt + 1) + ": " + last);
  }
  if (last_parse) throw *last_parse;
  throw TransportError("translator unavailable after " + std::to_string(ep.retries + 1) +
                       " attempts: " + last);
}

}  // namespace refute
