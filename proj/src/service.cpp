// Copyright 2026 The osum Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "osum/service.hpp"

#include <charconv>

#include <httplib.h>

#include "osum/common.hpp"

namespace osum {
namespace {

ApiResponse error_response(int status, const std::string& message) {
  return {status, {{"error", message}}};
}

template <typename Fn>
ApiResponse guarded(Fn&& fn) {
  try {
    return fn();
  } catch (const NotFound& e) {
    return error_response(404, e.what());
  } catch (const nlohmann::json::exception& e) {
    return error_response(400, std::string("bad request: ") + e.what());
  } catch (const Error& e) {
    return error_response(400, e.what());
  }
}

std::uint64_t parse_uint(const std::string& text, const char* name) {
  std::uint64_t value = 0;
  const auto res = std::from_chars(text.data(), text.data() + text.size(), value);
  if (res.ec != std::errc() || res.ptr != text.data() + text.size()) {
    throw InvalidArgument(std::string("'") + name + "' must be a non-negative integer");
  }
  return value;
}

double parse_real(const std::string& text, const char* name) {
  double value = 0.0;
  const auto res = std::from_chars(text.data(), text.data() + text.size(), value);
  if (res.ec != std::errc() || res.ptr != text.data() + text.size()) {
    throw InvalidArgument(std::string("'") + name + "' must be a number");
  }
  return value;
}

Polarity require_polarity(const std::string& text) {
  const auto polarity = parse_polarity(text);
  if (!polarity) throw InvalidArgument("unknown polarity '" + text + "'");
  return *polarity;
}

template <typename T>
T json_uint(const nlohmann::json& value, const char* name) {
  if (!value.is_number_unsigned()) {
    throw InvalidArgument(std::string("'") + name + "' must be a non-negative integer");
  }
  return value.get<T>();
}

void send(httplib::Response& res, const ApiResponse& api) {
  res.status = api.status;
  res.set_header("Access-Control-Allow-Origin", "*");
  res.set_content(api.body.dump(), "application/json");
}

}  // namespace

ApiResponse api_health() { return {200, {{"status", "ok"}}}; }

ApiResponse api_entities(const PipelineBundle& bundle) {
  nlohmann::json list = nlohmann::json::array();
  for (const auto& entity : bundle.corpus.entity_ids()) {
    list.push_back({{"entity_id", entity},
                    {"review_count", bundle.corpus.entity_reviews(entity).size()}});
  }
  return {200, {{"entities", std::move(list)}}};
}

ApiResponse api_clusters(const PipelineBundle& bundle, const std::string& entity_id,
                         const std::multimap<std::string, std::string>& query) {
  return guarded([&] {
    SelectionConfig config = bundle.selection;
    for (const auto& [key, value] : query) {
      if (key == "theta") {
        config.theta = parse_real(value, "theta");
      } else if (key == "seed") {
        config.seed = parse_uint(value, "seed");
      } else if (key == "aspect") {
        if (!config.aspect_filter) config.aspect_filter.emplace();
        config.aspect_filter->insert(value);
      } else if (key == "polarity") {
        config.polarity_filter = require_polarity(value);
      }
    }
    nlohmann::json clusters = nlohmann::json::array();
    for (const auto& cluster : entity_clusters(bundle, entity_id, config)) {
      clusters.push_back(to_json(cluster));
    }
    return ApiResponse{200, {{"entity_id", entity_id}, {"clusters", std::move(clusters)}}};
  });
}

SummarizeOverrides parse_summarize_request(const nlohmann::json& request) {
  SummarizeOverrides overrides;
  if (request.contains("method")) {
    const auto method = parse_method(request.at("method").get<std::string>());
    if (!method) throw InvalidArgument("unknown method");
    overrides.method = *method;
  }
  if (request.contains("k")) overrides.k = json_uint<std::size_t>(request.at("k"), "k");
  if (request.contains("theta")) {
    if (!request.at("theta").is_number()) throw InvalidArgument("'theta' must be a number");
    overrides.theta = request.at("theta").get<double>();
  }
  if (request.contains("seed")) overrides.seed = json_uint<std::uint64_t>(request.at("seed"), "seed");
  if (request.contains("aspect") && !request.at("aspect").is_null()) {
    const auto& aspect = request.at("aspect");
    std::set<std::string> aspects;
    if (aspect.is_string()) {
      aspects.insert(aspect.get<std::string>());
    } else if (aspect.is_array()) {
      for (const auto& item : aspect) aspects.insert(item.get<std::string>());
    } else {
      throw InvalidArgument("'aspect' must be a string or an array of strings");
    }
    if (!aspects.empty()) overrides.aspects = std::move(aspects);
  }
  if (request.contains("polarity") && !request.at("polarity").is_null()) {
    overrides.polarity = require_polarity(request.at("polarity").get<std::string>());
  }
  if (request.contains("beam_size")) {
    overrides.beam_size = json_uint<std::size_t>(request.at("beam_size"), "beam_size");
  }
  if (request.contains("max_len")) {
    overrides.max_len = json_uint<std::size_t>(request.at("max_len"), "max_len");
  }
  return overrides;
}

ApiResponse api_summarize(const PipelineBundle& bundle, const std::string& body) {
  return guarded([&] {
    const auto request = nlohmann::json::parse(body);
    if (!request.is_object()) throw InvalidArgument("request body must be a JSON object");
    if (!request.contains("entity_id") || !request.at("entity_id").is_string()) {
      throw InvalidArgument("'entity_id' is required");
    }
    const auto overrides = parse_summarize_request(request);
    const auto result =
        run_summarize(bundle, request.at("entity_id").get<std::string>(), overrides);
    return ApiResponse{200, to_json(result)};
  });
}

Service::Service(const PipelineBundle& bundle)
    : bundle_(bundle), server_(std::make_unique<httplib::Server>()) {
  server_->Get("/api/health", [](const httplib::Request&, httplib::Response& res) {
    send(res, api_health());
  });
  server_->Get("/api/entities", [this](const httplib::Request&, httplib::Response& res) {
    send(res, api_entities(bundle_));
  });
  server_->Get(R"(/api/entities/([^/]+)/clusters)",
               [this](const httplib::Request& req, httplib::Response& res) {
                 std::multimap<std::string, std::string> query(req.params.begin(),
                                                               req.params.end());
                 send(res, api_clusters(bundle_, req.matches[1], query));
               });
  server_->Post("/api/summarize", [this](const httplib::Request& req, httplib::Response& res) {
    send(res, api_summarize(bundle_, req.body));
  });
  server_->Options(R"(/api/.*)", [](const httplib::Request&, httplib::Response& res) {
    res.set_header("Access-Control-Allow-Origin", "*");
    res.set_header("Access-Control-Allow-Methods", "GET, POST, OPTIONS");
    res.set_header("Access-Control-Allow-Headers", "Content-Type");
    res.status = 204;
  });
}

Service::~Service() { stop(); }

int Service::bind(const std::string& host, int port) {
  int bound = port;
  if (port == 0) {
    bound = server_->bind_to_any_port(host);
  } else if (!server_->bind_to_port(host, port)) {
    bound = -1;
  }
  if (bound < 0) throw IoError("cannot bind " + host + ":" + std::to_string(port));
  return bound;
}

void Service::listen() { server_->listen_after_bind(); }

void Service::wait_until_ready() { server_->wait_until_ready(); }

void Service::stop() {
  if (server_ && server_->is_running()) server_->stop();
}

}  // namespace osum
