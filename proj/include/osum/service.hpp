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

#pragma once

#include <map>
#include <memory>
#include <string>

#include <json.hpp>

#include "osum/pipeline.hpp"

namespace httplib {
class Server;
}

namespace osum {

// Result of one API call before it is written to the wire.
struct ApiResponse {
  int status = 200;
  nlohmann::json body;
};

// Endpoint logic, independent of the HTTP server. Errors become
// {"error": ...} bodies with 400 (bad input) or 404 (unknown entity).
ApiResponse api_health();
ApiResponse api_entities(const PipelineBundle& bundle);
ApiResponse api_clusters(const PipelineBundle& bundle, const std::string& entity_id,
                         const std::multimap<std::string, std::string>& query);
ApiResponse api_summarize(const PipelineBundle& bundle, const std::string& body);

// Parses a summarize request body into overrides. Throws InvalidArgument.
SummarizeOverrides parse_summarize_request(const nlohmann::json& request);

// HTTP front end over an immutable bundle:
//   GET  /api/health
//   GET  /api/entities
//   GET  /api/entities/{id}/clusters?theta=&seed=&aspect=&polarity=
//   POST /api/summarize
class Service {
 public:
  explicit Service(const PipelineBundle& bundle);
  ~Service();

  Service(const Service&) = delete;
  Service& operator=(const Service&) = delete;

  // Binds to `host:port`; port 0 picks a free port. Returns the bound port.
  // Throws IoError on bind failure.
  int bind(const std::string& host, int port);

  // Serves until stop() is called. Requires a prior bind().
  void listen();
  // Blocks until a listen() running on another thread accepts connections.
  void wait_until_ready();
  void stop();

 private:
  const PipelineBundle& bundle_;
  std::unique_ptr<httplib::Server> server_;
};

}  // namespace osum
