// Copyright 2026 The h2s Authors
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

#ifndef H2S_SERVICE_HPP
#define H2S_SERVICE_HPP

#include <cstddef>
#include <list>
#include <memory>
#include <mutex>
#include <string>
#include <string_view>
#include <unordered_map>

#include "h2s/plan.hpp"
#include "h2s/tutorial.hpp"

namespace h2s {

/// Installs the stderr logger; the level comes from H2S_LOG
/// (trace, debug, info, warn, error, off; default info).
void init_logging();

struct CompileRequest {
  Camera camera;
  Ability ability = Ability::Novice;
};

/// Throws FormatError on a malformed body. The camera is not validated.
CompileRequest parse_compile_request(std::string_view body);

struct Response {
  int status = 200;
  std::string content_type = "application/json";
  std::string body;
  std::string session;  // set by /compile
};

/// Request handling over one immutable plan. Every response is a function of
/// the plan and the request alone; the cache only saves work.
class TutorialService {
 public:
  explicit TutorialService(Plan plan, std::size_t cache_capacity = 32);

  Response meta() const;
  Response compile(std::string_view body);
  Response step_svg(int index, std::string_view session);

  /// Camera snapped to the cache lattice: positions to 1e-4 of the model
  /// diagonal, the up direction to 1e-4, the fov to 1e-4 degrees.
  Camera quantize(const Camera& camera) const;
  std::string cache_key(const Camera& camera, Ability ability) const;
  std::size_t cache_size() const;
  std::size_t cache_hits() const;

  const Plan& plan() const { return plan_; }

 private:
  struct Entry {
    Tutorial tutorial;
    std::string document;
  };
  std::shared_ptr<const Entry> lookup(const std::string& session);
  void insert(const std::string& session, std::shared_ptr<const Entry> entry);

  Plan plan_;
  std::size_t capacity_;
  mutable std::mutex mutex_;
  std::list<std::pair<std::string, std::shared_ptr<const Entry>>> lru_;
  std::unordered_map<std::string, decltype(lru_)::iterator> index_;
  std::size_t hits_ = 0;
};

/// HTTP front end with CORS headers for the viewer.
class HttpFrontend {
 public:
  explicit HttpFrontend(TutorialService& service);
  ~HttpFrontend();
  HttpFrontend(const HttpFrontend&) = delete;
  HttpFrontend& operator=(const HttpFrontend&) = delete;

  /// Binds `host:port` (port 0 picks a free one); returns the bound port or -1.
  int bind(const std::string& host, int port);
  /// Serves until stop(); call after bind().
  void listen();
  void stop();

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

}  // namespace h2s

#endif  // H2S_SERVICE_HPP
