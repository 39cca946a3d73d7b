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

#include "h2s/service.hpp"

#include <cinttypes>
#include <cmath>
#include <cstdio>
#include <cstdlib>

#include <httplib.h>
#include <spdlog/sinks/stdout_color_sinks.h>
#include <spdlog/spdlog.h>

#include "h2s/model.hpp"
#include "h2s/render.hpp"

namespace h2s {

using nlohmann::json;

void init_logging() {
  static std::once_flag once;
  std::call_once(once, [] {
    auto logger = spdlog::stderr_color_mt("h2s");
    spdlog::set_default_logger(logger);
  });
  const char* env = std::getenv("H2S_LOG");
  spdlog::level::level_enum level = spdlog::level::info;
  if (env && *env) level = spdlog::level::from_str(env);
  spdlog::set_level(level);
}

namespace {

std::string error_body(std::string_view code, std::string_view message) {
  return json{{"error", {{"code", code}, {"message", message}}}}.dump() + "\n";
}

Response error(int status, std::string_view code, std::string_view message) {
  Response r;
  r.status = status;
  r.body = error_body(code, message);
  return r;
}

Vec3 vec3_field(const json& j, const char* name) {
  if (!j.contains(name)) throw FormatError(std::string("missing field '") + name + "'", 0, 0);
  const json& v = j.at(name);
  if (!v.is_array() || v.size() != 3) {
    throw FormatError(std::string("'") + name + "' must be an array of 3 numbers", 0, 0);
  }
  Vec3 out;
  for (int k = 0; k < 3; ++k) {
    if (!v[k].is_number()) throw FormatError(std::string("'") + name + "' must hold numbers", 0, 0);
    out[k] = v[k].get<double>();
    if (!std::isfinite(out[k])) throw FormatError(std::string("'") + name + "' is not finite", 0, 0);
  }
  return out;
}

std::string hex64(std::uint64_t h) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%016" PRIx64, h);
  return buf;
}

std::uint64_t fnv1a(std::string_view s) {
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

}  // namespace

CompileRequest parse_compile_request(std::string_view body) {
  const json j = parse_json_text(body);
  if (!j.is_object()) throw FormatError("request body must be an object", 0, 0);
  if (!j.contains("camera") || !j["camera"].is_object()) {
    throw FormatError("missing object 'camera'", 0, 0);
  }
  const json& cam = j["camera"];
  CompileRequest r;
  r.camera.eye = vec3_field(cam, "eye");
  r.camera.target = vec3_field(cam, "target");
  r.camera.up = vec3_field(cam, "up");
  if (!cam.contains("fov") || !cam["fov"].is_number()) {
    throw FormatError("'camera.fov' must be a number", 0, 0);
  }
  r.camera.vertical_fov = cam["fov"].get<double>();
  if (j.contains("size")) {
    const json& s = j["size"];
    if (!s.is_array() || s.size() != 2 || !s[0].is_number_integer() || !s[1].is_number_integer()) {
      throw FormatError("'size' must be [width, height] in pixels", 0, 0);
    }
    r.camera.width = s[0].get<int>();
    r.camera.height = s[1].get<int>();
  }
  if (j.contains("ability")) {
    if (!j["ability"].is_string()) throw FormatError("'ability' must be a string", 0, 0);
    try {
      r.ability = ability_from_string(j["ability"].get<std::string>());
    } catch (const ValidationError& e) {
      throw FormatError(e.what(), 0, 0);
    }
  }
  return r;
}

TutorialService::TutorialService(Plan plan, std::size_t cache_capacity)
    : plan_(std::move(plan)), capacity_(std::max<std::size_t>(1, cache_capacity)) {}

Response TutorialService::meta() const {
  json parts = json::array();
  std::size_t triangles = 0;
  for (const Primitive& p : plan_.primitives) {
    const Segment& s = plan_.model.segment(p.part_id);
    triangles += s.triangles.size();
    json part{{"id", p.part_id},
              {"name", s.name},
              {"kind", std::string(to_string(p.kind))},
              {"triangles", s.triangles.size()}};
    const auto it = plan_.selection.chosen.find(p.part_id);
    if (it != plan_.selection.chosen.end()) {
      const Candidate& c = plan_.candidates.candidates[it->second];
      part["candidate"] = c.id;
      part["level"] = c.level;
      part["cost"] = round9(c.cost());
    } else {
      part["candidate"] = nullptr;
    }
    const Box3 b = plan_.drawn_box(p.part_id);
    part["min"] = json::array({round9(b.min().x()), round9(b.min().y()), round9(b.min().z())});
    part["max"] = json::array({round9(b.max().x()), round9(b.max().y()), round9(b.max().z())});
    parts.push_back(part);
  }
  json rels = json::array();
  for (const Relation& r : plan_.relations) rels.push_back(relation_to_json(r));
  const Box3 bounds = plan_.model.bounds();
  json j{{"parts", parts},
         {"relations", rels},
         {"triangles", triangles},
         {"candidates", plan_.candidates.candidates.size()},
         {"objective", round9(plan_.selection.objective)},
         {"optimal", plan_.selection.optimal},
         {"method", plan_.selection.method},
         {"up_axis", axis_name(static_cast<int>(plan_.model.up_axis))},
         {"bbox_diagonal", round9(plan_.model.bbox_diagonal)},
         {"bounds",
          {{"min", {round9(bounds.min().x()), round9(bounds.min().y()), round9(bounds.min().z())}},
           {"max", {round9(bounds.max().x()), round9(bounds.max().y()), round9(bounds.max().z())}}}},
         {"config_hash", hex64(config_hash(plan_.config))}};
  Response r;
  r.body = j.dump(1) + "\n";
  return r;
}

Camera TutorialService::quantize(const Camera& camera) const {
  const double pos = 1e-4 * plan_.model.bbox_diagonal;
  auto snap = [](double v, double step) { return std::round(v / step) * step; };
  Camera q = camera;
  for (int k = 0; k < 3; ++k) {
    q.eye[k] = snap(camera.eye[k], pos);
    q.target[k] = snap(camera.target[k], pos);
  }
  const double n = camera.up.norm();
  if (n > 0.0) {
    for (int k = 0; k < 3; ++k) q.up[k] = snap(camera.up[k] / n, 1e-4);
  }
  q.vertical_fov = snap(camera.vertical_fov, 1e-4);
  return q;
}

std::string TutorialService::cache_key(const Camera& camera, Ability ability) const {
  const double pos = 1e-4 * plan_.model.bbox_diagonal;
  std::string key;
  auto add = [&](double v, double step) {
    key += std::to_string(static_cast<long long>(std::llround(v / step)));
    key += ',';
  };
  const Camera q = quantize(camera);
  for (int k = 0; k < 3; ++k) add(q.eye[k], pos);
  for (int k = 0; k < 3; ++k) add(q.target[k], pos);
  for (int k = 0; k < 3; ++k) add(q.up[k], 1e-4);
  add(q.vertical_fov, 1e-4);
  key += std::to_string(camera.width) + "x" + std::to_string(camera.height) + ",";
  key += to_string(ability);
  return key;
}

std::size_t TutorialService::cache_size() const {
  std::lock_guard lock(mutex_);
  return lru_.size();
}

std::size_t TutorialService::cache_hits() const {
  std::lock_guard lock(mutex_);
  return hits_;
}

std::shared_ptr<const TutorialService::Entry> TutorialService::lookup(const std::string& session) {
  std::lock_guard lock(mutex_);
  const auto it = index_.find(session);
  if (it == index_.end()) return nullptr;
  lru_.splice(lru_.begin(), lru_, it->second);
  ++hits_;
  return it->second->second;
}

void TutorialService::insert(const std::string& session, std::shared_ptr<const Entry> entry) {
  std::lock_guard lock(mutex_);
  if (index_.count(session)) return;
  lru_.emplace_front(session, std::move(entry));
  index_[session] = lru_.begin();
  while (lru_.size() > capacity_) {
    index_.erase(lru_.back().first);
    lru_.pop_back();
  }
}

Response TutorialService::compile(std::string_view body) {
  CompileRequest req;
  try {
    req = parse_compile_request(body);
  } catch (const FormatError& e) {
    return error(400, "bad_request", e.what());
  }
  const Camera cam = quantize(req.camera);
  try {
    cam.validate();
  } catch (const ProjectionError& e) {
    return error(422, "degenerate_camera", e.what());
  }
  const std::string session = hex64(fnv1a(cache_key(req.camera, req.ability)));
  std::shared_ptr<const Entry> entry = lookup(session);
  if (!entry) {
    auto fresh = std::make_shared<Entry>();
    try {
      fresh->tutorial = compile_tutorial(plan_, cam, req.ability);
    } catch (const ProjectionError& e) {
      return error(422, "degenerate_camera", e.what());
    }
    fresh->document = export_tutorial(fresh->tutorial);
    entry = fresh;
    insert(session, entry);
    spdlog::debug("compiled session {} ({} steps)", session, fresh->tutorial.steps.size());
  }
  Response r;
  r.body = entry->document;
  r.session = session;
  return r;
}

Response TutorialService::step_svg(int index, std::string_view session) {
  const std::shared_ptr<const Entry> entry = lookup(std::string(session));
  if (!entry) return error(404, "unknown_session", "compile the view first");
  if (index < 0 || index >= static_cast<int>(entry->tutorial.steps.size())) {
    return error(404, "no_such_step", "step index out of range");
  }
  Response r;
  r.content_type = "image/svg+xml";
  r.body = render_step(entry->tutorial, index).svg;
  return r;
}

struct HttpFrontend::Impl {
  TutorialService& service;
  httplib::Server server;
  explicit Impl(TutorialService& s) : service(s) {}
};

namespace {

void reply(httplib::Response& res, const Response& r) {
  res.status = r.status;
  if (!r.session.empty()) res.set_header("X-H2S-Session", r.session);
  res.set_content(r.body, r.content_type.c_str());
}

}  // namespace

HttpFrontend::HttpFrontend(TutorialService& service) : impl_(std::make_unique<Impl>(service)) {
  httplib::Server& srv = impl_->server;
  TutorialService& svc = impl_->service;
  srv.set_default_headers({{"Access-Control-Allow-Origin", "*"},
                           {"Access-Control-Allow-Methods", "GET, POST, OPTIONS"},
                           {"Access-Control-Allow-Headers", "Content-Type"},
                           {"Access-Control-Expose-Headers", "X-H2S-Session"}});
  srv.Options(R"(.*)", [](const httplib::Request&, httplib::Response& res) { res.status = 204; });
  srv.Get("/meta", [&svc](const httplib::Request&, httplib::Response& res) {
    reply(res, svc.meta());
  });
  srv.Post("/compile", [&svc](const httplib::Request& req, httplib::Response& res) {
    reply(res, svc.compile(req.body));
  });
  srv.Get(R"(/step/(\d+)\.svg)", [&svc](const httplib::Request& req, httplib::Response& res) {
    const std::string session = req.get_param_value("session");
    if (session.empty()) {
      reply(res, error(400, "bad_request", "missing 'session' parameter"));
      return;
    }
    int index = -1;
    try {
      index = std::stoi(req.matches[1].str());
    } catch (const std::exception&) {
      reply(res, error(404, "no_such_step", "step index out of range"));
      return;
    }
    reply(res, svc.step_svg(index, session));
  });
  srv.set_logger([](const httplib::Request& req, const httplib::Response& res) {
    spdlog::info("{} {} -> {}", req.method, req.path, res.status);
  });
}

HttpFrontend::~HttpFrontend() { stop(); }

int HttpFrontend::bind(const std::string& host, int port) {
  if (port == 0) return impl_->server.bind_to_any_port(host);
  return impl_->server.bind_to_port(host, port) ? port : -1;
}

void HttpFrontend::listen() { impl_->server.listen_after_bind(); }

void HttpFrontend::stop() {
  if (impl_ && impl_->server.is_running()) impl_->server.stop();
}

}  // namespace h2s
