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

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <thread>

#include <json.hpp>

#include "fixtures.hpp"
#include "h2s/service.hpp"

// After Eigen: the doctest and httplib headers together leave a macro that
// breaks Eigen's product kernels.
#include <httplib.h>

using namespace h2s;
using nlohmann::json;

namespace {

std::string body_for(const SegmentedModel& m, const Vec3& dir, const char* ability = "novice",
                     double jitter = 0.0) {
  const Box3 b = m.bounds();
  const Vec3 eye = b.center() + m.bbox_diagonal * dir + Vec3::Constant(jitter);
  json j{{"camera",
          {{"eye", {eye.x(), eye.y(), eye.z()}},
           {"target", {b.center().x(), b.center().y(), b.center().z()}},
           {"up", {0, 1, 0}},
           {"fov", 45}}},
         {"size", {1000, 800}},
         {"ability", ability}};
  return j.dump();
}

int count_kind(const json& doc, const char* kind) {
  return static_cast<int>(std::count_if(doc["steps"].begin(), doc["steps"].end(),
                                        [&](const json& s) { return s["kind"] == kind; }));
}

// A large block with a small tab glued to its +x face.
SegmentedModel block_and_tab() {
  return fixtures::make_model({fixtures::box_segment(0, "block", {0, 0, 0}, {2, 2, 2}),
                               fixtures::box_segment(1, "tab", {2, 0.8, 0.8}, {2.2, 1.2, 1.2})});
}

const Vec3 kView(0.5, 0.45, 0.75);

}  // namespace

TEST_CASE("meta describes the plan") {
  TutorialService svc(make_plan(fixtures::mixer(), EngineConfig{}));
  const Response r = svc.meta();
  CHECK(r.status == 200);
  CHECK(r.content_type == "application/json");
  const json j = json::parse(r.body);
  CHECK(j["parts"].size() == svc.plan().model.segments.size());
  CHECK(j["optimal"] == true);
  CHECK(j["relations"].size() == svc.plan().relations.size());
  CHECK(j["config_hash"].get<std::string>().size() == 16);
  for (const json& p : j["parts"]) {
    CHECK(p.contains("min"));
    CHECK(p.contains("max"));
    CHECK(p["candidate"].is_number_integer());
  }
}

TEST_CASE("compile is a pure function of the request") {
  const SegmentedModel m = fixtures::mixer();
  TutorialService svc(make_plan(m, EngineConfig{}));
  const Response a = svc.compile(body_for(m, kView));
  const Response b = svc.compile(body_for(m, kView));
  REQUIRE(a.status == 200);
  CHECK(a.body == b.body);
  CHECK(a.session == b.session);
  CHECK(svc.cache_size() == 1);
  CHECK(svc.cache_hits() == 1);

  // A jitter far below the lattice step lands in the same session.
  const Response c = svc.compile(body_for(m, kView, "novice", 1e-9 * m.bbox_diagonal));
  CHECK(c.session == a.session);
  CHECK(c.body == a.body);

  // A fresh service gives the same bytes: the cache only saves work.
  TutorialService other(make_plan(m, EngineConfig{}));
  CHECK(other.compile(body_for(m, kView)).body == a.body);

  const Response d = svc.compile(body_for(m, kView, "master"));
  CHECK(d.session != a.session);
  CHECK(svc.cache_size() == 2);
}

TEST_CASE("a small cache evicts the least recently used view") {
  const SegmentedModel m = fixtures::two_cuboids();
  TutorialService svc(make_plan(m, EngineConfig{}), 2);
  const std::string s1 = svc.compile(body_for(m, kView)).session;
  const std::string s2 = svc.compile(body_for(m, Vec3(-0.6, 0.5, 0.7))).session;
  CHECK(svc.step_svg(0, s1).status == 200);  // touch s1
  const std::string s3 = svc.compile(body_for(m, Vec3(0.7, 0.5, -0.6))).session;
  CHECK(svc.cache_size() == 2);
  CHECK(svc.step_svg(0, s1).status == 200);
  CHECK(svc.step_svg(0, s2).status == 404);
  CHECK(svc.step_svg(0, s3).status == 200);
}

TEST_CASE("error statuses") {
  const SegmentedModel m = fixtures::two_cuboids();
  TutorialService svc(make_plan(m, EngineConfig{}));
  auto code = [](const Response& r) { return json::parse(r.body)["error"]["code"].get<std::string>(); };

  SUBCASE("400 for malformed bodies") {
    for (const char* body :
         {"not json", "[]", "{}", R"({"camera": {"eye": [0, 0], "target": [0, 0, 0], "up": [0, 1, 0], "fov": 45}})",
          R"({"camera": {"eye": [5, 5, 5], "target": [0, 0, 0], "up": [0, 1, 0]}})",
          R"({"camera": {"eye": [5, 5, 5], "target": [0, 0, 0], "up": [0, 1, 0], "fov": 45}, "ability": "Wizard"})",
          R"({"camera": {"eye": [5, 5, 5], "target": [0, 0, 0], "up": [0, 1, 0], "fov": 45}, "size": [10]})"}) {
      CAPTURE(body);
      const Response r = svc.compile(body);
      CHECK(r.status == 400);
      CHECK(code(r) == "bad_request");
    }
  }
  SUBCASE("422 for degenerate cameras") {
    for (const char* body :
         {R"({"camera": {"eye": [1, 1, 1], "target": [1, 1, 1], "up": [0, 1, 0], "fov": 45}})",
          R"({"camera": {"eye": [5, 5, 5], "target": [0, 0, 0], "up": [0, 1, 0], "fov": 0}})",
          R"({"camera": {"eye": [0, 5, 0], "target": [0, 0, 0], "up": [0, 1, 0], "fov": 45}})"}) {
      CAPTURE(body);
      const Response r = svc.compile(body);
      CHECK(r.status == 422);
      CHECK(code(r) == "degenerate_camera");
    }
  }
  SUBCASE("404 for unknown sessions and steps") {
    CHECK(svc.step_svg(0, "0123456789abcdef").status == 404);
    const Response ok = svc.compile(body_for(m, kView));
    const int n = static_cast<int>(json::parse(ok.body)["steps"].size());
    CHECK(svc.step_svg(n - 1, ok.session).status == 200);
    CHECK(svc.step_svg(n - 1, ok.session).content_type == "image/svg+xml");
    const Response r = svc.step_svg(n, ok.session);
    CHECK(r.status == 404);
    CHECK(code(r) == "no_such_step");
  }
}

TEST_CASE("raising the ability removes guide steps but no primitive steps") {
  const SegmentedModel m = fixtures::mixer();
  TutorialService svc(make_plan(m, EngineConfig{}));
  const json novice = json::parse(svc.compile(body_for(m, kView, "novice")).body);
  const json master = json::parse(svc.compile(body_for(m, kView, "master")).body);
  CHECK(count_kind(master, "DrawGuide") < count_kind(novice, "DrawGuide"));
  CHECK(count_kind(master, "DrawPrimitiveEdge") == count_kind(novice, "DrawPrimitiveEdge"));
  CHECK(master["guides"].size() < novice["guides"].size());
}

TEST_CASE("moving the camera behind the block hides the tab") {
  const SegmentedModel m = block_and_tab();
  TutorialService svc(make_plan(m, EngineConfig{}));
  const json front = json::parse(svc.compile(body_for(m, Vec3(1.2, 0.3, 0.4))).body);
  const json back = json::parse(svc.compile(body_for(m, Vec3(-1.5, 0.05, 0.05))).body);
  CHECK(front["skipped_parts"].empty());
  CHECK(front["part_order"].size() == 2);
  // The block does not hang off the tab, so nothing visible keeps it.
  const auto& plan = svc.plan();
  for (int c : ancestors(plan.candidates.candidates, plan.selection.chosen.at(0))) {
    REQUIRE(plan.candidates.candidates[c].part_id != 1);
  }
  CHECK(back["skipped_parts"] == json::array({1}));
  CHECK(back["part_order"] == json::array({0}));
  for (const json& s : back["steps"]) CHECK(s["part_id"] != 1);
}

TEST_CASE("HTTP front end") {
  const SegmentedModel m = fixtures::two_cuboids();
  TutorialService svc(make_plan(m, EngineConfig{}));
  HttpFrontend http(svc);
  const int port = http.bind("127.0.0.1", 0);
  REQUIRE(port > 0);
  std::thread server([&] { http.listen(); });

  httplib::Client cli("127.0.0.1", port);
  cli.set_connection_timeout(5);
  cli.set_read_timeout(30);

  auto meta = cli.Get("/meta");
  REQUIRE(meta);
  CHECK(meta->status == 200);
  CHECK(meta->get_header_value("Access-Control-Allow-Origin") == "*");
  CHECK(meta->body == svc.meta().body);

  auto pre = cli.Options("/compile");
  REQUIRE(pre);
  CHECK(pre->status == 204);
  CHECK(pre->get_header_value("Access-Control-Allow-Methods").find("POST") != std::string::npos);

  const std::string body = body_for(m, kView);
  auto compiled = cli.Post("/compile", body, "application/json");
  REQUIRE(compiled);
  CHECK(compiled->status == 200);
  const std::string session = compiled->get_header_value("X-H2S-Session");
  CHECK(session.size() == 16);
  CHECK(compiled->get_header_value("Access-Control-Expose-Headers") == "X-H2S-Session");
  auto again = cli.Post("/compile", body, "application/json");
  REQUIRE(again);
  CHECK(again->body == compiled->body);
  CHECK(svc.cache_hits() == 1);

  auto svg = cli.Get("/step/0.svg?session=" + session);
  REQUIRE(svg);
  CHECK(svg->status == 200);
  CHECK(svg->get_header_value("Content-Type") == "image/svg+xml");
  CHECK(svg->body.rfind("<?xml", 0) == 0);

  auto missing = cli.Get("/step/0.svg");
  REQUIRE(missing);
  CHECK(missing->status == 400);
  auto unknown = cli.Get("/step/0.svg?session=ffffffffffffffff");
  REQUIRE(unknown);
  CHECK(unknown->status == 404);
  auto bad = cli.Post("/compile", "{", "application/json");
  REQUIRE(bad);
  CHECK(bad->status == 400);

  http.stop();
  server.join();
}
