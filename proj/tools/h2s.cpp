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

// h2s: fit, plan, compile, render, pipeline, serve.

#include <csignal>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <spdlog/spdlog.h>

#include "h2s/model.hpp"
#include "h2s/plan.hpp"
#include "h2s/render.hpp"
#include "h2s/service.hpp"
#include "h2s/tutorial.hpp"

namespace fs = std::filesystem;
using namespace h2s;

namespace {

std::string read_file(const fs::path& p) {
  std::ifstream f(p, std::ios::binary);
  if (!f) throw Error("cannot open '" + p.string() + "'");
  std::ostringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

void write_output(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  const fs::path p(path);
  if (p.has_parent_path()) fs::create_directories(p.parent_path());
  std::ofstream f(p, std::ios::binary);
  if (!f) throw Error("cannot write '" + path + "'");
  f << text;
}

EngineConfig load_config(const std::string& path) {
  if (path.empty()) return EngineConfig{};
  return config_from_json(parse_json_text(read_file(path)));
}

Camera parse_view(const std::string& view, const std::string& size) {
  std::vector<double> v;
  std::stringstream ss(view);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      std::size_t used = 0;
      v.push_back(std::stod(item, &used));
      if (used != item.size()) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      throw CLI::ValidationError("--view", "not a number: '" + item + "'");
    }
  }
  if (v.size() != 10) {
    throw CLI::ValidationError("--view", "expected ex,ey,ez,tx,ty,tz,ux,uy,uz,fov");
  }
  Camera c;
  c.eye = {v[0], v[1], v[2]};
  c.target = {v[3], v[4], v[5]};
  c.up = {v[6], v[7], v[8]};
  c.vertical_fov = v[9];
  int w = 0;
  int h = 0;
  char x = 0;
  std::stringstream sz(size);
  if (!(sz >> w >> x >> h) || (x != 'x' && x != 'X') || w <= 0 || h <= 0) {
    throw CLI::ValidationError("--size", "expected WxH");
  }
  c.width = w;
  c.height = h;
  return c;
}

Ability parse_ability(const std::string& s) {
  try {
    return ability_from_string(s);
  } catch (const Error&) {
    throw CLI::ValidationError("--ability", "expected novice, apprentice or master");
  }
}

void log_plan(const Plan& plan) {
  spdlog::info("{} parts, {} relations, {} candidates, objective {:.6f} ({}{})",
               plan.primitives.size(), plan.relations.size(),
               plan.candidates.candidates.size(), plan.selection.objective,
               plan.selection.method, plan.selection.optimal ? "" : ", not proven optimal");
  if (!plan.selection.optimal) spdlog::warn("time limit reached; keeping the best incumbent");
}

HttpFrontend* g_frontend = nullptr;

void on_signal(int) {
  if (g_frontend) g_frontend->stop();
}

}  // namespace

int main(int argc, char** argv) {
  init_logging();
  CLI::App app{"Scaffolded sketching tutorials from segmented 3D models"};
  app.require_subcommand(1);

  std::string input, output, config_path, plan_path, tutorial_path, outdir, view, ability_name;
  std::string size = "1000x800";
  std::string dump_candidates, dump_relations, model_path, host = "127.0.0.1";
  bool greedy = false;
  double time_limit = 0.0;
  int port = 8080;
  std::size_t cache = 32;

  auto* fit = app.add_subcommand("fit", "Fit one primitive per part");
  fit->add_option("--input", input, "Segmented model")->required()->check(CLI::ExistingFile);
  fit->add_option("--output", output, "Primitives document (stdout if omitted)");
  fit->add_option("--config", config_path, "Engine configuration")->check(CLI::ExistingFile);

  auto* plan = app.add_subcommand("plan", "Generate candidates and select the scaffold");
  plan->add_option("--input", input, "Segmented model")->required()->check(CLI::ExistingFile);
  plan->add_option("--output", output, "Plan document (stdout if omitted)");
  plan->add_option("--config", config_path, "Engine configuration")->check(CLI::ExistingFile);
  plan->add_flag("--greedy", greedy, "Greedy baseline instead of the exact solver");
  plan->add_option("--time-limit", time_limit, "Solver time limit in seconds")
      ->check(CLI::NonNegativeNumber);
  plan->add_option("--dump-candidates", dump_candidates, "Write the candidate set here");
  plan->add_option("--dump-relations", dump_relations, "Write the detected relations here");

  auto* comp = app.add_subcommand("compile", "Compile a tutorial for one view");
  comp->add_option("--plan", plan_path, "Plan document")->required()->check(CLI::ExistingFile);
  comp->add_option("--view", view, "ex,ey,ez,tx,ty,tz,ux,uy,uz,fov")->required();
  comp->add_option("--size", size, "Image size WxH");
  comp->add_option("--ability", ability_name, "novice, apprentice or master")->required();
  comp->add_option("--output", output, "Tutorial document (stdout if omitted)");

  auto* rend = app.add_subcommand("render", "Render step sheets");
  rend->add_option("--tutorial", tutorial_path, "Tutorial document")
      ->required()
      ->check(CLI::ExistingFile);
  rend->add_option("--outdir", outdir, "Output directory")->required();

  auto* pipe = app.add_subcommand("pipeline", "fit, plan, compile and render in one go");
  pipe->add_option("--input", input, "Segmented model")->required()->check(CLI::ExistingFile);
  pipe->add_option("--view", view, "ex,ey,ez,tx,ty,tz,ux,uy,uz,fov")->required();
  pipe->add_option("--size", size, "Image size WxH");
  pipe->add_option("--ability", ability_name, "novice, apprentice or master")->required();
  pipe->add_option("--outdir", outdir, "Output directory")->required();
  pipe->add_option("--config", config_path, "Engine configuration")->check(CLI::ExistingFile);
  pipe->add_flag("--greedy", greedy, "Greedy baseline instead of the exact solver");
  pipe->add_option("--time-limit", time_limit, "Solver time limit in seconds")
      ->check(CLI::NonNegativeNumber);

  auto* serve = app.add_subcommand("serve", "HTTP service for the viewer");
  serve->add_option("--plan", plan_path, "Plan document")->check(CLI::ExistingFile);
  serve->add_option("--model", model_path, "Segmented model (planned at startup without --plan)")
      ->check(CLI::ExistingFile);
  serve->add_option("--port", port, "Port (0 picks a free one)")->check(CLI::Range(0, 65535));
  serve->add_option("--host", host, "Address to bind");
  serve->add_option("--cache", cache, "Compiled tutorials kept in memory")
      ->check(CLI::PositiveNumber);

  Camera camera;
  Ability ability = Ability::Novice;
  try {
    app.parse(argc, argv);
    if (*comp || *pipe) {
      camera = parse_view(view, size);
      ability = parse_ability(ability_name);
    }
    if (*serve && plan_path.empty() && model_path.empty()) {
      throw CLI::RequiredError("--plan or --model");
    }
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    PlanOptions popts;
    popts.greedy = greedy;
    popts.time_limit_seconds = time_limit;

    if (*fit) {
      const EngineConfig config = load_config(config_path);
      const SegmentedModel model = normalize(load_model(input));
      const auto prims = fit_all(model, config);
      const auto rels = detect_relations(prims, config, model.bbox_diagonal);
      write_output(output, fit_document(model, prims, rels).dump(1) + "\n");
      spdlog::info("fitted {} parts", prims.size());
      return 0;
    }
    if (*plan) {
      const Plan p = make_plan(load_model(input), load_config(config_path), popts);
      log_plan(p);
      if (!dump_candidates.empty()) {
        write_output(dump_candidates, candidates_to_json(p.candidates).dump(1) + "\n");
      }
      if (!dump_relations.empty()) {
        nlohmann::json rels = nlohmann::json::array();
        for (const Relation& r : p.relations) rels.push_back(relation_to_json(r));
        write_output(dump_relations, rels.dump(1) + "\n");
      }
      write_output(output, serialize_plan(p));
      return 0;
    }
    if (*comp) {
      const Plan p = parse_plan(read_file(plan_path));
      const Tutorial t = compile_tutorial(p, camera, ability);
      for (const std::string& w : t.warnings) spdlog::warn("{}", w);
      write_output(output, export_tutorial(t));
      spdlog::info("{} steps, {} guides, {} parts skipped", t.steps.size(), t.guides.size(),
                   t.skipped_parts.size());
      return 0;
    }
    if (*rend) {
      const Tutorial t = import_tutorial(read_file(tutorial_path));
      const auto files = write_sheets(t, outdir);
      spdlog::info("wrote {} files to {}", files.size(), outdir);
      return 0;
    }
    if (*pipe) {
      const EngineConfig config = load_config(config_path);
      const SegmentedModel model = load_model(input);
      const Plan p = make_plan(model, config, popts);
      log_plan(p);
      const fs::path dir(outdir);
      write_output((dir / "primitives.json").string(),
                   fit_document(p.model, p.primitives, p.relations).dump(1) + "\n");
      write_output((dir / "plan.json").string(), serialize_plan(p));
      // Render from the exported document so that every artifact follows
      // from the files on disk.
      const std::string doc = export_tutorial(compile_tutorial(p, camera, ability));
      write_output((dir / "tutorial.json").string(), doc);
      const Tutorial t = import_tutorial(doc);
      for (const std::string& w : t.warnings) spdlog::warn("{}", w);
      const auto files = write_sheets(t, dir / "sheets");
      spdlog::info("{} steps; wrote {} sheets to {}", t.steps.size(), files.size(),
                   (dir / "sheets").string());
      return 0;
    }
    if (*serve) {
      Plan p;
      if (!plan_path.empty()) {
        p = parse_plan(read_file(plan_path));
        if (!model_path.empty() && !(normalize(load_model(model_path)) == p.model)) {
          spdlog::warn("--model differs from the model stored in the plan; serving the plan's");
        }
      } else {
        p = make_plan(load_model(model_path), EngineConfig{});
      }
      log_plan(p);
      TutorialService service(std::move(p), cache);
      HttpFrontend frontend(service);
      const int bound = frontend.bind(host, port);
      if (bound < 0) throw Error("cannot bind " + host + ":" + std::to_string(port));
      g_frontend = &frontend;
      std::signal(SIGINT, on_signal);
      std::signal(SIGTERM, on_signal);
      spdlog::info("listening on http://{}:{}", host, bound);
      std::cout << "port " << bound << std::endl;
      frontend.listen();
      g_frontend = nullptr;
      return 0;
    }
  } catch (const FormatError& e) {
    spdlog::error("format error: {}", e.what());
    return 1;
  } catch (const std::exception& e) {
    spdlog::error("{}", e.what());
    return 1;
  }
  return 0;
}
