// Copyright 2026 The travelmas Authors
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

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

#include <nlohmann/json.hpp>

#include "travelmas/evaluation.hpp"
#include "travelmas/goal.hpp"
#include "travelmas/harness.hpp"
#include "travelmas/orchestration.hpp"
#include "travelmas/plan.hpp"
#include "travelmas/sandbox.hpp"

namespace py = pybind11;
using nlohmann::json;
using namespace travelmas;

namespace {

py::object to_py(const json& j) {
  switch (j.type()) {
    case json::value_t::null: return py::none();
    case json::value_t::boolean: return py::bool_(j.get<bool>());
    case json::value_t::number_integer: return py::int_(j.get<std::int64_t>());
    case json::value_t::number_unsigned: return py::int_(j.get<std::uint64_t>());
    case json::value_t::number_float: return py::float_(j.get<double>());
    case json::value_t::string: return py::str(j.get<std::string>());
    case json::value_t::array: {
      py::list out;
      for (const auto& v : j) out.append(to_py(v));
      return std::move(out);
    }
    case json::value_t::object: {
      py::dict out;
      for (const auto& [k, v] : j.items()) out[py::str(k)] = to_py(v);
      return std::move(out);
    }
    default: return py::none();
  }
}

// Python containers go through the json module to keep one conversion path.
json from_py(const py::handle& obj) {
  auto dumps = py::module_::import("json").attr("dumps");
  return json::parse(dumps(obj).cast<std::string>());
}

py::list records_to_py(const auto& rows) {
  py::list out;
  for (const auto& r : rows) out.append(to_py(record_to_json(Record{r})));
  return out;
}

py::dict evaluation_to_py(const TaskEvaluation& e) {
  json cs = json::array(), hard = json::array();
  for (const auto& r : e.commonsense) cs.push_back(constraint_to_json(r));
  for (const auto& r : e.hard) hard.push_back(constraint_to_json(r));
  return to_py(json{{"task_id", e.task_id},
                    {"delivered", e.delivered},
                    {"final_pass", e.final_pass()},
                    {"commonsense", cs},
                    {"hard", hard}})
      .cast<py::dict>();
}

RunConfig make_config(const std::string& mode, int max_steps, int max_critic_rounds) {
  auto m = parse_run_mode(mode);
  if (!m) throw Error("unknown mode '" + mode + "'");
  RunConfig cfg;
  cfg.mode = *m;
  cfg.max_steps = max_steps;
  cfg.max_critic_rounds = max_critic_rounds;
  return cfg;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Multi-agent travel planning: sandbox, plans, episodes and evaluation";

  py::register_exception<Error>(m, "TravelmasError");

  py::class_<Sandbox>(m, "Sandbox")
      .def_static("load", &Sandbox::load, py::arg("directory"))
      .def("flight_search", [](const Sandbox& s, const std::string& o, const std::string& d,
                               const std::string& date) { return records_to_py(s.flight_search(o, d, date)); })
      .def("hotel_search", [](const Sandbox& s, const std::string& c) { return records_to_py(s.hotel_search(c)); })
      .def("restaurant_search",
           [](const Sandbox& s, const std::string& c) { return records_to_py(s.restaurant_search(c)); })
      .def("attraction_search",
           [](const Sandbox& s, const std::string& c) { return records_to_py(s.attraction_search(c)); })
      .def("entity_exists",
           [](const Sandbox& s, const std::string& kind, const std::string& name) {
             auto k = parse_entity_kind(kind);
             if (!k) throw Error("unknown entity kind '" + kind + "'");
             return s.entity_exists(*k, name);
           },
           py::arg("kind"), py::arg("name"))
      .def("counts", [](const Sandbox& s) {
        auto c = s.counts();
        py::dict d;
        d["flights"] = c.flights;
        d["hotels"] = c.hotels;
        d["restaurants"] = c.restaurants;
        d["attractions"] = c.attractions;
        d["cities"] = c.cities;
        return d;
      });

  m.def("parse_plan",
        [](const std::string& text) -> py::object {
          auto p = parse_plan(text);
          if (!p) return py::none();
          return to_py(plan_to_json(*p.plan));
        },
        py::arg("text"), "Last well-formed plan block as a dict, or None.");
  m.def("serialize_plan", [](const py::dict& plan) { return serialize_plan(plan_from_json(from_py(plan))); },
        py::arg("plan"));

  m.def("load_tasks",
        [](const std::filesystem::path& path) {
          py::list out;
          for (const auto& g : load_tasks(path)) out.append(to_py(goal_to_json(g)));
          return out;
        },
        py::arg("path"));

  m.def("evaluate_plan",
        [](const py::dict& task, const std::optional<std::string>& plan_text, const Sandbox& sandbox) {
          auto goal = parse_goal(from_py(task));
          std::optional<Plan> plan;
          if (plan_text) plan = parse_plan(*plan_text).plan;
          return evaluation_to_py(evaluate_task(goal, plan, sandbox));
        },
        py::arg("task"), py::arg("plan_text"), py::arg("sandbox"),
        "Constraint verdicts for one plan; None or an unparseable plan counts as undelivered.");

  m.def("count_revisits",
        [](const std::vector<std::string>& speakers) {
          std::vector<AgentRole> roles;
          for (const auto& s : speakers) {
            auto r = parse_role(s);
            if (!r) throw Error("unknown role '" + s + "'");
            roles.push_back(*r);
          }
          auto c = count_revisits(roles);
          py::dict d;
          for (std::size_t i = 0; i < kExpertOrder.size(); ++i) d[py::str(std::string(to_string(kExpertOrder[i])))] = c[i];
          return d;
        },
        py::arg("speakers"));

  m.def("run_episode",
        [](const py::dict& task, const Sandbox& sandbox, const std::string& mode,
           const std::filesystem::path& cassette, int max_steps, int max_critic_rounds) {
          auto goal = parse_goal(from_py(task));
          auto cfg = make_config(mode, max_steps, max_critic_rounds);
          cfg.backend.script_path = cassette;
          auto backend = llm::make_backend(cfg.backend);
          auto prompts = PromptSet::defaults();
          RunTrace trace;
          {
            py::gil_scoped_release release;
            trace = run_episode(goal, sandbox, cfg, *backend, prompts);
          }
          return trace_to_jsonl(trace);
        },
        py::arg("task"), py::arg("sandbox"), py::arg("mode"), py::arg("cassette"), py::arg("max_steps") = 30,
        py::arg("max_critic_rounds") = 3, "Replays one scripted episode; returns the trace as JSONL text.");

  m.def("run",
        [](const std::filesystem::path& tasks, const std::filesystem::path& sandbox, const std::string& mode,
           const std::filesystem::path& cassette_dir, const std::filesystem::path& out, int max_steps,
           const std::string& experiment, int workers) {
          RunOptions opt;
          opt.tasks = tasks;
          opt.sandbox = sandbox;
          opt.cassette_dir = cassette_dir;
          opt.out = out;
          opt.experiment = experiment;
          opt.workers = workers;
          opt.config = make_config(mode, max_steps, 3);
          RunSummary s;
          {
            py::gil_scoped_release release;
            s = cmd_run(opt);
          }
          py::dict d;
          d["run_dir"] = s.run_dir;
          d["total"] = s.total;
          d["ran"] = s.ran;
          d["skipped"] = s.skipped;
          d["delivered"] = s.delivered;
          d["crashed"] = s.crashed;
          return d;
        },
        py::arg("tasks"), py::arg("sandbox"), py::arg("mode"), py::arg("cassette_dir"), py::arg("out"),
        py::arg("max_steps") = 30, py::arg("experiment") = "", py::arg("workers") = 4);

  m.def("evaluate",
        [](const std::filesystem::path& traces, const std::filesystem::path& sandbox,
           const std::filesystem::path& tasks, const std::filesystem::path& out) {
          EvaluateOptions opt{traces, sandbox, tasks, out, {}};
          return to_py(cmd_evaluate(opt).to_json());
        },
        py::arg("traces"), py::arg("sandbox"), py::arg("tasks"), py::arg("out"));

  m.def("report",
        [](const std::vector<std::filesystem::path>& files, const std::optional<std::filesystem::path>& out) {
          return cmd_report(files, out).text;
        },
        py::arg("files"), py::arg("out") = std::nullopt);
}
