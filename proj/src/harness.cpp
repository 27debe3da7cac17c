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

#include "travelmas/harness.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <fstream>
#include <map>
#include <mutex>
#include <set>
#include <sstream>
#include <thread>

#include "travelmas/common.hpp"

namespace travelmas {

namespace fs = std::filesystem;
using nlohmann::json;

void write_file_atomic(const fs::path& path, const std::string& content) {
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  auto tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw Error("cannot write " + tmp.string());
    out << content;
    if (!out.flush()) throw Error("cannot write " + tmp.string());
  }
  fs::rename(tmp, path);
}

std::string read_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot read " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

// ---------------------------------------------------------------------------
// run

namespace {

RunTrace crash_trace(const Goal& goal, const RunConfig& config, const std::string& digest, const std::string& what) {
  RunTrace t;
  t.task_id = goal.task_id;
  t.mode = config.mode;
  t.config_digest = digest;
  t.error = "episode aborted: " + what;
  t.events.push_back({{"seq", 1}, {"type", "error"}, {"message", *t.error}});
  return t;
}

}  // namespace

RunSummary cmd_run(const RunOptions& opt) {
  namespace llm = travelmas::llm;
  auto log = [&](const std::string& line) {
    if (opt.log) opt.log(line);
  };

  try {
    opt.config.validate();
  } catch (const Error& e) {
    throw ConfigError(e.what());
  }
  if (opt.workers < 1) throw ConfigError("workers must be >= 1");
  if (!fs::is_regular_file(opt.tasks)) throw ConfigError("task file not found: " + opt.tasks.string());
  if (!fs::is_directory(opt.sandbox)) throw ConfigError("sandbox directory not found: " + opt.sandbox.string());
  if (opt.out.empty()) throw ConfigError("an output directory is required");
  const auto& backend = opt.config.backend;
  if (backend.kind == llm::BackendKind::scripted && !fs::is_directory(opt.cassette_dir))
    throw ConfigError("cassette directory not found: " + opt.cassette_dir.string());
  if (backend.kind == llm::BackendKind::remote) {
    if (backend.endpoint.empty()) throw ConfigError("remote backend requires an endpoint");
    if (backend.retry.max_attempts < 1) throw ConfigError("retry attempts must be >= 1");
  }

  std::vector<Goal> tasks;
  Sandbox sandbox;
  std::optional<PromptSet> prompts;
  try {
    tasks = load_tasks(opt.tasks);
    sandbox = Sandbox::load(opt.sandbox);
    prompts = opt.prompts ? PromptSet::load(*opt.prompts) : PromptSet::defaults();
  } catch (const Error& e) {
    throw ConfigError(e.what());
  }

  RunSummary summary;
  std::string experiment = opt.experiment.empty() ? std::string(to_string(opt.config.mode)) : opt.experiment;
  summary.run_dir = opt.out / "runs" / experiment;
  summary.total = tasks.size();
  fs::create_directories(summary.run_dir);
  const auto digest = opt.config.digest(*prompts);

  std::shared_ptr<llm::TokenBucket> limiter;
  if (backend.kind == llm::BackendKind::remote && backend.requests_per_minute > 0)
    limiter = std::make_shared<llm::TokenBucket>(backend.requests_per_minute);

  std::vector<const Goal*> pending;
  for (const auto& g : tasks) {
    if (fs::exists(summary.run_dir / (g.task_id + ".trace"))) {
      ++summary.skipped;
      continue;
    }
    pending.push_back(&g);
  }
  log("run " + experiment + ": " + std::to_string(pending.size()) + " to run, " + std::to_string(summary.skipped) +
      " already done");

  std::atomic<std::size_t> next{0};
  std::mutex mu;
  auto worker = [&] {
    while (true) {
      std::size_t i = next.fetch_add(1);
      if (i >= pending.size()) return;
      const Goal& goal = *pending[i];
      RunTrace trace;
      bool crashed = false;
      try {
        if (opt.before_episode) opt.before_episode(goal);
        auto cfg = opt.config;
        if (cfg.backend.kind == llm::BackendKind::scripted) cfg.backend.script_path = opt.cassette_dir / (goal.task_id + ".jsonl");
        if (opt.record_dir) cfg.backend.record_path = *opt.record_dir / (goal.task_id + ".jsonl");
        auto chat = llm::make_backend(cfg.backend, limiter);
        trace = run_episode(goal, sandbox, cfg, *chat, *prompts);
      } catch (const std::exception& e) {
        trace = crash_trace(goal, opt.config, digest, e.what());
        crashed = true;
      }
      write_file_atomic(summary.run_dir / (goal.task_id + ".trace"), trace_to_jsonl(trace));
      std::lock_guard lock(mu);
      ++summary.ran;
      if (trace.delivered) ++summary.delivered;
      if (crashed) ++summary.crashed;
      log(goal.task_id + ": " + (trace.delivered ? "delivered" : "undelivered") +
          (trace.error ? " (" + *trace.error + ")" : ""));
    }
  };
  std::size_t width = std::min<std::size_t>(static_cast<std::size_t>(opt.workers), std::max<std::size_t>(1, pending.size()));
  std::vector<std::thread> pool;
  for (std::size_t w = 0; w < width; ++w) pool.emplace_back(worker);
  for (auto& t : pool) t.join();
  return summary;
}

// ---------------------------------------------------------------------------
// evaluate

namespace {

json revisits_json(const RevisitStats& r) {
  json avg = json::object();
  for (std::size_t i = 0; i < kExpertOrder.size(); ++i) avg[std::string(to_string(kExpertOrder[i]))] = r.average[i];
  return {{"average", avg}, {"tasks", r.tasks}};
}

json task_json(const TaskEvaluation& e) {
  json cs = json::array(), hard = json::array();
  for (const auto& r : e.commonsense) cs.push_back(constraint_to_json(r));
  for (const auto& r : e.hard) hard.push_back(constraint_to_json(r));
  return {{"task_id", e.task_id},
          {"delivered", e.delivered},
          {"final_pass", e.final_pass()},
          {"commonsense", cs},
          {"hard", hard},
          {"plan", e.plan ? plan_to_json(*e.plan) : json(nullptr)}};
}

TaskEvaluation task_from_json(const json& j) {
  TaskEvaluation e;
  e.task_id = j.at("task_id").get<std::string>();
  e.delivered = j.at("delivered").get<bool>();
  for (const auto& r : j.at("commonsense")) e.commonsense.push_back(constraint_from_json(r));
  for (const auto& r : j.at("hard")) e.hard.push_back(constraint_from_json(r));
  if (j.contains("plan") && !j["plan"].is_null()) e.plan = plan_from_json(j["plan"]);
  return e;
}

}  // namespace

json EvaluationFile::to_json() const {
  json fail = json::array();
  for (const auto& f : failures)
    fail.push_back({{"area", to_string(f.area)}, {"failed", f.failed}, {"total", f.total}, {"percent", f.percent}});
  json per_task = json::array();
  for (const auto& t : tasks) per_task.push_back(task_json(t));
  return {{"schema", kEvalSchema},
          {"experiment", experiment},
          {"modes", modes},
          {"config_digests", config_digests},
          {"metrics", metrics_to_json(metrics)},
          {"failure_areas", fail},
          {"hallucinations",
           {{"flight", hallucinations.flights},
            {"hotel", hallucinations.hotels},
            {"restaurant", hallucinations.restaurants},
            {"attraction", hallucinations.attractions}}},
          {"revisits", revisits_json(revisits)},
          {"tasks", per_task}};
}

EvaluationFile EvaluationFile::from_json(const json& j) {
  auto schema = j.value("schema", "");
  if (schema != kEvalSchema)
    throw Error("evaluation schema '" + schema + "' does not match " + std::string(kEvalSchema));
  EvaluationFile e;
  e.experiment = j.at("experiment").get<std::string>();
  e.modes = j.at("modes").get<std::vector<std::string>>();
  e.config_digests = j.at("config_digests").get<std::vector<std::string>>();
  e.metrics = metrics_from_json(j.at("metrics"));
  for (const auto& f : j.at("failure_areas")) {
    auto area = parse_area(f.at("area").get<std::string>());
    if (!area) throw Error("unknown area in evaluation file");
    e.failures.push_back({*area, f.at("failed").get<std::size_t>(), f.at("total").get<std::size_t>(),
                          f.at("percent").get<double>()});
  }
  const auto& h = j.at("hallucinations");
  e.hallucinations = {h.at("flight").get<std::size_t>(), h.at("hotel").get<std::size_t>(),
                      h.at("restaurant").get<std::size_t>(), h.at("attraction").get<std::size_t>()};
  const auto& r = j.at("revisits");
  e.revisits.tasks = r.at("tasks").get<std::size_t>();
  for (std::size_t i = 0; i < kExpertOrder.size(); ++i)
    e.revisits.average[i] = r.at("average").at(std::string(to_string(kExpertOrder[i]))).get<double>();
  for (const auto& t : j.at("tasks")) e.tasks.push_back(task_from_json(t));
  return e;
}

std::string metrics_table(const EvaluationFile& eval) {
  auto values = metric_values(eval.metrics);
  std::size_t width = 0;
  for (auto n : kMetricNames) width = std::max(width, n.size());
  std::string out = "Experiment: " + eval.experiment + " (" + std::to_string(eval.metrics.tasks) + " tasks)\n";
  for (std::size_t i = 0; i < kMetricNames.size(); ++i) {
    std::string name(kMetricNames[i]);
    out += name + std::string(width - name.size() + 2, ' ') + format_fixed2(values[i]) + "\n";
  }
  return out;
}

std::string metrics_csv(const EvaluationFile& eval) {
  std::string out = "metric," + eval.experiment + "\n";
  auto values = metric_values(eval.metrics);
  for (std::size_t i = 0; i < kMetricNames.size(); ++i)
    out += std::string(kMetricNames[i]) + "," + format_fixed2(values[i]) + "\n";
  return out;
}

EvaluationFile cmd_evaluate(const EvaluateOptions& opt) {
  if (!fs::is_directory(opt.sandbox)) throw ConfigError("sandbox directory not found: " + opt.sandbox.string());
  if (!fs::is_directory(opt.traces)) throw ConfigError("trace directory not found: " + opt.traces.string());
  std::vector<fs::path> files;
  for (const auto& entry : fs::directory_iterator(opt.traces))
    if (entry.is_regular_file() && entry.path().extension() == ".trace") files.push_back(entry.path());
  if (files.empty()) throw ConfigError("no .trace files in " + opt.traces.string());
  std::sort(files.begin(), files.end());

  auto sandbox = Sandbox::load(opt.sandbox);
  std::map<std::string, Goal> goals;
  for (auto& g : load_tasks(opt.tasks)) goals.emplace(g.task_id, std::move(g));

  EvaluationFile out;
  out.experiment = opt.traces.filename().string();
  if (out.experiment.empty()) out.experiment = opt.traces.parent_path().filename().string();
  std::set<std::string> modes, digests;
  std::vector<RunTrace> traces;
  for (const auto& f : files) {
    RunTrace t;
    try {
      t = trace_from_jsonl(read_file(f));
    } catch (const Error& e) {
      throw Error(f.filename().string() + ": " + e.what());
    }
    auto it = goals.find(t.task_id);
    if (it == goals.end()) throw Error(f.filename().string() + ": task '" + t.task_id + "' is not in the task file");
    // The evaluator re-parses the delivered text instead of trusting the trace's copy.
    std::optional<Plan> plan;
    if (t.delivered && t.final_plan_text) plan = parse_plan(*t.final_plan_text).plan;
    out.tasks.push_back(evaluate_task(it->second, plan, sandbox));
    modes.insert(std::string(to_string(t.mode)));
    digests.insert(t.config_digest);
    traces.push_back(std::move(t));
  }
  out.modes.assign(modes.begin(), modes.end());
  out.config_digests.assign(digests.begin(), digests.end());
  out.metrics = compute_metrics(out.tasks, opt.metrics);
  out.failures = categorize_failures(out.tasks);
  out.hallucinations = count_hallucinations(out.tasks, sandbox);
  out.revisits = average_revisits(traces);

  if (!opt.out.empty()) {
    write_file_atomic(opt.out, out.to_json().dump(2) + "\n");
    auto csv = opt.out;
    csv.replace_extension(".csv");
    auto txt = opt.out;
    txt.replace_extension(".txt");
    write_file_atomic(csv, metrics_csv(out));
    write_file_atomic(txt, metrics_table(out));
  }
  return out;
}

EvaluationFile load_evaluation(const fs::path& path) {
  json j;
  try {
    j = json::parse(read_file(path));
  } catch (const json::exception& e) {
    throw Error(path.string() + ": " + e.what());
  }
  try {
    return EvaluationFile::from_json(j);
  } catch (const json::exception& e) {
    throw Error(path.string() + ": " + e.what());
  }
}

// ---------------------------------------------------------------------------
// report

namespace {

double round2(double v) { return std::round(v * 100.0) / 100.0; }

struct Row {
  std::string label;
  std::vector<double> values;
  bool integer = false;
  bool section = false;  // heading line, no values
};

std::string cell(double v, bool integer) {
  if (integer) return std::to_string(static_cast<long long>(std::llround(v)));
  return format_fixed2(v);
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

// Display width, counting each UTF-8 code point once.
std::size_t text_width(const std::string& s) {
  std::size_t n = 0;
  for (unsigned char c : s)
    if ((c & 0xC0) != 0x80) ++n;
  return n;
}

std::string pad(const std::string& s, std::size_t width, bool right) {
  auto w = text_width(s);
  std::string fill(width > w ? width - w : 0, ' ');
  return right ? fill + s : s + fill;
}

}  // namespace

std::string format_delta(double before, double after) {
  double d = round2(round2(after) - round2(before));
  if (d == 0) return "0.00";
  return std::string(d < 0 ? "↓ " : "↑ ") + format_fixed2(std::fabs(d));
}

Report build_report(const std::vector<EvaluationFile>& evals) {
  if (evals.empty()) throw Error("report needs at least one evaluation file");
  std::vector<Row> rows;
  auto add = [&](std::string label, auto get, bool integer = false) {
    Row r{std::move(label), {}, integer, false};
    for (const auto& e : evals) r.values.push_back(get(e));
    rows.push_back(std::move(r));
  };
  auto section = [&](std::string label) { rows.push_back({std::move(label), {}, false, true}); };

  add("Tasks", [](const EvaluationFile& e) { return static_cast<double>(e.metrics.tasks); }, true);
  for (std::size_t i = 0; i < kMetricNames.size(); ++i)
    add(std::string(kMetricNames[i]), [i](const EvaluationFile& e) { return metric_values(e.metrics)[i]; });
  section("Average # of revisits per-task");
  for (std::size_t i = 0; i < kExpertOrder.size(); ++i)
    add("  " + std::string(to_string(kExpertOrder[i])), [i](const EvaluationFile& e) { return e.revisits.average[i]; });
  section("% of failed constraints per area");
  for (std::size_t i = 0; i < kAreas.size(); ++i)
    add("  " + std::string(to_string(kAreas[i])), [i](const EvaluationFile& e) {
      for (const auto& f : e.failures)
        if (f.area == kAreas[i]) return f.percent;
      return 0.0;
    });
  section("Hallucinated plan mentions");
  add("  flight", [](const EvaluationFile& e) { return static_cast<double>(e.hallucinations.flights); }, true);
  add("  hotel", [](const EvaluationFile& e) { return static_cast<double>(e.hallucinations.hotels); }, true);
  add("  restaurant", [](const EvaluationFile& e) { return static_cast<double>(e.hallucinations.restaurants); }, true);
  add("  attraction", [](const EvaluationFile& e) { return static_cast<double>(e.hallucinations.attractions); }, true);

  const bool with_delta = evals.size() >= 2;
  std::vector<std::string> header{"Metric"};
  for (const auto& e : evals) header.push_back(e.experiment);
  if (with_delta) header.push_back("Δ");

  std::vector<std::vector<std::string>> table;
  std::vector<std::vector<std::string>> csv_rows;
  for (const auto& r : rows) {
    if (r.section) {
      table.push_back({r.label});
      continue;
    }
    std::vector<std::string> line{r.label}, csv{trim(r.label)};
    for (double v : r.values) {
      line.push_back(cell(v, r.integer));
      csv.push_back(cell(v, r.integer));
    }
    if (with_delta) {
      double first = r.values.front(), last = r.values.back();
      if (r.integer) {
        auto d = std::llround(last) - std::llround(first);
        line.push_back(d == 0 ? "0" : std::string(d < 0 ? "↓ " : "↑ ") + std::to_string(std::llabs(d)));
        csv.push_back(std::to_string(d));
      } else {
        line.push_back(format_delta(first, last));
        csv.push_back(format_fixed2(round2(round2(last) - round2(first))));
      }
    }
    table.push_back(std::move(line));
    csv_rows.push_back(std::move(csv));
  }

  std::vector<std::size_t> widths(header.size(), 0);
  for (std::size_t c = 0; c < header.size(); ++c) widths[c] = text_width(header[c]);
  for (const auto& line : table)
    if (line.size() > 1)
      for (std::size_t c = 0; c < line.size(); ++c) widths[c] = std::max(widths[c], text_width(line[c]));

  Report rep;
  auto render = [&](const std::vector<std::string>& line) {
    std::string s;
    for (std::size_t c = 0; c < line.size(); ++c) {
      if (c) s += "  ";
      s += pad(line[c], widths[c], c > 0);
    }
    while (!s.empty() && s.back() == ' ') s.pop_back();
    return s + "\n";
  };
  rep.text += render(header);
  std::size_t total = 0;
  for (auto w : widths) total += w;
  rep.text += std::string(total + 2 * (widths.size() - 1), '-') + "\n";
  for (const auto& line : table) rep.text += line.size() == 1 ? line[0] + "\n" : render(line);
  rep.text += "\nConfig digests:\n";
  for (const auto& e : evals) rep.text += "  " + e.experiment + ": " + join(e.config_digests, ", ") + "\n";

  std::vector<std::string> csv_header;
  for (const auto& h : header) csv_header.push_back(csv_field(h == "Δ" ? "delta" : h));
  rep.csv = join(csv_header, ",") + "\n";
  for (const auto& r : csv_rows) {
    std::vector<std::string> fields;
    for (const auto& f : r) fields.push_back(csv_field(f));
    rep.csv += join(fields, ",") + "\n";
  }
  return rep;
}

Report cmd_report(const std::vector<fs::path>& files, const std::optional<fs::path>& out_dir) {
  if (files.empty()) throw ConfigError("report needs at least one evaluation file");
  std::vector<EvaluationFile> evals;
  for (const auto& f : files) evals.push_back(load_evaluation(f));
  auto rep = build_report(evals);
  if (out_dir) {
    write_file_atomic(*out_dir / "report.txt", rep.text);
    write_file_atomic(*out_dir / "report.csv", rep.csv);
  }
  return rep;
}

}  // namespace travelmas
