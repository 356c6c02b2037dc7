// euler-tactics: batch front-end for checking, proving and replaying.
//
// Exit status: 0 success, 1 invalid theorem / failed tactic / rejected
// replay, 2 usage or parse error.

#include <algorithm>
#include <cctype>
#include <csignal>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <future>
#include <iostream>
#include <sstream>

#include <spdlog/cfg/helpers.h>
#include <spdlog/sinks/stdout_color_sinks.h>
#include <spdlog/spdlog.h>

#include "CLI11.hpp"
#include "euler/metrics.hpp"
#include "euler/semantics.hpp"
#include "euler/service.hpp"
#include "euler/tactics.hpp"
#include "euler/textio.hpp"
#include "httplib.h"
#include "json.hpp"

namespace {

using nlohmann::json;
using namespace euler;

constexpr int kOk = 0;
constexpr int kFailed = 1;
constexpr int kUsage = 2;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw UsageError("cannot read " + path);
  std::ostringstream out;
  out << in.rdbuf();
  return out.str();
}

void report_parse_error(const std::string& file, const ParseError& e) {
  std::cerr << file << ":" << e.what() << "\n";
}

// Script names must be identifiers.
std::string script_name(const std::string& file) {
  std::string stem = std::filesystem::path(file).stem().string();
  std::string out;
  for (char c : stem) out += std::isalnum(static_cast<unsigned char>(c)) ? c : '_';
  if (out.empty() || !std::isalpha(static_cast<unsigned char>(out.front()))) out = "t_" + out;
  return out;
}

struct CheckOutcome {
  std::string file;
  int status = kOk;
  bool valid = false;
  std::optional<ContourSet> witness;
  std::string error;
};

CheckOutcome check_one(const std::string& file) {
  CheckOutcome out;
  out.file = file;
  try {
    const Subgoal goal = textio::parse_theorem(read_file(file));
    out.witness = entailment_witness(goal.antecedent(), goal.consequent());
    out.valid = !out.witness;
    out.status = out.valid ? kOk : kFailed;
  } catch (const ParseError& e) {
    out.status = kUsage;
    out.error = file + ":" + e.what();
  } catch (const std::exception& e) {
    out.status = kUsage;
    out.error = e.what();
  }
  return out;
}

std::string cell_text(const ContourSet& cell) { return zone_to_string(Zone(cell)); }

int cmd_check(const std::vector<std::string>& files, bool as_json, unsigned jobs) {
  std::vector<CheckOutcome> outcomes(files.size());
  jobs = std::max(1u, jobs);
  for (std::size_t begin = 0; begin < files.size(); begin += jobs) {
    std::vector<std::future<CheckOutcome>> batch;
    for (std::size_t i = begin; i < std::min(files.size(), begin + jobs); ++i) {
      batch.push_back(std::async(jobs > 1 ? std::launch::async : std::launch::deferred, check_one, files[i]));
    }
    for (std::size_t i = 0; i < batch.size(); ++i) outcomes[begin + i] = batch[i].get();
  }

  int status = kOk;
  json report = json::array();
  for (const auto& o : outcomes) {
    status = std::max(status, o.status);
    if (o.status == kUsage) {
      std::cerr << o.error << "\n";
      if (as_json) report.push_back({{"file", o.file}, {"error", o.error}});
      continue;
    }
    if (as_json) {
      json entry{{"file", o.file}, {"valid", o.valid}};
      if (o.witness) {
        json cell = json::array();
        for (const auto& c : *o.witness) cell.push_back(c.name());
        entry["witness"] = cell;
      }
      report.push_back(entry);
    } else if (o.valid) {
      std::cout << o.file << ": VALID\n";
    } else {
      std::cout << o.file << ": INVALID witness cell " << cell_text(*o.witness) << "\n";
    }
  }
  if (as_json) std::cout << report.dump(2) << "\n";
  return status;
}

int cmd_prove(const std::string& file, const std::string& tactic, std::optional<std::string> name) {
  tactics::find_tactic(tactic);
  const Subgoal goal = textio::parse_theorem(read_file(file));
  const Proof start(goal);
  auto proof = tactics::run_tactic(start, tactic, 0);
  if (!proof) {
    std::cerr << "tactic " << tactic << " failed on " << file << "\n";
    return kFailed;
  }
  spdlog::info("{}: {} produced {} steps", file, tactic, proof->steps().size());
  std::cout << textio::save_script(*proof, name.value_or(script_name(file)));
  if (!is_finished(*proof)) {
    std::cerr << file << ": " << proof->current().subgoals.size() << " subgoals left open\n";
    return kFailed;
  }
  return kOk;
}

textio::ReplayOptions replay_options(bool strict, bool rerun) {
  textio::ReplayOptions options;
  options.strict = strict;
  options.authority = rerun ? textio::ScriptAuthority::Tactics : textio::ScriptAuthority::Steps;
  return options;
}

int cmd_replay(const std::string& file, bool strict, bool rerun, bool as_json) {
  const std::string text = read_file(file);
  const auto script = textio::parse_script(text);
  try {
    const Proof proof = textio::replay_script(script, replay_options(strict, rerun));
    const bool finished = is_finished(proof);
    if (as_json) {
      std::cout << json{{"file", file},
                        {"valid", true},
                        {"steps", proof.steps().size()},
                        {"finished", finished},
                        {"open_subgoals", proof.current().subgoals.size()}}
                       .dump(2)
                << "\n";
    } else {
      std::cout << file << ": " << proof.steps().size() << " steps valid, "
                << (finished ? "finished" : "unfinished (" + std::to_string(proof.current().subgoals.size()) +
                                                " subgoals open)")
                << "\n";
    }
    return kOk;
  } catch (const ReplayFailure& e) {
    if (as_json) {
      std::cout << json{{"file", file},
                        {"valid", false},
                        {"step", e.step_number()},
                        {"line", e.span().line},
                        {"column", e.span().column},
                        {"code", std::string(error_code_name(e.cause()))},
                        {"message", e.what()}}
                       .dump(2)
                << "\n";
    }
    std::cerr << file << ":" << e.what() << " [" << error_code_name(e.cause()) << "]\n";
    return kFailed;
  }
}

int cmd_metrics(const std::string& file, bool antecedent_only) {
  const Proof proof = textio::load_script(read_file(file));
  const auto m = metrics::proof_metrics(proof, antecedent_only ? ClutterScope::AntecedentOnly
                                                               : ClutterScope::WholeGoal);
  const double avg = static_cast<double>(m.average_clutter.num) / static_cast<double>(m.average_clutter.den);
  std::cout << json{{"file", file},
                    {"length", m.length},
                    {"total_clutter", m.total_clutter},
                    {"average_clutter", {{"num", m.average_clutter.num}, {"den", m.average_clutter.den}, {"value", avg}}},
                    {"max_velocity", m.max_velocity},
                    {"max_clutter", m.max_clutter},
                    {"finished", is_finished(proof)}}
                   .dump(2)
            << "\n";
  return kOk;
}

httplib::Server* g_server = nullptr;

int cmd_serve(const std::string& host, int port, std::optional<std::string> static_dir,
              std::optional<std::string> snapshot_dir, const std::string& origin) {
  service::ServiceOptions options;
  if (snapshot_dir) options.snapshot_dir = *snapshot_dir;
  service::ProofService svc(options);
  httplib::Server server;
  service::mount(server, svc, origin);
  if (static_dir && !server.set_mount_point("/", *static_dir)) {
    throw UsageError("cannot serve static files from " + *static_dir);
  }
  g_server = &server;
  std::signal(SIGINT, [](int) { g_server->stop(); });
  std::signal(SIGTERM, [](int) { g_server->stop(); });
  spdlog::info("listening on {}:{}", host, port);
  if (!server.listen(host, port)) {
    std::cerr << "cannot listen on " << host << ":" << port << "\n";
    return kFailed;
  }
  return kOk;
}

int cmd_tactics() {
  for (const auto& info : tactics::registry()) {
    std::cout << (info.level == tactics::TacticLevel::High ? "high " : "low  ") << info.name << "  " << info.title
              << "\n";
  }
  return kOk;
}

void init_logging() {
  auto logger = spdlog::stderr_color_mt("euler-tactics");
  spdlog::set_default_logger(logger);
  spdlog::set_level(spdlog::level::warn);
  if (const char* env = std::getenv("EULER_TACTICS_LOG")) spdlog::cfg::helpers::load_levels(env);
}

}  // namespace

int main(int argc, char** argv) {
  init_logging();

  CLI::App app{"Tactical theorem prover for conjunctive Euler diagrams"};
  app.require_subcommand(1);

  std::vector<std::string> check_files;
  bool as_json = false;
  unsigned jobs = 1;
  auto* check = app.add_subcommand("check", "Decide validity of theorem files");
  check->add_option("files", check_files, "Theorem files")->required()->check(CLI::ExistingFile);
  check->add_flag("--json", as_json, "Emit one JSON document");
  check->add_option("--jobs", jobs, "Check files in parallel")->check(CLI::PositiveNumber);

  std::string prove_file, tactic;
  std::optional<std::string> proof_name;
  auto* prove = app.add_subcommand("prove", "Run a tactic and print the proof script");
  prove->add_option("file", prove_file, "Theorem file")->required()->check(CLI::ExistingFile);
  prove->add_option("--tactic", tactic, "Registered tactic name")->required();
  prove->add_option("--name", proof_name, "Theorem name written to the script");

  std::string script_file;
  bool strict = false, rerun = false;
  auto* replay = app.add_subcommand("replay", "Check every step of a proof script");
  replay->add_option("script", script_file, "Proof script")->required()->check(CLI::ExistingFile);
  replay->add_flag("--strict-replay", strict, "Require tactics to reproduce their recorded steps");
  replay->add_flag("--rerun-tactics", rerun, "Re-run tactic invocations instead of their recorded steps");
  replay->add_flag("--json", as_json, "Emit a JSON report");

  bool antecedent_only = false;
  auto* metrics_cmd = app.add_subcommand("metrics", "Report proof length and clutter as JSON");
  metrics_cmd->add_option("script", script_file, "Proof script")->required()->check(CLI::ExistingFile);
  metrics_cmd->add_flag("--antecedent-only", antecedent_only, "Count clutter of antecedents only");

  std::string host = "127.0.0.1", origin = "*";
  int port = 8080;
  std::optional<std::string> static_dir, snapshot_dir;
  auto* serve = app.add_subcommand("serve", "Run the HTTP session service");
  serve->add_option("--port", port, "Port")->check(CLI::Range(0, 65535));
  serve->add_option("--host", host, "Bind address");
  serve->add_option("--static", static_dir, "Directory of UI assets served at /");
  serve->add_option("--snapshot-dir", snapshot_dir, "Write sessions as scripts here on shutdown");
  serve->add_option("--cors-origin", origin, "Allowed CORS origin");

  auto* list = app.add_subcommand("tactics", "List registered tactics");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kUsage;
  }

  try {
    if (*check) return cmd_check(check_files, as_json, jobs);
    if (*prove) return cmd_prove(prove_file, tactic, proof_name);
    if (*replay) return cmd_replay(script_file, strict, rerun, as_json);
    if (*metrics_cmd) return cmd_metrics(script_file, antecedent_only);
    if (*serve) return cmd_serve(host, port, static_dir, snapshot_dir, origin);
    if (*list) return cmd_tactics();
  } catch (const ParseError& e) {
    report_parse_error(*prove ? prove_file : script_file, e);
    return kUsage;
  } catch (const ReplayFailure& e) {
    std::cerr << script_file << ":" << e.what() << "\n";
    return kFailed;
  } catch (const UsageError& e) {
    std::cerr << e.what() << "\n";
    return kUsage;
  } catch (const EulerError& e) {
    std::cerr << e.what() << " [" << error_code_name(e.code()) << "]\n";
    return e.code() == ErrorCode::UnknownTactic ? kUsage : kFailed;
  }
  return kUsage;
}
