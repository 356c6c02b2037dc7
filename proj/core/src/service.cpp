#include "euler/service.hpp"

#include <fstream>
#include <mutex>
#include <random>
#include <sstream>

#include "euler/metrics.hpp"
#include "euler/tactics.hpp"
#include "euler/textio.hpp"
#include "httplib.h"
#include "json.hpp"

namespace euler::service {

using nlohmann::json;

namespace {

struct RequestError {
  int status;
  json body;
};

[[noreturn]] void fail(int status, std::string code, std::string message) {
  throw RequestError{status, {{"error", {{"code", std::move(code)}, {"message", std::move(message)}}}}};
}

Response json_response(const json& body, int status = 200) { return {status, "application/json", body.dump()}; }

json zone_json(const Zone& z) {
  json out = json::array();
  for (const auto& c : z.in_set()) out.push_back(c.name());
  return out;
}

json zones_json(const ZoneSet& zones) {
  json out = json::array();
  for (const auto& z : zones) out.push_back(zone_json(z));
  return out;
}

json diagram_json(const Diagram& d) {
  json out;
  if (d.is_unitary()) {
    const auto& u = d.unitary();
    json contours = json::array();
    for (const auto& c : u.contours()) contours.push_back(c.name());
    out = {{"kind", "unitary"},
           {"contours", contours},
           {"zones", zones_json(u.zones())},
           {"shaded", zones_json(u.shaded())},
           {"missing", zones_json(missing_zones(u))}};
  } else {
    out = {{"kind", d.is_conjunction() ? "conjunction" : "implication"},
           {"left", diagram_json(d.left())},
           {"right", diagram_json(d.right())}};
  }
  out["text"] = textio::print_diagram(d);
  return out;
}

json state_json(const ProofState& s, std::size_t index) {
  json goals = json::array();
  for (std::size_t i = 0; i < s.subgoals.size(); ++i) {
    const auto& g = s.subgoals[i];
    goals.push_back({{"index", i},
                     {"antecedent", diagram_json(g.antecedent())},
                     {"consequent", diagram_json(g.consequent())},
                     {"text", textio::print_theorem(g)},
                     {"trivial", g.is_trivial()}});
  }
  return {{"index", index}, {"clutter", metrics::clutter(s)}, {"subgoals", goals}};
}

json metrics_json(const ProofMetrics& m) {
  return {{"length", m.length},
          {"total_clutter", m.total_clutter},
          {"average_clutter", {{"num", m.average_clutter.num}, {"den", m.average_clutter.den}}},
          {"max_velocity", m.max_velocity},
          {"max_clutter", m.max_clutter}};
}

json step_json(const StepRecord& s) {
  json out{{"text", textio::print_step(s)}, {"goal", s.goal_index()}};
  if (const auto* app = std::get_if<RuleApplication>(&s.kind)) {
    out["kind"] = "rule";
    out["name"] = std::string(rule_name(app->rule));
    out["path"] = path_to_string(app->path);
  } else {
    out["kind"] = "discharge";
  }
  if (s.provenance) out["tactic"] = {{"name", s.provenance->name}, {"invocation", s.provenance->invocation}};
  return out;
}

std::string timestamp(std::chrono::system_clock::time_point t) {
  return std::to_string(std::chrono::duration_cast<std::chrono::milliseconds>(t.time_since_epoch()).count());
}

json progress_json(const Proof& proof, std::size_t revision) {
  return {{"state", state_json(proof.current(), proof.states().size() - 1)},
          {"metrics", metrics_json(metrics::proof_metrics(proof))},
          {"revision", revision},
          {"finished", is_finished(proof)}};
}

json parse_body(std::string_view body) {
  json out = json::parse(body, nullptr, false);
  if (out.is_discarded() || !out.is_object()) fail(400, "bad-request", "request body must be a JSON object");
  return out;
}

template <typename T>
T field(const json& obj, const char* key) {
  if (!obj.contains(key)) fail(400, "bad-request", std::string("missing field '") + key + "'");
  try {
    return obj.at(key).get<T>();
  } catch (const json::exception&) {
    fail(400, "bad-request", std::string("field '") + key + "' has the wrong type");
  }
}

std::size_t parse_index(std::string_view text, const char* what) {
  std::size_t value = 0;
  try {
    std::size_t used = 0;
    value = std::stoul(std::string(text), &used);
    if (used != text.size()) throw std::invalid_argument(what);
  } catch (const std::exception&) {
    fail(400, "bad-request", std::string(what) + " must be a non-negative integer");
  }
  return value;
}

Zone zone_from_json(const json& j) {
  if (!j.is_array()) fail(400, "bad-request", "a zone is an array of contour labels");
  ContourSet in;
  for (const auto& c : j) {
    if (!c.is_string()) fail(400, "bad-request", "contour labels are strings");
    in.insert(Contour(c.get<std::string>()));
  }
  return Zone(std::move(in));
}

CopyDirection direction_from_json(const json& args) {
  const auto d = field<std::string>(args, "direction");
  if (d == "ltr") return CopyDirection::LeftToRight;
  if (d == "rtl") return CopyDirection::RightToLeft;
  fail(400, "bad-request", "direction is 'ltr' or 'rtl'");
}

RuleArgs args_from_json(Rule rule, const json& args) {
  switch (rule) {
    case Rule::EraseContour:
    case Rule::IntroduceContour: return Contour(field<std::string>(args, "contour"));
    case Rule::EraseShading:
    case Rule::IntroduceShadedZone:
    case Rule::RemoveShadedZone: return zone_from_json(field<json>(args, "zone"));
    case Rule::Combine:
    case Rule::Idempotency: return std::monostate{};
    case Rule::CopyContour: {
      const CopyDirection d = direction_from_json(args);
      return CopyContourArgs{d, Contour(field<std::string>(args, "contour"))};
    }
    case Rule::CopyShading: {
      const CopyDirection d = direction_from_json(args);
      ZoneSet targets;
      for (const auto& z : field<json>(args, "zones")) targets.insert(zone_from_json(z));
      return CopyShadingArgs{d, std::move(targets)};
    }
  }
  return std::monostate{};
}

std::string direction_text(CopyDirection d) { return d == CopyDirection::LeftToRight ? "ltr" : "rtl"; }

bool accepts(const Diagram& target, Rule rule, const RuleArgs& args) {
  try {
    rules::apply(target, rule, args);
    return true;
  } catch (const EulerError&) {
    return false;
  }
}

// Argument schema of `rule` at `target`, listing the accepted choices; empty
// when the rule has no instance there.
std::optional<json> rule_schema(const Diagram& target, Rule rule, const ContourSet& goal_contours) {
  if (rule_targets_unitary(rule) != target.is_unitary()) return std::nullopt;
  json choices = json::array();
  std::string type;
  switch (rule) {
    case Rule::EraseContour:
    case Rule::IntroduceContour: {
      type = "contour";
      const auto& own = target.unitary().contours();
      const ContourSet& pool = rule == Rule::EraseContour ? own : goal_contours;
      for (const auto& c : pool) {
        if (accepts(target, rule, c)) choices.push_back(c.name());
      }
      break;
    }
    case Rule::EraseShading:
    case Rule::IntroduceShadedZone:
    case Rule::RemoveShadedZone: {
      type = "zone";
      const auto& u = target.unitary();
      const ZoneSet pool = rule == Rule::IntroduceShadedZone ? missing_zones(u) : u.shaded();
      for (const auto& z : pool) {
        if (accepts(target, rule, z)) choices.push_back(zone_json(z));
      }
      break;
    }
    case Rule::Combine:
    case Rule::Idempotency:
      if (!accepts(target, rule, std::monostate{})) return std::nullopt;
      return json{{"type", "none"}};
    case Rule::CopyContour: {
      type = "direction_contour";
      if (!target.left().is_unitary() || !target.right().is_unitary()) return std::nullopt;
      for (CopyDirection d : {CopyDirection::LeftToRight, CopyDirection::RightToLeft}) {
        const auto& src = d == CopyDirection::LeftToRight ? target.left().unitary() : target.right().unitary();
        for (const auto& c : src.contours()) {
          if (accepts(target, rule, CopyContourArgs{d, c})) {
            choices.push_back({{"direction", direction_text(d)}, {"contour", c.name()}});
          }
        }
      }
      break;
    }
    case Rule::CopyShading: {
      type = "direction_zones";
      if (!target.left().is_unitary() || !target.right().is_unitary()) return std::nullopt;
      const auto& l = target.left().unitary();
      const auto& r = target.right().unitary();
      for (CopyDirection d : {CopyDirection::LeftToRight, CopyDirection::RightToLeft}) {
        const ZoneSet zs = d == CopyDirection::LeftToRight ? rules::copyable_shading(l, r)
                                                           : rules::copyable_shading(r, l);
        if (!zs.empty()) choices.push_back({{"direction", direction_text(d)}, {"zones", zones_json(zs)}});
      }
      break;
    }
  }
  if (choices.empty()) return std::nullopt;
  return json{{"type", type}, {"choices", choices}};
}

json rule_moves(const Subgoal& goal, std::size_t goal_index) {
  json out = json::array();
  const ContourSet goal_contours = contour_union(goal.goal());
  for (const Path& rel : preorder_paths(goal.antecedent())) {
    Path path = rel;
    path.insert(path.begin(), Side::Left);
    const Diagram& target = subdiagram_at(goal.antecedent(), rel);
    for (Rule rule : kAllRules) {
      if (auto schema = rule_schema(target, rule, goal_contours)) {
        out.push_back({{"kind", "rule"},
                       {"name", std::string(rule_name(rule))},
                       {"goal", goal_index},
                       {"path", path_to_string(path)},
                       {"args", *schema}});
      }
    }
  }
  return out;
}

Response error_response(const EulerError& e) {
  json err{{"code", std::string(error_code_name(e.code()))}, {"message", e.what()}};
  int status = 422;
  if (const auto* p = dynamic_cast<const ParseError*>(&e)) {
    status = 400;
    const auto& s = p->span();
    err["span"] = {{"start", s.start}, {"end", s.end}, {"line", s.line}, {"column", s.column}};
  }
  return json_response({{"error", err}}, status);
}

template <typename F>
Response guarded(F&& f) {
  try {
    return f();
  } catch (const RequestError& e) {
    return json_response(e.body, e.status);
  } catch (const EulerError& e) {
    return error_response(e);
  }
}

void check_revision(std::size_t expected, std::size_t current) {
  if (expected != current) {
    throw RequestError{409,
                       {{"error",
                         {{"code", "stale-revision"},
                          {"message", "revision " + std::to_string(expected) + " is stale"}}},
                        {"revision", current}}};
  }
}

}  // namespace

ProofService::Session::Session(std::string id_, Proof proof_)
    : id(std::move(id_)),
      proof(std::move(proof_)),
      created(std::chrono::system_clock::now()),
      updated(created) {}

ProofService::ProofService(ServiceOptions options) : options_(std::move(options)) {}

ProofService::~ProofService() {
  try {
    snapshot();
  } catch (...) {
  }
}

std::shared_ptr<ProofService::Session> ProofService::find(const std::string& id) const {
  std::shared_lock lock(mutex_);
  auto it = sessions_.find(id);
  if (it == sessions_.end()) fail(404, "unknown-session", "no session '" + id + "'");
  return it->second;
}

std::string ProofService::fresh_id() {
  static thread_local std::mt19937_64 rng{std::random_device{}()};
  std::ostringstream out;
  out << std::hex << rng() << rng();
  return out.str();
}

Response ProofService::create_session(std::string_view body) {
  return guarded([&] {
    const json req = parse_body(body);
    Subgoal theorem = textio::parse_theorem(field<std::string>(req, "theorem"));
    std::unique_lock lock(mutex_);
    std::string id = fresh_id();
    while (sessions_.count(id)) id = fresh_id();
    auto session = std::make_shared<Session>(id, Proof(std::move(theorem)));
    sessions_.emplace(id, session);
    json out = progress_json(session->proof, 0);
    out["id"] = id;
    return json_response(out, 201);
  });
}

Response ProofService::get_session(const std::string& id) const {
  return guarded([&] {
    auto s = find(id);
    std::shared_lock lock(s->mutex);
    json states = json::array();
    for (std::size_t i = 0; i < s->proof.states().size(); ++i) states.push_back(state_json(s->proof.states()[i], i));
    json steps = json::array();
    for (const auto& step : s->proof.steps()) steps.push_back(step_json(step));
    return json_response({{"id", s->id},
                          {"revision", s->revision},
                          {"created", timestamp(s->created)},
                          {"updated", timestamp(s->updated)},
                          {"theorem", textio::print_theorem(s->proof.theorem())},
                          {"states", states},
                          {"steps", steps},
                          {"metrics", metrics_json(metrics::proof_metrics(s->proof))},
                          {"finished", is_finished(s->proof)}});
  });
}

Response ProofService::moves(const std::string& id, std::optional<std::string_view> goal,
                             std::optional<std::string_view> level) const {
  return guarded([&] {
    auto s = find(id);
    const std::size_t goal_index = goal ? parse_index(*goal, "goal") : 0;
    const std::string lvl(level.value_or("all"));
    if (lvl != "high" && lvl != "low" && lvl != "all") fail(400, "bad-request", "level is high, low or all");

    std::shared_lock lock(s->mutex);
    const Proof& proof = s->proof;
    const auto& subgoals = proof.current().subgoals;
    if (goal_index >= subgoals.size()) {
      throw EulerError(ErrorCode::BadIndex, "subgoal index " + std::to_string(goal_index) + " is out of range");
    }
    const Subgoal& g = subgoals[goal_index];

    json out = json::array();
    if (lvl != "high") {
      for (auto& m : rule_moves(g, goal_index)) out.push_back(std::move(m));
      if (g.is_trivial()) out.push_back({{"kind", "discharge"}, {"name", "discharge"}, {"goal", goal_index}});
    }
    for (const auto& info : tactics::registry()) {
      const bool high = info.level == tactics::TacticLevel::High;
      if ((lvl == "high" && !high) || (lvl == "low" && high)) continue;
      auto probe = tactics::run_tactic(proof, info.name, goal_index);
      if (!probe || probe->steps().size() == proof.steps().size()) continue;
      out.push_back({{"kind", "tactic"},
                     {"name", info.name},
                     {"title", info.title},
                     {"level", high ? "high" : "low"},
                     {"goal", goal_index}});
    }
    return json_response({{"goal", goal_index}, {"level", lvl}, {"moves", out}});
  });
}

Response ProofService::apply(const std::string& id, std::string_view body) {
  return guarded([&] {
    const json req = parse_body(body);
    const json move = field<json>(req, "move");
    if (!move.is_object()) fail(400, "bad-request", "'move' must be an object");
    const auto kind = field<std::string>(move, "kind");
    const auto goal = field<std::size_t>(move, "goal");
    const auto revision = field<std::size_t>(req, "revision");
    const json args = req.contains("args") ? req.at("args") : json::object();

    auto s = find(id);
    std::unique_lock lock(s->mutex);
    check_revision(revision, s->revision);

    Proof next = s->proof;
    if (kind == "rule") {
      const auto name = field<std::string>(move, "name");
      const auto rule = rule_from_name(name);
      if (!rule) fail(400, "bad-request", "unknown rule '" + name + "'");
      const Path path = textio::parse_path(field<std::string>(move, "path"));
      next = apply_rule(s->proof, RuleApplication{*rule, goal, path, args_from_json(*rule, args)});
    } else if (kind == "discharge") {
      next = discharge_trivial(s->proof, goal);
    } else if (kind == "tactic") {
      auto result = tactics::run_tactic(s->proof, field<std::string>(move, "name"), goal);
      if (!result) throw EulerError(ErrorCode::TacticFailed, "the tactic does not apply to this subgoal");
      next = std::move(*result);
    } else {
      fail(400, "bad-request", "move kind is rule, tactic or discharge");
    }
    s->proof = std::move(next);
    ++s->revision;
    s->updated = std::chrono::system_clock::now();
    return json_response(progress_json(s->proof, s->revision));
  });
}

Response ProofService::undo(const std::string& id, std::string_view body) {
  return guarded([&] {
    const json req = parse_body(body);
    const auto index = field<std::size_t>(req, "state_index");
    const auto revision = field<std::size_t>(req, "revision");
    auto s = find(id);
    std::unique_lock lock(s->mutex);
    check_revision(revision, s->revision);
    s->proof = undo_to(s->proof, index);
    ++s->revision;
    s->updated = std::chrono::system_clock::now();
    return json_response(progress_json(s->proof, s->revision));
  });
}

Response ProofService::script(const std::string& id) const {
  return guarded([&] {
    auto s = find(id);
    std::shared_lock lock(s->mutex);
    return Response{200, "text/plain; charset=utf-8", textio::save_script(s->proof, "session_" + s->id)};
  });
}

void ProofService::snapshot() const {
  if (!options_.snapshot_dir) return;
  std::filesystem::create_directories(*options_.snapshot_dir);
  std::shared_lock lock(mutex_);
  for (const auto& [id, s] : sessions_) {
    std::shared_lock session_lock(s->mutex);
    std::ofstream out(*options_.snapshot_dir / (id + ".euler"));
    out << textio::save_script(s->proof, "session_" + id);
  }
}

std::size_t ProofService::session_count() const {
  std::shared_lock lock(mutex_);
  return sessions_.size();
}

void mount(httplib::Server& server, ProofService& service, const std::string& allowed_origin) {
  auto send = [](httplib::Response& res, const Response& r) {
    res.status = r.status;
    res.set_content(r.body, r.content_type.c_str());
  };
  auto query = [](const httplib::Request& req, const char* key) -> std::optional<std::string> {
    if (!req.has_param(key)) return std::nullopt;
    return req.get_param_value(key);
  };

  server.set_post_routing_handler([allowed_origin](const httplib::Request&, httplib::Response& res) {
    res.set_header("Access-Control-Allow-Origin", allowed_origin);
    res.set_header("Access-Control-Allow-Methods", "GET, POST, OPTIONS");
    res.set_header("Access-Control-Allow-Headers", "Content-Type");
  });
  server.Options(R"(/sessions.*)", [](const httplib::Request&, httplib::Response& res) { res.status = 204; });

  server.Post("/sessions", [&service, send](const httplib::Request& req, httplib::Response& res) {
    send(res, service.create_session(req.body));
  });
  server.Get(R"(/sessions/([^/]+))", [&service, send](const httplib::Request& req, httplib::Response& res) {
    send(res, service.get_session(req.matches[1]));
  });
  server.Get(R"(/sessions/([^/]+)/moves)",
             [&service, send, query](const httplib::Request& req, httplib::Response& res) {
               const auto goal = query(req, "goal");
               const auto level = query(req, "level");
               send(res, service.moves(req.matches[1], goal ? std::optional<std::string_view>(*goal) : std::nullopt,
                                       level ? std::optional<std::string_view>(*level) : std::nullopt));
             });
  server.Post(R"(/sessions/([^/]+)/apply)", [&service, send](const httplib::Request& req, httplib::Response& res) {
    send(res, service.apply(req.matches[1], req.body));
  });
  server.Post(R"(/sessions/([^/]+)/undo)", [&service, send](const httplib::Request& req, httplib::Response& res) {
    send(res, service.undo(req.matches[1], req.body));
  });
  server.Get(R"(/sessions/([^/]+)/script)", [&service, send](const httplib::Request& req, httplib::Response& res) {
    send(res, service.script(req.matches[1]));
  });
}

}  // namespace euler::service
