#include "nred/report.hpp"

#include <cstdio>
#include <sstream>

#include "json.hpp"
#include "nred/error.hpp"

#ifndef NRED_VERSION
#define NRED_VERSION "0.0.0"
#endif

namespace nred {

using nlohmann::json;

const char* version() { return NRED_VERSION; }

std::string fnv1a_hex(std::string_view data) {
  std::uint64_t h = 0xcbf29ce484222325ull;
  for (unsigned char c : data) {
    h ^= c;
    h *= 0x100000001b3ull;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

namespace {

json event_json(const IndexedEvent& e) {
  json j = {{"thread", e.thread}};
  switch (e.action.kind) {
    case ActionKind::plain: j["kind"] = "plain"; j["name"] = e.action.name; break;
    case ActionKind::block: j["kind"] = "block"; j["name"] = e.action.name; break;
    case ActionKind::acquire: j["kind"] = "acquire"; j["lock"] = e.action.lock; break;
    case ActionKind::release: j["kind"] = "release"; j["lock"] = e.action.lock; break;
    case ActionKind::syncpoint: j["kind"] = "syncpoint"; break;
  }
  return j;
}

IndexedEvent event_from(const json& j) {
  IndexedEvent e;
  e.thread = j.at("thread").get<std::uint32_t>();
  auto k = j.at("kind").get<std::string>();
  if (k == "plain") e.action = Action::plain(j.at("name").get<std::string>());
  else if (k == "block") e.action = Action::block(j.at("name").get<std::string>());
  else if (k == "acquire") e.action = Action::acquire(j.at("lock").get<std::string>());
  else if (k == "release") e.action = Action::release(j.at("lock").get<std::string>());
  else if (k == "syncpoint") e.action = Action::syncpoint();
  else throw ParseError("unknown event kind '" + k + "'", 0, 0);
  return e;
}

json trace_json(const IndexedTrace& t) {
  json a = json::array();
  for (const auto& e : t) a.push_back(event_json(e));
  return a;
}

IndexedTrace trace_from(const json& j) {
  IndexedTrace t;
  for (const auto& e : j) t.push_back(event_from(e));
  return t;
}

json witness_json(const Witness& w) {
  json j;
  if (const auto* a = std::get_if<AtomicWitness>(&w)) {
    j = {{"type", "atomic"},          {"block", a->block},
         {"scc_first", a->scc_first}, {"scc_second", a->scc_second},
         {"chain", a->chain},         {"steps", a->steps},
         {"body_trace", a->body_trace}, {"i", a->i},
         {"j", a->j},                 {"interleaving", trace_json(a->interleaving)},
         {"threads", a->threads},     {"rendered", render_witness(w)}};
  } else if (const auto* s = std::get_if<SyncWitness>(&w)) {
    j = {{"type", "sync"},           {"a", s->a},
         {"b", s->b},                {"path_a", s->path_a},
         {"path_b", s->path_b},      {"count_a", s->count_a},
         {"count_b", s->count_b},    {"rendered", render_witness(w)}};
  } else {
    const auto& t = std::get<TraceWitness>(w);
    j = {{"type", "trace"}, {"trace", trace_json(t.trace)}, {"rendered", render_witness(w)}};
  }
  return j;
}

Witness witness_from(const json& j) {
  auto type = j.at("type").get<std::string>();
  if (type == "atomic") {
    AtomicWitness a;
    a.block = j.at("block").get<std::string>();
    a.scc_first = j.at("scc_first").get<std::vector<std::string>>();
    a.scc_second = j.at("scc_second").get<std::vector<std::string>>();
    a.chain = j.at("chain").get<std::vector<std::string>>();
    a.steps = j.at("steps").get<std::vector<std::string>>();
    a.body_trace = j.at("body_trace").get<std::vector<std::string>>();
    a.i = j.at("i").get<std::size_t>();
    a.j = j.at("j").get<std::size_t>();
    a.interleaving = trace_from(j.at("interleaving"));
    a.threads = j.at("threads").get<std::uint32_t>();
    return a;
  }
  if (type == "sync") {
    SyncWitness s;
    s.a = j.at("a").get<std::string>();
    s.b = j.at("b").get<std::string>();
    s.path_a = j.at("path_a").get<std::vector<std::string>>();
    s.path_b = j.at("path_b").get<std::vector<std::string>>();
    s.count_a = j.at("count_a").get<std::uint64_t>();
    s.count_b = j.at("count_b").get<std::uint64_t>();
    return s;
  }
  if (type == "trace") return TraceWitness{trace_from(j.at("trace"))};
  throw ParseError("unknown witness type '" + type + "'", 0, 0);
}

json bounds_json(const Bounds& b) {
  json j = {{"max_threads", b.max_threads}, {"max_local_len", b.max_local_len}};
  j["max_swap_depth"] = b.max_swap_depth ? json(*b.max_swap_depth) : json(nullptr);
  return j;
}

Outcome outcome_from(const std::string& s) {
  if (s == "sound") return Outcome::sound;
  if (s == "unsound") return Outcome::unsound;
  if (s == "inconclusive") return Outcome::inconclusive;
  if (s == "not_applicable") return Outcome::not_applicable;
  throw ParseError("unknown outcome '" + s + "'", 0, 0);
}

std::string join(const std::vector<std::string>& v, const char* sep = " ") {
  std::string s;
  for (std::size_t k = 0; k < v.size(); ++k) s += (k ? sep : "") + v[k];
  return s;
}

}  // namespace

std::string render_witness(const Witness& w) {
  if (const auto* a = std::get_if<AtomicWitness>(&w)) {
    std::string s = "block " + a->block + ": body trace";
    for (std::size_t k = 0; k < a->body_trace.size(); ++k) {
      s += " " + a->body_trace[k];
      if (k + 1 == a->i) s += "[i]";
      if (k + 1 == a->j) s += "[j]";
    }
    s += "; chain " + (a->chain.empty() ? std::string() : a->chain.front());
    for (std::size_t k = 1; k < a->chain.size(); ++k)
      s += " -" + (k - 1 < a->steps.size() ? a->steps[k - 1] : std::string("?")) + "-> " +
           a->chain[k];
    s += "; interleaving " + to_string(a->interleaving);
    return s;
  }
  if (const auto* sw = std::get_if<SyncWitness>(&w)) {
    return "pair (" + sw->a + "," + sw->b + "): " + sw->a + " after " +
           std::to_string(sw->count_a) + " sync-point(s) via [" + join(sw->path_a) + "], " +
           sw->b + " after " + std::to_string(sw->count_b) + " via [" + join(sw->path_b) + "]";
  }
  return "no representative for " + to_string(std::get<TraceWitness>(w).trace);
}

std::string to_json(const Report& r) {
  json j;
  j["schema"] = kReportSchema;
  j["tool_version"] = r.tool_version;
  j["command"] = r.command;
  j["mode"] = r.mode;
  j["input"] = r.input;
  j["input_digest"] = r.input_digest;
  j["wall_time_ms"] = r.wall_time_ms;
  j["result"] = r.result;
  j["certificate"] = r.certificate;
  j["bounds"] = r.bounds ? bounds_json(*r.bounds) : json(nullptr);
  json conds = json::array();
  for (const auto& c : r.conditions)
    conds.push_back({{"name", c.name}, {"outcome", to_string(c.outcome)}, {"note", c.note}});
  j["conditions"] = std::move(conds);
  j["warnings"] = r.warnings;
  j["errors"] = r.errors;
  j["witness"] = r.witness ? witness_json(*r.witness) : json(nullptr);
  j["trace"] = r.trace ? trace_json(*r.trace) : json(nullptr);
  j["movers"] = r.movers;
  j["lipton"] = r.lipton ? json(*r.lipton) : json(nullptr);
  j["exit_code"] = r.exit_code;
  return j.dump(2) + "\n";
}

Report report_from_json(std::string_view text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError(std::string("malformed report: ") + e.what(), 0, 0);
  }
  if (j.value("schema", std::string()) != kReportSchema)
    throw ParseError("not a nred-report/1 document", 0, 0);
  try {
    Report r;
    r.tool_version = j.at("tool_version").get<std::string>();
    r.command = j.at("command").get<std::string>();
    r.mode = j.at("mode").get<std::string>();
    r.input = j.at("input").get<std::string>();
    r.input_digest = j.at("input_digest").get<std::string>();
    r.wall_time_ms = j.at("wall_time_ms").get<double>();
    r.result = j.at("result").get<std::string>();
    r.certificate = j.at("certificate").get<std::string>();
    if (!j.at("bounds").is_null()) {
      const auto& b = j["bounds"];
      Bounds bd;
      bd.max_threads = b.at("max_threads").get<std::uint32_t>();
      bd.max_local_len = b.at("max_local_len").get<std::uint32_t>();
      if (!b.at("max_swap_depth").is_null())
        bd.max_swap_depth = b["max_swap_depth"].get<std::uint64_t>();
      r.bounds = bd;
    }
    for (const auto& c : j.at("conditions"))
      r.conditions.push_back({c.at("name").get<std::string>(),
                              outcome_from(c.at("outcome").get<std::string>()),
                              c.at("note").get<std::string>()});
    r.warnings = j.at("warnings").get<std::vector<std::string>>();
    r.errors = j.at("errors").get<std::vector<std::string>>();
    if (!j.at("witness").is_null()) r.witness = witness_from(j["witness"]);
    if (!j.at("trace").is_null()) r.trace = trace_from(j["trace"]);
    r.movers = j.at("movers").get<std::map<std::string, std::string>>();
    if (!j.at("lipton").is_null()) r.lipton = j["lipton"].get<std::string>();
    r.exit_code = j.at("exit_code").get<int>();
    return r;
  } catch (const json::exception& e) {
    throw ParseError(std::string("malformed report: ") + e.what(), 0, 0);
  }
}

bool operator==(const Report& a, const Report& b) { return to_json(a) == to_json(b); }

std::string to_text(const Report& r) {
  std::ostringstream out;
  out << r.command << " " << r.mode << " " << r.input << ": " << r.result << "\n";
  if (!r.certificate.empty()) out << "  certificate: " << r.certificate << "\n";
  if (r.bounds) out << "  bounds: " << to_string(*r.bounds) << "\n";
  for (const auto& c : r.conditions) {
    out << "  condition " << c.name << ": " << to_string(c.outcome);
    if (!c.note.empty()) out << " (" << c.note << ")";
    out << "\n";
  }
  if (r.witness) out << "  witness: " << render_witness(*r.witness) << "\n";
  if (r.trace) out << "  trace: " << to_string(*r.trace) << "\n";
  for (const auto& [a, m] : r.movers) out << "  mover " << a << ": " << m << "\n";
  if (r.lipton) out << "  lipton: " << *r.lipton << "\n";
  for (const auto& w : r.warnings) out << "  warning: " << w << "\n";
  for (const auto& e : r.errors) out << "  error: " << e << "\n";
  out << "  digest " << r.input_digest << ", nred " << r.tool_version << ", "
      << r.wall_time_ms << " ms\n";
  return out.str();
}

}  // namespace nred
