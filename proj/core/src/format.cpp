#include "nred/format.hpp"

#include <algorithm>
#include <set>
#include <sstream>

#include "json.hpp"
#include "nred/error.hpp"

namespace nred {

using nlohmann::json;

bool valid_identifier(std::string_view s) {
  if (s.empty()) return false;
  for (char ch : s) {
    auto c = static_cast<unsigned char>(ch);
    if (std::isspace(c) || std::string_view("(){},#@>").find(ch) != std::string_view::npos)
      return false;
  }
  return true;
}

namespace {

// ---------------------------------------------------------------------------
// Tokenizer

struct Token {
  enum Kind { word, punct, newline, end } kind = end;
  std::string text;
  SourcePos pos;
};

std::vector<Token> tokenize(std::string_view src) {
  std::vector<Token> out;
  int line = 1, col = 1;
  std::size_t i = 0;
  auto advance = [&](std::size_t n) {
    for (std::size_t k = 0; k < n; ++k, ++i) {
      if (src[i] == '\n') {
        ++line;
        col = 1;
      } else if ((static_cast<unsigned char>(src[i]) & 0xC0) != 0x80) {
        ++col;
      }
    }
  };
  while (i < src.size()) {
    char c = src[i];
    if (c == '\n') {
      out.push_back({Token::newline, "\n", {line, col}});
      advance(1);
    } else if (std::isspace(static_cast<unsigned char>(c))) {
      advance(1);
    } else if (c == '#') {
      while (i < src.size() && src[i] != '\n') advance(1);
    } else if (std::string_view("(){},").find(c) != std::string_view::npos) {
      out.push_back({Token::punct, std::string(1, c), {line, col}});
      advance(1);
    } else {
      SourcePos pos{line, col};
      std::size_t start = i;
      while (i < src.size() && !std::isspace(static_cast<unsigned char>(src[i])) &&
             std::string_view("(){},#").find(src[i]) == std::string_view::npos) {
        if (src[i] == '@' || src[i] == '>')
          throw ParseError(std::string("character '") + src[i] + "' not allowed in identifiers",
                           line, col + static_cast<int>(i - start));
        ++i;
      }
      std::string word(src.substr(start, i - start));
      i = start;
      advance(word.size());
      out.push_back({Token::word, std::move(word), pos});
    }
  }
  out.push_back({Token::end, "", {line, col}});
  return out;
}

// ---------------------------------------------------------------------------
// Parser

class Parser {
 public:
  explicit Parser(std::string_view text) : toks_(tokenize(text)) {}

  Document run() {
    while (true) {
      skip_newlines();
      if (peek().kind == Token::end) break;
      statement(doc_.templ, true);
    }
    return std::move(doc_);
  }

 private:
  const Token& peek() const { return toks_[at_]; }
  const Token& next() { return toks_[at_++]; }

  [[noreturn]] void fail(const std::string& what, const Token& t) const {
    throw ParseError(what, t.pos.line, t.pos.column);
  }

  void skip_newlines() {
    while (peek().kind == Token::newline) ++at_;
  }

  std::string identifier(const char* what) {
    const auto& t = next();
    if (t.kind != Token::word) fail(std::string("expected ") + what, t);
    doc_.positions.try_emplace(t.text, t.pos);
    return t.text;
  }

  void expect_punct(const char* p) {
    const auto& t = next();
    if (t.kind != Token::punct || t.text != p) fail(std::string("expected '") + p + "'", t);
  }

  void end_of_statement() {
    const auto& t = peek();
    if (t.kind == Token::newline || t.kind == Token::end) return;
    if (t.kind == Token::punct && t.text == "}") return;
    fail("unexpected '" + t.text + "'", t);
  }

  std::vector<std::string> rest_of_line(const char* what) {
    std::vector<std::string> out;
    while (peek().kind == Token::word) out.push_back(identifier(what));
    end_of_statement();
    return out;
  }

  std::vector<ActionPair> pair_list() {
    std::vector<ActionPair> out;
    expect_punct("{");
    while (true) {
      skip_newlines();
      const auto& t = peek();
      if (t.kind == Token::punct && t.text == "}") {
        ++at_;
        break;
      }
      if (t.kind == Token::end) fail("unterminated pair list", t);
      expect_punct("(");
      auto a = identifier("action");
      expect_punct(",");
      auto b = identifier("action");
      expect_punct(")");
      out.emplace_back(std::move(a), std::move(b));
    }
    end_of_statement();
    return out;
  }

  RawTemplate nested(const Token& head) {
    RawTemplate t;
    t.pos = head.pos;
    expect_punct("{");
    while (true) {
      skip_newlines();
      const auto& tok = peek();
      if (tok.kind == Token::punct && tok.text == "}") {
        ++at_;
        break;
      }
      if (tok.kind == Token::end) fail("unterminated block", head);
      statement(t, false);
    }
    end_of_statement();
    return t;
  }

  void statement(RawTemplate& t, bool top) {
    const Token& kw = next();
    if (kw.kind != Token::word) fail("expected a statement", kw);
    const std::string& k = kw.text;
    if (k == "init" || k == "exit") {
      auto& slot = k == "init" ? t.init : t.exit;
      if (slot) fail("duplicate '" + k + "'", kw);
      slot = identifier("location");
      end_of_statement();
    } else if (k == "locations") {
      auto v = rest_of_line("location");
      t.locations.insert(t.locations.end(), v.begin(), v.end());
    } else if (k == "edge") {
      RawEdge e;
      e.pos = kw.pos;
      e.source = identifier("source location");
      e.name = identifier("action");
      e.target = identifier("target location");
      end_of_statement();
      t.edges.push_back(std::move(e));
    } else if (k == "lock-edge") {
      RawEdge e;
      e.pos = kw.pos;
      e.source = identifier("source location");
      const auto& op = next();
      if (op.kind != Token::word || (op.text != "acq" && op.text != "rel"))
        fail("expected 'acq' or 'rel'", op);
      e.kind = op.text == "acq" ? ActionKind::acquire : ActionKind::release;
      e.name = identifier("lock");
      e.target = identifier("target location");
      end_of_statement();
      t.edges.push_back(std::move(e));
    } else if (k == "sync-edge") {
      RawEdge e;
      e.pos = kw.pos;
      e.kind = ActionKind::syncpoint;
      e.source = identifier("source location");
      e.target = identifier("target location");
      end_of_statement();
      t.edges.push_back(std::move(e));
    } else if (!top) {
      fail("'" + k + "' is not allowed inside a block", kw);
    } else if (k == "program" || k == "name") {
      doc_.name = identifier("name");
      end_of_statement();
    } else if (k == "sync-kind") {
      const auto& v = next();
      if (v.text == "trivial") doc_.sync_kind = SyncKind::trivial;
      else if (v.text == "locks") doc_.sync_kind = SyncKind::locks;
      else if (v.text == "locks+syncpoints") doc_.sync_kind = SyncKind::locks_and_syncpoints;
      else fail("unknown sync kind '" + v.text + "'", v);
      end_of_statement();
    } else if (k == "actions") {
      auto v = rest_of_line("action");
      if (!doc_.actions) doc_.actions.emplace();
      doc_.actions->insert(doc_.actions->end(), v.begin(), v.end());
    } else if (k == "conflicts" || k == "commutes") {
      auto& slot = k == "conflicts" ? doc_.conflicts : doc_.commutes;
      auto v = pair_list();
      if (!slot) slot.emplace();
      slot->insert(slot->end(), v.begin(), v.end());
    } else if (k == "block") {
      auto name = identifier("block name");
      if (doc_.blocks.count(name)) fail("duplicate block '" + name + "'", kw);
      doc_.blocks.emplace(name, nested(kw));
    } else if (k == "original" || k == "instrumented") {
      auto& slot = k == "original" ? doc_.original : doc_.instrumented;
      if (slot) fail("duplicate '" + k + "' section", kw);
      slot = nested(kw);
    } else if (k == "syncpoint") {
      const auto& at = next();
      if (at.kind != Token::word || at.text != "at") fail("expected 'at'", at);
      auto v = rest_of_line("location");
      if (v.empty()) fail("expected at least one location", at);
      doc_.syncpoints.insert(doc_.syncpoints.end(), v.begin(), v.end());
    } else if (k == "cover") {
      auto v = rest_of_line("location");
      if (v.empty()) fail("expected at least one location", kw);
      doc_.cover.insert(doc_.cover.end(), v.begin(), v.end());
    } else {
      fail("unknown statement '" + k + "'", kw);
    }
  }

  std::vector<Token> toks_;
  std::size_t at_ = 0;
  Document doc_;
};

// ---------------------------------------------------------------------------
// JSON

const char* kind_name(ActionKind k) {
  switch (k) {
    case ActionKind::plain: return "plain";
    case ActionKind::block: return "plain";
    case ActionKind::acquire: return "acquire";
    case ActionKind::release: return "release";
    case ActionKind::syncpoint: return "syncpoint";
  }
  return "plain";
}

json template_json(const RawTemplate& t) {
  json j = json::object();
  if (t.init) j["init"] = *t.init;
  if (t.exit) j["exit"] = *t.exit;
  if (!t.locations.empty()) j["locations"] = t.locations;
  json edges = json::array();
  for (const auto& e : t.edges) {
    json je = {{"src", e.source}, {"kind", kind_name(e.kind)}, {"dst", e.target}};
    if (e.kind == ActionKind::acquire || e.kind == ActionKind::release)
      je["lock"] = e.name;
    else if (e.kind != ActionKind::syncpoint)
      je["name"] = e.name;
    edges.push_back(std::move(je));
  }
  j["edges"] = std::move(edges);
  return j;
}

json pairs_json(const std::vector<ActionPair>& v) {
  json a = json::array();
  for (const auto& [x, y] : v) a.push_back({x, y});
  return a;
}

struct JsonReader {
  Document& doc;

  [[noreturn]] static void fail(const std::string& what) { throw ParseError(what, 0, 0); }

  std::string str(const json& j, const char* what) {
    if (!j.is_string()) fail(std::string(what) + " must be a string");
    auto s = j.get<std::string>();
    if (!valid_identifier(s)) fail(std::string("invalid identifier '") + s + "'");
    doc.positions.try_emplace(s, SourcePos{});
    return s;
  }

  std::vector<std::string> strs(const json& j, const char* what) {
    if (!j.is_array()) fail(std::string(what) + " must be an array");
    std::vector<std::string> out;
    for (const auto& x : j) out.push_back(str(x, what));
    return out;
  }

  std::vector<ActionPair> pairs(const json& j) {
    if (!j.is_array()) fail("pair list must be an array");
    std::vector<ActionPair> out;
    for (const auto& p : j) {
      if (!p.is_array() || p.size() != 2) fail("pairs must be two-element arrays");
      out.emplace_back(str(p[0], "action"), str(p[1], "action"));
    }
    return out;
  }

  RawTemplate templ(const json& j) {
    if (!j.is_object()) fail("template must be an object");
    RawTemplate t;
    if (j.contains("init")) t.init = str(j["init"], "init");
    if (j.contains("exit")) t.exit = str(j["exit"], "exit");
    if (j.contains("locations")) t.locations = strs(j["locations"], "locations");
    if (!j.contains("edges")) return t;
    if (!j["edges"].is_array()) fail("edges must be an array");
    for (const auto& je : j["edges"]) {
      if (!je.is_object()) fail("edge must be an object");
      RawEdge e;
      e.source = str(je.value("src", json()), "src");
      e.target = str(je.value("dst", json()), "dst");
      auto kind = je.value("kind", std::string("plain"));
      if (kind == "plain") {
        e.name = str(je.value("name", json()), "name");
      } else if (kind == "acquire" || kind == "release") {
        e.kind = kind == "acquire" ? ActionKind::acquire : ActionKind::release;
        e.name = str(je.value("lock", json()), "lock");
      } else if (kind == "syncpoint") {
        e.kind = ActionKind::syncpoint;
      } else {
        fail("unknown edge kind '" + kind + "'");
      }
      t.edges.push_back(std::move(e));
    }
    return t;
  }
};

// ---------------------------------------------------------------------------
// Resolution

ThreadTemplate build(const RawTemplate& raw, const std::set<std::string>& block_names,
                     const std::optional<std::string>& default_init,
                     const std::optional<std::string>& default_exit, const char* what) {
  TemplateBuilder b;
  for (const auto& l : raw.locations) b.location(l);
  auto init = raw.init ? raw.init : default_init;
  auto exit = raw.exit ? raw.exit : default_exit;
  if (!init || !exit) {
    throw ParseError(std::string(what) + " lacks an init or exit location", raw.pos.line,
                     raw.pos.column);
  }
  b.init(*init).exit(*exit);
  for (const auto& e : raw.edges) {
    Action a;
    switch (e.kind) {
      case ActionKind::plain:
      case ActionKind::block:
        a = block_names.count(e.name) ? Action::block(e.name) : Action::plain(e.name);
        break;
      case ActionKind::acquire: a = Action::acquire(e.name); break;
      case ActionKind::release: a = Action::release(e.name); break;
      case ActionKind::syncpoint: a = Action::syncpoint(); break;
    }
    b.edge(e.source, std::move(a), e.target);
  }
  return b.build();
}

std::string located(const Document& d, const Violation& v) {
  std::string s;
  for (const auto& el : v.elements) {
    auto it = d.positions.find(el);
    if (it != d.positions.end() && it->second.line > 0) {
      s = std::to_string(it->second.line) + ":" + std::to_string(it->second.column) + ": ";
      break;
    }
  }
  return s + v.kind + ": " + v.message;
}

[[noreturn]] void reject(const Document& d, const ValidationReport& r) {
  std::string msg = "invalid input";
  for (const auto& v : r.violations) msg += "\n  " + located(d, v);
  throw Error(ErrorCode::validation_error, msg);
}

void write_template_body(std::ostringstream& out, const RawTemplate& t, const std::string& indent) {
  if (!t.locations.empty()) {
    out << indent << "locations";
    for (const auto& l : t.locations) out << ' ' << l;
    out << '\n';
  }
  if (t.init) out << indent << "init " << *t.init << '\n';
  if (t.exit) out << indent << "exit " << *t.exit << '\n';
  for (const auto& e : t.edges) {
    switch (e.kind) {
      case ActionKind::plain:
      case ActionKind::block:
        out << indent << "edge " << e.source << ' ' << e.name << ' ' << e.target << '\n';
        break;
      case ActionKind::acquire:
      case ActionKind::release:
        out << indent << "lock-edge " << e.source << ' '
            << (e.kind == ActionKind::acquire ? "acq " : "rel ") << e.name << ' ' << e.target
            << '\n';
        break;
      case ActionKind::syncpoint:
        out << indent << "sync-edge " << e.source << ' ' << e.target << '\n';
        break;
    }
  }
}

void write_pairs(std::ostringstream& out, const char* kw, const std::vector<ActionPair>& v) {
  out << kw << " {";
  std::size_t k = 0;
  for (const auto& [a, b] : v) {
    out << ((k++ % 6 == 0) ? "\n  " : " ") << '(' << a << ',' << b << ')';
  }
  out << "\n}\n";
}

}  // namespace

Document parse_nred(std::string_view text) { return Parser(text).run(); }

Document parse_json_document(std::string_view text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    // Translate the byte offset into a line/column.
    int line = 1, col = 1;
    for (std::size_t i = 0; i + 1 < e.byte && i < text.size(); ++i) {
      if (text[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
    throw ParseError("malformed JSON", line, col);
  }
  if (!j.is_object()) throw ParseError("document must be a JSON object", 1, 1);
  if (j.value("format", std::string("nred/1")) != "nred/1")
    throw ParseError("unsupported format '" + j["format"].get<std::string>() + "'", 0, 0);
  Document d;
  JsonReader r{d};
  if (j.contains("name")) d.name = j["name"].get<std::string>();
  if (j.contains("sync_kind")) {
    auto k = j["sync_kind"].get<std::string>();
    if (k == "trivial") d.sync_kind = SyncKind::trivial;
    else if (k == "locks") d.sync_kind = SyncKind::locks;
    else if (k == "locks+syncpoints") d.sync_kind = SyncKind::locks_and_syncpoints;
    else throw ParseError("unknown sync kind '" + k + "'", 0, 0);
  }
  if (j.contains("actions")) d.actions = r.strs(j["actions"], "actions");
  if (!j.contains("template")) throw ParseError("missing 'template'", 0, 0);
  d.templ = r.templ(j["template"]);
  if (j.contains("blocks")) {
    if (!j["blocks"].is_object()) throw ParseError("'blocks' must be an object", 0, 0);
    for (const auto& [name, body] : j["blocks"].items()) d.blocks.emplace(name, r.templ(body));
  }
  if (j.contains("original")) d.original = r.templ(j["original"]);
  if (j.contains("instrumented")) d.instrumented = r.templ(j["instrumented"]);
  if (j.contains("conflicts")) d.conflicts = r.pairs(j["conflicts"]);
  if (j.contains("commutes")) d.commutes = r.pairs(j["commutes"]);
  if (j.contains("syncpoints")) d.syncpoints = r.strs(j["syncpoints"], "syncpoints");
  if (j.contains("cover")) d.cover = r.strs(j["cover"], "cover");
  return d;
}

Document parse_document(std::string_view text) {
  auto p = text.find_first_not_of(" \t\r\n");
  if (p != std::string_view::npos && text[p] == '{') return parse_json_document(text);
  return parse_nred(text);
}

std::string write_nred(const Document& d) {
  std::ostringstream out;
  if (!d.name.empty()) out << "program " << d.name << '\n';
  if (d.sync_kind) out << "sync-kind " << to_string(*d.sync_kind) << '\n';
  if (d.actions) {
    out << "actions";
    for (const auto& a : *d.actions) out << ' ' << a;
    out << '\n';
  }
  write_template_body(out, d.templ, "");
  for (const auto& [name, body] : d.blocks) {
    out << "block " << name << " {\n";
    write_template_body(out, body, "  ");
    out << "}\n";
  }
  if (d.original) {
    out << "original {\n";
    write_template_body(out, *d.original, "  ");
    out << "}\n";
  }
  if (d.conflicts) write_pairs(out, "conflicts", *d.conflicts);
  if (d.commutes) write_pairs(out, "commutes", *d.commutes);
  if (!d.syncpoints.empty()) {
    out << "syncpoint at";
    for (const auto& l : d.syncpoints) out << ' ' << l;
    out << '\n';
  }
  if (d.instrumented) {
    out << "instrumented {\n";
    write_template_body(out, *d.instrumented, "  ");
    out << "}\n";
  }
  if (!d.cover.empty()) {
    out << "cover";
    for (const auto& l : d.cover) out << ' ' << l;
    out << '\n';
  }
  return out.str();
}

std::string write_json(const Document& d) {
  json j;
  j["format"] = "nred/1";
  if (!d.name.empty()) j["name"] = d.name;
  if (d.sync_kind) j["sync_kind"] = to_string(*d.sync_kind);
  if (d.actions) j["actions"] = *d.actions;
  j["template"] = template_json(d.templ);
  if (!d.blocks.empty()) {
    json b = json::object();
    for (const auto& [name, body] : d.blocks) b[name] = template_json(body);
    j["blocks"] = std::move(b);
  }
  if (d.original) j["original"] = template_json(*d.original);
  if (d.instrumented) j["instrumented"] = template_json(*d.instrumented);
  if (d.conflicts) j["conflicts"] = pairs_json(*d.conflicts);
  if (d.commutes) j["commutes"] = pairs_json(*d.commutes);
  if (!d.syncpoints.empty()) j["syncpoints"] = d.syncpoints;
  if (!d.cover.empty()) j["cover"] = d.cover;
  return j.dump(2) + "\n";
}

Input resolve(const Document& d) {
  Input in;
  std::set<std::string> block_names;
  for (const auto& [name, body] : d.blocks) block_names.insert(name);

  ThreadTemplate top = build(d.templ, block_names, std::nullopt, std::nullopt, "program");
  std::map<std::string, ThreadTemplate> bodies;
  for (const auto& [name, raw] : d.blocks)
    bodies.emplace(name, build(raw, {}, std::nullopt, std::nullopt, ("block " + name).c_str()));

  if (!bodies.empty()) {
    AtomicFusion f{top, bodies};
    std::optional<ThreadTemplate> explicit_original;
    if (d.original) explicit_original = build(*d.original, {}, d.templ.init, d.templ.exit, "original");
    auto r = validate_fusion(f, explicit_original ? &*explicit_original : nullptr);
    if (!r.ok()) reject(d, r);
    in.program.templ = explicit_original ? *explicit_original : substitute_blocks(f);
    in.spec.fusion = std::move(f);
  } else {
    for (const auto& e : top.edges())
      if (e.action.kind == ActionKind::block)
        throw Error(ErrorCode::block_symbol_missing, "block '" + e.action.name + "' has no body");
    in.program.templ = d.original ? build(*d.original, {}, d.templ.init, d.templ.exit, "original")
                                  : top;
  }
  if (d.sync_kind) {
    in.program.sync = *d.sync_kind;
  } else {
    in.program = ParameterizedProgram::inferred(std::move(in.program.templ));
  }
  auto pr = validate_program(in.program);
  if (!pr.ok()) reject(d, pr);

  const ThreadTemplate base = in.spec.reduced_base(in.program.templ);
  if (!d.syncpoints.empty() && d.instrumented)
    throw Error(ErrorCode::validation_error, "both 'syncpoint at' and 'instrumented' given");
  if (!d.syncpoints.empty()) {
    in.spec.instrumentation = insert_syncpoints(base, d.syncpoints);
  } else if (d.instrumented) {
    SyncPointInstrumentation inst;
    inst.base = base;
    inst.instrumented = build(*d.instrumented, {}, d.templ.init, d.templ.exit, "instrumented");
    in.spec.instrumentation = std::move(inst);
  }
  if (in.spec.instrumentation) {
    auto r = validate_instrumentation(*in.spec.instrumentation);
    if (!r.ok()) reject(d, r);
  }

  // Relation over the declared alphabet (default: the program's actions).
  std::vector<std::string> alpha = d.actions ? *d.actions : in.program.templ.plain_alphabet();
  std::sort(alpha.begin(), alpha.end());
  alpha.erase(std::unique(alpha.begin(), alpha.end()), alpha.end());
  if (d.conflicts && d.commutes)
    throw Error(ErrorCode::validation_error, "both 'conflicts' and 'commutes' given");
  auto undeclared = [&](const std::vector<ActionPair>& v) {
    for (const auto& [a, b] : v)
      for (const auto* x : {&a, &b})
        if (!std::binary_search(alpha.begin(), alpha.end(), *x)) {
          auto it = d.positions.find(*x);
          std::string where;
          if (it != d.positions.end() && it->second.line > 0)
            where = std::to_string(it->second.line) + ":" + std::to_string(it->second.column) + ": ";
          throw Error(ErrorCode::validation_error,
                      where + "pair mentions undeclared action '" + *x + "'");
        }
  };
  if (d.conflicts) {
    undeclared(*d.conflicts);
    in.relation = CommutativityRelation::from_conflicts(alpha, *d.conflicts);
  } else if (d.commutes) {
    undeclared(*d.commutes);
    in.relation = CommutativityRelation::from_pairs(alpha, *d.commutes);
  } else {
    in.relation = CommutativityRelation::empty(alpha);
    in.warnings.push_back("no relation given; no pair of actions commutes");
  }
  auto rr = validate_relation(in.relation, in.program.templ);
  in.warnings.insert(in.warnings.end(), rr.warnings.begin(), rr.warnings.end());
  for (const auto& l : d.cover)
    if (!in.program.templ.find_location(l) && !top.find_location(l))
      throw Error(ErrorCode::unknown_location, "unknown location '" + l + "' in cover");
  in.cover = d.cover;
  return in;
}

Input parse_input(std::string_view text) { return resolve(parse_document(text)); }

RawTemplate raw_template(const ThreadTemplate& t) {
  RawTemplate r;
  r.init = t.location_name(t.init());
  r.exit = t.location_name(t.exit());
  // Locations without edges would otherwise be lost.
  std::vector<bool> touched(t.num_locations(), false);
  touched[t.init()] = touched[t.exit()] = true;
  for (const auto& e : t.edges()) {
    touched[e.source] = touched[e.target] = true;
    RawEdge re;
    re.source = t.location_name(e.source);
    re.target = t.location_name(e.target);
    re.kind = e.action.kind == ActionKind::block ? ActionKind::plain : e.action.kind;
    re.name = e.action.is_lock() ? e.action.lock : e.action.name;
    r.edges.push_back(std::move(re));
  }
  for (LocationId l = 0; l < t.num_locations(); ++l)
    if (!touched[l]) r.locations.push_back(t.location_name(l));
  return r;
}

Document make_document(const std::string& name, const ThreadTemplate& top,
                       const std::map<std::string, ThreadTemplate>& blocks,
                       const std::optional<CommutativityRelation>& relation,
                       const std::vector<std::string>& syncpoints,
                       const std::vector<std::string>& cover) {
  Document d;
  d.name = name;
  d.templ = raw_template(top);
  for (const auto& [b, body] : blocks) d.blocks.emplace(b, raw_template(body));
  if (relation) {
    d.actions = relation->alphabet();
    d.conflicts = relation->conflicts();
  }
  d.syncpoints = syncpoints;
  d.cover = cover;
  return d;
}

std::string to_dot(const ThreadTemplate& t, const std::string& name) {
  auto quote = [](const std::string& s) {
    std::string q = "\"";
    for (char c : s) {
      if (c == '"' || c == '\\') q += '\\';
      q += c;
    }
    return q + "\"";
  };
  std::ostringstream out;
  out << "digraph " << quote(name) << " {\n  rankdir=LR;\n";
  for (LocationId l = 0; l < t.num_locations(); ++l) {
    out << "  n" << l << " [label=" << quote(t.location_name(l));
    if (l == t.init()) out << ", style=bold";
    if (l == t.exit()) out << ", shape=doublecircle";
    out << "];\n";
  }
  for (const auto& e : t.edges()) {
    out << "  n" << e.source << " -> n" << e.target << " [label=" << quote(e.action.label());
    if (e.action.kind == ActionKind::block) out << ", style=dashed";
    out << "];\n";
  }
  out << "}\n";
  return out.str();
}

}  // namespace nred
