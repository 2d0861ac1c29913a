#include "cli.hpp"

#include <chrono>

#include "nred/decision.hpp"
#include "nred/error.hpp"
#include "nred/format.hpp"
#include "nred/gadgets.hpp"
#include "nred/movers.hpp"
#include "nred/oracle.hpp"

namespace nred::cli {

int exit_code_for(const std::string& result) {
  if (result == "sound" || result == "coverable" || result == "valid" ||
      result == "certified-sound" || result == "classified")
    return 0;
  if (result == "unsound" || result == "not-coverable") return 1;
  if (result == "error") return 3;
  return 2;
}

namespace {

void absorb(Report& r, const Verdict& v) {
  r.result = to_string(v.result);
  r.certificate = v.certificate;
  r.bounds = v.bounds;
  r.conditions = v.checked_conditions;
  r.warnings.insert(r.warnings.end(), v.warnings.begin(), v.warnings.end());
  r.witness = v.witness;
  // An unsound verdict about the lock-abstracted program says nothing about
  // the program itself.
  if (v.result == nred::Outcome::unsound && v.certificate == kCertificateAbstract) {
    r.result = "inconclusive";
    r.warnings.push_back("unsound only for the program with lock and sync-point edges abstracted");
  }
}

const Bounds& need_bounds(const CheckRequest& req) {
  if (!req.bounds)
    throw Error(ErrorCode::inconsistent_inputs, "mode '" + req.mode + "' requires --threads");
  return *req.bounds;
}

CommutativityRelation relation_for_base(const Input& in) {
  return in.spec.fusion ? lift_commutativity(in.relation, *in.spec.fusion) : in.relation;
}

void dispatch(const CheckRequest& req, const Input& in, Report& r) {
  const DecisionOptions opts{req.strict_locks};
  const auto& t = in.program.templ;
  if (req.command == "validate") {
    r.result = "valid";
    return;
  }
  if (req.command == "movers" || req.mode == "movers") {
    r.mode = "movers";
    auto cls = classify_movers(in.relation.alphabet(), in.relation, &t);
    for (const auto& [a, m] : cls.classes) r.movers[a] = to_string(m);
    r.warnings.insert(r.warnings.end(), cls.warnings.begin(), cls.warnings.end());
    r.result = "classified";
    if (in.spec.fusion) {
      auto lr = lipton_check(*in.spec.fusion, in.relation);
      r.lipton = to_string(lr.result);
      r.result = lr.result == LiptonResult::certified_sound ? "certified-sound" : "unknown";
      if (lr.result == LiptonResult::unknown) {
        std::string trace;
        for (const auto& a : lr.counterexample) trace += (trace.empty() ? "" : " ") + a;
        r.conditions.push_back({"lipton", nred::Outcome::inconclusive,
                                "block " + lr.failing_block + " has body trace '" + trace +
                                    "' outside R*ΣL*"});
      }
    }
    return;
  }
  if (req.mode == "coverability") {
    const auto& b = need_bounds(req);
    if (in.cover.empty()) throw Error(ErrorCode::inconsistent_inputs, "input has no 'cover' line");
    auto res = bounded_coverability(in.program, configuration(t, in.cover), b);
    r.result = res.coverable ? "coverable" : "not-coverable";
    r.certificate = kCertificateBounded;
    r.bounds = b;
    r.trace = res.witness;
    return;
  }
  if (req.command == "oracle" || req.mode == "oracle") {
    const auto& b = need_bounds(req);
    std::string sub = req.mode == "oracle" ? "natural" : req.mode;
    r.mode = "oracle-" + sub;
    if (sub == "atomic") {
      if (!in.spec.fusion) throw Error(ErrorCode::inconsistent_inputs, "input has no block");
      absorb(r, oracle_check_atomic(t, *in.spec.fusion, in.relation, b));
    } else if (sub == "sync") {
      if (!in.spec.instrumentation)
        throw Error(ErrorCode::inconsistent_inputs, "input has no sync-points");
      absorb(r, oracle_check_sync(*in.spec.instrumentation, relation_for_base(in), b));
    } else if (sub == "natural") {
      absorb(r, oracle_check_natural(t, in.spec, in.relation, b));
    } else {
      throw Error(ErrorCode::inconsistent_inputs, "unknown oracle mode '" + sub + "'");
    }
    return;
  }
  if (req.mode == "atomic") {
    if (!in.spec.fusion) throw Error(ErrorCode::inconsistent_inputs, "input has no block");
    absorb(r, check_atomic_fusion(t, *in.spec.fusion, in.relation, opts));
  } else if (req.mode == "sync") {
    if (!in.spec.instrumentation)
      throw Error(ErrorCode::inconsistent_inputs, "input has no sync-points");
    absorb(r, check_sync_instrumentation(*in.spec.instrumentation, relation_for_base(in), opts));
  } else if (req.mode == "natural") {
    absorb(r, check_natural_reduction(t, in.spec, in.relation, opts));
  } else {
    throw Error(ErrorCode::inconsistent_inputs, "unknown mode '" + req.mode + "'");
  }
}

std::string render(const Report& r, const CheckRequest& req) {
  if (req.json) return to_json(r);
  if (req.witness) return to_text(r);
  Report brief = r;
  brief.witness.reset();
  brief.trace.reset();
  return to_text(brief);
}

}  // namespace

Outcome run(const CheckRequest& req, const std::string& text) {
  const auto start = std::chrono::steady_clock::now();
  Report r;
  r.command = req.command;
  r.mode = req.command == "validate" ? "validate" : req.mode;
  r.input = req.input;
  r.input_digest = fnv1a_hex(text);
  r.tool_version = version();
  try {
    Input in = parse_input(text);
    r.warnings = in.warnings;
    dispatch(req, in, r);
  } catch (const Error& e) {
    r.result = "error";
    r.errors.push_back(std::string(to_string(e.code())) + ": " + e.what());
  }
  r.exit_code = exit_code_for(r.result);
  r.wall_time_ms =
      std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  Outcome out;
  out.exit_code = r.exit_code;
  out.output = render(r, req);
  out.report = std::move(r);
  return out;
}

GenOutcome generate(const GenRequest& req) {
  GenOutcome out;
  try {
    Document d;
    auto need = [&](std::size_t n) {
      if (req.texts.size() < n)
        throw Error(ErrorCode::inconsistent_inputs, "gen " + req.kind + " needs an input");
    };
    auto cover_of = [&](const Input& in) {
      auto c = req.cover.empty() ? in.cover : req.cover;
      if (c.empty()) throw Error(ErrorCode::inconsistent_inputs, "no configuration (use --cover)");
      return c;
    };
    if (req.kind == "3sat") {
      need(1);
      auto inst = sat_to_coverability(parse_dimacs(req.texts[0]));
      d = make_document("sat_gadget", inst.program.templ, {}, std::nullopt, {},
                        inst.configuration);
      d.sync_kind = inst.program.sync;
      d.commutes.emplace();
    } else if (req.kind == "thm1") {
      need(1);
      auto in = parse_input(req.texts[0]);
      auto g = coverability_to_fusion(in.program, cover_of(in));
      d = make_document("fusion_gadget", g.fusion.outer, g.fusion.blocks, g.relation);
      d.sync_kind = g.program.sync;
    } else if (req.kind == "thm6") {
      need(1);
      auto in = parse_input(req.texts[0]);
      auto g = coverability_to_syncpoint(in.program, cover_of(in));
      d = make_document("syncpoint_gadget", g.program.templ, {}, std::nullopt,
                        *g.instrumentation.insertion_locations);
      d.commutes.emplace();
    } else if (req.kind == "b2p") {
      need(1);
      std::vector<ThreadTemplate> ts;
      for (const auto& text : req.texts) ts.push_back(parse_input(text).program.templ);
      auto t = bounded_to_parameterized(ts);
      d = make_document("bounded", t, {}, std::nullopt);
      d.commutes.emplace();
    } else {
      throw Error(ErrorCode::inconsistent_inputs, "unknown generator '" + req.kind + "'");
    }
    out.output = req.json ? write_json(d) : write_nred(d);
  } catch (const Error& e) {
    out.error = std::string(to_string(e.code())) + ": " + e.what();
    out.exit_code = 3;
  }
  return out;
}

}  // namespace nred::cli
