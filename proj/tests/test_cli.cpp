#include <gtest/gtest.h>

#include <fstream>
#include <sstream>

#include "cli.hpp"
#include "nred/format.hpp"

using namespace nred;
using nred::cli::CheckRequest;

namespace {

std::string slurp(const std::string& name) {
  std::ifstream in(std::string(NRED_DATA_DIR) + "/" + name);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

cli::Outcome check(const std::string& mode, const std::string& text, bool json = false) {
  CheckRequest req;
  req.mode = mode;
  req.json = json;
  return cli::run(req, text);
}

const char* kLocked =
    "program locked\n"
    "init l0\nexit l3\n"
    "lock-edge l0 acq m l1\n"
    "edge l1 x l2\n"
    "lock-edge l2 rel m l3\n";

}  // namespace

TEST(Cli, ExitCodes) {
  EXPECT_EQ(cli::exit_code_for("sound"), 0);
  EXPECT_EQ(cli::exit_code_for("coverable"), 0);
  EXPECT_EQ(cli::exit_code_for("certified-sound"), 0);
  EXPECT_EQ(cli::exit_code_for("unsound"), 1);
  EXPECT_EQ(cli::exit_code_for("not-coverable"), 1);
  EXPECT_EQ(cli::exit_code_for("inconclusive"), 2);
  EXPECT_EQ(cli::exit_code_for("not-applicable"), 2);
  EXPECT_EQ(cli::exit_code_for("unknown"), 2);
  EXPECT_EQ(cli::exit_code_for("error"), 3);
}

TEST(Cli, DataFiles) {
  EXPECT_EQ(check("atomic", slurp("branches.nred")).exit_code, 0);
  EXPECT_EQ(check("atomic", slurp("branches_tight.nred")).exit_code, 1);
  EXPECT_EQ(check("sync", slurp("phased.nred")).exit_code, 0);
  auto o = check("sync", slurp("phased_tight.nred"));
  EXPECT_EQ(o.exit_code, 1);
  EXPECT_EQ(o.report.result, "unsound");
  EXPECT_EQ(check("natural", slurp("phased_tight.nred")).exit_code, 1);
}

TEST(Cli, MoversMode) {
  auto o = check("movers", slurp("branches.nred"));
  EXPECT_EQ(o.report.movers.at("b1"), "left");
  EXPECT_EQ(o.report.movers.at("b2"), "right");
  EXPECT_EQ(o.report.lipton, "unknown");
  EXPECT_EQ(o.exit_code, 2);
  auto b = check("movers", slurp("phased.nred"));
  EXPECT_EQ(b.report.result, "classified");
  EXPECT_EQ(b.exit_code, 0);
  EXPECT_EQ(b.report.movers.at("a"), "both");
}

TEST(Cli, JsonOutputParses) {
  auto o = check("atomic", slurp("branches_tight.nred"), true);
  auto r = report_from_json(o.output);
  EXPECT_EQ(r.result, "unsound");
  EXPECT_EQ(r.exit_code, 1);
  EXPECT_EQ(r.input_digest, fnv1a_hex(slurp("branches_tight.nred")));
  EXPECT_TRUE(r.witness.has_value());
}

TEST(Cli, WitnessOnlyOnRequest) {
  auto plain = check("atomic", slurp("branches_tight.nred"));
  CheckRequest req;
  req.mode = "atomic";
  req.witness = true;
  auto full = cli::run(req, slurp("branches_tight.nred"));
  EXPECT_GT(full.output.size(), plain.output.size());
}

TEST(Cli, InputErrorsExitThree) {
  auto o = check("atomic", "program x\ninit l0\n");
  EXPECT_EQ(o.exit_code, 3);
  EXPECT_EQ(o.report.result, "error");
  EXPECT_FALSE(o.report.errors.empty());
  CheckRequest cover;
  cover.mode = "coverability";
  EXPECT_EQ(cli::run(cover, kLocked).exit_code, 3);  // needs --threads
}

TEST(Cli, LockProgramsUnderSyncPoints) {
  // Nothing fused and nothing instrumented: trivially sound.
  EXPECT_EQ(check("natural", kLocked).exit_code, 0);
  CheckRequest strict;
  strict.mode = "sync";
  strict.strict_locks = true;
  auto s = cli::run(strict, std::string(kLocked) + "syncpoint at l1\n");
  EXPECT_EQ(s.exit_code, 3);
  auto lax = check("sync", std::string(kLocked) + "syncpoint at l1\n");
  EXPECT_EQ(lax.report.result, "not-applicable");
  EXPECT_EQ(lax.exit_code, 2);
}

TEST(Cli, OracleMode) {
  CheckRequest req;
  req.command = "oracle";
  req.mode = "atomic";
  req.bounds = Bounds{2, 2, std::nullopt};
  auto o = cli::run(req, slurp("branches_tight.nred"));
  EXPECT_EQ(o.report.result, "unsound");
  EXPECT_EQ(o.report.certificate, kCertificateBounded);
  EXPECT_EQ(o.exit_code, 1);
  req.mode = "sync";
  req.bounds = Bounds{2, 3, std::nullopt};
  EXPECT_EQ(cli::run(req, slurp("phased.nred")).exit_code, 0);
}

TEST(Cli, Coverability) {
  CheckRequest req;
  req.mode = "coverability";
  req.bounds = Bounds{2, 8, std::nullopt};
  EXPECT_EQ(cli::run(req, std::string(kLocked) + "cover l1 l3\n").report.result, "coverable");
  EXPECT_EQ(cli::run(req, std::string(kLocked) + "cover l1 l2\n").report.result,
            "not-coverable");
}

TEST(Cli, Validate) {
  CheckRequest req;
  req.command = "validate";
  req.mode = "validate";
  EXPECT_EQ(cli::run(req, slurp("phased.nred")).exit_code, 0);
}

TEST(Cli, GenSatRoundTrip) {
  cli::GenRequest g;
  g.kind = "3sat";
  g.texts = {"p cnf 2 2\n1 2 2 0\n-1 -1 -1 0\n"};
  auto out = cli::generate(g);
  ASSERT_EQ(out.exit_code, 0) << out.error;
  CheckRequest req;
  req.mode = "coverability";
  req.bounds = Bounds{2, 16, std::nullopt};
  auto o = cli::run(req, out.output);
  EXPECT_EQ(o.report.result, "coverable");

  g.texts = {"p cnf 1 2\n1 1 1 0\n-1 -1 -1 0\n"};
  g.json = true;
  out = cli::generate(g);
  ASSERT_EQ(out.exit_code, 0) << out.error;
  EXPECT_EQ(out.output.front(), '{');
  EXPECT_EQ(cli::run(req, out.output).report.result, "not-coverable");
}

TEST(Cli, GenGadgetsValidate) {
  cli::GenRequest g;
  g.texts = {std::string(kLocked)};
  g.cover = {"l1", "l3"};
  CheckRequest val;
  val.command = "validate";
  val.mode = "validate";
  for (const char* kind : {"thm1", "thm6"}) {
    g.kind = kind;
    auto out = cli::generate(g);
    ASSERT_EQ(out.exit_code, 0) << kind << " " << out.error;
    EXPECT_EQ(cli::run(val, out.output).exit_code, 0) << kind;
  }
  g.kind = "thm6";
  g.cover = {"l1"};
  EXPECT_EQ(cli::generate(g).exit_code, 3);
}

TEST(Cli, GenBoundedCollision) {
  cli::GenRequest g;
  g.kind = "b2p";
  g.texts = {slurp("phased.nred"), slurp("branches.nred")};
  auto out = cli::generate(g);
  EXPECT_EQ(out.exit_code, 3);
  EXPECT_NE(out.error.find("AlphabetCollision"), std::string::npos);
  g.texts = {slurp("phased.nred"), std::string(kLocked)};
  out = cli::generate(g);
  ASSERT_EQ(out.exit_code, 0) << out.error;
  EXPECT_NO_THROW(parse_input(out.output));
}

TEST(Cli, UnknownGenKind) {
  cli::GenRequest g;
  g.kind = "thm99";
  EXPECT_EQ(cli::generate(g).exit_code, 3);
}
