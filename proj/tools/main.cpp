#include <fstream>
#include <iostream>
#include <iterator>
#include <sstream>

#include "CLI11.hpp"
#include "cli.hpp"
#include "nred/error.hpp"
#include "nred/format.hpp"

namespace {

bool slurp(const std::string& path, std::string& out) {
  if (path == "-") {
    out.assign(std::istreambuf_iterator<char>(std::cin), {});
    return true;
  }
  std::ifstream in(path, std::ios::binary);
  if (!in) return false;
  std::ostringstream ss;
  ss << in.rdbuf();
  out = ss.str();
  return true;
}

struct Flags {
  std::string mode;
  std::string input = "-";
  std::optional<std::uint32_t> threads, max_len;
  std::optional<std::uint64_t> swap_depth;
  bool json = false, strict_locks = false, witness = false, dot = false;
};

void add_check_flags(CLI::App* app, Flags& f, bool with_mode) {
  app->add_option("input", f.input, "input file (.nred or JSON), - for stdin");
  if (with_mode) app->add_option("--mode", f.mode, "check mode");
  app->add_option("--threads", f.threads, "thread bound for bounded modes")->check(CLI::PositiveNumber);
  app->add_option("--max-len", f.max_len, "per-thread step bound for bounded modes");
  app->add_option("--swap-depth", f.swap_depth, "swap-depth bound for the covering check");
  app->add_flag("--json", f.json, "emit a JSON report");
  app->add_flag("--strict-locks", f.strict_locks, "fail on lock abstraction instead of warning");
  app->add_flag("--witness", f.witness, "print the witness");
}

int run_check(const std::string& command, const Flags& f) {
  nred::cli::CheckRequest req;
  req.command = command;
  req.mode = f.mode;
  req.input = f.input;
  req.json = f.json;
  req.strict_locks = f.strict_locks;
  req.witness = f.witness;
  if (f.threads || f.max_len || f.swap_depth) {
    nred::Bounds b;
    if (f.threads) b.max_threads = *f.threads;
    if (f.max_len) b.max_local_len = *f.max_len;
    b.max_swap_depth = f.swap_depth;
    // The bounded modes need an explicit thread bound.
    if (f.threads) req.bounds = b;
  }
  std::string text;
  if (!slurp(f.input, text)) {
    std::cerr << "nred: cannot read '" << f.input << "'\n";
    return 3;
  }
  auto out = nred::cli::run(req, text);
  std::cout << out.output;
  return out.exit_code;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"nred: soundness checks for natural reductions of parameterized programs"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(nred::version()));

  Flags check_f;
  check_f.mode = "natural";
  auto* check = app.add_subcommand("check", "decide soundness of a reduction");
  add_check_flags(check, check_f, true);
  check->get_option("--mode")->check(
      CLI::IsMember({"atomic", "sync", "natural", "movers", "oracle", "coverability"}));

  Flags oracle_f;
  oracle_f.mode = "natural";
  auto* oracle = app.add_subcommand("oracle", "bounded brute-force soundness check");
  add_check_flags(oracle, oracle_f, true);
  oracle->get_option("--mode")->check(CLI::IsMember({"atomic", "sync", "natural"}));

  Flags movers_f;
  movers_f.mode = "movers";
  auto* movers = app.add_subcommand("movers", "classify movers and apply Lipton's rule");
  add_check_flags(movers, movers_f, false);

  Flags validate_f;
  validate_f.mode = "validate";
  auto* validate = app.add_subcommand("validate", "parse and validate an input");
  validate->add_option("input", validate_f.input, "input file, - for stdin");
  validate->add_flag("--json", validate_f.json, "emit a JSON report");
  validate->add_flag("--dot", validate_f.dot, "print the original template as DOT");

  nred::cli::GenRequest gen_req;
  std::vector<std::string> gen_inputs;
  std::string dimacs;
  auto* gen = app.add_subcommand("gen", "generate reduction gadgets");
  gen->add_option("kind", gen_req.kind, "thm1 | 3sat | thm6 | b2p")
      ->required()
      ->check(CLI::IsMember({"thm1", "3sat", "thm6", "b2p"}));
  gen->add_option("inputs", gen_inputs, "input programs");
  gen->add_option("--dimacs", dimacs, "DIMACS CNF file (3sat)");
  gen->add_option("--cover", gen_req.cover, "configuration locations")->expected(1, -1);
  gen->add_flag("--json", gen_req.json, "emit the JSON input format");

  CLI11_PARSE(app, argc, argv);

  if (check->parsed()) return run_check("check", check_f);
  if (oracle->parsed()) return run_check("oracle", oracle_f);
  if (movers->parsed()) return run_check("movers", movers_f);
  if (validate->parsed()) {
    if (validate_f.dot) {
      std::string text;
      if (!slurp(validate_f.input, text)) {
        std::cerr << "nred: cannot read '" << validate_f.input << "'\n";
        return 3;
      }
      try {
        auto in = nred::parse_input(text);
        std::cout << nred::to_dot(in.program.templ);
        return 0;
      } catch (const nred::Error& e) {
        std::cerr << "nred: " << e.what() << "\n";
        return 3;
      }
    }
    return run_check("validate", validate_f);
  }
  if (gen->parsed()) {
    if (!dimacs.empty()) gen_inputs.insert(gen_inputs.begin(), dimacs);
    for (const auto& path : gen_inputs) {
      std::string text;
      if (!slurp(path, text)) {
        std::cerr << "nred: cannot read '" << path << "'\n";
        return 3;
      }
      gen_req.texts.push_back(std::move(text));
    }
    auto out = nred::cli::generate(gen_req);
    if (out.exit_code != 0) {
      std::cerr << "nred: " << out.error << "\n";
      return out.exit_code;
    }
    std::cout << out.output;
    return 0;
  }
  return 3;
}
