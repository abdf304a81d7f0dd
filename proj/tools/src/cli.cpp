#include "seqpi/cli.hpp"

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "seqpi/acceptance.hpp"
#include "seqpi/corpus.hpp"
#include "seqpi/encode.hpp"
#include "seqpi/lambda.hpp"
#include "seqpi/pi_rewrite.hpp"
#include "seqpi/pi_syntax.hpp"
#include "seqpi/pi_types.hpp"
#include "seqpi/simple_type.hpp"
#include "seqpi/x_rewrite.hpp"
#include "seqpi/x_syntax.hpp"
#include "seqpi/x_types.hpp"

namespace seqpi {

namespace {

// Term lines from a corpus-style file, or from the tool's input when the
// argument is "-". Blank lines and // comments are skipped either way.
std::vector<std::string> input_lines(const std::string& file, std::istream& in) {
  if (file != "-") return read_corpus_lines(file);
  std::vector<std::string> out;
  std::string line;
  while (std::getline(in, line)) {
    std::size_t start = line.find_first_not_of(" \t\r");
    if (start == std::string::npos) continue;
    if (line.compare(start, 2, "//") == 0) continue;
    std::size_t end = line.find_last_not_of(" \t\r");
    out.push_back(line.substr(start, end - start + 1));
  }
  return out;
}

std::string read_whole_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// Metavariables renamed to A, B, C, ... for display, mirroring the net
// context printer.
void display_lam_typing(LamTypeResult& r) {
  std::vector<std::string> order;
  for (const auto& [v, t] : r.env) collect_metavars(t, order);
  collect_metavars(r.type, order);
  Substitution s;
  std::set<std::string> seen;
  std::size_t k = 0;
  for (const std::string& m : order)
    if (seen.insert(m).second) s.map[m] = type_leaf(display_var_name(k++));
  for (auto& [v, t] : r.env) t = s.apply(t);
  r.type = s.apply(r.type);
}

// ---------------------------------------------------------------------------
// subcommands

int do_check(const std::string& calc, const std::string& file, std::istream& in,
             std::ostream& out, std::ostream& err) {
  std::vector<std::string> lines = input_lines(file, in);
  int bad = 0;
  for (std::size_t i = 0; i < lines.size(); i++) {
    try {
      if (calc == "x") {
        out << "ok: " << print_xnet(parse_xnet(lines[i], true)) << "\n";
      } else if (calc == "pi") {
        PiPtr p = parse_pi(lines[i]);
        if (!well_formed(p)) throw std::runtime_error("ill-formed: pair in subject position");
        out << "ok: " << print_pi(p) << "\n";
      } else {
        out << "ok: " << print_lam(parse_lam(lines[i])) << "\n";
      }
    } catch (const std::exception& e) {
      err << "term " << i + 1 << ": " << e.what() << "\n";
      bad++;
    }
  }
  out << lines.size() - bad << " of " << lines.size() << " terms parse\n";
  return bad == 0 ? 0 : 1;
}

int do_typecheck(const std::string& calc, const std::string& file, const std::string& ctx_file,
                 std::istream& in, std::ostream& out, std::ostream& err) {
  std::vector<std::string> lines = input_lines(file, in);
  int bad = 0;
  if (calc == "x") {
    ContextPair given;
    bool have_ctx = !ctx_file.empty();
    if (have_ctx) given = parse_x_context(read_whole_file(ctx_file));
    for (std::size_t i = 0; i < lines.size(); i++) {
      XPtr p = parse_xnet(lines[i], true);
      XTypeResult inf = infer_x(p);
      if (!inf.ok) {
        out << "net " << i + 1 << ": type error: " << inf.error << "\n";
        bad++;
        continue;
      }
      out << "net " << i + 1 << ": " << print_context(inf.ctx);
      if (have_ctx) {
        bool ok = check_x(p, given);
        out << (ok ? " / checks against the given context" : " / given context rejected");
        if (!ok) bad++;
      }
      out << "\n";
    }
  } else if (calc == "lam") {
    for (std::size_t i = 0; i < lines.size(); i++) {
      LamPtr m = parse_lam(lines[i]);
      LamTypeResult inf = infer_lam(m);
      if (!inf.ok) {
        out << "term " << i + 1 << ": type error: " << inf.error << "\n";
        bad++;
        continue;
      }
      display_lam_typing(inf);
      out << "term " << i + 1 << ": ";
      bool first = true;
      for (const auto& [v, t] : inf.env) {
        out << (first ? "" : ", ") << v << " : " << print_type(t);
        first = false;
      }
      out << (first ? "|- " : " |- ") << print_type(inf.type) << "\n";
    }
  } else {
    if (ctx_file.empty()) {
      err << "typecheck --calc pi needs --ctx (process typing is checking, not inference)\n";
      return 2;
    }
    PiContextPair ctx = parse_pi_context(read_whole_file(ctx_file));
    for (std::size_t i = 0; i < lines.size(); i++) {
      PiPtr p = parse_pi(lines[i]);
      auto why = pi_check_explain(p, ctx);
      if (why) {
        out << "process " << i + 1 << ": " << *why << "\n";
        bad++;
      } else {
        out << "process " << i + 1 << ": typed\n";
      }
    }
  }
  return bad == 0 ? 0 : 1;
}

int reduce_x_interactive(const XPtr& start, Strategy strat, std::size_t max_steps,
                         std::istream& in, std::ostream& out) {
  XPtr cur = start;
  FreshSupply supply;
  out << print_xnet(cur) << "\n";
  for (std::size_t step = 0; step < max_steps; step++) {
    std::vector<Redex> rs = find_redexes(cur, strat);
    std::size_t core = rs.size();
    for (const Redex& r : find_admissible(cur)) rs.push_back(r);
    if (rs.empty()) {
      out << "-- normal form\n";
      return 0;
    }
    for (std::size_t k = 0; k < rs.size(); k++)
      out << "  [" << k << "] " << print_path(rs[k].path) << " " << rule_name(rs[k].rule)
          << (k >= core ? " (admissible)" : "") << "\n";
    out << "choose> " << std::flush;
    std::string line;
    if (!std::getline(in, line) || line.empty() || line == "q") {
      out << "-- stopped\n";
      return 0;
    }
    std::size_t idx = static_cast<std::size_t>(std::atol(line.c_str()));
    if (idx >= rs.size()) {
      out << "-- no such redex\n";
      continue;
    }
    cur = apply_redex(cur, rs[idx], supply);
    out << print_path(rs[idx].path) << " " << rule_name(rs[idx].rule) << " => "
        << print_xnet(cur) << "\n";
  }
  out << "-- step budget exceeded\n";
  return 0;
}

int do_reduce(const std::string& calc, const std::string& file, const std::string& strategy,
              std::size_t max_steps, int repl_budget, bool interactive, std::istream& in,
              std::ostream& out, std::ostream& err) {
  std::vector<std::string> lines = input_lines(file, in);
  if (calc == "x") {
    Strategy strat = strategy == "cbn"   ? Strategy::CBN
                     : strategy == "cbv" ? Strategy::CBV
                                         : Strategy::Full;
    for (std::size_t i = 0; i < lines.size(); i++) {
      XPtr p = parse_xnet(lines[i], true);
      if (interactive) {
        int rc = reduce_x_interactive(p, strat, max_steps, in, out);
        if (rc != 0) return rc;
        continue;
      }
      FreshSupply supply;
      Trace t = reduce(p, strat, max_steps, supply);
      out << serialize_trace(t);
      if (i + 1 < lines.size()) out << "\n";
    }
    return 0;
  }
  if (interactive) {
    err << "--interactive applies to --calc x only\n";
    return 2;
  }
  for (std::size_t i = 0; i < lines.size(); i++) {
    PiPtr cur = parse_pi(lines[i]);
    out << "STEP 0: " << print_pi(cur) << "\n";
    std::size_t k = 0;
    while (k < max_steps) {
      std::vector<PiStepOut> steps = pi_step_described(cur, repl_budget);
      if (steps.empty()) {
        out << "-- stuck after " << k << " step" << (k == 1 ? "" : "s") << "\n";
        break;
      }
      cur = steps[0].result;
      k++;
      out << "STEP " << k << " [" << steps[0].what << "]: " << print_pi(cur) << "\n";
    }
    if (k == max_steps) out << "-- step budget exceeded\n";
    if (i + 1 < lines.size()) out << "\n";
  }
  return 0;
}

int do_encode(const std::string& from, const std::string& to, const std::string& plug,
              const std::string& file, std::istream& in, std::ostream& out, std::ostream& err) {
  std::vector<std::string> lines = input_lines(file, in);
  if (from == "x") {
    if (to != "pi") {
      err << "--from x supports --to pi only\n";
      return 2;
    }
    for (const std::string& line : lines) out << print_pi(encode_x(parse_xnet(line))) << "\n";
    return 0;
  }
  for (const std::string& line : lines) {
    LamPtr m = parse_lam(line);
    if (to == "x")
      out << print_xnet(encode_lam_to_x(m, plug)) << "\n";
    else
      out << print_pi(encode_lam_to_pi(m, plug)) << "\n";
  }
  return 0;
}

int do_simulate(const std::string& spec_file, const std::string& cand_file, int depth,
                int budget, bool step, std::istream& in, std::ostream& out, std::ostream& err) {
  std::vector<std::string> a = input_lines(spec_file, in);
  std::vector<std::string> b = input_lines(cand_file, in);
  if (a.size() != 1 || b.size() != 1) {
    err << "simulate expects exactly one process per file\n";
    return 2;
  }
  PiPtr spec = parse_pi(a[0]);
  PiPtr cand = parse_pi(b[0]);
  if (step) {
    // breadth-first states of the specification side, the moves the
    // candidate has to answer
    std::vector<PiPtr> layer{cnf(spec)};
    std::set<std::string> seen{canon_pi(layer[0])};
    std::size_t k = 0;
    out << "STEP " << k << ": " << print_pi(layer[0]) << "\n";
    for (int d = 1; d <= depth && !layer.empty(); d++) {
      std::vector<PiPtr> next;
      for (const PiPtr& s : layer)
        for (const PiPtr& q : pi_step(s, budget))
          if (seen.insert(canon_pi(q)).second) {
            k++;
            out << "STEP " << k << ": " << print_pi(q) << "\n";
            next.push_back(q);
          }
      layer = std::move(next);
    }
  }
  bool yes = bounded_simulates(spec, cand, depth, budget);
  out << "SIMULATES: " << (yes ? "yes" : "no") << " (depth=" << depth << ", budget=" << budget
      << ")\n";
  return yes ? 0 : 1;
}

int do_corpus_run(const std::string& dir, const std::vector<int>& only, bool regen,
                  std::ostream& out) {
  if (regen) {
    std::uint32_t x_seed = 20260816u, lam_seed = 20260817u;
    if (const char* env = std::getenv("SEQPI_SEED")) {
      x_seed = static_cast<std::uint32_t>(std::strtoul(env, nullptr, 10));
      lam_seed = x_seed + 1;
    }
    std::filesystem::create_directories(dir);
    write_bundled_corpus(dir, x_seed, lam_seed);
    out << "corpus written to " << dir << " (seeds " << x_seed << ", " << lam_seed << ")\n";
    return 0;
  }
  AcceptanceOptions opt;
  opt.corpus_dir = dir;
  opt.only = only;
  auto results = run_acceptance(opt, out);
  for (const CriterionResult& r : results)
    if (!r.pass) return 1;
  return 0;
}

}  // namespace

int cli_run(const std::vector<std::string>& args, std::istream& in, std::ostream& out,
            std::ostream& err) {
  CLI::App app{"workbench for sequent term nets, processes with pairing, and the encodings "
               "between them"};
  app.name("seqpi");
  app.require_subcommand(1);

  std::string calc = "x", file = "-", ctx_file;
  CLI::App* check = app.add_subcommand("check", "parse terms and report the canonical form");
  check->add_option("--calc", calc, "term calculus: x, pi or lam")
      ->check(CLI::IsMember({"x", "pi", "lam"}));
  check->add_option("file", file, "corpus-style file, or - for the tool input");

  CLI::App* typecheck =
      app.add_subcommand("typecheck", "infer principal typings (x, lam) or check against a "
                                      "context (pi, or x with --ctx)");
  typecheck->add_option("--calc", calc, "term calculus: x, pi or lam")
      ->check(CLI::IsMember({"x", "pi", "lam"}));
  typecheck->add_option("--ctx", ctx_file, "context file: 'sock x : T' / 'plug a : T' lines "
                                           "for x, 'in n : T' / 'out n : T' for pi");
  typecheck->add_option("file", file, "corpus-style file, or - for the tool input");

  std::string strategy = "full";
  std::size_t max_steps = 64;
  int repl_budget = 2;
  bool interactive = false;
  CLI::App* reduce = app.add_subcommand("reduce", "run the rewriter and print the trace");
  reduce->add_option("--calc", calc, "term calculus: x or pi")
      ->check(CLI::IsMember({"x", "pi"}));
  reduce->add_option("--strategy", strategy, "x only: full, cbn or cbv (first enabled redex)")
      ->check(CLI::IsMember({"full", "cbn", "cbv"}));
  reduce->add_option("--max-steps", max_steps, "step budget per term (default 64)");
  reduce->add_option("--repl-budget", repl_budget,
                     "pi only: replication copies per step (default 2)");
  reduce->add_flag("--interactive", interactive, "x only: pick each redex by hand");
  reduce->add_option("file", file, "corpus-style file, or - for the tool input");

  std::string from = "lam", to = "pi", plug = "a";
  CLI::App* encode = app.add_subcommand("encode", "translate terms between the calculi");
  encode->add_option("--from", from, "source calculus: x or lam")
      ->check(CLI::IsMember({"x", "lam"}));
  encode->add_option("--to", to, "target calculus: x or pi")
      ->check(CLI::IsMember({"x", "pi"}));
  encode->add_option("--plug", plug, "output plug for lambda images (default a)");
  encode->add_option("file", file, "corpus-style file, or - for the tool input");

  std::string spec_file, cand_file;
  int sim_depth = 3;
  int sim_budget = 2;
  bool sim_step = false;
  CLI::App* simulate = app.add_subcommand(
      "simulate", "check that the second process simulates the first (depth-bounded barbed "
                  "simulation)");
  simulate->add_option("spec", spec_file, "process whose behaviour must be matched")
      ->required();
  simulate->add_option("candidate", cand_file, "process that has to match it")->required();
  simulate->add_option("--depth", sim_depth, "matching depth (default 3)");
  simulate->add_option("--budget", sim_budget, "replication copies per step (default 2)");
  simulate->add_flag("--step", sim_step, "also print the spec's reachable states");

  std::string corpus_dir = "corpus";
  std::vector<int> only;
  bool regen = false;
  CLI::App* corpus_run =
      app.add_subcommand("corpus-run", "run the acceptance criteria over the bundled corpus");
  corpus_run->add_option("--corpus", corpus_dir, "corpus directory (default corpus)");
  corpus_run->add_option("--only", only, "comma-separated criterion numbers")->delimiter(',');
  corpus_run->add_flag("--regen", regen,
                       "rewrite the generated corpus files and exit (SEQPI_SEED overrides "
                       "the default seeds)");

  try {
    std::vector<std::string> rev(args.rbegin(), args.rend());
    app.parse(rev);
  } catch (const CLI::CallForHelp& e) {
    app.exit(e, out, err);
    return 0;
  } catch (const CLI::CallForAllHelp& e) {
    app.exit(e, out, err);
    return 0;
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return 2;
  }

  try {
    if (check->parsed()) return do_check(calc, file, in, out, err);
    if (typecheck->parsed()) return do_typecheck(calc, file, ctx_file, in, out, err);
    if (reduce->parsed())
      return do_reduce(calc, file, strategy, max_steps, repl_budget, interactive, in, out, err);
    if (encode->parsed()) return do_encode(from, to, plug, file, in, out, err);
    if (simulate->parsed())
      return do_simulate(spec_file, cand_file, sim_depth, sim_budget, sim_step, in, out, err);
    if (corpus_run->parsed()) return do_corpus_run(corpus_dir, only, regen, out);
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }
  err << "no subcommand\n";
  return 2;
}

}  // namespace seqpi
