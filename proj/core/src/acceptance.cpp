#include "seqpi/acceptance.hpp"

#include <algorithm>
#include <array>
#include <chrono>
#include <cstdint>
#include <map>
#include <ostream>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "seqpi/corpus.hpp"
#include "seqpi/encode.hpp"
#include "seqpi/lambda.hpp"
#include "seqpi/oracle.hpp"
#include "seqpi/pi_rewrite.hpp"
#include "seqpi/pi_syntax.hpp"
#include "seqpi/pi_types.hpp"
#include "seqpi/simple_type.hpp"
#include "seqpi/x_rewrite.hpp"
#include "seqpi/x_syntax.hpp"
#include "seqpi/x_types.hpp"

namespace seqpi {

namespace {

using Clock = std::chrono::steady_clock;

long long ms_since(Clock::time_point t0) {
  return std::chrono::duration_cast<std::chrono::milliseconds>(Clock::now() - t0).count();
}

// ---------------------------------------------------------------------------
// corpus bundle

// The hand-written entries come from the in-code lists (they carry the
// metadata: normal forms, rule tags); the committed files must agree with
// them or the load fails loudly. Generated terms come from the files.
struct Corpus {
  XPtr peirce;
  std::vector<IntroCut> intro;
  std::vector<ShowcaseEntry> showcase;
  std::vector<XPtr> generated;
  std::vector<LamPtr> lams;  // basics then generated
  std::vector<XPtr> all;     // every X net above
};

void require(bool cond, const std::string& msg) {
  if (!cond) throw std::runtime_error(msg);
}

Corpus load_corpus(const std::string& dir) {
  Corpus c;
  {
    std::vector<XPtr> v = load_x_corpus(dir + "/peirce.x");
    require(v.size() == 1, "peirce.x: expected exactly one net");
    require(alpha_eq(v[0], peirce_net()), "peirce.x drifted from the built-in net");
    c.peirce = v[0];
  }
  c.intro = intro_cuts();
  {
    std::vector<XPtr> v = load_x_corpus(dir + "/intro-cuts.x");
    require(v.size() == c.intro.size(), "intro-cuts.x: wrong entry count");
    for (std::size_t i = 0; i < v.size(); i++)
      require(alpha_eq(v[i], c.intro[i].net), "intro-cuts.x drifted at entry " + std::to_string(i));
  }
  c.showcase = rule_showcase();
  {
    std::vector<XPtr> v = load_x_corpus(dir + "/rule-showcase.x", true);
    require(v.size() == c.showcase.size(), "rule-showcase.x: wrong entry count");
    for (std::size_t i = 0; i < v.size(); i++)
      require(alpha_eq(v[i], c.showcase[i].net),
              "rule-showcase.x drifted at entry " + std::to_string(i));
  }
  c.generated = load_x_corpus(dir + "/generated.x");
  require(!c.generated.empty(), "generated.x is empty");
  c.lams = lambda_basics();
  {
    std::vector<LamPtr> v = load_lam_corpus(dir + "/lambda-basics.lam");
    require(v.size() == c.lams.size(), "lambda-basics.lam: wrong entry count");
    for (std::size_t i = 0; i < v.size(); i++)
      require(lam_alpha_eq(v[i], c.lams[i]),
              "lambda-basics.lam drifted at entry " + std::to_string(i));
  }
  for (const LamPtr& m : load_lam_corpus(dir + "/lambda-generated.lam")) c.lams.push_back(m);
  c.all.push_back(c.peirce);
  for (const IntroCut& row : c.intro) c.all.push_back(row.net);
  for (const ShowcaseEntry& e : c.showcase) c.all.push_back(e.net);
  for (const XPtr& p : c.generated) c.all.push_back(p);
  return c;
}

// ---------------------------------------------------------------------------
// shared helpers

// Depth-bounded reachability under pi_step. states[0] is the start; edges
// record every discovered transition, including ones into already-known
// states, so per-step properties can be checked on all of them.
struct PiReach {
  std::vector<PiPtr> states;
  std::vector<int> depth;
  std::vector<std::pair<std::size_t, std::size_t>> edges;
};

PiReach pi_reach(const PiPtr& start, int max_depth, int budget) {
  PiReach r;
  std::map<std::string, std::size_t> index;
  r.states.push_back(start);
  r.depth.push_back(0);
  index.emplace(canon_pi(start), 0);
  for (std::size_t i = 0; i < r.states.size(); i++) {
    if (r.depth[i] >= max_depth) continue;
    for (const PiPtr& q : pi_step(r.states[i], budget)) {
      auto [it, fresh] = index.try_emplace(canon_pi(q), r.states.size());
      if (fresh) {
        r.states.push_back(q);
        r.depth.push_back(r.depth[i] + 1);
      }
      r.edges.emplace_back(i, it->second);
    }
  }
  return r;
}

struct SimWitness {
  bool found = false;
  int steps = -1;  // reduction steps to the witness; 0 = the stuck image itself
  bool capped = false;
};

// Breadth-first search from enc_from for a state that simulates enc_to.
// When enc_from has no reduction at all it is its own normal form, so the
// claim degrades to the target image simulating the source image directly.
SimWitness find_sim_witness(const PiPtr& enc_from, const PiPtr& enc_to, int max_depth,
                            int budget, int sim_depth, std::size_t cap) {
  SimWitness w;
  std::vector<PiPtr> frontier = pi_step(enc_from, budget);
  if (frontier.empty()) {
    if (bounded_simulates(enc_to, enc_from, sim_depth, budget)) {
      w.found = true;
      w.steps = 0;
    }
    return w;
  }
  std::set<std::string> seen{canon_pi(enc_from)};
  for (const PiPtr& s : frontier) seen.insert(canon_pi(s));
  for (int d = 1; d <= max_depth && !frontier.empty(); d++) {
    for (const PiPtr& s : frontier)
      if (bounded_simulates(enc_to, s, sim_depth, budget)) {
        w.found = true;
        w.steps = d;
        return w;
      }
    if (d == max_depth) break;
    std::vector<PiPtr> next;
    for (const PiPtr& s : frontier) {
      for (const PiPtr& q : pi_step(s, budget))
        if (seen.insert(canon_pi(q)).second) next.push_back(q);
      if (seen.size() > cap) {
        w.capped = true;
        return w;
      }
    }
    frontier = std::move(next);
  }
  return w;
}

// True iff cnf(whole) has a top-level parallel component alpha-equal to
// cnf(part).
bool contains_component(const PiPtr& whole, const PiPtr& part) {
  PiPtr want = cnf(part);
  std::vector<PiPtr> stack{cnf(whole)};
  while (!stack.empty()) {
    PiPtr p = stack.back();
    stack.pop_back();
    if (p->kind == PiKind::Par) {
      stack.push_back(p->left);
      stack.push_back(p->right);
      continue;
    }
    if (alpha_eq_pi(p, want)) return true;
  }
  return false;
}

// Replace every metavariable in a lambda typing by a rigid constant, in
// first-appearance order, mirroring ground_context for nets.
void ground_lam_typing(LamTypeResult& r) {
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

std::string plural(std::size_t n, const char* noun) {
  return std::to_string(n) + " " + noun + (n == 1 ? "" : "s");
}

// ---------------------------------------------------------------------------
// criteria

// 1: the Peirce witness nets a principal typing of exactly the law's shape.
void crit1(const Corpus& c, CriterionResult& r) {
  const std::string want = "|- g : ((A -> B) -> A) -> A";
  XTypeResult inf = infer_x(c.peirce);
  if (!inf.ok) {
    r.detail = "no principal typing: " + inf.error;
    return;
  }
  std::string got = print_context(inf.ctx);
  r.pass = got == want;
  r.detail = r.pass ? "principal context " + got : "got " + got + ", want " + want;
}

// 2: the five logical rules produce the pinned right-hand sides.
void crit2(const Corpus&, CriterionResult& r) {
  struct Case {
    XRule rule;
    const char* lhs;
    const char* rhs;
  };
  static const Case cases[] = {
      {XRule::Ax, "cut(<y.a> | a / x | <x.b>)", "<y.b>"},
      {XRule::ExpRen, "cut(exp(y; <y.b> ; b).a | a / x | <x.g>)", "exp(y; <y.b> ; b).g"},
      {XRule::ImpRen, "cut(<y.a> | a / x | imp(<v.g> | g / [x] / z | <z.d>))",
       "imp(<v.g> | g / [y] / z | <z.d>)"},
      {XRule::ExpImpLeft, "cut(exp(y; <y.b> ; b).a | a / x | imp(<v.g> | g / [x] / z | <z.d>))",
       "cut(<v.g> | g / y | cut(<y.b> | b / z | <z.d>))"},
      {XRule::ExpImpRight, "cut(exp(y; <y.b> ; b).a | a / x | imp(<v.g> | g / [x] / z | <z.d>))",
       "cut(cut(<v.g> | g / y | <y.b>) | b / z | <z.d>)"},
  };
  int matched = 0;
  for (const Case& cs : cases) {
    XPtr lhs = parse_xnet(cs.lhs);
    bool enabled = false;
    for (const Redex& rd : find_redexes(lhs, Strategy::Full))
      if (rd.path.empty() && rd.rule == cs.rule) enabled = true;
    if (!enabled) {
      r.detail = std::string(rule_name(cs.rule)) + " not enabled at the root";
      return;
    }
    FreshSupply supply;
    XPtr got = apply_redex(lhs, Redex{{}, cs.rule}, supply);
    if (!alpha_eq(got, parse_xnet(cs.rhs))) {
      r.detail = std::string(rule_name(cs.rule)) + " produced " + print_xnet(got);
      return;
    }
    matched++;
  }
  r.pass = matched == 5;
  r.detail = "5 of 5 pinned instances match up to alpha";
}

// 3: the fully non-introduced cut reaches two distinct normal forms.
void crit3(const Corpus&, CriterionResult& r) {
  XPtr net = parse_xnet("cut(<x.a> | g / z | <y.b>)");
  XPtr want_l = parse_xnet("<x.a>");
  XPtr want_r = parse_xnet("<y.b>");
  FreshSupply supply;
  std::set<std::string> seen;
  std::vector<XPtr> layer{net};
  bool left = false, right = false;
  for (int d = 0; d < 2; d++) {
    std::vector<XPtr> next;
    for (const XPtr& p : layer)
      for (const XPtr& q : step_all(p, supply))
        if (seen.insert(alpha_canon_xnet(q)).second) {
          next.push_back(q);
          left = left || alpha_eq(q, want_l);
          right = right || alpha_eq(q, want_r);
        }
    layer = std::move(next);
  }
  r.pass = left && right;
  r.detail = r.pass ? "reaches both <x.a> and <y.b> within two steps"
                    : std::string("missing ") + (left ? "<y.b>" : "<x.a>");
}

// 4: one-step reducts of freshly generated typed nets stay typed under the
// grounded principal context of the source. Budgeted at one minute.
void crit4(const Corpus&, CriterionResult& r) {
  Clock::time_point t0 = Clock::now();
  std::vector<XPtr> nets = generate_typed_x(1, 200, 9);
  FreshSupply supply;
  std::size_t reducts = 0;
  for (const XPtr& p : nets) {
    XTypeResult inf = infer_x(p);
    if (!inf.ok) {
      r.detail = "generator produced an untypeable net: " + print_xnet(p);
      return;
    }
    ContextPair g = ground_context(inf.ctx);
    if (!check_x(p, g)) {
      r.detail = "net does not check against its own grounded context: " + print_xnet(p);
      return;
    }
    for (const XPtr& q : step_all(p, supply)) {
      reducts++;
      if (!check_x(q, g)) {
        r.detail = "reduct loses the typing: " + print_xnet(p) + " to " + print_xnet(q);
        return;
      }
    }
  }
  long long ms = ms_since(t0);
  r.pass = ms <= 60000;
  r.detail = plural(nets.size(), "net") + ", " + plural(reducts, "reduct") +
             " all keep the source context in " + std::to_string(ms) + " ms (limit 60000)";
}

// 5: every state reachable from an encoded typed net stays interface-typed
// (depth 3, replication budget 2).
void crit5(const Corpus& c, CriterionResult& r) {
  std::size_t nets = 0, states = 0;
  for (const XPtr& p : c.all) {
    XTypeResult inf = infer_x(p);
    if (!inf.ok) continue;
    nets++;
    PiContextPair ictx = pi_context_of(ground_context(inf.ctx));
    PiReach reach = pi_reach(encode_x(p), 3, 2);
    for (const PiPtr& s : reach.states) {
      states++;
      if (!pi_check(s, ictx)) {
        r.detail = "reachable state of the image of " + print_xnet(p) + " is ill-typed";
        return;
      }
    }
  }
  r.pass = nets > 0;
  r.detail = plural(nets, "typed net") + ", " + plural(states, "reachable state") +
             " all keep the interface typing";
}

// 6: the encoding maps every typed net to a process typed on the matching
// interface context.
void crit6(const Corpus& c, CriterionResult& r) {
  std::size_t nets = 0;
  for (const XPtr& p : c.all) {
    XTypeResult inf = infer_x(p);
    if (!inf.ok) continue;
    nets++;
    if (!pi_check(encode_x(p), pi_context_of(ground_context(inf.ctx)))) {
      r.detail = "image of " + print_xnet(p) + " rejects its interface context";
      return;
    }
  }
  r.pass = nets > 0;
  r.detail = plural(nets, "typed net") + ", every image typed on the translated context";
}

// 7: every cut-elimination step on a corpus net is matched in the process
// world: some reduct of the source image simulates the target image. A
// source image with no reduction is its own normal form and must be
// simulated directly. The steps must jointly exercise all 23 rule tags.
void crit7(const Corpus& c, CriterionResult& r) {
  std::set<XRule> tags;
  std::size_t steps = 0, stuck = 0;
  int max_depth = 0;
  FreshSupply supply;
  std::string failure;
  auto run_step = [&](const XPtr& p, const Redex& rd) {
    XPtr q = apply_redex(p, rd, supply);
    SimWitness w = find_sim_witness(encode_x(p), encode_x(q), 8, 2, 3, 4000);
    if (!w.found) {
      failure = std::string(rule_name(rd.rule)) + " at " + print_path(rd.path) + " on " +
                print_xnet(p) + (w.capped ? " (search capped)" : " (no witness)");
      return false;
    }
    steps++;
    tags.insert(rd.rule);
    if (w.steps == 0) stuck++;
    if (w.steps > max_depth) max_depth = w.steps;
    return true;
  };
  for (const XPtr& p : c.all)
    for (const Redex& rd : find_redexes(p, Strategy::Full))
      if (!run_step(p, rd)) {
        r.detail = failure;
        return;
      }
  for (const ShowcaseEntry& e : c.showcase)
    for (const Redex& rd : find_admissible(e.net))
      if (!run_step(e.net, rd)) {
        r.detail = failure;
        return;
      }
  if (tags.size() != 23) {
    r.detail = "only " + std::to_string(tags.size()) + " of 23 rule tags exercised";
    return;
  }
  r.pass = true;
  r.detail = plural(steps, "step") + " witnessed (" + std::to_string(stuck) +
             " at a stuck image, witness depth <= " + std::to_string(max_depth) +
             "), all 23 rule tags covered";
}

// 8: the four capsule cut images are stuck, mutually similar to the images
// of their normal forms, agree on strong and weak barbs, and (when a side
// is kept whole by the cut) contain that normal form's image verbatim as a
// parallel component.
void crit8(const Corpus& c, CriterionResult& r) {
  for (const IntroCut& row : c.intro) {
    PiPtr F = encode_x(row.net);
    if (!pi_step(F, 2).empty()) {
      r.detail = row.label + ": image is not stuck";
      return;
    }
    std::vector<PiPtr> finals;
    finals.reserve(row.finals.size());
    for (const XPtr& f : row.finals) finals.push_back(encode_x(f));
    PiPtr T = finals[0];
    for (std::size_t i = 1; i < finals.size(); i++) T = pi_par(T, finals[i]);
    if (!bounded_simulates(T, F, 3, 2) || !bounded_simulates(F, T, 3, 2)) {
      r.detail = row.label + ": images are not mutually similar";
      return;
    }
    if (barbs(F) != barbs(T)) {
      r.detail = row.label + ": strong barbs differ";
      return;
    }
    std::set<PiName> names = free_names(F);
    for (const PiName& n : free_names(T)) names.insert(n);
    for (const PiName& n : names)
      if (weak_barb(F, n, 3, 2) != weak_barb(T, n, 3, 2)) {
        r.detail = row.label + ": weak barb on " + n + " differs";
        return;
      }
    if (row.label != "both-introduced")
      for (const PiPtr& f : finals)
        if (!contains_component(F, f)) {
          r.detail = row.label + ": normal-form image is not a component of the cut image";
          return;
        }
  }
  r.pass = true;
  r.detail = "4 cuts: stuck images, mutual simulation, matching barbs, normal forms embedded";
}

// 9: the lambda road agrees end to end: the process image types at the
// term's typing, the net image has exactly the chosen output plug free,
// and every beta step is witnessed in the process world.
void crit9(const Corpus& c, CriterionResult& r) {
  std::size_t betas = 0;
  int max_depth = 0;
  for (const LamPtr& m : c.lams) {
    LamTypeResult inf = infer_lam(m);
    if (!inf.ok) {
      r.detail = "corpus term not typeable: " + print_lam(m);
      return;
    }
    ground_lam_typing(inf);
    PiPtr E = encode_lam_to_pi(m, "a");
    PiContextPair ctx;
    ctx.gamma = inf.env;
    ctx.delta["a"] = inf.type;
    if (!pi_check(E, ctx)) {
      r.detail = "process image of " + print_lam(m) + " rejects the term's typing";
      return;
    }
    XPtr xim = encode_lam_to_x(m, "a");
    std::set<std::string> fp = free_plugs(xim);
    if (fp != std::set<std::string>{"a"} || free_sockets(xim) != lam_free_vars(m)) {
      r.detail = "net image of " + print_lam(m) + " has the wrong interface";
      return;
    }
    for (const LamPtr& n : beta_steps(m)) {
      SimWitness w = find_sim_witness(E, encode_lam_to_pi(n, "a"), 8, 2, 3, 4000);
      if (!w.found) {
        r.detail = "beta step " + print_lam(m) + " to " + print_lam(n) + " has no witness";
        return;
      }
      betas++;
      if (w.steps > max_depth) max_depth = w.steps;
    }
  }
  r.pass = true;
  r.detail = plural(c.lams.size(), "term") + " typed through both images, " +
             plural(betas, "beta step") + " witnessed (witness depth <= " +
             std::to_string(max_depth) + ")";
}

// 10: exhaustive agreement with the reference engines. Net redex search is
// compared on every net up to size 7 over two sockets and two plugs, for
// all three strategies; process stepping is compared up to congruence on
// every process up to size 6 over two names. Budgeted at two minutes.
void crit10(const Corpus&, CriterionResult& r) {
  Clock::time_point t0 = Clock::now();
  oracle::XRedexOracle orc;
  std::uint64_t x_visited = 0, x_bad = 0;
  oracle::enumerate_x(
      7,
      [&](const XPtr& p) {
        x_visited++;
        std::array<std::vector<Redex>, 3> want = orc.find_all(p);
        for (int s = 0; s < 3; s++)
          if (find_redexes(p, static_cast<Strategy>(s)) != want[s]) x_bad++;
      },
      [&](const XPtr& p) { orc.pin_subtree(p); });
  std::uint64_t x_want = oracle::count_x(7);
  std::uint64_t pi_visited = 0, pi_bad = 0;
  oracle::enumerate_pi(6, [&](const PiPtr& p) {
    pi_visited++;
    std::vector<std::string> got;
    for (const PiPtr& q : pi_step(p, 1)) got.push_back(oracle::pi_reduct_key(q));
    std::sort(got.begin(), got.end());
    got.erase(std::unique(got.begin(), got.end()), got.end());
    if (got != oracle::pi_step_keys(p, 1)) pi_bad++;
  });
  std::uint64_t pi_want = oracle::count_pi(6);
  long long ms = ms_since(t0);
  if (x_bad || pi_bad) {
    r.detail = std::to_string(x_bad) + " net and " + std::to_string(pi_bad) +
               " process disagreements with the reference engines";
    return;
  }
  if (x_visited != x_want || pi_visited != pi_want) {
    r.detail = "enumeration incomplete: " + std::to_string(x_visited) + "/" +
               std::to_string(x_want) + " nets, " + std::to_string(pi_visited) + "/" +
               std::to_string(pi_want) + " processes";
    return;
  }
  r.pass = ms <= 120000;
  r.detail = std::to_string(x_visited) + " nets x 3 strategies and " +
             std::to_string(pi_visited) + " processes agree with the reference engines in " +
             std::to_string(ms) + " ms (limit 120000)";
}

// 11: interfaces only shrink. Net steps (core and admissible) never invent
// free connectors, process steps never invent free names, and each image's
// free names are exactly the source net's free connector spellings.
void crit11(const Corpus& c, CriterionResult& r) {
  std::size_t x_steps = 0, pi_edges = 0;
  FreshSupply supply;
  for (const XPtr& p : c.all) {
    std::set<Connector> fc = free_connectors(p);
    std::vector<Redex> steps = find_redexes(p, Strategy::Full);
    for (const Redex& rd : find_admissible(p)) steps.push_back(rd);
    for (const Redex& rd : steps) {
      XPtr q = apply_redex(p, rd, supply);
      for (const Connector& k : free_connectors(q))
        if (!fc.count(k)) {
          r.detail = std::string(rule_name(rd.rule)) + " on " + print_xnet(p) +
                     " invents the connector " + k.id;
          return;
        }
      x_steps++;
    }
    std::set<PiName> want;
    for (const Connector& k : fc) want.insert(k.id);
    PiPtr image = encode_x(p);
    if (free_names(image) != want) {
      r.detail = "image of " + print_xnet(p) + " is not on the net's exact interface";
      return;
    }
    PiReach reach = pi_reach(image, 3, 2);
    std::vector<std::set<PiName>> fns;
    fns.reserve(reach.states.size());
    for (const PiPtr& s : reach.states) fns.push_back(free_names(s));
    for (const auto& [a, b] : reach.edges) {
      for (const PiName& n : fns[b])
        if (!fns[a].count(n)) {
          r.detail = "process step out of the image of " + print_xnet(p) +
                     " invents the name " + n;
          return;
        }
      pi_edges++;
    }
  }
  r.pass = true;
  r.detail = plural(x_steps, "net step") + " and " + plural(pi_edges, "process step") +
             " shrink-only, every image on its net's exact interface";
}

}  // namespace

std::vector<CriterionResult> run_acceptance(const AcceptanceOptions& opt, std::ostream& out) {
  struct Row {
    int number;
    const char* label;
    void (*fn)(const Corpus&, CriterionResult&);
  };
  static const Row rows[] = {
      {1, "peirce principal typing", crit1},
      {2, "logical rule right-hand sides", crit2},
      {3, "non-confluence witness", crit3},
      {4, "net subject reduction", crit4},
      {5, "process subject reduction", crit5},
      {6, "encoding preserves typing", crit6},
      {7, "cut elimination is simulated", crit7},
      {8, "capsule cut images", crit8},
      {9, "lambda encoding corollary", crit9},
      {10, "engine cross-checks", crit10},
      {11, "interface monotonicity", crit11},
  };
  Corpus corpus;
  std::string load_err;
  try {
    corpus = load_corpus(opt.corpus_dir);
  } catch (const std::exception& e) {
    load_err = e.what();
  }
  auto selected = [&](int n) {
    if (opt.only.empty()) return true;
    for (int k : opt.only)
      if (k == n) return true;
    return false;
  };
  std::vector<CriterionResult> results;
  for (const Row& row : rows) {
    if (!selected(row.number)) continue;
    CriterionResult res;
    res.number = row.number;
    res.label = row.label;
    Clock::time_point t0 = Clock::now();
    if (!load_err.empty()) {
      res.detail = "corpus not loaded: " + load_err;
    } else {
      try {
        row.fn(corpus, res);
      } catch (const std::exception& e) {
        res.pass = false;
        res.detail = std::string("exception: ") + e.what();
      }
    }
    res.ms = ms_since(t0);
    out << (res.pass ? "[PASS] " : "[FAIL] ") << res.number << ' ' << res.label << " ("
        << res.ms << " ms): " << res.detail << '\n';
    out.flush();
    results.push_back(std::move(res));
  }
  std::size_t passed = 0;
  for (const CriterionResult& res : results) passed += res.pass ? 1 : 0;
  out << passed << " of " << results.size() << " criteria pass\n";
  out.flush();
  return results;
}

}  // namespace seqpi
