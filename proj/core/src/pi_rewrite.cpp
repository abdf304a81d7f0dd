#include "seqpi/pi_rewrite.hpp"

#include <algorithm>
#include <map>
#include <memory>

namespace seqpi {

namespace {

// One parallel component of the flattened process, tagged with the chain
// of replication copies it lives in (empty for components of the original
// term). Including a copied atom in a result means including that copy's
// whole component set, so the chain records every ancestor copy id.
struct EAtom {
  PiPtr proc;
  std::vector<int> chain;
};

struct EBinder {
  PiName name;
  std::vector<int> chain;
};

struct Engine {
  int budget;
  FreshSupply supply;
  std::set<PiName> used;
  std::vector<EAtom> atoms;
  std::vector<EBinder> binders;
  int next_copy = 0;

  void collect(const PiPtr& p, const std::vector<int>& chain) {
    switch (p->kind) {
      case PiKind::Nil:
        return;
      case PiKind::Par:
        collect(p->left, chain);
        collect(p->right, chain);
        return;
      case PiKind::Res:
        binders.push_back({p->bind1, chain});
        collect(p->left, chain);
        return;
      default:
        atoms.push_back({p, chain});
        return;
    }
  }

  void build(const PiPtr& root) {
    // The soup puts every binder in one flat scope, so copy binders must
    // avoid every spelling in the whole term, not just the copied body.
    all_names(root, used);
    collect(root, {});
    // Materialize copies; copies of replications found inside copies are
    // themselves unfolded as the scan reaches them.
    for (std::size_t i = 0; i < atoms.size(); i++) {
      if (atoms[i].proc->kind != PiKind::Repl) continue;
      for (int k = 0; k < budget; k++) {
        std::vector<int> chain = atoms[i].chain;
        chain.push_back(next_copy++);
        PiPtr copy = refresh_pi(atoms[i].proc->left, supply, used);
        collect(copy, chain);
      }
    }
  }

  static bool chain_within(const std::vector<int>& chain, const std::set<int>& required) {
    for (int id : chain)
      if (!required.count(id)) return false;
    return true;
  }

  // Rebuild the process: all original components, the component sets of
  // every required copy, minus the consumed atoms, plus the new ones.
  PiPtr rebuild(const std::set<std::size_t>& consumed, const std::set<int>& required,
                const std::vector<PiPtr>& added) const {
    std::vector<PiPtr> comps;
    for (std::size_t i = 0; i < atoms.size(); i++) {
      if (consumed.count(i)) continue;
      if (!chain_within(atoms[i].chain, required)) continue;
      comps.push_back(atoms[i].proc);
    }
    comps.insert(comps.end(), added.begin(), added.end());
    PiPtr body = pi_nil();
    if (!comps.empty()) {
      body = comps[0];
      for (std::size_t i = 1; i < comps.size(); i++) body = pi_par(body, comps[i]);
    }
    for (auto it = binders.rbegin(); it != binders.rend(); ++it) {
      if (!chain_within(it->chain, required)) continue;
      body = pi_res(it->name, body);
    }
    return body;
  }

  static std::set<int> closure(const EAtom& a, const EAtom& b) {
    std::set<int> r(a.chain.begin(), a.chain.end());
    r.insert(b.chain.begin(), b.chain.end());
    return r;
  }
};

void run_steps(const PiPtr& p, int budget, std::vector<PiStepOut>& out);

void engine_steps(const PiPtr& p, int budget, std::vector<PiStepOut>& results) {
  Engine eng;
  eng.budget = budget;
  eng.build(p);

  // communication; an output carrying a nested pair is an ill-formed-stuck
  // marker left behind by substitution and never fires
  auto flat = [](const DataPtr& d) {
    return d->is_name() || (d->first->is_name() && d->second->is_name());
  };
  for (std::size_t i = 0; i < eng.atoms.size(); i++) {
    const EAtom& send = eng.atoms[i];
    if (send.proc->kind != PiKind::Out || !send.proc->subj->is_name()) continue;
    if (!flat(send.proc->payload)) continue;
    for (std::size_t j = 0; j < eng.atoms.size(); j++) {
      if (i == j) continue;
      const EAtom& recv = eng.atoms[j];
      if (recv.proc->kind != PiKind::In || !recv.proc->subj->is_name()) continue;
      if (recv.proc->subj->name != send.proc->subj->name) continue;
      PiPtr residue = subst_data(recv.proc->left, recv.proc->bind1, send.proc->payload);
      PiPtr next = eng.rebuild({i, j}, Engine::closure(send, recv), {residue});
      results.push_back({"sync " + send.proc->subj->name, next});
    }
  }

  // nesting: steps inside an input body, the prefix kept
  for (std::size_t i = 0; i < eng.atoms.size(); i++) {
    const EAtom& a = eng.atoms[i];
    if (a.proc->kind != PiKind::In || !a.proc->subj->is_name()) continue;
    std::vector<PiStepOut> inner;
    run_steps(a.proc->left, budget, inner);
    std::set<int> required(a.chain.begin(), a.chain.end());
    for (const PiStepOut& st : inner) {
      PiPtr wrapped = pi_in(a.proc->subj, a.proc->bind1, st.result);
      PiPtr next = eng.rebuild({i}, required, {wrapped});
      results.push_back({"under " + a.proc->subj->name + ": " + st.what, next});
    }
  }
}

void run_steps(const PiPtr& p, int budget, std::vector<PiStepOut>& out) {
  // cnf first: eliminates literal-pair destructors and dead structure so
  // the congruence-expanded soup exposes every redex.
  std::vector<PiStepOut> raw;
  engine_steps(cnf(p), budget, raw);
  std::set<std::string> seen;
  for (PiStepOut& st : raw) {
    PiPtr c = cnf(st.result);
    if (seen.insert(canon_pi(c)).second) out.push_back({std::move(st.what), c});
  }
}

}  // namespace

std::vector<PiStepOut> pi_step_described(const PiPtr& p, int repl_budget) {
  std::vector<PiStepOut> out;
  run_steps(p, repl_budget, out);
  return out;
}

std::vector<PiPtr> pi_step(const PiPtr& p, int repl_budget) {
  std::vector<PiPtr> out;
  for (PiStepOut& st : pi_step_described(p, repl_budget)) out.push_back(st.result);
  return out;
}

namespace {

void barbs_rec(const PiPtr& p, std::vector<PiName>& bound, std::set<PiName>& out) {
  switch (p->kind) {
    case PiKind::Nil:
    case PiKind::In:
    case PiKind::Let:
      return;
    case PiKind::Par:
      barbs_rec(p->left, bound, out);
      barbs_rec(p->right, bound, out);
      return;
    case PiKind::Repl:
      barbs_rec(p->left, bound, out);
      return;
    case PiKind::Res:
      bound.push_back(p->bind1);
      barbs_rec(p->left, bound, out);
      bound.pop_back();
      return;
    case PiKind::Out:
      if (p->subj->is_name() &&
          std::find(bound.begin(), bound.end(), p->subj->name) == bound.end())
        out.insert(p->subj->name);
      return;
  }
}

}  // namespace

std::set<PiName> barbs(const PiPtr& p) {
  std::set<PiName> out;
  std::vector<PiName> bound;
  barbs_rec(cnf(p), bound, out);
  return out;
}

bool weak_barb(const PiPtr& p, const PiName& n, int depth, int repl_budget) {
  PiPtr start = cnf(p);
  if (barbs(start).count(n)) return true;
  std::set<std::string> visited{canon_pi(start)};
  std::vector<PiPtr> frontier{start};
  for (int d = 0; d < depth; d++) {
    std::vector<PiPtr> next;
    for (const PiPtr& s : frontier) {
      for (const PiPtr& t : pi_step(s, repl_budget)) {
        if (!visited.insert(canon_pi(t)).second) continue;
        if (barbs(t).count(n)) return true;
        next.push_back(t);
      }
    }
    if (next.empty()) return false;
    frontier = std::move(next);
  }
  return false;
}

namespace {

struct SimCtx {
  int budget;
  std::map<std::string, bool> memo;
  std::map<std::string, std::vector<PiPtr>> reach_memo;

  // States reachable in 0..depth steps, nearest first.
  const std::vector<PiPtr>& reach(const PiPtr& q, const std::string& qkey, int depth) {
    std::string key = qkey + "\x01" + std::to_string(depth);
    auto it = reach_memo.find(key);
    if (it != reach_memo.end()) return it->second;
    std::vector<PiPtr> states{q};
    std::set<std::string> visited{qkey};
    std::size_t level_begin = 0;
    for (int d = 0; d < depth; d++) {
      std::size_t level_end = states.size();
      for (std::size_t i = level_begin; i < level_end; i++) {
        for (const PiPtr& t : pi_step(states[i], budget)) {
          if (visited.insert(canon_pi(t)).second) states.push_back(t);
        }
      }
      if (states.size() == level_end) break;
      level_begin = level_end;
    }
    return reach_memo.emplace(std::move(key), std::move(states)).first->second;
  }

  bool sim(const PiPtr& p, const PiPtr& q, int depth) {
    std::string pk = canon_pi(p);
    std::string qk = canon_pi(q);
    std::string key = pk + "\x01" + qk + "\x01" + std::to_string(depth);
    auto it = memo.find(key);
    if (it != memo.end()) return it->second;
    // provisional value guards against cycles through identical states
    memo[key] = true;
    bool ok = true;
    for (const PiName& n : barbs(p)) {
      if (!weak_barb(q, n, depth, budget)) {
        ok = false;
        break;
      }
    }
    if (ok && depth > 0) {
      for (const PiPtr& pnext : pi_step(p, budget)) {
        bool matched = false;
        for (const PiPtr& qnext : reach(q, qk, depth)) {
          if (sim(pnext, qnext, depth - 1)) {
            matched = true;
            break;
          }
        }
        if (!matched) {
          ok = false;
          break;
        }
      }
    }
    memo[key] = ok;
    return ok;
  }
};

}  // namespace

bool bounded_simulates(const PiPtr& p, const PiPtr& q, int depth, int repl_budget) {
  SimCtx ctx;
  ctx.budget = repl_budget;
  return ctx.sim(cnf(p), cnf(q), depth);
}

}  // namespace seqpi
