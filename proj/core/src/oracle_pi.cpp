#include <algorithm>
#include <deque>
#include <memory>
#include <set>
#include <sstream>
#include <stdexcept>

#include "seqpi/oracle.hpp"
#include "seqpi/pi_rewrite.hpp"

namespace seqpi::oracle {

// ---------------------------------------------------------------------------
// annotated terms
//
// A mirror of PiProcess carrying, on each replication node, how many
// unfoldings it has left. The class search rewrites these; results are
// stripped back to plain processes.

namespace {

struct OTerm;
using OPtr = std::shared_ptr<const OTerm>;

struct OTerm {
  PiKind kind = PiKind::Nil;
  DataPtr subj, payload;    // In/Out subject, Out payload, Let scrutinee
  PiName bind1, bind2;      // Res/In binder; Let binders
  OPtr left, right;         // children
  int unfolds_left = 0;     // Repl only
};

OPtr onode(OTerm t) { return std::make_shared<OTerm>(std::move(t)); }

OPtr from_pi(const PiPtr& p, int budget) {
  OTerm t;
  t.kind = p->kind;
  t.subj = p->subj;
  t.payload = p->payload;
  t.bind1 = p->bind1;
  t.bind2 = p->bind2;
  if (p->left) t.left = from_pi(p->left, budget);
  if (p->right) t.right = from_pi(p->right, budget);
  if (p->kind == PiKind::Repl) t.unfolds_left = budget;
  return onode(std::move(t));
}

PiPtr to_pi(const OPtr& t) {
  switch (t->kind) {
    case PiKind::Nil:
      return pi_nil();
    case PiKind::Par:
      return pi_par(to_pi(t->left), to_pi(t->right));
    case PiKind::Repl:
      return pi_repl(to_pi(t->left));
    case PiKind::Res:
      return pi_res(t->bind1, to_pi(t->left));
    case PiKind::In:
      return pi_in(t->subj, t->bind1, to_pi(t->left));
    case PiKind::Out:
      return pi_out(t->subj, t->payload);
    case PiKind::Let:
      return pi_let(t->bind1, t->bind2, t->subj, to_pi(t->left));
  }
  return pi_nil();
}

void free_names_rec(const OPtr& t, std::vector<PiName>& bound, std::set<PiName>& out) {
  auto datum = [&](const DataPtr& d) {
    if (!d) return;
    auto one = [&](const PiName& n) {
      if (std::find(bound.rbegin(), bound.rend(), n) == bound.rend()) out.insert(n);
    };
    if (d->first) {
      one(d->first->name);
      one(d->second->name);
    } else {
      one(d->name);
    }
  };
  switch (t->kind) {
    case PiKind::Nil:
      return;
    case PiKind::Par:
      free_names_rec(t->left, bound, out);
      free_names_rec(t->right, bound, out);
      return;
    case PiKind::Repl:
      free_names_rec(t->left, bound, out);
      return;
    case PiKind::Res:
      bound.push_back(t->bind1);
      free_names_rec(t->left, bound, out);
      bound.pop_back();
      return;
    case PiKind::In:
      datum(t->subj);
      bound.push_back(t->bind1);
      free_names_rec(t->left, bound, out);
      bound.pop_back();
      return;
    case PiKind::Out:
      datum(t->subj);
      datum(t->payload);
      return;
    case PiKind::Let:
      datum(t->subj);
      bound.push_back(t->bind1);
      bound.push_back(t->bind2);
      free_names_rec(t->left, bound, out);
      bound.pop_back();
      bound.pop_back();
      return;
  }
}

std::set<PiName> ofree(const OPtr& t) {
  std::vector<PiName> bound;
  std::set<PiName> out;
  free_names_rec(t, bound, out);
  return out;
}

void collect_data_names(const DataPtr& d, std::set<PiName>& out) {
  if (!d) return;
  if (d->first) {
    collect_data_names(d->first, out);
    collect_data_names(d->second, out);
  } else {
    out.insert(d->name);
  }
}

// Name-for-datum substitution, capture-avoiding; binders that would capture
// are renamed with the caller's counter. A pair landing in subject position
// or inside a pair component stays in place as an ill-formed-stuck marker,
// exactly as the production substitution leaves it.
struct OSubst {
  PiName from;
  DataPtr to;
  std::set<PiName> to_names;
  long* counter;

  PiName fresh_binder() { return "oq#" + std::to_string((*counter)++); }

  DataPtr datum(const DataPtr& d) const {
    if (!d) return d;
    if (!d->first) return d->name == from ? to : d;
    DataPtr a = datum(d->first);
    DataPtr b = datum(d->second);
    if (a == d->first && b == d->second) return d;
    return data_pair(a, b);
  }

  OPtr rename_binder(const OPtr& body, const PiName& oldn, const PiName& newn) {
    OSubst r{oldn, data_name(newn), {newn}, counter};
    return r.run(body);
  }

  OPtr run(const OPtr& t) {
    switch (t->kind) {
      case PiKind::Nil:
        return t;
      case PiKind::Par: {
        OTerm n = *t;
        n.left = run(t->left);
        n.right = run(t->right);
        return onode(std::move(n));
      }
      case PiKind::Repl: {
        OTerm n = *t;
        n.left = run(t->left);
        return onode(std::move(n));
      }
      case PiKind::Res:
      case PiKind::In: {
        OTerm n = *t;
        if (t->kind == PiKind::In) n.subj = datum(t->subj);
        if (t->bind1 == from) return t->kind == PiKind::In ? onode(std::move(n)) : t;
        OPtr body = t->left;
        if (to_names.count(t->bind1)) {
          PiName nb = fresh_binder();
          body = rename_binder(body, t->bind1, nb);
          n.bind1 = nb;
        }
        n.left = run(body);
        return onode(std::move(n));
      }
      case PiKind::Out: {
        OTerm n = *t;
        n.subj = datum(t->subj);
        n.payload = datum(t->payload);
        return onode(std::move(n));
      }
      case PiKind::Let: {
        OTerm n = *t;
        n.subj = datum(t->subj);
        if (t->bind1 == from || t->bind2 == from) return onode(std::move(n));
        OPtr body = t->left;
        if (to_names.count(t->bind1)) {
          PiName nb = fresh_binder();
          body = rename_binder(body, t->bind1, nb);
          n.bind1 = nb;
        }
        if (to_names.count(n.bind2)) {
          PiName nb = fresh_binder();
          body = rename_binder(body, n.bind2, nb);
          n.bind2 = nb;
        }
        n.left = run(body);
        return onode(std::move(n));
      }
    }
    return t;
  }
};

OPtr osubst(const OPtr& t, const PiName& from, const DataPtr& to, long* counter) {
  OSubst s;
  s.from = from;
  s.to = to;
  s.counter = counter;
  collect_data_names(to, s.to_names);
  return s.run(t);
}

bool flat_datum(const DataPtr& d) {
  return !d->first || (!d->first->first && !d->second->first);
}

// ---------------------------------------------------------------------------
// canonical keys for class dedup (comm/assoc/nil/alpha-invariant)

void okey_rec(const OPtr& t, std::vector<PiName>& env, std::string& out) {
  auto datum = [&](const DataPtr& d) {
    auto one = [&](const PiName& n) {
      for (size_t i = env.size(); i-- > 0;)
        if (env[i] == n) {
          out += "@" + std::to_string(env.size() - 1 - i);
          return;
        }
      out += n;
    };
    if (d->first) {
      out += "<";
      one(d->first->name);
      out += ",";
      one(d->second->name);
      out += ">";
    } else {
      one(d->name);
    }
  };
  switch (t->kind) {
    case PiKind::Nil:
      out += "0";
      return;
    case PiKind::Par: {
      std::vector<OPtr> hold;
      std::deque<OPtr> work{t->left, t->right};
      while (!work.empty()) {
        OPtr c = work.front();
        work.pop_front();
        if (c->kind == PiKind::Par) {
          work.push_front(c->right);
          work.push_front(c->left);
        } else if (c->kind != PiKind::Nil) {
          hold.push_back(c);
        }
      }
      if (hold.empty()) {
        out += "0";
        return;
      }
      std::vector<std::string> keys;
      for (const OPtr& c : hold) {
        std::string k;
        okey_rec(c, env, k);
        keys.push_back(std::move(k));
      }
      std::sort(keys.begin(), keys.end());
      out += "(";
      for (size_t i = 0; i < keys.size(); i++) {
        if (i) out += "|";
        out += keys[i];
      }
      out += ")";
      return;
    }
    case PiKind::Repl:
      out += "!" + std::to_string(t->unfolds_left) + "[";
      okey_rec(t->left, env, out);
      out += "]";
      return;
    case PiKind::Res:
      out += "nu.";
      env.push_back(t->bind1);
      okey_rec(t->left, env, out);
      env.pop_back();
      return;
    case PiKind::In:
      out += "in[";
      datum(t->subj);
      out += "].";
      env.push_back(t->bind1);
      okey_rec(t->left, env, out);
      env.pop_back();
      return;
    case PiKind::Out:
      out += "out[";
      datum(t->subj);
      out += "][";
      datum(t->payload);
      out += "]";
      return;
    case PiKind::Let:
      out += "let[";
      datum(t->subj);
      out += "].";
      env.push_back(t->bind1);
      env.push_back(t->bind2);
      okey_rec(t->left, env, out);
      env.pop_back();
      env.pop_back();
      return;
  }
}

std::string okey(const OPtr& t) {
  std::vector<PiName> env;
  std::string out;
  okey_rec(t, env, out);
  return out;
}

// ---------------------------------------------------------------------------
// congruence moves and core steps

struct ClassSearch {
  int budget;
  long counter = 0;

  // Flatten a parallel spine, dropping nils.
  static void flatten(const OPtr& t, std::vector<OPtr>& out) {
    if (t->kind == PiKind::Par) {
      flatten(t->left, out);
      flatten(t->right, out);
    } else if (t->kind != PiKind::Nil) {
      out.push_back(t);
    }
  }

  static OPtr mkpar(const std::vector<OPtr>& cs) {
    if (cs.empty()) {
      OTerm nil;
      return onode(std::move(nil));
    }
    OPtr acc = cs[0];
    for (size_t i = 1; i < cs.size(); i++) {
      OTerm p;
      p.kind = PiKind::Par;
      p.left = acc;
      p.right = cs[i];
      acc = onode(std::move(p));
    }
    return acc;
  }

  OPtr alpha_copy(const OPtr& t) {
    // Fresh names for every binder; replication annotations reset (a copy
    // is a new site).
    switch (t->kind) {
      case PiKind::Nil:
      case PiKind::Out:
        return t;
      case PiKind::Par: {
        OTerm n = *t;
        n.left = alpha_copy(t->left);
        n.right = alpha_copy(t->right);
        return onode(std::move(n));
      }
      case PiKind::Repl: {
        OTerm n = *t;
        n.left = alpha_copy(t->left);
        n.unfolds_left = budget;
        return onode(std::move(n));
      }
      case PiKind::Res:
      case PiKind::In: {
        OTerm n = *t;
        PiName nb = "oq#" + std::to_string(counter++);
        OSubst r{t->bind1, data_name(nb), {nb}, &counter};
        n.bind1 = nb;
        n.left = alpha_copy(r.run(t->left));
        return onode(std::move(n));
      }
      case PiKind::Let: {
        OTerm n = *t;
        PiName b1 = "oq#" + std::to_string(counter++);
        PiName b2 = "oq#" + std::to_string(counter++);
        OSubst r1{t->bind1, data_name(b1), {b1}, &counter};
        OPtr body = r1.run(t->left);
        OSubst r2{t->bind2, data_name(b2), {b2}, &counter};
        body = r2.run(body);
        n.bind1 = b1;
        n.bind2 = b2;
        n.left = alpha_copy(body);
        return onode(std::move(n));
      }
    }
    return t;
  }

  // All single-congruence-move variants of t (context-closed).
  void moves(const OPtr& t, std::vector<OPtr>& out) {
    // Context closure: rebuild with each child variant.
    auto child_moves = [&](const OPtr& child, const std::function<OPtr(OPtr)>& rebuild) {
      std::vector<OPtr> sub;
      moves(child, sub);
      for (OPtr& v : sub) out.push_back(rebuild(std::move(v)));
    };

    switch (t->kind) {
      case PiKind::Nil:
      case PiKind::Out:
        return;
      case PiKind::Repl:
        // Unfold: !P -> P' | !P with one fewer unfolding left. Moves inside
        // the guarded body are not explored: no reduction happens there, and
        // any rearrangement is reproducible on the copy once unfolded.
        if (t->unfolds_left > 0) {
          OTerm spent = *t;
          spent.unfolds_left = t->unfolds_left - 1;
          OTerm par;
          par.kind = PiKind::Par;
          par.left = alpha_copy(t->left);
          par.right = onode(std::move(spent));
          out.push_back(onode(std::move(par)));
        }
        return;
      case PiKind::In:
        child_moves(t->left, [&](OPtr v) {
          OTerm n = *t;
          n.left = std::move(v);
          return onode(std::move(n));
        });
        return;
      case PiKind::Let:
        // Literal flat-pair scrutinee: eliminate. A nested scrutinee is an
        // ill-formed-stuck marker and stays. The guarded body is left alone
        // until the destructor opens.
        if (t->subj->first && flat_datum(t->subj)) {
          OPtr body = osubst(t->left, t->bind1, t->subj->first, &counter);
          body = osubst(body, t->bind2, t->subj->second, &counter);
          out.push_back(body);
        }
        return;
      case PiKind::Res: {
        const PiName n = t->bind1;
        std::set<PiName> body_free = ofree(t->left);
        // Unused restriction: derivable drop.
        if (!body_free.count(n)) {
          out.push_back(t->left);
        }
        // Adjacent swap.
        if (t->left->kind == PiKind::Res) {
          OTerm inner = *t->left;
          OTerm outer = *t;
          if (inner.bind1 != n) {
            outer.bind1 = inner.bind1;
            inner.bind1 = n;
            OTerm in2 = inner;
            in2.left = t->left->left;
            outer.left = onode(std::move(in2));
            out.push_back(onode(std::move(outer)));
          }
        }
        // Extrusion out: pull one eligible component of a parallel body
        // out of the scope.
        std::vector<OPtr> comps;
        flatten(t->left, comps);
        if (comps.size() >= 2) {
          for (size_t i = 0; i < comps.size(); i++) {
            if (ofree(comps[i]).count(n)) continue;
            std::vector<OPtr> rest;
            for (size_t j = 0; j < comps.size(); j++)
              if (j != i) rest.push_back(comps[j]);
            OTerm res = *t;
            res.left = mkpar(rest);
            out.push_back(mkpar({comps[i], onode(std::move(res))}));
          }
        }
        child_moves(t->left, [&](OPtr v) {
          OTerm nn = *t;
          nn.left = std::move(v);
          return onode(std::move(nn));
        });
        return;
      }
      case PiKind::Par: {
        std::vector<OPtr> comps;
        flatten(t, comps);
        // Scope widening: hoist a restricted component over the spine,
        // alpha-renaming its binder when the siblings use the name.
        for (size_t i = 0; i < comps.size(); i++) {
          if (comps[i]->kind != PiKind::Res) continue;
          std::vector<OPtr> rest;
          for (size_t j = 0; j < comps.size(); j++)
            if (j != i) rest.push_back(comps[j]);
          bool clash = false;
          for (const OPtr& r : rest)
            if (ofree(r).count(comps[i]->bind1)) clash = true;
          OPtr resnode = comps[i];
          if (clash) {
            PiName nb = "oq#" + std::to_string(counter++);
            OSubst r{resnode->bind1, data_name(nb), {nb}, &counter};
            OTerm renamed = *resnode;
            renamed.bind1 = nb;
            renamed.left = r.run(resnode->left);
            resnode = onode(std::move(renamed));
          }
          std::vector<OPtr> inner{resnode->left};
          for (const OPtr& r : rest) inner.push_back(r);
          OTerm res = *resnode;
          res.left = mkpar(inner);
          out.push_back(onode(std::move(res)));
        }
        // Component-local moves.
        for (size_t i = 0; i < comps.size(); i++) {
          std::vector<OPtr> sub;
          moves(comps[i], sub);
          for (OPtr& v : sub) {
            std::vector<OPtr> next = comps;
            next[static_cast<size_t>(i)] = std::move(v);
            out.push_back(mkpar(next));
          }
        }
        return;
      }
    }
  }

  // All one-step reducts of t under the closure rules (no congruence).
  void core(const OPtr& t, std::vector<OPtr>& out) {
    switch (t->kind) {
      case PiKind::Nil:
      case PiKind::Out:
      case PiKind::Repl:
      case PiKind::Let:
        return;
      case PiKind::Res: {
        std::vector<OPtr> sub;
        core(t->left, sub);
        for (OPtr& v : sub) {
          OTerm n = *t;
          n.left = std::move(v);
          out.push_back(onode(std::move(n)));
        }
        return;
      }
      case PiKind::In: {
        if (t->subj->first) return;  // pair subject: stuck
        std::vector<OPtr> sub;
        core(t->left, sub);
        for (OPtr& v : sub) {
          OTerm n = *t;
          n.left = std::move(v);
          out.push_back(onode(std::move(n)));
        }
        return;
      }
      case PiKind::Par: {
        std::vector<OPtr> comps;
        flatten(t, comps);
        // Synchronisation between any output/input component pair; outputs
        // carrying a nested pair are ill-formed-stuck and never fire.
        for (size_t i = 0; i < comps.size(); i++) {
          if (comps[i]->kind != PiKind::Out || comps[i]->subj->first) continue;
          if (!flat_datum(comps[i]->payload)) continue;
          for (size_t j = 0; j < comps.size(); j++) {
            if (j == i || comps[j]->kind != PiKind::In || comps[j]->subj->first) continue;
            if (comps[i]->subj->name != comps[j]->subj->name) continue;
            OPtr residue =
                osubst(comps[j]->left, comps[j]->bind1, comps[i]->payload, &counter);
            std::vector<OPtr> next;
            for (size_t k = 0; k < comps.size(); k++)
              if (k != i && k != j) next.push_back(comps[k]);
            next.push_back(residue);
            out.push_back(mkpar(next));
          }
        }
        // Component-local steps.
        for (size_t i = 0; i < comps.size(); i++) {
          std::vector<OPtr> sub;
          core(comps[i], sub);
          for (OPtr& v : sub) {
            std::vector<OPtr> next = comps;
            next[i] = std::move(v);
            out.push_back(mkpar(next));
          }
        }
        return;
      }
    }
  }
};

}  // namespace

namespace {

PiPtr absorb_rec(const PiPtr& p) {
  switch (p->kind) {
    case PiKind::Nil:
    case PiKind::Out:
      return p;
    case PiKind::Repl:
      return pi_repl(absorb_rec(p->left));
    case PiKind::Res:
      return pi_res(p->bind1, absorb_rec(p->left));
    case PiKind::In:
      return pi_in(p->subj, p->bind1, absorb_rec(p->left));
    case PiKind::Let:
      return pi_let(p->bind1, p->bind2, p->subj, absorb_rec(p->left));
    case PiKind::Par: {
      std::vector<PiPtr> comps;
      std::deque<PiPtr> work{p->left, p->right};
      while (!work.empty()) {
        PiPtr c = work.front();
        work.pop_front();
        if (c->kind == PiKind::Par) {
          work.push_front(c->right);
          work.push_front(c->left);
        } else if (c->kind != PiKind::Nil) {
          comps.push_back(absorb_rec(c));
        }
      }
      std::set<std::string> repl_bodies;
      for (const PiPtr& c : comps)
        if (c->kind == PiKind::Repl) repl_bodies.insert(canon_pi(c->left));
      std::vector<PiPtr> kept;
      for (const PiPtr& c : comps) {
        if (repl_bodies.count(canon_pi(c))) continue;  // c | !c folds to !c
        kept.push_back(c);
      }
      if (kept.empty()) return pi_nil();
      PiPtr acc = kept[0];
      for (std::size_t i = 1; i < kept.size(); i++) acc = pi_par(acc, kept[i]);
      return acc;
    }
  }
  return p;
}

}  // namespace

std::string pi_reduct_key(const PiPtr& p) { return canon_pi(absorb_rec(cnf(p))); }

std::vector<std::string> pi_step_keys(const PiPtr& p, int repl_budget, int class_cap) {
  ClassSearch search;
  search.budget = repl_budget;

  OPtr start = from_pi(p, repl_budget);
  std::set<std::string> visited{okey(start)};
  std::deque<OPtr> frontier{start};
  std::set<std::string> results;

  while (!frontier.empty()) {
    OPtr state = frontier.front();
    frontier.pop_front();

    std::vector<OPtr> reducts;
    search.core(state, reducts);
    for (const OPtr& r : reducts) results.insert(pi_reduct_key(to_pi(r)));

    std::vector<OPtr> next;
    search.moves(state, next);
    for (OPtr& v : next) {
      std::string key = okey(v);
      if (!visited.insert(std::move(key)).second) continue;
      if (static_cast<int>(visited.size()) > class_cap)
        throw std::runtime_error("congruence class exceeded cap");
      frontier.push_back(std::move(v));
    }
  }
  return {results.begin(), results.end()};
}

// ---------------------------------------------------------------------------
// exhaustive enumeration

void enumerate_pi(int max_nodes, const std::function<void(const PiPtr&)>& fn) {
  const int pooled = std::min(max_nodes, 5);
  std::vector<std::vector<PiPtr>> pools;

  const PiName names[2] = {"a", "b"};
  const DataPtr payloads[4] = {data_name("a"), data_name("b"),
                               data_pair(data_name("a"), data_name("b")),
                               data_pair(data_name("b"), data_name("a"))};

  auto emit_unaries = [&](const PiPtr& body, const std::function<void(const PiPtr&)>& sink) {
    sink(pi_repl(body));
    for (const PiName& n : names) sink(pi_res(n, body));
    for (const PiName& s : names)
      for (const PiName& x : names) sink(pi_in(s, x, body));
    for (const PiName& z : names) sink(pi_let("a", "b", data_name(z), body));
  };

  auto emit_binaries = [&](int total, const std::function<void(const PiPtr&)>& sink) {
    for (int ls = 1; ls <= total - 2; ls++) {
      int rs = total - 1 - ls;
      if (ls > pooled || rs > pooled) continue;
      for (const PiPtr& l : pools[static_cast<size_t>(ls) - 1])
        for (const PiPtr& r : pools[static_cast<size_t>(rs) - 1]) sink(pi_par(l, r));
    }
  };

  for (int n = 1; n <= pooled; n++) {
    std::vector<PiPtr> pool;
    auto keep = [&](const PiPtr& p) {
      fn(p);
      pool.push_back(p);
    };
    if (n == 1) {
      keep(pi_nil());
      for (const PiName& s : names)
        for (const DataPtr& d : payloads) keep(pi_out(s, d));
    } else {
      for (const PiPtr& body : pools[static_cast<size_t>(n) - 2]) emit_unaries(body, keep);
      emit_binaries(n, keep);
    }
    pools.push_back(std::move(pool));
  }

  if (max_nodes >= 6) {
    for (const PiPtr& body : pools[4]) emit_unaries(body, fn);
    emit_binaries(6, fn);
  }
}

std::uint64_t count_pi(int max_nodes) {
  // C(1) = 9; C(n) = 9 C(n-1) + sum C(i) C(n-1-i).
  std::vector<std::uint64_t> c(static_cast<size_t>(max_nodes) + 1, 0);
  std::uint64_t total = 0;
  for (int n = 1; n <= max_nodes; n++) {
    std::uint64_t v = n == 1 ? 9 : 9 * c[static_cast<size_t>(n) - 1];
    for (int i = 1; i <= n - 2; i++)
      v += c[static_cast<size_t>(i)] * c[static_cast<size_t>(n - 1 - i)];
    c[static_cast<size_t>(n)] = v;
    total += v;
  }
  return total;
}

}  // namespace seqpi::oracle
