#include "seqpi/pi_types.hpp"

#include <sstream>

namespace seqpi {

namespace {

struct PiChecker {
  Substitution s;
  int next = 0;
  std::string err;

  TypePtr fresh() { return type_leaf("?" + std::to_string(next++)); }

  bool fail(const std::string& e) {
    if (err.empty()) err = e;
    return false;
  }

  TypePtr lookup(const std::map<PiName, TypePtr>& m, const PiName& n) {
    auto it = m.find(n);
    return it == m.end() ? nullptr : it->second;
  }

  bool unify_or(const TypePtr& a, const TypePtr& b, const std::string& what) {
    if (unify(a, b, s)) return true;
    return fail("type mismatch at " + what + ": " + print_type(s.apply(a)) + " vs " +
                print_type(s.apply(b)));
  }

  // gamma and delta accumulate; names are unique after refreshing, so
  // entries added for binders never collide with anything in scope.
  bool check(const PiPtr& p, std::map<PiName, TypePtr>& gamma,
             std::map<PiName, TypePtr>& delta) {
    switch (p->kind) {
      case PiKind::Nil:
        return true;
      case PiKind::Par:
        return check(p->left, gamma, delta) && check(p->right, gamma, delta);
      case PiKind::Repl:
        return check(p->left, gamma, delta);
      case PiKind::Res: {
        TypePtr t = fresh();
        gamma[p->bind1] = t;
        delta[p->bind1] = t;
        return check(p->left, gamma, delta);
      }
      case PiKind::In: {
        if (!p->subj->is_name()) return fail("input subject is a pair");
        TypePtr a = lookup(gamma, p->subj->name);
        if (!a) return fail("no input capability for '" + p->subj->name + "'");
        gamma[p->bind1] = a;
        delta[p->bind1] = a;
        return check(p->left, gamma, delta);
      }
      case PiKind::Out: {
        if (!p->subj->is_name()) return fail("output subject is a pair");
        TypePtr a = lookup(delta, p->subj->name);
        if (!a) return fail("no output capability for '" + p->subj->name + "'");
        const DataPtr& d = p->payload;
        if (d->is_name()) {
          TypePtr bg = lookup(gamma, d->name);
          if (!bg) return fail("payload '" + d->name + "' has no input capability");
          TypePtr bd = lookup(delta, d->name);
          if (!bd) return fail("payload '" + d->name + "' has no output capability");
          return unify_or(a, bg, "output " + p->subj->name + "<" + d->name + ">") &&
                 unify_or(a, bd, "output " + p->subj->name + "<" + d->name + ">");
        }
        if (!d->first->is_name() || !d->second->is_name())
          return fail("nested pair in output payload");
        TypePtr ta = fresh(), tb = fresh();
        if (!unify_or(a, type_arrow(ta, tb),
                      "pair output on '" + p->subj->name + "'"))
          return false;
        TypePtr bg = lookup(gamma, d->first->name);
        if (!bg) return fail("pair component '" + d->first->name + "' has no input capability");
        TypePtr cd = lookup(delta, d->second->name);
        if (!cd)
          return fail("pair component '" + d->second->name + "' has no output capability");
        return unify_or(ta, bg, "pair output first component") &&
               unify_or(tb, cd, "pair output second component");
      }
      case PiKind::Let: {
        const DataPtr& z = p->subj;
        if (!z->is_name()) {
          if (!z->first->is_name() || !z->second->is_name())
            return fail("nested pair in destructor");
          // literal pair: typed through the substituted body, matching the
          // congruence that eliminates the destructor
          PiPtr body = subst_data(p->left, p->bind1, z->first);
          body = subst_data(body, p->bind2, z->second);
          return check(body, gamma, delta);
        }
        TypePtr t = lookup(gamma, z->name);
        if (!t) return fail("destructor scrutinee '" + z->name + "' has no input capability");
        TypePtr ta = fresh(), tb = fresh();
        if (!unify_or(t, type_arrow(ta, tb), "destructor on '" + z->name + "'")) return false;
        delta[p->bind1] = ta;
        gamma[p->bind2] = tb;
        return check(p->left, gamma, delta);
      }
    }
    return fail("unknown process form");
  }
};

}  // namespace

std::optional<std::string> pi_check_explain(const PiPtr& p, const PiContextPair& ctx) {
  FreshSupply local;
  PiPtr q = refresh_pi(p, local);
  PiChecker c;
  std::map<PiName, TypePtr> gamma = ctx.gamma, delta = ctx.delta;
  if (c.check(q, gamma, delta)) return std::nullopt;
  return c.err.empty() ? std::optional<std::string>("does not typecheck") : c.err;
}

bool pi_check(const PiPtr& p, const PiContextPair& ctx) {
  return !pi_check_explain(p, ctx).has_value();
}

bool derive_pair_in(const PiName& subj, const PiName& x, const PiName& y, const PiPtr& body,
                    const PiContextPair& ctx) {
  FreshSupply local;
  PiChecker c;
  std::map<PiName, TypePtr> gamma = ctx.gamma, delta = ctx.delta;
  auto it = gamma.find(subj);
  if (it == gamma.end()) return false;
  TypePtr ta = c.fresh(), tb = c.fresh();
  if (!unify(it->second, type_arrow(ta, tb), c.s)) return false;
  // x and y are free in body from this rule's perspective, so they are
  // entered into the contexts directly; the body's own binders are
  // refreshed away from everything else as usual.
  delta[x] = ta;
  gamma[y] = tb;
  PiPtr fresh_body = refresh_pi(body, local);
  return c.check(fresh_body, gamma, delta);
}

PiContextPair parse_pi_context(const std::string& text) {
  PiContextPair ctx;
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    lineno++;
    std::istringstream ls(line);
    std::string kind;
    if (!(ls >> kind)) continue;
    if (kind != "in" && kind != "out")
      throw ParseError("context line must start with 'in' or 'out'", lineno, 1);
    std::string name, colon;
    if (!(ls >> name) || !(ls >> colon) || colon != ":")
      throw ParseError("expected '<name> : <type>'", lineno, 1);
    std::string rest;
    std::getline(ls, rest);
    TypePtr t;
    try {
      t = parse_type(rest);
    } catch (ParseError& e) {
      throw ParseError(std::string("in context type: ") + e.what(), lineno, e.col);
    }
    auto& side = kind == "in" ? ctx.gamma : ctx.delta;
    if (side.count(name))
      throw ParseError("duplicate context entry '" + name + "'", lineno, 1);
    side.emplace(name, t);
  }
  return ctx;
}

std::string print_pi_context(const PiContextPair& ctx) {
  // Metavariables (if a caller passes an inferred context straight
  // through) display as A, B, C, ... in first-appearance order.
  std::map<std::string, std::string> names;
  struct R {
    std::map<std::string, std::string>& names;
    TypePtr go(const TypePtr& t) {
      if (t->is_leaf()) {
        if (!is_metavar(t)) return t;
        auto it = names.find(t->name);
        if (it == names.end())
          it = names.emplace(t->name, display_var_name(names.size())).first;
        return type_leaf(it->second);
      }
      return type_arrow(go(t->from), go(t->to));
    }
  };
  auto show = [&](const TypePtr& t) {
    R r{names};
    return print_type(r.go(t));
  };
  std::string gamma, delta;
  for (const auto& [k, t] : ctx.gamma) {
    if (!gamma.empty()) gamma += ", ";
    gamma += k + " : " + show(t);
  }
  for (const auto& [k, t] : ctx.delta) {
    if (!delta.empty()) delta += ", ";
    delta += k + " : " + show(t);
  }
  std::string out;
  if (!gamma.empty()) out += gamma + " ";
  out += "|-";
  if (!delta.empty()) out += " " + delta;
  return out;
}

}  // namespace seqpi
