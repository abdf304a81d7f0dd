#include "seqpi/x_types.hpp"

#include <sstream>

namespace seqpi {

namespace {

struct Infer {
  Substitution s;
  int next = 0;
  std::string err;

  TypePtr fresh() { return type_leaf("?" + std::to_string(next++)); }

  static std::optional<TypePtr> take(std::map<std::string, TypePtr>& m, const std::string& k) {
    auto it = m.find(k);
    if (it == m.end()) return std::nullopt;
    TypePtr t = it->second;
    m.erase(it);
    return t;
  }

  bool add(std::map<std::string, TypePtr>& m, const std::string& k, const TypePtr& t) {
    auto it = m.find(k);
    if (it == m.end()) {
      m.emplace(k, t);
      return true;
    }
    if (unify(it->second, t, s)) return true;
    err = "conflicting types for '" + k + "'";
    return false;
  }

  bool merge(ContextPair& dst, ContextPair& src) {
    for (auto& [k, v] : src.gamma)
      if (!add(dst.gamma, k, v)) return false;
    for (auto& [k, v] : src.delta)
      if (!add(dst.delta, k, v)) return false;
    return true;
  }

  std::optional<ContextPair> go(const XPtr& p) {
    switch (p->kind) {
      case XKind::Capsule: {
        TypePtr t = fresh();
        ContextPair c;
        c.gamma.emplace(p->s1, t);
        c.delta.emplace(p->p1, t);
        return c;
      }
      case XKind::Export: {
        auto body = go(p->left);
        if (!body) return std::nullopt;
        TypePtr a = take(body->gamma, p->s1).value_or(nullptr);
        if (!a) a = fresh();
        TypePtr b = take(body->delta, p->p1).value_or(nullptr);
        if (!b) b = fresh();
        if (!add(body->delta, p->p2, type_arrow(a, b))) return std::nullopt;
        return body;
      }
      case XKind::Import: {
        auto l = go(p->left);
        if (!l) return std::nullopt;
        auto r = go(p->right);
        if (!r) return std::nullopt;
        TypePtr a = take(l->delta, p->p1).value_or(nullptr);
        if (!a) a = fresh();
        TypePtr b = take(r->gamma, p->s2).value_or(nullptr);
        if (!b) b = fresh();
        if (!merge(*l, *r)) return std::nullopt;
        if (!add(l->gamma, p->s1, type_arrow(a, b))) return std::nullopt;
        return l;
      }
      case XKind::Cut:
      case XKind::CutL:
      case XKind::CutR: {
        auto l = go(p->left);
        if (!l) return std::nullopt;
        auto r = go(p->right);
        if (!r) return std::nullopt;
        TypePtr a = take(l->delta, p->p1).value_or(nullptr);
        if (!a) a = fresh();
        TypePtr b = take(r->gamma, p->s1).value_or(nullptr);
        if (!b) b = fresh();
        if (!unify(a, b, s)) {
          err = "cut connects incompatible types";
          return std::nullopt;
        }
        if (!merge(*l, *r)) return std::nullopt;
        return l;
      }
    }
    return std::nullopt;
  }
};

}  // namespace

XTypeResult infer_x(const XPtr& p) {
  FreshSupply local;
  XPtr q = refresh(p, local);  // unique binders so context keys never clash
  Infer inf;
  auto ctx = inf.go(q);
  XTypeResult out;
  if (!ctx) {
    out.error = inf.err.empty() ? "not typeable" : inf.err;
    return out;
  }
  out.ok = true;
  for (auto& [k, v] : ctx->gamma) out.ctx.gamma[k] = inf.s.apply(v);
  for (auto& [k, v] : ctx->delta) out.ctx.delta[k] = inf.s.apply(v);
  return out;
}

namespace {

bool match_instance(const TypePtr& pat, const TypePtr& given,
                    std::map<std::string, TypePtr>& binds) {
  if (is_metavar(pat)) {
    auto it = binds.find(pat->name);
    if (it != binds.end()) return type_equal(it->second, given);
    binds.emplace(pat->name, given);
    return true;
  }
  if (pat->is_leaf()) return given->is_leaf() && given->name == pat->name;
  if (given->is_leaf()) return false;
  return match_instance(pat->from, given->from, binds) &&
         match_instance(pat->to, given->to, binds);
}

}  // namespace

bool check_x(const XPtr& p, const ContextPair& given) {
  XTypeResult r = infer_x(p);
  if (!r.ok) return false;
  std::map<std::string, TypePtr> binds;
  for (const auto& [k, t] : r.ctx.gamma) {
    auto it = given.gamma.find(k);
    if (it == given.gamma.end() || !match_instance(t, it->second, binds)) return false;
  }
  for (const auto& [k, t] : r.ctx.delta) {
    auto it = given.delta.find(k);
    if (it == given.delta.end() || !match_instance(t, it->second, binds)) return false;
  }
  return true;
}

namespace {

TypePtr rename_for_display(const TypePtr& t, std::map<std::string, std::string>& names) {
  if (t->is_leaf()) {
    if (!is_metavar(t)) return t;
    auto it = names.find(t->name);
    if (it == names.end())
      it = names.emplace(t->name, display_var_name(names.size())).first;
    return type_leaf(it->second);
  }
  TypePtr from = rename_for_display(t->from, names);
  TypePtr to = rename_for_display(t->to, names);
  return type_arrow(from, to);
}

}  // namespace

ContextPair ground_context(const ContextPair& ctx) {
  std::map<std::string, std::string> names;
  ContextPair out;
  for (const auto& [k, t] : ctx.gamma) out.gamma[k] = rename_for_display(t, names);
  for (const auto& [k, t] : ctx.delta) out.delta[k] = rename_for_display(t, names);
  return out;
}

std::string print_context(const ContextPair& ctx) {
  std::map<std::string, std::string> names;
  std::string gamma, delta;
  for (const auto& [k, t] : ctx.gamma) {
    if (!gamma.empty()) gamma += ", ";
    gamma += k + " : " + print_type(rename_for_display(t, names));
  }
  for (const auto& [k, t] : ctx.delta) {
    if (!delta.empty()) delta += ", ";
    delta += k + " : " + print_type(rename_for_display(t, names));
  }
  std::string out;
  if (!gamma.empty()) out += gamma + " ";
  out += "|-";
  if (!delta.empty()) out += " " + delta;
  return out;
}

ContextPair parse_x_context(const std::string& text) {
  ContextPair ctx;
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    lineno++;
    std::istringstream ls(line);
    std::string kind;
    if (!(ls >> kind)) continue;  // blank line
    if (kind != "sock" && kind != "plug")
      throw ParseError("context line must start with 'sock' or 'plug'", lineno, 1);
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
    auto& side = kind == "sock" ? ctx.gamma : ctx.delta;
    if (side.count(name))
      throw ParseError("duplicate context entry '" + name + "'", lineno, 1);
    side.emplace(name, t);
  }
  return ctx;
}

}  // namespace seqpi
