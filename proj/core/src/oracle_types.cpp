#include <map>
#include <string>
#include <vector>

#include "seqpi/oracle.hpp"
#include "seqpi/x_syntax.hpp"
#include "seqpi/x_types.hpp"

namespace seqpi::oracle {

namespace {

// Environment-passing derivation check. Each rule's side conditions are
// tested with exact type equality; bound connector types come from assign.
struct Validator {
  const std::map<std::string, TypePtr>* assign;
  std::map<std::string, TypePtr> socks, plugs;

  const TypePtr* bound(const std::string& n) const {
    auto it = assign->find(n);
    return it == assign->end() ? nullptr : &it->second;
  }

  bool insert_sock(const std::string& n, const TypePtr& t) {
    return socks.emplace(n, t).second;
  }
  bool insert_plug(const std::string& n, const TypePtr& t) {
    return plugs.emplace(n, t).second;
  }

  bool rec(const XPtr& p) {
    switch (p->kind) {
      case XKind::Capsule: {
        auto si = socks.find(p->s1);
        auto pi = plugs.find(p->p1);
        return si != socks.end() && pi != plugs.end() &&
               type_equal(si->second, pi->second);
      }
      case XKind::Export: {
        auto oi = plugs.find(p->p2);
        if (oi == plugs.end()) return false;
        const TypePtr* a = bound(p->s1);
        const TypePtr* b = bound(p->p1);
        if (!a || !b) return false;
        if (!type_equal(oi->second, type_arrow(*a, *b))) return false;
        if (!insert_sock(p->s1, *a)) return false;
        if (!insert_plug(p->p1, *b)) {
          socks.erase(p->s1);
          return false;
        }
        bool ok = rec(p->left);
        socks.erase(p->s1);
        plugs.erase(p->p1);
        return ok;
      }
      case XKind::Import: {
        auto yi = socks.find(p->s1);
        if (yi == socks.end() || !yi->second->from) return false;
        const TypePtr* a = bound(p->p1);
        const TypePtr* b = bound(p->s2);
        if (!a || !b) return false;
        if (!type_equal(*a, yi->second->from) || !type_equal(*b, yi->second->to))
          return false;
        if (!insert_plug(p->p1, *a)) return false;
        bool ok = rec(p->left);
        plugs.erase(p->p1);
        if (!ok) return false;
        if (!insert_sock(p->s2, *b)) return false;
        ok = rec(p->right);
        socks.erase(p->s2);
        return ok;
      }
      case XKind::Cut:
      case XKind::CutL:
      case XKind::CutR: {
        const TypePtr* a = bound(p->p1);
        const TypePtr* b = bound(p->s1);
        if (!a || !b || !type_equal(*a, *b)) return false;
        if (!insert_plug(p->p1, *a)) return false;
        bool ok = rec(p->left);
        plugs.erase(p->p1);
        if (!ok) return false;
        if (!insert_sock(p->s1, *b)) return false;
        ok = rec(p->right);
        socks.erase(p->s1);
        return ok;
      }
    }
    return false;
  }
};

void collect_binders(const XPtr& p, std::vector<std::string>& out) {
  switch (p->kind) {
    case XKind::Capsule:
      return;
    case XKind::Export:
      out.push_back(p->s1);
      out.push_back(p->p1);
      collect_binders(p->left, out);
      return;
    case XKind::Import:
      out.push_back(p->p1);
      out.push_back(p->s2);
      collect_binders(p->left, out);
      collect_binders(p->right, out);
      return;
    case XKind::Cut:
    case XKind::CutL:
    case XKind::CutR:
      out.push_back(p->p1);
      out.push_back(p->s1);
      collect_binders(p->left, out);
      collect_binders(p->right, out);
      return;
  }
}

}  // namespace

bool validate_x_typing(const XPtr& p, const ContextPair& ctx,
                       const std::map<std::string, TypePtr>& assign) {
  Validator v;
  v.assign = &assign;
  v.socks = ctx.gamma;
  v.plugs = ctx.delta;
  return v.rec(p);
}

bool typable_by_search(const XPtr& p, int type_depth) {
  FreshSupply supply;
  XPtr q = refresh(p, supply);

  // Types over one base constant with nesting depth <= type_depth.
  std::vector<TypePtr> pool{type_leaf("*")};
  for (int d = 0; d < type_depth; d++) {
    std::vector<TypePtr> next = pool;
    for (const TypePtr& a : pool)
      for (const TypePtr& b : pool) next.push_back(type_arrow(a, b));
    pool = std::move(next);
  }

  const std::set<std::string> fs = free_sockets(q), fp = free_plugs(q);
  std::vector<std::string> free_s(fs.begin(), fs.end());
  std::vector<std::string> free_p(fp.begin(), fp.end());
  std::vector<std::string> binders;
  collect_binders(q, binders);

  const std::size_t positions = free_s.size() + free_p.size() + binders.size();
  std::vector<std::size_t> pick(positions, 0);

  for (;;) {
    ContextPair ctx;
    std::map<std::string, TypePtr> assign;
    std::size_t i = 0;
    for (const std::string& n : free_s) ctx.gamma[n] = pool[pick[i++]];
    for (const std::string& n : free_p) ctx.delta[n] = pool[pick[i++]];
    for (const std::string& n : binders) assign[n] = pool[pick[i++]];
    if (validate_x_typing(q, ctx, assign)) return true;

    std::size_t j = 0;
    while (j < positions && ++pick[j] == pool.size()) pick[j++] = 0;
    if (j == positions) return false;
  }
}

}  // namespace seqpi::oracle
