#include "seqpi/x_rewrite.hpp"

#include <algorithm>
#include <cstdint>
#include <set>

namespace seqpi {

const char* rule_name(XRule r) {
  switch (r) {
    case XRule::Ax: return "ax";
    case XRule::ExpRen: return "exp-ren";
    case XRule::ImpRen: return "imp-ren";
    case XRule::ExpImpLeft: return "exp-imp-left";
    case XRule::ExpImpRight: return "exp-imp-right";
    case XRule::ActL: return "act-l";
    case XRule::ActR: return "act-r";
    case XRule::PropDL: return "prop-d-l";
    case XRule::PropCapL: return "prop-cap-l";
    case XRule::PropExpOutsL: return "prop-exp-outs-l";
    case XRule::PropExpInsL: return "prop-exp-ins-l";
    case XRule::PropImpL: return "prop-imp-l";
    case XRule::PropCutL: return "prop-cut-l";
    case XRule::PropDR: return "prop-d-r";
    case XRule::PropCapR: return "prop-cap-r";
    case XRule::PropExpR: return "prop-exp-r";
    case XRule::PropImpOutsR: return "prop-imp-outs-r";
    case XRule::PropImpInsR: return "prop-imp-ins-r";
    case XRule::PropCutR: return "prop-cut-r";
    case XRule::GcL: return "gc-l";
    case XRule::GcR: return "gc-r";
    case XRule::RenL: return "ren-l";
    case XRule::RenR: return "ren-r";
  }
  return "?";
}

bool rule_is_admissible(XRule r) {
  return r == XRule::GcL || r == XRule::GcR || r == XRule::RenL || r == XRule::RenR;
}

std::string print_path(const std::vector<int>& path) {
  std::string out = "[";
  for (std::size_t i = 0; i < path.size(); i++) {
    if (i) out += ",";
    out += std::to_string(path[i]);
  }
  out += "]";
  return out;
}

// -------- redex search --------
//
// One post-order pass computes, per node, bitmask free-socket and
// free-plug sets over per-call interning tables, so the "introduces"
// side conditions are O(1) at each cut. Nets with more than 64 distinct
// names in one namespace fall back to wide masks; the search itself is
// identical.

namespace {

struct MaskOverflow {};

// Interning table sized to the Bits64 domain. Inline storage keeps the
// narrow scan allocation-free; the 65th distinct name bails to the wide
// fallback, which is also the right call when a binder-only name lands
// past bit 63.
struct NameTab {
  const std::string* names[64];
  std::size_t n = 0;

  std::size_t id(const std::string& s) {
    for (std::size_t i = 0; i < n; i++)
      if (names[i] == &s || *names[i] == s) return i;
    if (n == 64) throw MaskOverflow{};
    names[n] = &s;
    return n++;
  }
};

struct NameTabDyn {
  std::vector<const std::string*> names;

  std::size_t id(const std::string& s) {
    for (std::size_t i = 0; i < names.size(); i++)
      if (*names[i] == s) return i;
    names.push_back(&s);
    return names.size() - 1;
  }
};

struct Bits64 {
  std::uint64_t v = 0;

  static Bits64 bit(std::size_t i) {
    if (i >= 64) throw MaskOverflow{};
    return {std::uint64_t{1} << i};
  }
  Bits64 operator|(Bits64 o) const { return {v | o.v}; }
  Bits64 without(std::size_t i) const {
    return i >= 64 ? *this : Bits64{v & ~(std::uint64_t{1} << i)};
  }
  bool test(std::size_t i) const { return i < 64 && (v >> i) & 1; }
};

struct BitsDyn {
  std::vector<std::uint64_t> w;

  static BitsDyn bit(std::size_t i) {
    BitsDyn b;
    b.w.resize(i / 64 + 1, 0);
    b.w[i / 64] = std::uint64_t{1} << (i % 64);
    return b;
  }
  BitsDyn operator|(const BitsDyn& o) const {
    BitsDyn r;
    r.w.resize(std::max(w.size(), o.w.size()), 0);
    for (std::size_t i = 0; i < w.size(); i++) r.w[i] = w[i];
    for (std::size_t i = 0; i < o.w.size(); i++) r.w[i] |= o.w[i];
    return r;
  }
  BitsDyn without(std::size_t i) const {
    BitsDyn r = *this;
    if (i / 64 < r.w.size()) r.w[i / 64] &= ~(std::uint64_t{1} << (i % 64));
    return r;
  }
  bool test(std::size_t i) const {
    return i / 64 < w.size() && (w[i / 64] >> (i % 64)) & 1;
  }
};

enum class ScanMode { Core, Admissible };

template <class M>
struct ScanRes {
  M fs, fp;
  bool intro;  // export: introduces its outer plug; import: its middle socket
};

template <class M, class Tab>
ScanRes<M> scan_rec(const XNet* p, Tab& socks, Tab& plugs, std::vector<int>& path,
                    std::vector<Redex>& out, ScanMode mode, Strategy strat) {
  switch (p->kind) {
    case XKind::Capsule:
      return {M::bit(socks.id(p->s1)), M::bit(plugs.id(p->p1)), true};

    case XKind::Export: {
      path.push_back(0);
      ScanRes<M> b = scan_rec<M, Tab>(p->left.get(), socks, plugs, path, out, mode, strat);
      path.pop_back();
      M contrib = b.fp.without(plugs.id(p->p1));
      std::size_t outp = plugs.id(p->p2);
      bool intro = !contrib.test(outp);
      return {b.fs.without(socks.id(p->s1)), contrib | M::bit(outp), intro};
    }

    case XKind::Import: {
      path.push_back(0);
      ScanRes<M> l = scan_rec<M, Tab>(p->left.get(), socks, plugs, path, out, mode, strat);
      path.back() = 1;
      ScanRes<M> r = scan_rec<M, Tab>(p->right.get(), socks, plugs, path, out, mode, strat);
      path.pop_back();
      M contrib = l.fs | r.fs.without(socks.id(p->s2));
      std::size_t mid = socks.id(p->s1);
      bool intro = !contrib.test(mid);
      return {contrib | M::bit(mid), l.fp.without(plugs.id(p->p1)) | r.fp, intro};
    }

    case XKind::Cut:
    case XKind::CutL:
    case XKind::CutR: {
      path.push_back(0);
      ScanRes<M> l = scan_rec<M, Tab>(p->left.get(), socks, plugs, path, out, mode, strat);
      path.back() = 1;
      ScanRes<M> r = scan_rec<M, Tab>(p->right.get(), socks, plugs, path, out, mode, strat);
      path.pop_back();

      const XNet* L = p->left.get();
      const XNet* R = p->right.get();
      auto emit = [&](XRule rule) { out.push_back({path, rule}); };

      if (p->kind == XKind::Cut) {
        bool li = L->kind == XKind::Capsule ? L->p1 == p->p1
                  : (L->kind == XKind::Export && L->p2 == p->p1 && l.intro);
        bool ri = R->kind == XKind::Capsule ? R->s1 == p->s1
                  : (R->kind == XKind::Import && R->s1 == p->s1 && r.intro);
        if (mode == ScanMode::Core) {
          if (li && ri) {
            bool lcap = L->kind == XKind::Capsule;
            bool rcap = R->kind == XKind::Capsule;
            if (lcap && rcap) emit(XRule::Ax);
            else if (!lcap && rcap) emit(XRule::ExpRen);
            else if (lcap && !rcap) emit(XRule::ImpRen);
            else {
              if (strat != Strategy::CBN) emit(XRule::ExpImpLeft);
              if (strat != Strategy::CBV) emit(XRule::ExpImpRight);
            }
          }
          bool actl = !li, actr = !ri;
          if (strat == Strategy::CBN) actl = !li && ri;
          if (strat == Strategy::CBV) actr = li && !ri;
          if (actl) emit(XRule::ActL);
          if (actr) emit(XRule::ActR);
        } else {
          if (R->kind == XKind::Capsule && R->s1 == p->s1) emit(XRule::RenL);
          if (L->kind == XKind::Capsule && L->p1 == p->p1) emit(XRule::RenR);
        }
      } else if (p->kind == XKind::CutL) {
        if (mode == ScanMode::Core) {
          switch (L->kind) {
            case XKind::Capsule:
              emit(L->p1 == p->p1 ? XRule::PropDL : XRule::PropCapL);
              break;
            case XKind::Export:
              emit(L->p2 == p->p1 ? XRule::PropExpOutsL : XRule::PropExpInsL);
              break;
            case XKind::Import:
              emit(XRule::PropImpL);
              break;
            case XKind::Cut:
              emit(XRule::PropCutL);
              break;
            default:
              break;  // stuck on a nested activated cut
          }
        } else {
          if (!l.fp.test(plugs.id(p->p1))) emit(XRule::GcL);
        }
      } else {  // CutR
        if (mode == ScanMode::Core) {
          switch (R->kind) {
            case XKind::Capsule:
              emit(R->s1 == p->s1 ? XRule::PropDR : XRule::PropCapR);
              break;
            case XKind::Export:
              emit(XRule::PropExpR);
              break;
            case XKind::Import:
              emit(R->s1 == p->s1 ? XRule::PropImpOutsR : XRule::PropImpInsR);
              break;
            case XKind::Cut:
              emit(XRule::PropCutR);
              break;
            default:
              break;
          }
        } else {
          if (!r.fs.test(socks.id(p->s1))) emit(XRule::GcR);
        }
      }

      M fs = l.fs | r.fs.without(socks.id(p->s1));
      M fp = l.fp.without(plugs.id(p->p1)) | r.fp;
      return {fs, fp, false};
    }
  }
  return {};
}

std::vector<Redex> scan(const XPtr& p, Strategy strat, ScanMode mode) {
  // scratch survives across calls; enumeration sweeps hit this path
  // hundreds of millions of times, so per-call churn matters
  thread_local std::vector<int> path;
  path.clear();

  std::vector<Redex> out;
  try {
    NameTab socks, plugs;
    scan_rec<Bits64, NameTab>(p.get(), socks, plugs, path, out, mode, strat);
  } catch (MaskOverflow&) {
    out.clear();
    path.clear();
    NameTabDyn s2, p2;
    scan_rec<BitsDyn, NameTabDyn>(p.get(), s2, p2, path, out, mode, strat);
  }

  // emission is post-order, wanted order is by path; lists are tiny and
  // nearly sorted, so a stable in-place insertion beats a buffered sort
  for (std::size_t i = 1; i < out.size(); i++)
    for (std::size_t j = i; j > 0 && out[j].path < out[j - 1].path; j--)
      std::swap(out[j], out[j - 1]);
  return out;
}

}  // namespace

std::vector<Redex> find_redexes(const XPtr& p, Strategy strategy) {
  return scan(p, strategy, ScanMode::Core);
}

std::vector<Redex> find_admissible(const XPtr& p) {
  return scan(p, Strategy::Full, ScanMode::Admissible);
}

// -------- applying a redex --------

namespace {

[[noreturn]] void mismatch(const std::string& what) { throw RedexMismatch("redex mismatch: " + what); }

XPtr build_logical(const XNet* n, XRule rule) {
  const XPtr& P = n->left;
  const XPtr& Q = n->right;
  const std::string& a = n->p1;
  const std::string& x = n->s1;
  switch (rule) {
    case XRule::Ax:
      if (P->kind != XKind::Capsule || P->p1 != a) mismatch("ax: left capsule");
      if (Q->kind != XKind::Capsule || Q->s1 != x) mismatch("ax: right capsule");
      return capsule(P->s1, Q->p1);
    case XRule::ExpRen:
      if (P->kind != XKind::Export || P->p2 != a || !introduces_plug(P, a))
        mismatch("exp-ren: left must introduce the cut plug");
      if (Q->kind != XKind::Capsule || Q->s1 != x) mismatch("exp-ren: right capsule");
      return export_net(P->s1, P->left, P->p1, Q->p1);
    case XRule::ImpRen:
      if (P->kind != XKind::Capsule || P->p1 != a) mismatch("imp-ren: left capsule");
      if (Q->kind != XKind::Import || Q->s1 != x || !introduces_socket(Q, x))
        mismatch("imp-ren: right must introduce the cut socket");
      return import_net(Q->left, Q->p1, P->s1, Q->s2, Q->right);
    case XRule::ExpImpLeft:
    case XRule::ExpImpRight: {
      if (P->kind != XKind::Export || P->p2 != a || !introduces_plug(P, a))
        mismatch("exp-imp: left must introduce the cut plug");
      if (Q->kind != XKind::Import || Q->s1 != x || !introduces_socket(Q, x))
        mismatch("exp-imp: right must introduce the cut socket");
      if (rule == XRule::ExpImpLeft)
        return cut_net(XKind::Cut, Q->left, Q->p1, P->s1,
                       cut_net(XKind::Cut, P->left, P->p1, Q->s2, Q->right));
      return cut_net(XKind::Cut, cut_net(XKind::Cut, Q->left, Q->p1, P->s1, P->left),
                     P->p1, Q->s2, Q->right);
    }
    default:
      mismatch("not a logical rule");
  }
}

XPtr build_at(const XNet* n, XRule rule, FreshSupply& supply) {
  const XPtr& P = n->left;
  const XPtr& Q = n->right;
  const std::string& a = n->p1;
  const std::string& x = n->s1;

  auto need_kind = [&](XKind k, const char* what) {
    if (n->kind != k) mismatch(what);
  };

  switch (rule) {
    case XRule::Ax:
    case XRule::ExpRen:
    case XRule::ImpRen:
    case XRule::ExpImpLeft:
    case XRule::ExpImpRight:
      need_kind(XKind::Cut, "logical rule needs a plain cut");
      return build_logical(n, rule);

    case XRule::ActL:
      need_kind(XKind::Cut, "act-l needs a plain cut");
      if (introduces_plug(P, a)) mismatch("act-l: left introduces the cut plug");
      return cut_net(XKind::CutL, P, a, x, Q);
    case XRule::ActR:
      need_kind(XKind::Cut, "act-r needs a plain cut");
      if (introduces_socket(Q, x)) mismatch("act-r: right introduces the cut socket");
      return cut_net(XKind::CutR, P, a, x, Q);

    case XRule::PropDL:
      need_kind(XKind::CutL, "prop-d-l needs cutL");
      if (P->kind != XKind::Capsule || P->p1 != a) mismatch("prop-d-l: left capsule on the cut plug");
      return cut_net(XKind::Cut, P, a, x, Q);
    case XRule::PropCapL:
      need_kind(XKind::CutL, "prop-cap-l needs cutL");
      if (P->kind != XKind::Capsule || P->p1 == a) mismatch("prop-cap-l: left capsule off the cut plug");
      return P;
    case XRule::PropExpOutsL: {
      need_kind(XKind::CutL, "prop-exp-outs-l needs cutL");
      if (P->kind != XKind::Export || P->p2 != a) mismatch("prop-exp-outs-l: left export on the cut plug");
      std::string g = supply.fresh(a);
      return cut_net(XKind::Cut,
                     export_net(P->s1, cut_net(XKind::CutL, P->left, a, x, Q), P->p1, g),
                     g, x, Q);
    }
    case XRule::PropExpInsL:
      need_kind(XKind::CutL, "prop-exp-ins-l needs cutL");
      if (P->kind != XKind::Export || P->p2 == a) mismatch("prop-exp-ins-l: left export off the cut plug");
      return export_net(P->s1, cut_net(XKind::CutL, P->left, a, x, Q), P->p1, P->p2);
    case XRule::PropImpL:
      need_kind(XKind::CutL, "prop-imp-l needs cutL");
      if (P->kind != XKind::Import) mismatch("prop-imp-l: left import");
      return import_net(cut_net(XKind::CutL, P->left, a, x, Q), P->p1, P->s1, P->s2,
                        cut_net(XKind::CutL, P->right, a, x, Q));
    case XRule::PropCutL:
      need_kind(XKind::CutL, "prop-cut-l needs cutL");
      if (P->kind != XKind::Cut) mismatch("prop-cut-l: left plain cut");
      return cut_net(XKind::Cut, cut_net(XKind::CutL, P->left, a, x, Q), P->p1, P->s1,
                     cut_net(XKind::CutL, P->right, a, x, Q));

    case XRule::PropDR:
      need_kind(XKind::CutR, "prop-d-r needs cutR");
      if (Q->kind != XKind::Capsule || Q->s1 != x) mismatch("prop-d-r: right capsule on the cut socket");
      return cut_net(XKind::Cut, P, a, x, Q);
    case XRule::PropCapR:
      need_kind(XKind::CutR, "prop-cap-r needs cutR");
      if (Q->kind != XKind::Capsule || Q->s1 == x) mismatch("prop-cap-r: right capsule off the cut socket");
      return Q;
    case XRule::PropExpR:
      need_kind(XKind::CutR, "prop-exp-r needs cutR");
      if (Q->kind != XKind::Export) mismatch("prop-exp-r: right export");
      return export_net(Q->s1, cut_net(XKind::CutR, P, a, x, Q->left), Q->p1, Q->p2);
    case XRule::PropImpOutsR: {
      need_kind(XKind::CutR, "prop-imp-outs-r needs cutR");
      if (Q->kind != XKind::Import || Q->s1 != x) mismatch("prop-imp-outs-r: right import on the cut socket");
      std::string z = supply.fresh(x);
      return cut_net(XKind::Cut, P, a, z,
                     import_net(cut_net(XKind::CutR, P, a, x, Q->left), Q->p1, z, Q->s2,
                                cut_net(XKind::CutR, P, a, x, Q->right)));
    }
    case XRule::PropImpInsR:
      need_kind(XKind::CutR, "prop-imp-ins-r needs cutR");
      if (Q->kind != XKind::Import || Q->s1 == x) mismatch("prop-imp-ins-r: right import off the cut socket");
      return import_net(cut_net(XKind::CutR, P, a, x, Q->left), Q->p1, Q->s1, Q->s2,
                        cut_net(XKind::CutR, P, a, x, Q->right));
    case XRule::PropCutR:
      need_kind(XKind::CutR, "prop-cut-r needs cutR");
      if (Q->kind != XKind::Cut) mismatch("prop-cut-r: right plain cut");
      return cut_net(XKind::Cut, cut_net(XKind::CutR, P, a, x, Q->left), Q->p1, Q->s1,
                     cut_net(XKind::CutR, P, a, x, Q->right));

    case XRule::GcL:
      need_kind(XKind::CutL, "gc-l needs cutL");
      if (free_plugs(P).count(a)) mismatch("gc-l: cut plug is free on the left");
      return P;
    case XRule::GcR:
      need_kind(XKind::CutR, "gc-r needs cutR");
      if (free_sockets(Q).count(x)) mismatch("gc-r: cut socket is free on the right");
      return Q;
    case XRule::RenL:
      need_kind(XKind::Cut, "ren-l needs a plain cut");
      if (Q->kind != XKind::Capsule || Q->s1 != x) mismatch("ren-l: right capsule on the cut socket");
      return rename_connector(P, {a, ConnKind::Plug}, {Q->p1, ConnKind::Plug});
    case XRule::RenR:
      need_kind(XKind::Cut, "ren-r needs a plain cut");
      if (P->kind != XKind::Capsule || P->p1 != a) mismatch("ren-r: left capsule on the cut plug");
      return rename_connector(Q, {x, ConnKind::Socket}, {P->s1, ConnKind::Socket});
  }
  mismatch("unknown rule");
}

XPtr rebuild(const XPtr& node, const std::vector<int>& path, std::size_t i, XRule rule,
             FreshSupply& supply) {
  if (i == path.size()) return build_at(node.get(), rule, supply);
  int c = path[i];
  switch (node->kind) {
    case XKind::Capsule:
      mismatch("path descends into a capsule");
    case XKind::Export:
      if (c != 0) mismatch("export has only child 0");
      return export_net(node->s1, rebuild(node->left, path, i + 1, rule, supply), node->p1,
                        node->p2);
    case XKind::Import:
      if (c == 0)
        return import_net(rebuild(node->left, path, i + 1, rule, supply), node->p1, node->s1,
                          node->s2, node->right);
      if (c == 1)
        return import_net(node->left, node->p1, node->s1, node->s2,
                          rebuild(node->right, path, i + 1, rule, supply));
      mismatch("import child index out of range");
    default:
      if (c == 0)
        return cut_net(node->kind, rebuild(node->left, path, i + 1, rule, supply), node->p1,
                       node->s1, node->right);
      if (c == 1)
        return cut_net(node->kind, node->left, node->p1, node->s1,
                       rebuild(node->right, path, i + 1, rule, supply));
      mismatch("cut child index out of range");
  }
}

}  // namespace

XPtr apply_redex(const XPtr& p, const Redex& r, FreshSupply& supply) {
  XPtr fresh = refresh(p, supply);
  return rebuild(fresh, r.path, 0, r.rule, supply);
}

std::vector<XPtr> step_all(const XPtr& p, FreshSupply& supply) {
  std::vector<XPtr> out;
  std::set<std::string> seen;
  for (const Redex& r : find_redexes(p)) {
    XPtr q = apply_redex(p, r, supply);
    if (seen.insert(alpha_canon_xnet(q)).second) out.push_back(q);
  }
  return out;
}

Trace reduce(const XPtr& p, Strategy strategy, std::size_t max_steps, FreshSupply& supply) {
  Trace t;
  t.initial = p;
  XPtr cur = p;
  for (;;) {
    std::vector<Redex> rs = find_redexes(cur, strategy);
    if (rs.empty()) break;
    if (t.steps.size() >= max_steps) {
      t.budget_exceeded = true;
      break;
    }
    TraceStep step;
    step.chosen = rs.front();
    step.alternatives.assign(rs.begin() + 1, rs.end());
    step.result = apply_redex(cur, step.chosen, supply);
    cur = step.result;
    t.steps.push_back(std::move(step));
  }
  return t;
}

std::string serialize_trace(const Trace& t) {
  std::string out = print_xnet(t.initial) + "\n";
  for (const TraceStep& s : t.steps) {
    out += print_path(s.chosen.path);
    out += " ";
    out += rule_name(s.chosen.rule);
    out += " => ";
    out += print_xnet(s.result);
    out += "\n";
  }
  if (t.budget_exceeded) out += "-- step budget exceeded\n";
  return out;
}

XPtr gc_renaming(const XPtr& p, FreshSupply& supply) {
  XPtr cur = p;
  for (;;) {
    std::vector<Redex> rs = find_admissible(cur);
    if (rs.empty()) return cur;
    cur = apply_redex(cur, rs.front(), supply);
  }
}

}  // namespace seqpi
