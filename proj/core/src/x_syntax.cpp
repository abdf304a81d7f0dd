#include "seqpi/x_syntax.hpp"

#include <cctype>

namespace seqpi {

// -------- construction --------

XPtr capsule(std::string sock, std::string plug) {
  auto n = std::make_shared<XNet>();
  n->kind = XKind::Capsule;
  n->s1 = std::move(sock);
  n->p1 = std::move(plug);
  return n;
}

XPtr export_net(std::string sock, XPtr body, std::string bound_plug, std::string out_plug) {
  auto n = std::make_shared<XNet>();
  n->kind = XKind::Export;
  n->s1 = std::move(sock);
  n->p1 = std::move(bound_plug);
  n->p2 = std::move(out_plug);
  n->left = std::move(body);
  return n;
}

XPtr import_net(XPtr left, std::string bound_plug, std::string mid_sock,
                std::string bound_sock, XPtr right) {
  auto n = std::make_shared<XNet>();
  n->kind = XKind::Import;
  n->left = std::move(left);
  n->p1 = std::move(bound_plug);
  n->s1 = std::move(mid_sock);
  n->s2 = std::move(bound_sock);
  n->right = std::move(right);
  return n;
}

XPtr cut_net(XKind cut_kind, XPtr left, std::string plug, std::string sock, XPtr right) {
  if (!is_cut_kind(cut_kind))
    throw std::invalid_argument("cut_net: kind is not a cut");
  auto n = std::make_shared<XNet>();
  n->kind = cut_kind;
  n->left = std::move(left);
  n->p1 = std::move(plug);
  n->s1 = std::move(sock);
  n->right = std::move(right);
  return n;
}

bool is_cut_kind(XKind k) {
  return k == XKind::Cut || k == XKind::CutL || k == XKind::CutR;
}

std::size_t net_size(const XPtr& p) {
  if (!p) return 0;
  return 1 + net_size(p->left) + net_size(p->right);
}

// -------- parsing --------

namespace {

struct XLexer {
  const std::string& src;
  std::size_t pos = 0;
  int line = 1, col = 1;

  explicit XLexer(const std::string& s) : src(s) {}

  void advance() {
    if (src[pos] == '\n') { line++; col = 1; } else { col++; }
    pos++;
  }

  void skip_ws() {
    while (pos < src.size() && std::isspace(static_cast<unsigned char>(src[pos])))
      advance();
  }

  bool eof() {
    skip_ws();
    return pos >= src.size();
  }

  [[noreturn]] void fail(const std::string& msg) {
    throw ParseError(msg, line, col);
  }

  char peek() {
    skip_ws();
    return pos < src.size() ? src[pos] : '\0';
  }

  void expect(char c) {
    skip_ws();
    if (pos >= src.size() || src[pos] != c)
      fail(std::string("expected '") + c + "'");
    advance();
  }

  std::string ident() {
    skip_ws();
    if (pos >= src.size() || !std::isalpha(static_cast<unsigned char>(src[pos])))
      fail("expected identifier");
    std::string out;
    while (pos < src.size()) {
      char c = src[pos];
      if (std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '#') {
        out += c;
        advance();
      } else {
        break;
      }
    }
    return out;
  }
};

XPtr parse_net(XLexer& lx, bool allow_active) {
  char c = lx.peek();
  if (c == '<') {
    lx.expect('<');
    std::string s = lx.ident();
    lx.expect('.');
    std::string p = lx.ident();
    lx.expect('>');
    return capsule(std::move(s), std::move(p));
  }
  std::string kw = lx.ident();
  if (kw == "exp") {
    lx.expect('(');
    std::string s = lx.ident();
    lx.expect(';');
    XPtr body = parse_net(lx, allow_active);
    lx.expect(';');
    std::string bp = lx.ident();
    lx.expect(')');
    lx.expect('.');
    std::string op = lx.ident();
    return export_net(std::move(s), std::move(body), std::move(bp), std::move(op));
  }
  if (kw == "imp") {
    lx.expect('(');
    XPtr left = parse_net(lx, allow_active);
    lx.expect('|');
    std::string bp = lx.ident();
    lx.expect('/');
    lx.expect('[');
    std::string mid = lx.ident();
    lx.expect(']');
    lx.expect('/');
    std::string bs = lx.ident();
    lx.expect('|');
    XPtr right = parse_net(lx, allow_active);
    lx.expect(')');
    return import_net(std::move(left), std::move(bp), std::move(mid), std::move(bs),
                      std::move(right));
  }
  if (kw == "cut" || kw == "cutL" || kw == "cutR") {
    XKind k = kw == "cut" ? XKind::Cut : (kw == "cutL" ? XKind::CutL : XKind::CutR);
    if (k != XKind::Cut && !allow_active)
      lx.fail("activated cut '" + kw + "' not allowed here (pass allow_active)");
    lx.expect('(');
    XPtr left = parse_net(lx, allow_active);
    lx.expect('|');
    std::string bp = lx.ident();
    lx.expect('/');
    std::string bs = lx.ident();
    lx.expect('|');
    XPtr right = parse_net(lx, allow_active);
    lx.expect(')');
    return cut_net(k, std::move(left), std::move(bp), std::move(bs), std::move(right));
  }
  lx.fail("expected a net ('<', exp, imp, cut, cutL, cutR), found '" + kw + "'");
}

}  // namespace

XPtr parse_xnet(const std::string& text, bool allow_active) {
  XLexer lx(text);
  XPtr p = parse_net(lx, allow_active);
  if (!lx.eof()) lx.fail("trailing input after net");
  return p;
}

std::string print_xnet(const XPtr& p) {
  switch (p->kind) {
    case XKind::Capsule:
      return "<" + p->s1 + "." + p->p1 + ">";
    case XKind::Export:
      return "exp(" + p->s1 + "; " + print_xnet(p->left) + "; " + p->p1 + ")." + p->p2;
    case XKind::Import:
      return "imp(" + print_xnet(p->left) + " | " + p->p1 + " / [" + p->s1 + "] / " +
             p->s2 + " | " + print_xnet(p->right) + ")";
    case XKind::Cut:
    case XKind::CutL:
    case XKind::CutR: {
      const char* kw = p->kind == XKind::Cut ? "cut" : (p->kind == XKind::CutL ? "cutL" : "cutR");
      return std::string(kw) + "(" + print_xnet(p->left) + " | " + p->p1 + " / " + p->s1 +
             " | " + print_xnet(p->right) + ")";
    }
  }
  return {};
}

// -------- free connectors --------

namespace {

void collect_free(const XPtr& p, std::set<std::string>& socks, std::set<std::string>& plugs) {
  switch (p->kind) {
    case XKind::Capsule:
      socks.insert(p->s1);
      plugs.insert(p->p1);
      return;
    case XKind::Export: {
      std::set<std::string> s, pl;
      collect_free(p->left, s, pl);
      s.erase(p->s1);
      pl.erase(p->p1);
      socks.insert(s.begin(), s.end());
      plugs.insert(pl.begin(), pl.end());
      plugs.insert(p->p2);
      return;
    }
    case XKind::Import: {
      std::set<std::string> s, pl;
      collect_free(p->left, s, pl);
      pl.erase(p->p1);
      socks.insert(s.begin(), s.end());
      plugs.insert(pl.begin(), pl.end());
      s.clear();
      pl.clear();
      collect_free(p->right, s, pl);
      s.erase(p->s2);
      socks.insert(s.begin(), s.end());
      plugs.insert(pl.begin(), pl.end());
      socks.insert(p->s1);
      return;
    }
    case XKind::Cut:
    case XKind::CutL:
    case XKind::CutR: {
      std::set<std::string> s, pl;
      collect_free(p->left, s, pl);
      pl.erase(p->p1);
      socks.insert(s.begin(), s.end());
      plugs.insert(pl.begin(), pl.end());
      s.clear();
      pl.clear();
      collect_free(p->right, s, pl);
      s.erase(p->s1);
      socks.insert(s.begin(), s.end());
      plugs.insert(pl.begin(), pl.end());
      return;
    }
  }
}

}  // namespace

std::set<std::string> free_sockets(const XPtr& p) {
  std::set<std::string> s, pl;
  collect_free(p, s, pl);
  return s;
}

std::set<std::string> free_plugs(const XPtr& p) {
  std::set<std::string> s, pl;
  collect_free(p, s, pl);
  return pl;
}

std::set<Connector> free_connectors(const XPtr& p) {
  std::set<std::string> s, pl;
  collect_free(p, s, pl);
  std::set<Connector> out;
  for (const auto& n : s) out.insert({n, ConnKind::Socket});
  for (const auto& n : pl) out.insert({n, ConnKind::Plug});
  return out;
}

bool introduces_socket(const XPtr& p, const std::string& x) {
  if (p->kind == XKind::Capsule) return p->s1 == x;
  if (p->kind != XKind::Import || p->s1 != x) return false;
  if (free_sockets(p->left).count(x)) return false;
  auto fs = free_sockets(p->right);
  fs.erase(p->s2);
  return fs.count(x) == 0;
}

bool introduces_plug(const XPtr& p, const std::string& a) {
  if (p->kind == XKind::Capsule) return p->p1 == a;
  if (p->kind != XKind::Export || p->p2 != a) return false;
  auto fp = free_plugs(p->left);
  fp.erase(p->p1);
  return fp.count(a) == 0;
}

// -------- alpha equivalence --------

namespace {

// Scope maps for canonical printing: bound names print as %k with k a
// global binder counter, free names print verbatim. Sockets and plugs
// occupy distinct grammar positions so one counter serves both.
struct CanonEnv {
  std::vector<std::pair<std::string, int>> socks, plugs;
  int next = 0;

  int push(std::vector<std::pair<std::string, int>>& v, const std::string& n) {
    v.emplace_back(n, next++);
    return static_cast<int>(v.size()) - 1;
  }
  void pop(std::vector<std::pair<std::string, int>>& v) { v.pop_back(); }

  std::string look(const std::vector<std::pair<std::string, int>>& v, const std::string& n) {
    for (auto it = v.rbegin(); it != v.rend(); ++it)
      if (it->first == n) return "%" + std::to_string(it->second);
    return n;
  }
};

void canon_rec(const XPtr& p, CanonEnv& env, std::string& out) {
  switch (p->kind) {
    case XKind::Capsule:
      out += "<";
      out += env.look(env.socks, p->s1);
      out += ".";
      out += env.look(env.plugs, p->p1);
      out += ">";
      return;
    case XKind::Export: {
      out += "exp(;";
      env.push(env.socks, p->s1);
      env.push(env.plugs, p->p1);
      canon_rec(p->left, env, out);
      env.pop(env.plugs);
      env.pop(env.socks);
      out += ").";
      out += env.look(env.plugs, p->p2);
      return;
    }
    case XKind::Import: {
      out += "imp(";
      env.push(env.plugs, p->p1);
      canon_rec(p->left, env, out);
      env.pop(env.plugs);
      out += "|[";
      out += env.look(env.socks, p->s1);
      out += "]|";
      env.push(env.socks, p->s2);
      canon_rec(p->right, env, out);
      env.pop(env.socks);
      out += ")";
      return;
    }
    case XKind::Cut:
    case XKind::CutL:
    case XKind::CutR: {
      out += p->kind == XKind::Cut ? "cut(" : (p->kind == XKind::CutL ? "cutL(" : "cutR(");
      env.push(env.plugs, p->p1);
      canon_rec(p->left, env, out);
      env.pop(env.plugs);
      out += "|";
      env.push(env.socks, p->s1);
      canon_rec(p->right, env, out);
      env.pop(env.socks);
      out += ")";
      return;
    }
  }
}

}  // namespace

std::string alpha_canon_xnet(const XPtr& p) {
  CanonEnv env;
  std::string out;
  out.reserve(net_size(p) * 8);
  canon_rec(p, env, out);
  return out;
}

bool alpha_eq(const XPtr& a, const XPtr& b) {
  if (a == b) return true;
  return alpha_canon_xnet(a) == alpha_canon_xnet(b);
}

// -------- fresh names and refreshing --------

std::string FreshSupply::fresh(std::string_view base) {
  auto hash = base.rfind('#');
  if (hash != std::string_view::npos && hash > 0 && hash + 1 < base.size()) {
    bool digits = true;
    for (std::size_t i = hash + 1; i < base.size(); i++)
      if (!std::isdigit(static_cast<unsigned char>(base[i]))) { digits = false; break; }
    if (digits) base = base.substr(0, hash);
  }
  std::string out(base);
  out += '#';
  out += std::to_string(next++);
  return out;
}

namespace {

struct RenameEnv {
  std::vector<std::pair<std::string, std::string>> socks, plugs;
  // Every name occurring anywhere in the input, so a minted binder can
  // never collide with a pre-existing free name (inputs may already carry
  // machine suffixes from another supply).
  std::set<std::string> used;

  const std::string& look(const std::vector<std::pair<std::string, std::string>>& v,
                          const std::string& n) const {
    for (auto it = v.rbegin(); it != v.rend(); ++it)
      if (it->first == n) return it->second;
    return n;
  }

  std::string mint(FreshSupply& supply, const std::string& base) {
    for (;;) {
      std::string n = supply.fresh(base);
      if (used.insert(n).second) return n;
    }
  }
};

void collect_names(const XPtr& p, std::set<std::string>& out) {
  switch (p->kind) {
    case XKind::Capsule:
      out.insert(p->s1);
      out.insert(p->p1);
      return;
    case XKind::Export:
      out.insert(p->s1);
      out.insert(p->p1);
      out.insert(p->p2);
      collect_names(p->left, out);
      return;
    case XKind::Import:
      out.insert(p->p1);
      out.insert(p->s1);
      out.insert(p->s2);
      collect_names(p->left, out);
      collect_names(p->right, out);
      return;
    default:
      out.insert(p->p1);
      out.insert(p->s1);
      collect_names(p->left, out);
      collect_names(p->right, out);
      return;
  }
}

XPtr refresh_rec(const XPtr& p, FreshSupply& supply, RenameEnv& env) {
  switch (p->kind) {
    case XKind::Capsule:
      return capsule(env.look(env.socks, p->s1), env.look(env.plugs, p->p1));
    case XKind::Export: {
      std::string ns = env.mint(supply, p->s1);
      std::string np = env.mint(supply, p->p1);
      env.socks.emplace_back(p->s1, ns);
      env.plugs.emplace_back(p->p1, np);
      XPtr body = refresh_rec(p->left, supply, env);
      env.plugs.pop_back();
      env.socks.pop_back();
      return export_net(std::move(ns), std::move(body), std::move(np),
                        env.look(env.plugs, p->p2));
    }
    case XKind::Import: {
      std::string np = env.mint(supply, p->p1);
      env.plugs.emplace_back(p->p1, np);
      XPtr left = refresh_rec(p->left, supply, env);
      env.plugs.pop_back();
      std::string nb = env.mint(supply, p->s2);
      env.socks.emplace_back(p->s2, nb);
      XPtr right = refresh_rec(p->right, supply, env);
      env.socks.pop_back();
      return import_net(std::move(left), std::move(np), env.look(env.socks, p->s1),
                        std::move(nb), std::move(right));
    }
    case XKind::Cut:
    case XKind::CutL:
    case XKind::CutR: {
      std::string np = env.mint(supply, p->p1);
      env.plugs.emplace_back(p->p1, np);
      XPtr left = refresh_rec(p->left, supply, env);
      env.plugs.pop_back();
      std::string ns = env.mint(supply, p->s1);
      env.socks.emplace_back(p->s1, ns);
      XPtr right = refresh_rec(p->right, supply, env);
      env.socks.pop_back();
      return cut_net(p->kind, std::move(left), std::move(np), std::move(ns), std::move(right));
    }
  }
  return nullptr;
}

bool binds_name(const XPtr& p, const std::string& n, ConnKind kind) {
  bool here = false;
  switch (p->kind) {
    case XKind::Capsule:
      return false;
    case XKind::Export:
      here = (kind == ConnKind::Socket && p->s1 == n) || (kind == ConnKind::Plug && p->p1 == n);
      return here || binds_name(p->left, n, kind);
    case XKind::Import:
      here = (kind == ConnKind::Plug && p->p1 == n) || (kind == ConnKind::Socket && p->s2 == n);
      return here || binds_name(p->left, n, kind) || binds_name(p->right, n, kind);
    default:
      here = (kind == ConnKind::Plug && p->p1 == n) || (kind == ConnKind::Socket && p->s1 == n);
      return here || binds_name(p->left, n, kind) || binds_name(p->right, n, kind);
  }
}

XPtr rename_rec(const XPtr& p, const std::string& from, const std::string& to, ConnKind kind) {
  auto sub = [&](const std::string& n) { return n == from ? to : n; };
  switch (p->kind) {
    case XKind::Capsule:
      if (kind == ConnKind::Socket) return capsule(sub(p->s1), p->p1);
      return capsule(p->s1, sub(p->p1));
    case XKind::Export: {
      bool shadowed = (kind == ConnKind::Socket && p->s1 == from) ||
                      (kind == ConnKind::Plug && p->p1 == from);
      XPtr body = shadowed ? p->left : rename_rec(p->left, from, to, kind);
      std::string out = kind == ConnKind::Plug ? sub(p->p2) : p->p2;
      return export_net(p->s1, std::move(body), p->p1, std::move(out));
    }
    case XKind::Import: {
      bool lsh = kind == ConnKind::Plug && p->p1 == from;
      bool rsh = kind == ConnKind::Socket && p->s2 == from;
      XPtr left = lsh ? p->left : rename_rec(p->left, from, to, kind);
      XPtr right = rsh ? p->right : rename_rec(p->right, from, to, kind);
      std::string mid = kind == ConnKind::Socket ? sub(p->s1) : p->s1;
      return import_net(std::move(left), p->p1, std::move(mid), p->s2, std::move(right));
    }
    default: {
      bool lsh = kind == ConnKind::Plug && p->p1 == from;
      bool rsh = kind == ConnKind::Socket && p->s1 == from;
      XPtr left = lsh ? p->left : rename_rec(p->left, from, to, kind);
      XPtr right = rsh ? p->right : rename_rec(p->right, from, to, kind);
      return cut_net(p->kind, std::move(left), p->p1, p->s1, std::move(right));
    }
  }
}

}  // namespace

XPtr refresh(const XPtr& p, FreshSupply& supply) {
  RenameEnv env;
  collect_names(p, env.used);
  return refresh_rec(p, supply, env);
}

XPtr rename_connector(const XPtr& p, const Connector& from, const Connector& to) {
  if (from.kind != to.kind)
    throw std::invalid_argument("rename_connector: socket/plug kind mismatch");
  if (from.id == to.id) return p;
  if (binds_name(p, to.id, to.kind))
    throw std::invalid_argument("rename_connector: target '" + to.id +
                                "' is bound in the net; refresh first");
  return rename_rec(p, from.id, to.id, from.kind);
}

}  // namespace seqpi
