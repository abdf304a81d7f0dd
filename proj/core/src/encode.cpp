#include "seqpi/encode.hpp"

#include <set>

namespace seqpi {

PiPtr forwarder(const PiName& a, const PiName& b) {
  std::string o = "o";
  for (int i = 0; o == a || o == b; i++) o = "o#" + std::to_string(i);
  return pi_in(a, o, pi_out(b, data_name(o)));
}

// ---------------------------------------------------------------------------
// X nets into pi

namespace {

void x_names(const XPtr& p, std::set<std::string>& out) {
  if (!p) return;
  switch (p->kind) {
    case XKind::Capsule:
      out.insert(p->s1);
      out.insert(p->p1);
      return;
    case XKind::Export:
      out.insert(p->s1);
      out.insert(p->p1);
      out.insert(p->p2);
      x_names(p->left, out);
      return;
    case XKind::Import:
      out.insert(p->s1);
      out.insert(p->s2);
      out.insert(p->p1);
      x_names(p->left, out);
      x_names(p->right, out);
      return;
    case XKind::Cut:
    case XKind::CutL:
    case XKind::CutR:
      out.insert(p->s1);
      out.insert(p->p1);
      x_names(p->left, out);
      x_names(p->right, out);
      return;
  }
}

struct XEncoder {
  FreshSupply& supply;
  std::set<std::string> used;

  PiName mint(const std::string& base) {
    std::string n;
    do {
      n = supply.fresh(base);
    } while (used.count(n));
    used.insert(n);
    return n;
  }

  PiPtr enc(const XPtr& p) {
    switch (p->kind) {
      case XKind::Capsule:
        // <x.a>  becomes the forwarder x(o).a<o>
        return forwarder(p->s1, p->p1);
      case XKind::Export: {
        // exp(x; P; a).b  becomes  nu x nu a ( [P] | b<<x,a>> )
        PiPtr body = enc(p->left);
        PiPtr emit = pi_out(p->p2, data_pair(data_name(p->s1), data_name(p->p1)));
        return pi_res(p->s1, pi_res(p->p1, pi_par(body, emit)));
      }
      case XKind::Import: {
        // imp(P | a / [y] / x | Q)  becomes
        //   y(<v,d>).( nu a !( [P] | a>>v ) | nu x !( d>>x | [Q] ) )
        PiName w = mint("w");
        PiName v = mint("v");
        PiName d = mint("d");
        PiPtr lhs = pi_res(p->p1, pi_repl(pi_par(enc(p->left), forwarder(p->p1, v))));
        PiPtr rhs = pi_res(p->s2, pi_repl(pi_par(forwarder(d, p->s2), enc(p->right))));
        return pi_in(p->s1, w, pi_let(v, d, data_name(w), pi_par(lhs, rhs)));
      }
      case XKind::Cut:
      case XKind::CutL:
      case XKind::CutR: {
        // cut(P | a / x | Q), activated or not, becomes
        //   nu a ( [P] | ! nu x ( a>>x | [Q] ) ) | nu x ( nu a !( [P] | a>>x ) | [Q] )
        const PiName a = p->p1;
        const PiName x = p->s1;

        PiPtr left1 = enc(p->left);
        PiPtr right1 = enc(p->right);
        PiPtr branch_l =
            pi_res(a, pi_par(left1, pi_repl(pi_res(x, pi_par(forwarder(a, x), right1)))));

        // The second branch gets its own bound names throughout, and fresh
        // spellings for the cut connectors themselves.
        PiName a2 = mint(a);
        PiName x2 = mint(x);
        PiPtr left2 = subst_data(refresh_pi(enc(p->left), supply, used), a, data_name(a2));
        PiPtr right2 = subst_data(refresh_pi(enc(p->right), supply, used), x, data_name(x2));
        PiPtr branch_r =
            pi_res(x2, pi_par(pi_res(a2, pi_repl(pi_par(left2, forwarder(a2, x2)))), right2));

        return pi_par(branch_l, branch_r);
      }
    }
    throw EncodeError("malformed net");
  }
};

}  // namespace

PiPtr encode_x(const XPtr& p, FreshSupply& supply) {
  XPtr q = refresh(p, supply);
  std::set<std::string> plug_ids = free_plugs(q);
  for (const auto& s : free_sockets(q))
    if (plug_ids.count(s))
      throw EncodeError("free socket and free plug share the spelling '" + s +
                        "'; rename one side before encoding");
  XEncoder e{supply, {}};
  x_names(q, e.used);
  return e.enc(q);
}

PiPtr encode_x(const XPtr& p) {
  FreshSupply supply;
  return encode_x(p, supply);
}

// ---------------------------------------------------------------------------
// lambda terms into X

namespace {

void lam_binders(const LamPtr& m, std::set<std::string>& out) {
  switch (m->kind) {
    case LamKind::Var:
      return;
    case LamKind::Abs:
      out.insert(m->var);
      lam_binders(m->left, out);
      return;
    case LamKind::App:
      lam_binders(m->left, out);
      lam_binders(m->right, out);
      return;
  }
}

struct LamEncoder {
  FreshSupply& supply;
  std::set<std::string> used;

  std::string mint(const std::string& base) {
    std::string n;
    do {
      n = supply.fresh(base);
    } while (used.count(n));
    used.insert(n);
    return n;
  }

  XPtr enc(const LamPtr& m, const std::string& plug) {
    switch (m->kind) {
      case LamKind::Var:
        // x  becomes  <x.plug>
        return capsule(m->var, plug);
      case LamKind::Abs: {
        // \x.M  becomes  exp(x; [M]b; b).plug
        std::string b = mint("b");
        return export_net(m->var, enc(m->left, b), b, plug);
      }
      case LamKind::App: {
        // M N  becomes  cut([M]g | g / x | imp([N]b | b / [x] / y | <y.plug>))
        std::string g = mint("g");
        std::string b = mint("b");
        std::string x = mint("x");
        std::string y = mint("y");
        XPtr fun = enc(m->left, g);
        XPtr arg = enc(m->right, b);
        return cut_net(XKind::Cut, fun, g, x, import_net(arg, b, x, y, capsule(y, plug)));
      }
    }
    throw EncodeError("malformed term");
  }
};

}  // namespace

XPtr encode_lam_to_x(const LamPtr& m, const std::string& plug, FreshSupply& supply) {
  LamPtr q = lam_refresh(m, supply);
  LamEncoder e{supply, {}};
  for (const auto& v : lam_free_vars(q)) e.used.insert(v);
  lam_binders(q, e.used);
  if (e.used.count(plug))
    throw EncodeError("output plug '" + plug + "' clashes with a term variable");
  e.used.insert(plug);
  return e.enc(q, plug);
}

XPtr encode_lam_to_x(const LamPtr& m, const std::string& plug) {
  FreshSupply supply;
  return encode_lam_to_x(m, plug, supply);
}

PiPtr encode_lam_to_pi(const LamPtr& m, const std::string& plug, FreshSupply& supply) {
  return encode_x(encode_lam_to_x(m, plug, supply), supply);
}

PiPtr encode_lam_to_pi(const LamPtr& m, const std::string& plug) {
  FreshSupply supply;
  return encode_lam_to_pi(m, plug, supply);
}

PiContextPair pi_context_of(const ContextPair& ctx) {
  PiContextPair out;
  for (const auto& [name, ty] : ctx.gamma) out.gamma[name] = ty;
  for (const auto& [name, ty] : ctx.delta) out.delta[name] = ty;
  return out;
}

}  // namespace seqpi
