#include "seqpi/lambda.hpp"

#include <functional>
#include <sstream>

namespace seqpi {

LamPtr lam_var(std::string name) {
  auto t = std::make_shared<LamTerm>();
  t->kind = LamKind::Var;
  t->var = std::move(name);
  return t;
}

LamPtr lam_abs(std::string var, LamPtr body) {
  auto t = std::make_shared<LamTerm>();
  t->kind = LamKind::Abs;
  t->var = std::move(var);
  t->left = std::move(body);
  return t;
}

LamPtr lam_app(LamPtr fun, LamPtr arg) {
  auto t = std::make_shared<LamTerm>();
  t->kind = LamKind::App;
  t->left = std::move(fun);
  t->right = std::move(arg);
  return t;
}

// ---------------------------------------------------------------------------
// parsing

namespace {

struct LamParser {
  const std::string& src;
  size_t pos = 0;
  int line = 1, col = 1;

  explicit LamParser(const std::string& s) : src(s) {}

  [[noreturn]] void fail(const std::string& msg) { throw ParseError(msg, line, col); }

  void bump(char c) {
    if (c == '\n') {
      line++;
      col = 1;
    } else {
      col++;
    }
    pos++;
  }

  void skip_ws() {
    while (pos < src.size()) {
      char c = src[pos];
      if (c == ' ' || c == '\t' || c == '\n' || c == '\r') {
        bump(c);
      } else if (c == '/' && pos + 1 < src.size() && src[pos + 1] == '/') {
        while (pos < src.size() && src[pos] != '\n') bump(src[pos]);
      } else {
        break;
      }
    }
  }

  bool peek_is(char c) {
    skip_ws();
    return pos < src.size() && src[pos] == c;
  }

  void expect(char c) {
    skip_ws();
    if (pos >= src.size() || src[pos] != c)
      fail(std::string("expected '") + c + "'");
    bump(c);
  }

  static bool ident_start(char c) {
    return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z');
  }
  static bool ident_char(char c) {
    return ident_start(c) || (c >= '0' && c <= '9') || c == '_' || c == '#';
  }

  std::string ident() {
    skip_ws();
    if (pos >= src.size() || !ident_start(src[pos])) fail("expected identifier");
    std::string out;
    while (pos < src.size() && ident_char(src[pos])) {
      out += src[pos];
      bump(src[pos]);
    }
    return out;
  }

  bool atom_ahead() {
    skip_ws();
    if (pos >= src.size()) return false;
    char c = src[pos];
    return c == '(' || c == '\\' || ident_start(c);
  }

  LamPtr atom() {
    skip_ws();
    if (pos >= src.size()) fail("unexpected end of input");
    char c = src[pos];
    if (c == '(') {
      bump(c);
      LamPtr m = term();
      expect(')');
      return m;
    }
    if (c == '\\') {
      bump(c);
      std::string v = ident();
      expect('.');
      return lam_abs(v, term());
    }
    return lam_var(ident());
  }

  LamPtr term() {
    LamPtr m = atom();
    while (atom_ahead()) m = lam_app(m, atom());
    return m;
  }
};

}  // namespace

LamPtr parse_lam(const std::string& text) {
  LamParser p(text);
  LamPtr m = p.term();
  p.skip_ws();
  if (p.pos != text.size()) p.fail("trailing input");
  return m;
}

// ---------------------------------------------------------------------------
// printing

namespace {

void print_lam_rec(const LamPtr& m, std::ostringstream& out, bool app_left, bool app_right) {
  switch (m->kind) {
    case LamKind::Var:
      out << m->var;
      return;
    case LamKind::Abs:
      // An abstraction in application position needs parentheses.
      if (app_left || app_right) out << "(";
      out << "\\" << m->var << ".";
      print_lam_rec(m->left, out, false, false);
      if (app_left || app_right) out << ")";
      return;
    case LamKind::App:
      if (app_right) out << "(";
      print_lam_rec(m->left, out, true, false);
      out << " ";
      print_lam_rec(m->right, out, false, true);
      if (app_right) out << ")";
      return;
  }
  out << "?";
}

}  // namespace

std::string print_lam(const LamPtr& m) {
  std::ostringstream out;
  print_lam_rec(m, out, false, false);
  return out.str();
}

// ---------------------------------------------------------------------------
// free variables, alpha equivalence

namespace {

void lam_free_rec(const LamPtr& m, std::set<std::string>& bound, std::set<std::string>& out) {
  switch (m->kind) {
    case LamKind::Var:
      if (!bound.count(m->var)) out.insert(m->var);
      return;
    case LamKind::Abs: {
      bool added = bound.insert(m->var).second;
      lam_free_rec(m->left, bound, out);
      if (added) bound.erase(m->var);
      return;
    }
    case LamKind::App:
      lam_free_rec(m->left, bound, out);
      lam_free_rec(m->right, bound, out);
      return;
  }
}

void lam_canon_rec(const LamPtr& m, std::vector<std::string>& stack, int& next,
                   std::map<std::string, int>& seen, std::ostringstream& out) {
  switch (m->kind) {
    case LamKind::Var: {
      for (size_t i = stack.size(); i-- > 0;) {
        if (stack[i] == m->var) {
          out << "%" << (stack.size() - 1 - i) << " ";
          return;
        }
      }
      out << "f[" << m->var << "] ";
      return;
    }
    case LamKind::Abs:
      out << "L ";
      stack.push_back(m->var);
      lam_canon_rec(m->left, stack, next, seen, out);
      stack.pop_back();
      return;
    case LamKind::App:
      out << "A ";
      lam_canon_rec(m->left, stack, next, seen, out);
      lam_canon_rec(m->right, stack, next, seen, out);
      return;
  }
}

std::string lam_canon(const LamPtr& m) {
  std::ostringstream out;
  std::vector<std::string> stack;
  std::map<std::string, int> seen;
  int next = 0;
  lam_canon_rec(m, stack, next, seen, out);
  return out.str();
}

void lam_all_names(const LamPtr& m, std::set<std::string>& out) {
  switch (m->kind) {
    case LamKind::Var:
      out.insert(m->var);
      return;
    case LamKind::Abs:
      out.insert(m->var);
      lam_all_names(m->left, out);
      return;
    case LamKind::App:
      lam_all_names(m->left, out);
      lam_all_names(m->right, out);
      return;
  }
}

}  // namespace

std::set<std::string> lam_free_vars(const LamPtr& m) {
  std::set<std::string> bound, out;
  lam_free_rec(m, bound, out);
  return out;
}

bool lam_alpha_eq(const LamPtr& a, const LamPtr& b) {
  return lam_canon(a) == lam_canon(b);
}

// ---------------------------------------------------------------------------
// substitution

namespace {

LamPtr subst_rec(const LamPtr& m, const std::string& var, const LamPtr& to,
                 const std::set<std::string>& to_free, std::set<std::string>& used) {
  switch (m->kind) {
    case LamKind::Var:
      return m->var == var ? to : m;
    case LamKind::Abs: {
      if (m->var == var) return m;  // shadowed
      if (to_free.count(m->var)) {
        // The binder would capture a free variable of the replacement:
        // rename the binder first.
        std::string base = m->var;
        size_t hash = base.rfind('#');
        if (hash != std::string::npos &&
            hash + 1 < base.size() &&
            base.find_first_not_of("0123456789", hash + 1) == std::string::npos)
          base = base.substr(0, hash);
        std::string fresh;
        for (int i = 0;; i++) {
          fresh = base + "#" + std::to_string(i);
          if (!used.count(fresh) && !to_free.count(fresh) && fresh != var) break;
        }
        used.insert(fresh);
        LamPtr body = subst_rec(m->left, m->var, lam_var(fresh), {}, used);
        return lam_abs(fresh, subst_rec(body, var, to, to_free, used));
      }
      return lam_abs(m->var, subst_rec(m->left, var, to, to_free, used));
    }
    case LamKind::App:
      return lam_app(subst_rec(m->left, var, to, to_free, used),
                     subst_rec(m->right, var, to, to_free, used));
  }
  return m;
}

}  // namespace

LamPtr lam_subst(const LamPtr& m, const std::string& var, const LamPtr& to) {
  std::set<std::string> to_free = lam_free_vars(to);
  std::set<std::string> used;
  lam_all_names(m, used);
  lam_all_names(to, used);
  return subst_rec(m, var, to, to_free, used);
}

namespace {

LamPtr refresh_lam_rec(const LamPtr& m, std::map<std::string, std::vector<std::string>>& env,
                       FreshSupply& supply, std::set<std::string>& used) {
  switch (m->kind) {
    case LamKind::Var: {
      auto it = env.find(m->var);
      if (it != env.end() && !it->second.empty()) return lam_var(it->second.back());
      return m;
    }
    case LamKind::Abs: {
      std::string fresh;
      do {
        fresh = supply.fresh(m->var);
      } while (used.count(fresh));
      used.insert(fresh);
      env[m->var].push_back(fresh);
      LamPtr body = refresh_lam_rec(m->left, env, supply, used);
      env[m->var].pop_back();
      return lam_abs(fresh, body);
    }
    case LamKind::App:
      return lam_app(refresh_lam_rec(m->left, env, supply, used),
                     refresh_lam_rec(m->right, env, supply, used));
  }
  return m;
}

}  // namespace

LamPtr lam_refresh(const LamPtr& m, FreshSupply& supply) {
  std::map<std::string, std::vector<std::string>> env;
  std::set<std::string> used;
  lam_all_names(m, used);
  return refresh_lam_rec(m, env, supply, used);
}

// ---------------------------------------------------------------------------
// beta reduction

namespace {

void beta_rec(const LamPtr& m, std::vector<LamPtr>& out,
              const std::function<LamPtr(LamPtr)>& wrap) {
  if (m->kind == LamKind::App && m->left->kind == LamKind::Abs) {
    out.push_back(wrap(lam_subst(m->left->left, m->left->var, m->right)));
  }
  switch (m->kind) {
    case LamKind::Var:
      return;
    case LamKind::Abs:
      beta_rec(m->left, out,
               [&](LamPtr r) { return wrap(lam_abs(m->var, std::move(r))); });
      return;
    case LamKind::App:
      beta_rec(m->left, out,
               [&](LamPtr r) { return wrap(lam_app(std::move(r), m->right)); });
      beta_rec(m->right, out,
               [&](LamPtr r) { return wrap(lam_app(m->left, std::move(r))); });
      return;
  }
}

}  // namespace

std::vector<LamPtr> beta_steps(const LamPtr& m) {
  std::vector<LamPtr> out;
  beta_rec(m, out, [](LamPtr r) { return r; });
  // Deduplicate alpha-equivalent reducts, keeping first (leftmost-outermost).
  std::vector<LamPtr> uniq;
  std::set<std::string> seen;
  for (auto& r : out)
    if (seen.insert(lam_canon(r)).second) uniq.push_back(r);
  return uniq;
}

// ---------------------------------------------------------------------------
// type inference

namespace {

struct LamInfer {
  Substitution subst;
  int next = 0;
  std::map<std::string, TypePtr> free_env;
  std::string error;

  TypePtr mint() { return type_leaf("?" + std::to_string(next++)); }

  bool unify_or(const TypePtr& a, const TypePtr& b, const std::string& where) {
    if (unify(a, b, subst)) return true;
    error = "type mismatch at " + where + ": " + print_type(subst.apply(a)) +
            " vs " + print_type(subst.apply(b));
    return false;
  }

  // Environment maps variable name to type; bound entries shadow outer ones.
  TypePtr run(const LamPtr& m, std::map<std::string, TypePtr>& env) {
    switch (m->kind) {
      case LamKind::Var: {
        auto it = env.find(m->var);
        if (it != env.end()) return it->second;
        auto fit = free_env.find(m->var);
        if (fit != free_env.end()) return fit->second;
        TypePtr t = mint();
        free_env[m->var] = t;
        return t;
      }
      case LamKind::Abs: {
        TypePtr a = mint();
        auto saved = env.find(m->var) != env.end()
                         ? std::optional<TypePtr>(env[m->var])
                         : std::nullopt;
        env[m->var] = a;
        TypePtr body = run(m->left, env);
        if (saved)
          env[m->var] = *saved;
        else
          env.erase(m->var);
        if (!body) return nullptr;
        return type_arrow(a, body);
      }
      case LamKind::App: {
        TypePtr f = run(m->left, env);
        if (!f) return nullptr;
        TypePtr x = run(m->right, env);
        if (!x) return nullptr;
        TypePtr r = mint();
        if (!unify_or(f, type_arrow(x, r), print_lam(m))) return nullptr;
        return r;
      }
    }
    return nullptr;
  }
};

}  // namespace

LamTypeResult infer_lam(const LamPtr& m) {
  LamInfer inf;
  std::map<std::string, TypePtr> env;
  TypePtr t = inf.run(m, env);
  LamTypeResult res;
  if (!t) {
    res.error = inf.error.empty() ? "untypable term" : inf.error;
    return res;
  }
  res.ok = true;
  res.type = inf.subst.apply(t);
  for (auto& [name, ty] : inf.free_env) res.env[name] = inf.subst.apply(ty);
  return res;
}

}  // namespace seqpi
