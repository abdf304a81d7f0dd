#include "seqpi/pi_syntax.hpp"

#include <algorithm>
#include <cassert>
#include <cctype>

namespace seqpi {

// -------- data --------

DataPtr data_name(PiName n) {
  auto d = std::make_shared<PiData>();
  d->name = std::move(n);
  return d;
}

DataPtr data_pair(DataPtr a, DataPtr b) {
  auto d = std::make_shared<PiData>();
  d->first = std::move(a);
  d->second = std::move(b);
  return d;
}

bool data_equal(const DataPtr& a, const DataPtr& b) {
  if (a == b) return true;
  if (a->is_name() != b->is_name()) return false;
  if (a->is_name()) return a->name == b->name;
  return data_equal(a->first, b->first) && data_equal(a->second, b->second);
}

std::string print_data(const DataPtr& d) {
  if (d->is_name()) return d->name;
  return "<" + print_data(d->first) + "," + print_data(d->second) + ">";
}

// -------- construction --------

PiPtr pi_nil() {
  static const PiPtr nil = [] {
    auto p = std::make_shared<PiProcess>();
    p->kind = PiKind::Nil;
    return p;
  }();
  return nil;
}

PiPtr pi_par(PiPtr a, PiPtr b) {
  auto p = std::make_shared<PiProcess>();
  p->kind = PiKind::Par;
  p->left = std::move(a);
  p->right = std::move(b);
  return p;
}

PiPtr pi_repl(PiPtr a) {
  auto p = std::make_shared<PiProcess>();
  p->kind = PiKind::Repl;
  p->left = std::move(a);
  return p;
}

PiPtr pi_res(PiName n, PiPtr a) {
  auto p = std::make_shared<PiProcess>();
  p->kind = PiKind::Res;
  p->bind1 = std::move(n);
  p->left = std::move(a);
  return p;
}

PiPtr pi_in(DataPtr subj, PiName var, PiPtr body) {
  auto p = std::make_shared<PiProcess>();
  p->kind = PiKind::In;
  p->subj = std::move(subj);
  p->bind1 = std::move(var);
  p->left = std::move(body);
  return p;
}

PiPtr pi_in(PiName subj, PiName var, PiPtr body) {
  return pi_in(data_name(std::move(subj)), std::move(var), std::move(body));
}

PiPtr pi_out(DataPtr subj, DataPtr payload) {
  auto p = std::make_shared<PiProcess>();
  p->kind = PiKind::Out;
  p->subj = std::move(subj);
  p->payload = std::move(payload);
  return p;
}

PiPtr pi_out(PiName subj, DataPtr payload) {
  return pi_out(data_name(std::move(subj)), std::move(payload));
}

PiPtr pi_let(PiName x, PiName y, DataPtr scrutinee, PiPtr body) {
  auto p = std::make_shared<PiProcess>();
  p->kind = PiKind::Let;
  p->bind1 = std::move(x);
  p->bind2 = std::move(y);
  p->subj = std::move(scrutinee);
  p->left = std::move(body);
  return p;
}

std::size_t pi_size(const PiPtr& p) {
  if (!p) return 0;
  return 1 + pi_size(p->left) + pi_size(p->right);
}

// -------- parsing --------

namespace {

struct PiLexer {
  const std::string& src;
  std::size_t pos = 0;
  int line = 1, col = 1;

  explicit PiLexer(const std::string& s) : src(s) {}

  void advance() {
    if (src[pos] == '\n') { line++; col = 1; } else { col++; }
    pos++;
  }
  void skip_ws() {
    while (pos < src.size() && std::isspace(static_cast<unsigned char>(src[pos]))) advance();
  }
  bool eof() {
    skip_ws();
    return pos >= src.size();
  }
  [[noreturn]] void fail(const std::string& msg) { throw ParseError(msg, line, col); }
  char peek() {
    skip_ws();
    return pos < src.size() ? src[pos] : '\0';
  }
  void expect(char c) {
    skip_ws();
    if (pos >= src.size() || src[pos] != c) fail(std::string("expected '") + c + "'");
    advance();
  }
  bool ident_ahead() {
    return std::isalpha(static_cast<unsigned char>(peek()));
  }
  std::string ident() {
    skip_ws();
    if (pos >= src.size() || !std::isalpha(static_cast<unsigned char>(src[pos])))
      fail("expected a name");
    std::string out;
    while (pos < src.size()) {
      char c = src[pos];
      if (std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '#') {
        out += c;
        advance();
      } else break;
    }
    return out;
  }
};

DataPtr parse_datum(PiLexer& lx) {
  if (lx.peek() == '<') {
    lx.expect('<');
    std::string a = lx.ident();
    lx.expect(',');
    std::string b = lx.ident();
    lx.expect('>');
    return data_pair(data_name(std::move(a)), data_name(std::move(b)));
  }
  return data_name(lx.ident());
}

PiPtr parse_par(PiLexer& lx);

// Picks an input variable for desugared pair input that cannot clash.
PiName pick_fresh(const std::set<PiName>& avoid) {
  if (!avoid.count("w")) return "w";
  for (int i = 0;; i++) {
    PiName n = "w#" + std::to_string(i);
    if (!avoid.count(n)) return n;
  }
}

PiPtr parse_output_tail(PiLexer& lx, std::string subj) {
  lx.expect('<');
  DataPtr d = parse_datum(lx);
  lx.expect('>');
  return pi_out(std::move(subj), std::move(d));
}

PiPtr parse_term(PiLexer& lx) {
  char c = lx.peek();
  if (c == '0') {
    lx.expect('0');
    return pi_nil();
  }
  if (c == '!') {
    lx.expect('!');
    return pi_repl(parse_term(lx));
  }
  if (c == '(') {
    lx.expect('(');
    PiPtr p = parse_par(lx);
    lx.expect(')');
    return p;
  }
  if (!lx.ident_ahead()) lx.fail("expected a process");
  std::string id = lx.ident();
  if (id == "new") {
    std::string n = lx.ident();
    lx.expect('.');
    return pi_res(std::move(n), parse_term(lx));
  }
  if (id == "let") {
    lx.expect('<');
    std::string x = lx.ident();
    lx.expect(',');
    std::string y = lx.ident();
    lx.expect('>');
    lx.expect('=');
    DataPtr scrut = parse_datum(lx);
    std::string kw = lx.ident();
    if (kw != "in") lx.fail("expected 'in'");
    return pi_let(std::move(x), std::move(y), std::move(scrut), parse_par(lx));
  }
  if (id == "out") {
    // tolerated noise keyword in front of an output
    std::string subj = lx.ident();
    return parse_output_tail(lx, std::move(subj));
  }
  // input or output on the name in id
  if (lx.peek() == '(') {
    lx.expect('(');
    if (lx.peek() == '<') {
      lx.expect('<');
      std::string x = lx.ident();
      lx.expect(',');
      std::string y = lx.ident();
      lx.expect('>');
      lx.expect(')');
      lx.expect('.');
      PiPtr body = parse_term(lx);
      std::set<PiName> avoid = free_names(body);
      avoid.insert(x);
      avoid.insert(y);
      PiName w = pick_fresh(avoid);
      return pi_in(std::move(id), w, pi_let(std::move(x), std::move(y), data_name(w), body));
    }
    std::string v = lx.ident();
    lx.expect(')');
    lx.expect('.');
    return pi_in(std::move(id), std::move(v), parse_term(lx));
  }
  if (lx.peek() == '<') return parse_output_tail(lx, std::move(id));
  lx.fail("expected '(' for input or '<' for output after name '" + id + "'");
}

PiPtr parse_par(PiLexer& lx) {
  PiPtr p = parse_term(lx);
  while (lx.peek() == '|') {
    lx.expect('|');
    p = pi_par(std::move(p), parse_term(lx));
  }
  return p;
}

}  // namespace

PiPtr parse_pi(const std::string& text) {
  PiLexer lx(text);
  PiPtr p = parse_par(lx);
  if (!lx.eof()) lx.fail("trailing input after process");
  return p;
}

// -------- printing (re-sugars pair inputs) --------

namespace {

bool is_pair_input(const PiPtr& p) {
  if (p->kind != PiKind::In || !p->subj->is_name()) return false;
  const PiPtr& b = p->left;
  if (b->kind != PiKind::Let || !b->subj->is_name() || b->subj->name != p->bind1) return false;
  if (b->bind1 == p->bind1 || b->bind2 == p->bind1) return false;
  return free_names(b->left).count(p->bind1) == 0;
}

std::string print_parlevel(const PiPtr& p);

std::string print_term_level(const PiPtr& p) {
  switch (p->kind) {
    case PiKind::Nil:
      return "0";
    case PiKind::Out:
      return print_data(p->subj) + "<" + print_data(p->payload) + ">";
    case PiKind::Repl:
      return "!" + print_term_level(p->left);
    case PiKind::Res:
      return "new " + p->bind1 + "." + print_term_level(p->left);
    case PiKind::In:
      if (is_pair_input(p)) {
        const PiPtr& let = p->left;
        return print_data(p->subj) + "(<" + let->bind1 + "," + let->bind2 + ">)." +
               print_term_level(let->left);
      }
      return print_data(p->subj) + "(" + p->bind1 + ")." + print_term_level(p->left);
    case PiKind::Par:
    case PiKind::Let:
      return "(" + print_parlevel(p) + ")";
  }
  return {};
}

std::string print_parlevel(const PiPtr& p) {
  if (p->kind == PiKind::Par) {
    std::string l = p->left->kind == PiKind::Par ? print_parlevel(p->left)
                                                 : print_term_level(p->left);
    std::string r = print_term_level(p->right);
    return l + " | " + r;
  }
  if (p->kind == PiKind::Let) {
    return "let <" + p->bind1 + "," + p->bind2 + "> = " + print_data(p->subj) + " in " +
           print_parlevel(p->left);
  }
  return print_term_level(p);
}

}  // namespace

std::string print_pi(const PiPtr& p) { return print_parlevel(p); }

// -------- names --------

namespace {

void data_names(const DataPtr& d, std::set<PiName>& out) {
  if (!d) return;
  if (d->is_name()) {
    out.insert(d->name);
    return;
  }
  data_names(d->first, out);
  data_names(d->second, out);
}

void free_names_rec(const PiPtr& p, std::vector<PiName>& bound, std::set<PiName>& out) {
  auto add_data = [&](const DataPtr& d) {
    std::set<PiName> ns;
    data_names(d, ns);
    for (const auto& n : ns)
      if (std::find(bound.begin(), bound.end(), n) == bound.end()) out.insert(n);
  };
  switch (p->kind) {
    case PiKind::Nil:
      return;
    case PiKind::Par:
      free_names_rec(p->left, bound, out);
      free_names_rec(p->right, bound, out);
      return;
    case PiKind::Repl:
      free_names_rec(p->left, bound, out);
      return;
    case PiKind::Res:
      bound.push_back(p->bind1);
      free_names_rec(p->left, bound, out);
      bound.pop_back();
      return;
    case PiKind::In:
      add_data(p->subj);
      bound.push_back(p->bind1);
      free_names_rec(p->left, bound, out);
      bound.pop_back();
      return;
    case PiKind::Out:
      add_data(p->subj);
      add_data(p->payload);
      return;
    case PiKind::Let:
      add_data(p->subj);
      bound.push_back(p->bind1);
      bound.push_back(p->bind2);
      free_names_rec(p->left, bound, out);
      bound.pop_back();
      bound.pop_back();
      return;
  }
}

}  // namespace

std::set<PiName> free_names(const PiPtr& p) {
  std::set<PiName> out;
  std::vector<PiName> bound;
  free_names_rec(p, bound, out);
  return out;
}

bool well_formed(const PiPtr& p) {
  auto flat_pair = [](const DataPtr& d) {
    return d->is_name() || (d->first->is_name() && d->second->is_name());
  };
  switch (p->kind) {
    case PiKind::Nil:
      return true;
    case PiKind::Par:
      return well_formed(p->left) && well_formed(p->right);
    case PiKind::Repl:
    case PiKind::Res:
      return well_formed(p->left);
    case PiKind::In:
      return p->subj->is_name() && well_formed(p->left);
    case PiKind::Out:
      return p->subj->is_name() && flat_pair(p->payload);
    case PiKind::Let:
      return flat_pair(p->subj) && well_formed(p->left);
  }
  return false;
}

// -------- refreshing and substitution --------

namespace {

struct PiRename {
  std::vector<std::pair<PiName, PiName>> env;
  std::set<PiName> used;

  PiName mint(FreshSupply& supply, const PiName& base) {
    for (;;) {
      PiName n = supply.fresh(base);
      if (used.insert(n).second) return n;
    }
  }

  DataPtr map_data(const DataPtr& d) const {
    if (!d) return d;
    if (d->is_name()) {
      for (auto it = env.rbegin(); it != env.rend(); ++it)
        if (it->first == d->name) return data_name(it->second);
      return d;
    }
    DataPtr a = map_data(d->first);
    DataPtr b = map_data(d->second);
    if (a == d->first && b == d->second) return d;
    return data_pair(a, b);
  }
};

PiPtr refresh_rec(const PiPtr& p, FreshSupply& supply, PiRename& rn) {
  switch (p->kind) {
    case PiKind::Nil:
      return p;
    case PiKind::Par:
      return pi_par(refresh_rec(p->left, supply, rn), refresh_rec(p->right, supply, rn));
    case PiKind::Repl:
      return pi_repl(refresh_rec(p->left, supply, rn));
    case PiKind::Res: {
      PiName n = rn.mint(supply, p->bind1);
      rn.env.emplace_back(p->bind1, n);
      PiPtr body = refresh_rec(p->left, supply, rn);
      rn.env.pop_back();
      return pi_res(std::move(n), std::move(body));
    }
    case PiKind::In: {
      DataPtr subj = rn.map_data(p->subj);
      PiName v = rn.mint(supply, p->bind1);
      rn.env.emplace_back(p->bind1, v);
      PiPtr body = refresh_rec(p->left, supply, rn);
      rn.env.pop_back();
      return pi_in(std::move(subj), std::move(v), std::move(body));
    }
    case PiKind::Out:
      return pi_out(rn.map_data(p->subj), rn.map_data(p->payload));
    case PiKind::Let: {
      DataPtr scrut = rn.map_data(p->subj);
      PiName x = rn.mint(supply, p->bind1);
      PiName y = rn.mint(supply, p->bind2);
      rn.env.emplace_back(p->bind1, x);
      rn.env.emplace_back(p->bind2, y);
      PiPtr body = refresh_rec(p->left, supply, rn);
      rn.env.pop_back();
      rn.env.pop_back();
      return pi_let(std::move(x), std::move(y), std::move(scrut), std::move(body));
    }
  }
  return p;
}

}  // namespace

void all_names(const PiPtr& p, std::set<PiName>& out) {
  if (!p) return;
  std::set<PiName> ds;
  data_names(p->subj, ds);
  data_names(p->payload, ds);
  out.insert(ds.begin(), ds.end());
  if (!p->bind1.empty()) out.insert(p->bind1);
  if (!p->bind2.empty()) out.insert(p->bind2);
  all_names(p->left, out);
  all_names(p->right, out);
}

PiPtr refresh_pi(const PiPtr& p, FreshSupply& supply) {
  PiRename rn;
  all_names(p, rn.used);
  return refresh_rec(p, supply, rn);
}

PiPtr refresh_pi(const PiPtr& p, FreshSupply& supply, std::set<PiName>& used) {
  PiRename rn;
  all_names(p, used);
  rn.used = used;
  PiPtr out = refresh_rec(p, supply, rn);
  used = rn.used;
  return out;
}

namespace {

struct Subst {
  PiName from;
  DataPtr to;
  std::set<PiName> used;  // every name in play; fresh picks avoid it
  int rename_counter = 0;

  PiName pick(const PiName& base) {
    for (;;) {
      PiName n = base + "#r" + std::to_string(rename_counter++);
      if (used.insert(n).second) return n;
    }
  }

  DataPtr map_data(const DataPtr& d) const {
    if (!d) return d;
    if (d->is_name()) return d->name == from ? to : d;
    DataPtr a = map_data(d->first);
    DataPtr b = map_data(d->second);
    if (a == d->first && b == d->second) return d;
    return data_pair(a, b);
  }

  bool to_contains(const PiName& n) const {
    std::set<PiName> ns;
    data_names(to, ns);
    return ns.count(n) != 0;
  }
};

PiPtr rename_binder_to(const PiPtr& body, const PiName& from, const PiName& to);

PiPtr subst_rec(const PiPtr& p, Subst& s) {
  switch (p->kind) {
    case PiKind::Nil:
      return p;
    case PiKind::Par:
      return pi_par(subst_rec(p->left, s), subst_rec(p->right, s));
    case PiKind::Repl:
      return pi_repl(subst_rec(p->left, s));
    case PiKind::Res: {
      if (p->bind1 == s.from) return p;  // shadowed
      PiName n = p->bind1;
      PiPtr body = p->left;
      if (s.to_contains(n)) {
        PiName fresh = s.pick(n);
        body = rename_binder_to(body, n, fresh);
        n = fresh;
      }
      return pi_res(std::move(n), subst_rec(body, s));
    }
    case PiKind::In: {
      DataPtr subj = s.map_data(p->subj);
      if (p->bind1 == s.from) return pi_in(std::move(subj), p->bind1, p->left);
      PiName v = p->bind1;
      PiPtr body = p->left;
      if (s.to_contains(v)) {
        PiName fresh = s.pick(v);
        body = rename_binder_to(body, v, fresh);
        v = fresh;
      }
      return pi_in(std::move(subj), std::move(v), subst_rec(body, s));
    }
    case PiKind::Out:
      return pi_out(s.map_data(p->subj), s.map_data(p->payload));
    case PiKind::Let: {
      DataPtr scrut = s.map_data(p->subj);
      if (p->bind1 == s.from || p->bind2 == s.from)
        return pi_let(p->bind1, p->bind2, std::move(scrut), p->left);
      PiName x = p->bind1, y = p->bind2;
      PiPtr body = p->left;
      if (s.to_contains(x)) {
        PiName fresh = s.pick(x);
        body = rename_binder_to(body, x, fresh);
        x = fresh;
      }
      if (s.to_contains(y)) {
        PiName fresh = s.pick(y);
        body = rename_binder_to(body, y, fresh);
        y = fresh;
      }
      return pi_let(std::move(x), std::move(y), std::move(scrut), subst_rec(body, s));
    }
  }
  return p;
}

// Plain binder rename: to is globally unused, so no capture is possible.
PiPtr rename_binder_to(const PiPtr& body, const PiName& from, const PiName& to) {
  Subst s;
  s.from = from;
  s.to = data_name(to);
  return subst_rec(body, s);
}

}  // namespace

PiPtr subst_data(const PiPtr& p, const PiName& from, const DataPtr& to) {
  Subst s;
  s.from = from;
  s.to = to;
  all_names(p, s.used);
  std::set<PiName> tn;
  data_names(to, tn);
  s.used.insert(tn.begin(), tn.end());
  return subst_rec(p, s);
}

// -------- canonical form --------

namespace {

struct CanonPi {
  std::vector<std::pair<PiName, int>> env;
  int next = 0;

  void data(const DataPtr& d, std::string& out) {
    if (d->is_name()) {
      for (auto it = env.rbegin(); it != env.rend(); ++it) {
        if (it->first == d->name) {
          out += "@";
          out += std::to_string(it->second);
          return;
        }
      }
      out += d->name;
      return;
    }
    out += "<";
    data(d->first, out);
    out += ",";
    data(d->second, out);
    out += ">";
  }

  void rec(const PiPtr& p, std::string& out) {
    switch (p->kind) {
      case PiKind::Nil:
        out += "0";
        return;
      case PiKind::Par:
        out += "(";
        rec(p->left, out);
        out += "|";
        rec(p->right, out);
        out += ")";
        return;
      case PiKind::Repl:
        out += "!";
        rec(p->left, out);
        return;
      case PiKind::Res:
        out += "nu.";
        env.emplace_back(p->bind1, next++);
        rec(p->left, out);
        env.pop_back();
        return;
      case PiKind::In:
        out += "in[";
        data(p->subj, out);
        out += "].";
        env.emplace_back(p->bind1, next++);
        rec(p->left, out);
        env.pop_back();
        return;
      case PiKind::Out:
        out += "out[";
        data(p->subj, out);
        out += "][";
        data(p->payload, out);
        out += "]";
        return;
      case PiKind::Let:
        out += "let[";
        data(p->subj, out);
        out += "].";
        env.emplace_back(p->bind1, next++);
        env.emplace_back(p->bind2, next++);
        rec(p->left, out);
        env.pop_back();
        env.pop_back();
        return;
    }
  }
};

}  // namespace

std::string canon_pi(const PiPtr& p) {
  CanonPi c;
  std::string out;
  out.reserve(64);
  c.rec(p, out);
  return out;
}

bool alpha_eq_pi(const PiPtr& a, const PiPtr& b) {
  if (a == b) return true;
  return canon_pi(a) == canon_pi(b);
}

namespace {

void flatten_par(const PiPtr& p, std::vector<PiPtr>& out) {
  if (p->kind == PiKind::Par) {
    flatten_par(p->left, out);
    flatten_par(p->right, out);
    return;
  }
  if (p->kind != PiKind::Nil) out.push_back(p);
}

PiPtr mkpar(std::vector<PiPtr> comps) {
  if (comps.empty()) return pi_nil();
  std::vector<std::pair<std::string, PiPtr>> keyed;
  keyed.reserve(comps.size());
  for (auto& c : comps) keyed.emplace_back(canon_pi(c), c);
  std::stable_sort(keyed.begin(), keyed.end(),
                   [](const auto& a, const auto& b) { return a.first < b.first; });
  PiPtr acc = keyed[0].second;
  for (std::size_t i = 1; i < keyed.size(); i++) acc = pi_par(acc, keyed[i].second);
  return acc;
}

// First occurrence position of a name in a fixed pre-order walk, used to
// order adjacent restrictions canonically. Returns -1 when absent.
int first_use_pos(const PiPtr& p, const PiName& n, int& counter) {
  int found = -1;
  auto scan_data = [&](const DataPtr& d, auto&& self) -> void {
    if (found >= 0 || !d) return;
    counter++;
    if (d->is_name()) {
      if (d->name == n) found = counter;
      return;
    }
    self(d->first, self);
    self(d->second, self);
  };
  auto walk = [&](const PiPtr& q, auto&& self) -> void {
    if (found >= 0 || !q) return;
    counter++;
    scan_data(q->subj, scan_data);
    if (found >= 0) return;
    scan_data(q->payload, scan_data);
    if (found >= 0) return;
    // a binder with the same spelling shadows; cnf runs on refreshed
    // terms so this cannot trigger, but stay correct anyway
    if (q->bind1 == n || q->bind2 == n) return;
    self(q->left, self);
    if (found >= 0) return;
    self(q->right, self);
  };
  walk(p, walk);
  return found;
}

PiPtr norm(const PiPtr& p) {
  switch (p->kind) {
    case PiKind::Nil:
    case PiKind::Out:
      return p;
    case PiKind::Repl:
      return pi_repl(norm(p->left));
    case PiKind::In:
      return pi_in(p->subj, p->bind1, norm(p->left));
    case PiKind::Let: {
      PiPtr body = norm(p->left);
      const DataPtr& s = p->subj;
      if (!s->is_name() && s->first->is_name() && s->second->is_name()) {
        PiPtr r = subst_data(body, p->bind1, s->first);
        r = subst_data(r, p->bind2, s->second);
        return norm(r);
      }
      return pi_let(p->bind1, p->bind2, s, body);
    }
    case PiKind::Res: {
      PiPtr body = norm(p->left);
      if (body->kind == PiKind::Nil) return pi_nil();
      std::set<PiName> fn = free_names(body);
      if (!fn.count(p->bind1)) return body;
      if (body->kind == PiKind::Par) {
        std::vector<PiPtr> comps, users, others;
        flatten_par(body, comps);
        for (auto& c : comps) {
          if (free_names(c).count(p->bind1)) users.push_back(c);
          else others.push_back(c);
        }
        if (!others.empty()) {
          others.push_back(pi_res(p->bind1, mkpar(std::move(users))));
          return mkpar(std::move(others));
        }
        return pi_res(p->bind1, body);
      }
      if (body->kind == PiKind::Res) {
        int c1 = 0, c2 = 0;
        int pos_outer = first_use_pos(body->left, p->bind1, c1);
        int pos_inner = first_use_pos(body->left, body->bind1, c2);
        if (pos_inner >= 0 && (pos_outer < 0 || pos_inner < pos_outer))
          return pi_res(body->bind1, pi_res(p->bind1, body->left));
      }
      return pi_res(p->bind1, body);
    }
    case PiKind::Par: {
      std::vector<PiPtr> comps;
      std::vector<PiPtr> raw;
      flatten_par(p, raw);
      for (auto& c : raw) {
        PiPtr n = norm(c);
        if (n->kind == PiKind::Nil) continue;
        if (n->kind == PiKind::Par) flatten_par(n, comps);
        else comps.push_back(n);
      }
      return mkpar(std::move(comps));
    }
  }
  return p;
}

}  // namespace

PiPtr cnf(const PiPtr& p) {
  // Binders are first renamed positionally (b#0, b#1, ... in traversal
  // order), so the result is independent of the input's own binder
  // spellings and the sorting inside mkpar is alpha-stable.
  PiPtr cur;
  {
    FreshSupply s;
    PiRename rn2;
    all_names(p, rn2.used);
    struct Walk {
      FreshSupply& s;
      PiRename& rn;
      PiPtr go(const PiPtr& q) {
        switch (q->kind) {
          case PiKind::Nil:
            return q;
          case PiKind::Par:
            return pi_par(go(q->left), go(q->right));
          case PiKind::Repl:
            return pi_repl(go(q->left));
          case PiKind::Res: {
            PiName n = rn.mint(s, "b");
            rn.env.emplace_back(q->bind1, n);
            PiPtr body = go(q->left);
            rn.env.pop_back();
            return pi_res(std::move(n), std::move(body));
          }
          case PiKind::In: {
            DataPtr subj = rn.map_data(q->subj);
            PiName v = rn.mint(s, "b");
            rn.env.emplace_back(q->bind1, v);
            PiPtr body = go(q->left);
            rn.env.pop_back();
            return pi_in(std::move(subj), std::move(v), std::move(body));
          }
          case PiKind::Out:
            return pi_out(rn.map_data(q->subj), rn.map_data(q->payload));
          case PiKind::Let: {
            DataPtr scrut = rn.map_data(q->subj);
            PiName x = rn.mint(s, "b");
            PiName y = rn.mint(s, "b");
            rn.env.emplace_back(q->bind1, x);
            rn.env.emplace_back(q->bind2, y);
            PiPtr body = go(q->left);
            rn.env.pop_back();
            rn.env.pop_back();
            return pi_let(std::move(x), std::move(y), std::move(scrut), std::move(body));
          }
        }
        return q;
      }
    } walk{s, rn2};
    cur = walk.go(p);
  }
  std::string key = canon_pi(cur);
  for (int i = 0; i < 64; i++) {
    PiPtr next = norm(cur);
    std::string nkey = canon_pi(next);
    if (nkey == key) return next;
    cur = next;
    key = std::move(nkey);
  }
  assert(false && "cnf did not stabilize");
  return cur;
}

bool struct_eq(const PiPtr& a, const PiPtr& b) {
  if (a == b) return true;
  return canon_pi(cnf(a)) == canon_pi(cnf(b));
}

}  // namespace seqpi
