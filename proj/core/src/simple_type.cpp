#include "seqpi/simple_type.hpp"

#include <algorithm>
#include <cctype>

namespace seqpi {

TypePtr type_leaf(std::string name) {
  auto t = std::make_shared<SimpleType>();
  t->name = std::move(name);
  return t;
}

TypePtr type_arrow(TypePtr from, TypePtr to) {
  auto t = std::make_shared<SimpleType>();
  t->from = std::move(from);
  t->to = std::move(to);
  return t;
}

bool is_metavar(const TypePtr& t) {
  return t->is_leaf() && !t->name.empty() && t->name[0] == '?';
}

bool type_equal(const TypePtr& a, const TypePtr& b) {
  if (a == b) return true;
  if (a->is_leaf() != b->is_leaf()) return false;
  if (a->is_leaf()) return a->name == b->name;
  return type_equal(a->from, b->from) && type_equal(a->to, b->to);
}

// -------- parsing --------

namespace {

struct TypeLexer {
  const std::string& src;
  std::size_t pos = 0;
  int line = 1, col = 1;

  explicit TypeLexer(const std::string& s) : src(s) {}

  void advance(char c) {
    if (c == '\n') { line++; col = 1; } else { col++; }
    pos++;
  }

  void skip_ws() {
    while (pos < src.size() && std::isspace(static_cast<unsigned char>(src[pos])))
      advance(src[pos]);
  }

  bool eof() {
    skip_ws();
    return pos >= src.size();
  }

  [[noreturn]] void fail(const std::string& msg) {
    throw ParseError(msg, line, col);
  }

  bool peek_is(char c) {
    skip_ws();
    return pos < src.size() && src[pos] == c;
  }

  void expect(char c) {
    skip_ws();
    if (pos >= src.size() || src[pos] != c)
      fail(std::string("expected '") + c + "'");
    advance(c);
  }

  bool try_arrow() {
    skip_ws();
    if (pos + 1 < src.size() && src[pos] == '-' && src[pos + 1] == '>') {
      advance('-');
      advance('>');
      return true;
    }
    return false;
  }

  std::string ident() {
    skip_ws();
    if (pos >= src.size()) fail("expected type name, found end of input");
    char c = src[pos];
    if (!std::isalpha(static_cast<unsigned char>(c)) && c != '?')
      fail("expected type name");
    std::string out;
    while (pos < src.size()) {
      c = src[pos];
      if (std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '?' || c == '#') {
        out += c;
        advance(c);
      } else {
        break;
      }
    }
    return out;
  }
};

TypePtr parse_type_expr(TypeLexer& lx);

TypePtr parse_type_atom(TypeLexer& lx) {
  if (lx.peek_is('(')) {
    lx.expect('(');
    TypePtr t = parse_type_expr(lx);
    lx.expect(')');
    return t;
  }
  return type_leaf(lx.ident());
}

TypePtr parse_type_expr(TypeLexer& lx) {
  TypePtr left = parse_type_atom(lx);
  if (lx.try_arrow())
    return type_arrow(left, parse_type_expr(lx));
  return left;
}

}  // namespace

TypePtr parse_type(const std::string& text) {
  TypeLexer lx(text);
  TypePtr t = parse_type_expr(lx);
  if (!lx.eof()) lx.fail("trailing input after type");
  return t;
}

std::string print_type(const TypePtr& t) {
  if (t->is_leaf()) return t->name;
  std::string lhs = print_type(t->from);
  if (!t->from->is_leaf()) lhs = "(" + lhs + ")";
  return lhs + " -> " + print_type(t->to);
}

// -------- substitution and unification --------

TypePtr Substitution::walk(const TypePtr& t) const {
  TypePtr cur = t;
  while (cur->is_leaf() && !cur->name.empty() && cur->name[0] == '?') {
    auto it = map.find(cur->name);
    if (it == map.end()) break;
    cur = it->second;
  }
  return cur;
}

TypePtr Substitution::apply(const TypePtr& t) const {
  TypePtr head = walk(t);
  if (head->is_leaf()) return head;
  TypePtr from = apply(head->from);
  TypePtr to = apply(head->to);
  if (from == head->from && to == head->to) return head;
  return type_arrow(from, to);
}

namespace {

bool occurs(const std::string& var, const TypePtr& t, const Substitution& s) {
  TypePtr head = s.walk(t);
  if (head->is_leaf()) return is_metavar(head) && head->name == var;
  return occurs(var, head->from, s) || occurs(var, head->to, s);
}

}  // namespace

bool unify(const TypePtr& a, const TypePtr& b, Substitution& s) {
  TypePtr x = s.walk(a);
  TypePtr y = s.walk(b);
  if (is_metavar(x) && is_metavar(y) && x->name == y->name) return true;
  if (is_metavar(x)) {
    if (occurs(x->name, y, s)) return false;
    s.map[x->name] = y;
    return true;
  }
  if (is_metavar(y)) {
    if (occurs(y->name, x, s)) return false;
    s.map[y->name] = x;
    return true;
  }
  if (x->is_leaf() && y->is_leaf()) return x->name == y->name;
  if (x->is_leaf() || y->is_leaf()) return false;
  return unify(x->from, y->from, s) && unify(x->to, y->to, s);
}

void collect_metavars(const TypePtr& t, std::vector<std::string>& order) {
  if (t->is_leaf()) {
    if (is_metavar(t) && std::find(order.begin(), order.end(), t->name) == order.end())
      order.push_back(t->name);
    return;
  }
  collect_metavars(t->from, order);
  collect_metavars(t->to, order);
}

std::string display_var_name(std::size_t index) {
  if (index < 26) return std::string(1, static_cast<char>('A' + index));
  return "T" + std::to_string(index + 1);
}

}  // namespace seqpi
