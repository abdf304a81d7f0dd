#pragma once

// Simple types shared by all three calculi: T ::= atom | T -> T.
// Leaves whose name starts with '?' are unification metavariables;
// inference mints them as ?0, ?1, ... and display code renames them
// to A, B, C, ... afterwards. Any other leaf is a rigid constant.

#include <map>
#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

namespace seqpi {

struct SimpleType;
using TypePtr = std::shared_ptr<const SimpleType>;

struct SimpleType {
  std::string name;   // leaf name; empty for arrows
  TypePtr from, to;   // arrow children; null for leaves

  bool is_leaf() const { return from == nullptr; }
};

TypePtr type_leaf(std::string name);
TypePtr type_arrow(TypePtr from, TypePtr to);

bool is_metavar(const TypePtr& t);
bool type_equal(const TypePtr& a, const TypePtr& b);

struct ParseError : std::runtime_error {
  int line = 1;
  int col = 1;
  ParseError(const std::string& msg, int line_, int col_)
      : std::runtime_error(msg), line(line_), col(col_) {}
};

// Right-associative arrows: "A -> B -> C" is A -> (B -> C).
TypePtr parse_type(const std::string& text);
std::string print_type(const TypePtr& t);

// Idempotent substitution built by unification. apply() walks bindings
// until it reaches a non-metavar head or an unbound metavar.
struct Substitution {
  std::map<std::string, TypePtr> map;

  TypePtr apply(const TypePtr& t) const;
  TypePtr walk(const TypePtr& t) const;  // resolves metavar chains at the head only
};

// Robinson unification with occurs check; extends s in place.
// Returns false (leaving s possibly partially extended) on clash or
// occurs failure, so callers treat s as spent on failure.
bool unify(const TypePtr& a, const TypePtr& b, Substitution& s);

// Collect metavariable names in first-appearance order (leaves scanned
// left to right). Used for canonical display renaming.
void collect_metavars(const TypePtr& t, std::vector<std::string>& order);

// A..Z then T27, T28, ... for later variables.
std::string display_var_name(std::size_t index);

}  // namespace seqpi
