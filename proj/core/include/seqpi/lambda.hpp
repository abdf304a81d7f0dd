#pragma once

// Untyped lambda terms with simple type inference, used as the source
// language for the layered encodings.
//
// Concrete syntax: M ::= name | \name.M | M M | (M)
// Application associates left; an abstraction body extends right.

#include <map>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "seqpi/simple_type.hpp"
#include "seqpi/x_syntax.hpp"  // FreshSupply

namespace seqpi {

enum class LamKind { Var, Abs, App };

struct LamTerm;
using LamPtr = std::shared_ptr<const LamTerm>;

struct LamTerm {
  LamKind kind;
  std::string var;     // Var name or Abs binder
  LamPtr left, right;  // Abs body in left; App function/argument
};

LamPtr lam_var(std::string name);
LamPtr lam_abs(std::string var, LamPtr body);
LamPtr lam_app(LamPtr fun, LamPtr arg);

LamPtr parse_lam(const std::string& text);
std::string print_lam(const LamPtr& m);

std::set<std::string> lam_free_vars(const LamPtr& m);
bool lam_alpha_eq(const LamPtr& a, const LamPtr& b);

LamPtr lam_subst(const LamPtr& m, const std::string& var, const LamPtr& to);

// Rename every binder to a fresh machine name so binders are pairwise
// distinct and disjoint from the free variables.
LamPtr lam_refresh(const LamPtr& m, FreshSupply& supply);

// All single-step beta reducts, leftmost-outermost first.
std::vector<LamPtr> beta_steps(const LamPtr& m);

struct LamTypeResult {
  bool ok = false;
  std::map<std::string, TypePtr> env;  // free variable : type
  TypePtr type;
  std::string error;
};

// Principal typing of the term, free variables assigned metavariables.
LamTypeResult infer_lam(const LamPtr& m);

}  // namespace seqpi
