#pragma once

// Independent reference implementations used to cross-check the production
// engines. Deliberately dumb: per-rule matchers with per-query free-name
// scans for the net rewriter, a congruence-class search for the process
// rewriter, and an assignment-enumeration typability search. They share the
// syntax trees with the production code but none of its machinery (no name
// interning, no bitmasks, no canonicalisation-driven engine).

#include <array>
#include <cstdint>
#include <functional>
#include <map>
#include <string>
#include <unordered_map>
#include <vector>

#include "seqpi/pi_syntax.hpp"
#include "seqpi/x_rewrite.hpp"
#include "seqpi/x_syntax.hpp"
#include "seqpi/x_types.hpp"

namespace seqpi::oracle {

// ---------------------------------------------------------------------------
// X side

// Same contract as find_redexes: all redexes in pre-order, same within-node
// rule order. Free sets of explicitly pinned subtrees are memoised (the pin
// keeps the nodes alive, so the pointer keys stay valid); everything else
// is recomputed per query.
class XRedexOracle {
 public:
  std::vector<Redex> find(const XPtr& p, Strategy strategy);

  // All three strategies from one walk; the free-connector queries
  // dominate the cost and are strategy-independent, so batched lookup is
  // what enumeration sweeps should use. Indexed by Strategy value.
  std::array<std::vector<Redex>, 3> find_all(const XPtr& p);

  // Memoise free sets for every node under p and keep them alive. Pin the
  // shared pools when sweeping an enumeration.
  void pin_subtree(const XPtr& p);

 private:
  struct FreeSets {
    std::vector<std::string> socks, plugs;  // sorted
  };
  struct Pinned {
    XPtr keepalive;
    FreeSets sets;
  };
  std::unordered_map<const XNet*, Pinned> cache_;

  FreeSets compute(const XPtr& p) const;  // uses cache_ for children
  bool free_sock(const XPtr& p, const std::string& x);
  bool free_plug(const XPtr& p, const std::string& a);
  bool intro_sock(const XPtr& p, const std::string& x);
  bool intro_plug(const XPtr& p, const std::string& a);
  void walk(const XPtr& p, std::vector<int>& path, std::array<std::vector<Redex>, 3>& out);
};

// Every net of each size in [1, max_size] over sockets {x,y} and plugs
// {a,b}, all six node kinds. Subtrees are pooled and shared; pool members
// are reported through pinned (if given) before any net containing them is
// visited, so a memoising consumer can pin them.
void enumerate_x(int max_size, const std::function<void(const XPtr&)>& fn,
                 const std::function<void(const XPtr&)>& pinned = nullptr);

// Node count of the full enumeration, computed from the counting recurrence
// (used to cross-check that enumerate_x visits everything).
std::uint64_t count_x(int max_size);

// ---------------------------------------------------------------------------
// pi side

// Key identifying a reduct up to congruence: canonical form after cnf plus
// absorption of any parallel component that duplicates the body of a
// replicated sibling (the unfolding axiom read right to left). Two reducts
// that differ only by how far a replication was unfolded get the same key.
// Apply to both engines' results before comparing.
std::string pi_reduct_key(const PiPtr& p);

// One-step reducts of p by explicit congruence-class search: build the
// class closure under the congruence axioms (bounded unfolding of each
// replication site), then apply the synchronisation axiom and the
// composition/binding/nesting closure rules syntactically to every member.
// Results are returned as pi_reduct_key strings, deduplicated and sorted,
// ready to compare against the production engine's reduct set.
// Throws std::runtime_error if the class exceeds class_cap members.
std::vector<std::string> pi_step_keys(const PiPtr& p, int repl_budget, int class_cap = 20000);

// Every process of each size in [1, max_nodes] over names {a,b}: subjects,
// input binders and restriction binders from {a,b}; output payloads from
// {a, b, <a,b>, <b,a>}; let binders fixed <a,b> with scrutinee from {a,b}.
void enumerate_pi(int max_nodes, const std::function<void(const PiPtr&)>& fn);

std::uint64_t count_pi(int max_nodes);

// ---------------------------------------------------------------------------
// type system side

// Rule-by-rule derivation check with every connector's type given: the
// free connectors from the context pair, the bound ones from assign (keyed
// by binder spelling; the net must have pairwise distinct binders, see
// refresh). No unification, no metavariables: exact equality per rule.
bool validate_x_typing(const XPtr& p, const ContextPair& ctx,
                       const std::map<std::string, TypePtr>& assign);

// Typability by brute force: enumerate assignments of small arrow types
// (over one base constant, nesting depth <= type_depth) to every free and
// bound connector position and validate each. Intended for nets of size
// <= 3 with few connectors; cost is pool^positions.
bool typable_by_search(const XPtr& p, int type_depth);

}  // namespace seqpi::oracle
