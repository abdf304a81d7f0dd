#pragma once

// Asynchronous pi calculus with pairing and a pair destructor.
//
// Concrete syntax:
//   0                    inert process
//   P | Q                parallel
//   !P                   replication
//   new n.P              restriction (prefix binds tight; body Par needs parens)
//   a(x).P               input
//   a<d>                 asynchronous output, d a name or a pair <n,m>
//   a(<x,y>).P           pair input, sugar for a(w).let <x,y> = w in P
//   let <x,y> = d in P   destructor (body extends as far right as possible)
//
// One namespace of names. Data occurring where a name is required (a pair
// used as a subject, or a pair nested inside a pair) is representable and
// permanently stuck, never an exception.

#include <cstdint>
#include <memory>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "seqpi/simple_type.hpp"  // ParseError
#include "seqpi/x_syntax.hpp"     // FreshSupply

namespace seqpi {

using PiName = std::string;

struct PiData;
using DataPtr = std::shared_ptr<const PiData>;

struct PiData {
  PiName name;            // leaf name; empty for pairs
  DataPtr first, second;  // pair components; null for leaves

  bool is_name() const { return first == nullptr; }
};

DataPtr data_name(PiName n);
DataPtr data_pair(DataPtr a, DataPtr b);
bool data_equal(const DataPtr& a, const DataPtr& b);
std::string print_data(const DataPtr& d);

enum class PiKind { Nil, Par, Repl, Res, In, Out, Let };

struct PiProcess;
using PiPtr = std::shared_ptr<const PiProcess>;

// Field roles by kind:
//   Par            left | right
//   Repl           !left
//   Res            new bind1. left
//   In             subj(bind1). left
//   Out            subj<payload>
//   Let            let <bind1,bind2> = subj in left
struct PiProcess {
  PiKind kind;
  DataPtr subj, payload;
  PiName bind1, bind2;
  PiPtr left, right;
};

PiPtr pi_nil();
PiPtr pi_par(PiPtr a, PiPtr b);
PiPtr pi_repl(PiPtr a);
PiPtr pi_res(PiName n, PiPtr a);
PiPtr pi_in(DataPtr subj, PiName var, PiPtr body);
PiPtr pi_in(PiName subj, PiName var, PiPtr body);
PiPtr pi_out(DataPtr subj, DataPtr payload);
PiPtr pi_out(PiName subj, DataPtr payload);
PiPtr pi_let(PiName x, PiName y, DataPtr scrutinee, PiPtr body);

std::size_t pi_size(const PiPtr& p);  // constructor count (data not counted)

PiPtr parse_pi(const std::string& text);
std::string print_pi(const PiPtr& p);

std::set<PiName> free_names(const PiPtr& p);

// Every name occurring in the process, free or bound. Seed for name pools
// when freshly minted binders must not collide with anything in a term.
void all_names(const PiPtr& p, std::set<PiName>& out);

// False iff some In/Out subject is a pair or some pair is nested.
bool well_formed(const PiPtr& p);

PiPtr refresh_pi(const PiPtr& p, FreshSupply& supply);

// As refresh_pi, but minted binders also avoid (and are added to) the
// caller's name pool. Needed when several refreshed terms will be placed
// under a common restriction prefix.
PiPtr refresh_pi(const PiPtr& p, FreshSupply& supply, std::set<PiName>& used);

// Capture-avoiding substitution of data for a free name. Binders that
// would capture are renamed deterministically.
PiPtr subst_data(const PiPtr& p, const PiName& from, const DataPtr& to);

// Canonical normal form: parallel soups flattened and sorted, nil dropped,
// dead and vacuous restrictions removed, restrictions pushed inward and
// adjacent ones ordered by first use, destructors on literal pairs
// eliminated. Replication is never unfolded, so struct_eq deliberately
// fails to identify !P with P | !P.
PiPtr cnf(const PiPtr& p);

// Alpha-invariant key: equal strings iff alpha-equivalent.
std::string canon_pi(const PiPtr& p);
bool alpha_eq_pi(const PiPtr& a, const PiPtr& b);

// Structural congruence approximation: alpha equivalence after cnf.
bool struct_eq(const PiPtr& a, const PiPtr& b);

}  // namespace seqpi
