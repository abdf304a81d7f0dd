#pragma once

// Translations between the three calculi:
//
//   encode_x        X net       -> pi process
//   encode_lam_to_x lambda term -> X net (one distinguished output plug)
//   encode_lam_to_pi            -> composition of the two
//
// The X image of a cut (plain or activated, all three map to the same
// process) is the parallel composition of the two one-sided images:
//
//   | nu a ( [P] | ! nu x ( a>>x | [Q] ) )     a>>x is the forwarder a(o).x<o>
//   | nu x ( nu a !( [P] | a>>x ) | [Q] )
//
// Every subnet is therefore encoded twice, with distinct bound names, and
// the second branch gets fresh spellings for the cut connectors so the two
// branches share nothing but the net's free interface.

#include <stdexcept>
#include <string>

#include "seqpi/lambda.hpp"
#include "seqpi/pi_syntax.hpp"
#include "seqpi/pi_types.hpp"
#include "seqpi/x_syntax.hpp"
#include "seqpi/x_types.hpp"

namespace seqpi {

// Raised when a net cannot be mapped into the single pi namespace: a free
// socket and a free plug share a spelling.
struct EncodeError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// a(o).b<o>. The bound name avoids a and b.
PiPtr forwarder(const PiName& a, const PiName& b);

// The net is refreshed first, so bound connectors never collide with the
// free interface; free connectors keep their spellings in the image.
PiPtr encode_x(const XPtr& p, FreshSupply& supply);
PiPtr encode_x(const XPtr& p);

// plug is the distinguished output the term's value flows to. The term is
// refreshed first; plug must not clash with the term's free variables.
XPtr encode_lam_to_x(const LamPtr& m, const std::string& plug, FreshSupply& supply);
XPtr encode_lam_to_x(const LamPtr& m, const std::string& plug);

PiPtr encode_lam_to_pi(const LamPtr& m, const std::string& plug, FreshSupply& supply);
PiPtr encode_lam_to_pi(const LamPtr& m, const std::string& plug);

// A net's interface carries over to its image unchanged: sockets become
// input capabilities, plugs become output capabilities.
PiContextPair pi_context_of(const ContextPair& ctx);

}  // namespace seqpi
