#pragma once

// Term nets for the sequent-style term calculus. Connectors come in two
// disjoint namespaces: sockets (input side) and plugs (output side).
//
// Concrete syntax:
//   <x.a>                      capsule joining socket x to plug a
//   exp(x; P; a).b             export: binds socket x and plug a in P, b free
//   imp(P | a / [y] / x | Q)   import: binds a in P and x in Q, y free
//   cut(P | a / x | Q)         cut: binds a in P and x in Q
//   cutL(...) / cutR(...)      activated cuts, same shape as cut
//
// Identifiers are [A-Za-z][A-Za-z0-9_]*; '#' is additionally accepted so
// machine-generated fresh names (x#12) round-trip through the parser.

#include <cstdint>
#include <memory>
#include <set>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "seqpi/simple_type.hpp"  // for ParseError

namespace seqpi {

enum class ConnKind { Socket, Plug };

struct Connector {
  std::string id;
  ConnKind kind;

  bool operator==(const Connector& o) const { return kind == o.kind && id == o.id; }
  bool operator<(const Connector& o) const {
    if (kind != o.kind) return kind < o.kind;
    return id < o.id;
  }
};

enum class XKind { Capsule, Export, Import, Cut, CutL, CutR };

struct XNet;
using XPtr = std::shared_ptr<const XNet>;

// One node. Field roles by kind:
//   Capsule   <s1.p1>
//   Export    exp(s1; left; p1).p2      s1, p1 bound in left
//   Import    imp(left | p1 / [s1] / s2 | right)
//             p1 bound in left, s2 bound in right, s1 the free middle socket
//   Cut/CutL/CutR  cut(left | p1 / s1 | right)
//             p1 bound in left, s1 bound in right
struct XNet {
  XKind kind;
  std::string s1, s2, p1, p2;
  XPtr left, right;
};

XPtr capsule(std::string sock, std::string plug);
XPtr export_net(std::string sock, XPtr body, std::string bound_plug, std::string out_plug);
XPtr import_net(XPtr left, std::string bound_plug, std::string mid_sock,
                std::string bound_sock, XPtr right);
XPtr cut_net(XKind cut_kind, XPtr left, std::string plug, std::string sock, XPtr right);

bool is_cut_kind(XKind k);
std::size_t net_size(const XPtr& p);  // number of nodes

// Rejects cutL/cutR unless allow_active.
XPtr parse_xnet(const std::string& text, bool allow_active = false);
std::string print_xnet(const XPtr& p);

std::set<std::string> free_sockets(const XPtr& p);
std::set<std::string> free_plugs(const XPtr& p);
std::set<Connector> free_connectors(const XPtr& p);

// "P introduces x": P is an import with middle socket x not free in either
// branch, or a capsule <x.a>. Dually for plugs with exports.
bool introduces_socket(const XPtr& p, const std::string& x);
bool introduces_plug(const XPtr& p, const std::string& a);

bool alpha_eq(const XPtr& a, const XPtr& b);
// Alpha-invariant key: equal strings iff alpha_eq. Used for dedup and maps.
std::string alpha_canon_xnet(const XPtr& p);

// Monotone counter supply: fresh("x") -> "x#0", "x#1", ... An existing
// "#n" suffix on the base is stripped first, so refreshing twice does not
// stack suffixes.
struct FreshSupply {
  std::uint64_t next = 0;
  std::string fresh(std::string_view base);
};

// Rename every binder to a fresh name from the supply. Free connectors are
// untouched. The result has globally distinct binders, distinct from every
// free name already carrying a different suffix.
XPtr refresh(const XPtr& p, FreshSupply& supply);

// Rename free occurrences of one connector. Merging onto an existing free
// connector is allowed; renaming onto a name bound somewhere in p is not
// (refresh first). Throws std::invalid_argument on kind mismatch or capture.
XPtr rename_connector(const XPtr& p, const Connector& from, const Connector& to);

}  // namespace seqpi
