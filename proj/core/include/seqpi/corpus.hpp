#pragma once

// The bundled term corpus: hand-written landmark nets, corpus file IO, and
// the deterministic generators behind the generated corpus files.

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "seqpi/lambda.hpp"
#include "seqpi/x_rewrite.hpp"
#include "seqpi/x_syntax.hpp"

namespace seqpi {

// The witness of Peirce's law; types at |- g : ((A -> B) -> A) -> A.
XPtr peirce_net();

// The four capsule cuts: every combination of "cut connector introduced on
// that side". Each row records the irreducible nets the cut reaches.
struct IntroCut {
  std::string label;
  XPtr net;
  std::vector<XPtr> finals;
};
std::vector<IntroCut> intro_cuts();

// Small nets picked so that every rewrite-rule tag fires on at least one of
// them (logical, activation and propagation tags via find_redexes, garbage
// collection and renaming tags via find_admissible).
struct ShowcaseEntry {
  XRule rule;
  XPtr net;
};
std::vector<ShowcaseEntry> rule_showcase();

// Corpus files hold one term per line; blank lines and lines starting with
// "//" are skipped.
std::vector<std::string> read_corpus_lines(const std::string& path);
std::vector<XPtr> load_x_corpus(const std::string& path, bool allow_active = false);
std::vector<LamPtr> load_lam_corpus(const std::string& path);
void write_corpus_file(const std::string& path, const std::string& header,
                       const std::vector<std::string>& lines);

// Deterministic random draws. The standard distributions are not pinned
// across library implementations, so draws are hand-rolled on mt19937.
struct Rng {
  std::mt19937 eng;
  explicit Rng(uint32_t seed) : eng(seed) {}
  // Uniform draw from [0, n).
  int below(int n);
  bool coin() { return below(2) == 1; }
};

// Random plain nets over disjoint name pools (sockets x,y,z,u,w and plugs
// a,b,c,d,e), filtered to the typeable ones, deduplicated up to alpha
// equivalence. max_size bounds the node count.
std::vector<XPtr> generate_typed_x(uint32_t seed, int count, int max_size);

// Random lambda terms over variables x,y,z,u,w, filtered to the simply
// typeable ones, deduplicated up to alpha equivalence.
std::vector<LamPtr> generate_typed_lam(uint32_t seed, int count, int max_size);

// Hand-picked lambda entries: small combinators plus beta-reducible
// applications, all simply typeable.
std::vector<LamPtr> lambda_basics();

// Writes the six bundled corpus files into dir. The committed files use
// x_seed 20260816 and lam_seed 20260817.
void write_bundled_corpus(const std::string& dir, uint32_t x_seed, uint32_t lam_seed);

}  // namespace seqpi
