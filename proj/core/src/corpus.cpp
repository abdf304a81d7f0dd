#include "seqpi/corpus.hpp"

#include <fstream>
#include <set>
#include <sstream>
#include <stdexcept>

#include "seqpi/x_types.hpp"

namespace seqpi {

XPtr peirce_net() {
  return parse_xnet("exp(z; imp(exp(y; <y.d> ; h).a | a / [z] / w | <w.d>); d).g");
}

std::vector<IntroCut> intro_cuts() {
  std::vector<IntroCut> out;
  out.push_back({"both-introduced",
                 parse_xnet("cut(<x.a> | a / y | <y.b>)"),
                 {parse_xnet("<x.b>")}});
  out.push_back({"left-not-introduced",
                 parse_xnet("cut(<x.a> | g / y | <y.b>)"),
                 {parse_xnet("<x.a>")}});
  out.push_back({"right-not-introduced",
                 parse_xnet("cut(<x.a> | a / z | <y.b>)"),
                 {parse_xnet("<y.b>")}});
  out.push_back({"neither-introduced",
                 parse_xnet("cut(<x.a> | g / z | <y.b>)"),
                 {parse_xnet("<x.a>"), parse_xnet("<y.b>")}});
  return out;
}

std::vector<ShowcaseEntry> rule_showcase() {
  auto active = [](const char* text) { return parse_xnet(text, true); };
  std::vector<ShowcaseEntry> out;
  out.push_back({XRule::Ax, parse_xnet("cut(<x.a> | a / u | <u.b>)")});
  out.push_back({XRule::ExpRen, parse_xnet("cut(exp(x; <x.c> ; c).a | a / u | <u.b>)")});
  out.push_back({XRule::ImpRen,
                 parse_xnet("cut(<y.a> | a / u | imp(<v.c> | c / [u] / w | <w.d>))")});
  out.push_back({XRule::ExpImpLeft,
                 parse_xnet("cut(exp(x; <x.c> ; c).a | a / u | imp(<v.e> | e / [u] / w | <w.d>))")});
  out.push_back({XRule::ExpImpRight,
                 parse_xnet("cut(exp(x; <x.c> ; c).a | a / u | imp(<v.e> | e / [u] / w | <w.d>))")});
  out.push_back({XRule::ActL,
                 parse_xnet("cut(<x.a> | g / u | imp(<v.c> | c / [u] / w | <w.d>))")});
  out.push_back({XRule::ActR, parse_xnet("cut(exp(x; <x.c> ; c).a | a / u | <y.b>)")});
  out.push_back({XRule::PropDL, active("cutL(<y.a> | a / u | <u.b>)")});
  out.push_back({XRule::PropCapL, active("cutL(<y.b> | a / u | <u.c>)")});
  out.push_back({XRule::PropExpOutsL,
                 active("cutL(exp(x; exp(z; <z.g> ; g).a ; b).a | a / u | <u.d>)")});
  out.push_back({XRule::PropExpInsL, active("cutL(exp(x; <x.a> ; c).e | a / u | <u.b>)")});
  out.push_back({XRule::PropImpL,
                 active("cutL(imp(<v.a> | c / [z] / w | <w.a>) | a / u | <u.b>)")});
  out.push_back({XRule::PropCutL,
                 active("cutL(cut(<v.a> | c / w | <w.a>) | a / u | <u.b>)")});
  out.push_back({XRule::PropDR, active("cutR(<y.a> | a / u | <u.b>)")});
  out.push_back({XRule::PropCapR, active("cutR(<y.a> | a / u | <w.b>)")});
  out.push_back({XRule::PropExpR, active("cutR(<y.a> | a / u | exp(x; <u.c> ; c).b)")});
  out.push_back({XRule::PropImpOutsR,
                 active("cutR(<y.a> | a / u | imp(<v.c> | c / [u] / w | "
                        "imp(<w.g> | g / [u] / z | <z.d>)))")});
  out.push_back({XRule::PropImpInsR,
                 active("cutR(<y.a> | a / u | imp(<u.c> | c / [t] / w | <w.b>))")});
  out.push_back({XRule::PropCutR,
                 active("cutR(<y.a> | a / u | cut(<u.c> | c / w | <w.b>))")});
  out.push_back({XRule::GcL, active("cutL(<y.b> | a / u | <u.c>)")});
  out.push_back({XRule::GcR, active("cutR(<y.a> | a / u | <w.b>)")});
  out.push_back({XRule::RenL, parse_xnet("cut(exp(x; <x.c> ; c).d | d / z | <z.a>)")});
  out.push_back({XRule::RenR,
                 parse_xnet("cut(<z.a> | a / x | imp(<v.c> | c / [x] / w | <w.d>))")});
  return out;
}

// ---------------------------------------------------------------------------
// corpus file IO

std::vector<std::string> read_corpus_lines(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open corpus file: " + path);
  std::vector<std::string> out;
  std::string line;
  while (std::getline(in, line)) {
    size_t start = line.find_first_not_of(" \t\r");
    if (start == std::string::npos) continue;
    if (line.compare(start, 2, "//") == 0) continue;
    size_t end = line.find_last_not_of(" \t\r");
    out.push_back(line.substr(start, end - start + 1));
  }
  return out;
}

std::vector<XPtr> load_x_corpus(const std::string& path, bool allow_active) {
  std::vector<XPtr> out;
  for (const auto& line : read_corpus_lines(path)) out.push_back(parse_xnet(line, allow_active));
  return out;
}

std::vector<LamPtr> load_lam_corpus(const std::string& path) {
  std::vector<LamPtr> out;
  for (const auto& line : read_corpus_lines(path)) out.push_back(parse_lam(line));
  return out;
}

void write_corpus_file(const std::string& path, const std::string& header,
                       const std::vector<std::string>& lines) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write corpus file: " + path);
  std::istringstream hdr(header);
  std::string hline;
  while (std::getline(hdr, hline)) out << "// " << hline << "\n";
  for (const auto& line : lines) out << line << "\n";
}

// ---------------------------------------------------------------------------
// generators

int Rng::below(int n) {
  if (n <= 1) return 0;
  // Rejection sampling on the raw engine output keeps the draw sequence
  // identical everywhere.
  uint32_t bound = static_cast<uint32_t>(n);
  uint32_t limit = std::mt19937::max() - std::mt19937::max() % bound;
  for (;;) {
    uint32_t raw = eng();
    if (raw < limit) return static_cast<int>(raw % bound);
  }
}

namespace {

const std::vector<std::string> kSockPool = {"x", "y", "z", "u", "w"};
const std::vector<std::string> kPlugPool = {"a", "b", "c", "d", "e"};
const std::vector<std::string> kVarPool = {"x", "y", "z", "u", "w"};

std::string pick(Rng& rng, const std::vector<std::string>& pool) {
  return pool[static_cast<size_t>(rng.below(static_cast<int>(pool.size())))];
}

XPtr random_net(Rng& rng, int size) {
  if (size <= 1) return capsule(pick(rng, kSockPool), pick(rng, kPlugPool));
  // Leaning on the binary kinds keeps generated nets cut-heavy, which is
  // where the interesting reductions live.
  int kind = rng.below(8);
  if (kind == 0) return capsule(pick(rng, kSockPool), pick(rng, kPlugPool));
  if (kind <= 3) {
    return export_net(pick(rng, kSockPool), random_net(rng, size - 1), pick(rng, kPlugPool),
                      pick(rng, kPlugPool));
  }
  int left_size = 1 + rng.below(size - 1);
  XPtr left = random_net(rng, left_size);
  XPtr right = random_net(rng, size - 1 - left_size);
  if (kind <= 5) {
    return import_net(left, pick(rng, kPlugPool), pick(rng, kSockPool), pick(rng, kSockPool),
                      right);
  }
  return cut_net(XKind::Cut, left, pick(rng, kPlugPool), pick(rng, kSockPool), right);
}

LamPtr random_lam(Rng& rng, int size, std::vector<std::string>& scope) {
  if (size <= 1) {
    if (!scope.empty() && rng.below(4) != 0)
      return lam_var(scope[static_cast<size_t>(rng.below(static_cast<int>(scope.size())))]);
    return lam_var(pick(rng, kVarPool));
  }
  if (rng.below(3) != 0) {
    std::string v = pick(rng, kVarPool);
    scope.push_back(v);
    LamPtr body = random_lam(rng, size - 1, scope);
    scope.pop_back();
    return lam_abs(v, body);
  }
  int left_size = 1 + rng.below(size - 1);
  LamPtr fun = random_lam(rng, left_size, scope);
  LamPtr arg = random_lam(rng, size - 1 - left_size, scope);
  return lam_app(fun, arg);
}

}  // namespace

std::vector<XPtr> generate_typed_x(uint32_t seed, int count, int max_size) {
  Rng rng(seed);
  std::vector<XPtr> out;
  std::set<std::string> seen;
  while (static_cast<int>(out.size()) < count) {
    XPtr p = random_net(rng, 2 + rng.below(max_size - 1));
    if (!infer_x(p).ok) continue;
    if (!seen.insert(alpha_canon_xnet(p)).second) continue;
    out.push_back(p);
  }
  return out;
}

std::vector<LamPtr> lambda_basics() {
  const char* terms[] = {
      "\\x.x",
      "\\x.\\y.x",
      "\\x.\\y.\\z.x z (y z)",
      "\\x.\\y.x y",
      "\\u.u (\\x.x)",
      "(\\x.x) y",
      "(\\x.x) (\\y.y)",
      "(\\x.\\y.x) u w",
      "(\\x.\\y.y x) z",
      "\\x.(\\y.y) x",
  };
  std::vector<LamPtr> out;
  for (const char* t : terms) out.push_back(parse_lam(t));
  return out;
}

void write_bundled_corpus(const std::string& dir, uint32_t x_seed, uint32_t lam_seed) {
  auto at = [&](const char* name) { return dir + "/" + name; };

  std::vector<std::string> lines;
  for (const auto& row : intro_cuts()) lines.push_back(print_xnet(row.net));
  write_corpus_file(at("intro-cuts.x"),
                    "the four capsule cuts: cut connector introduced on both sides,\n"
                    "one side, or neither side",
                    lines);

  write_corpus_file(at("peirce.x"),
                    "the witness of Peirce's law; types at |- g : ((A -> B) -> A) -> A",
                    {print_xnet(peirce_net())});

  lines.clear();
  for (const auto& e : rule_showcase()) lines.push_back(print_xnet(e.net));
  write_corpus_file(at("rule-showcase.x"),
                    "one net per rewrite rule tag, in tag order (ax, exp-ren, imp-ren,\n"
                    "exp-imp-left, exp-imp-right, act-l, act-r, the twelve propagation\n"
                    "tags, gc-l, gc-r, ren-l, ren-r); contains activated cuts",
                    lines);

  lines.clear();
  for (const auto& p : generate_typed_x(x_seed, 50, 6)) lines.push_back(print_xnet(p));
  write_corpus_file(at("generated.x"),
                    "50 generated typeable nets, sizes <= 6, seed " + std::to_string(x_seed) +
                        "\nregenerate: seqpi corpus-run --regen (SEQPI_SEED overrides the seed)",
                    lines);

  lines.clear();
  for (const auto& m : lambda_basics()) lines.push_back(print_lam(m));
  write_corpus_file(at("lambda-basics.lam"),
                    "hand-picked lambda terms: combinators and beta-reducible applications",
                    lines);

  lines.clear();
  for (const auto& m : generate_typed_lam(lam_seed, 50, 6)) lines.push_back(print_lam(m));
  write_corpus_file(at("lambda-generated.lam"),
                    "50 generated simply typeable lambda terms, sizes <= 6, seed " +
                        std::to_string(lam_seed) +
                        "\nregenerate: seqpi corpus-run --regen (SEQPI_SEED overrides the seed)",
                    lines);
}

std::vector<LamPtr> generate_typed_lam(uint32_t seed, int count, int max_size) {
  Rng rng(seed);
  std::vector<LamPtr> out;
  std::vector<std::string> scope;
  while (static_cast<int>(out.size()) < count) {
    scope.clear();
    LamPtr m = random_lam(rng, 2 + rng.below(max_size - 1), scope);
    if (!infer_lam(m).ok) continue;
    bool dup = false;
    for (const auto& kept : out)
      if (lam_alpha_eq(kept, m)) {
        dup = true;
        break;
      }
    if (dup) continue;
    out.push_back(m);
  }
  return out;
}

}  // namespace seqpi
