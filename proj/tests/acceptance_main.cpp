// Acceptance runner: one pass/fail line per criterion, exit 0 only when
// every selected criterion passes.
//
//   acceptance [--corpus DIR] [--only N[,M...]]

#include <cstdio>
#include <cstdlib>
#include <iostream>
#include <string>

#include "seqpi/acceptance.hpp"

int main(int argc, char** argv) {
  seqpi::AcceptanceOptions opt;
  for (int i = 1; i < argc; i++) {
    std::string arg = argv[i];
    if (arg == "--corpus" && i + 1 < argc) {
      opt.corpus_dir = argv[++i];
    } else if (arg == "--only" && i + 1 < argc) {
      std::string list = argv[++i];
      std::size_t pos = 0;
      while (pos < list.size()) {
        std::size_t comma = list.find(',', pos);
        if (comma == std::string::npos) comma = list.size();
        opt.only.push_back(std::atoi(list.substr(pos, comma - pos).c_str()));
        pos = comma + 1;
      }
    } else {
      std::fprintf(stderr, "usage: acceptance [--corpus DIR] [--only N[,M...]]\n");
      return 2;
    }
  }
  auto results = seqpi::run_acceptance(opt, std::cout);
  std::size_t failed = 0;
  for (const auto& r : results) failed += r.pass ? 0 : 1;
  return failed == 0 ? 0 : 1;
}
