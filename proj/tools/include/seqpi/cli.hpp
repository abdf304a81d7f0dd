#pragma once

// In-process entry point for the seqpi command line tool. The binary's
// main() is a thin wrapper; tests drive invocations through cli_run with
// their own streams.

#include <iosfwd>
#include <string>
#include <vector>

namespace seqpi {

// Runs one invocation; args are the words after the program name. Returns
// the exit status: 0 success, 1 the requested check failed (type error, no
// simulation, failing criterion), 2 bad usage or unreadable input. Passing
// "-" where a file is expected reads terms from in. Every invocation
// starts from fresh state, so equal invocations print equal bytes.
int cli_run(const std::vector<std::string>& args, std::istream& in, std::ostream& out,
            std::ostream& err);

}  // namespace seqpi
