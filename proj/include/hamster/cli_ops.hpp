// SPDX-License-Identifier: Apache-2.0
//
// Command-line entry points: analyze one project, analyze a corpus manifest
// with bounded parallelism, and aggregate model documents into reports.
#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace hamster {

// Dispatches `args` (without the program name) to the analyze/corpus/report
// subcommand. Data goes to files or `out`; logs go to `err`. Returns the
// process exit code: 0 success, 2 partial success, 1 fatal error.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace hamster
