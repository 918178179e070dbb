#pragma once

namespace mgtkit::cli {

// Parses argv, runs the selected subcommand, and maps failures to exit
// codes: 0 success, 1 usage error, 2 data error, 3 numeric failure.
// Error messages go to standard error.
int dispatch(int argc, const char* const* argv);

}  // namespace mgtkit::cli
