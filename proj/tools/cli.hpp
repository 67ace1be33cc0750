#ifndef EPIBEHAVE_CLI_HPP
#define EPIBEHAVE_CLI_HPP

namespace epibehave::cli {

// Full command-line front end. Exit codes: 0 success, 2 validation or
// configuration error, 3 numerical failure (JSON diagnostics on stderr).
int run_main(int argc, char** argv);

}  // namespace epibehave::cli

#endif
