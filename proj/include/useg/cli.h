#ifndef USEG_CLI_H_
#define USEG_CLI_H_

#include <iosfwd>
#include <string>
#include <vector>

namespace useg {

inline constexpr int kExitOk = 0;
inline constexpr int kExitValidation = 1;
inline constexpr int kExitIo = 2;

// Runs the `useg` command line. `args` excludes the program name. Results go
// to `out` (or an --out file), diagnostics to `err`; line-oriented commands
// without --in read `in`.
int RunCli(const std::vector<std::string>& args, std::istream& in, std::ostream& out,
           std::ostream& err);

}  // namespace useg

#endif  // USEG_CLI_H_
