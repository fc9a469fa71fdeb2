#ifndef RELALG_CLI_HPP
#define RELALG_CLI_HPP

#include <iosfwd>
#include <string>
#include <vector>

namespace relalg::cli {

  // Exit statuses.
  inline constexpr int holds        = 0;
  inline constexpr int fails        = 1;
  inline constexpr int usage_error  = 2;

  // Runs one command line (without the program name). Reports go to out,
  // diagnostics to err.
  int run(std::vector<std::string> const& args, std::ostream& out,
          std::ostream& err);

}  // namespace relalg::cli

#endif  // RELALG_CLI_HPP
