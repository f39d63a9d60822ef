#pragma once

#include <ostream>
#include <string>
#include <vector>

#include "cauchy/distributions.hpp"

namespace cauchy::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 1;
inline constexpr int kExitNumerical = 2;

// Runs one invocation; `args` excludes the program name. Returns the exit
// code: 0 success, 1 user error, 2 numerical failure.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

// CSV table re_gamma,im_gamma,re_F,im_F of the Mobius statistic over `grid`.
std::string emit_field_grid(const SampleSet& s, const std::vector<Complex>& grid);

}  // namespace cauchy::cli
