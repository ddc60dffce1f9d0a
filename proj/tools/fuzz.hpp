#pragma once

#include <cstdint>
#include <iosfwd>

namespace ltlfmc::tool
{
  struct fuzz_options
  {
    std::uint64_t seed = 1;
    std::size_t max_size = 6;
    std::size_t props = 2;
    std::size_t trials = 100;
  };

  /// Runs every oracle-agreement suite; prints one line per suite and
  /// returns true iff all trials agree.
  bool run_fuzz(const fuzz_options& opts, std::ostream& out);
}
