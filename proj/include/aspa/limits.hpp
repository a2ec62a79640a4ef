// Resource caps shared by the pipeline stages.
#pragma once

#include <cstddef>
#include <cstdint>

namespace aspa {

struct Limits {
  std::size_t max_ground_rules = 1'000'000;
  std::size_t max_check_base = 20;      // brute-force is_solution / m_solutions
  std::size_t max_full_base = 12;       // enumeration of all solutions
  std::size_t max_minimal_base = 16;    // generic Find_Solution search
  std::size_t max_monotone_base = 16;   // brute-force monotonicity test
  std::size_t max_model_atoms = 22;     // exhaustive subset search for minimality
  std::size_t max_candidate_base = 18;  // generate-and-test enumeration
  std::uint64_t max_search_nodes = std::uint64_t{1} << 24;
};

// Which atoms an aggregate's base H(l) ranges over.
enum class BaseMode { HeadRestricted, FullPattern };

}  // namespace aspa
