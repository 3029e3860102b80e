#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "basp/graph.hpp"
#include "basp/search.hpp"

namespace basp {

// Exhaustive search over walks from the source of at most max_len nodes,
// each planned with the query's boundary speeds. Prefixes that already take
// at least the best known time are pruned. Throws kBudgetExceeded once more
// than `budget` words have been enumerated.
Solution BruteForce(const RoadGraph& g, int max_len, const PlanOptions& options = {},
                    std::size_t budget = 10'000'000);

struct DpResult {
  double time = kInf;
  // (position, squared speed) states settled by the search.
  std::size_t states = 0;
  // Squared-speed levels available at each position.
  std::size_t levels = 0;
  // Positions of the unit-subdivided graph.
  std::size_t positions = 0;
};

// Dynamic program for instances with positive integer arc lengths, constant
// rational bounds and unit acceleration magnitude. Every arc is split into
// unit arcs and the search runs over (position, squared speed) pairs.
// Throws kNotUnitInstance when the hypotheses fail.
DpResult PseudoPolyDp(const RoadGraph& g);

// Route graph whose optimum is sqrt(2W) exactly when the weights can be
// split into two halves of equal sum (W is the total).
RoadGraph PartitionInstance(const std::vector<std::uint32_t>& weights);

}  // namespace basp
