#pragma once

#include "ocsyn/reach.hpp"

namespace ocsyn {

/// The relation of paths of length w^i + 1 with exact visit sets.  Level 0
/// is the one-step relation; level k-1 summarizes one environment block.
struct summary_relation {
  std::uint64_t level = 0;
  reach_relation triples;
};

/// Computes the level-i summary through the engine's shared memo, so repeated
/// and nested requests reuse the same closure work.
summary_relation summarize(reach_engine& engine, std::uint64_t i);

}  // namespace ocsyn
