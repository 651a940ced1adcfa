#include "ocsyn/summary.hpp"

namespace ocsyn {

summary_relation summarize(reach_engine& engine, std::uint64_t i) {
  return {i, engine.reach(any_omega_power(i))};
}

}  // namespace ocsyn
