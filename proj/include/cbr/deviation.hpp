#ifndef CBR_DEVIATION_HPP
#define CBR_DEVIATION_HPP

#include <vector>

#include "cbr/game.hpp"

namespace cbr {

// Strict improvement (every coalition member strictly gains) versus weak
// improvement (every member weakly gains, at least one strictly).
enum class ImprovementMode { kStrict, kWeak };

struct DeviationSet {
  int base;            // profile index a
  Coalition coalition; // S
  ImprovementMode mode;
  std::vector<int> members;  // sorted profile indices
};

// A(S,a): profiles that agree with a outside S. Always contains a.
DeviationSet reachable_profiles(const Game& g, Coalition s, int a);

// I1(S,a) or I2(S,a) depending on mode. Never contains a.
DeviationSet improving_set(const Game& g, Coalition s, int a,
                           ImprovementMode mode);

// A(S,a) \ improving_set. Always contains a, never empty.
DeviationSet erroneous_set(const Game& g, Coalition s, int a,
                           ImprovementMode mode);

}  // namespace cbr

#endif
