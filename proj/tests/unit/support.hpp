#pragma once

#include "levyembed/levy_model.hpp"

namespace test_support {

inline levyembed::LevyModel jd() {
  return levyembed::LevyModel(1.0, 1.0, 1.0, levyembed::JumpLaw::exponential(1.0));
}

// P(X_T = 1) for the jump diffusion two-point target on {-1, 1}
inline double jd_two_point_p() { return 0.7317833267405526; }

}  // namespace test_support
