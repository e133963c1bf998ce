#ifndef REVANA_SYNTHETIC_HPP
#define REVANA_SYNTHETIC_HPP

#include <cstdint>

#include "revana/data.hpp"

namespace revana {

inline constexpr std::uint64_t kSyntheticDietSeed = 20130415;

/// The bundled demonstration dataset: one dominant index column (hdi) and
/// five consumption-style covariates, all driven by a latent development
/// factor plus a shared dietary factor, with cholesterol as the response.
/// Deterministic in the seed; data/synthetic_diet.csv is the output of this
/// generator at the default arguments.
DataMatrix synthetic_diet_dataset(std::uint64_t seed = kSyntheticDietSeed, int rows = 155);

}  // namespace revana

#endif
