#pragma once

#include <random>

#include "dianet/compose.hpp"

namespace dianet {

// Knobs for random system generation. Generated systems satisfy the
// modelling assumptions: every state has a successor, unobservable actions
// never cycle, communication happens on observable labels only, faults may
// occur in several components.
struct RandomSystemParams {
  int min_components = 2;
  int max_components = 3;
  int max_states = 6;
  int max_observables = 5;
  int max_faults = 2;
  int max_private_unobservables = 1;  // per component
};

SystemSpec random_system(std::mt19937& rng, const RandomSystemParams& params,
                         const std::string& name);

}  // namespace dianet
