#pragma once

#include <cstddef>
#include <random>

#include "edgecs/sched/instance.hpp"

namespace edgecs::sched {

struct RandomInstanceSpec {
    std::size_t min_devices = 3;
    std::size_t max_devices = 8;
    std::size_t max_channels = 3;
    double max_upload_time = 2.0;  // t in (0, max]
    int max_data = 100;             // D in [1, max], integer
    double max_cost = 1.0;          // c in (0, max]
    double min_weight = 0.1;        // alpha, beta in [min_weight, 1]
};

// Feasible instance with the skew filter inactive (E = 0, threshold 1) and
// demand drawn uniformly from [1, sum D].
TrainInstance random_instance(const RandomInstanceSpec& spec, std::mt19937_64& rng);

}  // namespace edgecs::sched
