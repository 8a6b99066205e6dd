#pragma once

#include <cstddef>
#include <random>
#include <span>

#include "edgecs/sched/primal_dual.hpp"

namespace edgecs::sched {

// Take devices in the given order until the requirement is met, then schedule.
ScheduleSolution select_prefix(const TrainInstance& inst, std::span<const DeviceId> order,
                               const char* solver);

// Random order from rng.
ScheduleSolution solve_nfl(const TrainInstance& inst, std::mt19937_64& rng);

// Data per cost, descending; zero cost first; ties by lowest id.
ScheduleSolution solve_gcs(const TrainInstance& inst);

// Exact minimum makespan of the given upload times on `channels` machines.
double optimal_makespan(std::span<const double> times, std::size_t channels);

// Assignment achieving the exact minimum makespan (branch and bound).
ChannelSchedule optimal_schedule(const TrainInstance& inst, std::span<const DeviceId> subset,
                                 std::size_t channels);

// Exhaustive optimum over subsets passing the per-device skew filter.
// Requires |K| <= cap and |M| <= 3.
ScheduleSolution brute_force(const TrainInstance& inst, std::size_t cap = 10);

}  // namespace edgecs::sched
