#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "edgecs/sched/instance.hpp"

namespace edgecs::sched {

struct DeviceGroup {
    double level = 0.0;            // l_h, the group's upload-time ceiling
    std::vector<DeviceId> members;  // nondecreasing t(i), ties by id
    double data = 0.0;
    bool discarded = false;  // D(group) below the requirement
};

// One group per distinct upload time (nondecreasing), members are devices with
// t(i) <= level and E(i) <= skew threshold. Throws InfeasibleError when every
// group is discarded.
std::vector<DeviceGroup> cd_grouping(const TrainInstance& inst);

// alpha * c(i) + beta * t(i) / |M|
double normalized_cost(const TrainInstance& inst, const DeviceProfile& d);

struct DualRound {
    double residual = 0.0;  // requirement minus data already gathered
    double y = 0.0;
    DeviceId chosen = 0;
    std::vector<double> potentials;  // b_i after the round, aligned with the group members
};

struct DualState {
    std::vector<DeviceId> selected;  // pick order
    std::vector<DeviceId> members;
    std::vector<double> potentials;
    std::vector<DualRound> rounds;
};

struct GatheringResult {
    std::vector<DeviceId> selected;  // ascending
    DualState state;
};

// Primal-dual covering: repeatedly pick argmin (c^(i) - b_i) / s(i) with
// s(i) = min(D(i), residual), raise every unpicked b_i by s(i) * y.
GatheringResult cd_gathering(const DeviceGroup& group, const TrainInstance& inst);

struct ChannelSchedule {
    Assignment assignment;
    std::vector<double> loads;
    double makespan = 0.0;
};

// Longest upload first onto the least-loaded channel (ties: lowest id, lowest channel).
ChannelSchedule cd_scheduling(const TrainInstance& inst, std::span<const DeviceId> subset,
                              std::size_t channels);

// Solution for a fixed selection scheduled with cd_scheduling; empty selections
// get zero loads.
ScheduleSolution scheduled_solution(const TrainInstance& inst, const char* solver,
                                    std::vector<DeviceId> selected);
ScheduleSolution empty_solution(const TrainInstance& inst, const char* solver);

struct Candidate {
    std::size_t group_index = 0;
    double level = 0.0;
    std::vector<DeviceId> selected;
    ChannelSchedule schedule;
    double cost = 0.0;  // beta * makespan + alpha * sum c(i)
};

// Cheapest feasible candidate; ties by smaller makespan then lexicographic set.
ScheduleSolution fs_selection(const TrainInstance& inst, std::span<const Candidate> candidates);

struct PrimalDualTrace {
    std::vector<DeviceGroup> groups;
    std::vector<Candidate> candidates;
    std::vector<DualState> duals;
};

ScheduleSolution solve_primal_dual(const TrainInstance& inst, PrimalDualTrace* trace = nullptr);

}  // namespace edgecs::sched
