#include "edgecs/sched/primal_dual.hpp"

#include <algorithm>
#include <stdexcept>
#include <limits>

#include "edgecs/error.hpp"

namespace edgecs::sched {

namespace {

ScheduleSolution make_solution(const TrainInstance& inst, const char* solver,
                               std::vector<DeviceId> selected, ChannelSchedule schedule) {
    std::sort(selected.begin(), selected.end());
    ScheduleSolution sol;
    sol.solver = solver;
    sol.expenditure = inst.cost_of(selected);
    sol.objective = objective(inst, selected, schedule.makespan);
    sol.selected = std::move(selected);
    sol.assignment = std::move(schedule.assignment);
    sol.channel_loads = std::move(schedule.loads);
    sol.makespan = schedule.makespan;
    return sol;
}

}  // namespace

ScheduleSolution empty_solution(const TrainInstance& inst, const char* solver) {
    return make_solution(inst, solver, {},
                         ChannelSchedule{{}, std::vector<double>(inst.channels, 0.0), 0.0});
}

ScheduleSolution scheduled_solution(const TrainInstance& inst, const char* solver,
                                    std::vector<DeviceId> selected) {
    if (selected.empty()) return empty_solution(inst, solver);
    auto schedule = cd_scheduling(inst, selected, inst.channels);
    return make_solution(inst, solver, std::move(selected), std::move(schedule));
}

std::vector<DeviceGroup> cd_grouping(const TrainInstance& inst) {
    inst.validate();
    if (inst.devices.empty()) throw InfeasibleError("no candidate devices");

    std::vector<DeviceProfile> by_time = inst.devices;
    std::sort(by_time.begin(), by_time.end(), [](const auto& a, const auto& b) {
        return a.upload_time != b.upload_time ? a.upload_time < b.upload_time : a.id < b.id;
    });
    std::vector<double> levels;
    for (const auto& d : by_time)
        if (levels.empty() || d.upload_time != levels.back()) levels.push_back(d.upload_time);

    std::vector<DeviceGroup> groups;
    for (double level : levels) {
        DeviceGroup g;
        g.level = level;
        for (const auto& d : by_time) {
            if (d.upload_time > level) break;
            if (d.skewness > inst.skew_threshold) continue;
            g.members.push_back(d.id);
            g.data += d.data_quantity;
        }
        g.discarded = g.data < inst.data_requirement;
        groups.push_back(std::move(g));
    }
    if (std::all_of(groups.begin(), groups.end(), [](const auto& g) { return g.discarded; }))
        throw InfeasibleError("no group meets the data requirement under the skew filter");
    return groups;
}

double normalized_cost(const TrainInstance& inst, const DeviceProfile& d) {
    return inst.alpha * d.cost + inst.beta * d.upload_time / static_cast<double>(inst.channels);
}

GatheringResult cd_gathering(const DeviceGroup& group, const TrainInstance& inst) {
    if (inst.data_of(group.members) < inst.data_requirement)
        throw InvalidArgument("cd_gathering: group data below the requirement");

    GatheringResult out;
    auto& st = out.state;
    st.members = group.members;
    st.potentials.assign(group.members.size(), 0.0);
    std::vector<bool> taken(group.members.size(), false);
    double gathered = 0.0;

    while (gathered < inst.data_requirement && st.selected.size() < group.members.size()) {
        const double residual = inst.data_requirement - gathered;
        std::vector<double> share(group.members.size(), 0.0);
        double best_y = std::numeric_limits<double>::infinity();
        std::size_t best = group.members.size();
        for (std::size_t k = 0; k < group.members.size(); ++k) {
            if (taken[k]) continue;
            const auto& d = inst.device(group.members[k]);
            share[k] = std::min(d.data_quantity, residual);
            if (share[k] <= 0.0) continue;
            const double y = (normalized_cost(inst, d) - st.potentials[k]) / share[k];
            if (y < best_y || (y == best_y && group.members[k] < group.members[best])) {
                best_y = y;
                best = k;
            }
        }
        if (best == group.members.size()) break;

        for (std::size_t k = 0; k < group.members.size(); ++k)
            if (!taken[k]) st.potentials[k] += share[k] * best_y;
        taken[best] = true;
        st.selected.push_back(group.members[best]);
        gathered += inst.device(group.members[best]).data_quantity;
        st.rounds.push_back({residual, best_y, group.members[best], st.potentials});
    }

    out.selected = st.selected;
    std::sort(out.selected.begin(), out.selected.end());
    return out;
}

ChannelSchedule cd_scheduling(const TrainInstance& inst, std::span<const DeviceId> subset,
                              std::size_t channels) {
    if (channels < 1) throw InvalidArgument("cd_scheduling needs at least one channel");
    if (subset.empty()) throw InvalidArgument("cd_scheduling: empty device subset");

    std::vector<DeviceId> order(subset.begin(), subset.end());
    std::sort(order.begin(), order.end(), [&](DeviceId a, DeviceId b) {
        const double ta = inst.device(a).upload_time;
        const double tb = inst.device(b).upload_time;
        return ta != tb ? ta > tb : a < b;
    });

    ChannelSchedule s;
    s.loads.assign(channels, 0.0);
    for (DeviceId id : order) {
        const auto m = static_cast<std::size_t>(
            std::min_element(s.loads.begin(), s.loads.end()) - s.loads.begin());
        s.loads[m] += inst.device(id).upload_time;
        s.assignment[id] = m;
    }
    s.makespan = *std::max_element(s.loads.begin(), s.loads.end());

    // List scheduling never exceeds the average load plus the longest job.
    double total = 0.0;
    for (DeviceId id : order) total += inst.device(id).upload_time;
    const double bound = total / static_cast<double>(channels) + inst.device(order.front()).upload_time;
    if (s.makespan > bound + 1e-12) throw std::logic_error("cd_scheduling exceeded sum/|M| + max t");
    return s;
}

ScheduleSolution fs_selection(const TrainInstance& inst, std::span<const Candidate> candidates) {
    const Candidate* best = nullptr;
    for (const auto& c : candidates) {
        if (inst.data_of(c.selected) < inst.data_requirement) continue;
        if (!best) {
            best = &c;
            continue;
        }
        if (c.cost != best->cost) {
            if (c.cost < best->cost) best = &c;
        } else if (c.schedule.makespan != best->schedule.makespan) {
            if (c.schedule.makespan < best->schedule.makespan) best = &c;
        } else if (c.selected < best->selected) {
            best = &c;
        }
    }
    if (!best) throw InfeasibleError("no feasible candidate selection");
    return make_solution(inst, "primal-dual", best->selected, best->schedule);
}

ScheduleSolution solve_primal_dual(const TrainInstance& inst, PrimalDualTrace* trace) {
    inst.validate();
    if (inst.data_requirement <= 0.0) return empty_solution(inst, "primal-dual");

    auto groups = cd_grouping(inst);
    std::vector<Candidate> candidates;
    std::vector<DualState> duals;
    for (std::size_t h = 0; h < groups.size(); ++h) {
        if (groups[h].discarded) continue;
        auto gathered = cd_gathering(groups[h], inst);
        Candidate c;
        c.group_index = h;
        c.level = groups[h].level;
        c.selected = gathered.selected;
        c.schedule = cd_scheduling(inst, c.selected, inst.channels);
        c.cost = inst.beta * c.schedule.makespan + inst.alpha * inst.cost_of(c.selected);
        candidates.push_back(std::move(c));
        duals.push_back(std::move(gathered.state));
    }
    auto sol = fs_selection(inst, candidates);
    if (trace) *trace = {std::move(groups), std::move(candidates), std::move(duals)};
    return sol;
}

}  // namespace edgecs::sched
