#include "edgecs/sched/baselines.hpp"

#include <algorithm>
#include <functional>
#include <numeric>

#include "edgecs/error.hpp"

namespace edgecs::sched {

ScheduleSolution select_prefix(const TrainInstance& inst, std::span<const DeviceId> order,
                               const char* solver) {
    inst.validate();
    if (inst.data_requirement <= 0.0) return empty_solution(inst, solver);
    std::vector<DeviceId> picked;
    double gathered = 0.0;
    for (DeviceId id : order) {
        if (gathered >= inst.data_requirement) break;
        picked.push_back(id);
        gathered += inst.device(id).data_quantity;
    }
    if (gathered < inst.data_requirement)
        throw InfeasibleError(std::string(solver) + ": total data below the requirement");
    return scheduled_solution(inst, solver, std::move(picked));
}

ScheduleSolution solve_nfl(const TrainInstance& inst, std::mt19937_64& rng) {
    std::vector<DeviceId> order;
    for (const auto& d : inst.devices) order.push_back(d.id);
    std::sort(order.begin(), order.end());
    std::shuffle(order.begin(), order.end(), rng);
    return select_prefix(inst, order, "nfl");
}

ScheduleSolution solve_gcs(const TrainInstance& inst) {
    std::vector<DeviceProfile> ranked = inst.devices;
    std::sort(ranked.begin(), ranked.end(), [](const auto& a, const auto& b) {
        const bool free_a = a.cost == 0.0;
        const bool free_b = b.cost == 0.0;
        if (free_a != free_b) return free_a;
        if (!free_a) {
            const double ra = a.data_quantity / a.cost;
            const double rb = b.data_quantity / b.cost;
            if (ra != rb) return ra > rb;
        }
        return a.id < b.id;
    });
    std::vector<DeviceId> order;
    for (const auto& d : ranked) order.push_back(d.id);
    return select_prefix(inst, order, "gcs");
}

namespace {

struct BranchAndBound {
    std::vector<double> times;  // descending
    std::vector<double> loads;
    std::vector<std::size_t> current;
    std::vector<std::size_t> best_assignment;
    double best = 0.0;

    void search(std::size_t job, double current_max) {
        if (job == times.size()) {
            if (current_max < best) {
                best = current_max;
                best_assignment = current;
            }
            return;
        }
        for (std::size_t m = 0; m < loads.size(); ++m) {
            // Channels with equal load are interchangeable.
            bool duplicate = false;
            for (std::size_t prev = 0; prev < m; ++prev)
                if (loads[prev] == loads[m]) duplicate = true;
            if (duplicate) continue;
            const double next = loads[m] + times[job];
            if (next >= best) continue;
            loads[m] = next;
            current[job] = m;
            search(job + 1, std::max(current_max, next));
            loads[m] -= times[job];
        }
    }
};

BranchAndBound run_branch_and_bound(std::vector<double> times, std::size_t channels) {
    if (channels < 1) throw InvalidArgument("need at least one channel");
    BranchAndBound bb;
    std::sort(times.begin(), times.end(), std::greater<>());
    bb.times = std::move(times);
    bb.current.assign(bb.times.size(), 0);
    // LPT gives the incumbent.
    std::vector<double> lpt(channels, 0.0);
    bb.best_assignment.resize(bb.times.size());
    for (std::size_t j = 0; j < bb.times.size(); ++j) {
        const auto m = static_cast<std::size_t>(std::min_element(lpt.begin(), lpt.end()) - lpt.begin());
        lpt[m] += bb.times[j];
        bb.best_assignment[j] = m;
    }
    bb.best = bb.times.empty() ? 0.0 : *std::max_element(lpt.begin(), lpt.end());
    bb.loads.assign(channels, 0.0);
    bb.search(0, 0.0);
    return bb;
}

}  // namespace

double optimal_makespan(std::span<const double> times, std::size_t channels) {
    return run_branch_and_bound({times.begin(), times.end()}, channels).best;
}

ChannelSchedule optimal_schedule(const TrainInstance& inst, std::span<const DeviceId> subset,
                                 std::size_t channels) {
    std::vector<DeviceId> order(subset.begin(), subset.end());
    std::sort(order.begin(), order.end(), [&](DeviceId a, DeviceId b) {
        const double ta = inst.device(a).upload_time;
        const double tb = inst.device(b).upload_time;
        return ta != tb ? ta > tb : a < b;
    });
    std::vector<double> times;
    for (auto id : order) times.push_back(inst.device(id).upload_time);
    auto bb = run_branch_and_bound(times, channels);

    ChannelSchedule s;
    s.loads.assign(channels, 0.0);
    for (std::size_t j = 0; j < order.size(); ++j) {
        s.assignment[order[j]] = bb.best_assignment[j];
        s.loads[bb.best_assignment[j]] += times[j];
    }
    s.makespan = order.empty() ? 0.0 : *std::max_element(s.loads.begin(), s.loads.end());
    return s;
}

ScheduleSolution brute_force(const TrainInstance& inst, std::size_t cap) {
    inst.validate();
    if (inst.devices.size() > cap)
        throw InvalidArgument("brute_force: " + std::to_string(inst.devices.size()) +
                              " devices exceeds cap " + std::to_string(cap));
    if (inst.channels > 3) throw InvalidArgument("brute_force supports at most 3 channels");
    if (inst.data_requirement <= 0.0) return empty_solution(inst, "optimal");

    std::vector<const DeviceProfile*> eligible;
    for (const auto& d : inst.devices)
        if (d.skewness <= inst.skew_threshold) eligible.push_back(&d);
    std::sort(eligible.begin(), eligible.end(), [](auto* a, auto* b) { return a->id < b->id; });

    bool found = false;
    double best_obj = 0.0;
    std::vector<DeviceId> best_set;
    const std::size_t n = eligible.size();
    for (std::uint32_t mask = 1; mask < (1u << n); ++mask) {
        std::vector<DeviceId> set;
        double data = 0.0, cost = 0.0, sum_t = 0.0, max_t = 0.0;
        std::vector<double> times;
        for (std::size_t k = 0; k < n; ++k) {
            if (!(mask & (1u << k))) continue;
            set.push_back(eligible[k]->id);
            data += eligible[k]->data_quantity;
            cost += eligible[k]->cost;
            sum_t += eligible[k]->upload_time;
            max_t = std::max(max_t, eligible[k]->upload_time);
            times.push_back(eligible[k]->upload_time);
        }
        if (data < inst.data_requirement) continue;
        const double lower = inst.alpha * cost +
                             inst.beta * std::max(max_t, sum_t / static_cast<double>(inst.channels));
        if (found && lower > best_obj) continue;
        const double obj = objective(inst, set, optimal_makespan(times, inst.channels));
        if (!found || obj < best_obj || (obj == best_obj && set < best_set)) {
            found = true;
            best_obj = obj;
            best_set = std::move(set);
        }
    }
    if (!found) throw InfeasibleError("brute_force: no subset meets the data requirement");

    auto schedule = optimal_schedule(inst, best_set, inst.channels);
    ScheduleSolution sol;
    sol.solver = "optimal";
    sol.expenditure = inst.cost_of(best_set);
    sol.objective = objective(inst, best_set, schedule.makespan);
    sol.selected = std::move(best_set);
    sol.assignment = std::move(schedule.assignment);
    sol.channel_loads = std::move(schedule.loads);
    sol.makespan = schedule.makespan;
    return sol;
}

}  // namespace edgecs::sched
