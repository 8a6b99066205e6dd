#pragma once

#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <map>
#include <span>
#include <string>
#include <vector>

namespace edgecs::sched {

using DeviceId = int;

struct DeviceProfile {
    DeviceId id = 0;
    double upload_time = 1.0;    // t(i), seconds, > 0
    double data_quantity = 0.0;  // D(i)
    double skewness = 0.0;       // E(i), EMD
    double cost = 0.0;           // c(i) = computation + data expenditure
};

struct TrainInstance {
    std::vector<DeviceProfile> devices;
    std::size_t channels = 1;
    double data_requirement = 0.0;  // required total D
    double skew_threshold = 0.0;    // per-device E filter
    double alpha = 0.5;
    double beta = 0.5;
    double deadline = 0.0;  // carried only

    // Throws InvalidArgument on duplicate ids, t <= 0, negative D or c, channels < 1.
    void validate() const;
    const DeviceProfile& device(DeviceId id) const;
    double data_of(std::span<const DeviceId> ids) const;
    double cost_of(std::span<const DeviceId> ids) const;
};

// Selected device -> channel index.
using Assignment = std::map<DeviceId, std::size_t>;

struct ScheduleSolution {
    std::string solver;
    std::vector<DeviceId> selected;  // ascending
    Assignment assignment;
    std::vector<double> channel_loads;
    double makespan = 0.0;
    double expenditure = 0.0;
    double objective = 0.0;
};

// alpha * sum c(i) + beta * makespan
double objective(const TrainInstance& inst, std::span<const DeviceId> selected, double makespan);

// D(selected) >= required demand.
bool meets_data_requirement(const TrainInstance& inst, const ScheduleSolution& sol);
// E(i) <= threshold for every selected device.
bool meets_skew_filter(const TrainInstance& inst, const ScheduleSolution& sol);
// Aggregate form: sum of E(i) over selected <= threshold.
bool meets_aggregate_skew(const TrainInstance& inst, const ScheduleSolution& sol);
// makespan <= sum t / |M| + max t (+ 1e-12).
bool within_list_scheduling_bound(const TrainInstance& inst, const ScheduleSolution& sol);

// Instance file: "# key=value" header lines (channels, data_requirement,
// skew_threshold, alpha, beta, deadline) then CSV "id,t,D,E,c".
void write_instance(std::ostream& out, const TrainInstance& inst);
void save_instance(const TrainInstance& inst, const std::filesystem::path& path);
TrainInstance read_instance(std::istream& in);
TrainInstance load_instance(const std::filesystem::path& path);

void write_solution(std::ostream& out, const ScheduleSolution& sol);

// Five devices and two channels with alpha = beta = 0.5 and demand 800.
TrainInstance example_one_instance();

}  // namespace edgecs::sched
