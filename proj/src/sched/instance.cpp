#include "edgecs/sched/instance.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <iomanip>
#include <ostream>
#include <set>
#include <sstream>
#include <string>

#include "json.hpp"

#include "edgecs/error.hpp"

namespace edgecs::sched {

namespace {

// Shortest text that reads back to the same double.
std::string shortest(double v) {
    char buf[32];
    auto [end, ec] = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, end);
}

}  // namespace

void TrainInstance::validate() const {
    if (channels < 1) throw InvalidArgument("instance needs at least one channel");
    if (data_requirement < 0.0) throw InvalidArgument("data requirement must be >= 0");
    std::set<DeviceId> seen;
    for (const auto& d : devices) {
        if (!seen.insert(d.id).second) throw InvalidArgument("duplicate device id " + std::to_string(d.id));
        if (!(d.upload_time > 0.0))
            throw InvalidArgument("device " + std::to_string(d.id) + ": upload time must be > 0");
        if (d.data_quantity < 0.0 || d.cost < 0.0 || d.skewness < 0.0)
            throw InvalidArgument("device " + std::to_string(d.id) + ": D, E and c must be >= 0");
    }
}

const DeviceProfile& TrainInstance::device(DeviceId id) const {
    for (const auto& d : devices)
        if (d.id == id) return d;
    throw InvalidArgument("unknown device id " + std::to_string(id));
}

double TrainInstance::data_of(std::span<const DeviceId> ids) const {
    double s = 0.0;
    for (auto id : ids) s += device(id).data_quantity;
    return s;
}

double TrainInstance::cost_of(std::span<const DeviceId> ids) const {
    double s = 0.0;
    for (auto id : ids) s += device(id).cost;
    return s;
}

double objective(const TrainInstance& inst, std::span<const DeviceId> selected, double makespan) {
    return inst.alpha * inst.cost_of(selected) + inst.beta * makespan;
}

bool meets_data_requirement(const TrainInstance& inst, const ScheduleSolution& sol) {
    return inst.data_of(sol.selected) >= inst.data_requirement;
}

bool meets_skew_filter(const TrainInstance& inst, const ScheduleSolution& sol) {
    return std::all_of(sol.selected.begin(), sol.selected.end(),
                       [&](DeviceId id) { return inst.device(id).skewness <= inst.skew_threshold; });
}

bool meets_aggregate_skew(const TrainInstance& inst, const ScheduleSolution& sol) {
    double s = 0.0;
    for (auto id : sol.selected) s += inst.device(id).skewness;
    return s <= inst.skew_threshold;
}

bool within_list_scheduling_bound(const TrainInstance& inst, const ScheduleSolution& sol) {
    if (sol.selected.empty()) return sol.makespan == 0.0;
    double sum = 0.0;
    double longest = 0.0;
    for (auto id : sol.selected) {
        const double t = inst.device(id).upload_time;
        sum += t;
        longest = std::max(longest, t);
    }
    const double channels = static_cast<double>(sol.channel_loads.empty() ? inst.channels
                                                                          : sol.channel_loads.size());
    return sol.makespan <= sum / channels + longest + 1e-12;
}

void write_instance(std::ostream& out, const TrainInstance& inst) {
    out << "# channels=" << inst.channels << '\n'
        << "# data_requirement=" << shortest(inst.data_requirement) << '\n'
        << "# skew_threshold=" << shortest(inst.skew_threshold) << '\n'
        << "# alpha=" << shortest(inst.alpha) << '\n'
        << "# beta=" << shortest(inst.beta) << '\n'
        << "# deadline=" << shortest(inst.deadline) << '\n'
        << "id,t,D,E,c\n";
    for (const auto& d : inst.devices)
        out << d.id << ',' << shortest(d.upload_time) << ',' << shortest(d.data_quantity) << ','
            << shortest(d.skewness) << ',' << shortest(d.cost) << '\n';
}

void save_instance(const TrainInstance& inst, const std::filesystem::path& path) {
    std::ofstream out(path);
    if (!out) throw Error("cannot write instance: " + path.string());
    write_instance(out, inst);
}

TrainInstance read_instance(std::istream& in) {
    TrainInstance inst;
    std::string line;
    bool header_seen = false;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        if (line[0] == '#') {
            const auto eq = line.find('=');
            if (eq == std::string::npos) continue;
            std::string key = line.substr(1, eq - 1);
            key.erase(0, key.find_first_not_of(' '));
            key.erase(key.find_last_not_of(' ') + 1);
            const double value = std::stod(line.substr(eq + 1));
            if (key == "channels") inst.channels = static_cast<std::size_t>(value);
            else if (key == "data_requirement") inst.data_requirement = value;
            else if (key == "skew_threshold") inst.skew_threshold = value;
            else if (key == "alpha") inst.alpha = value;
            else if (key == "beta") inst.beta = value;
            else if (key == "deadline") inst.deadline = value;
            else throw InvalidArgument("unknown instance header key '" + key + "'");
            continue;
        }
        if (!header_seen) {
            if (line != "id,t,D,E,c") throw InvalidArgument("instance header must be id,t,D,E,c");
            header_seen = true;
            continue;
        }
        std::istringstream row(line);
        std::string cell[5];
        for (auto& c : cell)
            if (!std::getline(row, c, ','))
                throw InvalidArgument("malformed instance row at line " + std::to_string(line_no));
        try {
            inst.devices.push_back({std::stoi(cell[0]), std::stod(cell[1]), std::stod(cell[2]),
                                    std::stod(cell[3]), std::stod(cell[4])});
        } catch (const std::logic_error&) {
            throw InvalidArgument("non-numeric instance row at line " + std::to_string(line_no));
        }
    }
    if (!header_seen) throw InvalidArgument("instance file lacks the id,t,D,E,c header");
    inst.validate();
    return inst;
}

TrainInstance load_instance(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw Error("cannot read instance: " + path.string());
    return read_instance(in);
}

void write_solution(std::ostream& out, const ScheduleSolution& sol) {
    nlohmann::json channels = nlohmann::json::array();
    for (std::size_t m = 0; m < sol.channel_loads.size(); ++m) {
        std::vector<DeviceId> on;
        for (const auto& [id, ch] : sol.assignment)
            if (ch == m) on.push_back(id);
        channels.push_back({{"channel", m}, {"devices", on}, {"load", sol.channel_loads[m]}});
    }
    nlohmann::json j{{"solver", sol.solver},
                     {"selected", sol.selected},
                     {"channels", channels},
                     {"makespan", sol.makespan},
                     {"expenditure", sol.expenditure},
                     {"objective", sol.objective}};
    out << j.dump(2) << '\n';
}

TrainInstance example_one_instance() {
    TrainInstance inst;
    inst.devices = {{1, 0.6, 450, 0.0, 0.817},
                    {2, 0.5, 350, 0.0, 0.658},
                    {3, 0.4, 300, 0.0, 0.579},
                    {4, 1.9, 550, 0.0, 0.975},
                    {5, 0.2, 250, 0.0, 0.5}};
    inst.channels = 2;
    inst.data_requirement = 800;
    inst.skew_threshold = 1.0;
    inst.alpha = 0.5;
    inst.beta = 0.5;
    return inst;
}

}  // namespace edgecs::sched
