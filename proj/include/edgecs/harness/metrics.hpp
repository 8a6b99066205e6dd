#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <limits>
#include <string>
#include <vector>

namespace edgecs::harness {

inline constexpr double kUnset = std::numeric_limits<double>::quiet_NaN();

// One measurement event. Unset numeric fields are written as empty cells.
struct MetricsRecord {
    std::string scenario;
    std::string label;
    std::int64_t step = 0;
    double wall_seconds = kUnset;
    double loss = kUnset;
    double uplink_scalars = kUnset;
    double downlink_scalars = kUnset;
    double edge_scalars = kUnset;
    double objective = kUnset;
    double makespan = kUnset;
    double expenditure = kUnset;
    double accuracy = kUnset;
    double ratio = kUnset;
};

const std::vector<std::string>& metrics_columns();

// Header plus one row per record; numbers use 12 significant digits.
void write_metrics(std::ostream& out, const std::vector<MetricsRecord>& records);
void emit_metrics(const std::vector<MetricsRecord>& records, const std::filesystem::path& path,
                  bool allow_empty = false);

}  // namespace edgecs::harness
