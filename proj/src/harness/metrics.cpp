#include "edgecs/harness/metrics.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <ostream>

#include "edgecs/error.hpp"

namespace edgecs::harness {

const std::vector<std::string>& metrics_columns() {
    static const std::vector<std::string> cols{
        "scenario",  "label",      "step",     "wall_seconds", "loss",
        "uplink_scalars", "downlink_scalars", "edge_scalars", "objective", "makespan",
        "expenditure", "accuracy", "ratio"};
    return cols;
}

namespace {

void put_number(std::ostream& out, double v) {
    if (std::isnan(v)) return;
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    out << buf;
}

}  // namespace

void write_metrics(std::ostream& out, const std::vector<MetricsRecord>& records) {
    const auto& cols = metrics_columns();
    for (std::size_t i = 0; i < cols.size(); ++i) out << (i ? "," : "") << cols[i];
    out << '\n';
    for (const auto& r : records) {
        out << r.scenario << ',' << r.label << ',' << r.step;
        for (double v : {r.wall_seconds, r.loss, r.uplink_scalars, r.downlink_scalars, r.edge_scalars,
                         r.objective, r.makespan, r.expenditure, r.accuracy, r.ratio}) {
            out << ',';
            put_number(out, v);
        }
        out << '\n';
    }
}

void emit_metrics(const std::vector<MetricsRecord>& records, const std::filesystem::path& path,
                  bool allow_empty) {
    if (records.empty() && !allow_empty) throw InvalidArgument("no metrics records to emit");
    std::ofstream out(path);
    if (!out) throw Error("cannot write metrics file: " + path.string());
    write_metrics(out, records);
    out.flush();
    if (!out) throw Error("failed writing metrics file: " + path.string());
}

}  // namespace edgecs::harness
