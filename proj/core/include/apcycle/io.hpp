#pragma once

#include <filesystem>
#include <iosfwd>
#include <span>

#include <nlohmann/json.hpp>

#include "apcycle/decomposition.hpp"
#include "apcycle/engine.hpp"
#include "apcycle/network.hpp"
#include "apcycle/polytope.hpp"
#include "apcycle/tropical.hpp"

namespace apcycle {

/// Version stamped into every JSON document this library writes.
inline constexpr int kSchemaVersion = 1;

/// Network file: {"N": int, "omega": [N], "coupling": [N], "delta": [N]}.
/// Missing coupling defaults to 1.0; missing omega and delta to 0.0.
/// Throws InvalidNetwork on malformed input.
CycleNetwork network_from_json(const nlohmann::json& doc);
nlohmann::json network_to_json(const CycleNetwork& net);
CycleNetwork read_network(const std::filesystem::path& path);
void write_network(const std::filesystem::path& path, const CycleNetwork& net);

nlohmann::json complex_to_json(Complex z);
nlohmann::json vector_to_json(const CVector& v);

nlohmann::json cell_to_json(const Cell& cell);
nlohmann::json cells_to_json(int N, std::span<const Cell> cells);
nlohmann::json subnetworks_to_json(int N, std::span<const PrimitiveSubnetwork> subs);
nlohmann::json tropical_to_json(int N, std::span<const TropicalPoint> points);

struct ReportFormat {
    bool include_paths = false;
    bool include_timing = false;
    bool include_trace = false;
};

nlohmann::json report_to_json(const SolveReport& report, const ReportFormat& format = {});

}  // namespace apcycle
