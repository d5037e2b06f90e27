#include "apcycle/io.hpp"

#include <cmath>
#include <fstream>

#include "apcycle/errors.hpp"

namespace apcycle {

namespace {

using nlohmann::json;

std::vector<double> read_list(const json& doc, const char* key, int N, double fallback) {
    if (!doc.contains(key) || doc.at(key).is_null()) {
        return std::vector<double>(static_cast<std::size_t>(N), fallback);
    }
    const json& value = doc.at(key);
    if (!value.is_array()) throw InvalidNetwork(std::string("field '") + key + "' must be an array");
    std::vector<double> out;
    for (const json& entry : value) {
        if (!entry.is_number()) throw InvalidNetwork(std::string("field '") + key + "' must hold numbers");
        out.push_back(entry.get<double>());
    }
    if (static_cast<int>(out.size()) != N) {
        throw InvalidNetwork(std::string("field '") + key + "' must have N = " + std::to_string(N) +
                             " entries, got " + std::to_string(out.size()));
    }
    return out;
}

json edge_to_json(DirectedEdge edge) { return json::array({edge.from, edge.to}); }

json finite_or_null(double value) { return std::isfinite(value) ? json(value) : json(nullptr); }

}  // namespace

CycleNetwork network_from_json(const json& doc) {
    if (!doc.is_object()) throw InvalidNetwork("network document must be a JSON object");
    if (!doc.contains("N") || !doc.at("N").is_number_integer()) {
        throw InvalidNetwork("network document needs an integer field 'N'");
    }
    CycleNetwork net;
    net.N = doc.at("N").get<int>();
    if (net.N < 3) throw InvalidNetwork("cycle networks need N >= 3, got " + std::to_string(net.N));
    net.frequencies = read_list(doc, "omega", net.N, 0.0);
    net.couplings = read_list(doc, "coupling", net.N, 1.0);
    net.phase_shifts = read_list(doc, "delta", net.N, 0.0);
    net.validate();
    return net;
}

json network_to_json(const CycleNetwork& net) {
    return json{{"schema_version", kSchemaVersion},
                {"N", net.N},
                {"omega", net.frequencies},
                {"coupling", net.couplings},
                {"delta", net.phase_shifts}};
}

CycleNetwork read_network(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw InvalidNetwork("cannot open network file " + path.string());
    json doc;
    try {
        in >> doc;
    } catch (const json::parse_error& e) {
        throw InvalidNetwork("network file " + path.string() + " is not valid JSON: " + e.what());
    }
    return network_from_json(doc);
}

void write_network(const std::filesystem::path& path, const CycleNetwork& net) {
    std::ofstream out(path);
    if (!out) throw Error("cannot write " + path.string());
    out << network_to_json(net).dump(2) << '\n';
}

json complex_to_json(Complex z) { return json::array({z.real(), z.imag()}); }

json vector_to_json(const CVector& v) {
    json out = json::array();
    for (Eigen::Index i = 0; i < v.size(); ++i) out.push_back(complex_to_json(v[i]));
    return out;
}

json cell_to_json(const Cell& cell) {
    json edges = json::array();
    for (const DirectedEdge& edge : cell.edges) edges.push_back(edge_to_json(edge));
    return json{{"lambda", cell.lambda ? json(cell.lambda->lambdas) : json(nullptr)},
                {"normal", cell.normal},
                {"edges", edges},
                {"certified", cell.certified}};
}

json cells_to_json(int N, std::span<const Cell> cells) {
    json records = json::array();
    for (const Cell& cell : cells) records.push_back(cell_to_json(cell));
    return json{{"schema_version", kSchemaVersion},
                {"N", N},
                {"bound", bound(N).str()},
                {"count", cells.size()},
                {"cells", records}};
}

json subnetworks_to_json(int N, std::span<const PrimitiveSubnetwork> subs) {
    json records = json::array();
    for (const PrimitiveSubnetwork& sub : subs) {
        json edges = json::array();
        for (const DirectedEdge& edge : sub.edges) edges.push_back(edge_to_json(edge));
        records.push_back(json{{"cell", sub.source_cell}, {"edges", edges}});
    }
    return json{{"schema_version", kSchemaVersion}, {"N", N}, {"subnetworks", records}};
}

json tropical_to_json(int N, std::span<const TropicalPoint> points) {
    json records = json::array();
    for (const TropicalPoint& p : points) {
        records.push_back(json{{"coords", p.coords}, {"multiplicity", p.multiplicity}});
    }
    return json{{"schema_version", kSchemaVersion},
                {"N", N},
                {"valuation", valuation_table(N)},
                {"points", records}};
}

json report_to_json(const SolveReport& report, const ReportFormat& format) {
    json solutions = json::array();
    for (const SolutionRecord& s : report.solutions) {
        json record{{"x", vector_to_json(s.x)},
                    {"residual_base", s.residual_base},
                    {"residual_unmixed", s.residual_unmixed},
                    {"on_torus", s.on_torus},
                    {"theta", s.theta ? json(*s.theta) : json(nullptr)},
                    {"cell", s.cell_id},
                    {"multiplicity", s.multiplicity}};
        solutions.push_back(std::move(record));
    }
    json doc{{"schema_version", kSchemaVersion},
             {"N", report.N},
             {"seed", report.seed},
             {"mode", report.physical ? "network" : "random"},
             {"bound", report.bound.str()},
             {"twist_angle", report.twist_angle},
             {"mixing_seed", report.mixing_seed},
             {"paths_total", report.paths_total},
             {"paths_converged", report.paths_converged},
             {"paths_failed", report.paths_failed},
             {"duplicate_endpoints", report.duplicate_endpoints},
             {"min_pairwise_distance", finite_or_null(report.min_pairwise_distance)},
             {"solutions", solutions}};
    if (format.include_paths) {
        json paths = json::array();
        for (const TrackedPath& p : report.paths) {
            json record{{"cell", p.cell_id},
                        {"status", std::string(to_string(p.status))},
                        {"steps", p.steps},
                        {"rejected_steps", p.rejected_steps},
                        {"start", vector_to_json(p.start.x)},
                        {"endpoint", vector_to_json(p.endpoint)},
                        {"endpoint_residual", finite_or_null(p.endpoint_residual)}};
            if (format.include_trace) {
                json trace = json::array();
                for (const TraceStep& t : p.trace) {
                    trace.push_back(json{{"s", t.s}, {"step", t.step}, {"newton_iters", t.newton_iters},
                                         {"accepted", t.accepted}});
                }
                record["trace"] = std::move(trace);
            }
            paths.push_back(std::move(record));
        }
        doc["paths"] = std::move(paths);
    }
    if (format.include_timing) doc["wall_time"] = report.wall_time;
    return doc;
}

}  // namespace apcycle
