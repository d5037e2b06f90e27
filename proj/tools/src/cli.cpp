#include "apcycle_cli/cli.hpp"

#include <algorithm>
#include <fstream>
#include <iostream>
#include <random>
#include <set>
#include <sstream>

#include <CLI11.hpp>

#include "apcycle/decomposition.hpp"
#include "apcycle/engine.hpp"
#include "apcycle/errors.hpp"
#include "apcycle/io.hpp"
#include "apcycle/polytope.hpp"
#include "apcycle/tropical.hpp"

namespace apcycle::cli {

namespace {

using nlohmann::json;

class UsageError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

constexpr double kSolutionResidual = 1e-8;

std::string resolve_format(const RunConfig& config, const std::string& fallback,
                           std::initializer_list<const char*> allowed) {
    const std::string format = config.format == "auto" ? fallback : config.format;
    for (const char* candidate : allowed) {
        if (format == candidate) return format;
    }
    std::string list;
    for (const char* candidate : allowed) list += std::string(list.empty() ? "" : ", ") + candidate;
    throw UsageError("'" + config.subcommand + "' does not support --format " + format + " (use " + list + ")");
}

int require_N(const RunConfig& config) {
    if (!config.N) throw UsageError("'" + config.subcommand + "' needs --N");
    if (*config.N < 3) throw UsageError("--N must be at least 3, got " + std::to_string(*config.N));
    return *config.N;
}

void emit(const RunConfig& config, std::ostream& out, const std::string& text) {
    if (!config.output) {
        out << text;
        return;
    }
    std::ofstream file(*config.output);
    if (!file) throw UsageError("cannot write " + config.output->string());
    file << text;
}

std::string dump(const json& doc) { return doc.dump(2) + "\n"; }

std::string join(const IntVector& v) {
    std::string s;
    for (std::size_t i = 0; i < v.size(); ++i) s += (i ? " " : "") + std::to_string(v[i]);
    return s;
}

int cmd_bound(const RunConfig& config, std::ostream& out) {
    const int N = require_N(config);
    const std::string format = resolve_format(config, "text", {"text", "json"});
    const BigInt b = bound(N);
    if (format == "text") {
        emit(config, out, b.str() + "\n");
    } else {
        emit(config, out, dump(json{{"schema_version", kSchemaVersion}, {"N", N}, {"bound", b.str()}}));
    }
    return kOk;
}

int cmd_cells(const RunConfig& config, std::ostream& out) {
    const int N = require_N(config);
    const std::string format = resolve_format(config, "json", {"json", "text"});
    const std::vector<Cell> cells = triangulation(N);
    if (format == "json") {
        emit(config, out, dump(cells_to_json(N, cells)));
        return kOk;
    }
    std::ostringstream text;
    for (const Cell& cell : cells) {
        text << "normal " << join(cell.normal) << " | edges";
        for (const DirectedEdge& e : cell.edges) text << ' ' << e.from << "->" << e.to;
        text << '\n';
    }
    emit(config, out, text.str());
    return kOk;
}

int cmd_decompose(const RunConfig& config, std::ostream& out) {
    const int N = require_N(config);
    const std::string format = resolve_format(config, "json", {"json", "dot"});
    std::vector<PrimitiveSubnetwork> subs;
    std::size_t index = 0;
    for_each_cell(N, [&](const Cell& cell) { subs.push_back(subnetwork(cell, N, index++)); });
    emit(config, out, format == "dot" ? export_dot(subs) : dump(subnetworks_to_json(N, subs)));
    return kOk;
}

void log_paths(const SolveReport& report, int verbosity, std::ostream& err) {
    if (verbosity < 1) return;
    for (const TrackedPath& p : report.paths) {
        err << "path " << p.cell_id << ": " << to_string(p.status) << ", " << p.steps << " steps ("
            << p.rejected_steps << " rejected), residual " << p.endpoint_residual << '\n';
        if (verbosity < 2) continue;
        for (const TraceStep& t : p.trace) {
            err << "  s=" << t.s << " ds=" << t.step << " newton=" << t.newton_iters
                << (t.accepted ? " ok" : " rejected") << '\n';
        }
    }
}

int cmd_solve(const RunConfig& config, std::ostream& out, std::ostream& err) {
    resolve_format(config, "json", {"json"});
    SolveOptions opts;
    opts.seed = config.seed;
    opts.threads = config.threads;
    opts.track = config.track;
    opts.record_trace = config.verbosity >= 2;
    ReportFormat format{config.paths || config.verbosity >= 2, config.timing, config.verbosity >= 2};

    std::optional<CycleNetwork> net;
    if (config.input) {
        net = read_network(*config.input);
        if (config.N && *config.N != net->N) {
            throw UsageError("--N " + std::to_string(*config.N) + " disagrees with N = " +
                             std::to_string(net->N) + " in " + config.input->string());
        }
    } else {
        require_N(config);
    }

    try {
        const SolveReport report = net ? solve_all(*net, opts) : solve_all(RandomSpec{*config.N}, opts);
        log_paths(report, config.verbosity, err);
        emit(config, out, dump(report_to_json(report, format)));
        return kOk;
    } catch (const NonGenericInput& e) {
        log_paths(e.report(), config.verbosity, err);
        json doc = report_to_json(e.report(), format);
        doc["error"] = e.what();
        emit(config, out, dump(doc));
        err << "error: " << e.what() << '\n';
        return kNonGeneric;
    }
}

int cmd_tropical(const RunConfig& config, std::ostream& out) {
    const int N = require_N(config);
    const std::string format = resolve_format(config, "json", {"json", "text"});
    const std::vector<TropicalPoint> points = stable_intersections(N);
    if (format == "json") {
        emit(config, out, dump(tropical_to_json(N, points)));
        return kOk;
    }
    std::ostringstream text;
    for (const TropicalPoint& p : points) text << join(p.coords) << " x" << p.multiplicity << '\n';
    emit(config, out, text.str());
    return kOk;
}

int cmd_verify(const RunConfig& config, std::ostream& out) {
    const int N = require_N(config);
    const std::string format = resolve_format(config, "json", {"json", "text"});
    VerifyOptions opts;
    opts.seed = config.seed;
    opts.threads = config.threads;
    opts.track = config.track;
    opts.solve = config.verify_solve;
    const VerifyReport report = verify(N, opts);
    if (format == "json") {
        emit(config, out, dump(report.to_json()));
    } else {
        std::ostringstream text;
        for (const VerifyCheck& c : report.checks) {
            text << (c.passed ? "PASS " : "FAIL ") << c.name << ": " << c.detail << '\n';
        }
        emit(config, out, text.str());
    }
    if (report.passed()) return kOk;
    return report.non_generic ? kNonGeneric : kCertificate;
}

int cmd_generate(const RunConfig& config, std::ostream& out) {
    const int N = require_N(config);
    resolve_format(config, "json", {"json"});
    if (config.omega_spread < 0 || config.delta_spread < 0) throw UsageError("spreads must be non-negative");
    CycleNetwork net = CycleNetwork::homogeneous(N, config.coupling);
    std::mt19937_64 rng(config.seed);
    std::uniform_real_distribution<double> unit(-1.0, 1.0);
    // + 0.0 turns -0.0 into 0.0 when a spread is zero.
    for (double& w : net.frequencies) w = config.omega_spread * unit(rng) + 0.0;
    for (double& d : net.phase_shifts) d = config.delta_spread * unit(rng) + 0.0;
    net.validate();
    emit(config, out, dump(network_to_json(net)));
    return kOk;
}

}  // namespace

bool VerifyReport::passed() const {
    return std::all_of(checks.begin(), checks.end(), [](const VerifyCheck& c) { return c.passed; });
}

json VerifyReport::to_json() const {
    json list = json::array();
    for (const VerifyCheck& c : checks) {
        list.push_back(json{{"name", c.name}, {"passed", c.passed}, {"detail", c.detail}});
    }
    return json{{"schema_version", kSchemaVersion}, {"N", N}, {"passed", passed()}, {"checks", list}};
}

VerifyReport verify(int N, const VerifyOptions& opts) {
    VerifyReport report;
    report.N = N;
    auto add = [&](std::string name, bool ok, std::string detail) {
        report.checks.push_back({std::move(name), ok, std::move(detail)});
    };

    std::vector<Cell> cells;
    std::size_t certified = 0;
    std::size_t unimodular = 0;
    std::string violation;
    try {
        for_each_cell(N, [&](const Cell& cell) {
            cells.push_back(cell);
            if (certify(cell, N)) ++certified;
            if (std::llabs(cell_determinant(cell, N)) == 1) ++unimodular;
        });
    } catch (const CertificateViolation& e) {
        violation = e.what();
    }
    const BigInt expected = bound(N);
    const std::string of_bound = " of " + expected.str();
    add("cell_count", violation.empty() && BigInt(cells.size()) == expected,
        std::to_string(cells.size()) + of_bound + (violation.empty() ? "" : " (" + violation + ")"));
    add("certificate", violation.empty() && certified == cells.size(),
        std::to_string(certified) + of_bound + " certified");
    add("unimodular", violation.empty() && unimodular == cells.size(),
        std::to_string(unimodular) + of_bound + " with |det| = 1");

    if (N <= opts.oracle_max_N) {
        std::set<IntVector> mine;
        std::set<IntVector> theirs;
        for (const Cell& c : cells) mine.insert(c.normal);
        for (const Cell& c : lower_hull_oracle(N, opts.oracle_max_N)) theirs.insert(c.normal);
        add("oracle", mine == theirs,
            std::to_string(theirs.size()) + " oracle normals, " + (mine == theirs ? "identical" : "different"));
    }

    std::size_t primitive = 0;
    std::string malformed;
    for (std::size_t i = 0; i < cells.size(); ++i) {
        try {
            subnetwork(cells[i], N, i);
            ++primitive;
        } catch (const MalformedCell& e) {
            if (malformed.empty()) malformed = e.what();
        }
    }
    add("subnetworks", primitive == cells.size() && !cells.empty(),
        std::to_string(primitive) + " primitive" + (malformed.empty() ? "" : " (" + malformed + ")"));

    const std::vector<TropicalPoint> points = stable_intersections(N);
    std::set<IntVector> distinct;
    bool simple = true;
    for (const TropicalPoint& p : points) {
        distinct.insert(p.coords);
        simple = simple && p.multiplicity == 1;
    }
    add("tropical", BigInt(distinct.size()) == expected && simple,
        std::to_string(distinct.size()) + " distinct points" + (simple ? ", all multiplicity 1" : ""));

    if (opts.solve) {
        SolveOptions so;
        so.seed = opts.seed;
        so.threads = opts.threads;
        so.track = opts.track;
        try {
            const SolveReport r = solve_all(RandomSpec{N}, so);
            double worst = 0.0;
            for (const SolutionRecord& s : r.solutions) worst = std::max({worst, s.residual_base, s.residual_unmixed});
            add("root_count", BigInt(r.solutions.size()) == expected,
                std::to_string(r.solutions.size()) + " distinct endpoints" + of_bound);
            std::ostringstream detail;
            detail << "max residual " << worst;
            add("residual", worst < kSolutionResidual, detail.str());
        } catch (const NonGenericInput& e) {
            report.non_generic = true;
            add("root_count", false, e.what());
        }
    }
    return report;
}

int run(const RunConfig& config, std::ostream& out, std::ostream& err) {
    try {
        config.track.validate();
        if (config.subcommand == "bound") return cmd_bound(config, out);
        if (config.subcommand == "cells") return cmd_cells(config, out);
        if (config.subcommand == "decompose") return cmd_decompose(config, out);
        if (config.subcommand == "solve") return cmd_solve(config, out, err);
        if (config.subcommand == "tropical") return cmd_tropical(config, out);
        if (config.subcommand == "verify") return cmd_verify(config, out);
        if (config.subcommand == "generate") return cmd_generate(config, out);
        throw UsageError("unknown subcommand '" + config.subcommand + "'");
    } catch (const UsageError& e) {
        err << "error: " << e.what() << '\n';
        return kUsage;
    } catch (const InvalidNetwork& e) {
        err << "error: " << e.what() << '\n';
        return kUsage;
    } catch (const CertificateViolation& e) {
        err << "internal error: " << e.what() << '\n';
        return kCertificate;
    } catch (const NotACell& e) {
        err << "internal error: " << e.what() << '\n';
        return kCertificate;
    } catch (const MalformedCell& e) {
        err << "internal error: " << e.what() << '\n';
        return kCertificate;
    } catch (const Error& e) {
        err << "error: " << e.what() << '\n';
        return kUsage;
    }
}

int main_entry(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Adjacency polytope homotopy solver for Kuramoto cycle networks", "apcycle"};
    app.require_subcommand(1);
    app.set_version_flag("--version", "apcycle 0.3.0");

    RunConfig config;
    std::optional<int> N;
    std::string input;
    std::string output;

    auto common = [&](CLI::App* sub) {
        sub->add_option("--N", N, "Number of oscillators (N >= 3)");
        sub->add_option("-o,--output", output, "Write the result here instead of stdout");
        sub->add_option("--format", config.format, "Output format (json, text, dot; depends on subcommand)")
            ->check(CLI::IsMember({"auto", "json", "text", "dot"}));
    };
    auto seeded = [&](CLI::App* sub) {
        sub->add_option("--seed", config.seed, "Random seed (default 1)");
        sub->add_option("--threads", config.threads, "Worker threads; 0 uses all cores");
        TrackOptions& t = config.track;
        sub->add_option("--initial-step", t.initial_step, "Initial step in s")->capture_default_str();
        sub->add_option("--min-step", t.min_step, "Smallest step before giving up")->capture_default_str();
        sub->add_option("--max-step", t.max_step, "Largest step")->capture_default_str();
        sub->add_option("--max-steps", t.max_steps, "Step budget per path")->capture_default_str();
        sub->add_option("--newton-tol", t.newton_tol, "Corrector tolerance")->capture_default_str();
        sub->add_option("--newton-iters", t.newton_max_iters, "Corrector iteration cap")->capture_default_str();
        sub->add_option("--endpoint-iters", t.endpoint_refine_iters, "Endpoint Newton iterations")
            ->capture_default_str();
        sub->add_option("--endpoint-tol", t.endpoint_tol, "Endpoint residual tolerance")->capture_default_str();
    };

    CLI::App* bound_cmd = app.add_subcommand("bound", "Print the generic root count");
    common(bound_cmd);
    CLI::App* cells_cmd = app.add_subcommand("cells", "List the triangulation cells");
    common(cells_cmd);
    CLI::App* decompose_cmd = app.add_subcommand("decompose", "List primitive subnetworks (json or dot)");
    common(decompose_cmd);
    CLI::App* tropical_cmd = app.add_subcommand("tropical", "Stable self-intersection points");
    common(tropical_cmd);

    CLI::App* solve_cmd = app.add_subcommand("solve", "Track all paths and report the roots");
    common(solve_cmd);
    seeded(solve_cmd);
    solve_cmd->add_option("-i,--input", input, "Network file; without it a random system is solved")
        ->check(CLI::ExistingFile);
    solve_cmd->add_flag("--paths", config.paths, "Include per-path records");
    solve_cmd->add_flag("--timing", config.timing, "Include wall_time (breaks byte-identical output)");
    solve_cmd->add_flag("-v,--verbose", config.verbosity, "Per-path log on stderr; twice adds step traces");

    CLI::App* verify_cmd = app.add_subcommand("verify", "Run the self-check suite");
    common(verify_cmd);
    seeded(verify_cmd);
    bool skip_solve = false;
    verify_cmd->add_flag("--no-solve", skip_solve, "Skip the random-system solve");

    CLI::App* generate_cmd = app.add_subcommand("generate", "Write a network file");
    common(generate_cmd);
    generate_cmd->add_option("--seed", config.seed, "Seed for frequencies and phase shifts");
    generate_cmd->add_option("--coupling", config.coupling, "Uniform coupling")->capture_default_str();
    generate_cmd->add_option("--omega-spread", config.omega_spread, "Frequencies uniform in [-s, s]");
    generate_cmd->add_option("--delta-spread", config.delta_spread, "Phase shifts uniform in [-s, s]");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        out << app.help();
        return kOk;
    } catch (const CLI::CallForAllHelp& e) {
        out << app.help("", CLI::AppFormatMode::All);
        return kOk;
    } catch (const CLI::CallForVersion& e) {
        out << e.what() << '\n';
        return kOk;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << "\nrun with --help for usage\n";
        return kUsage;
    }

    config.subcommand = app.get_subcommands().front()->get_name();
    config.N = N;
    if (!input.empty()) config.input = input;
    if (!output.empty()) config.output = output;
    config.verify_solve = !skip_solve;
    return run(config, out, err);
}

}  // namespace apcycle::cli
