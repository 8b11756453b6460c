#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "resilnet/dynamics.hpp"
#include "resilnet/metrics.hpp"
#include "resilnet/sweeps.hpp"
#include "resilnet/topology.hpp"

namespace resilnet {

inline constexpr const char* kToolName = "resilnet";
inline constexpr const char* kToolVersion = "1.0.0";

enum class TopologyChoice { lattice, scale_free, edge_list };

// Which graph a scenario runs on. Exactly one of the three alternatives is
// active, selected by `choice`.
struct TopologySpec {
    TopologyChoice choice = TopologyChoice::lattice;
    LatticeSpec lattice{100, 100, Boundary::periodic};
    ScaleFreeSpec scale_free{};
    std::string edge_list_path;

    // Equal when they describe the same graph source: only the alternative
    // selected by `choice` participates.
    bool operator==(const TopologySpec& other) const {
        if (choice != other.choice) return false;
        switch (choice) {
        case TopologyChoice::lattice: return lattice == other.lattice;
        case TopologyChoice::scale_free: return scale_free == other.scale_free;
        case TopologyChoice::edge_list: return edge_list_path == other.edge_list_path;
        }
        return false;
    }
};

// A fully described experiment: graph, parameters, seeding, horizon,
// replication and output policy. Parsed from / serialized to a flat
// `key = value` document (see parse_scenario).
struct Scenario {
    std::string name;
    TopologySpec topology;
    PerceptionParams params;
    SeedingSpec seeding;
    std::int64_t control_time = 1;
    std::uint64_t master_seed = 1234;
    int replicates = 1;
    bool stop_on_eradication = true;
    int noise_floor = -1;          // -1: use default_noise_floor(node_count)
    std::string out_dir;           // empty: out/<name>
    // Free-form notes about choices the scenario makes where its source
    // leaves a value open; recorded verbatim in the run manifest.
    std::vector<std::string> assumptions;

    void validate() const;
    bool operator==(const Scenario&) const = default;
};

// Monte Carlo orchestration document: a scenario plus sweep/threshold keys.
struct SweepDoc {
    Scenario scenario;
    SweepAxis axis = SweepAxis::tau;
    std::vector<double> grid;
    bool has_bracket = false;
    double bracket_lo = 0.0;
    double bracket_hi = 0.0;
    std::int64_t survival_horizon = 2000;
    double bisection_tolerance = 0.005;

    bool operator==(const SweepDoc&) const = default;
};

// --- document parsing -------------------------------------------------------

// Parses the flat key-value format: one `key = value` per line, `#` starts a
// comment, unknown keys are errors (fail closed). Throws ParseError for
// malformed documents and ValidationError for well-formed documents whose
// values violate an invariant.
Scenario parse_scenario(const std::string& text);
SweepDoc parse_sweep(const std::string& text);

Scenario load_scenario_file(const std::string& path);
SweepDoc load_sweep_file(const std::string& path);

// Canonical serialization; parse_scenario(serialize_scenario(s)) == s.
std::string serialize_scenario(const Scenario& scenario);
std::string serialize_sweep(const SweepDoc& doc);

// --- scenario execution helpers ---------------------------------------------

Topology build_topology(const TopologySpec& spec);
RunConfig scenario_to_config(const Scenario& scenario);
SweepSpec sweep_doc_to_spec(const SweepDoc& doc);
int scenario_noise_floor(const Scenario& scenario, int node_count);

// Bundled reference scenarios, keyed fig2a | fig2b | fig3 | fig4a | fig4b.
// Values a preset fills in beyond its published parameterization are listed
// in its assumptions. Throws ValidationError for unknown ids.
Scenario reproduce(const std::string& figure_id);
std::vector<std::string> reproduce_ids();

// --- output writing ----------------------------------------------------------

// FNV-1a 64-bit checksum, hex-encoded; used in manifests so a replay can be
// verified byte for byte.
std::uint64_t fnv1a64(const void* data, std::size_t size);
std::string fnv1a64_hex_of_file(const std::filesystem::path& path);

// One replicate's time series as CSV. Columns, in order:
//   t,n_infected,omega,cf,new_infections,mean_effective_tau
// Floating-point fields use shortest round-trip formatting so the file
// replays bit-exactly. Throws ValidationError on an empty record.
void write_run_csv(const RunRecord& record, const std::filesystem::path& path);

// One replicate's summary as JSON with keys: resilience, mean_cf,
// peak_infected, peak_time, eradication_time, outbreak_count, cost,
// node_count, control_time, seed.
void write_summary_json(const RunRecord& record, const ResilienceReport& report,
                        const std::filesystem::path& path);

// Both files for one replicate (the CSV + JSON contract above).
void write_run(const RunRecord& record, const ResilienceReport& report,
               const std::filesystem::path& csv_path, const std::filesystem::path& json_path);

// Execution drivers used by the CLI. Each writes its outputs plus exactly
// one manifest.json into out_dir and returns the manifest path.
std::filesystem::path execute_run(const Scenario& scenario, const std::filesystem::path& out_dir,
                                  bool quiet);
std::filesystem::path execute_sweep(const SweepDoc& doc, const std::filesystem::path& out_dir,
                                    bool quiet);
std::filesystem::path execute_threshold(const SweepDoc& doc,
                                        const std::filesystem::path& out_dir, bool quiet);

} // namespace resilnet
