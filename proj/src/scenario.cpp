#include "resilnet/scenario.hpp"

#include <algorithm>
#include <charconv>
#include <cctype>
#include <cstdio>
#include <ctime>
#include <fstream>
#include <map>
#include <sstream>

#include <json.hpp>

#include "resilnet/errors.hpp"

namespace resilnet {

namespace fs = std::filesystem;
using ordered_json = nlohmann::ordered_json;

namespace {

// Shortest decimal form that round-trips to the same double; keeps CSV and
// config files bit-replayable.
std::string format_double(double value) {
    char buffer[40];
    const auto result = std::to_chars(buffer, buffer + sizeof buffer, value);
    return std::string(buffer, result.ptr);
}

std::string trim(const std::string& text) {
    std::size_t begin = 0, end = text.size();
    while (begin < end && std::isspace(static_cast<unsigned char>(text[begin]))) ++begin;
    while (end > begin && std::isspace(static_cast<unsigned char>(text[end - 1]))) --end;
    return text.substr(begin, end - begin);
}

// One parsed `key = value` assignment.
struct Entry {
    std::string value;
    long line = 0;
    bool consumed = false;
};

// The flat document: last assignment wins for scalar keys, repeatable keys
// (assumption, grid values) collect every occurrence.
class Document {
public:
    explicit Document(const std::string& text) {
        std::istringstream in(text);
        std::string line;
        long line_no = 0;
        while (std::getline(in, line)) {
            ++line_no;
            const auto hash = line.find('#');
            if (hash != std::string::npos) line.resize(hash);
            const std::string stripped = trim(line);
            if (stripped.empty()) continue;
            const auto eq = stripped.find('=');
            if (eq == std::string::npos)
                throw ParseError("expected 'key = value'", line_no);
            const std::string key = trim(stripped.substr(0, eq));
            const std::string value = trim(stripped.substr(eq + 1));
            if (key.empty()) throw ParseError("missing key before '='", line_no);
            if (value.empty()) throw ParseError("missing value for key '" + key + "'", line_no);
            entries_.emplace(key, Entry{value, line_no, false});
        }
    }

    bool has(const std::string& key) const { return entries_.count(key) > 0; }

    // Scalar accessor: rejects repeated keys so a typo cannot silently
    // shadow an earlier assignment.
    const Entry* get(const std::string& key) {
        const auto count = entries_.count(key);
        if (count == 0) return nullptr;
        auto it = entries_.find(key);
        if (count > 1) throw ParseError("key '" + key + "' given more than once", it->second.line);
        it->second.consumed = true;
        return &it->second;
    }

    std::vector<std::string> get_all(const std::string& key) {
        std::vector<std::string> values;
        auto [begin, end] = entries_.equal_range(key);
        for (auto it = begin; it != end; ++it) {
            it->second.consumed = true;
            values.push_back(it->second.value);
        }
        return values;
    }

    // Fail closed: anything not consumed by the schema is an error.
    void reject_unknown() const {
        for (const auto& [key, entry] : entries_)
            if (!entry.consumed) throw ParseError("unknown key '" + key + "'", entry.line);
    }

private:
    std::multimap<std::string, Entry> entries_;
};

double parse_double(const Entry& entry, const std::string& key) {
    const std::string& text = entry.value;
    double value = 0.0;
    const auto result = std::from_chars(text.data(), text.data() + text.size(), value);
    if (result.ec != std::errc() || result.ptr != text.data() + text.size())
        throw ParseError("value for '" + key + "' is not a number: '" + text + "'", entry.line);
    return value;
}

long long parse_int(const Entry& entry, const std::string& key) {
    const std::string& text = entry.value;
    long long value = 0;
    const auto result = std::from_chars(text.data(), text.data() + text.size(), value);
    if (result.ec != std::errc() || result.ptr != text.data() + text.size())
        throw ParseError("value for '" + key + "' is not an integer: '" + text + "'", entry.line);
    return value;
}

std::uint64_t parse_u64(const Entry& entry, const std::string& key) {
    const std::string& text = entry.value;
    std::uint64_t value = 0;
    const auto result = std::from_chars(text.data(), text.data() + text.size(), value);
    if (result.ec != std::errc() || result.ptr != text.data() + text.size())
        throw ParseError("value for '" + key + "' is not an unsigned integer: '" + text + "'",
                         entry.line);
    return value;
}

bool parse_bool(const Entry& entry, const std::string& key) {
    if (entry.value == "true") return true;
    if (entry.value == "false") return false;
    throw ParseError("value for '" + key + "' must be true or false", entry.line);
}

// Schema driver shared by scenario and sweep documents.
Scenario scenario_from(Document& doc) {
    Scenario s;

    if (const Entry* e = doc.get("name")) s.name = e->value;
    else throw ValidationError("scenario needs a name");

    const Entry* topo = doc.get("topology");
    if (!topo) throw ValidationError("scenario needs a topology");
    if (topo->value == "lattice") {
        s.topology.choice = TopologyChoice::lattice;
        if (const Entry* e = doc.get("width"))
            s.topology.lattice.width = static_cast<int>(parse_int(*e, "width"));
        if (const Entry* e = doc.get("height"))
            s.topology.lattice.height = static_cast<int>(parse_int(*e, "height"));
        if (const Entry* e = doc.get("boundary")) {
            if (e->value == "periodic") s.topology.lattice.boundary = Boundary::periodic;
            else if (e->value == "open") s.topology.lattice.boundary = Boundary::open;
            else throw ParseError("boundary must be periodic or open", e->line);
        }
    } else if (topo->value == "scale_free") {
        s.topology.choice = TopologyChoice::scale_free;
        if (const Entry* e = doc.get("nodes"))
            s.topology.scale_free.node_count = static_cast<int>(parse_int(*e, "nodes"));
        if (const Entry* e = doc.get("edges_per_node"))
            s.topology.scale_free.edges_per_node =
                static_cast<int>(parse_int(*e, "edges_per_node"));
        if (const Entry* e = doc.get("graph_seed"))
            s.topology.scale_free.seed = parse_u64(*e, "graph_seed");
    } else if (topo->value == "edge_list") {
        s.topology.choice = TopologyChoice::edge_list;
        if (const Entry* e = doc.get("edge_list_path")) s.topology.edge_list_path = e->value;
        else throw ValidationError("edge_list topology needs edge_list_path");
    } else {
        throw ParseError("topology must be lattice, scale_free or edge_list", topo->line);
    }

    if (const Entry* e = doc.get("tau")) s.params.tau = parse_double(*e, "tau");
    else throw ValidationError("scenario needs tau");
    if (const Entry* e = doc.get("j_local")) s.params.j_local = parse_double(*e, "j_local");
    if (const Entry* e = doc.get("w_global")) s.params.w_global = parse_double(*e, "w_global");
    if (const Entry* e = doc.get("mu")) s.params.mu = parse_double(*e, "mu");
    if (const Entry* e = doc.get("omega0")) s.params.omega0 = parse_double(*e, "omega0");
    if (const Entry* e = doc.get("normalize_global"))
        s.params.normalize_global = parse_bool(*e, "normalize_global");

    if (const Entry* e = doc.get("seeding")) {
        if (e->value == "single_node") s.seeding.mode = SeedingMode::single_node;
        else if (e->value == "exact_count") s.seeding.mode = SeedingMode::exact_count;
        else if (e->value == "fraction") s.seeding.mode = SeedingMode::fraction;
        else throw ParseError("seeding must be single_node, exact_count or fraction", e->line);
    }
    if (const Entry* e = doc.get("seeding_value")) s.seeding.value = parse_double(*e, "seeding_value");

    if (const Entry* e = doc.get("control_time")) s.control_time = parse_int(*e, "control_time");
    else throw ValidationError("scenario needs control_time");
    if (const Entry* e = doc.get("master_seed")) s.master_seed = parse_u64(*e, "master_seed");
    if (const Entry* e = doc.get("replicates"))
        s.replicates = static_cast<int>(parse_int(*e, "replicates"));
    if (const Entry* e = doc.get("stop_on_eradication"))
        s.stop_on_eradication = parse_bool(*e, "stop_on_eradication");
    if (const Entry* e = doc.get("noise_floor"))
        s.noise_floor = static_cast<int>(parse_int(*e, "noise_floor"));
    if (const Entry* e = doc.get("out_dir")) s.out_dir = e->value;
    s.assumptions = doc.get_all("assumption");

    return s;
}

SweepAxis axis_from_name(const Entry& entry) {
    if (entry.value == "tau") return SweepAxis::tau;
    if (entry.value == "j_local") return SweepAxis::j_local;
    if (entry.value == "w_global") return SweepAxis::w_global;
    if (entry.value == "mu") return SweepAxis::mu;
    throw ParseError("axis must be tau, j_local, w_global or mu", entry.line);
}

std::vector<double> parse_grid(const Entry& entry) {
    std::vector<double> values;
    std::string text = entry.value;
    std::replace(text.begin(), text.end(), ',', ' ');
    std::istringstream in(text);
    std::string token;
    while (in >> token) {
        double value = 0.0;
        const auto result = std::from_chars(token.data(), token.data() + token.size(), value);
        if (result.ec != std::errc() || result.ptr != token.data() + token.size())
            throw ParseError("grid entry is not a number: '" + token + "'", entry.line);
        values.push_back(value);
    }
    if (values.empty()) throw ParseError("grid is empty", entry.line);
    return values;
}

void require_filesystem_safe(const std::string& name) {
    if (name.empty()) throw ValidationError("scenario needs a name");
    for (char c : name) {
        const bool ok = std::isalnum(static_cast<unsigned char>(c)) || c == '-' || c == '_' ||
                        c == '.';
        if (!ok)
            throw ValidationError("scenario name must use only letters, digits, '.', '-', '_'");
    }
}

std::string utc_timestamp() {
    std::time_t now = std::time(nullptr);
    std::tm parts{};
    gmtime_r(&now, &parts);
    char buffer[32];
    std::strftime(buffer, sizeof buffer, "%Y-%m-%dT%H:%M:%SZ", &parts);
    return buffer;
}

void write_text_file(const fs::path& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot open for writing: " + path.string());
    out << content;
    if (!out) throw IoError("write failed: " + path.string());
}

std::string replicate_stem(int replicate) {
    char buffer[16];
    std::snprintf(buffer, sizeof buffer, "rep%03d", replicate);
    return buffer;
}

// Shared manifest skeleton; callers append their outputs and extras.
ordered_json manifest_base(const Scenario& scenario, const std::string& kind) {
    ordered_json manifest;
    manifest["tool"] = kToolName;
    manifest["version"] = kToolVersion;
    manifest["kind"] = kind;
    manifest["name"] = scenario.name;
    manifest["timestamp_utc"] = utc_timestamp();
    manifest["master_seed"] = scenario.master_seed;
    manifest["replicates"] = scenario.replicates;
    ordered_json seeds = ordered_json::array();
    for (int r = 0; r < scenario.replicates; ++r)
        seeds.push_back(derive_stream(scenario.master_seed, static_cast<std::uint64_t>(r)));
    manifest["derived_seeds"] = std::move(seeds);
    manifest["assumptions"] = scenario.assumptions;
    return manifest;
}

void append_output(ordered_json& manifest, const fs::path& dir, const std::string& file) {
    manifest["outputs"].push_back(
        {{"path", file}, {"fnv1a64", fnv1a64_hex_of_file(dir / file)}});
}

void finish_manifest(ordered_json& manifest, const fs::path& dir) {
    write_text_file(dir / "manifest.json", manifest.dump(2) + "\n");
}

// Self-contained plot scripts; the tool itself stays render-free.
constexpr const char* kRunPlotScript = R"PY(#!/usr/bin/env python3
"""Plot infected count (left axis) and alarm level (right axis) for every
replicate CSV sitting next to this script."""
import csv
import glob
import os

import matplotlib
matplotlib.use("Agg")
import matplotlib.pyplot as plt

here = os.path.dirname(os.path.abspath(__file__))
fig, infected_axis = plt.subplots(figsize=(8, 5))
alarm_axis = infected_axis.twinx()
for path in sorted(glob.glob(os.path.join(here, "rep*.csv"))):
    t, infected, alarm = [], [], []
    with open(path) as handle:
        for row in csv.DictReader(handle):
            t.append(int(row["t"]))
            infected.append(int(row["n_infected"]))
            alarm.append(float(row["omega"]))
    infected_axis.plot(t, infected, color="black", alpha=0.5, linewidth=0.8)
    alarm_axis.plot(t, alarm, color="red", alpha=0.5, linewidth=0.8)
infected_axis.set_xlabel("t")
infected_axis.set_ylabel("infected nodes")
alarm_axis.set_ylabel("alarm level", color="red")
infected_axis.set_title(os.path.basename(here))
out = os.path.join(here, "plot.png")
plt.savefig(out, dpi=150)
print(out)
)PY";

constexpr const char* kSweepPlotScript = R"PY(#!/usr/bin/env python3
"""Plot survival probability and mean resilience against the swept value."""
import csv
import os

import matplotlib
matplotlib.use("Agg")
import matplotlib.pyplot as plt

here = os.path.dirname(os.path.abspath(__file__))
values, survival, mean_resilience = [], [], []
with open(os.path.join(here, "sweep.csv")) as handle:
    for row in csv.DictReader(handle):
        values.append(float(row["value"]))
        survival.append(float(row["survival"]))
        mean_resilience.append(float(row["mean_resilience"]))
fig, axis = plt.subplots(figsize=(8, 5))
axis.plot(values, survival, "o-", color="black", label="survival")
axis.plot(values, mean_resilience, "s--", color="tab:blue", label="mean resilience")
axis.set_xlabel("swept value")
axis.set_ylim(-0.05, 1.05)
axis.legend()
axis.set_title(os.path.basename(here))
out = os.path.join(here, "plot.png")
plt.savefig(out, dpi=150)
print(out)
)PY";

} // namespace

void Scenario::validate() const {
    require_filesystem_safe(name);
    switch (topology.choice) {
    case TopologyChoice::lattice: topology.lattice.validate(); break;
    case TopologyChoice::scale_free: topology.scale_free.validate(); break;
    case TopologyChoice::edge_list:
        if (topology.edge_list_path.empty())
            throw ValidationError("edge_list topology needs edge_list_path");
        break;
    }
    params.validate();
    seeding.validate();
    if (control_time < 1) throw ValidationError("control_time must be >= 1");
    if (replicates < 1) throw ValidationError("replicates must be >= 1");
}

Scenario parse_scenario(const std::string& text) {
    Document doc(text);
    Scenario scenario = scenario_from(doc);
    doc.reject_unknown();
    scenario.validate();
    return scenario;
}

SweepDoc parse_sweep(const std::string& text) {
    Document doc(text);
    SweepDoc sweep;
    sweep.scenario = scenario_from(doc);

    if (const Entry* e = doc.get("axis")) sweep.axis = axis_from_name(*e);
    else throw ValidationError("sweep needs an axis");
    if (const Entry* e = doc.get("grid")) sweep.grid = parse_grid(*e);
    const Entry* lo = doc.get("bracket_lo");
    const Entry* hi = doc.get("bracket_hi");
    if (static_cast<bool>(lo) != static_cast<bool>(hi))
        throw ValidationError("bracket_lo and bracket_hi must be given together");
    if (lo && hi) {
        sweep.has_bracket = true;
        sweep.bracket_lo = parse_double(*lo, "bracket_lo");
        sweep.bracket_hi = parse_double(*hi, "bracket_hi");
    }
    if (const Entry* e = doc.get("survival_horizon"))
        sweep.survival_horizon = parse_int(*e, "survival_horizon");
    if (const Entry* e = doc.get("bisection_tolerance"))
        sweep.bisection_tolerance = parse_double(*e, "bisection_tolerance");

    doc.reject_unknown();
    sweep.scenario.validate();
    return sweep;
}

Scenario load_scenario_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open scenario file: " + path);
    std::stringstream buffer;
    buffer << in.rdbuf();
    return parse_scenario(buffer.str());
}

SweepDoc load_sweep_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open sweep file: " + path);
    std::stringstream buffer;
    buffer << in.rdbuf();
    return parse_sweep(buffer.str());
}

namespace {

void serialize_scenario_body(const Scenario& s, std::ostringstream& out) {
    out << "name = " << s.name << "\n";
    switch (s.topology.choice) {
    case TopologyChoice::lattice:
        out << "topology = lattice\n";
        out << "width = " << s.topology.lattice.width << "\n";
        out << "height = " << s.topology.lattice.height << "\n";
        out << "boundary = "
            << (s.topology.lattice.boundary == Boundary::periodic ? "periodic" : "open") << "\n";
        break;
    case TopologyChoice::scale_free:
        out << "topology = scale_free\n";
        out << "nodes = " << s.topology.scale_free.node_count << "\n";
        out << "edges_per_node = " << s.topology.scale_free.edges_per_node << "\n";
        out << "graph_seed = " << s.topology.scale_free.seed << "\n";
        break;
    case TopologyChoice::edge_list:
        out << "topology = edge_list\n";
        out << "edge_list_path = " << s.topology.edge_list_path << "\n";
        break;
    }
    out << "tau = " << format_double(s.params.tau) << "\n";
    out << "j_local = " << format_double(s.params.j_local) << "\n";
    out << "w_global = " << format_double(s.params.w_global) << "\n";
    out << "mu = " << format_double(s.params.mu) << "\n";
    out << "omega0 = " << format_double(s.params.omega0) << "\n";
    out << "normalize_global = " << (s.params.normalize_global ? "true" : "false") << "\n";
    switch (s.seeding.mode) {
    case SeedingMode::single_node: out << "seeding = single_node\n"; break;
    case SeedingMode::exact_count: out << "seeding = exact_count\n"; break;
    case SeedingMode::fraction: out << "seeding = fraction\n"; break;
    }
    out << "seeding_value = " << format_double(s.seeding.value) << "\n";
    out << "control_time = " << s.control_time << "\n";
    out << "master_seed = " << s.master_seed << "\n";
    out << "replicates = " << s.replicates << "\n";
    out << "stop_on_eradication = " << (s.stop_on_eradication ? "true" : "false") << "\n";
    if (s.noise_floor >= 0) out << "noise_floor = " << s.noise_floor << "\n";
    if (!s.out_dir.empty()) out << "out_dir = " << s.out_dir << "\n";
    for (const std::string& note : s.assumptions) out << "assumption = " << note << "\n";
}

} // namespace

std::string serialize_scenario(const Scenario& scenario) {
    std::ostringstream out;
    serialize_scenario_body(scenario, out);
    return out.str();
}

std::string serialize_sweep(const SweepDoc& doc) {
    std::ostringstream out;
    serialize_scenario_body(doc.scenario, out);
    out << "axis = " << axis_name(doc.axis) << "\n";
    if (!doc.grid.empty()) {
        out << "grid =";
        for (std::size_t i = 0; i < doc.grid.size(); ++i)
            out << (i ? ", " : " ") << format_double(doc.grid[i]);
        out << "\n";
    }
    if (doc.has_bracket) {
        out << "bracket_lo = " << format_double(doc.bracket_lo) << "\n";
        out << "bracket_hi = " << format_double(doc.bracket_hi) << "\n";
    }
    out << "survival_horizon = " << doc.survival_horizon << "\n";
    out << "bisection_tolerance = " << format_double(doc.bisection_tolerance) << "\n";
    return out.str();
}

Topology build_topology(const TopologySpec& spec) {
    switch (spec.choice) {
    case TopologyChoice::lattice: return build_lattice(spec.lattice);
    case TopologyChoice::scale_free: return build_scale_free(spec.scale_free);
    case TopologyChoice::edge_list: return load_edge_list_file(spec.edge_list_path);
    }
    throw ValidationError("unknown topology choice");
}

RunConfig scenario_to_config(const Scenario& scenario) {
    RunConfig config;
    config.params = scenario.params;
    config.seeding = scenario.seeding;
    config.control_time = scenario.control_time;
    config.master_seed = scenario.master_seed;
    config.stop_on_eradication = scenario.stop_on_eradication;
    return config;
}

SweepSpec sweep_doc_to_spec(const SweepDoc& doc) {
    SweepSpec spec;
    spec.base = scenario_to_config(doc.scenario);
    spec.axis = doc.axis;
    spec.grid = doc.grid;
    spec.bracket_lo = doc.bracket_lo;
    spec.bracket_hi = doc.bracket_hi;
    spec.replicates = doc.scenario.replicates;
    spec.survival_horizon = doc.survival_horizon;
    spec.bisection_tolerance = doc.bisection_tolerance;
    return spec;
}

int scenario_noise_floor(const Scenario& scenario, int node_count) {
    return scenario.noise_floor >= 0 ? scenario.noise_floor : default_noise_floor(node_count);
}

Scenario reproduce(const std::string& figure_id) {
    Scenario s;
    s.topology.choice = TopologyChoice::lattice;
    s.topology.lattice = {100, 100, Boundary::periodic};
    s.params.mu = 1.0;
    s.master_seed = 1234;
    s.replicates = 20;
    s.assumptions.push_back("boundary: periodic (default choice; the open boundary shifts "
                            "the measured lattice threshold by less than 0.005)");

    if (figure_id == "fig2a") {
        s.name = "fig2a";
        s.params.tau = 0.135;
        s.seeding = {SeedingMode::fraction, 0.5};
        s.control_time = 2000;
    } else if (figure_id == "fig2b") {
        s.name = "fig2b";
        s.params.tau = 0.5;
        s.params.j_local = 1.05;
        s.seeding = {SeedingMode::fraction, 0.5};
        s.control_time = 5000;
    } else if (figure_id == "fig3") {
        s.name = "fig3";
        s.params.tau = 0.5;
        s.params.w_global = 0.002;
        s.seeding = {SeedingMode::fraction, 0.1};
        s.control_time = 1000;
        s.stop_on_eradication = false;  // the point is watching regrowth after the drop
        s.assumptions.push_back("omega0 = 0 (alarm starts idle)");
    } else if (figure_id == "fig4a" || figure_id == "fig4b") {
        s.name = figure_id;
        s.params.tau = 0.5;
        s.params.w_global = figure_id == "fig4a" ? 0.05 : 0.035;
        s.params.mu = 0.02;
        s.seeding = {SeedingMode::fraction, 0.1};
        s.control_time = 5000;
        s.assumptions.push_back("omega0 = 0 (alarm starts idle)");
        s.assumptions.push_back("initial infection: fraction 0.1 (preset default; "
                                "not pinned by the reproduced setting)");
    } else {
        throw ValidationError("unknown reproduction id: " + figure_id +
                              " (expected fig2a, fig2b, fig3, fig4a or fig4b)");
    }
    return s;
}

std::vector<std::string> reproduce_ids() { return {"fig2a", "fig2b", "fig3", "fig4a", "fig4b"}; }

std::uint64_t fnv1a64(const void* data, std::size_t size) {
    const auto* bytes = static_cast<const unsigned char*>(data);
    std::uint64_t hash = 0xcbf29ce484222325ull;
    for (std::size_t i = 0; i < size; ++i) {
        hash ^= bytes[i];
        hash *= 0x100000001b3ull;
    }
    return hash;
}

std::string fnv1a64_hex_of_file(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open for checksum: " + path.string());
    std::stringstream buffer;
    buffer << in.rdbuf();
    const std::string bytes = buffer.str();
    char hex[17];
    std::snprintf(hex, sizeof hex, "%016llx",
                  static_cast<unsigned long long>(fnv1a64(bytes.data(), bytes.size())));
    return hex;
}

void write_run_csv(const RunRecord& record, const fs::path& path) {
    if (record.series.empty()) throw ValidationError("empty record");
    std::ostringstream out;
    out << "t,n_infected,omega,cf,new_infections,mean_effective_tau\n";
    for (const StepSample& row : record.series) {
        out << row.t << ',' << row.n_infected << ',' << format_double(row.omega) << ','
            << format_double(critical_functionality(row.n_infected, record.node_count)) << ','
            << row.new_infections << ',' << format_double(row.mean_effective_tau) << '\n';
    }
    write_text_file(path, out.str());
}

void write_summary_json(const RunRecord& record, const ResilienceReport& report,
                        const fs::path& path) {
    if (record.series.empty()) throw ValidationError("empty record");
    ordered_json summary;
    summary["resilience"] = report.resilience;
    summary["mean_cf"] = report.mean_cf;
    summary["peak_infected"] = report.peak_infected;
    summary["peak_time"] = report.peak_time;
    if (report.eradication_time) summary["eradication_time"] = *report.eradication_time;
    else summary["eradication_time"] = nullptr;
    summary["outbreak_count"] = report.outbreak_count;
    summary["cost"] = report.cost;
    summary["node_count"] = record.node_count;
    summary["control_time"] = record.control_time;
    summary["seed"] = record.seed;
    write_text_file(path, summary.dump(2) + "\n");
}

void write_run(const RunRecord& record, const ResilienceReport& report, const fs::path& csv_path,
               const fs::path& json_path) {
    write_run_csv(record, csv_path);
    write_summary_json(record, report, json_path);
}

fs::path execute_run(const Scenario& scenario, const fs::path& out_dir, bool quiet) {
    scenario.validate();
    std::error_code ec;
    fs::create_directories(out_dir, ec);
    if (ec) throw IoError("cannot create output directory: " + out_dir.string());

    const Topology topology = build_topology(scenario.topology);
    const RunConfig base = scenario_to_config(scenario);
    const int floor = scenario_noise_floor(scenario, topology.node_count());

    std::vector<RunRecord> records = run_replicates(scenario.replicates, [&](int r) {
        return run(topology, replicate_config(base, r));
    });

    ordered_json manifest = manifest_base(scenario, "run");
    manifest["outputs"] = ordered_json::array();
    write_text_file(out_dir / "scenario.cfg", serialize_scenario(scenario));
    append_output(manifest, out_dir, "scenario.cfg");

    for (int r = 0; r < scenario.replicates; ++r) {
        const RunRecord& record = records[r];
        const ResilienceReport report = summarize(record, floor);
        const std::string stem = replicate_stem(r);
        write_run(record, report, out_dir / (stem + ".csv"), out_dir / (stem + ".summary.json"));
        append_output(manifest, out_dir, stem + ".csv");
        append_output(manifest, out_dir, stem + ".summary.json");
        if (!quiet) {
            std::printf("%s: N(0)=%d peak=%d", stem.c_str(),
                        record.series.front().n_infected, report.peak_infected);
            if (report.eradication_time)
                std::printf(" eradicated_at=%lld",
                            static_cast<long long>(*report.eradication_time));
            else
                std::printf(" alive_at=%lld",
                            static_cast<long long>(record.series.back().t));
            std::printf(" R=%.6f cost=%.6f outbreaks=%d\n", report.resilience, report.cost,
                        report.outbreak_count);
        }
    }

    write_text_file(out_dir / "plot.py", kRunPlotScript);
    append_output(manifest, out_dir, "plot.py");
    finish_manifest(manifest, out_dir);
    if (!quiet) std::printf("wrote %s\n", (out_dir / "manifest.json").c_str());
    return out_dir / "manifest.json";
}

fs::path execute_sweep(const SweepDoc& doc, const fs::path& out_dir, bool quiet) {
    doc.scenario.validate();
    std::error_code ec;
    fs::create_directories(out_dir, ec);
    if (ec) throw IoError("cannot create output directory: " + out_dir.string());

    const Topology topology = build_topology(doc.scenario.topology);
    const SweepSpec spec = sweep_doc_to_spec(doc);
    const std::vector<SweepRow> table = sweep(topology, spec);

    std::ostringstream csv;
    csv << "value,survival,mean_resilience,mean_peak,mean_eradication_time\n";
    for (const SweepRow& row : table) {
        csv << format_double(row.value) << ',' << format_double(row.survival) << ','
            << format_double(row.mean_resilience) << ',' << format_double(row.mean_peak) << ',';
        if (row.mean_eradication_time) csv << format_double(*row.mean_eradication_time);
        csv << '\n';
        if (!quiet)
            std::printf("%s=%g survival=%.3f mean_R=%.6f mean_peak=%.1f\n", axis_name(spec.axis),
                        row.value, row.survival, row.mean_resilience, row.mean_peak);
    }
    write_text_file(out_dir / "sweep.csv", csv.str());

    ordered_json manifest = manifest_base(doc.scenario, "sweep");
    manifest["axis"] = axis_name(spec.axis);
    manifest["survival_horizon"] = spec.survival_horizon;
    manifest["outputs"] = ordered_json::array();
    write_text_file(out_dir / "sweep.cfg", serialize_sweep(doc));
    append_output(manifest, out_dir, "sweep.cfg");
    append_output(manifest, out_dir, "sweep.csv");
    write_text_file(out_dir / "plot.py", kSweepPlotScript);
    append_output(manifest, out_dir, "plot.py");
    finish_manifest(manifest, out_dir);
    if (!quiet) std::printf("wrote %s\n", (out_dir / "manifest.json").c_str());
    return out_dir / "manifest.json";
}

fs::path execute_threshold(const SweepDoc& doc, const fs::path& out_dir, bool quiet) {
    doc.scenario.validate();
    if (!doc.has_bracket)
        throw ValidationError("threshold needs bracket_lo and bracket_hi");
    std::error_code ec;
    fs::create_directories(out_dir, ec);
    if (ec) throw IoError("cannot create output directory: " + out_dir.string());

    const Topology topology = build_topology(doc.scenario.topology);
    const SweepSpec spec = sweep_doc_to_spec(doc);
    const ThresholdEstimate estimate = estimate_threshold(topology, spec);

    ordered_json result;
    result["axis"] = axis_name(estimate.axis);
    result["estimate"] = estimate.estimate;
    result["bracket_lo"] = estimate.bracket_lo;
    result["bracket_hi"] = estimate.bracket_hi;
    result["survival_lo"] = estimate.survival_lo;
    result["survival_hi"] = estimate.survival_hi;
    result["replicates_used"] = estimate.replicates_used;
    result["tolerance"] = spec.bisection_tolerance;
    result["master_seed"] = doc.scenario.master_seed;
    write_text_file(out_dir / "threshold.json", result.dump(2) + "\n");

    ordered_json manifest = manifest_base(doc.scenario, "threshold");
    manifest["axis"] = axis_name(spec.axis);
    manifest["outputs"] = ordered_json::array();
    write_text_file(out_dir / "sweep.cfg", serialize_sweep(doc));
    append_output(manifest, out_dir, "sweep.cfg");
    append_output(manifest, out_dir, "threshold.json");
    finish_manifest(manifest, out_dir);

    if (!quiet)
        std::printf("%s threshold estimate = %.6f (bracket [%.6f, %.6f], survival %.2f/%.2f)\n",
                    axis_name(estimate.axis), estimate.estimate, estimate.bracket_lo,
                    estimate.bracket_hi, estimate.survival_lo, estimate.survival_hi);
    return out_dir / "manifest.json";
}

} // namespace resilnet
