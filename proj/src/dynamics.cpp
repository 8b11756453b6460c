#include "resilnet/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <utility>

#include "resilnet/errors.hpp"

namespace resilnet {

void PerceptionParams::validate() const {
    if (!(tau >= 0.0 && tau <= 1.0)) throw ValidationError("tau out of [0,1]");
    if (!(j_local >= 0.0)) throw ValidationError("j_local must be >= 0");
    if (!(w_global >= 0.0)) throw ValidationError("w_global must be >= 0");
    if (!(mu > 0.0 && mu <= 1.0)) throw ValidationError("mu out of (0,1]");
    if (!(omega0 >= 0.0)) throw ValidationError("omega0 must be >= 0");
}

void SeedingSpec::validate() const {
    switch (mode) {
    case SeedingMode::single_node:
        return;
    case SeedingMode::exact_count:
        if (!(value >= 1.0)) throw ValidationError("seeding count must be >= 1");
        return;
    case SeedingMode::fraction:
        if (!(value > 0.0 && value <= 1.0))
            throw ValidationError("seeding fraction out of (0,1]");
        return;
    }
    throw ValidationError("unknown seeding mode");
}

int SeedingSpec::count_for(int node_count) const {
    switch (mode) {
    case SeedingMode::single_node:
        return 1;
    case SeedingMode::exact_count: {
        const int count = static_cast<int>(value);
        if (count > node_count)
            throw ValidationError("seeding count exceeds node count");
        return count;
    }
    case SeedingMode::fraction:
        return static_cast<int>(std::llround(value * node_count));
    }
    throw ValidationError("unknown seeding mode");
}

void RunConfig::validate() const {
    params.validate();
    seeding.validate();
    if (control_time < 1) throw ValidationError("control_time must be >= 1");
}

double effective_tau(const PerceptionParams& params, int n_infected_neighbors, double omega) {
    const double modulated =
        params.tau * std::exp(-params.j_local * n_infected_neighbors - omega);
    // The exponent is <= 0 under the parameter invariants, so the clamp is
    // purely defensive against callers passing unvalidated values.
    return std::clamp(modulated, 0.0, 1.0);
}

double infection_probability(double effective_tau, int n_infected_neighbors) {
    if (n_infected_neighbors <= 0) return 0.0;
    return 1.0 - ipow(1.0 - effective_tau, n_infected_neighbors);
}

double update_perception(const PerceptionParams& params, double omega, int infected_count,
                         int node_count) {
    double signal = static_cast<double>(infected_count);
    if (params.normalize_global) signal /= static_cast<double>(node_count);
    return (1.0 - params.mu) * omega + params.mu * params.w_global * signal;
}

SimState seed_infection(const Topology& topology, const PerceptionParams& params,
                        const SeedingSpec& seeding, CounterRng rng) {
    seeding.validate();
    const int n = topology.node_count();
    int need = seeding.count_for(n);

    SimState state;
    state.states.assign(n, 0);
    state.omega = params.omega0;
    // Selection sampling: walk nodes in ascending order, one draw per node
    // visited, selecting each with probability (still needed)/(still left).
    // Produces a uniform sample without replacement with a fixed draw order.
    for (int i = 0; i < n && need > 0; ++i) {
        const double u = rng.uniform01();
        if (u * (n - i) < static_cast<double>(need)) {
            state.states[i] = 1;
            ++state.infected_count;
            --need;
        }
    }
    state.rng = rng;
    return state;
}

StepStats step(SimState& state, const Topology& topology, const PerceptionParams& params) {
    const int n = topology.node_count();
    // Scatter infected nodes into a neighbor-count buffer, then sweep all
    // nodes in ascending order. Only the sweep consumes randomness, so the
    // draw sequence is independent of how the counting was done.
    thread_local std::vector<int> exposure;
    exposure.assign(n, 0);
    for (int i = 0; i < n; ++i) {
        if (!state.states[i]) continue;
        for (int j : topology.neighbors(i)) ++exposure[j];
    }

    const double omega_now = state.omega;
    const int infected_before = state.infected_count;

    StepStats stats;
    std::vector<std::uint8_t> next(n, 0);
    int infected_after = 0;
    for (int i = 0; i < n; ++i) {
        const int exposed_to = exposure[i];
        if (exposed_to == 0) continue;  // recovery is certain, reinfection needs a neighbor
        const double tau_eff = effective_tau(params, exposed_to, omega_now);
        const double p = infection_probability(tau_eff, exposed_to);
        ++stats.evaluations;
        stats.sum_effective_tau += tau_eff;
        if (state.rng.uniform01() < p) {
            next[i] = 1;
            ++infected_after;
            if (!state.states[i]) ++stats.new_infections;
        }
    }

    state.states = std::move(next);
    state.infected_count = infected_after;
    state.omega = update_perception(params, omega_now, infected_before, n);
    ++state.t;
    return stats;
}

SimState stepped(const SimState& state, const Topology& topology, const PerceptionParams& params) {
    SimState next = state;
    step(next, topology, params);
    return next;
}

int RunRecord::infected_at(std::int64_t t) const {
    if (t < 0) return 0;
    if (t < static_cast<std::int64_t>(series.size()))
        return series[static_cast<std::size_t>(t)].n_infected;
    return 0;  // early-stopped records end in the absorbing all-healthy state
}

RunRecord run(const Topology& topology, const RunConfig& config) {
    config.validate();

    SimState state = seed_infection(topology, config.params, config.seeding,
                                    CounterRng(config.master_seed));

    RunRecord record;
    record.node_count = topology.node_count();
    record.control_time = config.control_time;
    record.seed = config.master_seed;
    record.series.reserve(static_cast<std::size_t>(
        std::min<std::int64_t>(config.control_time + 1, 1 << 20)));

    // Every node infected at t=0 counts as a new infection of the seeding.
    record.series.push_back({0, state.infected_count, state.omega, state.infected_count, 0.0});
    if (state.infected_count == 0) record.eradication_time = 0;

    while (state.t < config.control_time &&
           !(config.stop_on_eradication && state.infected_count == 0)) {
        const double omega_used = state.omega;
        const StepStats stats = step(state, topology, config.params);
        // Close out the previous row now that its transition has run.
        record.series.back().mean_effective_tau =
            stats.evaluations > 0 ? stats.sum_effective_tau / stats.evaluations
                                  : effective_tau(config.params, 0, omega_used);
        record.series.push_back(
            {state.t, state.infected_count, state.omega, stats.new_infections, 0.0});
        if (!record.eradication_time && state.infected_count == 0)
            record.eradication_time = state.t;
    }
    // The final row has no outgoing transition; report the modulation in force.
    record.series.back().mean_effective_tau =
        effective_tau(config.params, 0, state.omega);
    return record;
}

} // namespace resilnet
