#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "resilnet/rng.hpp"
#include "resilnet/topology.hpp"

namespace resilnet {

// Epidemic and risk-perception parameters.
//
//   tau       bare per-neighbor infection probability
//   j_local   local perception: exponential damping by the count of
//             infected neighbors
//   w_global  global alarm weight per infected node
//   mu        memory rate of the alarm level (mu = 1 is memoryless)
//   omega0    initial alarm level
//
// normalize_global switches the alarm signal from the absolute infected
// count N to the infected fraction N / node_count, for experiments that
// rescale W with system size. Default off: the single-seed critical-weight
// estimate ln(tau / tau_c) only balances when N counts nodes.
struct PerceptionParams {
    double tau = 0.0;
    double j_local = 0.0;
    double w_global = 0.0;
    double mu = 1.0;
    double omega0 = 0.0;
    bool normalize_global = false;

    void validate() const;  // throws ValidationError naming the bad field

    bool operator==(const PerceptionParams&) const = default;
};

enum class SeedingMode { single_node, exact_count, fraction };

// Initial-infection prescription. `value` is a node count in exact_count
// mode, a fraction in (0,1] in fraction mode, and ignored for single_node.
// Draws are made in ascending node order (selection sampling), which is part
// of the bit-exact replay contract.
struct SeedingSpec {
    SeedingMode mode = SeedingMode::single_node;
    double value = 1.0;

    void validate() const;
    // Number of nodes this spec infects on a graph of the given size
    // (fraction mode rounds half away from zero).
    int count_for(int node_count) const;

    bool operator==(const SeedingSpec&) const = default;
};

// Full state of one simulation at one time step, including the generator, so
// that stepping is a pure function of the state.
struct SimState {
    std::int64_t t = 0;
    std::vector<std::uint8_t> states;  // 0 healthy, 1 tainted
    int infected_count = 0;
    double omega = 0.0;
    CounterRng rng{0};
};

struct RunConfig {
    PerceptionParams params;
    SeedingSpec seeding;
    std::int64_t control_time = 1;   // horizon over which resilience is judged
    std::uint64_t master_seed = 0;   // stream seed for this single run
    bool stop_on_eradication = true;

    void validate() const;
};

// One row of the recorded time series. mean_effective_tau averages the
// modulated probability over every exposure evaluated in the transition
// leaving step t; when nothing was exposed it falls back to the modulation a
// hypothetical isolated contact would have seen, tau * exp(-omega(t)), so
// the series always reflects the countermeasure level in force.
struct StepSample {
    std::int64_t t = 0;
    int n_infected = 0;
    double omega = 0.0;
    int new_infections = 0;          // nodes healthy at t-1, infected at t
    double mean_effective_tau = 0.0;
};

struct RunRecord {
    std::vector<StepSample> series;
    std::optional<std::int64_t> eradication_time;  // first step with N = 0
    int node_count = 0;
    std::int64_t control_time = 0;
    std::uint64_t seed = 0;          // the stream seed that produced this run

    // Infected count at step t; 0 for steps beyond an early-stopped record
    // (the all-healthy state is absorbing).
    int infected_at(std::int64_t t) const;
};

// Modulated per-neighbor infection probability tau * exp(-J*n - omega),
// clamped to [0, 1].
double effective_tau(const PerceptionParams& params, int n_infected_neighbors, double omega);

// Probability that a node with n infected neighbors is infected this step:
// 1 - (1 - tau_eff)^n.
double infection_probability(double effective_tau, int n_infected_neighbors);

// One application of the alarm recursion:
//   omega' = (1 - mu) * omega + mu * W * N
// where N is infected_count, divided by node_count when normalize_global is
// set. With mu = 1 this returns W * N exactly (memoryless alarm).
double update_perception(const PerceptionParams& params, double omega, int infected_count,
                         int node_count);

// Initial state: infects exactly count_for(node_count) distinct nodes chosen
// uniformly, sets t = 0 and omega = omega0. Consumes draws from `rng` in
// ascending node order; the same rng then drives the run.
SimState seed_infection(const Topology& topology, const PerceptionParams& params,
                        const SeedingSpec& seeding, CounterRng rng);

// Statistics of one synchronous transition.
struct StepStats {
    int new_infections = 0;           // healthy -> infected flips
    long long evaluations = 0;        // nodes with at least one infected neighbor
    double sum_effective_tau = 0.0;   // over those evaluations
};

// Synchronous update, in place. For every node, n = number of neighbors
// infected at time t; the node is infected at t+1 with probability
// infection_probability(effective_tau(params, n, omega(t)), n), one uniform
// draw per exposed node in ascending node order. Infected nodes recover in
// one step and may be re-infected in the same transition. Afterwards the
// alarm advances from the pre-step infected count and t increments.
StepStats step(SimState& state, const Topology& topology, const PerceptionParams& params);

// Convenience value-returning form of step() for callers that want the
// functional flavor; identical draw sequence.
SimState stepped(const SimState& state, const Topology& topology, const PerceptionParams& params);

// Seed, then step until t = control_time or (stop_on_eradication and N = 0).
// Bitwise reproducible from config.master_seed.
RunRecord run(const Topology& topology, const RunConfig& config);

} // namespace resilnet
