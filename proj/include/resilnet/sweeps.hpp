#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

#include "resilnet/dynamics.hpp"
#include "resilnet/topology.hpp"

namespace resilnet {

enum class SweepAxis { tau, j_local, w_global, mu };

// Replicated Monte Carlo sweep / threshold-search specification. `grid`
// drives sweep(); `bracket_lo/hi` and `bisection_tolerance` drive
// estimate_threshold(). Both reuse the same base run configuration.
struct SweepSpec {
    RunConfig base;
    SweepAxis axis = SweepAxis::tau;
    std::vector<double> grid;
    double bracket_lo = 0.0;
    double bracket_hi = 0.0;
    int replicates = 20;
    std::int64_t survival_horizon = 2000;
    double bisection_tolerance = 0.005;

    void validate_common() const;
    void validate_for_sweep() const;      // additionally requires a non-empty grid
    void validate_for_threshold() const;  // additionally requires lo < hi, tol > 0
};

struct ThresholdEstimate {
    SweepAxis axis = SweepAxis::tau;
    double estimate = 0.0;
    double bracket_lo = 0.0;
    double bracket_hi = 0.0;
    double survival_lo = 0.0;   // at the final bracket_lo
    double survival_hi = 0.0;   // at the final bracket_hi
    int replicates_used = 0;    // total replicate runs consumed
};

struct SweepRow {
    double value = 0.0;
    double survival = 0.0;
    double mean_resilience = 0.0;
    double mean_peak = 0.0;
    // Mean over the replicates that eradicated; absent if none did.
    std::optional<double> mean_eradication_time;
};

// Config for replicate r: same run, stream seed derived from (master, r).
RunConfig replicate_config(const RunConfig& base, int replicate);

// Returns base with the swept parameter set to `value`.
RunConfig with_axis_value(const RunConfig& base, SweepAxis axis, double value);

// Fraction of replicates whose infection is still alive at `horizon` steps.
// Replicate r is seeded from (config.master_seed, r); deterministic, and
// consistent under partitioning: counting replicates [0,k) and [k,2k)
// separately sums to the [0,2k) count.
double survival_probability(const Topology& topology, const RunConfig& config, int replicates,
                            std::int64_t horizon);

// The partition primitive behind survival_probability: number of surviving
// replicates with indices in [first, last).
int survival_count(const Topology& topology, const RunConfig& config, int first, int last,
                   std::int64_t horizon);

// Bisect on the 50% survival crossing until the bracket is narrower than the
// tolerance. Survival is treated as increasing along the tau axis and
// decreasing along j_local, w_global and mu (a faster or stronger response
// suppresses the epidemic); the endpoint check validates the assumed
// orientation and throws BracketError when the bracket does not straddle.
ThresholdEstimate estimate_threshold(const Topology& topology, const SweepSpec& spec);

// One row per grid value, each aggregating `replicates` runs (fixed
// replicate-ascending reduction order; deterministic given the master seed).
std::vector<SweepRow> sweep(const Topology& topology, const SweepSpec& spec);

// Runs fn(r) for r in [0, count) with replicates distributed over hardware
// threads, collecting results in index order regardless of completion order.
std::vector<RunRecord> run_replicates(int count,
                                      const std::function<RunRecord(int)>& fn);

const char* axis_name(SweepAxis axis);

} // namespace resilnet
