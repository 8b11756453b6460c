#pragma once

#include <cstdint>
#include <optional>

#include "resilnet/dynamics.hpp"

namespace resilnet {

// Aggregated outcome of one run.
//
// resilience is the time-normalized integral (left sum) of critical
// functionality over the control window; mean_cf is the same number under
// this definition and is reported separately for clarity of downstream
// tables. cost is the time average of (1 - mean_effective_tau): what was
// given up in transmission opportunity by running countermeasures, equal to
// 1 - tau when no alarm and no exposure ever occurs.
struct ResilienceReport {
    double resilience = 0.0;
    double mean_cf = 0.0;
    int peak_infected = 0;
    std::int64_t peak_time = 0;
    std::optional<std::int64_t> eradication_time;
    int outbreak_count = 0;
    double cost = 0.0;
};

// Fraction of nodes still functional: 1 - infected / total.
double critical_functionality(int infected_count, int node_count);

// R = (1/(T_C+1)) * sum over t = 0..T_C of CF(t), padding CF = 1 for steps
// after an early-stopped (eradicated) record. Throws ValidationError on an
// empty record.
double resilience(const RunRecord& record, std::int64_t control_time);

// Time average of (1 - mean_effective_tau) over the recorded steps.
double countermeasure_cost(const RunRecord& record);

// Outbreak counting: collapse consecutive equal values of N(t), then count
// strict local maxima that exceed noise_floor (one-sided comparisons at the
// ends of the series). The floor suppresses spurious peaks from stochastic
// jitter around small counts.
int count_outbreaks(const RunRecord& record, int noise_floor);

// Noise floor used when a scenario does not set one: 0.5% of the node count.
int default_noise_floor(int node_count);

// Full report for one record. Peak time is the first step attaining the
// maximum infected count.
ResilienceReport summarize(const RunRecord& record, int noise_floor);

// Optional combined figure of merit: resilience - lambda * cost. With the
// default lambda = 0 this is plain resilience; exposed for analyses that
// want to price countermeasures into the score.
double combined_score(const ResilienceReport& report, double lambda);

} // namespace resilnet
