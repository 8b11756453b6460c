#include "resilnet/sweeps.hpp"

#include <algorithm>
#include <cmath>
#include <future>
#include <thread>

#include "resilnet/errors.hpp"
#include "resilnet/metrics.hpp"

namespace resilnet {

void SweepSpec::validate_common() const {
    base.validate();
    if (replicates < 1) throw ValidationError("replicates must be >= 1");
    if (survival_horizon < 1) throw ValidationError("survival_horizon must be >= 1");
}

void SweepSpec::validate_for_sweep() const {
    validate_common();
    if (grid.empty()) throw ValidationError("sweep grid must not be empty");
}

void SweepSpec::validate_for_threshold() const {
    validate_common();
    if (!(bracket_lo < bracket_hi)) throw ValidationError("bracket requires lo < hi");
    if (!(bisection_tolerance > 0.0)) throw ValidationError("bisection_tolerance must be > 0");
}

RunConfig replicate_config(const RunConfig& base, int replicate) {
    RunConfig config = base;
    config.master_seed = derive_stream(base.master_seed, static_cast<std::uint64_t>(replicate));
    return config;
}

RunConfig with_axis_value(const RunConfig& base, SweepAxis axis, double value) {
    RunConfig config = base;
    switch (axis) {
    case SweepAxis::tau: config.params.tau = value; break;
    case SweepAxis::j_local: config.params.j_local = value; break;
    case SweepAxis::w_global: config.params.w_global = value; break;
    case SweepAxis::mu: config.params.mu = value; break;
    }
    return config;
}

const char* axis_name(SweepAxis axis) {
    switch (axis) {
    case SweepAxis::tau: return "tau";
    case SweepAxis::j_local: return "j_local";
    case SweepAxis::w_global: return "w_global";
    case SweepAxis::mu: return "mu";
    }
    return "?";
}

std::vector<RunRecord> run_replicates(int count, const std::function<RunRecord(int)>& fn) {
    std::vector<RunRecord> records(count);
    const unsigned workers = std::max(1u, std::thread::hardware_concurrency());
    // Launch in waves so peak memory stays bounded; results land at their
    // replicate index, so the aggregation order downstream never depends on
    // scheduling.
    for (int begin = 0; begin < count; begin += static_cast<int>(workers)) {
        const int end = std::min(count, begin + static_cast<int>(workers));
        std::vector<std::future<RunRecord>> batch;
        batch.reserve(end - begin);
        for (int r = begin; r < end; ++r)
            batch.push_back(std::async(std::launch::async, fn, r));
        for (int r = begin; r < end; ++r) records[r] = batch[r - begin].get();
    }
    return records;
}

int survival_count(const Topology& topology, const RunConfig& config, int first, int last,
                   std::int64_t horizon) {
    RunConfig horizon_config = config;
    horizon_config.control_time = horizon;
    horizon_config.stop_on_eradication = true;  // an eradicated run cannot revive

    const int count = last - first;
    std::vector<RunRecord> records = run_replicates(count, [&](int i) {
        return run(topology, replicate_config(horizon_config, first + i));
    });
    int alive = 0;
    for (const RunRecord& record : records)
        if (record.infected_at(horizon) > 0) ++alive;
    return alive;
}

double survival_probability(const Topology& topology, const RunConfig& config, int replicates,
                            std::int64_t horizon) {
    if (replicates < 1) throw ValidationError("replicates must be >= 1");
    return static_cast<double>(survival_count(topology, config, 0, replicates, horizon)) /
           static_cast<double>(replicates);
}

namespace {

// Survival rises with tau and falls as the perception response (local
// damping, alarm weight, alarm speed) strengthens.
bool survival_increases_along(SweepAxis axis) { return axis == SweepAxis::tau; }

} // namespace

ThresholdEstimate estimate_threshold(const Topology& topology, const SweepSpec& spec) {
    spec.validate_for_threshold();
    const bool increasing = survival_increases_along(spec.axis);

    auto survival_at = [&](double value) {
        return survival_probability(topology, with_axis_value(spec.base, spec.axis, value),
                                    spec.replicates, spec.survival_horizon);
    };

    double lo = spec.bracket_lo, hi = spec.bracket_hi;
    double s_lo = survival_at(lo);
    double s_hi = survival_at(hi);
    int evaluations = 2;

    const double s_low_side = increasing ? s_lo : s_hi;
    const double s_high_side = increasing ? s_hi : s_lo;
    if (!(s_low_side <= 0.5 && s_high_side >= 0.5))
        throw BracketError("bracket endpoints do not straddle 50% survival (survival at lo = " +
                               std::to_string(s_lo) + ", at hi = " + std::to_string(s_hi) + ")",
                           s_lo, s_hi);

    while (hi - lo > spec.bisection_tolerance) {
        const double mid = 0.5 * (lo + hi);
        const double s_mid = survival_at(mid);
        ++evaluations;
        // Keep the half-bracket that still straddles the crossing.
        const bool mid_above_crossing = increasing ? (s_mid >= 0.5) : (s_mid <= 0.5);
        if (mid_above_crossing) {
            hi = mid;
            s_hi = s_mid;
        } else {
            lo = mid;
            s_lo = s_mid;
        }
    }

    ThresholdEstimate estimate;
    estimate.axis = spec.axis;
    estimate.estimate = 0.5 * (lo + hi);
    estimate.bracket_lo = lo;
    estimate.bracket_hi = hi;
    estimate.survival_lo = s_lo;
    estimate.survival_hi = s_hi;
    estimate.replicates_used = evaluations * spec.replicates;
    return estimate;
}

std::vector<SweepRow> sweep(const Topology& topology, const SweepSpec& spec) {
    spec.validate_for_sweep();
    if (spec.survival_horizon > spec.base.control_time)
        throw ValidationError("survival_horizon exceeds control_time");

    std::vector<SweepRow> table;
    table.reserve(spec.grid.size());
    for (double value : spec.grid) {
        const RunConfig config = with_axis_value(spec.base, spec.axis, value);
        std::vector<RunRecord> records = run_replicates(spec.replicates, [&](int r) {
            return run(topology, replicate_config(config, r));
        });

        SweepRow row;
        row.value = value;
        int alive = 0, eradicated = 0;
        double sum_resilience = 0.0, sum_peak = 0.0, sum_eradication = 0.0;
        for (const RunRecord& record : records) {  // fixed replicate order
            if (record.infected_at(spec.survival_horizon) > 0) ++alive;
            sum_resilience += resilience(record, record.control_time);
            int peak = 0;
            for (const StepSample& sample : record.series)
                peak = std::max(peak, sample.n_infected);
            sum_peak += peak;
            if (record.eradication_time) {
                ++eradicated;
                sum_eradication += static_cast<double>(*record.eradication_time);
            }
        }
        row.survival = static_cast<double>(alive) / spec.replicates;
        row.mean_resilience = sum_resilience / spec.replicates;
        row.mean_peak = sum_peak / spec.replicates;
        if (eradicated > 0) row.mean_eradication_time = sum_eradication / eradicated;
        table.push_back(row);
    }
    return table;
}

} // namespace resilnet
