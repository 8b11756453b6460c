#include "resilnet/metrics.hpp"

#include <algorithm>
#include <vector>

#include "resilnet/errors.hpp"

namespace resilnet {

double critical_functionality(int infected_count, int node_count) {
    return 1.0 - static_cast<double>(infected_count) / static_cast<double>(node_count);
}

double resilience(const RunRecord& record, std::int64_t control_time) {
    if (record.series.empty()) throw ValidationError("empty record");
    if (control_time < 1) throw ValidationError("control_time must be >= 1");
    // Fixed ascending-t summation order keeps the result bitwise stable.
    double sum = 0.0;
    for (std::int64_t t = 0; t <= control_time; ++t)
        sum += critical_functionality(record.infected_at(t), record.node_count);
    return sum / static_cast<double>(control_time + 1);
}

double countermeasure_cost(const RunRecord& record) {
    if (record.series.empty()) throw ValidationError("empty record");
    double sum = 0.0;
    for (const StepSample& row : record.series) sum += 1.0 - row.mean_effective_tau;
    return sum / static_cast<double>(record.series.size());
}

int count_outbreaks(const RunRecord& record, int noise_floor) {
    if (noise_floor < 0) throw ValidationError("noise_floor must be >= 0");
    // Collapse plateaus so a flat-topped peak counts once.
    std::vector<int> levels;
    levels.reserve(record.series.size());
    for (const StepSample& row : record.series)
        if (levels.empty() || levels.back() != row.n_infected) levels.push_back(row.n_infected);

    int count = 0;
    for (std::size_t i = 0; i < levels.size(); ++i) {
        const bool rose = (i == 0) || levels[i - 1] < levels[i];
        const bool falls = (i + 1 == levels.size()) || levels[i + 1] < levels[i];
        if (rose && falls && levels[i] > noise_floor) ++count;
    }
    return count;
}

int default_noise_floor(int node_count) {
    return static_cast<int>(node_count * 0.005);
}

ResilienceReport summarize(const RunRecord& record, int noise_floor) {
    if (record.series.empty()) throw ValidationError("empty record");
    ResilienceReport report;
    report.resilience = resilience(record, record.control_time);
    report.mean_cf = report.resilience;
    report.cost = countermeasure_cost(record);
    report.eradication_time = record.eradication_time;
    report.outbreak_count = count_outbreaks(record, noise_floor);
    report.peak_infected = record.series.front().n_infected;
    report.peak_time = record.series.front().t;
    for (const StepSample& row : record.series) {
        if (row.n_infected > report.peak_infected) {
            report.peak_infected = row.n_infected;
            report.peak_time = row.t;
        }
    }
    return report;
}

double combined_score(const ResilienceReport& report, double lambda) {
    return report.resilience - lambda * report.cost;
}

} // namespace resilnet
