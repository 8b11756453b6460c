#include <doctest.h>

#include <vector>

#include "resilnet/errors.hpp"
#include "resilnet/metrics.hpp"

using namespace resilnet;

namespace {

// Hand-built record: infected counts per step on a graph of `node_count`
// nodes, with a constant mean_effective_tau for cost checks.
RunRecord record_with(std::vector<int> infected, int node_count, double met = 0.5) {
    RunRecord record;
    record.node_count = node_count;
    record.control_time = static_cast<std::int64_t>(infected.size()) - 1;
    for (std::size_t t = 0; t < infected.size(); ++t) {
        record.series.push_back({static_cast<std::int64_t>(t), infected[t], 0.0, 0, met});
        if (!record.eradication_time && infected[t] == 0)
            record.eradication_time = static_cast<std::int64_t>(t);
    }
    return record;
}

} // namespace

TEST_CASE("critical functionality") {
    CHECK(critical_functionality(0, 10000) == 1.0);
    CHECK(critical_functionality(10000, 10000) == 0.0);
    CHECK(critical_functionality(1000, 10000) == doctest::Approx(0.9).epsilon(1e-15));
    SUBCASE("complements the infected fraction exactly") {
        for (int n : {0, 1, 17, 300, 9999})
            CHECK(critical_functionality(n, 9999 + 1) + n / 10000.0 ==
                  doctest::Approx(1.0).epsilon(1e-15));
    }
}

TEST_CASE("resilience") {
    SUBCASE("no disruption gives R = 1") {
        CHECK(resilience(record_with({0, 0, 0}, 100), 2) == 1.0);
    }
    SUBCASE("constant half-infected series gives R = 0.5") {
        CHECK(resilience(record_with({50, 50, 50, 50}, 100), 3) ==
              doctest::Approx(0.5).epsilon(1e-15));
    }
    SUBCASE("hand-summed early-eradication oracle") {
        // N = (5000, 0, 0, ...) on 10^4 nodes over control time 99:
        // (0.5 + 99 * 1) / 100 = 0.995.
        CHECK(resilience(record_with({5000, 0}, 10000), 99) ==
              doctest::Approx(0.995).epsilon(1e-15));
    }
    SUBCASE("padding idempotence: appending post-eradication zeros changes nothing") {
        const RunRecord stopped = record_with({5000, 0}, 10000);
        RunRecord padded = record_with({5000, 0, 0, 0, 0, 0, 0}, 10000);
        for (std::int64_t horizon : {6, 50, 99})
            CHECK(resilience(stopped, horizon) == resilience(padded, horizon));
    }
    SUBCASE("stays in [0,1] for arbitrary series") {
        const RunRecord record = record_with({3, 9, 1, 10, 10, 2, 0}, 10);
        for (std::int64_t horizon : {1, 3, 6, 40}) {
            const double r = resilience(record, horizon);
            CHECK(r >= 0.0);
            CHECK(r <= 1.0);
        }
    }
    SUBCASE("R = 1 implies no recorded infection") {
        // The forward direction of the equivalence: any infected step pulls
        // R strictly below 1.
        CHECK(resilience(record_with({1, 0}, 10000), 9999) < 1.0);
    }
    SUBCASE("empty record and bad horizon rejected") {
        CHECK_THROWS_AS(resilience(RunRecord{}, 10), ValidationError);
        CHECK_THROWS_AS(resilience(record_with({1, 0}, 10), 0), ValidationError);
    }
}

TEST_CASE("countermeasure cost") {
    SUBCASE("bare idle system costs 1 - tau") {
        CHECK(countermeasure_cost(record_with({0}, 100, 0.5)) ==
              doctest::Approx(0.5).epsilon(1e-15));
    }
    SUBCASE("tau = 1 with no damping costs nothing") {
        CHECK(countermeasure_cost(record_with({0, 0}, 100, 1.0)) == 0.0);
    }
    SUBCASE("time average over mixed rows") {
        RunRecord record = record_with({5, 3, 0}, 100, 0.5);
        record.series[1].mean_effective_tau = 0.25;
        record.series[2].mean_effective_tau = 1.0;
        CHECK(countermeasure_cost(record) ==
              doctest::Approx((0.5 + 0.75 + 0.0) / 3.0).epsilon(1e-15));
    }
    SUBCASE("empty record rejected") {
        CHECK_THROWS_AS(countermeasure_cost(RunRecord{}), ValidationError);
    }
}

TEST_CASE("outbreak counting") {
    SUBCASE("monotone-decreasing series has exactly the initial peak") {
        CHECK(count_outbreaks(record_with({100, 60, 30, 10, 0}, 1000), 4) == 1);
    }
    SUBCASE("hand-traced multi-peak oracle") {
        CHECK(count_outbreaks(record_with({10, 5, 20, 3, 15, 0}, 1000), 4) == 3);
    }
    SUBCASE("all-zero series has no outbreaks and eradication at 0") {
        const RunRecord record = record_with({0, 0, 0}, 1000);
        CHECK(count_outbreaks(record, 0) == 0);
        REQUIRE(record.eradication_time.has_value());
        CHECK(*record.eradication_time == 0);
    }
    SUBCASE("noise floor suppresses small maxima") {
        CHECK(count_outbreaks(record_with({10, 5, 20, 3, 15, 0}, 1000), 14) == 2);
        CHECK(count_outbreaks(record_with({10, 5, 20, 3, 15, 0}, 1000), 19) == 1);
        CHECK(count_outbreaks(record_with({10, 5, 20, 3, 15, 0}, 1000), 20) == 0);
    }
    SUBCASE("plateaus collapse into one candidate") {
        CHECK(count_outbreaks(record_with({1, 7, 7, 7, 2, 9, 9, 0}, 1000), 0) == 2);
        CHECK(count_outbreaks(record_with({5, 5, 5}, 1000), 0) == 1);
    }
    SUBCASE("rising tail counts as a one-sided maximum") {
        CHECK(count_outbreaks(record_with({0, 3, 8}, 1000), 2) == 1);
    }
    SUBCASE("negative floor rejected") {
        CHECK_THROWS_AS(count_outbreaks(record_with({1, 0}, 10), -1), ValidationError);
    }
    SUBCASE("default noise floor is half a percent of the node count") {
        CHECK(default_noise_floor(10000) == 50);
        CHECK(default_noise_floor(100) == 0);
        CHECK(default_noise_floor(400) == 2);
    }
}

TEST_CASE("summarize assembles the full report") {
    RunRecord record = record_with({10, 5, 20, 3, 15, 0}, 1000, 0.4);
    const ResilienceReport report = summarize(record, 4);
    CHECK(report.peak_infected == 20);
    CHECK(report.peak_time == 2);
    CHECK(report.outbreak_count == 3);
    REQUIRE(report.eradication_time.has_value());
    CHECK(*report.eradication_time == 5);
    CHECK(report.mean_cf == report.resilience);
    CHECK(report.cost == doctest::Approx(0.6).epsilon(1e-12));
    const double exact_r = (990 + 995 + 980 + 997 + 985 + 1000) / 1000.0 / 6.0;
    CHECK(report.resilience == doctest::Approx(exact_r).epsilon(1e-12));
    SUBCASE("peak time is the first step attaining the maximum") {
        const ResilienceReport tie =
            summarize(record_with({7, 9, 2, 9, 0}, 100), 0);
        CHECK(tie.peak_infected == 9);
        CHECK(tie.peak_time == 1);
    }
    SUBCASE("combined score prices cost in linearly") {
        CHECK(combined_score(report, 0.0) == report.resilience);
        CHECK(combined_score(report, 0.5) ==
              doctest::Approx(report.resilience - 0.5 * report.cost).epsilon(1e-12));
    }
}
