#include <doctest.h>

#include <random>

#include "fixtures.hpp"
#include "upfmec/metrics.hpp"
#include "upfmec/scenario_io.hpp"

using namespace upfmec;

namespace {

UeRequest completed(QosClass q, std::size_t upf, double d_upf, double d_net, double d_mec) {
    UeRequest r;
    r.qos = q;
    r.assigned_upf = upf;
    if (uses_mec(q)) r.assigned_mec = upf;
    r.d_upf = d_upf;
    r.d_net = d_net;
    r.d_mec = d_mec;
    r.status = RequestStatus::Completed;
    return r;
}

RunResult synthetic_run(std::vector<UeRequest> requests, Scheme scheme = Scheme::Baseline) {
    RunResult run;
    run.scheme = scheme;
    run.num_upfs = 2;
    run.num_mecs = 2;
    run.requests = std::move(requests);
    run.generated = run.requests.size();
    for (const auto& r : run.requests) {
        if (r.status == RequestStatus::Completed) ++run.completed;
        if (r.status == RequestStatus::Dropped) ++run.dropped;
    }
    return run;
}

}  // namespace

TEST_CASE("statistics of small samples") {
    const std::vector<double> one{4.0};
    CHECK(Stat::of(one).mean == 4.0);
    CHECK(Stat::of(one).stddev == 0.0);
    const std::vector<double> two{2.0, 4.0};
    CHECK(Stat::of(two).mean == 3.0);
    CHECK(Stat::of(two).stddev == 1.0);
    CHECK(Stat::of(std::vector<double>{}).count == 0);
}

TEST_CASE("nearest-rank percentiles") {
    std::vector<double> xs;
    for (int i = 1; i <= 10; ++i) xs.push_back(i);
    CHECK(percentile_nearest_rank(xs, 50) == 5);
    CHECK(percentile_nearest_rank(xs, 80) == 8);
    CHECK(percentile_nearest_rank(xs, 95) == 10);
    CHECK(percentile_nearest_rank(xs, 0) == 1);
    CHECK(percentile_nearest_rank(std::vector<double>{}, 50) == 0.0);
}

TEST_CASE("percentiles are ordered") {
    std::mt19937_64 rng(4);
    std::exponential_distribution<double> dist(0.3);
    for (int t = 0; t < 200; ++t) {
        std::vector<double> xs(1 + t * 7);
        for (auto& x : xs) x = dist(rng);
        const auto p = Percentiles::of(xs);
        REQUIRE(p.p50 <= p.p80);
        REQUIRE(p.p80 <= p.p95);
        REQUIRE(p.p95 <= p.p99);
        REQUIRE(p.p99 <= p.p999);
        REQUIRE(p.p999 <= p.max);
    }
}

TEST_CASE("empirical CDF") {
    const auto cdf = build_cdf({3, 1, 1});
    CHECK(cdf.values == std::vector<double>{1, 3});
    REQUIRE(cdf.probabilities.size() == 2);
    CHECK(cdf.probabilities[0] == doctest::Approx(2.0 / 3));
    CHECK(cdf.probabilities[1] == 1.0);
    CHECK(build_cdf({}).values.empty());
}

TEST_CASE("CDF is monotone and ends at one") {
    std::mt19937_64 rng(8);
    std::uniform_int_distribution<int> d(1, 20);
    for (int t = 0; t < 100; ++t) {
        std::vector<double> xs(1 + t);
        for (auto& x : xs) x = d(rng);
        const auto cdf = build_cdf(xs);
        for (std::size_t i = 1; i < cdf.values.size(); ++i) {
            REQUIRE(cdf.values[i] > cdf.values[i - 1]);
            REQUIRE(cdf.probabilities[i] > cdf.probabilities[i - 1]);
        }
        REQUIRE(cdf.probabilities.back() == 1.0);
    }
}

TEST_CASE("summary aggregates completed requests only") {
    UeRequest dropped;
    dropped.qos = QosClass::Urllc;
    dropped.status = RequestStatus::Dropped;
    const auto run = synthetic_run({completed(QosClass::Urllc, 0, 2, 0.5, 1),
                                    completed(QosClass::Urllc, 0, 4, 0.5, 3),
                                    completed(QosClass::Regular, 1, 1, 0, 0), dropped});
    const auto rep = summarize(run);
    CHECK(rep.upf_qos_delay[0][qos_index(QosClass::Urllc)].mean == 3.0);
    CHECK(rep.upf_qos_delay[1][qos_index(QosClass::Regular)].count == 1);
    CHECK(rep.mec_delay[0].mean == 2.0);
    CHECK(rep.mec_delay[1].count == 0);
    CHECK(rep.net_delay.count == 2);
    CHECK(rep.e2e_all.max == 7.5);
    CHECK(rep.completed_by_qos[qos_index(QosClass::Urllc)] == 2);
    CHECK(rep.dropped_by_qos[qos_index(QosClass::Urllc)] == 1);
    CHECK(e2e_samples(run, QosClass::Regular) == std::vector<double>{1.0});
    CHECK(e2e_samples(run).size() == 3);
}

TEST_CASE("summarizing twice gives the same report") {
    const auto run = run_to_completion(load_scenario(test::scenario_path("five-site.json")));
    const auto a = summarize(run);
    const auto b = summarize(run);
    CHECK(a.e2e_delay.mean == b.e2e_delay.mean);
    CHECK(a.e2e_all.p999 == b.e2e_all.p999);
    CHECK(a.peak_upf_queue == b.peak_upf_queue);
}

TEST_CASE("baseline congestion shows up at the heavy uRLLC buckets") {
    const auto run = run_to_completion(load_scenario(test::scenario_path("five-site.json")));
    const auto rep = summarize(run);
    std::size_t worst_upf = 0;
    std::size_t worst_qos = 0;
    double worst = -1;
    for (std::size_t i = 0; i < rep.upf_qos_delay.size(); ++i) {
        for (std::size_t k = 0; k < kNumQos; ++k) {
            if (rep.upf_qos_delay[i][k].mean > worst) {
                worst = rep.upf_qos_delay[i][k].mean;
                worst_upf = i;
                worst_qos = k;
            }
        }
    }
    CHECK((worst_upf == 1 || worst_upf == 2));
    CHECK(worst_qos == qos_index(QosClass::Urllc));
}

TEST_CASE("threshold counting is strict") {
    const auto run = synthetic_run({completed(QosClass::Urllc, 0, 2, 0, 3),
                                    completed(QosClass::Urllc, 0, 2, 0, 2.5),
                                    completed(QosClass::Embb, 0, 1, 0, 1)});
    const auto c = count_under_threshold(run, QosClass::Urllc, 5.0);
    CHECK(c.admitted == 2);
    CHECK(c.under == 1);
    CHECK(c.percent() == 50.0);
    CHECK(ThresholdCount{}.percent() == 0.0);
}

TEST_CASE("scheme comparison pools seeds and reports the reduction") {
    std::vector<RunResult> runs;
    runs.push_back(synthetic_run({completed(QosClass::Urllc, 0, 8, 0, 2)}));
    runs.push_back(synthetic_run({completed(QosClass::Urllc, 0, 6, 0, 2)}));
    runs.push_back(synthetic_run({completed(QosClass::Urllc, 0, 4, 0, 1)}, Scheme::BestfitUpfMec));
    runs.push_back(synthetic_run({completed(QosClass::Urllc, 0, 2, 0, 1)}, Scheme::BestfitUpfMec));
    const auto rows = compare_schemes(runs);
    REQUIRE(rows.size() == 2);
    CHECK(rows[0].scheme == Scheme::Baseline);
    CHECK(rows[0].runs == 2);
    CHECK(rows[0].mean_max_e2e == 9.0);
    CHECK(rows[1].mean_max_e2e == 4.0);
    CHECK(*rows[0].max_reduction_vs_baseline_pct == 0.0);
    CHECK(*rows[1].max_reduction_vs_baseline_pct == doctest::Approx(100.0 * 5 / 9));
    CHECK(rows[1].e2e_delay.count == 2);

    std::vector<RunResult> no_base(runs.begin() + 2, runs.end());
    CHECK_FALSE(compare_schemes(no_base)[0].max_reduction_vs_baseline_pct.has_value());
}

TEST_CASE("topology scaling cycles the base entities") {
    auto base = load_scenario(test::scenario_path("five-site.json"));
    const auto k7 = scale_topology(base, 7);
    CHECK(k7.num_upfs == 7);
    CHECK(k7.num_mecs == 7);
    CHECK(k7.upfs[5] == base.upfs[0]);
    CHECK(k7.mecs[6] == base.mecs[1]);
    CHECK(k7.links.size() == 49);
    CHECK(validate_scenario(k7).ok());
    CHECK(k7.traffic.mean_arrivals_per_epoch == base.traffic.mean_arrivals_per_epoch);
    const auto k2 = scale_topology(base, 2);
    CHECK(k2.traffic.skew[0] == doctest::Approx(0.13 / 0.37));
    CHECK(scale_topology(base, 5).upfs == base.upfs);
    CHECK_THROWS_AS(scale_topology(base, 0), std::invalid_argument);
}

TEST_CASE("an idle sweep meets every threshold") {
    auto base = test::uniform_scenario(2, 2, 50, 50, 1000, 2, 20);
    const std::vector<std::size_t> pairs{1, 2, 3};
    const std::vector<std::uint64_t> seeds{1, 2};
    const auto sweep = capex_sweep(base, pairs, seeds, base.thresholds_ms, 1);
    CHECK(sweep.points.size() == 6);
    for (auto k : pairs) {
        const auto* c = sweep.compare(k, QosClass::Urllc);
        REQUIRE(c != nullptr);
        CHECK(c->baseline_pct == 100.0);
        CHECK(c->bestfit_pct == 100.0);
        CHECK(c->connectivity_gain == 1.0);
        CHECK(c->matching_pairs == std::optional<std::size_t>(1));
    }
    CHECK(sweep.compare(3, QosClass::Urllc)->capex_savings_pct == doctest::Approx(100.0 * 2 / 3));
    CHECK(sweep.find(4, Scheme::Baseline) == nullptr);
}
