#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "upfmec/engine.hpp"
#include "upfmec/model.hpp"

namespace upfmec {

struct Stat {
    std::size_t count = 0;
    double mean = 0.0;
    double stddev = 0.0;  // population standard deviation

    static Stat of(std::span<const double> samples);
};

// Nearest-rank percentiles: the sample at rank ceil(p/100 * N) of the sorted data.
struct Percentiles {
    std::size_t count = 0;
    double p50 = 0.0;
    double p80 = 0.0;
    double p95 = 0.0;
    double p99 = 0.0;
    double p999 = 0.0;
    double max = 0.0;

    static Percentiles of(std::vector<double> samples);
};

double percentile_nearest_rank(std::span<const double> sorted, double p);

struct SummaryReport {
    std::string scenario_name;
    Scheme scheme = Scheme::Baseline;
    std::uint64_t seed = 0;
    std::size_t generated = 0;
    std::size_t completed = 0;
    std::size_t dropped = 0;
    std::size_t residual = 0;
    bool truncated = false;

    std::vector<PerQos<Stat>> upf_qos_delay;  // d_upf by assigned (UPF, QoS)
    std::vector<Stat> mec_delay;              // d_mec by assigned MEC
    Stat upf_delay;
    Stat net_delay;
    Stat mec_delay_all;
    Stat e2e_delay;
    PerQos<Stat> e2e_delay_by_qos;
    PerQos<Percentiles> e2e_by_qos;
    Percentiles e2e_all;
    PerQos<std::size_t> completed_by_qos{};
    PerQos<std::size_t> dropped_by_qos{};
    std::vector<std::size_t> peak_upf_queue;  // max over epochs of the summed QoS queues
    std::vector<std::size_t> peak_mec_queue;
};

// Aggregates completed requests of a run. Delays are the measured (in-system)
// values; projected values stay on the request records.
SummaryReport summarize(const RunResult& run);

std::size_t peak_upf_queue(const RunResult& run);

// d_e2e of completed requests, optionally restricted to one QoS class.
std::vector<double> e2e_samples(const RunResult& run, std::optional<QosClass> qos = std::nullopt);

struct CdfTable {
    std::vector<double> values;         // distinct samples, ascending
    std::vector<double> probabilities;  // P(X <= value)
};

CdfTable build_cdf(std::vector<double> samples);

// One row of the scheme comparison table; every statistic pools all seeds of
// the scheme except mean_max_e2e, the mean over seeds of each run's maximum.
struct ComparisonRow {
    Scheme scheme = Scheme::Baseline;
    std::size_t runs = 0;
    Stat upf_delay;
    Stat net_delay;
    Stat mec_delay;
    Stat e2e_delay;
    double mean_max_e2e = 0.0;
    double mean_p999_e2e = 0.0;
    Percentiles e2e;
    std::size_t completed = 0;
    std::size_t dropped = 0;
    std::size_t peak_upf_queue = 0;
    // (baseline - scheme) / baseline of mean_max_e2e, when a baseline row exists.
    std::optional<double> max_reduction_vs_baseline_pct;
};

// Groups runs by scheme, in order of first appearance.
std::vector<ComparisonRow> compare_schemes(std::span<const RunResult> runs);

// Share of completed requests of one class whose d_e2e is strictly below the threshold.
struct ThresholdCount {
    std::size_t under = 0;
    std::size_t admitted = 0;  // completed requests of the class
    std::size_t dropped = 0;
    double percent() const {
        return admitted == 0 ? 0.0 : 100.0 * static_cast<double>(under) / static_cast<double>(admitted);
    }
};

ThresholdCount count_under_threshold(const RunResult& run, QosClass qos, double threshold_ms);

// Topology with k UPF-MEC pairs built by cycling the base entities, link
// bandwidths (by (i mod U, j mod M)) and skew; skew is renormalised.
Scenario scale_topology(const Scenario& base, std::size_t pairs);

struct CapexPoint {
    std::size_t num_pairs = 0;
    Scheme scheme = Scheme::Baseline;
    std::map<QosClass, double> pct_under_threshold;  // pooled over seeds
    std::map<QosClass, ThresholdCount> counts;
};

struct CapexComparison {
    std::size_t num_pairs = 0;
    QosClass qos = QosClass::Urllc;
    double baseline_pct = 0.0;
    double bestfit_pct = 0.0;
    double connectivity_gain = 0.0;  // bestfit / baseline; +inf when baseline is 0
    // Smallest swept pair count whose bestfit share reaches baseline_pct.
    std::optional<std::size_t> matching_pairs;
    std::optional<double> capex_savings_pct;
};

struct CapexSweep {
    std::vector<CapexPoint> points;
    std::vector<CapexComparison> comparisons;

    const CapexPoint* find(std::size_t pairs, Scheme scheme) const;
    const CapexComparison* compare(std::size_t pairs, QosClass qos) const;
};

// Runs the baseline and the bestfit UPF-MEC scheme on every pair count and seed.
CapexSweep capex_sweep(const Scenario& base, std::span<const std::size_t> pair_counts,
                       std::span<const std::uint64_t> seeds,
                       const std::map<QosClass, double>& thresholds_ms,
                       std::size_t max_threads = max_parallel_runs());

}  // namespace upfmec
