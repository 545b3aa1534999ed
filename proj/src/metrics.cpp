#include "upfmec/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

namespace upfmec {

Stat Stat::of(std::span<const double> samples) {
    Stat s;
    s.count = samples.size();
    if (samples.empty()) return s;
    const double n = static_cast<double>(samples.size());
    s.mean = std::accumulate(samples.begin(), samples.end(), 0.0) / n;
    double ss = 0.0;
    for (double x : samples) ss += (x - s.mean) * (x - s.mean);
    s.stddev = std::sqrt(ss / n);
    return s;
}

double percentile_nearest_rank(std::span<const double> sorted, double p) {
    if (sorted.empty()) return 0.0;
    const double n = static_cast<double>(sorted.size());
    auto rank = static_cast<std::size_t>(std::ceil(p / 100.0 * n - 1e-9));
    rank = std::clamp<std::size_t>(rank, 1, sorted.size());
    return sorted[rank - 1];
}

Percentiles Percentiles::of(std::vector<double> samples) {
    Percentiles p;
    p.count = samples.size();
    if (samples.empty()) return p;
    std::sort(samples.begin(), samples.end());
    p.p50 = percentile_nearest_rank(samples, 50);
    p.p80 = percentile_nearest_rank(samples, 80);
    p.p95 = percentile_nearest_rank(samples, 95);
    p.p99 = percentile_nearest_rank(samples, 99);
    p.p999 = percentile_nearest_rank(samples, 99.9);
    p.max = samples.back();
    return p;
}

SummaryReport summarize(const RunResult& run) {
    SummaryReport rep;
    rep.scenario_name = run.scenario_name;
    rep.scheme = run.scheme;
    rep.seed = run.seed;
    rep.generated = run.generated;
    rep.completed = run.completed;
    rep.dropped = run.dropped;
    rep.residual = run.residual;
    rep.truncated = run.truncated;

    std::vector<PerQos<std::vector<double>>> upf_qos(run.num_upfs);
    std::vector<std::vector<double>> mec(run.num_mecs);
    std::vector<double> upf_all, net_all, mec_all, e2e_all;
    PerQos<std::vector<double>> e2e_qos;

    for (const auto& r : run.requests) {
        const auto k = qos_index(r.qos);
        if (r.status == RequestStatus::Dropped) {
            ++rep.dropped_by_qos[k];
            continue;
        }
        if (r.status != RequestStatus::Completed) continue;
        ++rep.completed_by_qos[k];
        upf_qos[*r.assigned_upf][k].push_back(r.d_upf);
        upf_all.push_back(r.d_upf);
        if (r.assigned_mec) {
            mec[*r.assigned_mec].push_back(r.d_mec);
            mec_all.push_back(r.d_mec);
            net_all.push_back(r.d_net);
        }
        e2e_all.push_back(r.d_e2e());
        e2e_qos[k].push_back(r.d_e2e());
    }

    rep.upf_qos_delay.resize(run.num_upfs);
    for (std::size_t i = 0; i < run.num_upfs; ++i) {
        for (std::size_t k = 0; k < kNumQos; ++k) rep.upf_qos_delay[i][k] = Stat::of(upf_qos[i][k]);
    }
    for (const auto& samples : mec) rep.mec_delay.push_back(Stat::of(samples));
    rep.upf_delay = Stat::of(upf_all);
    rep.net_delay = Stat::of(net_all);
    rep.mec_delay_all = Stat::of(mec_all);
    rep.e2e_delay = Stat::of(e2e_all);
    for (std::size_t k = 0; k < kNumQos; ++k) {
        rep.e2e_delay_by_qos[k] = Stat::of(e2e_qos[k]);
        rep.e2e_by_qos[k] = Percentiles::of(e2e_qos[k]);
    }
    rep.e2e_all = Percentiles::of(std::move(e2e_all));

    rep.peak_upf_queue.assign(run.num_upfs, 0);
    for (const auto& row : run.upf_queue_trace) {
        for (std::size_t i = 0; i < row.size(); ++i) {
            std::size_t total = 0;
            for (auto n : row[i]) total += n;
            rep.peak_upf_queue[i] = std::max(rep.peak_upf_queue[i], total);
        }
    }
    rep.peak_mec_queue.assign(run.num_mecs, 0);
    for (const auto& row : run.mec_queue_trace) {
        for (std::size_t j = 0; j < row.size(); ++j) {
            rep.peak_mec_queue[j] = std::max<std::size_t>(rep.peak_mec_queue[j], row[j]);
        }
    }
    return rep;
}

std::size_t peak_upf_queue(const RunResult& run) {
    std::size_t peak = 0;
    for (const auto& row : run.upf_queue_trace) {
        for (const auto& per_qos : row) {
            std::size_t total = 0;
            for (auto n : per_qos) total += n;
            peak = std::max(peak, total);
        }
    }
    return peak;
}

std::vector<ComparisonRow> compare_schemes(std::span<const RunResult> runs) {
    std::vector<ComparisonRow> rows;
    std::vector<std::vector<const RunResult*>> groups;
    for (const auto& run : runs) {
        auto it = std::find_if(rows.begin(), rows.end(),
                               [&](const ComparisonRow& r) { return r.scheme == run.scheme; });
        if (it == rows.end()) {
            rows.push_back({});
            rows.back().scheme = run.scheme;
            groups.emplace_back();
            it = rows.end() - 1;
        }
        groups[static_cast<std::size_t>(it - rows.begin())].push_back(&run);
    }

    for (std::size_t g = 0; g < rows.size(); ++g) {
        auto& row = rows[g];
        std::vector<double> upf, net, mec, e2e;
        double sum_max = 0.0;
        double sum_p999 = 0.0;
        for (const auto* run : groups[g]) {
            ++row.runs;
            row.dropped += run->dropped;
            row.peak_upf_queue = std::max(row.peak_upf_queue, peak_upf_queue(*run));
            std::vector<double> run_e2e;
            for (const auto& r : run->requests) {
                if (r.status != RequestStatus::Completed) continue;
                ++row.completed;
                upf.push_back(r.d_upf);
                if (r.assigned_mec) {
                    net.push_back(r.d_net);
                    mec.push_back(r.d_mec);
                }
                run_e2e.push_back(r.d_e2e());
            }
            const auto pct = Percentiles::of(run_e2e);
            sum_max += pct.max;
            sum_p999 += pct.p999;
            e2e.insert(e2e.end(), run_e2e.begin(), run_e2e.end());
        }
        const auto n = static_cast<double>(row.runs);
        row.mean_max_e2e = sum_max / n;
        row.mean_p999_e2e = sum_p999 / n;
        row.upf_delay = Stat::of(upf);
        row.net_delay = Stat::of(net);
        row.mec_delay = Stat::of(mec);
        row.e2e_delay = Stat::of(e2e);
        row.e2e = Percentiles::of(std::move(e2e));
    }

    auto base = std::find_if(rows.begin(), rows.end(),
                             [](const ComparisonRow& r) { return r.scheme == Scheme::Baseline; });
    if (base != rows.end() && base->mean_max_e2e > 0.0) {
        const double ref = base->mean_max_e2e;
        for (auto& row : rows) {
            row.max_reduction_vs_baseline_pct = 100.0 * (ref - row.mean_max_e2e) / ref;
        }
    }
    return rows;
}

std::vector<double> e2e_samples(const RunResult& run, std::optional<QosClass> qos) {
    std::vector<double> out;
    for (const auto& r : run.requests) {
        if (r.status != RequestStatus::Completed) continue;
        if (qos && r.qos != *qos) continue;
        out.push_back(r.d_e2e());
    }
    return out;
}

CdfTable build_cdf(std::vector<double> samples) {
    CdfTable t;
    if (samples.empty()) return t;
    std::sort(samples.begin(), samples.end());
    const double n = static_cast<double>(samples.size());
    for (std::size_t i = 0; i < samples.size(); ++i) {
        if (i + 1 < samples.size() && samples[i + 1] == samples[i]) continue;
        t.values.push_back(samples[i]);
        t.probabilities.push_back(i + 1 == samples.size() ? 1.0 : static_cast<double>(i + 1) / n);
    }
    return t;
}

ThresholdCount count_under_threshold(const RunResult& run, QosClass qos, double threshold_ms) {
    ThresholdCount c;
    for (const auto& r : run.requests) {
        if (r.qos != qos) continue;
        if (r.status == RequestStatus::Dropped) {
            ++c.dropped;
        } else if (r.status == RequestStatus::Completed) {
            ++c.admitted;
            if (r.d_e2e() < threshold_ms) ++c.under;
        }
    }
    return c;
}

Scenario scale_topology(const Scenario& base, std::size_t pairs) {
    if (pairs == 0) throw std::invalid_argument("pair count must be at least 1");
    if (base.upfs.empty() || base.mecs.empty()) {
        throw std::invalid_argument("base scenario has no UPFs or MECs to cycle");
    }
    std::vector<double> base_bw(base.num_upfs * base.num_mecs, 0.0);
    for (const auto& l : base.links) base_bw[l.upf * base.num_mecs + l.mec] = l.bandwidth_mbps;

    Scenario s = base;
    s.num_upfs = pairs;
    s.num_mecs = pairs;
    s.upfs.clear();
    s.mecs.clear();
    s.links.clear();
    s.traffic.skew.clear();
    for (std::size_t i = 0; i < pairs; ++i) {
        s.upfs.push_back(base.upfs[i % base.upfs.size()]);
        s.mecs.push_back(base.mecs[i % base.mecs.size()]);
        s.traffic.skew.push_back(base.traffic.skew[i % base.traffic.skew.size()]);
    }
    const double total = std::accumulate(s.traffic.skew.begin(), s.traffic.skew.end(), 0.0);
    for (auto& x : s.traffic.skew) x /= total;
    for (std::size_t i = 0; i < pairs; ++i) {
        for (std::size_t j = 0; j < pairs; ++j) {
            s.links.push_back(
                {i, j, base_bw[(i % base.num_upfs) * base.num_mecs + (j % base.num_mecs)]});
        }
    }
    s.name = base.name + "-k" + std::to_string(pairs);
    return s;
}

const CapexPoint* CapexSweep::find(std::size_t pairs, Scheme scheme) const {
    for (const auto& p : points) {
        if (p.num_pairs == pairs && p.scheme == scheme) return &p;
    }
    return nullptr;
}

const CapexComparison* CapexSweep::compare(std::size_t pairs, QosClass qos) const {
    for (const auto& c : comparisons) {
        if (c.num_pairs == pairs && c.qos == qos) return &c;
    }
    return nullptr;
}

CapexSweep capex_sweep(const Scenario& base, std::span<const std::size_t> pair_counts,
                       std::span<const std::uint64_t> seeds,
                       const std::map<QosClass, double>& thresholds_ms, std::size_t max_threads) {
    constexpr std::array<Scheme, 2> kSchemes{Scheme::Baseline, Scheme::BestfitUpfMec};

    std::vector<Scenario> jobs;
    for (auto k : pair_counts) {
        const auto topo = scale_topology(base, k);
        for (auto scheme : kSchemes) {
            for (auto seed : seeds) {
                auto s = topo;
                s.scheme = scheme;
                s.seed = seed;
                jobs.push_back(std::move(s));
            }
        }
    }
    const auto results = run_batch(jobs, max_threads);

    CapexSweep sweep;
    std::size_t next = 0;
    for (auto k : pair_counts) {
        for (auto scheme : kSchemes) {
            CapexPoint p;
            p.num_pairs = k;
            p.scheme = scheme;
            for (std::size_t s = 0; s < seeds.size(); ++s) {
                const auto& run = results[next++];
                for (const auto& [qos, ms] : thresholds_ms) {
                    const auto c = count_under_threshold(run, qos, ms);
                    auto& acc = p.counts[qos];
                    acc.under += c.under;
                    acc.admitted += c.admitted;
                    acc.dropped += c.dropped;
                }
            }
            for (const auto& [qos, c] : p.counts) p.pct_under_threshold[qos] = c.percent();
            sweep.points.push_back(std::move(p));
        }
    }

    for (auto k : pair_counts) {
        for (const auto& [qos, _] : thresholds_ms) {
            CapexComparison c;
            c.num_pairs = k;
            c.qos = qos;
            c.baseline_pct = sweep.find(k, Scheme::Baseline)->pct_under_threshold.at(qos);
            c.bestfit_pct = sweep.find(k, Scheme::BestfitUpfMec)->pct_under_threshold.at(qos);
            if (c.baseline_pct > 0.0) {
                c.connectivity_gain = c.bestfit_pct / c.baseline_pct;
            } else {
                c.connectivity_gain =
                    c.bestfit_pct > 0.0 ? std::numeric_limits<double>::infinity() : 1.0;
            }
            for (auto k2 : pair_counts) {
                const double pct = sweep.find(k2, Scheme::BestfitUpfMec)->pct_under_threshold.at(qos);
                if (pct >= c.baseline_pct && (!c.matching_pairs || k2 < *c.matching_pairs)) {
                    c.matching_pairs = k2;
                }
            }
            if (c.matching_pairs) {
                c.capex_savings_pct =
                    100.0 * (1.0 - static_cast<double>(*c.matching_pairs) / static_cast<double>(k));
            }
            sweep.comparisons.push_back(c);
        }
    }
    return sweep;
}

}  // namespace upfmec
