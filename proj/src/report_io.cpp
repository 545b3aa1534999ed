#include "upfmec/report_io.hpp"

#include <charconv>
#include <cmath>

#include <json.hpp>

namespace upfmec {

std::string format_number(double v) {
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    if (std::isnan(v)) return "nan";
    char buf[64];
    auto [end, ec] = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, end);
}

namespace {

std::string id_or_empty(const std::optional<std::size_t>& idx) {
    return idx ? std::to_string(*idx + 1) : std::string();
}

std::string epoch_or_empty(const std::optional<std::uint64_t>& e) {
    return e ? std::to_string(*e) : std::string();
}

void stat_row(std::ostream& os, const char* record, const std::string& entity,
              const std::string& qos, const Stat& s) {
    os << record << ',' << entity << ',' << qos << ',' << s.count << ',' << format_number(s.mean)
       << ',' << format_number(s.stddev) << ",,,,,,\n";
}

void pct_row(std::ostream& os, const std::string& qos, const Stat& s, const Percentiles& p) {
    os << "e2e_delay,all," << qos << ',' << s.count << ',' << format_number(s.mean) << ','
       << format_number(s.stddev) << ',' << format_number(p.p50) << ',' << format_number(p.p80)
       << ',' << format_number(p.p95) << ',' << format_number(p.p99) << ','
       << format_number(p.p999) << ',' << format_number(p.max) << '\n';
}

nlohmann::json stat_json(const Stat& s) {
    return {{"count", s.count}, {"mean", s.mean}, {"stddev", s.stddev}};
}

nlohmann::json pct_json(const Percentiles& p) {
    return {{"count", p.count}, {"p50", p.p50}, {"p80", p.p80}, {"p95", p.p95},
            {"p99", p.p99},     {"p999", p.p999}, {"max", p.max}};
}

}  // namespace

void write_summary_csv(std::ostream& os, const SummaryReport& rep) {
    os << "record,entity,qos,count,mean,stddev,p50,p80,p95,p99,p999,max\n";
    for (std::size_t i = 0; i < rep.upf_qos_delay.size(); ++i) {
        for (auto q : kAllQos) {
            stat_row(os, "upf_delay", "upf" + std::to_string(i + 1), std::string(to_string(q)),
                     rep.upf_qos_delay[i][qos_index(q)]);
        }
    }
    for (std::size_t j = 0; j < rep.mec_delay.size(); ++j) {
        stat_row(os, "mec_delay", "mec" + std::to_string(j + 1), "all", rep.mec_delay[j]);
    }
    stat_row(os, "upf_delay", "all", "all", rep.upf_delay);
    stat_row(os, "net_delay", "all", "all", rep.net_delay);
    stat_row(os, "mec_delay", "all", "all", rep.mec_delay_all);

    for (auto q : kAllQos) {
        const auto k = qos_index(q);
        pct_row(os, std::string(to_string(q)), rep.e2e_delay_by_qos[k], rep.e2e_by_qos[k]);
    }
    pct_row(os, "all", rep.e2e_delay, rep.e2e_all);
    for (std::size_t i = 0; i < rep.peak_upf_queue.size(); ++i) {
        os << "peak_queue,upf" << (i + 1) << ",all," << rep.peak_upf_queue[i] << ",,,,,,,,\n";
    }
    for (std::size_t j = 0; j < rep.peak_mec_queue.size(); ++j) {
        os << "peak_queue,mec" << (j + 1) << ",all," << rep.peak_mec_queue[j] << ",,,,,,,,\n";
    }
    for (auto q : kAllQos) {
        const auto k = qos_index(q);
        os << "requests,completed," << to_string(q) << ',' << rep.completed_by_qos[k]
           << ",,,,,,,,\n";
        os << "requests,dropped," << to_string(q) << ',' << rep.dropped_by_qos[k] << ",,,,,,,,\n";
    }
    os << "requests,generated,all," << rep.generated << ",,,,,,,,\n";
    os << "requests,residual,all," << rep.residual << ",,,,,,,,\n";
}

void write_summary_json(std::ostream& os, const SummaryReport& rep) {
    nlohmann::json doc;
    doc["scenario"] = rep.scenario_name;
    doc["scheme"] = std::string(to_string(rep.scheme));
    doc["seed"] = rep.seed;
    doc["generated"] = rep.generated;
    doc["completed"] = rep.completed;
    doc["dropped"] = rep.dropped;
    doc["residual"] = rep.residual;
    doc["truncated"] = rep.truncated;

    auto upfs = nlohmann::json::array();
    for (std::size_t i = 0; i < rep.upf_qos_delay.size(); ++i) {
        nlohmann::json e;
        e["id"] = i + 1;
        for (auto q : kAllQos) {
            e["delay"][std::string(to_string(q))] = stat_json(rep.upf_qos_delay[i][qos_index(q)]);
        }
        e["peak_queue"] = rep.peak_upf_queue[i];
        upfs.push_back(e);
    }
    doc["upfs"] = upfs;
    auto mecs = nlohmann::json::array();
    for (std::size_t j = 0; j < rep.mec_delay.size(); ++j) {
        mecs.push_back({{"id", j + 1},
                        {"delay", stat_json(rep.mec_delay[j])},
                        {"peak_queue", rep.peak_mec_queue[j]}});
    }
    doc["mecs"] = mecs;
    doc["upf_delay"] = stat_json(rep.upf_delay);
    doc["net_delay"] = stat_json(rep.net_delay);
    doc["mec_delay"] = stat_json(rep.mec_delay_all);
    doc["e2e_delay"] = stat_json(rep.e2e_delay);
    doc["e2e_percentiles"]["all"] = pct_json(rep.e2e_all);
    for (auto q : kAllQos) {
        const auto k = qos_index(q);
        const std::string name(to_string(q));
        doc["e2e_percentiles"][name] = pct_json(rep.e2e_by_qos[k]);
        doc["e2e_delay_by_qos"][name] = stat_json(rep.e2e_delay_by_qos[k]);
        doc["completed_by_qos"][name] = rep.completed_by_qos[k];
        doc["dropped_by_qos"][name] = rep.dropped_by_qos[k];
    }
    os << doc.dump(2) << '\n';
}

void write_cdf_csv(std::ostream& os, const CdfTable& cdf) {
    os << "delay_ms,cumulative_probability\n";
    for (std::size_t i = 0; i < cdf.values.size(); ++i) {
        os << format_number(cdf.values[i]) << ',' << format_number(cdf.probabilities[i]) << '\n';
    }
}

void write_requests_csv(std::ostream& os, const RunResult& run) {
    os << "id,qos,origin_upf,arrival_epoch,status,upf,mec,upf_departure_epoch,mec_arrival_epoch,"
          "completion_epoch,d_upf,d_net,d_mec,d_e2e,proj_upf,proj_net,proj_mec,proj_e2e\n";
    for (const auto& r : run.requests) {
        os << r.id << ',' << to_string(r.qos) << ',' << (r.origin_upf + 1) << ','
           << r.arrival_epoch << ',' << to_string(r.status) << ',' << id_or_empty(r.assigned_upf)
           << ',' << id_or_empty(r.assigned_mec) << ',' << epoch_or_empty(r.upf_departure_epoch)
           << ',' << epoch_or_empty(r.mec_arrival_epoch) << ','
           << epoch_or_empty(r.completion_epoch) << ',' << format_number(r.d_upf) << ','
           << format_number(r.d_net) << ',' << format_number(r.d_mec) << ','
           << format_number(r.d_e2e()) << ',' << format_number(r.projected.d_upf) << ','
           << format_number(r.projected.d_net) << ',' << format_number(r.projected.d_mec) << ','
           << format_number(r.projected.d_e2e) << '\n';
    }
}

void write_trace_csv(std::ostream& os, const RunResult& run) {
    os << "epoch,entity,id,qos,queue_length\n";
    for (std::size_t e = 0; e < run.upf_queue_trace.size(); ++e) {
        const auto& row = run.upf_queue_trace[e];
        for (std::size_t i = 0; i < row.size(); ++i) {
            for (auto q : kAllQos) {
                os << e << ",upf," << (i + 1) << ',' << to_string(q) << ','
                   << row[i][qos_index(q)] << '\n';
            }
        }
        const auto& mrow = run.mec_queue_trace[e];
        for (std::size_t j = 0; j < mrow.size(); ++j) {
            os << e << ",mec," << (j + 1) << ",all," << mrow[j] << '\n';
        }
    }
}

void write_comparison_csv(std::ostream& os, std::span<const ComparisonRow> rows) {
    os << "scheme,runs,upf_mean,upf_std,net_mean,net_std,mec_mean,mec_std,e2e_mean,e2e_std,"
          "e2e_p50,e2e_p80,e2e_p99,e2e_p999,e2e_max,mean_max_e2e,mean_p999_e2e,"
          "max_reduction_vs_baseline_pct,completed,dropped,peak_upf_queue\n";
    for (const auto& r : rows) {
        os << to_string(r.scheme) << ',' << r.runs << ',' << format_number(r.upf_delay.mean) << ','
           << format_number(r.upf_delay.stddev) << ',' << format_number(r.net_delay.mean) << ','
           << format_number(r.net_delay.stddev) << ',' << format_number(r.mec_delay.mean) << ','
           << format_number(r.mec_delay.stddev) << ',' << format_number(r.e2e_delay.mean) << ','
           << format_number(r.e2e_delay.stddev) << ',' << format_number(r.e2e.p50) << ','
           << format_number(r.e2e.p80) << ',' << format_number(r.e2e.p99) << ','
           << format_number(r.e2e.p999) << ',' << format_number(r.e2e.max) << ','
           << format_number(r.mean_max_e2e) << ',' << format_number(r.mean_p999_e2e) << ','
           << (r.max_reduction_vs_baseline_pct ? format_number(*r.max_reduction_vs_baseline_pct)
                                               : std::string())
           << ',' << r.completed << ',' << r.dropped << ',' << r.peak_upf_queue << '\n';
    }
}

void write_capex_points_csv(std::ostream& os, const CapexSweep& sweep) {
    os << "num_pairs,scheme,qos,pct_under_threshold,under,admitted,dropped\n";
    for (const auto& p : sweep.points) {
        for (const auto& [qos, c] : p.counts) {
            os << p.num_pairs << ',' << to_string(p.scheme) << ',' << to_string(qos) << ','
               << format_number(c.percent()) << ',' << c.under << ',' << c.admitted << ','
               << c.dropped << '\n';
        }
    }
}

void write_capex_analysis_csv(std::ostream& os, const CapexSweep& sweep) {
    os << "num_pairs,qos,baseline_pct,bestfit_pct,connectivity_gain,matching_pairs,"
          "capex_savings_pct\n";
    for (const auto& c : sweep.comparisons) {
        os << c.num_pairs << ',' << to_string(c.qos) << ',' << format_number(c.baseline_pct) << ','
           << format_number(c.bestfit_pct) << ',' << format_number(c.connectivity_gain) << ','
           << (c.matching_pairs ? std::to_string(*c.matching_pairs) : std::string()) << ','
           << (c.capex_savings_pct ? format_number(*c.capex_savings_pct) : std::string()) << '\n';
    }
}

std::string output_file_name(const std::string& scenario, const std::string& scheme,
                             const std::string& seed, const std::string& report,
                             const std::string& ext) {
    return scenario + "." + scheme + "." + seed + "." + report + "." + ext;
}

}  // namespace upfmec
