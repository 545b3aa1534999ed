#pragma once

#include <filesystem>
#include <string>

#include "upfmec/model.hpp"

namespace upfmec::test {

inline std::filesystem::path scenario_path(const std::string& file) {
    return std::filesystem::path(UPFMEC_SCENARIO_DIR) / file;
}

// Symmetric U x M topology: every UPF bucket and MEC has the same capacity,
// every link the same bandwidth, uniform skew and QoS mix.
inline Scenario uniform_scenario(std::size_t u, std::size_t m, double upf_cap, double mec_cap,
                                 double bw_mbps = 1000.0, double lambda = 0.0,
                                 std::uint64_t horizon = 10, Scheme scheme = Scheme::Baseline) {
    Scenario s;
    s.name = "uniform";
    s.num_upfs = u;
    s.num_mecs = m;
    s.horizon_epochs = horizon;
    s.scheme = scheme;
    s.traffic.mean_arrivals_per_epoch = lambda;
    s.traffic.skew.assign(u, 1.0 / static_cast<double>(u));
    for (std::size_t i = 0; i < u; ++i) {
        UpfSpec spec;
        spec.alpha = {0.25, 0.25, 0.25, 0.25};
        spec.capacity = {upf_cap, upf_cap, upf_cap, upf_cap};
        s.upfs.push_back(spec);
    }
    for (std::size_t j = 0; j < m; ++j) {
        MecSpec spec;
        spec.capacity = mec_cap;
        s.mecs.push_back(spec);
    }
    for (std::size_t i = 0; i < u; ++i) {
        for (std::size_t j = 0; j < m; ++j) s.links.push_back({i, j, bw_mbps});
    }
    return s;
}

}  // namespace upfmec::test
