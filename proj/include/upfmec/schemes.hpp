#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "upfmec/delay.hpp"
#include "upfmec/model.hpp"

namespace upfmec {

// Load of one compute server (a UPF QoS bucket or a MEC) as seen by a scheme.
struct ServerLoad {
    double queue_len = 0.0;
    double headroom = 0.0;
    double capacity = 1.0;
    bool full = false;  // queue at its admission bound; not eligible
};

struct LinkLoad {
    double bandwidth = 1.0;  // bits per ms
    double n_share = 0.0;
};

// Read-only snapshot handed to the assignment schemes. UPF loads are for the
// QoS bucket of the request being placed.
struct NetworkView {
    double delta_ms = 1.0;
    std::vector<ServerLoad> upfs;
    std::vector<ServerLoad> mecs;
    std::vector<double> mec_bytes;  // bytes per UE processed at each MEC
    std::vector<LinkLoad> links;    // row-major, upfs.size() x mecs.size()

    const LinkLoad& link(std::size_t upf, std::size_t mec) const {
        return links[upf * mecs.size() + mec];
    }
    // Projected transfer delay of the (upf, mec) link at its current share.
    double link_delay(std::size_t upf, std::size_t mec) const;
};

struct BestFit {
    std::size_t index = 0;
    double projected_ms = 0.0;
};

// argmin of the projected compute delay over eligible servers, lowest index on
// ties. If every server is full the unrestricted argmin is returned.
// Throws std::invalid_argument on an empty snapshot.
BestFit find_bestfit_upf(std::span<const ServerLoad> upfs, double delta_ms);
BestFit find_bestfit_mec(std::span<const ServerLoad> mecs, double delta_ms);

struct AssignmentDecision {
    std::size_t upf = 0;
    std::optional<std::size_t> mec;  // absent iff the request is Regular
    DelayBreakdown projected;
    bool dropped = false;  // chosen UPF bucket queue is full
};

// SMF default: the geo-local UPF and its co-located MEC.
AssignmentDecision assign_baseline(const UeRequest& req, const NetworkView& view);
// Bestfit UPF, SMF-default (origin) MEC.
AssignmentDecision assign_bestfit_no_pe(const UeRequest& req, const NetworkView& view);
// Bestfit UPF, path extended to that UPF's co-located MEC. Needs U == M.
AssignmentDecision assign_bestfit_pe(const UeRequest& req, const NetworkView& view);
// Bestfit UPF and bestfit MEC chosen independently.
AssignmentDecision assign_bestfit_upf_mec(const UeRequest& req, const NetworkView& view);

AssignmentDecision assign(Scheme scheme, const UeRequest& req, const NetworkView& view);

}  // namespace upfmec
