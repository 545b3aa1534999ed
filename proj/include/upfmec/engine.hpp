#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <random>
#include <span>
#include <vector>

#include "upfmec/model.hpp"
#include "upfmec/schemes.hpp"

namespace upfmec {

using Rng = std::mt19937_64;

// Draws one epoch of arrivals: the count is Poisson(lambda) or the deterministic
// share floor((e+1)*lambda) - floor(e*lambda); each request gets an origin UPF
// from the skew vector and a QoS class from the mix. Ids start at first_id.
std::vector<UeRequest> generate_arrivals(const TrafficSpec& traffic, Rng& rng,
                                         std::uint64_t epoch, RequestId first_id);

struct EpochReport {
    std::uint64_t epoch = 0;
    std::size_t arrivals = 0;
    std::size_t admitted = 0;
    std::size_t dropped_at_admission = 0;
    std::size_t dropped_at_mec = 0;
    std::size_t upf_served = 0;
    std::size_t mec_served = 0;
    std::size_t completed = 0;
    std::size_t in_transit = 0;
};

struct RunResult {
    std::string scenario_name;
    Scheme scheme = Scheme::Baseline;
    std::uint64_t seed = 0;
    double delta_ms = 1.0;
    std::size_t num_upfs = 0;
    std::size_t num_mecs = 0;

    std::vector<UeRequest> requests;  // indexed by request id
    std::vector<EpochReport> epochs;
    // Queue lengths at the end of each epoch: [epoch][upf][qos] and [epoch][mec].
    std::vector<std::vector<PerQos<std::uint32_t>>> upf_queue_trace;
    std::vector<std::vector<std::uint32_t>> mec_queue_trace;

    std::size_t generated = 0;
    std::size_t completed = 0;
    std::size_t dropped = 0;
    std::size_t residual = 0;
    bool truncated = false;  // drain cap hit with requests still in flight
};

// One epoch-synchronous simulation. Owns all state; single threaded.
//
// Each epoch runs, in order: arrivals, sequential admission through the
// scheme, UPF service (up to capacity per QoS bucket, FCFS), link transit
// (ceil(d_net / delta) epochs), MEC enqueue, MEC service, bookkeeping.
//
// The MEC load shown to schemes counts queued requests plus requests already
// committed to the MEC but still upstream, so admissions later in the same
// epoch see earlier ones.
class SimulationRun {
public:
    explicit SimulationRun(Scenario scenario);  // throws ScenarioError if invalid

    EpochReport step_epoch();
    // Steps with the given arrivals instead of drawing from the traffic model.
    // Ids and arrival epochs are overwritten.
    EpochReport step_epoch(std::vector<UeRequest> arrivals);

    bool past_horizon() const { return clock_.epoch_index >= scenario_.horizon_epochs; }
    std::size_t in_flight() const { return in_flight_; }

    NetworkView view_for(QosClass qos) const;

    const Scenario& scenario() const { return scenario_; }
    const EpochClock& clock() const { return clock_; }
    const std::vector<UpfState>& upfs() const { return upfs_; }
    const std::vector<MecState>& mecs() const { return mecs_; }
    const Link& link(std::size_t upf, std::size_t mec) const {
        return links_[upf * mecs_.size() + mec];
    }
    const std::vector<UeRequest>& requests() const { return requests_; }
    const std::vector<EpochReport>& epochs() const { return epochs_; }

    RunResult into_result(bool truncated) &&;

private:
    void admit(UeRequest req, EpochReport& report);
    void serve_upfs(EpochReport& report);
    void deliver_transits(EpochReport& report);
    void serve_mecs(EpochReport& report);
    void recount_links();
    void check_invariants() const;
    void record_trace();

    Scenario scenario_;
    EpochClock clock_;
    Rng rng_;
    std::vector<UpfState> upfs_;
    std::vector<MecState> mecs_;
    std::vector<Link> links_;
    std::vector<UeRequest> requests_;
    std::map<std::uint64_t, std::vector<RequestId>> transit_;  // arrival epoch -> requests
    std::vector<EpochReport> epochs_;
    std::vector<std::vector<PerQos<std::uint32_t>>> upf_trace_;
    std::vector<std::vector<std::uint32_t>> mec_trace_;
    std::size_t in_flight_ = 0;
};

// Runs horizon epochs with arrivals, then drains until nothing is in flight or
// the drain cap is reached (result flagged truncated).
RunResult run_to_completion(const Scenario& scenario);

// Parallelism cap from UPFMEC_THREADS, else the hardware concurrency.
std::size_t max_parallel_runs();

// Runs every scenario independently; results keep the input order.
std::vector<RunResult> run_batch(std::span<const Scenario> scenarios,
                                 std::size_t max_threads = max_parallel_runs());

}  // namespace upfmec
