#include "upfmec/engine.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <exception>
#include <string>
#include <thread>

namespace upfmec {

std::vector<UeRequest> generate_arrivals(const TrafficSpec& traffic, Rng& rng,
                                         std::uint64_t epoch, RequestId first_id) {
    const double lambda = traffic.mean_arrivals_per_epoch;
    std::uint64_t n = 0;
    if (lambda > 0.0) {
        if (traffic.process == ArrivalProcess::Poisson) {
            n = std::poisson_distribution<std::uint64_t>(lambda)(rng);
        } else {
            const auto e = static_cast<double>(epoch);
            n = static_cast<std::uint64_t>(std::floor((e + 1.0) * lambda + 1e-9) -
                                           std::floor(e * lambda + 1e-9));
        }
    }
    std::vector<UeRequest> out;
    if (n == 0) return out;

    std::discrete_distribution<std::size_t> origin(traffic.skew.begin(), traffic.skew.end());
    std::discrete_distribution<std::size_t> qos(traffic.qos_mix.begin(), traffic.qos_mix.end());
    out.reserve(n);
    for (std::uint64_t k = 0; k < n; ++k) {
        UeRequest r;
        r.id = first_id + k;
        r.arrival_epoch = epoch;
        r.origin_upf = origin(rng);
        r.qos = kAllQos[qos(rng)];
        out.push_back(r);
    }
    return out;
}

SimulationRun::SimulationRun(Scenario scenario) : scenario_(std::move(scenario)) {
    auto report = validate_scenario(scenario_);
    if (!report.ok()) throw ScenarioError(std::move(report));

    clock_.delta_ms = scenario_.delta_ms;
    rng_.seed(scenario_.seed);

    const auto& t = scenario_.traffic;
    const double lambda = t.mean_arrivals_per_epoch;
    const double mec_fraction = 1.0 - t.qos_mix[qos_index(QosClass::Regular)];

    upfs_.resize(scenario_.num_upfs);
    for (std::size_t i = 0; i < upfs_.size(); ++i) {
        const auto& spec = scenario_.upfs[i];
        auto& u = upfs_[i];
        u.id = i;
        u.etpb = spec.etpb;
        u.bytes_per_ue = spec.bytes_per_ue;
        u.alpha = spec.alpha;
        u.capacity = spec.capacity;
        for (auto q : kAllQos) {
            const auto k = qos_index(q);
            u.queue_cap[k] = queue_capacity(scenario_.headroom_factor,
                                            lambda * t.skew[i] * t.qos_mix[k], spec.capacity[k]);
        }
    }

    const bool colocated = scenario_.num_upfs == scenario_.num_mecs;
    mecs_.resize(scenario_.num_mecs);
    for (std::size_t j = 0; j < mecs_.size(); ++j) {
        const auto& spec = scenario_.mecs[j];
        auto& m = mecs_[j];
        m.id = j;
        m.etpb = spec.etpb;
        m.bytes_per_ue = spec.bytes_per_ue;
        m.capacity = spec.capacity;
        const double share = colocated ? t.skew[j] : 1.0 / static_cast<double>(mecs_.size());
        m.queue_cap =
            queue_capacity(scenario_.headroom_factor, lambda * share * mec_fraction, spec.capacity);
    }

    links_.resize(scenario_.num_upfs * scenario_.num_mecs);
    for (const auto& l : scenario_.links) {
        auto& link = links_[l.upf * scenario_.num_mecs + l.mec];
        link.upf_id = l.upf;
        link.mec_id = l.mec;
        link.bandwidth = mbps_to_bits_per_ms(l.bandwidth_mbps);
    }
}

NetworkView SimulationRun::view_for(QosClass qos) const {
    const auto k = qos_index(qos);
    NetworkView v;
    v.delta_ms = clock_.delta_ms;
    v.upfs.reserve(upfs_.size());
    for (const auto& u : upfs_) {
        const auto qlen = u.queue[k].size();
        v.upfs.push_back({static_cast<double>(qlen),
                          upf_headroom(u.capacity[k], static_cast<double>(u.in_service[k])),
                          u.capacity[k], qlen >= u.queue_cap[k]});
    }
    v.mecs.reserve(mecs_.size());
    v.mec_bytes.reserve(mecs_.size());
    for (const auto& m : mecs_) {
        v.mecs.push_back({static_cast<double>(m.queue.size() + m.committed),
                          mec_headroom(m.capacity, static_cast<double>(m.in_service)), m.capacity,
                          false});
        v.mec_bytes.push_back(m.bytes_per_ue);
    }
    v.links.reserve(links_.size());
    for (const auto& l : links_) {
        v.links.push_back({l.bandwidth, static_cast<double>(l.n_share)});
    }
    return v;
}

EpochReport SimulationRun::step_epoch() {
    std::vector<UeRequest> arrivals;
    if (!past_horizon()) {
        arrivals = generate_arrivals(scenario_.traffic, rng_, clock_.epoch_index, requests_.size());
    }
    return step_epoch(std::move(arrivals));
}

EpochReport SimulationRun::step_epoch(std::vector<UeRequest> arrivals) {
    EpochReport report;
    report.epoch = clock_.epoch_index;

    for (auto& u : upfs_) u.in_service.fill(0);
    for (auto& m : mecs_) m.in_service = 0;

    report.arrivals = arrivals.size();
    for (auto& req : arrivals) {
        req.id = requests_.size();
        req.arrival_epoch = clock_.epoch_index;
        req.status = RequestStatus::Pending;
        admit(std::move(req), report);
    }
    if (report.arrivals != report.admitted + report.dropped_at_admission) {
        throw InvariantViolation("epoch " + std::to_string(report.epoch) +
                                 ": arrivals != admitted + dropped");
    }

    serve_upfs(report);
    deliver_transits(report);
    serve_mecs(report);
    recount_links();
    check_invariants();
    record_trace();

    for (const auto& [_, ids] : transit_) report.in_transit += ids.size();
    epochs_.push_back(report);
    clock_.advance();
    return report;
}

void SimulationRun::admit(UeRequest req, EpochReport& report) {
    const auto view = view_for(req.qos);
    const auto decision = assign(scenario_.scheme, req, view);
    req.projected = decision.projected;
    req.assigned_upf = decision.upf;
    req.assigned_mec = decision.mec;
    const auto id = req.id;
    requests_.push_back(std::move(req));
    auto& r = requests_.back();

    if (decision.dropped) {
        r.advance_to(RequestStatus::Dropped);
        ++report.dropped_at_admission;
        return;
    }
    upfs_[decision.upf].queue[qos_index(r.qos)].push_back(id);
    if (decision.mec) ++mecs_[*decision.mec].committed;
    r.advance_to(RequestStatus::InUpfQueue);
    ++report.admitted;
    ++in_flight_;
}

void SimulationRun::serve_upfs(EpochReport& report) {
    const auto e = clock_.epoch_index;
    const double delta = clock_.delta_ms;
    for (auto& u : upfs_) {
        for (auto q : kAllQos) {
            const auto k = qos_index(q);
            auto& queue = u.queue[k];
            const auto slots = service_slots(u.capacity[k]);
            while (!queue.empty() && u.in_service[k] < slots) {
                auto& r = requests_[queue.front()];
                queue.pop_front();
                ++u.in_service[k];
                ++report.upf_served;
                r.d_upf = static_cast<double>(e - r.arrival_epoch + 1) * delta;
                r.upf_departure_epoch = e;
                if (!r.assigned_mec) {
                    r.completion_epoch = e;
                    r.advance_to(RequestStatus::Completed);
                    ++report.completed;
                    --in_flight_;
                    continue;
                }
                const auto mec = *r.assigned_mec;
                auto& link = links_[u.id * mecs_.size() + mec];
                ++link.n_share;
                r.d_net = net_delay(static_cast<double>(link.n_share), mecs_[mec].bytes_per_ue,
                                    link.bandwidth, delta);
                const auto hops =
                    std::max<std::uint64_t>(1, static_cast<std::uint64_t>(std::ceil(r.d_net / delta)));
                transit_[e + hops].push_back(r.id);
                r.advance_to(RequestStatus::InTransit);
            }
        }
    }
}

void SimulationRun::deliver_transits(EpochReport& report) {
    const auto e = clock_.epoch_index;
    while (!transit_.empty() && transit_.begin()->first <= e) {
        const auto ids = std::move(transit_.begin()->second);
        transit_.erase(transit_.begin());
        for (auto id : ids) {
            auto& r = requests_[id];
            auto& m = mecs_[*r.assigned_mec];
            --m.committed;
            if (m.queue.size() >= m.queue_cap) {
                r.advance_to(RequestStatus::Dropped);
                ++report.dropped_at_mec;
                --in_flight_;
                continue;
            }
            m.queue.push_back(id);
            r.mec_arrival_epoch = e;
            r.advance_to(RequestStatus::InMecQueue);
        }
    }
}

void SimulationRun::serve_mecs(EpochReport& report) {
    const auto e = clock_.epoch_index;
    for (auto& m : mecs_) {
        const auto slots = service_slots(m.capacity);
        while (!m.queue.empty() && m.in_service < slots) {
            auto& r = requests_[m.queue.front()];
            m.queue.pop_front();
            ++m.in_service;
            ++report.mec_served;
            r.d_mec = static_cast<double>(e - *r.mec_arrival_epoch + 1) * clock_.delta_ms;
            r.completion_epoch = e;
            r.advance_to(RequestStatus::Completed);
            ++report.completed;
            --in_flight_;
        }
    }
}

void SimulationRun::recount_links() {
    for (auto& l : links_) l.n_share = 0;
    for (const auto& [_, ids] : transit_) {
        for (auto id : ids) {
            const auto& r = requests_[id];
            ++links_[*r.assigned_upf * mecs_.size() + *r.assigned_mec].n_share;
        }
    }
}

void SimulationRun::check_invariants() const {
    for (const auto& u : upfs_) {
        for (auto q : kAllQos) {
            const auto k = qos_index(q);
            if (static_cast<double>(u.in_service[k]) > u.capacity[k] + 1e-9) {
                throw InvariantViolation("UPF " + std::to_string(u.id + 1) + " " +
                                         std::string(to_string(q)) + ": in service exceeds capacity");
            }
            if (u.queue[k].size() > u.queue_cap[k]) {
                throw InvariantViolation("UPF " + std::to_string(u.id + 1) + " " +
                                         std::string(to_string(q)) + ": queue exceeds its bound");
            }
        }
    }
    for (const auto& m : mecs_) {
        if (static_cast<double>(m.in_service) > m.capacity + 1e-9) {
            throw InvariantViolation("MEC " + std::to_string(m.id + 1) +
                                     ": in service exceeds capacity");
        }
        if (m.queue.size() > m.queue_cap) {
            throw InvariantViolation("MEC " + std::to_string(m.id + 1) + ": queue exceeds its bound");
        }
    }
}

void SimulationRun::record_trace() {
    auto& upf_row = upf_trace_.emplace_back(upfs_.size());
    for (std::size_t i = 0; i < upfs_.size(); ++i) {
        for (std::size_t k = 0; k < kNumQos; ++k) {
            upf_row[i][k] = static_cast<std::uint32_t>(upfs_[i].queue[k].size());
        }
    }
    auto& mec_row = mec_trace_.emplace_back(mecs_.size());
    for (std::size_t j = 0; j < mecs_.size(); ++j) {
        mec_row[j] = static_cast<std::uint32_t>(mecs_[j].queue.size());
    }
}

RunResult SimulationRun::into_result(bool truncated) && {
    RunResult r;
    r.scenario_name = scenario_.name;
    r.scheme = scenario_.scheme;
    r.seed = scenario_.seed;
    r.delta_ms = scenario_.delta_ms;
    r.num_upfs = scenario_.num_upfs;
    r.num_mecs = scenario_.num_mecs;
    r.requests = std::move(requests_);
    r.epochs = std::move(epochs_);
    r.upf_queue_trace = std::move(upf_trace_);
    r.mec_queue_trace = std::move(mec_trace_);
    r.generated = r.requests.size();
    for (const auto& q : r.requests) {
        if (q.status == RequestStatus::Completed) ++r.completed;
        if (q.status == RequestStatus::Dropped) ++r.dropped;
    }
    r.residual = r.generated - r.completed - r.dropped;
    r.truncated = truncated;
    return r;
}

RunResult run_to_completion(const Scenario& scenario) {
    SimulationRun run(scenario);
    while (!run.past_horizon()) run.step_epoch();
    const auto cap = scenario.effective_drain_cap();
    std::uint64_t drained = 0;
    while (run.in_flight() > 0 && drained < cap) {
        run.step_epoch();
        ++drained;
    }
    const bool truncated = run.in_flight() > 0;
    return std::move(run).into_result(truncated);
}

std::size_t max_parallel_runs() {
    if (const char* env = std::getenv("UPFMEC_THREADS")) {
        try {
            const auto n = std::stoul(env);
            if (n > 0) return n;
        } catch (const std::exception&) {
        }
    }
    return std::max(1u, std::thread::hardware_concurrency());
}

std::vector<RunResult> run_batch(std::span<const Scenario> scenarios, std::size_t max_threads) {
    std::vector<RunResult> results(scenarios.size());
    std::vector<std::exception_ptr> errors(scenarios.size());
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (auto k = next++; k < scenarios.size(); k = next++) {
            try {
                results[k] = run_to_completion(scenarios[k]);
            } catch (...) {
                errors[k] = std::current_exception();
            }
        }
    };
    const auto n_threads = std::min(std::max<std::size_t>(1, max_threads), scenarios.size());
    if (n_threads <= 1) {
        worker();
    } else {
        std::vector<std::jthread> pool;
        for (std::size_t t = 0; t < n_threads; ++t) pool.emplace_back(worker);
    }
    for (auto& e : errors) {
        if (e) std::rethrow_exception(e);
    }
    return results;
}

}  // namespace upfmec
