#include "upfmec/model.hpp"

#include <cmath>
#include <numeric>
#include <sstream>

namespace upfmec {

namespace {

constexpr double kSumTolerance = 1e-9;
// Capacities derived from floating-point products such as 10 * 0.3 land a few
// ulps below the integer they represent.
constexpr double kSlotEpsilon = 1e-9;

std::string fmt(double v) {
    std::ostringstream os;
    os << v;
    return os.str();
}

void check_fractions(const std::vector<double>& xs, const std::string& what,
                     std::vector<std::string>& out) {
    for (std::size_t i = 0; i < xs.size(); ++i) {
        if (!(xs[i] >= 0.0 && xs[i] <= 1.0)) {
            out.push_back(what + " entry " + std::to_string(i + 1) + " is " + fmt(xs[i]) +
                          ", outside [0, 1]");
        }
    }
    double sum = std::accumulate(xs.begin(), xs.end(), 0.0);
    if (std::abs(sum - 1.0) > kSumTolerance) {
        out.push_back(what + " sums to " + fmt(sum) + ", expected 1");
    }
}

}  // namespace

std::string_view to_string(QosClass q) {
    switch (q) {
        case QosClass::Urllc: return "urllc";
        case QosClass::Embb: return "embb";
        case QosClass::Mmtc: return "mmtc";
        case QosClass::Regular: return "regular";
    }
    return "?";
}

std::optional<QosClass> parse_qos(std::string_view name) {
    for (auto q : kAllQos) {
        if (to_string(q) == name) return q;
    }
    return std::nullopt;
}

std::string_view to_string(Scheme s) {
    switch (s) {
        case Scheme::Baseline: return "baseline";
        case Scheme::BestfitUpfNoPe: return "bestfit-upf-no-pe";
        case Scheme::BestfitUpfPathExt: return "bestfit-upf-pe";
        case Scheme::BestfitUpfMec: return "bestfit-upf-mec";
    }
    return "?";
}

std::optional<Scheme> parse_scheme(std::string_view name) {
    for (auto s : kAllSchemes) {
        if (to_string(s) == name) return s;
    }
    return std::nullopt;
}

std::string scheme_names() {
    std::string out;
    for (auto s : kAllSchemes) {
        if (!out.empty()) out += ", ";
        out += to_string(s);
    }
    return out;
}

std::string_view to_string(ArrivalProcess p) {
    return p == ArrivalProcess::Poisson ? "poisson" : "deterministic";
}

std::optional<ArrivalProcess> parse_arrival_process(std::string_view name) {
    if (name == "poisson") return ArrivalProcess::Poisson;
    if (name == "deterministic") return ArrivalProcess::Deterministic;
    return std::nullopt;
}

std::string_view to_string(RequestStatus s) {
    switch (s) {
        case RequestStatus::Pending: return "pending";
        case RequestStatus::InUpfQueue: return "in-upf-queue";
        case RequestStatus::InTransit: return "in-transit";
        case RequestStatus::InMecQueue: return "in-mec-queue";
        case RequestStatus::Completed: return "completed";
        case RequestStatus::Dropped: return "dropped";
    }
    return "?";
}

std::string ValidationReport::to_string() const {
    std::string out;
    for (const auto& v : violations) {
        out += "  - " + v + "\n";
    }
    return out;
}

ScenarioError::ScenarioError(ValidationReport report)
    : std::runtime_error("invalid scenario:\n" + report.to_string()), report_(std::move(report)) {}

ValidationReport validate_scenario(const Scenario& s) {
    ValidationReport r;
    auto& v = r.violations;

    if (s.num_upfs == 0) v.push_back("at least one UPF is required");
    if (s.num_mecs == 0) v.push_back("at least one MEC is required");
    if (!(s.delta_ms > 0.0) || !std::isfinite(s.delta_ms)) {
        v.push_back("epoch length delta_ms must be positive, got " + fmt(s.delta_ms));
    }
    if (!(s.headroom_factor > 0.0)) {
        v.push_back("headroom_factor must be positive, got " + fmt(s.headroom_factor));
    }
    if (s.upfs.size() != s.num_upfs) {
        v.push_back("num_upfs is " + std::to_string(s.num_upfs) + " but " +
                    std::to_string(s.upfs.size()) + " UPF specs are given");
    }
    if (s.mecs.size() != s.num_mecs) {
        v.push_back("num_mecs is " + std::to_string(s.num_mecs) + " but " +
                    std::to_string(s.mecs.size()) + " MEC specs are given");
    }
    if (s.scheme != Scheme::BestfitUpfMec && s.num_upfs != s.num_mecs) {
        v.push_back(std::string("scheme ") + std::string(to_string(s.scheme)) +
                    " pairs each UPF with its co-located MEC and needs num_upfs == num_mecs");
    }

    const auto& t = s.traffic;
    if (!(t.mean_arrivals_per_epoch >= 0.0) || !std::isfinite(t.mean_arrivals_per_epoch)) {
        v.push_back("mean_arrivals_per_epoch must be >= 0, got " +
                    fmt(t.mean_arrivals_per_epoch));
    }
    if (t.skew.size() != s.num_upfs) {
        v.push_back("skew has " + std::to_string(t.skew.size()) + " entries for " +
                    std::to_string(s.num_upfs) + " UPFs");
    }
    check_fractions(t.skew, "skew", v);
    check_fractions({t.qos_mix.begin(), t.qos_mix.end()}, "qos_mix", v);

    for (std::size_t i = 0; i < s.upfs.size(); ++i) {
        const auto& u = s.upfs[i];
        const std::string who = "UPF " + std::to_string(i + 1);
        double alpha_sum = 0.0;
        for (auto q : kAllQos) {
            const double a = u.alpha[qos_index(q)];
            alpha_sum += a;
            if (!(a > 0.0 && a <= 1.0)) {
                v.push_back(who + ": alpha[" + std::string(to_string(q)) + "] is " + fmt(a) +
                            ", outside (0, 1]");
            }
            const double c = u.capacity[qos_index(q)];
            if (!(c >= 1.0 - kSlotEpsilon) || !std::isfinite(c)) {
                v.push_back(who + ": capacity[" + std::string(to_string(q)) + "] is " + fmt(c) +
                            ", below one request per epoch");
            }
        }
        if (alpha_sum > 1.0 + kSumTolerance) {
            v.push_back(who + ": alpha sums to " + fmt(alpha_sum) + ", exceeds 1");
        }
        if (u.etpb < 0.0) v.push_back(who + ": etpb is negative");
        if (!(u.bytes_per_ue > 0.0)) v.push_back(who + ": bytes_per_ue must be positive");
    }

    for (std::size_t j = 0; j < s.mecs.size(); ++j) {
        const auto& m = s.mecs[j];
        const std::string who = "MEC " + std::to_string(j + 1);
        if (!(m.capacity >= 1.0 - kSlotEpsilon) || !std::isfinite(m.capacity)) {
            v.push_back(who + ": capacity is " + fmt(m.capacity) + ", below one request per epoch");
        }
        if (m.etpb < 0.0) v.push_back(who + ": etpb is negative");
        if (!(m.bytes_per_ue > 0.0)) v.push_back(who + ": bytes_per_ue must be positive");
    }

    // Full mesh: exactly one link per (UPF, MEC) pair.
    std::vector<int> seen(s.num_upfs * s.num_mecs, 0);
    for (const auto& l : s.links) {
        if (l.upf >= s.num_upfs || l.mec >= s.num_mecs) {
            v.push_back("link (" + std::to_string(l.upf + 1) + ", " + std::to_string(l.mec + 1) +
                        ") references an unknown UPF or MEC");
            continue;
        }
        if (!(l.bandwidth_mbps > 0.0)) {
            v.push_back("link (" + std::to_string(l.upf + 1) + ", " + std::to_string(l.mec + 1) +
                        ") bandwidth must be positive");
        }
        ++seen[l.upf * s.num_mecs + l.mec];
    }
    for (std::size_t i = 0; i < s.num_upfs; ++i) {
        for (std::size_t j = 0; j < s.num_mecs; ++j) {
            const int n = seen[i * s.num_mecs + j];
            if (n != 1) {
                v.push_back("link (" + std::to_string(i + 1) + ", " + std::to_string(j + 1) +
                            (n == 0 ? ") is missing" : ") is defined more than once"));
            }
        }
    }

    for (const auto& [q, ms] : s.thresholds_ms) {
        if (!(ms > 0.0)) {
            v.push_back("threshold for " + std::string(to_string(q)) + " must be positive");
        }
    }
    return r;
}

std::size_t queue_capacity(double headroom_factor, double arrival_rate, double service_rate) {
    const auto floor_cap = service_slots(service_rate);
    if (!(service_rate > 0.0)) return floor_cap;
    const double bound = std::ceil(headroom_factor * arrival_rate / service_rate - kSlotEpsilon);
    return std::max(floor_cap, static_cast<std::size_t>(std::max(0.0, bound)));
}

std::size_t service_slots(double capacity) {
    if (!(capacity > 0.0)) return 0;
    return static_cast<std::size_t>(std::floor(capacity + kSlotEpsilon));
}

std::size_t UpfState::total_queued() const {
    std::size_t n = 0;
    for (const auto& q : queue) n += q.size();
    return n;
}

void UeRequest::advance_to(RequestStatus next) {
    if (static_cast<int>(next) <= static_cast<int>(status)) {
        throw InvariantViolation("request " + std::to_string(id) + " cannot move from " +
                                 std::string(to_string(status)) + " to " +
                                 std::string(to_string(next)));
    }
    status = next;
}

}  // namespace upfmec
