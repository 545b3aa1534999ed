#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <deque>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "upfmec/delay.hpp"

namespace upfmec {

// Service type of a UE request. Drives UPF bucket selection and latency thresholds.
enum class QosClass : std::uint8_t { Urllc = 0, Embb = 1, Mmtc = 2, Regular = 3 };

inline constexpr std::size_t kNumQos = 4;
inline constexpr std::array<QosClass, kNumQos> kAllQos{QosClass::Urllc, QosClass::Embb,
                                                       QosClass::Mmtc, QosClass::Regular};

template <typename T>
using PerQos = std::array<T, kNumQos>;

constexpr std::size_t qos_index(QosClass q) { return static_cast<std::size_t>(q); }

// Regular traffic egresses to the data network after the UPF and never reaches a MEC.
constexpr bool uses_mec(QosClass q) { return q != QosClass::Regular; }

std::string_view to_string(QosClass q);
std::optional<QosClass> parse_qos(std::string_view name);

// Raised when a runtime structural invariant is broken (e.g. more requests in
// service than the bucket capacity). Aborts a simulation run.
class InvariantViolation : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

struct EpochClock {
    std::uint64_t epoch_index = 0;
    double delta_ms = 1.0;

    void advance() { ++epoch_index; }
    double now_ms() const { return static_cast<double>(epoch_index) * delta_ms; }
};

enum class Scheme : std::uint8_t { Baseline, BestfitUpfNoPe, BestfitUpfPathExt, BestfitUpfMec };

inline constexpr std::array<Scheme, 4> kAllSchemes{Scheme::Baseline, Scheme::BestfitUpfNoPe,
                                                   Scheme::BestfitUpfPathExt,
                                                   Scheme::BestfitUpfMec};

std::string_view to_string(Scheme s);
std::optional<Scheme> parse_scheme(std::string_view name);
// Comma separated list of every accepted scheme name.
std::string scheme_names();

enum class ArrivalProcess : std::uint8_t { Poisson, Deterministic };

std::string_view to_string(ArrivalProcess p);
std::optional<ArrivalProcess> parse_arrival_process(std::string_view name);

struct TrafficSpec {
    double mean_arrivals_per_epoch = 0.0;
    std::vector<double> skew;  // one fraction per UPF, sums to 1
    PerQos<double> qos_mix{0.25, 0.25, 0.25, 0.25};
    ArrivalProcess process = ArrivalProcess::Poisson;

    bool operator==(const TrafficSpec&) const = default;
};

// Static description of one UPF. Capacities are in requests per epoch; when a
// scenario file omits them they are derived from etpb/bytes/alpha.
struct UpfSpec {
    double etpb = 0.0;          // ms per bit
    double bytes_per_ue = 256;  // bytes
    PerQos<double> alpha{};     // fraction of compute reserved per QoS
    PerQos<double> capacity{};  // requests per epoch per QoS bucket

    bool operator==(const UpfSpec&) const = default;
};

struct MecSpec {
    double etpb = 0.0;
    double bytes_per_ue = 1500;
    double capacity = 0.0;  // requests per epoch

    bool operator==(const MecSpec&) const = default;
};

struct LinkSpec {
    std::size_t upf = 0;  // 0-based index
    std::size_t mec = 0;  // 0-based index
    double bandwidth_mbps = 0.0;

    bool operator==(const LinkSpec&) const = default;
};

inline constexpr double kDefaultHeadroomFactor = 10.0;

// Declarative experiment description. Entity indices are 0-based in memory and
// 1-based in every file and report.
struct Scenario {
    std::string name = "scenario";
    std::size_t num_upfs = 0;
    std::size_t num_mecs = 0;
    double delta_ms = 1.0;
    std::uint64_t horizon_epochs = 0;
    std::uint64_t drain_cap_epochs = 0;  // 0 means 10 x horizon
    std::uint64_t seed = 1;
    Scheme scheme = Scheme::Baseline;
    TrafficSpec traffic;
    std::vector<UpfSpec> upfs;
    std::vector<MecSpec> mecs;
    std::vector<LinkSpec> links;
    std::map<QosClass, double> thresholds_ms{{QosClass::Urllc, 5.0}, {QosClass::Embb, 10.0}};
    double headroom_factor = kDefaultHeadroomFactor;

    std::uint64_t effective_drain_cap() const {
        return drain_cap_epochs == 0 ? 10 * horizon_epochs : drain_cap_epochs;
    }

    bool operator==(const Scenario&) const = default;
};

struct ValidationReport {
    std::vector<std::string> violations;

    bool ok() const { return violations.empty(); }
    std::string to_string() const;
};

ValidationReport validate_scenario(const Scenario& s);

class ScenarioError : public std::runtime_error {
public:
    explicit ScenarioError(ValidationReport report);
    const ValidationReport& report() const { return report_; }

private:
    ValidationReport report_;
};

// Bandwidth conversion: 1 Mbps = 1000 bits per ms.
constexpr double mbps_to_bits_per_ms(double mbps) { return mbps * 1000.0; }

// Admission bound of a queue: ceil(headroom_factor * arrival_rate / service_rate),
// never below one epoch of service.
std::size_t queue_capacity(double headroom_factor, double arrival_rate, double service_rate);

// Requests that can begin service in one epoch at the given capacity.
std::size_t service_slots(double capacity);

// ---------------------------------------------------------------------------
// Runtime state

using RequestId = std::uint64_t;

enum class RequestStatus : std::uint8_t {
    Pending,
    InUpfQueue,
    InTransit,
    InMecQueue,
    Completed,
    Dropped
};

std::string_view to_string(RequestStatus s);

struct UpfState {
    std::size_t id = 0;
    double etpb = 0.0;
    double bytes_per_ue = 0.0;
    PerQos<double> alpha{};
    PerQos<double> capacity{};
    PerQos<std::deque<RequestId>> queue;
    PerQos<std::size_t> in_service{};
    PerQos<std::size_t> queue_cap{};

    std::size_t total_queued() const;
};

struct MecState {
    std::size_t id = 0;
    double etpb = 0.0;
    double bytes_per_ue = 0.0;
    double capacity = 0.0;
    std::deque<RequestId> queue;
    std::size_t in_service = 0;
    std::size_t queue_cap = 0;
    // Requests already assigned to this MEC that have not reached its queue yet.
    std::size_t committed = 0;
};

struct Link {
    std::size_t upf_id = 0;
    std::size_t mec_id = 0;
    double bandwidth = 0.0;  // bits per ms
    std::size_t n_share = 0;
};

struct UeRequest {
    RequestId id = 0;
    QosClass qos = QosClass::Regular;
    std::size_t origin_upf = 0;
    std::uint64_t arrival_epoch = 0;
    std::optional<std::size_t> assigned_upf;
    std::optional<std::size_t> assigned_mec;
    double d_upf = 0.0;
    double d_net = 0.0;
    double d_mec = 0.0;
    RequestStatus status = RequestStatus::Pending;

    DelayBreakdown projected;
    std::optional<std::uint64_t> upf_departure_epoch;
    std::optional<std::uint64_t> mec_arrival_epoch;
    std::optional<std::uint64_t> completion_epoch;

    double d_e2e() const { return d_upf + d_net + d_mec; }
    // Moves the request forward; throws InvariantViolation on regression.
    void advance_to(RequestStatus next);
};

}  // namespace upfmec
