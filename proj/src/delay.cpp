#include "upfmec/delay.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "upfmec/model.hpp"

namespace upfmec {

namespace {

void require_positive(double v, const char* what) {
    if (!(v > 0.0) || !std::isfinite(v)) {
        throw std::domain_error(std::string(what) + " must be positive and finite, got " +
                                std::to_string(v));
    }
}

double headroom(double capacity, double in_service, const char* stage) {
    if (in_service < 0.0 || in_service > capacity) {
        throw InvariantViolation(std::string(stage) + ": in-service count " +
                                 std::to_string(in_service) + " outside [0, " +
                                 std::to_string(capacity) + "]");
    }
    return capacity - in_service;
}

double projected_delay(double queue_len, double headroom, double capacity, double delta_ms) {
    require_positive(capacity, "capacity");
    require_positive(delta_ms, "delta");
    if (queue_len < 0.0 || headroom < 0.0) {
        throw std::domain_error("queue length and headroom must be non-negative");
    }
    if (queue_len < headroom) {
        return delta_ms;
    }
    return ((queue_len + 1.0 - headroom) / capacity) * delta_ms + delta_ms;
}

}  // namespace

double upf_capacity(double etpb_ms_per_bit, double bytes, double alpha, double delta_ms) {
    require_positive(etpb_ms_per_bit, "etpb");
    require_positive(bytes, "bytes");
    require_positive(alpha, "alpha");
    require_positive(delta_ms, "delta");
    if (alpha > 1.0) {
        throw std::domain_error("alpha must not exceed 1, got " + std::to_string(alpha));
    }
    return (etpb_ms_per_bit * bytes * 8.0 * alpha) / delta_ms;
}

double mec_capacity(double etpb_ms_per_bit, double bytes, double delta_ms) {
    require_positive(etpb_ms_per_bit, "etpb");
    require_positive(bytes, "bytes");
    require_positive(delta_ms, "delta");
    return (etpb_ms_per_bit * bytes * 8.0) / delta_ms;
}

double upf_headroom(double capacity, double in_service) {
    return headroom(capacity, in_service, "UPF");
}

double mec_headroom(double capacity, double in_service) {
    return headroom(capacity, in_service, "MEC");
}

double upf_projected_delay(double queue_len, double headroom, double capacity, double delta_ms) {
    return projected_delay(queue_len, headroom, capacity, delta_ms);
}

double mec_projected_delay(double queue_len, double headroom, double capacity, double delta_ms) {
    return projected_delay(queue_len, headroom, capacity, delta_ms);
}

double net_delay(double n_share, double bytes_mec, double bw_bits_per_ms, double delta_ms) {
    require_positive(bw_bits_per_ms, "bandwidth");
    require_positive(delta_ms, "delta");
    if (n_share < 0.0) {
        throw std::domain_error("n_share must be non-negative");
    }
    return (n_share * bytes_mec * 8.0) / (bw_bits_per_ms * delta_ms);
}

double worst_case_batch_delay(double queue_len, double batch, double headroom, double capacity) {
    require_positive(capacity, "capacity");
    if (batch < 0.0) {
        throw std::domain_error("batch size must be non-negative");
    }
    return std::max(0.0, (queue_len + batch - headroom) / capacity);
}

}  // namespace upfmec
