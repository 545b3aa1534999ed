#pragma once

// Delay and capacity model of the two-tier UPF/MEC data plane.
//
// Units: durations in ms, capacities in requests per epoch, bandwidth in bits
// per ms, sizes in bytes. The processing-rate terms are given per bit, so every
// byte count is multiplied by 8.
//
// Projected compute delay (UPF and MEC alike), with headroom = C - S:
//
//   q <  headroom  ->  delta
//   q >= headroom  ->  ((q + 1 - headroom) / C) * delta + delta
//
// The clamped branch is used everywhere; the unclamped expression would drop
// below one epoch when headroom exceeds q + 1.

namespace upfmec {

struct DelayBreakdown {
    double d_upf = 0.0;
    double d_net = 0.0;
    double d_mec = 0.0;
    double d_e2e = 0.0;

    static DelayBreakdown compose(double upf, double net, double mec) {
        return {upf, net, mec, upf + net + mec};
    }

    bool operator==(const DelayBreakdown&) const = default;
};

// (etpb * bytes * 8 * alpha) / delta. Throws std::domain_error unless every
// input is positive and alpha <= 1.
double upf_capacity(double etpb_ms_per_bit, double bytes, double alpha, double delta_ms);

// (etpb * bytes * 8) / delta.
double mec_capacity(double etpb_ms_per_bit, double bytes, double delta_ms);

// Free service slots c - s. Throws InvariantViolation when s is outside [0, c].
double upf_headroom(double capacity, double in_service);
double mec_headroom(double capacity, double in_service);

double upf_projected_delay(double queue_len, double headroom, double capacity, double delta_ms);
double mec_projected_delay(double queue_len, double headroom, double capacity, double delta_ms);

// Flow-level link delay: (n_share * bytes * 8) / (bw * delta). Zero on an idle link.
double net_delay(double n_share, double bytes_mec, double bw_bits_per_ms, double delta_ms);

// Worst-case compute delay, in epochs, of a batch of x requests added to a queue:
// max(0, (q + x - headroom) / c).
double worst_case_batch_delay(double queue_len, double batch, double headroom, double capacity);

}  // namespace upfmec
