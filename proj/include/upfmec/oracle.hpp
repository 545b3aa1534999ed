#pragma once

#include <cstddef>
#include <cstdint>
#include <random>
#include <span>
#include <stdexcept>
#include <vector>

#include "upfmec/model.hpp"
#include "upfmec/schemes.hpp"

namespace upfmec::oracle {

inline constexpr std::size_t kMaxBatch = 12;
inline constexpr std::size_t kMaxUpfs = 5;
inline constexpr std::size_t kMaxPairs = 100;

class BoundExceeded : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

struct BatchPlacement {
    std::vector<std::size_t> counts;  // x_1..x_U
    double worst_case_epochs = 0.0;
};

// Objective of a placement: the largest worst-case batch delay over the UPFs
// that receive at least one request (0 for an empty batch).
double placement_cost(std::span<const ServerLoad> upfs, std::span<const std::size_t> counts);

// Exhaustive min-max placement of n same-QoS requests over the UPFs. Walks every
// composition of n into U parts; ties go to the composition that is
// lexicographically greatest, i.e. the one loading lower-indexed UPFs first.
// Refuses n > 12 or U > 5 with BoundExceeded.
BatchPlacement minmax_batch_optimum(std::size_t n, std::span<const ServerLoad> upfs);

// Places the n requests one at a time with find_bestfit_upf, growing the chosen
// queue after each placement.
BatchPlacement sequential_heuristic_batch(std::size_t n, std::span<const ServerLoad> upfs,
                                          double delta_ms = 1.0);

struct PairChoice {
    std::size_t upf = 0;
    std::size_t mec = 0;
    double d_e2e = 0.0;
};

// True joint minimum of d_upf(i) + d_net(i, j) + d_mec(j) over all pairs,
// lowest (i, j) on ties. Refuses U * M > 100.
PairChoice pair_enumeration_optimum(const NetworkView& view);

// Random single-QoS UPF snapshot for gap studies: capacity in 1..5, in-service
// in 0..capacity, queue length in 0..8, all integral.
std::vector<ServerLoad> random_upf_loads(std::mt19937_64& rng, std::size_t u);

}  // namespace upfmec::oracle
