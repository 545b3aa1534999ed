#include "upfmec/oracle.hpp"

#include <algorithm>
#include <string>

namespace upfmec::oracle {

double placement_cost(std::span<const ServerLoad> upfs, std::span<const std::size_t> counts) {
    double worst = 0.0;
    for (std::size_t j = 0; j < upfs.size(); ++j) {
        if (counts[j] == 0) continue;
        const auto& u = upfs[j];
        worst = std::max(worst, worst_case_batch_delay(u.queue_len, static_cast<double>(counts[j]),
                                                       u.headroom, u.capacity));
    }
    return worst;
}

BatchPlacement minmax_batch_optimum(std::size_t n, std::span<const ServerLoad> upfs) {
    if (upfs.empty()) throw std::invalid_argument("at least one UPF is required");
    if (n > kMaxBatch) {
        throw BoundExceeded("batch size " + std::to_string(n) + " exceeds the enumeration bound " +
                            std::to_string(kMaxBatch));
    }
    if (upfs.size() > kMaxUpfs) {
        throw BoundExceeded("UPF count " + std::to_string(upfs.size()) +
                            " exceeds the enumeration bound " + std::to_string(kMaxUpfs));
    }
    for (const auto& u : upfs) {
        if (u.headroom < 0.0 || u.headroom > u.capacity) {
            throw std::invalid_argument("in-service count outside [0, capacity]");
        }
    }

    // Compositions in descending lexicographic order, starting at (n, 0, ..., 0).
    const auto u = upfs.size();
    std::vector<std::size_t> x(u, 0);
    x[0] = n;
    BatchPlacement best{x, placement_cost(upfs, x)};
    while (true) {
        // Next composition: find the rightmost non-zero entry before the last slot,
        // move one unit right and gather the tail into the following slot.
        std::size_t k = u - 1;
        while (k > 0 && x[k - 1] == 0) --k;
        if (k == 0 || u == 1) break;
        --k;
        const auto tail = x[u - 1];
        x[u - 1] = 0;
        --x[k];
        x[k + 1] = tail + 1;
        const double cost = placement_cost(upfs, x);
        if (cost < best.worst_case_epochs) best = {x, cost};
        if (x[u - 1] == n) break;
    }
    return best;
}

BatchPlacement sequential_heuristic_batch(std::size_t n, std::span<const ServerLoad> upfs,
                                          double delta_ms) {
    if (upfs.empty()) throw std::invalid_argument("at least one UPF is required");
    std::vector<ServerLoad> state(upfs.begin(), upfs.end());
    std::vector<std::size_t> counts(upfs.size(), 0);
    for (std::size_t k = 0; k < n; ++k) {
        const auto bf = find_bestfit_upf(state, delta_ms);
        ++counts[bf.index];
        state[bf.index].queue_len += 1.0;
    }
    return {counts, placement_cost(upfs, counts)};
}

PairChoice pair_enumeration_optimum(const NetworkView& view) {
    const auto u = view.upfs.size();
    const auto m = view.mecs.size();
    if (u == 0 || m == 0) throw std::invalid_argument("at least one UPF and one MEC are required");
    if (u * m > kMaxPairs) {
        throw BoundExceeded("pair count " + std::to_string(u * m) +
                            " exceeds the enumeration bound " + std::to_string(kMaxPairs));
    }
    std::optional<PairChoice> best;
    for (std::size_t i = 0; i < u; ++i) {
        const auto& up = view.upfs[i];
        const double d_upf = upf_projected_delay(up.queue_len, up.headroom, up.capacity,
                                                 view.delta_ms);
        for (std::size_t j = 0; j < m; ++j) {
            const auto& mp = view.mecs[j];
            const double d_mec = mec_projected_delay(mp.queue_len, mp.headroom, mp.capacity,
                                                     view.delta_ms);
            const double total = DelayBreakdown::compose(d_upf, view.link_delay(i, j), d_mec).d_e2e;
            if (!best || total < best->d_e2e) best = PairChoice{i, j, total};
        }
    }
    return *best;
}

std::vector<ServerLoad> random_upf_loads(std::mt19937_64& rng, std::size_t u) {
    std::uniform_int_distribution<int> cap(1, 5);
    std::uniform_int_distribution<int> queue(0, 8);
    std::vector<ServerLoad> out(u);
    for (auto& s : out) {
        const int c = cap(rng);
        const int busy = std::uniform_int_distribution<int>(0, c)(rng);
        s.capacity = c;
        s.headroom = c - busy;
        s.queue_len = queue(rng);
    }
    return out;
}

}  // namespace upfmec::oracle
