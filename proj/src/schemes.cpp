#include "upfmec/schemes.hpp"

#include <stdexcept>

namespace upfmec {

namespace {

using DelayFn = double (*)(double, double, double, double);

BestFit find_bestfit(std::span<const ServerLoad> servers, double delta_ms, DelayFn cost,
                     const char* what) {
    if (servers.empty()) {
        throw std::invalid_argument(std::string("no ") + what + " to choose from");
    }
    std::optional<BestFit> best;
    std::optional<BestFit> best_any;
    for (std::size_t i = 0; i < servers.size(); ++i) {
        const auto& s = servers[i];
        const double pc = cost(s.queue_len, s.headroom, s.capacity, delta_ms);
        if (!best_any || pc < best_any->projected_ms) best_any = BestFit{i, pc};
        if (!s.full && (!best || pc < best->projected_ms)) best = BestFit{i, pc};
    }
    return best ? *best : *best_any;
}

void check_index(std::size_t idx, std::size_t n, const char* what) {
    if (idx >= n) {
        throw std::out_of_range(std::string(what) + " index " + std::to_string(idx + 1) +
                                " not present in the network view");
    }
}

double upf_cost(const NetworkView& view, std::size_t upf) {
    const auto& u = view.upfs[upf];
    return upf_projected_delay(u.queue_len, u.headroom, u.capacity, view.delta_ms);
}

double mec_cost(const NetworkView& view, std::size_t mec) {
    const auto& m = view.mecs[mec];
    return mec_projected_delay(m.queue_len, m.headroom, m.capacity, view.delta_ms);
}

AssignmentDecision finish(const UeRequest& req, const NetworkView& view, std::size_t upf,
                          double d_upf, std::optional<std::size_t> mec, double d_mec) {
    AssignmentDecision d;
    d.upf = upf;
    d.dropped = view.upfs[upf].full;
    if (!uses_mec(req.qos)) {
        d.projected = DelayBreakdown::compose(d_upf, 0.0, 0.0);
        return d;
    }
    d.mec = mec;
    d.projected = DelayBreakdown::compose(d_upf, view.link_delay(upf, *mec), d_mec);
    return d;
}

}  // namespace

double NetworkView::link_delay(std::size_t upf, std::size_t mec) const {
    const auto& l = link(upf, mec);
    return net_delay(l.n_share, mec_bytes[mec], l.bandwidth, delta_ms);
}

BestFit find_bestfit_upf(std::span<const ServerLoad> upfs, double delta_ms) {
    return find_bestfit(upfs, delta_ms, &upf_projected_delay, "UPF");
}

BestFit find_bestfit_mec(std::span<const ServerLoad> mecs, double delta_ms) {
    return find_bestfit(mecs, delta_ms, &mec_projected_delay, "MEC");
}

AssignmentDecision assign_baseline(const UeRequest& req, const NetworkView& view) {
    const auto upf = req.origin_upf;
    check_index(upf, view.upfs.size(), "origin UPF");
    if (!uses_mec(req.qos)) return finish(req, view, upf, upf_cost(view, upf), std::nullopt, 0.0);
    check_index(upf, view.mecs.size(), "co-located MEC");
    return finish(req, view, upf, upf_cost(view, upf), upf, mec_cost(view, upf));
}

AssignmentDecision assign_bestfit_no_pe(const UeRequest& req, const NetworkView& view) {
    check_index(req.origin_upf, view.upfs.size(), "origin UPF");
    const auto bf = find_bestfit_upf(view.upfs, view.delta_ms);
    if (!uses_mec(req.qos)) return finish(req, view, bf.index, bf.projected_ms, std::nullopt, 0.0);
    const auto mec = req.origin_upf;
    check_index(mec, view.mecs.size(), "origin MEC");
    return finish(req, view, bf.index, bf.projected_ms, mec, mec_cost(view, mec));
}

AssignmentDecision assign_bestfit_pe(const UeRequest& req, const NetworkView& view) {
    if (view.upfs.size() != view.mecs.size()) {
        throw std::invalid_argument("path extension needs a co-located topology (U == M)");
    }
    const auto bf = find_bestfit_upf(view.upfs, view.delta_ms);
    if (!uses_mec(req.qos)) return finish(req, view, bf.index, bf.projected_ms, std::nullopt, 0.0);
    return finish(req, view, bf.index, bf.projected_ms, bf.index, mec_cost(view, bf.index));
}

AssignmentDecision assign_bestfit_upf_mec(const UeRequest& req, const NetworkView& view) {
    const auto bf_upf = find_bestfit_upf(view.upfs, view.delta_ms);
    if (!uses_mec(req.qos)) {
        return finish(req, view, bf_upf.index, bf_upf.projected_ms, std::nullopt, 0.0);
    }
    const auto bf_mec = find_bestfit_mec(view.mecs, view.delta_ms);
    return finish(req, view, bf_upf.index, bf_upf.projected_ms, bf_mec.index,
                  bf_mec.projected_ms);
}

AssignmentDecision assign(Scheme scheme, const UeRequest& req, const NetworkView& view) {
    switch (scheme) {
        case Scheme::Baseline: return assign_baseline(req, view);
        case Scheme::BestfitUpfNoPe: return assign_bestfit_no_pe(req, view);
        case Scheme::BestfitUpfPathExt: return assign_bestfit_pe(req, view);
        case Scheme::BestfitUpfMec: return assign_bestfit_upf_mec(req, view);
    }
    throw std::invalid_argument("unknown scheme");
}

}  // namespace upfmec
