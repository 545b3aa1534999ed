#include <doctest.h>

#include <random>

#include "upfmec/schemes.hpp"

using namespace upfmec;

namespace {

ServerLoad idle(double cap) { return {0.0, cap, cap, false}; }

NetworkView make_view(std::vector<ServerLoad> upfs, std::vector<ServerLoad> mecs,
                      double bw_bits_per_ms = 1e6) {
    NetworkView v;
    v.upfs = std::move(upfs);
    v.mecs = std::move(mecs);
    v.mec_bytes.assign(v.mecs.size(), 1500.0);
    v.links.assign(v.upfs.size() * v.mecs.size(), LinkLoad{bw_bits_per_ms, 0.0});
    return v;
}

UeRequest request(std::size_t origin, QosClass q = QosClass::Urllc) {
    UeRequest r;
    r.origin_upf = origin;
    r.qos = q;
    return r;
}

ServerLoad random_load(std::mt19937_64& rng) {
    std::uniform_int_distribution<int> cap(1, 8);
    std::uniform_int_distribution<int> queue(0, 20);
    ServerLoad s;
    s.capacity = cap(rng);
    s.headroom = std::uniform_int_distribution<int>(0, static_cast<int>(s.capacity))(rng);
    s.queue_len = queue(rng);
    return s;
}

}  // namespace

TEST_CASE("bestfit breaks ties toward the lowest index") {
    std::vector<ServerLoad> upfs(5, idle(4));
    const auto bf = find_bestfit_upf(upfs, 1.0);
    CHECK(bf.index == 0);
    CHECK(bf.projected_ms == 1.0);
}

TEST_CASE("bestfit picks the dominant server") {
    // Projected delays 3, 2 and 2.2.
    std::vector<ServerLoad> upfs{{7, 0, 4, false}, {3, 2, 2, false}, {5, 0, 5, false}};
    CHECK(find_bestfit_upf(upfs, 1.0).index == 1);
    CHECK(find_bestfit_upf(upfs, 1.0).projected_ms == 2.0);
}

TEST_CASE("bestfit skips full servers unless every server is full") {
    std::vector<ServerLoad> s{idle(4), {2, 0, 4, false}};
    s[0].full = true;
    CHECK(find_bestfit_mec(s, 1.0).index == 1);
    s[1].full = true;
    CHECK(find_bestfit_mec(s, 1.0).index == 0);
    CHECK_THROWS_AS(find_bestfit_upf({}, 1.0), std::invalid_argument);
}

TEST_CASE("bestfit equals a brute-force argmin") {
    std::mt19937_64 rng(7);
    for (int trial = 0; trial < 2000; ++trial) {
        const std::size_t n = trial % 2 == 0 ? 3 : 5;
        std::vector<ServerLoad> s;
        for (std::size_t i = 0; i < n; ++i) s.push_back(random_load(rng));
        std::size_t best = 0;
        double best_cost = 0;
        for (std::size_t i = 0; i < n; ++i) {
            const double c = upf_projected_delay(s[i].queue_len, s[i].headroom, s[i].capacity, 1.0);
            if (i == 0 || c < best_cost) {
                best = i;
                best_cost = c;
            }
        }
        const auto bf = trial % 2 == 0 ? find_bestfit_upf(s, 1.0) : find_bestfit_mec(s, 1.0);
        REQUIRE(bf.index == best);
        REQUIRE(bf.projected_ms == best_cost);
    }
}

TEST_CASE("bestfit choice is invariant to adding load elsewhere") {
    std::mt19937_64 rng(11);
    for (int trial = 0; trial < 1000; ++trial) {
        std::vector<ServerLoad> s;
        for (int i = 0; i < 4; ++i) s.push_back(random_load(rng));
        const auto before = find_bestfit_upf(s, 1.0).index;
        for (std::size_t i = 0; i < s.size(); ++i) {
            if (i != before) s[i].queue_len += 3;
        }
        REQUIRE(find_bestfit_upf(s, 1.0).index == before);
    }
}

TEST_CASE("baseline keeps the origin site") {
    const auto view = make_view(std::vector<ServerLoad>(5, idle(4)), std::vector<ServerLoad>(5, idle(4)));
    const auto d = assign_baseline(request(2), view);
    CHECK(d.upf == 2);
    CHECK(d.mec == std::optional<std::size_t>(2));
    CHECK(d.projected.d_e2e == 2.0);
    CHECK_FALSE(d.dropped);

    const auto r = assign_baseline(request(2, QosClass::Regular), view);
    CHECK(r.upf == 2);
    CHECK_FALSE(r.mec.has_value());
    CHECK(r.projected.d_e2e == 1.0);
}

TEST_CASE("bestfit without path extension keeps the origin MEC") {
    std::vector<ServerLoad> upfs(5, {6, 0, 2, false});
    upfs[0] = idle(2);
    const auto view = make_view(upfs, std::vector<ServerLoad>(5, idle(4)));
    const auto d = assign_bestfit_no_pe(request(4), view);
    CHECK(d.upf == 0);
    CHECK(d.mec == std::optional<std::size_t>(4));
    // Transfer over the (1, 5) link: 0 shares so no delay.
    CHECK(d.projected.d_net == 0.0);
}

TEST_CASE("path extension follows the chosen UPF") {
    std::vector<ServerLoad> upfs(5, {6, 0, 2, false});
    upfs[0] = idle(2);
    auto view = make_view(upfs, std::vector<ServerLoad>(5, idle(4)));
    view.links[0 * 5 + 0].n_share = 10;
    view.links[0 * 5 + 0].bandwidth = 150000;
    const auto d = assign_bestfit_pe(request(4), view);
    CHECK(d.upf == 0);
    CHECK(d.mec == std::optional<std::size_t>(0));
    CHECK(d.projected.d_net == doctest::Approx(0.8));
    CHECK(d.projected.d_e2e == doctest::Approx(2.8));

    const auto uneven = make_view(upfs, std::vector<ServerLoad>(4, idle(4)));
    CHECK_THROWS_AS(assign_bestfit_pe(request(0), uneven), std::invalid_argument);
}

TEST_CASE("UPF and MEC chosen independently") {
    SUBCASE("idle network") {
        const auto view = make_view(std::vector<ServerLoad>(3, idle(2)), std::vector<ServerLoad>(4, idle(2)));
        const auto d = assign_bestfit_upf_mec(request(2), view);
        CHECK(d.upf == 0);
        CHECK(d.mec == std::optional<std::size_t>(0));
    }
    SUBCASE("distinct winners") {
        std::vector<ServerLoad> upfs{{9, 0, 2, false}, idle(2), {9, 0, 2, false}};
        std::vector<ServerLoad> mecs{{9, 0, 2, false}, {9, 0, 2, false}, {9, 0, 2, false}, idle(1)};
        const auto d = assign_bestfit_upf_mec(request(0), make_view(upfs, mecs));
        CHECK(d.upf == 1);
        CHECK(d.mec == std::optional<std::size_t>(3));
    }
    SUBCASE("regular traffic never picks a MEC") {
        const auto view = make_view(std::vector<ServerLoad>(2, idle(2)), std::vector<ServerLoad>(2, idle(2)));
        CHECK_FALSE(assign_bestfit_upf_mec(request(1, QosClass::Regular), view).mec.has_value());
    }
}

TEST_CASE("admission into a full bucket is flagged as a drop") {
    std::vector<ServerLoad> upfs(2, idle(2));
    upfs[1].full = true;
    const auto view = make_view(upfs, std::vector<ServerLoad>(2, idle(2)));
    CHECK(assign(Scheme::Baseline, request(1), view).dropped);
    CHECK_FALSE(assign(Scheme::BestfitUpfNoPe, request(1), view).dropped);
}

TEST_CASE("out-of-range origin is rejected") {
    const auto view = make_view(std::vector<ServerLoad>(2, idle(2)), std::vector<ServerLoad>(2, idle(2)));
    CHECK_THROWS_AS(assign_baseline(request(5), view), std::out_of_range);
}
