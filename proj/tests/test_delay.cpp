#include <doctest.h>

#include <random>
#include <stdexcept>

#include "upfmec/delay.hpp"
#include "upfmec/model.hpp"

using namespace upfmec;

TEST_CASE("upf_capacity follows etpb * bytes * 8 * alpha / delta") {
    // 4 requests per epoch: 1/512 ms per bit over 256 bytes with the whole UPF.
    CHECK(upf_capacity(1.0 / 512.0, 256.0, 1.0, 1.0) == 4.0);
    CHECK(upf_capacity(1.0 / 512.0, 256.0, 0.5, 1.0) == 2.0);
    CHECK(upf_capacity(1.0 / 512.0, 256.0, 1.0, 0.5) == 8.0);
    CHECK_THROWS_AS(upf_capacity(1.0, 256.0, 0.0, 1.0), std::domain_error);
    CHECK_THROWS_AS(upf_capacity(1.0, 256.0, 1.2, 1.0), std::domain_error);
    CHECK_THROWS_AS(upf_capacity(-1.0, 256.0, 0.5, 1.0), std::domain_error);
    CHECK_THROWS_AS(upf_capacity(1.0, 256.0, 0.5, 0.0), std::domain_error);
}

TEST_CASE("upf_capacity is linear in alpha") {
    for (double a : {0.1, 0.2, 0.25, 0.4, 0.5}) {
        CHECK(upf_capacity(0.01, 256.0, 2 * a, 1.0) == doctest::Approx(2 * upf_capacity(0.01, 256.0, a, 1.0)).epsilon(1e-12));
    }
}

TEST_CASE("mec_capacity") {
    // 1500 B at 1/12000 ms per bit: one request per 1 ms epoch.
    CHECK(mec_capacity(1.0 / 12000.0, 1500.0, 1.0) == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(mec_capacity(0.01, 1500.0, 1.0) == doctest::Approx(120.0).epsilon(1e-12));
    CHECK(mec_capacity(0.003, 700.0, 1.0) == upf_capacity(0.003, 700.0, 1.0, 1.0));
    CHECK(mec_capacity(0.01, 1500.0, 0.5) == doctest::Approx(2 * mec_capacity(0.01, 1500.0, 1.0)).epsilon(1e-12));
    CHECK_THROWS_AS(mec_capacity(0.0, 1500.0, 1.0), std::domain_error);
    CHECK_THROWS_AS(mec_capacity(0.01, 0.0, 1.0), std::domain_error);
}

TEST_CASE("headroom") {
    CHECK(upf_headroom(4, 4) == 0);
    CHECK(upf_headroom(4, 1) == 3);
    CHECK(upf_headroom(7, 0) == 7);
    CHECK(mec_headroom(2, 1) == 1);
    CHECK_THROWS_AS(upf_headroom(4, 5), InvariantViolation);
    CHECK_THROWS_AS(mec_headroom(4, -1), InvariantViolation);
}

TEST_CASE("projected delay values") {
    CHECK(upf_projected_delay(0, 2, 4, 1) == 1.0);
    CHECK(upf_projected_delay(7, 0, 4, 1) == 3.0);
    CHECK(mec_projected_delay(0, 1, 2, 1) == 1.0);
    CHECK(mec_projected_delay(5, 0, 2, 1) == 4.0);
    CHECK(upf_projected_delay(7, 0, 4, 2) == 6.0);
    CHECK_THROWS_AS(upf_projected_delay(1, 0, 0, 1), std::domain_error);
    CHECK_THROWS_AS(mec_projected_delay(1, 0, -2, 1), std::domain_error);
}

TEST_CASE("projected delay takes the queued branch at q == headroom") {
    for (double h : {0.0, 1.0, 2.0, 3.0, 5.0}) {
        for (double c : {1.0, 2.0, 4.0, 5.0}) {
            CHECK(upf_projected_delay(h, h, c, 1.0) == 1.0 / c + 1.0);
            CHECK(mec_projected_delay(h, h, c, 1.0) == 1.0 / c + 1.0);
        }
    }
}

TEST_CASE("UPF and MEC projected delay share one formula") {
    std::mt19937_64 rng(7);
    std::uniform_int_distribution<int> q(0, 20), h(0, 6), c(1, 6);
    for (int i = 0; i < 500; ++i) {
        const double qq = q(rng), hh = h(rng), cc = c(rng);
        CHECK(upf_projected_delay(qq, hh, cc, 1.0) == mec_projected_delay(qq, hh, cc, 1.0));
    }
}

TEST_CASE("projected delay monotonicity") {
    std::mt19937_64 rng(11);
    std::uniform_int_distribution<int> q(0, 30), h(0, 8), c(1, 8);
    for (int i = 0; i < 2000; ++i) {
        const double qq = q(rng), hh = h(rng), cc = c(rng);
        const double base = upf_projected_delay(qq, hh, cc, 1.0);
        CHECK(base >= 1.0);
        CHECK(upf_projected_delay(qq + 1, hh, cc, 1.0) >= base);
        CHECK(upf_projected_delay(qq, hh + 1, cc, 1.0) <= base);
        CHECK(upf_projected_delay(qq, hh, cc + 1, 1.0) <= base);
    }
}

TEST_CASE("net_delay") {
    CHECK(net_delay(0, 1500, mbps_to_bits_per_ms(150), 1) == 0.0);
    CHECK(net_delay(10, 1500, mbps_to_bits_per_ms(150), 1) == 0.8);
    CHECK(net_delay(10, 1500, mbps_to_bits_per_ms(300), 1) == 0.4);
    CHECK(net_delay(5, 1500, mbps_to_bits_per_ms(1000), 1) == 0.06);
    CHECK_THROWS_AS(net_delay(1, 1500, 0, 1), std::domain_error);
    CHECK_THROWS_AS(net_delay(-1, 1500, 1000, 1), std::domain_error);
}

TEST_CASE("net_delay is linear in n_share and inverse in bandwidth") {
    const double unit = net_delay(1, 1500, 150000, 1);
    for (int n = 0; n <= 40; ++n) {
        CHECK(net_delay(n, 1500, 150000, 1) == doctest::Approx(n * unit).epsilon(1e-12));
        CHECK(net_delay(n, 1500, 300000, 1) == doctest::Approx(net_delay(n, 1500, 150000, 1) / 2).epsilon(1e-12));
    }
}

TEST_CASE("worst_case_batch_delay") {
    CHECK(worst_case_batch_delay(1, 0, 2, 4) == 0.0);
    CHECK(worst_case_batch_delay(3, 5, 0, 4) == 2.0);
    CHECK(worst_case_batch_delay(0, 4, 2, 2) == 1.0);
    CHECK_THROWS_AS(worst_case_batch_delay(0, 1, 0, 0), std::domain_error);
    for (int q = 0; q < 6; ++q) {
        for (int x = 0; x < 10; ++x) {
            CHECK(worst_case_batch_delay(q, x + 1, 2, 3) >= worst_case_batch_delay(q, x, 2, 3));
        }
    }
}

TEST_CASE("DelayBreakdown composes the end-to-end sum") {
    const auto d = DelayBreakdown::compose(2.0, 0.8, 3.0);
    CHECK(d.d_e2e == 5.8);
    CHECK(d == DelayBreakdown{2.0, 0.8, 3.0, 5.8});
}
