#include <doctest.h>

#include <filesystem>
#include <random>
#include <string>

#include "fixtures.hpp"
#include "upfmec/delay.hpp"
#include "upfmec/scenario_io.hpp"

using namespace upfmec;

namespace {

Scenario random_scenario(std::mt19937_64& rng) {
    std::uniform_int_distribution<std::size_t> count(1, 6);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    const auto u = count(rng);
    const auto m = count(rng);
    auto s = test::uniform_scenario(u, m, 1.0 + 10 * unit(rng), 1.0 + 10 * unit(rng),
                                    100 + 1000 * unit(rng), 50 * unit(rng),
                                    static_cast<std::uint64_t>(count(rng) * 7), Scheme::BestfitUpfMec);
    s.name = "random-" + std::to_string(count(rng));
    s.seed = rng();
    s.delta_ms = 0.25 + unit(rng);
    s.drain_cap_epochs = count(rng);
    s.headroom_factor = 1 + 20 * unit(rng);
    s.traffic.process = unit(rng) < 0.5 ? ArrivalProcess::Poisson : ArrivalProcess::Deterministic;
    s.traffic.qos_mix = {unit(rng), unit(rng), unit(rng), unit(rng)};
    for (auto& u_spec : s.upfs) {
        u_spec.etpb = unit(rng) / 100;
        u_spec.bytes_per_ue = 1 + 512 * unit(rng);
        for (auto& a : u_spec.alpha) a = unit(rng) / 4;
        for (auto& c : u_spec.capacity) c = 1 + 9 * unit(rng);
    }
    for (auto& m_spec : s.mecs) {
        m_spec.etpb = unit(rng) / 100;
        m_spec.capacity = 1 + 9 * unit(rng);
    }
    for (auto& l : s.links) l.bandwidth_mbps = 1 + 999 * unit(rng);
    s.thresholds_ms[QosClass::Mmtc] = 1 + 50 * unit(rng);
    return s;
}

}  // namespace

TEST_CASE("scenario serialization round-trips bit-exactly") {
    std::mt19937_64 rng(2024);
    for (int i = 0; i < 200; ++i) {
        const auto s = random_scenario(rng);
        const auto back = parse_scenario(dump_scenario(s));
        CHECK(back == s);
    }
}

TEST_CASE("bundled scenario round-trips through a file") {
    const auto s = load_scenario(test::scenario_path("five-site.json"));
    const auto tmp = std::filesystem::temp_directory_path() / "upfmec_roundtrip.json";
    save_scenario(s, tmp);
    CHECK(load_scenario(tmp) == s);
    std::filesystem::remove(tmp);
}

TEST_CASE("missing file") {
    try {
        (void)load_scenario("/nonexistent/dir/none.json");
        FAIL("expected an exception");
    } catch (const ScenarioParseError& e) {
        CHECK(std::string(e.what()).find("file not found") != std::string::npos);
    }
}

TEST_CASE("malformed documents are rejected with a parse error") {
    CHECK_THROWS_AS(parse_scenario("{"), ScenarioParseError);
    CHECK_THROWS_AS(parse_scenario("[]"), ScenarioParseError);
    CHECK_THROWS_AS(parse_scenario(R"({"num_upfs": 1})"), ScenarioParseError);
    CHECK_THROWS_AS(parse_scenario(R"({"num_upfs": "five", "num_mecs": 1, "horizon_epochs": 1})"),
                    ScenarioParseError);
    auto doc = dump_scenario(test::uniform_scenario(1, 1, 2, 2));
    const auto pos = doc.find("\"baseline\"");
    REQUIRE(pos != std::string::npos);
    doc.replace(pos, 10, "\"nonsense\"");
    CHECK_THROWS_AS(parse_scenario(doc), ScenarioParseError);
}

TEST_CASE("capacities are derived from etpb when omitted") {
    const std::string doc = R"({
      "num_upfs": 1, "num_mecs": 1, "horizon_epochs": 5,
      "traffic": {"mean_arrivals_per_epoch": 1, "skew": [1]},
      "upfs": [{"etpb": 0.001953125, "bytes_per_ue": 256,
                "alpha": {"urllc": 0.25, "embb": 0.25, "mmtc": 0.25, "regular": 0.25}}],
      "mecs": [{"etpb": 0.000166666666666666666, "bytes_per_ue": 1500}],
      "links": [{"upf": 1, "mec": 1, "bandwidth_mbps": 150}]
    })";
    const auto s = parse_scenario(doc);
    CHECK(s.upfs[0].capacity[0] == upf_capacity(0.001953125, 256, 0.25, 1.0));
    CHECK(s.upfs[0].capacity[0] == 1.0);
    CHECK(s.mecs[0].capacity == doctest::Approx(2.0).epsilon(1e-12));
    CHECK(s.links[0].upf == 0);
    CHECK(s.links[0].mec == 0);
    CHECK(s.traffic.qos_mix == PerQos<double>{0.25, 0.25, 0.25, 0.25});
    CHECK(validate_scenario(s).ok());
}
