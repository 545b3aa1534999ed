#include "upfmec/scenario_io.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

namespace upfmec {

using nlohmann::json;

namespace {

[[noreturn]] void fail(const std::string& msg) { throw ScenarioParseError(msg); }

const json& require(const json& j, const char* key, const std::string& where) {
    auto it = j.find(key);
    if (it == j.end()) fail(where + ": missing key '" + key + "'");
    return *it;
}

double number(const json& j, const std::string& where) {
    if (!j.is_number()) fail(where + ": expected a number");
    return j.get<double>();
}

std::uint64_t count(const json& j, const std::string& where) {
    if (!j.is_number_unsigned()) fail(where + ": expected a non-negative integer");
    return j.get<std::uint64_t>();
}

PerQos<double> per_qos(const json& j, const std::string& where) {
    if (!j.is_object()) fail(where + ": expected an object keyed by QoS class");
    PerQos<double> out{};
    for (auto q : kAllQos) {
        const std::string key(to_string(q));
        out[qos_index(q)] = number(require(j, key.c_str(), where), where + "." + key);
    }
    if (j.size() != kNumQos) {
        for (const auto& [k, _] : j.items()) {
            if (!parse_qos(k)) fail(where + ": unknown QoS class '" + k + "'");
        }
    }
    return out;
}

json per_qos_json(const PerQos<double>& v) {
    json out = json::object();
    for (auto q : kAllQos) out[std::string(to_string(q))] = v[qos_index(q)];
    return out;
}

std::size_t entity_index(const json& entry, std::size_t position, const std::string& where) {
    if (auto it = entry.find("id"); it != entry.end()) {
        const auto id = count(*it, where + ".id");
        if (id != position + 1) {
            fail(where + ": id " + std::to_string(id) + " out of order, expected " +
                 std::to_string(position + 1));
        }
    }
    return position;
}

Scenario parse_document(const std::string& text);

}  // namespace

Scenario parse_scenario(const std::string& text) {
    try {
        return parse_document(text);
    } catch (const json::exception& e) {
        fail(std::string("scenario document has the wrong shape: ") + e.what());
    }
}

namespace {

Scenario parse_document(const std::string& text) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::parse_error& e) {
        fail(std::string("malformed scenario document: ") + e.what());
    }
    if (!doc.is_object()) fail("scenario document must be an object");

    Scenario s;
    if (auto it = doc.find("name"); it != doc.end()) s.name = it->get<std::string>();
    s.num_upfs = count(require(doc, "num_upfs", "scenario"), "num_upfs");
    s.num_mecs = count(require(doc, "num_mecs", "scenario"), "num_mecs");
    if (auto it = doc.find("delta_ms"); it != doc.end()) s.delta_ms = number(*it, "delta_ms");
    s.horizon_epochs = count(require(doc, "horizon_epochs", "scenario"), "horizon_epochs");
    if (auto it = doc.find("drain_cap_epochs"); it != doc.end()) {
        s.drain_cap_epochs = count(*it, "drain_cap_epochs");
    }
    if (auto it = doc.find("seed"); it != doc.end()) s.seed = count(*it, "seed");
    if (auto it = doc.find("scheme"); it != doc.end()) {
        auto name = it->get<std::string>();
        auto scheme = parse_scheme(name);
        if (!scheme) fail("unknown scheme '" + name + "'; valid: " + scheme_names());
        s.scheme = *scheme;
    }
    if (auto it = doc.find("headroom_factor"); it != doc.end()) {
        s.headroom_factor = number(*it, "headroom_factor");
    }
    if (auto it = doc.find("thresholds_ms"); it != doc.end()) {
        s.thresholds_ms.clear();
        for (const auto& [k, val] : it->items()) {
            auto q = parse_qos(k);
            if (!q) fail("thresholds_ms: unknown QoS class '" + k + "'");
            s.thresholds_ms[*q] = number(val, "thresholds_ms." + k);
        }
    }

    const auto& traffic = require(doc, "traffic", "scenario");
    s.traffic.mean_arrivals_per_epoch = number(
        require(traffic, "mean_arrivals_per_epoch", "traffic"), "traffic.mean_arrivals_per_epoch");
    const auto& skew = require(traffic, "skew", "traffic");
    if (!skew.is_array()) fail("traffic.skew: expected an array");
    for (const auto& x : skew) s.traffic.skew.push_back(number(x, "traffic.skew"));
    if (auto it = traffic.find("qos_mix"); it != traffic.end()) {
        s.traffic.qos_mix = per_qos(*it, "traffic.qos_mix");
    }
    if (auto it = traffic.find("process"); it != traffic.end()) {
        auto name = it->get<std::string>();
        auto p = parse_arrival_process(name);
        if (!p) fail("traffic.process: unknown arrival process '" + name + "'");
        s.traffic.process = *p;
    }

    const auto& upfs = require(doc, "upfs", "scenario");
    if (!upfs.is_array()) fail("upfs: expected an array");
    for (std::size_t i = 0; i < upfs.size(); ++i) {
        const auto& e = upfs[i];
        const std::string where = "upfs[" + std::to_string(i) + "]";
        entity_index(e, i, where);
        UpfSpec u;
        if (auto it = e.find("etpb"); it != e.end()) u.etpb = number(*it, where + ".etpb");
        if (auto it = e.find("bytes_per_ue"); it != e.end()) {
            u.bytes_per_ue = number(*it, where + ".bytes_per_ue");
        }
        u.alpha = per_qos(require(e, "alpha", where), where + ".alpha");
        if (auto it = e.find("capacity"); it != e.end()) {
            u.capacity = per_qos(*it, where + ".capacity");
        } else {
            try {
                for (auto q : kAllQos) {
                    u.capacity[qos_index(q)] =
                        upf_capacity(u.etpb, u.bytes_per_ue, u.alpha[qos_index(q)], s.delta_ms);
                }
            } catch (const std::domain_error& err) {
                fail(where + ": cannot derive capacity: " + err.what());
            }
        }
        s.upfs.push_back(u);
    }

    const auto& mecs = require(doc, "mecs", "scenario");
    if (!mecs.is_array()) fail("mecs: expected an array");
    for (std::size_t j = 0; j < mecs.size(); ++j) {
        const auto& e = mecs[j];
        const std::string where = "mecs[" + std::to_string(j) + "]";
        entity_index(e, j, where);
        MecSpec m;
        if (auto it = e.find("etpb"); it != e.end()) m.etpb = number(*it, where + ".etpb");
        if (auto it = e.find("bytes_per_ue"); it != e.end()) {
            m.bytes_per_ue = number(*it, where + ".bytes_per_ue");
        }
        if (auto it = e.find("capacity"); it != e.end()) {
            m.capacity = number(*it, where + ".capacity");
        } else {
            try {
                m.capacity = mec_capacity(m.etpb, m.bytes_per_ue, s.delta_ms);
            } catch (const std::domain_error& err) {
                fail(where + ": cannot derive capacity: " + err.what());
            }
        }
        s.mecs.push_back(m);
    }

    const auto& links = require(doc, "links", "scenario");
    if (!links.is_array()) fail("links: expected an array");
    for (std::size_t k = 0; k < links.size(); ++k) {
        const auto& e = links[k];
        const std::string where = "links[" + std::to_string(k) + "]";
        LinkSpec l;
        const auto upf = count(require(e, "upf", where), where + ".upf");
        const auto mec = count(require(e, "mec", where), where + ".mec");
        if (upf == 0 || mec == 0) fail(where + ": UPF and MEC ids are 1-based");
        l.upf = upf - 1;
        l.mec = mec - 1;
        l.bandwidth_mbps = number(require(e, "bandwidth_mbps", where), where + ".bandwidth_mbps");
        s.links.push_back(l);
    }
    return s;
}

}  // namespace

Scenario load_scenario(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ScenarioParseError("file not found: " + path.string());
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_scenario(buf.str());
}

std::string dump_scenario(const Scenario& s) {
    json doc;
    doc["name"] = s.name;
    doc["num_upfs"] = s.num_upfs;
    doc["num_mecs"] = s.num_mecs;
    doc["delta_ms"] = s.delta_ms;
    doc["horizon_epochs"] = s.horizon_epochs;
    doc["drain_cap_epochs"] = s.drain_cap_epochs;
    doc["seed"] = s.seed;
    doc["scheme"] = std::string(to_string(s.scheme));
    doc["headroom_factor"] = s.headroom_factor;
    json thr = json::object();
    for (const auto& [q, ms] : s.thresholds_ms) thr[std::string(to_string(q))] = ms;
    doc["thresholds_ms"] = thr;

    json traffic;
    traffic["mean_arrivals_per_epoch"] = s.traffic.mean_arrivals_per_epoch;
    traffic["process"] = std::string(to_string(s.traffic.process));
    traffic["skew"] = s.traffic.skew;
    traffic["qos_mix"] = per_qos_json(s.traffic.qos_mix);
    doc["traffic"] = traffic;

    json upfs = json::array();
    for (std::size_t i = 0; i < s.upfs.size(); ++i) {
        const auto& u = s.upfs[i];
        upfs.push_back({{"id", i + 1},
                        {"etpb", u.etpb},
                        {"bytes_per_ue", u.bytes_per_ue},
                        {"alpha", per_qos_json(u.alpha)},
                        {"capacity", per_qos_json(u.capacity)}});
    }
    doc["upfs"] = upfs;

    json mecs = json::array();
    for (std::size_t j = 0; j < s.mecs.size(); ++j) {
        const auto& m = s.mecs[j];
        mecs.push_back({{"id", j + 1},
                        {"etpb", m.etpb},
                        {"bytes_per_ue", m.bytes_per_ue},
                        {"capacity", m.capacity}});
    }
    doc["mecs"] = mecs;

    json links = json::array();
    for (const auto& l : s.links) {
        links.push_back(
            {{"upf", l.upf + 1}, {"mec", l.mec + 1}, {"bandwidth_mbps", l.bandwidth_mbps}});
    }
    doc["links"] = links;
    return doc.dump(2) + "\n";
}

void save_scenario(const Scenario& s, const std::filesystem::path& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write " + path.string());
    out << dump_scenario(s);
}

}  // namespace upfmec
