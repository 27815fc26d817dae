#include "icl/report.hpp"

#include <cmath>
#include <sstream>

#include "icl/measures.hpp"
#include "icl/verifier.hpp"

namespace icl {

namespace {

using nlohmann::json;

json partition_json(const Partition& p) {
    json blocks = json::array();
    for (size_t b = 0; b < p.blocks.size(); ++b) {
        json blk = json::array();
        for (const int s : p.blocks[b]) blk.push_back(s + 1);
        blocks.push_back(json{{"label", p.labels[b] + 1}, {"states", std::move(blk)}});
    }
    return blocks;
}

json measure_json(const MeasureReport& m) {
    return json{{"value_bits", m.value_bits}, {"tol", m.tol}, {"verdict", m.verdict}};
}

std::string sig6(double v) {
    std::ostringstream os;
    os.precision(6);
    os << v;
    return os.str();
}

}  // namespace

json analysis_report(const Universe& u, double tol) {
    const JointTable joint = u.joint();
    json rep;
    rep["digest"] = universe_digest(u);
    rep["n"] = u.P.size();

    json stationary = json::array();
    for (int x = 0; x < u.stationary.size(); ++x) stationary.push_back(u.stationary[x]);
    rep["stationary"] = std::move(stationary);
    if (u.stationary.has_exact()) {
        json exact = json::array();
        for (const auto& r : u.stationary.exact()) exact.push_back(r.str());
        rep["stationary_exact"] = std::move(exact);
    }
    rep["stationary_full_support"] = u.stationary.full_support();

    json channels = json::object();
    for (const auto& [name, ch] : u.channels) {
        json cj{{"input_card", ch.input_card()}, {"output_card", ch.output_card()}};
        const auto det = is_deterministic(ch);
        cj["deterministic"] = det.deterministic;
        if (det.deterministic) {
            json map = json::array();
            for (const int y : det.map) map.push_back(y + 1);
            cj["map"] = std::move(map);
        }
        channels[name] = std::move(cj);
    }
    rep["channels"] = std::move(channels);

    const bool two_process = u.find_channel("S") && u.find_channel("M");
    if (two_process) {
        const auto detS = is_deterministic(u.channel_or_throw("S"));
        const auto detM = is_deterministic(u.channel_or_throw("M"));
        if (detS.deterministic && detM.deterministic) {
            const Partition current = u.current_partition();
            const Partition future = u.future_partition();
            rep["partitions"] = json{{"current", partition_json(current)},
                                     {"future", partition_json(future)},
                                     {"relation", to_string(partition_relation(current, future))}};
        }

        json measures;
        for (const std::string y : {"S", "M"}) {
            measures["weak_ic"][y] = measure_json(informational_closure(joint, y, Strength::Weak, tol));
            measures["strong_ic"][y] =
                measure_json(informational_closure(joint, y, Strength::Strong, tol));
        }
        measures["weak_iac"] = measure_json(interaction_closure(joint, "S", "M", Strength::Weak, tol));
        measures["strong_iac"] =
            measure_json(interaction_closure(joint, "S", "M", Strength::Strong, tol));
        measures["transfer_entropy"] = transfer_entropy(joint, "S", "M");
        {
            const std::vector<std::string> a{"M'"}, b{"M"};
            measures["h_zprime_given_z"] = conditional_entropy(joint, a, b);
        }

        const EqualityReport eq = interaction_equalities(joint, "S", "M");
        measures["equalities"] = json{{"i_zprime_y", eq.i_zprime_y},
                                      {"i_zprime_x", eq.i_zprime_x},
                                      {"i_zprime_xprime", eq.i_zprime_xprime},
                                      {"equal", eq.equal},
                                      {"tol", eq.tol}};

        const PerfectControlReport pc = is_perfect_apparent_control(joint, "S", "M");
        json witnesses = json::array();
        for (const auto& w : pc.witnesses)
            witnesses.push_back(json{{"z", w.z + 1}, {"z_next", w.z_next + 1}, {"y", w.y + 1}});
        measures["perfect_control"] = json{{"verdict", pc.perfect}, {"witnesses", std::move(witnesses)}};
        rep["measures"] = std::move(measures);

        json verification = json::array();
        for (const VerificationReport& v : run_all_verifiers(u))
            verification.push_back(json{{"verifier", v.verifier}, {"pass", v.pass}});
        rep["verification"] = std::move(verification);
    }

    json prov;
    if (u.provenance.build_spec) prov["build_spec"] = *u.provenance.build_spec;
    if (u.provenance.seed) prov["seed"] = *u.provenance.seed;
    if (u.provenance.input_echo) prov["input"] = *u.provenance.input_echo;
    if (!prov.is_null()) rep["provenance"] = std::move(prov);
    return rep;
}

std::string pretty_report(const json& rep) {
    std::ostringstream os;
    os << "universe " << rep.value("digest", std::string("?")) << "  (n = " << rep.value("n", 0)
       << ")\n";

    if (rep.contains("stationary")) {
        os << "stationary:";
        for (const auto& v : rep["stationary"]) os << " " << sig6(v.get<double>());
        os << "\n";
    }
    if (rep.contains("channels")) {
        for (const auto& [name, cj] : rep["channels"].items()) {
            os << "channel " << name << ": ";
            if (cj.value("deterministic", false)) {
                os << "f = (";
                bool first = true;
                for (const auto& y : cj["map"]) {
                    if (!first) os << ", ";
                    os << y.get<int>();
                    first = false;
                }
                os << ")";
            } else {
                os << "stochastic, " << cj.value("output_card", 0) << " outputs";
            }
            os << "\n";
        }
    }
    if (rep.contains("partitions")) {
        const auto render = [&](const json& blocks) {
            std::string out;
            for (const auto& blk : blocks) {
                if (!out.empty()) out += " | ";
                out += "{";
                bool first = true;
                for (const auto& s : blk["states"]) {
                    if (!first) out += ",";
                    out += std::to_string(s.get<int>());
                    first = false;
                }
                out += "}";
            }
            return out;
        };
        os << "current partition: " << render(rep["partitions"]["current"]) << "\n";
        os << "future  partition: " << render(rep["partitions"]["future"]) << "\n";
        os << "relation: " << rep["partitions"].value("relation", std::string("?")) << "\n";
    }
    if (rep.contains("measures")) {
        const auto& m = rep["measures"];
        const auto line = [&](const char* label, const json& mj) {
            os << "  " << label << " = " << sig6(mj["value_bits"].get<double>())
               << (mj["verdict"].get<bool>() ? "  [= 0]" : "") << "\n";
        };
        os << "measures (bits):\n";
        for (const auto& [y, mj] : m["weak_ic"].items()) line(("weak ic " + y).c_str(), mj);
        for (const auto& [y, mj] : m["strong_ic"].items()) line(("strong ic " + y).c_str(), mj);
        line("weak iac S->M", m["weak_iac"]);
        line("strong iac S->M", m["strong_iac"]);
        os << "  transfer entropy S->M = " << sig6(m["transfer_entropy"].get<double>()) << "\n";
        os << "  H(M'|M) = " << sig6(m["h_zprime_given_z"].get<double>()) << "\n";
        os << "  perfect apparent control: "
           << (m["perfect_control"]["verdict"].get<bool>() ? "yes" : "no") << "\n";
    }
    if (rep.contains("verification")) {
        os << "verification:";
        for (const auto& v : rep["verification"])
            os << " " << v["verifier"].get<std::string>() << (v["pass"].get<bool>() ? "=pass" : "=FAIL");
        os << "\n";
    }
    return os.str();
}

}  // namespace icl
