#pragma once

#include <string>

#include <json.hpp>

#include "mcf/errors.hpp"
#include "mcf/lefschetz.hpp"

namespace mcf::lefschetz {

// Path-spec JSON:
//   {"type":"circle","basepoint":int,"center":[re,im],"radius":float}
//   {"type":"hermite","basepoint":int,"nodes":[[re,im],...],"tangents":[[re,im],...]}
// Curves close implicitly at the basepoint.
inline MatchingLoop loop_from_json(const nlohmann::json& spec) {
    try {
        const std::string type = spec.at("type").get<std::string>();
        const int basepoint = spec.at("basepoint").get<int>();
        if (type == "circle") {
            const auto c = spec.at("center");
            const Complex center{c.at(0).get<double>(), c.at(1).get<double>()};
            const double radius = spec.at("radius").get<double>();
            const double implied = std::abs(Complex(static_cast<double>(basepoint), 0.0) - center);
            if (std::abs(radius - implied) > 1e-9 * std::max(1.0, implied))
                throw ValidationError("parse", "circle radius does not pass through the basepoint");
            return make_circle_loop(basepoint, center);
        }
        if (type == "hermite") {
            std::vector<Complex> nodes, tangents;
            for (const auto& n : spec.at("nodes"))
                nodes.emplace_back(n.at(0).get<double>(), n.at(1).get<double>());
            for (const auto& n : spec.at("tangents"))
                tangents.emplace_back(n.at(0).get<double>(), n.at(1).get<double>());
            return make_hermite_loop(basepoint, std::move(nodes), std::move(tangents));
        }
        throw ValidationError("parse", "unknown path type: " + type);
    } catch (const nlohmann::json::exception& e) {
        throw ValidationError("parse", std::string("malformed path spec: ") + e.what());
    }
}

inline nlohmann::json loop_to_json(const MatchingLoop& loop) {
    nlohmann::json j;
    j["basepoint"] = loop.basepoint;
    if (loop.is_circle) {
        j["type"] = "circle";
        j["center"] = {loop.center.real(), loop.center.imag()};
        j["radius"] = std::abs(Complex(static_cast<double>(loop.basepoint), 0.0) - loop.center);
    } else {
        j["type"] = "hermite";
        auto pts = nlohmann::json::array();
        for (const auto& n : loop.nodes) pts.push_back({n.real(), n.imag()});
        j["nodes"] = pts;
        auto tans = nlohmann::json::array();
        for (const auto& n : loop.tangents) tans.push_back({n.real(), n.imag()});
        j["tangents"] = tans;
    }
    return j;
}

} // namespace mcf::lefschetz
