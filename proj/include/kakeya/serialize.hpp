#pragma once

#include <stdexcept>

#include <json.hpp>

#include "geometry.hpp"

namespace kakeya {

/// Shared point-set wire format: {"geometry": {"n", "p", "t"}, "indices":
/// sorted list} over the points of PG(n, p^t).
inline nlohmann::json point_set_to_json(const PointSet& s) {
    nlohmann::json j;
    j["geometry"] = {{"n", s.geom().n}, {"p", s.geom().p}, {"t", s.geom().t}};
    j["indices"] = s.indices();
    return j;
}

inline long long projective_point_count(const GeomId& g) {
    long long q = 1;
    for (int i = 0; i < g.t; ++i) q *= g.p;
    long long theta = 0, pw = 1;
    for (int i = 0; i <= g.n; ++i) {
        theta += pw;
        pw *= q;
    }
    return theta;
}

inline PointSet point_set_from_json(const nlohmann::json& j) {
    if (!j.contains("geometry") || !j.contains("indices"))
        throw std::invalid_argument("point set JSON needs 'geometry' and 'indices'");
    const auto& g = j.at("geometry");
    GeomId geom{g.at("n").get<int>(), g.at("p").get<int>(), g.at("t").get<int>()};
    if (geom.n < 1 || geom.p < 2 || geom.t < 1)
        throw std::invalid_argument("point set JSON: bad geometry");
    const long long universe = projective_point_count(geom);
    if (universe > 2'000'000) throw std::invalid_argument("point set JSON: geometry too large");
    const auto idx = j.at("indices").get<std::vector<int>>();
    for (int i : idx)
        if (i < 0 || i >= universe)
            throw std::invalid_argument("point set JSON: index outside the geometry");
    return PointSet::from_indices(geom, static_cast<int>(universe), idx);
}

}  // namespace kakeya
