#pragma once

#include "gradhedge/polyhedron.hpp"
#include "gradhedge/rational.hpp"

#include <json.hpp>

namespace gradhedge::detail {

template <typename T>
T get(const nlohmann::json& j, const char* key) {
    if (!j.is_object() || !j.contains(key)) throw ParseError(std::string("missing field '") + key + "'");
    try {
        return j.at(key).get<T>();
    } catch (const nlohmann::json::exception&) {
        throw ParseError(std::string("field '") + key + "' has the wrong type");
    }
}

inline void check_schema(const nlohmann::json& doc, const char* what) {
    if (!doc.is_object()) throw ParseError(std::string(what) + ": top level must be an object");
    if (doc.contains("schema") && doc["schema"] != 1)
        throw ParseError(std::string(what) + ": unsupported schema version");
}

inline Rational rational_from(const nlohmann::json& j) {
    if (j.is_string()) return parse_rational(j.get<std::string>());
    if (j.is_number_integer()) return Rational(j.get<long long>());
    throw ParseError("expected a \"p/q\" string");
}

inline Vec vec_from(const nlohmann::json& j) {
    if (!j.is_array()) throw ParseError("expected an array of \"p/q\" strings");
    Vec v;
    for (const auto& x : j) v.push_back(rational_from(x));
    return v;
}

inline nlohmann::json to_json(const Rational& r) { return to_string(r); }

inline nlohmann::json to_json(const Vec& v) {
    auto a = nlohmann::json::array();
    for (const auto& x : v) a.push_back(to_string(x));
    return a;
}

inline nlohmann::json to_json(const Halfspace& h) { return {{"a", to_json(h.a)}, {"b", to_string(h.b)}}; }

inline nlohmann::json to_json(const Polyhedron& p) {
    auto a = nlohmann::json::array();
    for (const auto& h : p.halfspaces()) a.push_back(to_json(h));
    return a;
}

}  // namespace gradhedge::detail
