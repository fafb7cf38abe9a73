#pragma once

#include "lefschetz/transfer.hpp"

#include <json.hpp>

namespace lefschetz::io {

using nlohmann::json;

inline constexpr const char* engine_version = "lefschetz-1.0.0";

struct InputError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// Rationals travel as strings "p/q" (or integers).
inline Rational rational_from(const json& j) {
    try {
        if (j.is_number_integer()) return Rational(j.get<long>());
        if (j.is_string()) return parse_rational(j.get<std::string>());
    } catch (const std::exception&) {
    }
    throw InputError("expected a rational, got " + j.dump());
}

inline json to_json(const Rational& q) { return to_string(q); }

inline json to_json(const RationalVector& v) {
    json out = json::array();
    for (auto& x : v) out.push_back(to_json(x));
    return out;
}

inline RationalVector vector_from(const json& j) {
    if (!j.is_array()) throw InputError("expected an array of rationals, got " + j.dump());
    RationalVector out;
    for (auto& x : j) out.push_back(rational_from(x));
    return out;
}

inline json to_json(const Segment& s) { return json::array({to_json(s.a), to_json(s.b)}); }

inline json to_json(const Multisegment& ms) {
    json out = json::array();
    for (auto& s : ms.segments()) out.push_back(to_json(s));
    return out;
}

inline Multisegment multisegment_from(const json& j) {
    if (!j.is_array()) throw InputError("expected a multisegment (array of [a,b]), got " + j.dump());
    std::vector<Segment> segs;
    for (auto& s : j) {
        auto ends = vector_from(s);
        if (ends.size() != 2) throw InputError("segment needs two endpoints: " + s.dump());
        try {
            segs.emplace_back(ends[0], ends[1]);
        } catch (const ContractViolation& e) {
            throw InputError(std::string(e.what()) + ": " + s.dump());
        }
    }
    return Multisegment(std::move(segs));
}

// {"left": [...], "right": [...]}
inline GLParam param_from(const json& j) {
    if (!j.is_object() || !j.contains("left") || !j.contains("right"))
        throw InputError("expected {\"left\": [...], \"right\": [...]}, got " + j.dump());
    try {
        return GLParam(vector_from(j.at("left")), vector_from(j.at("right")));
    } catch (const ContractViolation& e) {
        throw InputError(e.what());
    }
}

inline json to_json(const GLParam& p) { return {{"left", to_json(p.left)}, {"right", to_json(p.right)}}; }

inline Partition partition_from(const json& j) {
    if (!j.is_array()) throw InputError("expected a partition, got " + j.dump());
    try {
        return Partition(j.get<std::vector<int>>());
    } catch (const ContractViolation& e) {
        throw InputError(e.what());
    }
}

inline std::string partition_str(const Partition& p) {
    std::string out = "(";
    for (std::size_t i = 0; i < p.parts.size(); ++i) out += (i ? "," : "") + std::to_string(p.parts[i]);
    return out + ")";
}

inline json to_json(const Matrix& a) {
    json rows = json::array();
    for (std::size_t i = 0; i < a.rows(); ++i) rows.push_back(to_json(a.row(i)));
    return rows;
}

inline json to_json(const HeckeModule& p) {
    json s = json::array(), y = json::array();
    for (auto& x : p.s) s.push_back(to_json(x));
    for (auto& x : p.y) y.push_back(to_json(x));
    return {{"m", p.m}, {"dim", p.dim}, {"s", s}, {"y", y}, {"label", p.label}};
}

inline HeckeModule module_from(const json& j) {
    auto matrix_from = [](const json& rows, std::size_t d) {
        Matrix a(d, d);
        if (!rows.is_array() || rows.size() != d) throw InputError("matrix with wrong row count");
        for (std::size_t i = 0; i < d; ++i) {
            auto r = vector_from(rows[i]);
            if (r.size() != d) throw InputError("matrix with wrong column count");
            for (std::size_t c = 0; c < d; ++c) a(i, c) = r[c];
        }
        return a;
    };
    HeckeModule p;
    try {
        p.m = j.at("m").get<std::size_t>();
        p.dim = j.at("dim").get<std::size_t>();
        p.label = j.value("label", std::string("input"));
        for (auto& x : j.at("s")) p.s.push_back(matrix_from(x, p.dim));
        for (auto& x : j.at("y")) p.y.push_back(matrix_from(x, p.dim));
    } catch (const json::exception& e) {
        throw InputError(e.what());
    }
    return p;
}

inline json to_json(const std::map<Partition, long>& character) {
    json out = json::object();
    for (auto& [alpha, k] : character) out[partition_str(alpha)] = k;
    return out;
}

inline json to_json(const CompositionTable& t) {
    json out = json::array();
    for (auto& [ms, k] : t) out.push_back({{"multisegment", to_json(ms)}, {"label", ms.str()}, {"multiplicity", k}});
    return out;
}

inline json to_json(const TransferResult& r) {
    json out = {{"zero", r.zero()}};
    out["multisegment"] = r.multisegment ? to_json(*r.multisegment) : json(nullptr);
    out["module_ref"] = r.module ? json(r.module->label) : json(nullptr);
    return out;
}

}  // namespace lefschetz::io
