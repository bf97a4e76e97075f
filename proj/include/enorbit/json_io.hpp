#pragma once

#include <json.hpp>

#include "enorbit/oracle.hpp"

namespace enorbit {

using json = nlohmann::json;

// Scalars serialize as strings "p/q" (or "p"); quadratic values as {a, b, d}.
// Matrices are row-major nested arrays, vectors flat arrays.

inline json to_json(const Scalar& s) {
    if (s.is_rational()) return rational_to_string(s.rat());
    return json{{"a", rational_to_string(s.a())},
                {"b", rational_to_string(s.b())},
                {"d", s.d()}};
}

inline Scalar scalar_from_json(const json& j) {
    if (j.is_string()) return Scalar(rational_from_string(j.get<std::string>()));
    if (j.is_number_integer()) return Scalar(Rational(j.get<long long>()));
    if (j.is_object()) {
        if (!j.contains("a") || !j.contains("b") || !j.contains("d"))
            fail(errc::parse_error, "quadratic scalar needs fields a, b, d");
        return Scalar::quadratic(rational_from_string(j.at("a").get<std::string>()),
                                 rational_from_string(j.at("b").get<std::string>()),
                                 j.at("d").get<std::int64_t>());
    }
    fail(errc::parse_error, "scalar must be a string, integer, or {a,b,d} object");
}

inline json to_json(const Mat& m) {
    json rows = json::array();
    for (std::size_t i = 0; i < m.rows(); ++i) {
        json row = json::array();
        for (std::size_t j = 0; j < m.cols(); ++j) row.push_back(to_json(m(i, j)));
        rows.push_back(std::move(row));
    }
    return rows;
}

inline Mat mat_from_json(const json& j) {
    if (!j.is_array()) fail(errc::parse_error, "matrix must be an array of rows");
    const std::size_t r = j.size();
    const std::size_t c = r == 0 ? 0 : (j[0].is_array() ? j[0].size() : 0);
    Mat m(r, c);
    for (std::size_t i = 0; i < r; ++i) {
        if (!j[i].is_array() || j[i].size() != c)
            fail(errc::parse_error, "matrix rows must be arrays of equal length");
        for (std::size_t k = 0; k < c; ++k) m(i, k) = scalar_from_json(j[i][k]);
    }
    return m;
}

inline json column_to_json(const Mat& m) {
    json a = json::array();
    for (std::size_t i = 0; i < m.rows(); ++i) a.push_back(to_json(m(i, 0)));
    return a;
}

inline Mat column_from_json(const json& j) {
    if (!j.is_array()) fail(errc::parse_error, "vector must be an array");
    Mat m(j.size(), 1);
    for (std::size_t i = 0; i < j.size(); ++i) m(i, 0) = scalar_from_json(j[i]);
    return m;
}

inline json row_to_json(const Mat& m) {
    json a = json::array();
    for (std::size_t i = 0; i < m.cols(); ++i) a.push_back(to_json(m(0, i)));
    return a;
}

inline Mat row_from_json(const json& j) {
    if (!j.is_array()) fail(errc::parse_error, "vector must be an array");
    Mat m(1, j.size());
    for (std::size_t i = 0; i < j.size(); ++i) m(0, i) = scalar_from_json(j[i]);
    return m;
}

inline GroupKind kind_from_string(const std::string& s) {
    if (s == "gl") return GroupKind::GL;
    if (s == "sp") return GroupKind::SP;
    if (s == "oodd") return GroupKind::OODD;
    if (s == "oeven") return GroupKind::OEVEN;
    if (s == "gram") return GroupKind::GRAM;
    fail(errc::parse_error, "unknown group kind '" + s + "'");
}

inline json to_json(const GroupDescriptor& d) {
    if (d.kind == GroupKind::GRAM)
        return json{{"kind", "gram"}, {"B", to_json(d.gram)}};
    return json{{"kind", kind_name(d.kind)}, {"rank", d.n}};
}

inline GroupDescriptor group_from_json(const json& j) {
    if (!j.is_object() || !j.contains("kind"))
        fail(errc::parse_error, "group descriptor needs a kind");
    const GroupKind kind = kind_from_string(j.at("kind").get<std::string>());
    if (kind == GroupKind::GRAM) {
        if (!j.contains("B")) fail(errc::parse_error, "gram descriptor needs the matrix B");
        return GroupDescriptor::from_gram(mat_from_json(j.at("B")));
    }
    if (!j.contains("rank")) fail(errc::parse_error, "group descriptor needs a rank");
    const std::size_t n = j.at("rank").get<std::size_t>();
    switch (kind) {
        case GroupKind::GL: return GroupDescriptor::gl(n);
        case GroupKind::SP: return GroupDescriptor::sp(n);
        case GroupKind::OODD: return GroupDescriptor::o_odd(n);
        case GroupKind::OEVEN: return GroupDescriptor::o_even(n);
        case GroupKind::GRAM: break;
    }
    fail(errc::internal, "bad kind");
}

inline json to_json(const EnhancedPoint& p) {
    json j{{"group", to_json(p.group)}, {"X", to_json(p.X)}, {"u", column_to_json(p.u)}};
    if (p.group.kind == GroupKind::GL) j["v"] = row_to_json(p.v);
    return j;
}

// The group may come from the JSON itself or from the surrounding context
// (CLI flags); an explicit "group" key wins.
inline EnhancedPoint point_from_json(const json& j,
                                     const std::optional<GroupDescriptor>& fallback = {}) {
    if (!j.is_object()) fail(errc::parse_error, "point must be an object");
    std::optional<GroupDescriptor> g = fallback;
    if (j.contains("group")) g = group_from_json(j.at("group"));
    if (!g) fail(errc::parse_error, "no group descriptor given for the point");
    if (!j.contains("X") || !j.contains("u")) fail(errc::parse_error, "point needs X and u");
    Mat x = mat_from_json(j.at("X"));
    Mat u = column_from_json(j.at("u"));
    Mat v;
    if (g->kind == GroupKind::GL) {
        if (!j.contains("v")) fail(errc::parse_error, "GL points need the row vector v");
        v = row_from_json(j.at("v"));
    } else if (j.contains("v")) {
        fail(errc::parse_error, "v is only present for GL points");
    }
    return make_point(*g, std::move(x), std::move(u), std::move(v));
}

inline json to_json(const MvwElement& e) {
    return json{{"g", to_json(e.g)}, {"delta", e.delta}};
}

inline MvwElement mvw_from_json(const json& j) {
    if (!j.is_object() || !j.contains("g") || !j.contains("delta"))
        fail(errc::parse_error, "MVW element needs g and delta");
    const int delta = j.at("delta").get<int>();
    if (delta != 1 && delta != -1) fail(errc::parse_error, "delta must be 1 or -1");
    return {mat_from_json(j.at("g")), delta};
}

inline json to_json(const InvariantVector& iv) {
    json traces = json::array(), pairings = json::array();
    for (const auto& t : iv.traces) traces.push_back(to_json(t));
    for (const auto& t : iv.pairings) pairings.push_back(to_json(t));
    return json{{"kind", kind_name(iv.kind)},
                {"rank", iv.rank},
                {"traces", std::move(traces)},
                {"pairings", std::move(pairings)}};
}

inline InvariantVector invariants_from_json(const json& j,
                                            const std::optional<GroupDescriptor>& fallback = {}) {
    if (!j.is_object()) fail(errc::parse_error, "invariant vector must be an object");
    InvariantVector iv;
    if (j.contains("kind")) {
        iv.kind = kind_from_string(j.at("kind").get<std::string>());
        if (!j.contains("rank")) fail(errc::parse_error, "invariant vector needs a rank");
        iv.rank = j.at("rank").get<std::size_t>();
    } else if (fallback) {
        iv.kind = fallback->kind;
        iv.rank = fallback->rank();
    } else {
        fail(errc::parse_error, "no group kind given for the invariant vector");
    }
    if (!j.contains("traces") || !j.contains("pairings"))
        fail(errc::parse_error, "invariant vector needs traces and pairings");
    for (const auto& t : j.at("traces")) iv.traces.push_back(scalar_from_json(t));
    for (const auto& t : j.at("pairings")) iv.pairings.push_back(scalar_from_json(t));
    return iv;
}

inline json to_json(const NilpotentSeed& s) {
    json coeffs = json::array();
    for (const auto& c : s.coeffs) coeffs.push_back(to_json(c));
    return json{{"kind", kind_name(s.kind)}, {"rank", s.n}, {"k", s.k}, {"coeffs", coeffs}};
}

inline NilpotentSeed nilpotent_seed_from_json(const json& j) {
    if (!j.is_object() || !j.contains("kind") || !j.contains("rank") || !j.contains("k") ||
        !j.contains("coeffs"))
        fail(errc::parse_error, "seed needs kind, rank, k, coeffs");
    NilpotentSeed s;
    s.kind = kind_from_string(j.at("kind").get<std::string>());
    s.n = j.at("rank").get<std::size_t>();
    s.k = j.at("k").get<std::size_t>();
    for (const auto& c : j.at("coeffs")) s.coeffs.push_back(scalar_from_json(c));
    s.validate();
    return s;
}

inline json to_json(const ClosedSeed& s) {
    json blocks = json::array();
    for (const auto& b : s.blocks)
        blocks.push_back(json{{"c", rational_to_string(b.c)}, {"seed", to_json(b.gl)}});
    json j{{"kind", kind_name(s.kind)}, {"rank", s.n}, {"blocks", std::move(blocks)}};
    if (s.zero) j["zero"] = to_json(*s.zero);
    return j;
}

inline ClosedSeed closed_seed_from_json(const json& j) {
    if (!j.is_object() || !j.contains("kind") || !j.contains("rank"))
        fail(errc::parse_error, "closed seed needs kind and rank");
    ClosedSeed s;
    s.kind = kind_from_string(j.at("kind").get<std::string>());
    s.n = j.at("rank").get<std::size_t>();
    if (j.contains("zero")) s.zero = nilpotent_seed_from_json(j.at("zero"));
    if (j.contains("blocks"))
        for (const auto& b : j.at("blocks")) {
            if (!b.contains("c") || !b.contains("seed"))
                fail(errc::parse_error, "eigen-block needs c and seed");
            EigenBlock eb;
            eb.c = rational_from_string(b.at("c").get<std::string>());
            eb.gl = nilpotent_seed_from_json(b.at("seed"));
            s.blocks.push_back(std::move(eb));
        }
    s.validate();
    return s;
}

inline json to_json(const StabFactor& f) {
    return json{{"kind", kind_name(f.kind)}, {"rank", f.rank}};
}

inline json to_json(const ClassificationReport& r) {
    json parts = json::array();
    for (const auto& p : r.gl_parts)
        parts.push_back(json{{"c", rational_to_string(p.c)}, {"n", p.n}, {"k", p.k}});
    json predicted = json::array();
    for (const auto& f : r.predicted) predicted.push_back(to_json(f));
    return json{{"closed", r.closed},
                {"kappa0", r.kappa0},
                {"sphere", r.sphere},
                {"gl_parts", std::move(parts)},
                {"predicted_stabilizer", {{"factors", std::move(predicted)},
                                          {"dim", r.predicted_stab_dim}}},
                {"stabilizer_dim", r.stabilizer_dim},
                {"orbit_dim", r.orbit_dim},
                {"fiber_min_dim", r.fiber_min_dim}};
}

inline json to_json(const DescendantReport& r) {
    json factors = json::array();
    for (const auto& f : r.h_factors) factors.push_back(to_json(f));
    return json{{"h_factors", std::move(factors)},
                {"mult_k", r.mult_k},
                {"gamma", r.gamma},
                {"h_enhanced_dim", r.h_enhanced_dim},
                {"normal_dim", r.normal_dim},
                {"mvw_witness", r.mvw_witness}};
}

inline json to_json(const SuiteReport& r) {
    json fails = json::array();
    for (const auto& f : r.failures) fails.push_back(f);
    return json{{"cases", r.cases},
                {"failures", std::move(fails)},
                {"passed", r.passed()},
                {"millis", r.millis}};
}

} // namespace enorbit
