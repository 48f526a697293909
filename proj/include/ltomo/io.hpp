#pragma once

#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "ltomo/errors.hpp"
#include "ltomo/lattice.hpp"
#include "ltomo/linesum.hpp"

namespace ltomo {

using nlohmann::json;

inline json rational_json(const Rational& r) { return json(format_rational(r)); }

inline Rational rational_from_json(const json& j) {
    if (j.is_string()) return parse_rational(j.get<std::string>());
    if (j.is_number_integer()) return Rational(j.get<long long>());
    if (j.is_number_float()) {
        // Decimals go through their printed form so parsing stays exact.
        std::ostringstream os;
        os << j;
        return parse_rational(os.str());
    }
    throw ParseError("expected a rational value");
}

inline Point point_from_json(const json& j) {
    if (!j.is_array()) throw ParseError("expected a coordinate array");
    Point p;
    for (const auto& c : j) p.push_back(c.get<std::int64_t>());
    return p;
}

inline json point_json(const Point& p) { return json(p); }

/// {"dim": n, "points": [[x1,...,xn], ...]}; points may arrive unordered.
inline LatticeDomain domain_from_json(const json& j) {
    if (!j.contains("dim") || !j.contains("points")) throw ParseError("domain needs 'dim' and 'points'");
    std::vector<Point> pts;
    for (const auto& pj : j["points"]) pts.push_back(point_from_json(pj));
    return LatticeDomain(j["dim"].get<std::size_t>(), std::move(pts));
}

inline json domain_json(const LatticeDomain& A) {
    json pts = json::array();
    for (const auto& p : A.points()) pts.push_back(point_json(p));
    return json{{"dim", A.dim()}, {"points", pts}};
}

/// ASCII mask: '#' marks a point, '.' (or space) empty; row r, column c maps
/// to the point (c, r).
inline LatticeDomain domain_from_mask(const std::string& text) {
    std::vector<Point> pts;
    std::int64_t row = 0;
    std::istringstream is(text);
    std::string line;
    while (std::getline(is, line)) {
        for (std::int64_t col = 0; col < static_cast<std::int64_t>(line.size()); ++col) {
            char ch = line[col];
            if (ch == '#') pts.push_back({col, row});
            else if (ch != '.' && ch != ' ' && ch != '\r')
                throw ParseError("mask may only contain '#', '.' and spaces");
        }
        ++row;
    }
    return LatticeDomain(2, std::move(pts));
}

/// Measured sums: either keyed records [{"dir": i, "point": [...], "sum": "p/q"}]
/// or a plain array of rationals in canonical line order.
inline RatVec sums_from_json(const json& j, const LineSystem& sys) {
    if (!j.is_array()) throw ParseError("sums must be an array");
    if (!j.empty() && j.front().is_object()) {
        std::vector<KeyedSum> keyed;
        for (const auto& rec : j)
            keyed.push_back(KeyedSum{rec.at("dir").get<std::size_t>(), point_from_json(rec.at("point")),
                                     rational_from_json(rec.at("sum"))});
        return resolve_keyed_sums(sys, keyed);
    }
    RatVec b;
    for (const auto& v : j) b.push_back(rational_from_json(v));
    if (b.size() != sys.line_count()) throw MissingLine("sum count does not match line count");
    return b;
}

inline json ratvec_json(const RatVec& v, bool as_float = false) {
    json out = json::array();
    for (const auto& r : v) {
        if (as_float) out.push_back(to_double(r));
        else out.push_back(format_rational(r));
    }
    return out;
}

inline RatVec ratvec_from_json(const json& j) {
    RatVec v;
    for (const auto& e : j) v.push_back(rational_from_json(e));
    return v;
}

/// Function values: either a plain array aligned with the domain's
/// lexicographic point order, or an object carrying one under "values"/"f0".
inline RatVec values_from_json(const json& j) {
    if (j.is_array()) return ratvec_from_json(j);
    if (j.is_object()) {
        if (j.contains("values")) return ratvec_from_json(j["values"]);
        if (j.contains("f0")) return ratvec_from_json(j["f0"]);
    }
    throw ParseError("expected an array of values (or {'values': [...]})");
}

inline json load_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open " + path);
    try {
        return json::parse(in);
    } catch (const json::parse_error& e) {
        throw ParseError(path + ": " + e.what());
    }
}

inline std::string read_text_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open " + path);
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

/// Domain files may be JSON or an ASCII mask; masks never start with '{'.
inline LatticeDomain load_domain(const std::string& path) {
    std::string text = read_text_file(path);
    auto first = text.find_first_not_of(" \t\r\n");
    if (first != std::string::npos && text[first] == '{') return domain_from_json(json::parse(text));
    return domain_from_mask(text);
}

/// "0,1/3,2/3,1" -> levels; levels are sorted by the GreyGrid invariant check.
inline RatVec parse_grid_spec(const std::string& spec) {
    RatVec levels;
    std::istringstream is(spec);
    std::string item;
    while (std::getline(is, item, ',')) levels.push_back(parse_rational(item));
    return levels;
}

}  // namespace ltomo
