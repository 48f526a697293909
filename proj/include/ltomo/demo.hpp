#pragma once

#include <string>
#include <vector>

#include "ltomo/lstsq.hpp"

namespace ltomo {

/// Built-in reference instance: a 9-point planar domain measured along four
/// directions, with noisy sums and independently verified golden outputs.
/// Used by the `demo` subcommand as the end-to-end correctness gate.
namespace demo {

inline LatticeDomain fixture_domain() {
    return LatticeDomain(2, {{1, 0}, {3, 0}, {0, 1}, {4, 1}, {0, 2}, {4, 2}, {1, 3}, {2, 3}, {3, 3}});
}

inline std::vector<Direction> fixture_directions() {
    return {Direction{{1, 0}}, Direction{{0, 1}}, Direction{{1, -1}}, Direction{{1, 1}}};
}

/// Publication order of the fixture's points; the domain itself stores them
/// lexicographically.
inline std::vector<Point> fixture_point_order() {
    return {{1, 0}, {3, 0}, {0, 1}, {4, 1}, {0, 2}, {4, 2}, {1, 3}, {2, 3}, {3, 3}};
}

/// Measured sums in the fixture's published line order, keyed by direction
/// index and a point on each line.
inline std::vector<KeyedSum> fixture_measurements() {
    auto r = [](const char* s) { return parse_rational(s); };
    return {
        {0, {1, 0}, r("1")},      {0, {0, 1}, r("23/10")}, {0, {0, 2}, r("7/5")},
        {0, {1, 3}, r("1")},      {1, {0, 1}, r("1")},     {1, {1, 0}, r("1")},
        {1, {2, 3}, r("3/2")},    {1, {3, 0}, r("1")},     {1, {4, 1}, r("6/5")},
        {3, {3, 0}, r("1")},      {3, {4, 2}, r("1")},     {3, {1, 0}, r("1")},
        {3, {3, 3}, r("9/10")},   {3, {0, 1}, r("13/10")}, {3, {0, 2}, r("1/2")},
        {2, {0, 1}, r("1")},      {2, {0, 2}, r("6/5")},   {2, {3, 0}, r("3/5")},
        {2, {1, 3}, r("1/2")},    {2, {2, 3}, r("17/10")}, {2, {3, 3}, r("7/10")},
    };
}

inline RatVec fixture_expected_b_star() {
    auto r = [](const char* s) { return parse_rational(s); };
    return {r("891/800"),   r("2457/1600"), r("1019/800"),  r("4361/3200"), r("167/128"),
            r("103/128"),   r("111/128"),   r("103/128"),   r("963/640"),   r("4239/3200"),
            r("859/1600"),  r("1211/1600"), r("1433/3200"), r("287/200"),   r("2511/3200"),
            r("4239/3200"), r("1179/1600"), r("571/1600"),  r("153/3200"),  r("367/200"),
            r("3151/3200")};
}

/// Expected f0 in the publication point order.
inline RatVec fixture_expected_f0() {
    auto r = [](const char* s) { return parse_rational(s); };
    return {r("1211/1600"), r("571/1600"), r("1817/3200"), r("3097/3200"), r("1179/1600"),
            r("859/1600"),  r("153/3200"), r("111/128"),   r("1433/3200")};
}

inline std::size_t fixture_expected_rank() { return 9; }

/// Expected independent-row indices of the incidence matrix in published line
/// order (0-based).
inline std::vector<std::size_t> fixture_expected_basis_rows() {
    return {0, 1, 2, 3, 4, 5, 6, 9, 10};
}

struct Check {
    std::string name;
    bool pass;
    std::string detail;  // first mismatch, when failing
};

struct Report {
    bool pass = true;
    std::vector<Check> checks;

    void add(std::string name, bool ok, std::string detail = "") {
        pass = pass && ok;
        checks.push_back({std::move(name), ok, std::move(detail)});
    }
};

/// Runs the full pipeline on the fixture (in its published row and column
/// order) and compares every output exactly.
inline Report run(const std::vector<KeyedSum>& measurements = fixture_measurements()) {
    Report rep;
    LatticeDomain A = fixture_domain();
    auto S = fixture_directions();
    LineSystem sys = enumerate_lines(A, S);

    // Permutations: published line order -> canonical, published points -> lex.
    std::vector<std::size_t> line_perm;
    for (const auto& ks : measurements) line_perm.push_back(sys.find_line(ks.dir_index, ks.point));
    std::vector<std::size_t> point_perm;
    for (const auto& p : fixture_point_order()) point_perm.push_back(A.index_of(p));

    RationalMatrix B = sys.incidence.select_rows(line_perm).select_cols(point_perm);
    RatVec b(measurements.size());
    for (std::size_t i = 0; i < measurements.size(); ++i) b[i] = measurements[i].sum;

    auto [B1, cols] = select_basis_columns(B);
    auto [B2, rows] = select_basis_rows(B);
    rep.add("rank", cols.size() == fixture_expected_rank(),
            cols.size() == fixture_expected_rank() ? "" : "rank " + std::to_string(cols.size()));
    rep.add("basis rows", rows == fixture_expected_basis_rows());

    RatVec b_star = project_to_range(B1, b);
    RatVec want_b = fixture_expected_b_star();
    bool ok = true;
    std::string detail;
    for (std::size_t i = 0; i < want_b.size() && ok; ++i)
        if (b_star[i] != want_b[i]) {
            ok = false;
            detail = "entry " + std::to_string(i + 1) + ": got " + format_rational(b_star[i]) +
                     ", expected " + format_rational(want_b[i]);
        }
    rep.add("b*", ok, detail);

    RatVec f0 = shortest_preimage(B, B2, rows, b_star);
    RatVec want_f = fixture_expected_f0();
    ok = true;
    detail.clear();
    for (std::size_t i = 0; i < want_f.size() && ok; ++i)
        if (f0[i] != want_f[i]) {
            ok = false;
            detail = "entry " + std::to_string(i + 1) + ": got " + format_rational(f0[i]) +
                     ", expected " + format_rational(want_f[i]);
        }
    rep.add("f0", ok, detail);

    // The canonical-order pipeline must agree with the permuted run.
    Reconstruction rec = reconstruct(A, S, measurements);
    bool agree = rec.rank == cols.size();
    for (std::size_t i = 0; i < line_perm.size() && agree; ++i)
        agree = rec.b_star[line_perm[i]] == b_star[i];
    for (std::size_t i = 0; i < point_perm.size() && agree; ++i)
        agree = rec.f0[point_perm[i]] == f0[i];
    rep.add("canonical-order agreement", agree);
    return rep;
}

}  // namespace demo
}  // namespace ltomo
