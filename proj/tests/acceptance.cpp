// Acceptance gate: one pass/fail line per criterion, nonzero exit on failure.

#include <chrono>
#include <cstdio>
#include <functional>
#include <string>

#include "ltomo/convex.hpp"
#include "ltomo/demo.hpp"
#include "ltomo/rounding.hpp"
#include "ltomo/switching.hpp"
#include "test_util.hpp"

using namespace ltomo;

namespace {

struct Gate {
    int failures = 0;

    void run(int num, const std::string& title, const std::function<bool(std::string&)>& body) {
        std::string detail;
        bool ok = false;
        auto start = std::chrono::steady_clock::now();
        try {
            ok = body(detail);
        } catch (const std::exception& e) {
            detail = std::string("exception: ") + e.what();
        }
        double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        std::printf("%s criterion %d: %s (%.2fs)%s%s\n", ok ? "PASS" : "FAIL", num, title.c_str(),
                    secs, detail.empty() ? "" : " - ", detail.c_str());
        if (!ok) ++failures;
    }
};

std::vector<Direction> rand_directions(ltest::Rng& rng, std::size_t k) {
    static const std::vector<Point> pool{{1, 0}, {0, 1}, {1, 1}, {1, -1}, {2, 1}, {1, 2}};
    std::vector<Direction> S;
    std::set<std::size_t> used;
    while (S.size() < k) {
        std::size_t i = ltest::rand_int(rng, 0, pool.size() - 1);
        if (used.insert(i).second) S.push_back(Direction{pool[i]});
    }
    return S;
}

bool check_time(double limit, std::chrono::steady_clock::time_point start, std::string& detail) {
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (secs < limit) return true;
    detail = "time limit " + std::to_string(limit) + "s exceeded";
    return false;
}

// Criterion 1: the reference nine-point instance, exactly.
bool crit_reference(std::string& detail) {
    auto start = std::chrono::steady_clock::now();
    demo::Report rep = demo::run();
    if (!rep.pass) {
        for (const auto& c : rep.checks)
            if (!c.pass) detail = c.name + ": " + c.detail;
        return false;
    }
    return check_time(1.0, start, detail);
}

// Criteria 2 and 3 share the instance stream.
bool crit_oracle(std::string& detail) {
    auto start = std::chrono::steady_clock::now();
    ltest::Rng rng(2024);
    for (int iter = 0; iter < 200; ++iter) {
        LatticeDomain A = ltest::rand_domain2(rng, 3 + iter % 13, 6);
        auto S = rand_directions(rng, 2 + iter % 2);
        LineSystem sys = enumerate_lines(A, S);
        RatVec b(sys.line_count());
        for (auto& v : b) v = ltest::rand_rational(rng, -3, 3);
        Reconstruction rec = reconstruct(A, S, b);
        if (rec.f0 != ltest::oracle_min_norm_lstsq(sys.incidence, b)) {
            detail = "oracle mismatch at instance " + std::to_string(iter);
            return false;
        }
    }
    return check_time(30.0, start, detail);
}

bool crit_certificates(std::string& detail) {
    ltest::Rng rng(2024);  // same stream as criterion 2
    for (int iter = 0; iter < 200; ++iter) {
        LatticeDomain A = ltest::rand_domain2(rng, 3 + iter % 13, 6);
        auto S = rand_directions(rng, 2 + iter % 2);
        LineSystem sys = enumerate_lines(A, S);
        RatVec b(sys.line_count());
        for (auto& v : b) v = ltest::rand_rational(rng, -3, 3);
        Reconstruction rec = reconstruct(A, S, b);
        auto [B1, cols] = select_basis_columns(sys.incidence);
        if (!is_zero(B1.transpose() * (b - rec.b_star))) {
            detail = "residual not orthogonal at instance " + std::to_string(iter);
            return false;
        }
        if (sys.incidence * rec.f0 != rec.b_star) {
            detail = "B f0 != b* at instance " + std::to_string(iter);
            return false;
        }
        // f0 in rowspace(B): orthogonal to every kernel vector of B.
        for (const auto& kv : nullspace(sys.incidence))
            if (dot(rec.f0, kv) != 0) {
                detail = "f0 not in the row space at instance " + std::to_string(iter);
                return false;
            }
    }
    return true;
}

bool crit_convex_agreement(std::string& detail) {
    ltest::Rng rng(4102);
    int done = 0;
    while (done < 100) {
        LatticeDomain A = ltest::rand_convex_domain2(rng, 4, 5);
        std::vector<Direction> S{Direction{{1, 0}}, Direction{{0, 1}}};
        if (done % 2) S.push_back(Direction{{1, 1}});
        LineSystem sys = enumerate_lines(A, S);
        RatVec b(sys.line_count());
        for (auto& v : b) v = ltest::rand_rational(rng, 0, 4);
        if (assemble_and_solve(A, S, b) != reconstruct(A, S, b).f0) {
            detail = "convex system != lstsq on convex domain " + std::to_string(done);
            return false;
        }
        ++done;
    }
    for (int iter = 0; iter < 100; ++iter) {
        RectangleInstance inst;
        inst.p = 1 + ltest::rand_int(rng, 0, 5);
        inst.q = 1 + ltest::rand_int(rng, 0, 5);
        inst.row_sums.resize(inst.p);
        inst.col_sums.resize(inst.q);
        for (auto& v : inst.row_sums) v = ltest::rand_rational(rng, 0, 6);
        for (auto& v : inst.col_sums) v = ltest::rand_rational(rng, 0, 6);
        LatticeDomain A = inst.domain();
        std::vector<Direction> S{Direction{{1, 0}}, Direction{{0, 1}}};
        RatVec b = inst.measured_canonical();
        RatVec closed = rectangle_closed_form(inst);
        if (closed != reconstruct(A, S, b).f0 || closed != assemble_and_solve(A, S, b)) {
            detail = "rectangle triple disagreement at instance " + std::to_string(iter);
            return false;
        }
    }
    return true;
}

bool crit_structure(std::string& detail) {
    ltest::Rng rng(5309);
    std::vector<Direction> S{Direction{{1, 0}}, Direction{{0, 1}}};
    int done = 0;
    while (done < 100) {
        LatticeDomain A = ltest::rand_convex_domain2(rng, 4, 5);
        auto comps = enumerate_components(A, S);
        if (comps.empty()) continue;
        RatVec coeff(comps.size());
        RatVec f(A.size(), Rational(0));
        for (std::size_t c = 0; c < comps.size(); ++c) {
            coeff[c] = ltest::rand_rational(rng, -4, 4, 6);
            for (const auto& [p, w] : comps[c].weights) f[A.index_of(p)] += coeff[c] * Rational(w);
        }
        Decomposition dec = decompose_zero_sum(f, A, S);
        for (std::size_t c = 0; c < comps.size(); ++c)
            if (dec.coefficients.at(comps[c].anchor) != coeff[c]) {
                detail = "decomposition round-trip failed at domain " + std::to_string(done);
                return false;
            }
        // Integer completion with integer corner prescriptions.
        RatVec h(A.size());
        for (auto& v : h) v = Rational(ltest::rand_int(rng, 0, 4));
        std::map<Point, Rational> prescribed;
        for (const auto& c : comps)
            prescribed[c.minimal_corner()] = Rational(ltest::rand_int(rng, -2, 2));
        RatVec g = complete_with_corner_values(h, prescribed, A, S);
        LineSystem sys = enumerate_lines(A, S);
        for (const auto& v : g)
            if (!is_integer(v)) {
                detail = "non-integer completion at domain " + std::to_string(done);
                return false;
            }
        if (line_sums(g, sys) != line_sums(h, sys)) {
            detail = "completion changed line sums at domain " + std::to_string(done);
            return false;
        }
        ++done;
    }
    // The six-point non-convex domain carries a zero-line-sum function yet
    // admits no decomposition; the library must reject it as non-convex.
    LatticeDomain C(2, {{0, 0}, {0, 1}, {1, 0}, {1, 2}, {2, 1}, {2, 2}});
    std::map<Point, Rational> vals{{{0, 0}, 1}, {{0, 1}, -1}, {{1, 0}, -1},
                                   {{1, 2}, 1}, {{2, 1}, 1},  {{2, 2}, -1}};
    RatVec f(C.size());
    for (const auto& [p, v] : vals) f[C.index_of(p)] = v;
    LineSystem sys = enumerate_lines(C, S);
    if (!is_zero(line_sums(f, sys))) {
        detail = "counterexample line sums not zero";
        return false;
    }
    try {
        decompose_zero_sum(f, C, S);
        detail = "non-convex counterexample was not rejected";
        return false;
    } catch (const NotConvex&) {
    }
    return true;
}

bool crit_rounding(std::string& detail) {
    auto start = std::chrono::steady_clock::now();
    ltest::Rng rng(6001);
    std::vector<GreyGrid> grids;
    grids.emplace_back(RatVec{Rational(0), Rational(1)});
    grids.emplace_back(RatVec{Rational(0), Rational(1, 3), Rational(2, 3), Rational(1)});
    for (const auto& grid : grids) {
        Rational z = grid.gap();
        for (std::size_t k = 2; k <= 4; ++k) {
            for (int iter = 0; iter < 1000; ++iter) {
                std::size_t s = 3 + iter % 6;
                RoundingInstance inst;
                inst.targets.resize(s);
                for (auto& t : inst.targets) t = ltest::rand_rational(rng, 0, 1, 9);
                // k random interval partitions of the ground set: every element
                // lies in exactly k sets, so the degree is exactly k.
                for (std::size_t round = 0; round < k; ++round) {
                    std::size_t at = 0;
                    while (at < s) {
                        std::size_t len = 1 + ltest::rand_int(rng, 0, 2);
                        std::vector<std::size_t> set;
                        for (std::size_t i = at; i < std::min(at + len, s); ++i) set.push_back(i);
                        inst.sets.push_back(set);
                        at += len;
                    }
                }
                if (inst.degree() != k) {
                    detail = "instance generator degree drift";
                    return false;
                }
                auto [a, trace] = beck_fiala_round(inst, grid);
                Rational budget = Rational(k - 1) * z;
                for (std::size_t i = 0; i < s; ++i) {
                    if (!grid.contains(a[i]) || abs(a[i] - inst.targets[i]) > z) {
                        detail = "pointwise bound violated";
                        return false;
                    }
                    Rational lo = std::min(a[i], inst.targets[i]);
                    Rational hi = std::max(a[i], inst.targets[i]);
                    for (const auto& lv : grid.levels())
                        if (lo < lv && lv < hi) {
                            detail = "neighbor property violated";
                            return false;
                        }
                }
                for (const auto& e : inst.sets) {
                    Rational dev = 0;
                    for (auto i : e) dev += a[i] - inst.targets[i];
                    if (abs(dev) > budget) {
                        detail = "set discrepancy above (k-1)z";
                        return false;
                    }
                }
            }
        }
    }
    return check_time(60.0, start, detail);
}

bool crit_matrix(std::string& detail) {
    ltest::Rng rng(7013);
    for (int iter = 0; iter < 1000; ++iter) {
        std::size_t p = 1 + iter % 6, q = 1 + (iter / 5) % 6;
        RationalMatrix h(p, q);
        for (std::size_t i = 0; i < p; ++i)
            for (std::size_t j = 0; j < q; ++j) h(i, j) = ltest::rand_rational(rng, 0, 4, 9);
        RationalMatrix f = matrix_round(h);
        Rational rt = 0, ht = 0;
        for (std::size_t i = 0; i < p; ++i) {
            Rational rs = 0, hs = 0;
            for (std::size_t j = 0; j < q; ++j) {
                if (!is_integer(f(i, j)) || abs(f(i, j) - h(i, j)) >= 1) {
                    detail = "entry bound violated at matrix " + std::to_string(iter);
                    return false;
                }
                rs += f(i, j);
                hs += h(i, j);
            }
            if (abs(rs - hs) >= 1) {
                detail = "row bound violated at matrix " + std::to_string(iter);
                return false;
            }
            rt += rs;
            ht += hs;
        }
        for (std::size_t j = 0; j < q; ++j) {
            Rational cs = 0, hs = 0;
            for (std::size_t i = 0; i < p; ++i) {
                cs += f(i, j);
                hs += h(i, j);
            }
            if (abs(cs - hs) >= 1) {
                detail = "column bound violated at matrix " + std::to_string(iter);
                return false;
            }
        }
        if (abs(rt - ht) >= 1) {
            detail = "total bound violated at matrix " + std::to_string(iter);
            return false;
        }
    }
    // Fixed-seed 2x2 fractional instances versus an exhaustive floor/ceil oracle.
    for (std::uint64_t seed : {11u, 22u, 33u, 44u, 55u}) {
        ltest::Rng r2(seed);
        for (int iter = 0; iter < 50; ++iter) {
            RationalMatrix h(2, 2);
            for (std::size_t i = 0; i < 2; ++i)
                for (std::size_t j = 0; j < 2; ++j)
                    h(i, j) = Rational(ltest::rand_int(r2, 1, 9), 10) + ltest::rand_int(r2, 0, 2);
            RationalMatrix f = matrix_round(h);
            bool admissible = false;
            for (int mask = 0; mask < 16 && !admissible; ++mask) {
                RationalMatrix g(2, 2);
                bool match = true;
                for (int c = 0; c < 4; ++c) {
                    std::size_t i = c / 2, j = c % 2;
                    g(i, j) = Rational(floor_int(h(i, j))) + ((mask >> c) & 1);
                    if (g(i, j) != f(i, j)) match = false;
                }
                if (!match) continue;
                bool ok = true;
                Rational tg = 0, th = 0;
                for (std::size_t i = 0; i < 2; ++i)
                    for (std::size_t j = 0; j < 2; ++j) {
                        tg += g(i, j);
                        th += h(i, j);
                    }
                ok = ok && abs(tg - th) < 1;
                for (std::size_t i = 0; i < 2; ++i)
                    ok = ok && abs(g(i, 0) + g(i, 1) - h(i, 0) - h(i, 1)) < 1;
                for (std::size_t j = 0; j < 2; ++j)
                    ok = ok && abs(g(0, j) + g(1, j) - h(0, j) - h(1, j)) < 1;
                admissible = ok;
            }
            if (!admissible) {
                detail = "2x2 output not an admissible floor/ceil pattern";
                return false;
            }
        }
    }
    return true;
}

bool crit_tightness(std::string& detail) {
    const Rational eps(1, 4);
    const std::size_t l = 5;  // l > 1/eps
    RoundingInstance inst;
    inst.targets.assign(l, eps);
    std::vector<std::size_t> column(l);
    for (std::size_t i = 0; i < l; ++i) {
        inst.sets.push_back({i});
        column[i] = i;
    }
    inst.sets.push_back(column);
    GreyGrid grid(RatVec{Rational(0), Rational(1)});
    auto [a, trace] = beck_fiala_round(inst, grid);
    for (std::size_t i = 0; i < l; ++i)
        if (a[i] == 1 && abs(a[i] - eps) == 1 - eps) return true;
    detail = "no entry achieved deviation 1 - eps";
    return false;
}

}  // namespace

int main() {
    Gate gate;
    gate.run(1, "reference instance reproduced exactly", crit_reference);
    gate.run(2, "least-squares oracle equivalence on 200 random instances", crit_oracle);
    gate.run(3, "certificate invariants on the same instances", crit_certificates);
    gate.run(4, "convex system and closed form agree with least squares", crit_convex_agreement);
    gate.run(5, "structure theory round-trips and non-convex rejection", crit_structure);
    gate.run(6, "rounding bounds over 6000 randomized instances", crit_rounding);
    gate.run(7, "matrix rounding bounds and 2x2 oracle agreement", crit_matrix);
    gate.run(8, "tightness witness reaches deviation 1 - eps", crit_tightness);
    return gate.failures == 0 ? 0 : 1;
}
