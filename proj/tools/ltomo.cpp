// Command-line front end: line enumeration, switching components, exact
// least-squares reconstruction, grey-value rounding and verification.

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <optional>

#include "ltomo/convex.hpp"
#include "ltomo/demo.hpp"
#include "ltomo/io.hpp"
#include "ltomo/rounding.hpp"
#include "ltomo/switching.hpp"

namespace {

using namespace ltomo;

// Exit codes: 0 success, 1 usage, 2 I/O or parse error, 3 domain or
// computation error, 4 verification budget violated, 5 demo mismatch.
constexpr int kExitUsage = 1;
constexpr int kExitParse = 2;
constexpr int kExitDomain = 3;
constexpr int kExitVerify = 4;
constexpr int kExitDemo = 5;

std::vector<Direction> parse_directions(const std::vector<std::string>& specs) {
    std::vector<Direction> S;
    for (const auto& spec : specs) {
        Point raw;
        std::istringstream is(spec);
        std::string item;
        while (std::getline(is, item, ',')) raw.push_back(std::stoll(item));
        S.push_back(normalize_direction(raw));
    }
    return S;
}

RatVec parse_sum_list(const std::string& spec) {
    if (!spec.empty() && spec.front() == '[') return ratvec_from_json(json::parse(spec));
    RatVec v;
    std::istringstream is(spec);
    std::string item;
    while (std::getline(is, item, ',')) v.push_back(parse_rational(item));
    return v;
}

void emit(const json& j, const std::string& out_path) {
    if (out_path.empty()) {
        std::cout << j.dump(2) << "\n";
    } else {
        std::ofstream out(out_path);
        if (!out) throw ParseError("cannot write " + out_path);
        out << j.dump(2) << "\n";
    }
}

json line_system_json(const LineSystem& sys) {
    json dirs = json::array();
    for (const auto& d : sys.directions) dirs.push_back(point_json(d.coords));
    json lines = json::array();
    for (const auto& line : sys.lines) {
        json pts = json::array();
        for (auto i : line.point_indices) pts.push_back(point_json(sys.domain.point(i)));
        lines.push_back(json{{"dir", line.direction_index}, {"key", point_json(line.key)}, {"points", pts}});
    }
    return json{{"dim", sys.domain.dim()},
                {"points", domain_json(sys.domain)["points"]},
                {"directions", dirs},
                {"lines", lines}};
}

LineSystem line_system_from_json(const json& j) {
    std::vector<Point> pts;
    for (const auto& pj : j.at("points")) pts.push_back(point_from_json(pj));
    LatticeDomain A(j.at("dim").get<std::size_t>(), std::move(pts));
    std::vector<Direction> S;
    for (const auto& dj : j.at("directions")) S.push_back(Direction{point_from_json(dj)});
    LineSystem sys = enumerate_lines(A, S);
    if (sys.line_count() != j.at("lines").size())
        throw ParseError("line system file disagrees with re-enumeration");
    return sys;
}

void write_csv(const LatticeDomain& A, const RatVec& f, const std::string& path) {
    if (A.dim() != 2) throw DimensionMismatch("CSV export needs a 2-dimensional domain");
    Point lo = A.box_min(), hi = A.box_max();
    std::ofstream out(path);
    if (!out) throw ParseError("cannot write " + path);
    for (std::int64_t y = lo[1]; y <= hi[1]; ++y) {
        for (std::int64_t x = lo[0]; x <= hi[0]; ++x) {
            if (x > lo[0]) out << ',';
            Point p{x, y};
            if (A.contains(p)) out << format_rational(f[A.index_of(p)]);
        }
        out << '\n';
    }
}

struct CommonArgs {
    std::string domain_path;
    std::vector<std::string> dir_specs;

    LatticeDomain domain() const { return load_domain(domain_path); }
    std::vector<Direction> directions() const { return parse_directions(dir_specs); }
};

void add_common(CLI::App* cmd, CommonArgs& args, bool need_dirs = true) {
    cmd->add_option("--domain", args.domain_path, "domain file (JSON or ASCII mask)")->required();
    auto* opt = cmd->add_option("--dir", args.dir_specs, "direction as comma-separated integers (repeatable)");
    if (need_dirs) opt->required();
}

int cmd_lines(const CommonArgs& common, const std::string& out) {
    LineSystem sys = enumerate_lines(common.domain(), common.directions());
    emit(line_system_json(sys), out);
    return 0;
}

int cmd_components(const CommonArgs& common, const std::string& out) {
    auto A = common.domain();
    auto comps = enumerate_components(A, common.directions());
    std::ostringstream os;
    for (const auto& c : comps) {
        json weights = json::array();
        for (const auto& [p, w] : c.weights)
            weights.push_back(json{{"point", point_json(p)}, {"weight", w.convert_to<long long>()}});
        json rec{{"anchor", point_json(c.anchor)},
                 {"corner", point_json(c.minimal_corner())},
                 {"weights", weights}};
        os << rec.dump() << "\n";
    }
    if (out.empty()) {
        std::cout << os.str();
    } else {
        std::ofstream f(out);
        if (!f) throw ParseError("cannot write " + out);
        f << os.str();
    }
    return 0;
}

int cmd_reconstruct(const CommonArgs& common, const std::string& sums_path, const std::string& method,
                    const std::string& rows_spec, const std::string& cols_spec, const std::string& out,
                    const std::string& csv, bool as_float) {
    if (method == "rect") {
        if (rows_spec.empty() || cols_spec.empty())
            throw ParseError("--method rect needs --rows and --cols");
        RectangleInstance inst;
        inst.row_sums = parse_sum_list(rows_spec);
        inst.col_sums = parse_sum_list(cols_spec);
        inst.p = inst.row_sums.size();
        inst.q = inst.col_sums.size();
        RatVec f0 = rectangle_closed_form(inst);
        json j{{"f0", ratvec_json(f0, as_float)}, {"method", "rect"}, {"p", inst.p}, {"q", inst.q}};
        emit(j, out);
        if (!csv.empty()) write_csv(inst.domain(), f0, csv);
        return 0;
    }
    if (common.domain_path.empty() || common.dir_specs.empty() || sums_path.empty())
        throw ParseError("reconstruct needs --domain, --dir and --sums (unless --method rect)");
    auto A = common.domain();
    auto S = common.directions();
    LineSystem sys = enumerate_lines(A, S);
    RatVec b = sums_from_json(load_json_file(sums_path), sys);
    json j;
    RatVec f0;
    if (method == "convex") {
        f0 = assemble_and_solve(A, S, b);
        j = json{{"f0", ratvec_json(f0, as_float)}, {"method", "convex"}};
    } else {
        Reconstruction rec = reconstruct(A, S, b);
        f0 = rec.f0;
        j = json{{"f0", ratvec_json(rec.f0, as_float)},
                 {"b_star", ratvec_json(rec.b_star, as_float)},
                 {"rank", rec.rank},
                 {"basis_rows", rec.basis_rows},
                 {"basis_columns", rec.basis_columns},
                 {"method", "lstsq"}};
    }
    emit(j, out);
    if (!csv.empty()) write_csv(A, f0, csv);
    return 0;
}

int cmd_round(const CommonArgs& common, const std::string& grid_spec, const std::string& values_path,
              const std::string& trace_path, const std::string& out, const std::string& csv,
              bool as_float) {
    auto A = common.domain();
    auto S = common.directions();
    GreyGrid grid(parse_grid_spec(grid_spec));
    RatVec h = values_from_json(load_json_file(values_path));
    if (h.size() != A.size()) throw DimensionMismatch("value count does not match domain size");
    LineSystem sys = enumerate_lines(A, S);
    RatVec clamped = clamp_to_grid_range(h, grid);
    auto [rounded, trace] = beck_fiala_round(line_rounding_instance(clamped, sys), grid);
    json j{{"values", ratvec_json(rounded, as_float)},
           {"budget", format_rational(Rational(S.size() - 1) * grid.gap())}};
    emit(j, out);
    if (!trace_path.empty()) {
        json steps = json::array();
        for (const auto& st : trace.steps)
            steps.push_back(json{{"case", std::string(1, st.case_tag)},
                                 {"frozen", st.frozen},
                                 {"active_before", st.active_before}});
        emit(json{{"steps", steps}}, trace_path);
    }
    if (!csv.empty()) write_csv(A, rounded, csv);
    return 0;
}

int cmd_verify(const std::string& values_path, const std::string& against_path,
               const std::string& system_path, const std::string& grid_spec) {
    LineSystem sys = line_system_from_json(load_json_file(system_path));
    RatVec f = values_from_json(load_json_file(values_path));
    RatVec h = values_from_json(load_json_file(against_path));
    if (f.size() != sys.domain.size() || h.size() != sys.domain.size())
        throw DimensionMismatch("value count does not match domain size");
    GreyGrid grid(parse_grid_spec(grid_spec));
    Rational budget = Rational(sys.directions.size() - 1) * grid.gap();
    RatVec lf = line_sums(f, sys), lh = line_sums(h, sys);
    bool ok = true;
    std::cout << "budget (k-1)z = " << format_rational(budget) << "\n";
    for (std::size_t t = 0; t < sys.line_count(); ++t) {
        Rational dev = abs(lf[t] - lh[t]);
        bool within = dev <= budget;
        ok = ok && within;
        std::cout << "line " << t << " dir " << sys.lines[t].direction_index << " deviation "
                  << format_rational(dev) << (within ? "" : "  VIOLATED") << "\n";
    }
    std::cout << (ok ? "OK" : "FAILED") << "\n";
    return ok ? 0 : kExitVerify;
}

int cmd_demo(bool as_float) {
    auto rep = demo::run();
    for (const auto& c : rep.checks)
        std::cout << (c.pass ? "PASS  " : "FAIL  ") << c.name
                  << (c.detail.empty() ? "" : "  (" + c.detail + ")") << "\n";
    if (as_float) {
        std::cout << "f0 =";
        for (const auto& v : demo::fixture_expected_f0()) std::cout << " " << to_double(v);
        std::cout << "\n";
    }
    return rep.pass ? 0 : kExitDemo;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{
        "Exact reconstruction of lattice functions from noisy line sums, with\n"
        "switching-component analysis and discrepancy-bounded grey-value rounding.\n"
        "Exit codes: 0 ok, 1 usage, 2 parse/I-O, 3 domain error, 4 verification\n"
        "failed, 5 demo mismatch."};
    app.require_subcommand(1);

    CommonArgs common;
    std::string out, csv, sums_path, method = "lstsq", rows_spec, cols_spec;
    std::string grid_spec, values_path, against_path, system_path, trace_path;
    bool as_float = false;

    auto* lines = app.add_subcommand("lines", "enumerate the lines along S meeting the domain");
    add_common(lines, common);
    lines->add_option("--out", out, "output file (default: stdout)");

    auto* components = app.add_subcommand("components", "switching components inside the domain (JSON lines)");
    add_common(components, common);
    components->add_option("--out", out, "output file (default: stdout)");

    auto* rec = app.add_subcommand("reconstruct", "exact least-squares reconstruction");
    rec->add_option("--domain", common.domain_path, "domain file (JSON or ASCII mask)");
    rec->add_option("--dir", common.dir_specs, "direction as comma-separated integers (repeatable)");
    rec->add_option("--sums", sums_path, "measured sums JSON");
    rec->add_option("--method", method, "lstsq | convex | rect")->check(CLI::IsMember({"lstsq", "convex", "rect"}));
    rec->add_option("--rows", rows_spec, "row sums for --method rect");
    rec->add_option("--cols", cols_spec, "column sums for --method rect");
    rec->add_option("--out", out, "output file (default: stdout)");
    rec->add_option("--csv", csv, "also write the 2D result as CSV");
    rec->add_flag("--float", as_float, "render rationals as decimals (display only)");

    auto* round = app.add_subcommand("round", "round values to a grey grid within discrepancy bounds");
    add_common(round, common);
    round->add_option("--grid", grid_spec, "grid levels, e.g. \"0,1/3,2/3,1\"")->required();
    round->add_option("--values", values_path, "values JSON (canonical point order)")->required();
    round->add_option("--trace", trace_path, "write the rounding trace here");
    round->add_option("--out", out, "output file (default: stdout)");
    round->add_option("--csv", csv, "also write the 2D result as CSV");
    round->add_flag("--float", as_float, "render rationals as decimals (display only)");

    auto* verify = app.add_subcommand("verify", "check per-line deviations against the (k-1)z budget");
    verify->add_option("--values", values_path, "rounded values JSON")->required();
    verify->add_option("--against", against_path, "reference values JSON")->required();
    verify->add_option("--system", system_path, "line system JSON (from `lines`)")->required();
    verify->add_option("--grid", grid_spec, "grid levels defining z")->required();

    auto* demo_cmd = app.add_subcommand("demo", "run the built-in reference instance and check golden outputs");
    demo_cmd->add_flag("--float", as_float, "also print f0 as decimals");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? 0 : kExitUsage;
    }

    try {
        if (lines->parsed()) return cmd_lines(common, out);
        if (components->parsed()) return cmd_components(common, out);
        if (rec->parsed())
            return cmd_reconstruct(common, sums_path, method, rows_spec, cols_spec, out, csv, as_float);
        if (round->parsed())
            return cmd_round(common, grid_spec, values_path, trace_path, out, csv, as_float);
        if (verify->parsed()) return cmd_verify(values_path, against_path, system_path, grid_spec);
        if (demo_cmd->parsed()) return cmd_demo(as_float);
    } catch (const ParseError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitParse;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitDomain;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitDomain;
    }
    return kExitUsage;
}
