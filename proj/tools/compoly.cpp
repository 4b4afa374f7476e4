// Command-line front end: composition polynomial reports, the exhaustive
// sweep, interpolation / linear-extension checks, and the geometry demos.
//
// Exit codes: 0 all requested checks pass, 1 a check failed, 2 usage error.

#include <CLI11.hpp>
#include <json.hpp>

#include <compoly/chain_poset.hpp>
#include <compoly/composition.hpp>
#include <compoly/genperm.hpp>
#include <compoly/interp.hpp>
#include <compoly/nesto.hpp>
#include <compoly/sweep.hpp>

#include <fstream>
#include <iostream>
#include <thread>

using nlohmann::json;
using namespace compoly;

namespace {

struct Options {
    std::string format = "json";
    std::string output;
};

std::ostream& open_output(const Options& opt, std::ofstream& file) {
    if (opt.output.empty()) return std::cout;
    file.open(opt.output);
    if (!file) throw std::invalid_argument("cannot open output file " + opt.output);
    return file;
}

std::string flat(const json& j) {
    if (j.is_array()) {
        std::string s;
        for (const auto& e : j) {
            if (!s.empty()) s += ' ';
            s += flat(e);
        }
        return s;
    }
    if (j.is_string()) return j.get<std::string>();
    return j.dump();
}

// json report, or key,value lines under --format csv
void emit(const json& report, const Options& opt) {
    std::ofstream file;
    auto& os = open_output(opt, file);
    if (opt.format == "csv") {
        for (const auto& [key, val] : report.items()) {
            if (val.is_object()) {
                for (const auto& [k2, v2] : val.items())
                    os << key << '.' << k2 << ',' << flat(v2) << '\n';
            } else {
                os << key << ',' << flat(val) << '\n';
            }
        }
    } else {
        os << report.dump(2) << '\n';
    }
}

json poly_json(const Poly& p) { return p.to_json(); }

json read_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot read " + path);
    return json::parse(in);
}

int cmd_gc(const std::string& comp, const std::string& method, const Options& opt) {
    auto c = Composition::parse(comp);
    json report{{"composition", comp}, {"k", c.length()}, {"n", c.size()}};
    bool ok = true;
    Poly g;
    if (method == "closed") {
        g = g_closed_form(c);
    } else if (method == "recursive") {
        g = g_recursive(c);
    } else if (method == "integral") {
        g = g_integral(c);
    } else if (method == "all") {
        g = g_closed_form(c);
        bool agree = g == g_recursive(c) && g == g_integral(c);
        report["methods_agree"] = agree;
        ok = ok && agree;
        auto ids = identity_checks(c);
        report["identities"] = {{"reversal", ids.reversal},
                                {"scaling", ids.scaling},
                                {"derivatives", ids.derivatives},
                                {"f_at_one", ids.f_at_one}};
        ok = ok && ids.all();
    } else {
        throw std::invalid_argument("unknown method " + method);
    }
    report["g"] = poly_json(g);
    report["f"] = poly_json(f_reduced(c));
    emit(report, opt);
    return ok ? 0 : 1;
}

int cmd_sweep(unsigned max_parts, unsigned max_part, unsigned jobs, const Options& opt) {
    const bool want_csv = opt.format == "csv" || !opt.output.empty();
    auto res = run_sweep(max_parts, max_part, jobs, want_csv);
    json fails = json::array();
    auto add = [&](const char* kind, const std::vector<std::vector<unsigned>>& list) {
        for (const auto& parts : list) {
            std::string s;
            for (unsigned p : parts) s += (s.empty() ? "" : ",") + std::to_string(p);
            fails.push_back({{"check", kind}, {"composition", s}});
        }
    };
    add("positive", res.positivity_failures);
    add("unimodal", res.unimodality_failures);
    add("logconcave", res.logconcavity_failures);
    json summary{{"total", res.total},
                 {"failures", fails},
                 {"seconds", res.seconds},
                 {"jobs", jobs}};
    if (!opt.output.empty()) {
        std::ofstream file(opt.output);
        if (!file) throw std::invalid_argument("cannot open output file " + opt.output);
        file << res.csv;
        std::cout << summary.dump(2) << '\n';
    } else if (opt.format == "csv") {
        std::cout << res.csv;
        std::cerr << summary.dump(2) << '\n';
    } else {
        std::cout << summary.dump(2) << '\n';
    }
    return res.clean() ? 0 : 1;
}

int cmd_interp(const std::string& comp, const Options& opt) {
    auto c = Composition::parse(comp);
    const unsigned k = c.length();
    Poly expected = g_closed_form(c);
    if (k % 2) expected = expected * Rational(-1);
    bool leading = interpolation_leading_coeff(c) == expected;
    bool shifted = true;
    Poly f = f_reduced(c);
    for (unsigned i = 0; i + k <= c.size(); ++i) {
        Rational want = (k % 2 ? -1 : 1) * f.coeff(i);
        shifted = shifted && shifted_coefficient_interp(c, i) == want;
    }
    std::string head = "a_" + std::to_string(k) + (k % 2 ? " = -g_c" : " = g_c");
    json report{{"composition", comp},
                {"message", head + (leading ? ": OK" : ": MISMATCH")},
                {"leading_coefficient_ok", leading},
                {"shifted_coefficients_ok", shifted}};
    emit(report, opt);
    return leading && shifted ? 0 : 1;
}

int cmd_linext(const std::string& comp, const Options& opt) {
    auto c = Composition::parse(comp);
    auto profile = count_extensions_by_height(build_poset(c));
    json njson = json::array();
    for (const auto& v : profile.N) njson.push_back(v.str());
    bool bern = bernstein_identity_check(c);
    bool logc = logconcavity_N_check(build_poset(c));
    json report{{"composition", comp},
                {"N", njson},
                {"total", profile.total().str()},
                {"bernstein_ok", bern},
                {"N_logconcave", logc}};
    emit(report, opt);
    return bern && logc ? 0 : 1;
}

int cmd_lift(const std::string& params_path, const std::string& q_str, const Options& opt) {
    auto p = SubsetParams::from_json(read_json_file(params_path));
    Rational q = parse_rational(q_str);
    if (!check_supermodular(p)) {
        emit(json{{"supermodular", false}}, opt);
        return 1;
    }
    auto lifted = q_lift(p, q);
    json report{{"q", to_string(q)},
                {"params", lifted.to_json()},
                {"supermodular", check_supermodular(lifted)}};
    if (lifted.n <= 5) {
        json fv = json::array();
        for (auto d : face_lattice(lifted).f_vector()) fv.push_back(d);
        report["f_vector"] = fv;
    }
    emit(report, opt);
    return report["supermodular"].get<bool>() ? 0 : 1;
}

int cmd_subdiv(const std::string& params_path, const std::string& q_str, const Options& opt) {
    auto p = SubsetParams::from_json(read_json_file(params_path));
    Rational q = parse_rational(q_str);
    if (!check_supermodular(p)) throw std::invalid_argument("parameters are not supermodular");
    json cells = json::object();
    Rational total = 0;
    for (const auto& pi : enumerate_ordered_partitions(p.n)) {
        Rational v = pi_lifting_volume(p, pi, q);
        cells[pi.str()] = to_string(v);
        total += v;
    }
    json report{{"q", to_string(q)}, {"cells", cells}, {"sum", to_string(total)}};
    bool ok = true;
    if (p.n <= 3) {
        std::vector<Point> verts;
        for (const auto& v : vertices(q_lift(p, q)))
            verts.emplace_back(v.begin(), v.end() - 1);
        Rational oracle = hull_volume(verts);
        report["hull_volume"] = to_string(oracle);
        ok = total == oracle;
        report["match"] = ok;
    }
    emit(report, opt);
    return ok ? 0 : 1;
}

int cmd_nesto(const std::string& graph, const std::string& building_path, unsigned n,
              const Options& opt) {
    BuildingSet bs;
    if (!building_path.empty()) {
        bs = BuildingSet::from_json(read_json_file(building_path));
    } else if (!graph.empty()) {
        auto edges = parse_edges(graph);
        unsigned maxv = n;
        for (auto [a, b] : edges) maxv = std::max({maxv, a, b});
        bs = graph_building_set(edges, maxv);
    } else {
        throw std::invalid_argument("need --graph or --building");
    }
    auto forests = enumerate_bforests(bs);
    auto dims = bforest_poset(forests).opposite().heights();
    std::map<std::size_t, std::size_t> per_rank;
    for (auto d : dims) ++per_rank[d];
    json ranks = json::object();
    for (auto [d, cnt] : per_rank) ranks[std::to_string(d)] = cnt;
    bool ok = face_poset_crosscheck(bs);
    json report{{"building_set", bs.to_json()},
                {"forests", forests.size()},
                {"forests_by_dimension", ranks},
                {"painted_forests", enumerate_painted(bs).size()},
                {"crosscheck", ok ? "OK" : "FAILED"}};
    emit(report, opt);
    return ok ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact composition polynomials and lifted generalized permutahedra"};
    app.require_subcommand(1);
    Options opt;
    app.add_option("--format", opt.format, "output format")
        ->check(CLI::IsMember({"json", "csv"}));
    app.add_option("--output", opt.output, "write output to a file");
    unsigned jobs = std::max(1u, std::thread::hardware_concurrency());
    app.add_option("--jobs", jobs, "worker threads for the sweep");

    std::string comp, method = "all", params_path, q_str = "1/2", graph, building;
    unsigned max_parts = 7, max_part = 6, ground = 0;

    auto* gc = app.add_subcommand("gc", "composition polynomial report");
    gc->add_option("-c,--composition", comp, "composition, e.g. 1,2,2")->required();
    gc->add_option("--method", method, "closed|recursive|integral|all");

    auto* sweep = app.add_subcommand("sweep", "exhaustive coefficient checks");
    sweep->add_option("--max-parts", max_parts, "maximum number of parts");
    sweep->add_option("--max-part", max_part, "maximum part size");

    auto* interp = app.add_subcommand("interp", "interpolation identity check");
    interp->add_option("-c,--composition", comp)->required();

    auto* linext = app.add_subcommand("linext", "linear extension profile");
    linext->add_option("-c,--composition", comp)->required();

    auto* lift = app.add_subcommand("lift", "q-lifting of a generalized permutahedron");
    lift->add_option("--params", params_path, "SubsetParams JSON file")->required();
    lift->add_option("--q", q_str, "lifting parameter");

    auto* subdiv = app.add_subcommand("subdiv", "cell volumes of the lifted polytope");
    subdiv->add_option("--params", params_path, "SubsetParams JSON file")->required();
    subdiv->add_option("--q", q_str, "lifting parameter");

    auto* nesto = app.add_subcommand("nesto", "building set forests and cross-checks");
    nesto->add_option("--graph", graph, "edge list, e.g. 1-2,2-3");
    nesto->add_option("--building", building, "BuildingSet JSON file");
    nesto->add_option("-n", ground, "ground set size override");

    for (auto* sub : app.get_subcommands({})) sub->fallthrough();

    try {
        app.parse(argc, argv);
        if (gc->parsed()) return cmd_gc(comp, method, opt);
        if (sweep->parsed()) return cmd_sweep(max_parts, max_part, jobs, opt);
        if (interp->parsed()) return cmd_interp(comp, opt);
        if (linext->parsed()) return cmd_linext(comp, opt);
        if (lift->parsed()) return cmd_lift(params_path, q_str, opt);
        if (subdiv->parsed()) return cmd_subdiv(params_path, q_str, opt);
        if (nesto->parsed()) return cmd_nesto(graph, building, ground, opt);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e);  // --help
        app.exit(e);
        return 2;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 2;
}
