// Command-line front end: spiderweb <command> [options]
//
// Exit codes: 0 success, 1 usage or configuration error, 2 data, I/O or
// domain error, 3 a checked assertion failed.

#include "spiderweb/acceptance.hpp"
#include "spiderweb/report.hpp"
#include "spiderweb/spiderweb.hpp"

#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

namespace sw = spiderweb;

namespace {

constexpr const char* kVersion = "spiderweb 1.0.0";

struct AssertionFailed : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct Globals {
    std::uint64_t seed = 0;
    std::string outdir = ".";
    unsigned threads = 1;
    std::optional<std::uint32_t> margin;
};

std::ostream* open_out(const std::string& path, std::ofstream& file) {
    if (path.empty() || path == "-") return &std::cout;
    file.open(path);
    if (!file) throw std::runtime_error("cannot write '" + path + "'");
    return &file;
}

void emit(const sw::Table& t, const std::string& path) {
    std::ofstream file;
    t.write_csv(*open_out(path, file));
}

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::stringstream ss(s);
    for (std::string part; std::getline(ss, part, sep);) out.push_back(part);
    return out;
}

/// const:C | point:V | ball:V:R | radial:BASE:ALPHA | random:SEED
sw::GraphFunction parse_function(const sw::SpiderWeb& g, const std::string& spec) {
    const auto p = split(spec, ':');
    auto need = [&](std::size_t n) {
        if (p.size() != n) throw sw::DomainError("malformed function spec '" + spec + "'");
    };
    try {
        if (p.at(0) == "const") {
            need(2);
            return sw::constant_function(g, std::stod(p[1]));
        }
        if (p.at(0) == "point") {
            need(2);
            return sw::point_mass(g, static_cast<sw::VertexId>(std::stoul(p[1])));
        }
        if (p.at(0) == "ball") {
            need(3);
            return sw::ball_indicator(g, static_cast<sw::VertexId>(std::stoul(p[1])), static_cast<std::uint32_t>(std::stoul(p[2])));
        }
        if (p.at(0) == "radial") {
            need(3);
            return sw::radial_profile(g, std::stod(p[1]), std::stod(p[2]));
        }
        if (p.at(0) == "random") {
            need(2);
            return sw::random_function(g, std::stoull(p[1]));
        }
    } catch (const std::logic_error& e) {
        if (dynamic_cast<const sw::ConsistencyError*>(&e)) throw;
        throw sw::DomainError("malformed function spec '" + spec + "'");
    }
    throw sw::DomainError("unknown function spec '" + spec + "'");
}

sw::BallMode parse_mode(const std::string& s) {
    if (s == "full") return sw::BallMode::full;
    if (s == "interior") return sw::BallMode::interior;
    throw CLI::ValidationError("--mode", "expected full or interior");
}

/// Resolved options of one subcommand as key=value lines.
std::string resolved_config(const CLI::App& app, const CLI::App& sub) {
    std::ostringstream os;
    auto dump = [&](const CLI::App& a) {
        for (const CLI::Option* opt : a.get_options()) {
            const std::string name = opt->get_single_name();
            if (name.empty() || name == "help" || name == "version" || name == "config") continue;
            std::string value;
            if (opt->count() > 0) {
                const auto& res = opt->results();
                for (std::size_t i = 0; i < res.size(); ++i) value += (i ? "," : "") + res[i];
            } else {
                value = opt->get_default_str();
            }
            os << name << '=' << value << '\n';
        }
    };
    dump(app);
    dump(sub);
    return os.str();
}

void write_manifest(const CLI::App& app, const CLI::App& sub, const Globals& g, int exit_code) {
    std::filesystem::create_directories(g.outdir);
    const std::string path = (std::filesystem::path(g.outdir) / (sub.get_name() + ".manifest")).string();
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write manifest '" + path + "'");
    out << "# " << kVersion << "\n# command: " << sub.get_name() << "\n# exit: " << exit_code << '\n'
        << resolved_config(app, sub);
}

/// Turns `--config FILE` (flat key=value lines, '#' comments) into leading
/// `--key value` arguments after the subcommand, so explicit flags win.
std::vector<std::string> expand_config(std::vector<std::string> args, const CLI::App& app) {
    std::vector<std::string> cfg, globals;
    for (std::size_t i = 0; i + 1 < args.size(); ++i) {
        if (args[i] != "--config") continue;
        std::ifstream in(args[i + 1]);
        if (!in) throw CLI::FileError::Missing(args[i + 1]);
        for (std::string line; std::getline(in, line);) {
            const auto hash = line.find('#');
            if (hash != std::string::npos) line.erase(hash);
            const auto eq = line.find('=');
            if (eq == std::string::npos) continue;
            auto trim = [](std::string s) {
                s.erase(0, s.find_first_not_of(" \t\r"));
                s.erase(s.find_last_not_of(" \t\r") + 1);
                return s;
            };
            const std::string key = trim(line.substr(0, eq)), value = trim(line.substr(eq + 1));
            if (key.empty()) continue;
            // Global options must precede the subcommand.
            auto& dst = app.get_option_no_throw("--" + key) ? globals : cfg;
            if (value == "true") {
                dst.push_back("--" + key);
            } else if (value != "false" && !value.empty()) {
                dst.push_back("--" + key);
                dst.push_back(value);
            }
        }
        args.erase(args.begin() + static_cast<std::ptrdiff_t>(i), args.begin() + static_cast<std::ptrdiff_t>(i) + 2);
        break;
    }
    // Placed before the explicit flags so that those win under TakeLast.
    std::size_t at = 1;
    while (at < args.size() && !app.get_subcommand_no_throw(args[at])) ++at;
    if (at < args.size()) args.insert(args.begin() + static_cast<std::ptrdiff_t>(at) + 1, cfg.begin(), cfg.end());
    args.insert(args.begin() + 1, globals.begin(), globals.end());
    return args;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Spider's web graphs, hyperbolicity, maximal operators and discretization"};
    app.set_version_flag("--version", kVersion);
    app.require_subcommand(1);
    app.option_defaults()->multi_option_policy(CLI::MultiOptionPolicy::TakeLast)->always_capture_default();
    app.add_option("--config", "flat key=value file; explicit flags override its values");

    Globals g;
    app.add_option("--seed", g.seed, "root seed for every random draw");
    app.add_option("--outdir", g.outdir, "directory for the run manifest");
    app.add_option("--threads", g.threads, "worker threads")->check(CLI::PositiveNumber);

    std::string in_path, out_path;

    // generate
    auto* gen = app.add_subcommand("generate", "write a generated graph");
    std::string family = "dyadic_web";
    sw::GeneratorSpec spec;
    gen->add_option("--family", family, "dyadic_web | homogeneous_tree | random_ab_tree | random_spiderweb");
    gen->add_option("--depth", spec.depth, "number of levels below the root");
    gen->add_option("--q", spec.q, "successors per vertex (homogeneous_tree)");
    gen->add_option("--a", spec.a, "least successor count");
    gen->add_option("--b", spec.b, "largest successor count");
    gen->add_option("--density", spec.density, "acceptance probability of candidate edges");
    gen->add_option("--out", out_path, "graph file ('-' for stdout)");

    // validate
    auto* val = app.add_subcommand("validate", "list spider's web rule violations");
    std::uint32_t quasi = 0;
    val->add_option("--in", in_path, "graph file")->required();
    val->add_option("--quasi", quasi, "check the quasi rule with this threshold instead (0 = plain rule)");
    val->add_option("--out", out_path, "violations CSV");

    // delta
    auto* del = app.add_subcommand("delta", "four-point hyperbolicity constant");
    std::string delta_mode = "exhaustive";
    std::uint64_t samples = sw::kDefaultDeltaSamples;
    std::optional<sw::VertexId> base;
    del->add_option("--in", in_path, "graph file")->required();
    del->add_option("--mode", delta_mode, "exhaustive | sampled")->check(CLI::IsMember({"exhaustive", "sampled"}));
    del->add_option("--samples", samples, "quadruples in sampled mode");
    del->add_option("--base", base, "exact delta for this single base point");
    del->add_option("--out", out_path, "CSV");

    // geodesic
    auto* geo = app.add_subcommand("geodesic", "standard geodesics and the horizontal bound");
    std::size_t pairs = 1000;
    std::optional<double> delta_value;
    bool delta_exact = false;
    geo->add_option("--in", in_path, "graph file")->required();
    geo->add_option("--pairs", pairs, "sampled vertex pairs");
    geo->add_option("--delta", delta_value, "delta to test against (default: exhaustive up to 60 vertices, else sampled)");
    geo->add_flag("--exact-delta", delta_exact, "treat --delta as the exact constant (violations fail)");
    geo->add_option("--out", out_path, "CSV");

    // maximal
    auto* max = app.add_subcommand("maximal", "maximal function of one function");
    std::string function = "point:0", mode = "full";
    std::uint32_t rmax = 4;
    max->add_option("--in", in_path, "graph file")->required();
    max->add_option("--function", function, "const:C | point:V | ball:V:R | radial:BASE:ALPHA | random:SEED");
    max->add_option("--rmax", rmax, "largest radius")->check(CLI::PositiveNumber);
    max->add_option("--mode", mode, "full | interior");
    max->add_option("--out", out_path, "CSV");

    // weaktype
    auto* weak = app.add_subcommand("weaktype", "empirical weak-type constants");
    double tau = 1.0;
    std::string fam_name;
    weak->add_option("--in", in_path, "graph file")->required();
    weak->add_option("--tau", tau, "exponent");
    weak->add_option("--family", fam_name, "point_mass | ball | radial");
    weak->add_option("--function", function, "single function spec (used when --family is absent)");
    weak->add_option("--rmax", rmax, "largest radius (0 = twice the depth)");
    weak->add_option("--mode", mode, "full | interior");
    weak->add_option("--out", out_path, "CSV");

    // paircount
    auto* pc = app.add_subcommand("paircount", "pair counts U_r over random vertex sets");
    double pa = 2.0, pb = 2.0;
    std::size_t sizes = 50, trials = 10;
    pc->add_option("--in", in_path, "graph file")->required();
    pc->add_option("--a", pa, "lower growth parameter");
    pc->add_option("--b", pb, "upper growth parameter");
    pc->add_option("--sizes", sizes, "size of E and F")->check(CLI::PositiveNumber);
    pc->add_option("--trials", trials, "random (E, F) pairs");
    pc->add_option("--rmax", rmax, "largest radius");
    pc->add_option("--out", out_path, "CSV");

    // discretize
    auto* disc = app.add_subcommand("discretize", "discretize the disk or a metric tree");
    std::string space = "disk", report_path, points_path;
    sw::DiscretizationConfig dcfg;
    std::size_t ri_pairs = 10'000, probes = 1000;
    disc->add_option("--space", space, "disk | tree:FILE");
    disc->add_option("--radius", dcfg.max_radius, "levels 1..R")->check(CLI::PositiveNumber);
    disc->add_option("--theta", dcfg.theta, "horizontal edge threshold");
    disc->add_option("--K", dcfg.K, "quasi threshold for the completion");
    disc->add_flag("--calibrate", dcfg.calibrate_K, "use the least passing K instead of --K");
    disc->add_option("--oversample", dcfg.oversample, "sphere samples per estimated net point");
    disc->add_flag("--allow-small-theta", dcfg.allow_small_theta, "permit theta < 15");
    disc->add_option("--pairs", ri_pairs, "pairs for the rough-isometry report");
    disc->add_option("--probes", probes, "probes for the overlap number");
    disc->add_option("--margin", g.margin, "interior margin (default ceil(theta) + 2)");
    disc->add_option("--out", out_path, "graph file of the completed web");
    disc->add_option("--report", report_path, "report CSV (metric,level,value)");
    disc->add_option("--points", points_path, "embedding CSV (id,level,c0,c1)");

    // accept
    auto* acc = app.add_subcommand("accept", "run the acceptance criteria");
    std::vector<int> only;
    acc->add_option("--only", only, "criterion ids to run (default all)")->delimiter(',');

    std::vector<std::string> args(argv, argv + argc);
    try {
        args = expand_config(std::move(args), app);
        std::vector<char*> cargs;
        for (auto& a : args) cargs.push_back(a.data());
        app.parse(static_cast<int>(cargs.size()), cargs.data());
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForVersion& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 1;
    }

    CLI::App* sub = app.get_subcommands().front();
    int code = 0;
    try {
        if (sub == gen) {
            const auto f = sw::parse_family(family);
            if (!f) throw CLI::ValidationError("--family", "unknown family '" + family + "'");
            spec.family = *f;
            spec.seed = g.seed;
            const sw::SpiderWeb web = sw::generate(spec);
            std::ofstream file;
            sw::write_graph(*open_out(out_path, file), web);
            std::cerr << "generated " << family << ": " << web.vertex_count() << " vertices, "
                      << web.horizontal_edge_count() << " horizontal edges\n";
        } else if (sub == val) {
            const sw::SpiderWeb web = sw::read_graph_file(in_path);
            const auto v = quasi ? sw::validate_quasi_spiderweb(web, quasi) : sw::validate_spiderweb(web);
            sw::Table t{"violations", {"rule", "a", "b", "level", "k"}, {}};
            for (const auto& x : v) t.add(sw::to_string(x.rule), x.edge.a, x.edge.b, x.level, x.k);
            if (!out_path.empty()) emit(t, out_path);
            std::cout << v.size() << " violations\n";
            if (!v.empty()) throw AssertionFailed("graph violates the spider's web rules");
        } else if (sub == del) {
            const sw::SpiderWeb web = sw::read_graph_file(in_path);
            const sw::DeltaEstimate e =
                base ? sw::four_point_delta_fixed_base(web, *base)
                     : sw::four_point_delta(web, delta_mode == "exhaustive" ? sw::DeltaMode::exhaustive : sw::DeltaMode::sampled,
                                            samples, g.seed, g.threads);
            sw::Table t{"delta", {"mode", "delta", "x", "y", "z", "w", "quadruples", "landmarks"}, {}};
            t.add(base ? std::string("fixed_base") : std::string(sw::to_string(e.mode)), e.delta.str(), e.witness.x,
                  e.witness.y, e.witness.z, e.witness.w, e.quadruples_checked, e.landmarks);
            emit(t, out_path);
        } else if (sub == geo) {
            const sw::SpiderWeb web = sw::read_graph_file(in_path);
            sw::HalfInteger d;
            bool exact = delta_exact;
            if (delta_value) {
                d = sw::HalfInteger::ceil_of(*delta_value);
            } else if (web.vertex_count() <= sw::kExhaustiveDeltaLimit) {
                d = sw::four_point_delta(web, sw::DeltaMode::exhaustive).delta;
                exact = true;
            } else {
                d = sw::four_point_delta(web, sw::DeltaMode::sampled, sw::kDefaultDeltaSamples, g.seed, g.threads).delta;
            }
            const auto ps = sw::sample_pairs(web.vertex_count(), pairs, g.seed);
            const auto geos = sw::standard_geodesics(web, ps);
            const auto rep = sw::horizontal_bound_report(web, d, exact, ps);
            sw::Table t{"geodesics", {"x", "y", "len", "asc", "horiz", "desc", "bound_ok"}, {}};
            for (std::size_t i = 0; i < ps.size(); ++i) {
                t.add(ps[i].x, ps[i].y, geos[i].total_length(), geos[i].ascending_length(), geos[i].horizontal_length(),
                      geos[i].descending_length(), geos[i].horizontal_length() <= rep.bound);
            }
            emit(t, out_path);
            std::cerr << "delta " << d << (exact ? " (exact)" : " (estimate)") << ", bound " << rep.bound
                      << ", max horizontal " << rep.max_horizontal << ", verdict " << rep.verdict() << '\n';
            if (rep.hard_failures() > 0) throw AssertionFailed("horizontal bound exceeded with an exact delta");
        } else if (sub == max) {
            const sw::SpiderWeb web = sw::read_graph_file(in_path);
            const sw::GraphFunction f = parse_function(web, function);
            const sw::MaximalOperator op(web, rmax, parse_mode(mode), g.threads);
            const sw::GraphFunction m = op.apply(f);
            sw::Table t{"maximal", {"vertex", "level", "f", "M0", "Minf", "M", "frontier"}, {}};
            for (sw::VertexId v = 0; v < web.vertex_count(); ++v) {
                const bool frontier = op.radius_cap(v) > 0 && sw::touches_frontier(web, v, op.radius_cap(v));
                t.add(v, web.level(v), f[v], f[v], m[v], std::max(f[v], m[v]), frontier);
            }
            emit(t, out_path);
        } else if (sub == weak) {
            const sw::SpiderWeb web = sw::read_graph_file(in_path);
            const std::uint32_t r = rmax == 0 ? 2 * web.tree().depth() : rmax;
            const sw::MaximalOperator op(web, std::max(1u, r), parse_mode(mode), g.threads);
            std::vector<sw::WeakTypeReport> reps;
            if (!fam_name.empty()) {
                const auto fam = sw::parse_function_family(fam_name);
                if (!fam) throw CLI::ValidationError("--family", "unknown family '" + fam_name + "'");
                reps = sw::weak_type_family(op, *fam, tau).members;
            } else {
                reps.push_back(sw::weak_type_constant(op, parse_function(web, function), tau));
            }
            sw::Table t{"weaktype", {"function", "tau", "mode", "constant", "worst_lambda", "worst_count", "norm_tau"}, {}};
            for (const auto& w : reps) {
                t.add(w.function_label, w.tau, mode, w.constant, w.worst_lambda, w.worst_count,
                      static_cast<double>(w.norm_tau_pow));
            }
            emit(t, out_path);
        } else if (sub == pc) {
            const sw::SpiderWeb web = sw::read_graph_file(in_path);
            if (!(pa >= 1.0 && pa <= pb)) throw sw::DomainError("need 1 <= a <= b");
            const sw::CounterStream s(sw::derive_seed(g.seed, "paircount"));
            sw::Table t{"paircount", {"trial", "E_size", "F_size", "r", "U_r", "G_r", "ratio", "shell_ratio"}, {}};
            std::uint64_t k = 0;
            for (std::size_t trial = 0; trial < trials; ++trial) {
                std::vector<sw::VertexId> E(sizes), F(sizes);
                for (auto& v : E) v = static_cast<sw::VertexId>(s.at(k++) % web.vertex_count());
                for (auto& v : F) v = static_cast<sw::VertexId>(s.at(k++) % web.vertex_count());
                const auto p = sw::pair_count_profile(web, E, F, rmax, pb);
                for (std::uint32_t r = 0; r <= rmax; ++r) {
                    t.add(trial, p.E_size, p.F_size, r, p.U[r], p.shell(r), p.ratio(r), p.shell_ratio(r));
                }
            }
            emit(t, out_path);
        } else if (sub == disc) {
            dcfg.seed = g.seed;
            const std::uint32_t margin = g.margin ? *g.margin : static_cast<std::uint32_t>(std::ceil(dcfg.theta)) + 2;
            sw::Table rep{"discretize", {"metric", "level", "value"}, {}};
            auto run = [&](const auto& oracle) {
                const auto d = sw::discretize(oracle, dcfg);
                for (const auto& l : d.levels) {
                    rep.add("net_size", l.level, l.net_size);
                    rep.add("samples", l.level, l.samples);
                    rep.add("repairs", l.level, l.repairs);
                    rep.add("max_parent_distance", l.level, l.max_parent_distance);
                    rep.add("gamma_edges", l.level, l.gamma_edges);
                    rep.add("completion_edges", l.level, l.completion_edges);
                }
                rep.add("vertices", "all", d.web.vertex_count());
                rep.add("valence_min", "all", d.valence.min);
                rep.add("valence_median", "all", d.valence.median);
                rep.add("valence_max", "all", d.valence.max);
                rep.add("valence_ceiling", "all", d.valence.ceiling);
                rep.add("K", "all", d.K);
                rep.add("minimal_K", "all", d.minimal_K);
                rep.add("completion_edges", "all", d.completion_edges.size());
                rep.add("max_completion_edge_length", "all", d.max_completion_edge_length);
                rep.add("max_parent_distance", "all", d.max_parent_distance);
                rep.add("validator_violations", "all", sw::validate_spiderweb(d.web).size());
                const auto ri = sw::rough_isometry_report(d, oracle, ri_pairs, g.seed, margin);
                rep.add("interior_margin", "all", margin);
                rep.add("rough_pairs", "all", ri.pairs);
                rep.add("beta_obs", "all", ri.max_abs_deviation);
                rep.add("mean_abs_deviation", "all", ri.mean_abs_deviation);
                for (const auto& row : ri.rows) {
                    if (row.pairs == 0) continue;
                    rep.add("beta_obs", row.level, row.max_abs);
                    rep.add("mean_abs_deviation", row.level, row.mean_abs);
                    rep.add("rough_pairs", row.level, row.pairs);
                }
                if (d.max_radius > 2) rep.add("omega", "all", sw::overlap_number(d, oracle, probes, g.seed).omega);
                if (!out_path.empty()) sw::write_graph_file(out_path, d.web);
                if (!points_path.empty()) {
                    sw::Table pts{"points", {"id", "level", "c0", "c1"}, {}};
                    for (sw::VertexId v = 0; v < d.web.vertex_count(); ++v) {
                        const auto c = oracle.coordinates(d.embedding[v]);
                        pts.add(v, d.web.level(v), c[0], c[1]);
                    }
                    pts.write_csv_file(points_path);
                }
                if (d.max_parent_distance > sw::kParentDistanceLimit + sw::kEpsSphere) {
                    throw AssertionFailed("a vertex is farther than 2 from its parent");
                }
            };
            if (space == "disk") {
                run(sw::PoincareDisk{});
            } else if (space.rfind("tree:", 0) == 0) {
                const sw::SpiderWeb t = sw::read_graph_file(space.substr(5));
                run(sw::MetricTree(t.tree()));
            } else {
                throw CLI::ValidationError("--space", "expected disk or tree:FILE");
            }
            emit(rep, report_path);
        } else if (sub == acc) {
            const auto results = sw::acceptance::run_all(std::cout, only);
            std::size_t failed = 0;
            for (const auto& r : results) failed += !r.passed;
            std::cout << results.size() - failed << "/" << results.size() << " criteria passed\n";
            if (failed) throw AssertionFailed(std::to_string(failed) + " acceptance criteria failed");
        }
    } catch (const CLI::ParseError& e) {
        std::cerr << "usage error: " << e.what() << '\n';
        code = 1;
    } catch (const sw::ConfigurationError& e) {
        std::cerr << "configuration error: " << e.what() << '\n';
        code = 1;
    } catch (const AssertionFailed& e) {
        std::cerr << "assertion failed: " << e.what() << '\n';
        code = 3;
    } catch (const sw::ConsistencyError& e) {
        std::cerr << "consistency check failed: " << e.what() << '\n';
        code = 3;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        code = 2;
    }
    try {
        write_manifest(app, *sub, g, code);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        if (code == 0) code = 2;
    }
    return code;
}
