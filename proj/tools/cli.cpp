#include "cli.hpp"

#include "orbits/bounds.hpp"
#include "orbits/covering.hpp"
#include "orbits/errors.hpp"
#include "orbits/freeness.hpp"
#include "orbits/klarner.hpp"
#include "orbits/orbit.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdio>
#include <fstream>
#include <functional>
#include <iostream>
#include <optional>
#include <set>

namespace orbits::cli {

namespace {

using json = nlohmann::json;

// Settings shared by the subcommands. Filled from --config first, then
// overridden by whatever flags were given.
struct ExperimentConfig {
    std::vector<std::string> maps;
    std::vector<std::string> seeds;
    std::optional<std::string> x;
    std::vector<std::string> grid;
    std::string mode = "set";
    std::optional<std::string> sigma;
    double upper_slack = 0.01;
    std::size_t depth = 8;
    std::optional<std::string> output;
    std::uint64_t max_classes = CoverOptions{}.max_classes;
    bool verify = false;
    bool porubsky = false;
};

std::string format_double(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::string scalar_text(const json& value, const std::string& field) {
    if (value.is_string()) return value.get<std::string>();
    if (value.is_number_integer() || value.is_number_unsigned()) return value.dump();
    throw ParseError("config field '" + field + "' must be a string or an integer");
}

std::vector<std::string> list_text(const json& value, const std::string& field) {
    if (!value.is_array()) throw ParseError("config field '" + field + "' must be an array");
    std::vector<std::string> out;
    for (std::size_t i = 0; i < value.size(); ++i) {
        out.push_back(scalar_text(value[i], field + "[" + std::to_string(i) + "]"));
    }
    return out;
}

void load_config(const std::string& path, ExperimentConfig& cfg) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open config file '" + path + "'");
    json doc;
    try {
        doc = json::parse(in);
    } catch (const json::parse_error& e) {
        throw ParseError("config '" + path + "': " + e.what());
    }
    if (!doc.is_object()) throw ParseError("config '" + path + "' must be a JSON object");
    for (const auto& [key, value] : doc.items()) {
        if (key == "maps") {
            if (!value.is_array()) throw ParseError("config field 'maps' must be an array");
            cfg.maps.clear();
            for (std::size_t i = 0; i < value.size(); ++i) {
                const auto& item = value[i];
                const std::string where = "maps[" + std::to_string(i) + "]";
                if (item.is_array()) {
                    if (item.size() != 2) throw ParseError("config " + where + " must be [a, b]");
                    cfg.maps.push_back(scalar_text(item[0], where) + "," +
                                       scalar_text(item[1], where));
                } else {
                    cfg.maps.push_back(scalar_text(item, where));
                }
            }
        } else if (key == "seeds") {
            cfg.seeds = list_text(value, key);
        } else if (key == "x") {
            cfg.x = scalar_text(value, key);
        } else if (key == "grid") {
            cfg.grid = list_text(value, key);
        } else if (key == "mode") {
            cfg.mode = scalar_text(value, key);
        } else if (key == "sigma") {
            if (!value.is_number() && !value.is_string()) {
                throw ParseError("config field 'sigma' must be a number");
            }
            cfg.sigma = value.is_string() ? value.get<std::string>() : value.dump();
        } else if (key == "upper_slack") {
            if (!value.is_number()) throw ParseError("config field 'upper_slack' must be a number");
            cfg.upper_slack = value.get<double>();
        } else if (key == "depth") {
            if (!value.is_number_unsigned()) {
                throw ParseError("config field 'depth' must be a non-negative integer");
            }
            cfg.depth = value.get<std::size_t>();
        } else if (key == "output") {
            cfg.output = scalar_text(value, key);
        } else if (key == "max_classes") {
            if (!value.is_number_unsigned()) {
                throw ParseError("config field 'max_classes' must be a non-negative integer");
            }
            cfg.max_classes = value.get<std::uint64_t>();
        } else if (key == "verify") {
            cfg.verify = value.get<bool>();
        } else if (key == "porubsky") {
            cfg.porubsky = value.get<bool>();
        } else {
            throw ParseError("config '" + path + "': unknown field '" + key + "'");
        }
    }
}

std::pair<std::string, std::string> split_pair(const std::string& token, const std::string& what) {
    const auto comma = token.find(',');
    if (comma == std::string::npos || token.find(',', comma + 1) != std::string::npos) {
        throw ParseError(what + " '" + token + "' must have the form a,b");
    }
    return {token.substr(0, comma), token.substr(comma + 1)};
}

FunctionSystem parse_system(const std::vector<std::string>& maps) {
    if (maps.empty()) throw ParseError("no maps given (expected a,b tokens)");
    std::vector<AffineMap> out;
    for (std::size_t i = 0; i < maps.size(); ++i) {
        const std::string what = "map " + std::to_string(i + 1);
        try {
            auto [a, b] = split_pair(maps[i], what);
            out.emplace_back(parse_rational(a), parse_rational(b));
        } catch (const ParseError&) {
            throw;
        } catch (const Error& e) {
            throw PreconditionError(what + " '" + maps[i] + "': " + e.what());
        }
    }
    return FunctionSystem(std::move(out));
}

std::int64_t parse_int64(const std::string& text, const std::string& what) {
    const Rational r = parse_rational(text);
    if (!is_integer(r) || !r.get_num().fits_slong_p()) {
        throw ParseError(what + " '" + text + "' must be a 64-bit integer");
    }
    return r.get_num().get_si();
}

CongruenceSystem parse_congruences(const std::vector<std::string>& maps) {
    if (maps.empty()) throw ParseError("no progressions given (expected a,b tokens)");
    std::vector<Progression> out;
    for (std::size_t i = 0; i < maps.size(); ++i) {
        const std::string what = "progression " + std::to_string(i + 1);
        auto [a, b] = split_pair(maps[i], what);
        out.push_back({parse_int64(a, what), parse_int64(b, what)});
    }
    return CongruenceSystem(std::move(out));
}

SeedSet parse_seeds(const std::vector<std::string>& seeds) {
    if (seeds.empty()) throw ParseError("no seeds given (use --seed)");
    std::vector<Rational> out;
    for (const auto& s : seeds) out.push_back(parse_rational(s));
    return SeedSet(std::move(out));
}

Rational require_x(const ExperimentConfig& cfg) {
    if (!cfg.x) throw ParseError("missing bound (use --x)");
    return parse_rational(*cfg.x);
}

std::vector<Rational> grid_points(const ExperimentConfig& cfg) {
    std::vector<Rational> grid;
    for (const auto& g : cfg.grid) grid.push_back(parse_rational(g));
    if (grid.empty() && cfg.x) grid.push_back(parse_rational(*cfg.x));
    if (grid.empty()) throw ParseError("empty grid (use --grid or --x)");
    return grid;
}

// Writes to --output when given, otherwise to `out`.
class Sink {
public:
    Sink(const ExperimentConfig& cfg, std::ostream& out) : stream_(&out) {
        if (cfg.output) {
            file_.open(*cfg.output, std::ios::binary);
            if (!file_) throw ParseError("cannot open output file '" + *cfg.output + "'");
            stream_ = &file_;
        }
    }
    std::ostream& operator*() { return *stream_; }

private:
    std::ofstream file_;
    std::ostream* stream_;
};

int cmd_enumerate(const ExperimentConfig& cfg, std::ostream& out, std::ostream& err) {
    const FunctionSystem system = parse_system(cfg.maps);
    const SeedSet seeds = parse_seeds(cfg.seeds);
    const Rational x = require_x(cfg);
    const Mode mode = parse_mode(cfg.mode);
    Sink sink(cfg, out);
    std::ostream& csv = *sink;
    csv << "value,multiplicity\n";
    const PrefixStats stats = stream_orbit(system, seeds, x, mode,
                                           [&](const Rational& v, const BigInt& m) {
                                               csv << to_string(v) << ',' << to_string(m) << '\n';
                                           });
    err << "set_count=" << stats.set_count << " multiset_count=" << to_string(stats.multiset_count)
        << " max_multiplicity=" << to_string(stats.max_multiplicity)
        << " frontier_peak=" << stats.frontier_peak << '\n';
    return kExitOk;
}

int cmd_growth(const ExperimentConfig& cfg, std::ostream& out, std::ostream&) {
    const FunctionSystem system = parse_system(cfg.maps);
    const SeedSet seeds = parse_seeds(cfg.seeds);
    const auto grid = grid_points(cfg);
    const GrowthTable table = growth_samples(system, seeds, grid);
    Sink sink(cfg, out);
    std::ostream& csv = *sink;
    csv << "x,count_set,count_multiset\n";
    for (const auto& row : table.rows) {
        csv << to_string(row.x) << ',' << row.set_count << ',' << to_string(row.multiset_count)
            << '\n';
    }
    return kExitOk;
}

int cmd_bounds(const ExperimentConfig& cfg, std::ostream& out, std::ostream& err) {
    const FunctionSystem system = parse_system(cfg.maps);
    const SeedSet seeds = parse_seeds(cfg.seeds);
    const auto grid = grid_points(cfg);
    system.require_strict("bounds");

    double sigma = 0.0;
    if (cfg.sigma) {
        try {
            sigma = std::stod(*cfg.sigma);
        } catch (const std::exception&) {
            throw ParseError("sigma '" + *cfg.sigma + "' is not a number");
        }
    } else {
        sigma = solve_sigma(system.slopes()).sigma;
    }
    const double upper_sigma = sigma + cfg.upper_slack;

    // Validate every point before any output is produced.
    std::vector<double> lower;
    std::vector<double> upper;
    for (const auto& x : grid) {
        lower.push_back(lower_bound_theorem2(system, seeds, x, sigma));
        upper.push_back(erdos_lagarias_upper(system, seeds, x, upper_sigma).bound);
    }
    const GrowthTable table = growth_samples(system, seeds, grid);

    Sink sink(cfg, out);
    std::ostream& csv = *sink;
    csv << "x,lower_thm2,count_set,count_multiset,upper_thm1,sigma,violation\n";
    int violations = 0;
    for (std::size_t i = 0; i < grid.size(); ++i) {
        const auto& row = table.rows[i];
        const bool ok = lower_bound_holds(lower[i], row.multiset_count) &&
                        upper_bound_holds(row.multiset_count, upper[i]);
        violations += ok ? 0 : 1;
        csv << to_string(row.x) << ',' << format_double(lower[i]) << ',' << row.set_count << ','
            << to_string(row.multiset_count) << ',' << format_double(upper[i]) << ','
            << format_double(sigma) << ',' << (ok ? 0 : 1) << '\n';
    }
    if (violations > 0) {
        err << "error: " << violations << " grid point(s) violate lower <= count <= upper\n";
        return kExitViolation;
    }
    return kExitOk;
}

std::string tuple_text(const std::vector<Rational>& values) {
    std::string out = "(";
    for (std::size_t i = 0; i < values.size(); ++i) {
        if (i) out += ",";
        out += to_string(values[i]);
    }
    return out + ")";
}

int cmd_klarner(const std::vector<std::string>& slopes_text, std::ostream& out) {
    if (slopes_text.empty()) throw ParseError("no slopes given");
    std::vector<Rational> slopes;
    for (const auto& s : slopes_text) slopes.push_back(parse_rational(s));
    for (const auto& t : all_tuples(slopes)) {
        out << tuple_text(t.offsets_by_slope()) << " ordering=" << tuple_text(t.ordering)
            << " d1=" << to_string(t.params.d1) << '\n';
    }
    return kExitOk;
}

int cmd_cover(const ExperimentConfig& cfg, std::ostream& out) {
    const CongruenceSystem system = cfg.porubsky ? porubsky_13() : parse_congruences(cfg.maps);
    const CoverVerdict verdict = is_exact_cover(system, {cfg.max_classes});
    switch (verdict.kind) {
        case CoverKind::exact:
            out << "exact\n";
            break;
        case CoverKind::gap:
            out << "gap: residue " << verdict.residue << " mod " << verdict.lcm << '\n';
            return kExitOk;
        case CoverKind::overlap:
            out << "overlap: residue " << verdict.residue << " mod " << verdict.lcm
                << " in progressions " << verdict.first + 1 << " and " << verdict.second + 1
                << '\n';
            return kExitOk;
    }
    if (system.size() >= 2) {
        const bool holds = mirsky_newman_holds(system);
        out << "mirsky_newman: " << (holds ? "true" : "false") << '\n';
        if (!holds) return kExitViolation;
    }
    return kExitOk;
}

int cmd_free(const ExperimentConfig& cfg, std::ostream& out) {
    const FunctionSystem system = parse_system(cfg.maps);
    CertifyOptions options;
    options.relation_depth = cfg.depth;
    if (options.relation_depth < 1) throw ParseError("--depth must be >= 1");
    const FreenessVerdict verdict = certify_free(system, options);
    out << describe(system, verdict) << '\n';
    if (!reverify(system, verdict)) return kExitViolation;
    return verdict.status == FreenessStatus::inconclusive ? kExitInconclusive : kExitOk;
}

int cmd_plan3(const ExperimentConfig& cfg, std::ostream& out) {
    const FunctionSystem system = parse_system(cfg.maps);
    if (cfg.seeds.size() != 1) throw ParseError("plan3 takes exactly one --seed");
    const Rational s = parse_rational(cfg.seeds.front());
    const Rational x = require_x(cfg);
    const Theorem3Plan plan = theorem3_plan(system, s, x);

    std::string k = "(";
    for (std::size_t i = 0; i < plan.k.size(); ++i) k += (i ? "," : "") + std::to_string(plan.k[i]);
    k += ")";

    Sink sink(cfg, out);
    std::ostream& csv = *sink;
    csv << "t,k,C,slope_product,M,N";
    if (cfg.verify) csv << ",count_set_M,distinct_values,certified";
    csv << '\n';
    csv << format_double(plan.t) << ",\"" << k << "\"," << to_string(plan.C) << ','
        << to_string(plan.slope_product) << ',' << to_string(plan.M) << ',' << to_string(plan.N);
    int code = kExitOk;
    if (cfg.verify) {
        const BigInt count = count_prefix(system, SeedSet({s}), plan.M, Mode::set);
        auto values = equal_slope_family(system, plan.k, s);
        std::set<Rational> distinct;
        bool bounded = true;
        for (auto& v : values) {
            bounded = bounded && v <= plan.M;
            distinct.insert(std::move(v));
        }
        const bool certified = count >= plan.N && bounded;
        csv << ',' << to_string(count) << ',' << distinct.size() << ',' << (certified ? 1 : 0);
        if (!certified) code = kExitViolation;
    }
    csv << '\n';
    return code;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Exact orbit-set enumeration, growth bounds, free offset tuples and covering systems"};
    app.require_subcommand(1);

    ExperimentConfig flags;
    std::string config_path;
    std::vector<std::string> positional;
    std::vector<std::string> slopes;
    std::string x_flag;
    std::string sigma_flag;
    std::string output_flag;

    struct Options {
        CLI::Option* config = nullptr;
        CLI::Option* seeds = nullptr;
        CLI::Option* x = nullptr;
        CLI::Option* grid = nullptr;
        CLI::Option* mode = nullptr;
        CLI::Option* sigma = nullptr;
        CLI::Option* slack = nullptr;
        CLI::Option* depth = nullptr;
        CLI::Option* output = nullptr;
        CLI::Option* max_classes = nullptr;
        CLI::Option* verify = nullptr;
        CLI::Option* porubsky = nullptr;
        CLI::Option* maps = nullptr;
    };
    std::map<std::string, Options> registered;

    auto add = [&](const std::string& name, const std::string& help, bool seeds, bool x,
                   bool grid, bool mode) {
        CLI::App* sub = app.add_subcommand(name, help);
        Options o;
        o.maps = sub->add_option("maps", positional, "maps as a,b tokens (f(x) = a*x + b)");
        o.config = sub->add_option("--config", config_path, "JSON config; flags override it");
        o.output = sub->add_option("--output,-o", output_flag, "write CSV here instead of stdout");
        if (seeds) {
            o.seeds = sub->add_option("--seed,--seeds", flags.seeds, "seed value(s), p or p/q")
                          ->delimiter(',')
                          ->allow_extra_args(false);
        }
        if (x) o.x = sub->add_option("--x", x_flag, "bound x (p or p/q)");
        if (grid) {
            o.grid = sub->add_option("--grid", flags.grid, "comma-separated ascending x values")
                         ->delimiter(',')
                         ->allow_extra_args(false);
        }
        if (mode) o.mode = sub->add_option("--mode", flags.mode, "set or multiset");
        registered[name] = o;
        return std::pair{sub, &registered[name]};
    };

    add("enumerate", "list orbit elements <= x as value,multiplicity CSV", true, true, false, true);
    add("growth", "set and multiset counts at each grid point", true, true, true, false);
    {
        auto [sub, o] = add("bounds", "lower bound, counts and upper bound per grid point", true,
                            true, true, false);
        o->sigma = sub->add_option("--sigma", sigma_flag, "exponent (default: solved)");
        o->slack = sub->add_option("--upper-slack", flags.upper_slack,
                                   "upper bound evaluated at sigma + slack (default 0.01)");
    }
    {
        CLI::App* sub = app.add_subcommand("klarner", "normalized free offset tuples for slopes");
        sub->add_option("slopes", slopes, "slope multiset with sum 1/a = 1")->required();
    }
    {
        auto [sub, o] = add("cover", "exact covering congruence verdict", false, false, false, false);
        o->max_classes = sub->add_option("--max-classes", flags.max_classes,
                                         "residue-class limit for the lcm table");
        o->porubsky = sub->add_flag("--porubsky", flags.porubsky,
                                    "use the built-in 13-progression system");
    }
    {
        auto [sub, o] = add("free", "certify freeness or find a relation", false, false, false,
                            false);
        o->depth = sub->add_option("--depth", flags.depth, "relation search depth (default 8)");
    }
    {
        auto [sub, o] = add("plan3", "equal-slope density plan (t, k, C, M, N)", true, true,
                            false, false);
        o->verify = sub->add_flag("--verify", flags.verify,
                                  "count the orbit in [0,M] and evaluate the family");
    }

    std::vector<const char*> argv{"orbits"};
    for (const auto& a : args) argv.push_back(a.c_str());
    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kExitOk : kExitInput;
    }

    try {
        CLI::App* sub = app.get_subcommands().front();
        const std::string name = sub->get_name();
        if (name == "klarner") return cmd_klarner(slopes, out);

        ExperimentConfig cfg;
        const Options& o = registered.at(name);
        if (o.config->count()) load_config(config_path, cfg);
        auto given = [](CLI::Option* opt) { return opt != nullptr && opt->count() > 0; };
        if (given(o.maps)) cfg.maps = positional;
        if (given(o.seeds)) cfg.seeds = flags.seeds;
        if (given(o.x)) cfg.x = x_flag;
        if (given(o.grid)) cfg.grid = flags.grid;
        if (given(o.mode)) cfg.mode = flags.mode;
        if (given(o.sigma)) cfg.sigma = sigma_flag;
        if (given(o.slack)) cfg.upper_slack = flags.upper_slack;
        if (given(o.depth)) cfg.depth = flags.depth;
        if (given(o.output)) cfg.output = output_flag;
        if (given(o.max_classes)) cfg.max_classes = flags.max_classes;
        if (given(o.verify)) cfg.verify = flags.verify;
        if (given(o.porubsky)) cfg.porubsky = flags.porubsky;

        if (name == "enumerate") return cmd_enumerate(cfg, out, err);
        if (name == "growth") return cmd_growth(cfg, out, err);
        if (name == "bounds") return cmd_bounds(cfg, out, err);
        if (name == "cover") return cmd_cover(cfg, out);
        if (name == "free") return cmd_free(cfg, out);
        if (name == "plan3") return cmd_plan3(cfg, out);
        err << "error: unknown subcommand " << name << '\n';
        return kExitInput;
    } catch (const Error& e) {
        err << "error: " << e.what() << '\n';
        return kExitInput;
    }
}

}  // namespace orbits::cli
