// curved_nbody: verify, search, simulate and count central configurations on S3 and H3.
//
// Exit status: 0 success, 2 checked and false (not a central configuration),
// 1 on any input or runtime error.

#include "cnb/centralconfig.hpp"
#include "cnb/fixtures.hpp"
#include "cnb/io.hpp"
#include "cnb/moulton.hpp"
#include "cnb/relequil.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iostream>
#include <numbers>
#include <numeric>
#include <optional>
#include <sstream>

using namespace cnb;
using io::json;

namespace {

constexpr int kOk = 0;
constexpr int kError = 1;
constexpr int kFalse = 2;

// Writes text to path, or to stdout when path is empty.
void emit(const std::string& path, const std::string& text) {
    if (path.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream out(path);
    if (!out) throw Error(ErrorCode::InvalidInput, "cannot write " + path);
    out << text;
}

std::string dump(const json& j) { return j.dump(2) + "\n"; }

std::vector<double> parse_list(const std::string& s, const char* what) {
    std::vector<double> out;
    std::stringstream ss(s);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
        try {
            std::size_t used = 0;
            out.push_back(std::stod(tok, &used));
            if (used != tok.size()) throw std::invalid_argument(tok);
        } catch (const std::exception&) {
            throw Error(ErrorCode::InvalidInput, std::string("bad number '") + tok + "' in " + what);
        }
    }
    if (out.empty()) throw Error(ErrorCode::InvalidInput, std::string(what) + " is empty");
    return out;
}

struct Grid {
    double start = 0.0, stop = 0.0;
    int count = 0;
    double at(int k) const { return count == 1 ? start : start + (stop - start) * k / (count - 1); }
};

// start:stop:count
Grid parse_grid(const std::string& s) {
    std::vector<double> parts;
    std::stringstream ss(s);
    std::string tok;
    while (std::getline(ss, tok, ':')) parts.push_back(parse_list(tok, "--grid").front());
    if (parts.size() != 3 || parts[2] < 1 || parts[2] != std::floor(parts[2]))
        throw Error(ErrorCode::InvalidInput, "--grid expects start:stop:count");
    return {parts[0], parts[1], static_cast<int>(parts[2])};
}

double lambda_for(const Configuration& c, std::optional<double> given, double tol) {
    if (given) return *given;
    if (is_special_cc(c, tol)) return 0.0;
    return lambda_estimate(c);
}

// Checks one config; returns the report JSON with a verdict.
json verify_one(const Configuration& c, std::optional<double> given, double tol, bool& pass) {
    CCReport r = make_report(c, tol);
    json j;
    try {
        double lam = lambda_for(c, given, tol);
        r.lambda = lam;
        r.residual_max = cc_residual(c, lam).max;
        pass = r.residual_max < tol;
        j = io::report_json(r);
    } catch (const Error& e) {
        if (e.code() != ErrorCode::DegenerateDenominator) throw;
        // every body on the axes without being critical for U
        pass = false;
        j = io::report_json(r);
        j["lambda"] = nullptr;
    }
    j["tol"] = tol;
    j["verdict"] = pass ? "central configuration" : "not a central configuration";
    return j;
}

int cmd_verify(const std::string& path, double tol, const std::string& out) {
    std::ifstream in(path);
    if (!in) throw Error(ErrorCode::InvalidInput, "cannot read " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    const std::string text = ss.str();

    // A catalog written by find, moulton or fixtures export holds its
    // configurations under "ccs"
    json top = json::parse(text, nullptr, false);
    if (!top.is_discarded() && top.is_object() && top.contains("ccs")) {
        if (!top["ccs"].is_array()) throw Error(ErrorCode::InvalidInput, "ccs must be an array");
        json results = json::array();
        bool all = true;
        for (const auto& entry : top["ccs"]) {
            auto ic = io::parse_config(entry.dump());
            bool pass = false;
            results.push_back(verify_one(ic.config, ic.lambda, tol, pass));
            all = all && pass;
        }
        emit(out, dump({{"count", results.size()}, {"all_pass", all}, {"results", results}}));
        return all ? kOk : kFalse;
    }
    auto ic = io::parse_config(text);
    bool pass = false;
    emit(out, dump(verify_one(ic.config, ic.lambda, tol, pass)));
    return pass ? kOk : kFalse;
}

int cmd_find(const std::vector<double>& masses, Space s, double c, int seeds, std::uint64_t seed, bool plane,
             double tol, const std::string& out) {
    auto res = find_cc_multi(masses, s, {c, tol}, seeds, seed, plane ? SeedLayout::Plane : SeedLayout::Default);
    json ccs = json::array();
    for (const auto& r : res) {
        json j = io::report_json(r.report);
        j["iterations"] = r.iterations;
        ccs.push_back(j);
    }
    emit(out, dump({{"space", to_string(s)}, {"c", c}, {"seeds", seeds}, {"count", ccs.size()}, {"ccs", ccs}}));
    return res.empty() ? kFalse : kOk;
}

int cmd_moulton(const std::vector<double>& masses, Space s, double c, const std::string& csv, const std::string& out) {
    json top{{"space", to_string(s)}, {"c", c}, {"masses", masses}};
    json ccs = json::array();
    if (s == Space::H3) {
        auto cat = moulton_catalog_h(masses, c);
        json classes = json::array();
        for (const auto& k : cat) {
            auto conf = to_configuration(k.config);
            json r = io::report_json(make_report(conf));
            r["lambda"] = k.config.lambda;
            ccs.push_back(r);
            classes.push_back({{"ordering", k.ordering},
                               {"thetas", k.config.thetas},
                               {"lambda", k.config.lambda},
                               {"I", k.I},
                               {"U", k.U},
                               {"min_hessian_eig", k.min_hessian_eig}});
        }
        top["count"] = cat.size();
        top["classes"] = classes;
        if (!csv.empty()) {
            std::ostringstream os;
            io::write_moulton_csv(os, cat);
            emit(csv, os.str());
        }
    } else {
        if (masses.size() != 2) throw Error(ErrorCode::InvalidInput, "on S3 only the two-body count is available");
        auto sol = solve_two_body_s(masses[0], masses[1], c);
        json solutions = json::array();
        std::vector<TwoBodySConfig> shown = sol.solutions;
        if (sol.continuum) shown.push_back(two_body_continuum_member(masses[0], std::numbers::pi / 8));
        for (const auto& t : shown) {
            auto conf = to_configuration(t);
            ccs.push_back(io::report_json(make_report(conf)));
            solutions.push_back({{"theta1", t.theta1}, {"theta2", t.theta2}});
        }
        if (sol.continuum) top["count"] = "continuum";
        else top["count"] = sol.count();
        top["solutions"] = solutions;
        if (!csv.empty()) {
            std::ostringstream os;
            os << "theta1,theta2,m1,m2,c\n";
            for (const auto& t : shown)
                os << io::fmt(t.theta1) << ',' << io::fmt(t.theta2) << ',' << io::fmt(t.m1) << ',' << io::fmt(t.m2)
                   << ',' << io::fmt(t.c) << '\n';
            emit(csv, os.str());
        }
    }
    top["ccs"] = ccs;
    emit(out, dump(top));
    return kOk;
}

int cmd_simulate(const std::string& path, std::optional<double> alpha, double beta, double horizon, double dt,
                 long every, const std::string& csv, const std::string& out) {
    auto ic = io::read_config_file(path);
    CCReport rep = make_report(ic.config);
    if (ic.lambda) rep.lambda = *ic.lambda;
    REFamily fam;
    try {
        fam = re_family_from_cc(rep, ic.config);
    } catch (const Error& e) {
        if (e.code() != ErrorCode::NotACentralConfig) throw;
        std::cerr << "error: " << e.what() << "\n";
        return kFalse;
    }
    REInstance inst = pick_member(fam, ic.config, beta, alpha);
    long steps = std::lround(horizon / dt);
    auto tr = integrate(re_initial_state(inst), dt, steps, every);
    if (!csv.empty()) {
        std::ostringstream os;
        io::write_trajectory_csv(os, tr);
        emit(csv, os.str());
    }
    auto rig = certify_rigidity(inst, horizon, dt);
    json j{{"re", io::re_json(inst, rep)},
           {"family", to_string(fam.constraint)},
           {"horizon", horizon},
           {"dt", dt},
           {"max_distance_drift", rig.max_distance_drift},
           {"conserved_drift", rig.conserved_drift},
           {"orbit_deviation", rig.orbit_deviation},
           {"conserved_start", io::conserved_json(0.0, conserved(tr.states.front()))},
           {"conserved_end", io::conserved_json(tr.times.back(), conserved(tr.states.back()))}};
    if (tr.singular_encounter) j["singular_encounter"] = *tr.singular_encounter;
    emit(out, dump(j));
    return tr.singular_encounter ? kError : kOk;
}

Fixture sweep_member(const std::string& family, double p, double m) {
    if (family == "lagrangian_s2") return fixtures::lagrangian_s2(m, p);
    if (family == "lagrangian_h2") return fixtures::lagrangian_h2(m, p);
    if (family == "geodesic_h1") return fixtures::geodesic_h1(m, p);
    if (family == "geodesic_s1_isosceles") return fixtures::geodesic_s1_isosceles(m, p);
    if (family == "isosceles_s2") return fixtures::isosceles_s2(p);
    throw Error(ErrorCode::InvalidInput, "unknown family '" + family + "'");
}

int cmd_sweep(const std::string& family, const Grid& g, double m, const std::vector<double>& masses, Space s,
              std::uint64_t seed, double tol, const std::string& out) {
    std::ostringstream os;
    os << "param,lambda,residual,class,is_special\n";
    for (int k = 0; k < g.count; ++k) {
        double p = g.at(k);
        Configuration c;
        bool ok = true;
        try {
            if (family == "continuum") {
                // one search per level of the moment of inertia, same seed throughout
                auto res = find_cc_multi(masses, s, {p, tol}, 1, seed);
                if (res.empty()) ok = false;
                else c = res.front().config;
            } else {
                c = sweep_member(family, p, m).config;
            }
        } catch (const Error& e) {
            if (e.code() == ErrorCode::InvalidInput) throw;
            ok = false;
        }
        if (!ok) {
            os << io::fmt(p) << ",,,out-of-domain,\n";
            continue;
        }
        CCReport r = make_report(c, tol);
        os << io::fmt(p) << ',' << io::fmt(r.lambda) << ',' << io::fmt(r.residual_max) << ',' << to_string(r.cc_class)
           << ',' << (r.is_special ? "true" : "false") << '\n';
    }
    emit(out, os.str());
    return kOk;
}

int cmd_fixtures_export(const std::string& out) {
    json ccs = json::array();
    for (const auto& f : fixtures::all()) {
        json j = io::report_json(make_report(f.config));
        j["name"] = f.name;
        j["family"] = f.family;
        j["expected"] = f.special ? json("special") : json(f.lambda);
        if (!f.special) j["lambda"] = f.lambda;
        ccs.push_back(j);
    }
    emit(out, dump({{"count", ccs.size()}, {"ccs", ccs}}));
    return kOk;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Central configurations and relative equilibria of the curved N-body problem"};
    app.require_subcommand(1);

    std::string out, csv, space_name = "S3", masses_text, grid_text, family, config_path;
    double c = 0.0, dt = 1e-3, horizon = 10.0, tol = 1e-10, beta = 0.0, mass = 1.0;
    std::optional<double> alpha;
    int seeds = 8;
    long every = 10;
    std::uint64_t seed = 1;
    bool plane = false;

    auto add_out = [&](CLI::App* sub) { sub->add_option("--out", out, "Output file (default stdout)"); };
    auto add_space = [&](CLI::App* sub) {
        sub->add_option("--space", space_name, "S3 or H3")->check(CLI::IsMember({"S3", "H3"}));
    };

    auto* verify = app.add_subcommand("verify", "Check whether a configuration is central");
    verify->add_option("config", config_path, "Configuration or catalog JSON")->required();
    verify->add_option("--tol", tol, "Residual tolerance")->check(CLI::PositiveNumber);
    add_out(verify);

    auto* find = app.add_subcommand("find", "Search central configurations at I = c from random seeds");
    find->add_option("--masses", masses_text, "Comma separated masses")->required();
    add_space(find);
    find->add_option("--c", c, "Moment of inertia level")->required();
    find->add_option("--seeds", seeds, "Number of random starts")->check(CLI::PositiveNumber);
    find->add_option("--seed", seed, "Base random seed");
    find->add_flag("--plane", plane, "Seed H3 searches in the hyperbolic plane instead of on a geodesic");
    find->add_option("--tol", tol, "Tolerance")->check(CLI::PositiveNumber);
    add_out(find);

    auto* simulate = app.add_subcommand("simulate", "Integrate a relative equilibrium generated by a CC");
    simulate->add_option("config", config_path, "Central configuration JSON")->required();
    simulate->add_option("--beta", beta, "beta of the generator");
    simulate->add_option("--alpha", alpha, "alpha, required for families without a constraint");
    simulate->add_option("--horizon", horizon, "Final time")->check(CLI::NonNegativeNumber);
    simulate->add_option("--dt", dt, "Step size")->check(CLI::PositiveNumber);
    simulate->add_option("--every", every, "Record every k-th step in the CSV")->check(CLI::PositiveNumber);
    simulate->add_option("--csv", csv, "Trajectory CSV file");
    add_out(simulate);

    auto* moulton = app.add_subcommand("moulton", "Count geodesic central configurations");
    moulton->add_option("--masses", masses_text, "Comma separated masses")->required();
    add_space(moulton);
    moulton->add_option("--c", c, "Moment of inertia level")->required();
    moulton->add_option("--csv", csv, "Catalog CSV file");
    add_out(moulton);

    auto* sweep = app.add_subcommand("sweep", "Tabulate lambda over a parameter grid");
    sweep->add_option("family", family,
                      "lagrangian_s2, lagrangian_h2, geodesic_h1, geodesic_s1_isosceles, isosceles_s2 or continuum")
        ->required();
    sweep->add_option("--grid", grid_text, "start:stop:count")->required();
    sweep->add_option("--m", mass, "Body mass for equal-mass families")->check(CLI::PositiveNumber);
    sweep->add_option("--masses", masses_text, "Masses for the continuum sweep");
    add_space(sweep);
    sweep->add_option("--seed", seed, "Random seed for the continuum sweep");
    sweep->add_option("--tol", tol, "Tolerance")->check(CLI::PositiveNumber);
    add_out(sweep);

    auto* fixtures_cmd = app.add_subcommand("fixtures", "Built-in example configurations");
    fixtures_cmd->require_subcommand(1);
    auto* fx_export = fixtures_cmd->add_subcommand("export", "Write every fixture as a catalog");
    add_out(fx_export);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? kOk : kError;
    }

    try {
        Space s = space_from_string(space_name);
        if (*verify) return cmd_verify(config_path, tol, out);
        if (*find) return cmd_find(parse_list(masses_text, "--masses"), s, c, seeds, seed, plane, tol, out);
        if (*simulate) return cmd_simulate(config_path, alpha, beta, horizon, dt, every, csv, out);
        if (*moulton) return cmd_moulton(parse_list(masses_text, "--masses"), s, c, csv, out);
        if (*sweep) {
            std::vector<double> masses;
            if (family == "continuum") masses = parse_list(masses_text, "--masses");
            return cmd_sweep(family, parse_grid(grid_text), mass, masses, s, seed, tol, out);
        }
        if (*fx_export) return cmd_fixtures_export(out);
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kError;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kError;
    }
    return kError;
}
