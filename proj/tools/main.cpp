#include "loopidx/jsonio.hpp"
#include "loopidx/selftest.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

using namespace loopidx;
using jsonio::json;

namespace {

rootsys::RootDatum datum(const std::string& s) {
    return rootsys::build_root_datum(rootsys::LieSpec::parse(s));
}

std::vector<std::string> split(const std::string& text, char sep) {
    std::vector<std::string> out;
    std::stringstream ss(text);
    std::string tok;
    while (std::getline(ss, tok, sep)) out.push_back(tok);
    return out;
}

rootsys::WeightVec parse_weight(const std::string& text, int rank) {
    rootsys::WeightVec w;
    if (!text.empty())
        for (const auto& tok : split(text, ',')) w.push_back(std::stoll(tok));
    if (w.empty()) w.assign(rank, 0);
    if ((int)w.size() != rank)
        throw std::invalid_argument("weight needs one integer per coordinate");
    return w;
}

rootsys::CoweightQ parse_coweight(const std::string& text, int rank) {
    rootsys::CoweightQ xi;
    for (const auto& tok : split(text, ',')) xi.push_back(Rational::parse(tok));
    if ((int)xi.size() != rank)
        throw std::invalid_argument("base point needs one rational per coordinate");
    return xi;
}

charring::Window parse_window(const std::string& text, int rank, long long fallback) {
    if (text.empty()) return charring::Window::cube(rank, fallback);
    auto parts = split(text, ',');
    if ((int)parts.size() != rank && parts.size() != 1)
        throw std::invalid_argument("window needs one lo:hi range per coordinate");
    charring::Window win;
    win.lo.resize(rank);
    win.hi.resize(rank);
    for (int i = 0; i < rank; ++i) {
        const auto& p = parts[parts.size() == 1 ? 0 : i];
        auto colon = p.find(':');
        if (colon == std::string::npos)
            throw std::invalid_argument("window ranges look like lo:hi");
        win.lo[i] = std::stoll(p.substr(0, colon));
        win.hi[i] = std::stoll(p.substr(colon + 1));
        if (win.hi[i] < win.lo[i]) throw std::invalid_argument("empty window range");
    }
    return win;
}

json read_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open input file: " + path);
    return json::parse(in);
}

void emit(const json& meta, const json& payload) {
    std::cout << meta.dump() << "\n" << payload.dump(2) << "\n";
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact localization toolkit for torus fixed-point index data"};
    app.require_subcommand(1);

    std::string group = "A1*1";
    int order = 4;
    double tol = 1e-8;
    unsigned long seed = 0;
    std::string format = "json";
    std::string window_text, weight_text, base_text;
    std::string field_path, test_path, points_path, pair_path;
    std::string mode = "T";
    int level = 0, genus = 1;
    bool with_oracle = false;

    auto add_common = [&](CLI::App* c) {
        c->add_option("--group", group, "product of simple factors, e.g. A1*2+G2*1");
        c->add_option("--order", order, "series truncation order")->check(CLI::Range(0, 12));
        c->add_option("--tol", tol, "numeric tolerance");
        c->add_option("--seed", seed, "seed for randomized sweeps");
        c->add_option("--format", format, "output format")
            ->check(CLI::IsMember({"json", "csv"}));
        return c;
    };

    auto* cmd_roots = add_common(app.add_subcommand("roots", "root datum summary"));
    auto* cmd_tlevel =
        add_common(app.add_subcommand("tlevel", "finite level subgroup and its orbits"));
    auto* cmd_char =
        add_common(app.add_subcommand("char", "irreducible character table"));
    cmd_char->add_option("--weight", weight_text, "dominant weight, comma separated");
    auto* cmd_jet = add_common(
        app.add_subcommand("jet-solve", "fixed-point jet over a base point"));
    cmd_jet->add_option("--field", field_path, "vector field JSON")->required();
    cmd_jet->add_option("--base", base_text, "base point, comma separated rationals")
        ->required();
    auto* cmd_poisson = add_common(app.add_subcommand(
        "poisson-check", "compare the direct and fixed-point summation sides"));
    cmd_poisson->add_option("--field", field_path, "vector field JSON")->required();
    cmd_poisson->add_option("--test", test_path, "test character JSON")->required();
    auto* cmd_index = add_common(
        app.add_subcommand("index", "assemble the localized index distribution"));
    cmd_index->add_option("--points", points_path, "fixed-point data JSON")->required();
    cmd_index->add_option("--field", field_path, "vector field JSON (default zero)");
    cmd_index->add_option("--mode", mode, "assembly mode")
        ->check(CLI::IsMember({"T", "G"}));
    cmd_index->add_option("--pair", pair_path, "character to pair the result with");
    auto* cmd_verlinde =
        add_common(app.add_subcommand("verlinde", "genus-h fusion dimension count"));
    cmd_verlinde->add_option("--level", level, "non-negative level k")->required();
    cmd_verlinde->add_option("--genus", genus, "genus h >= 1")->required();
    cmd_verlinde->add_flag("--oracle", with_oracle, "also evaluate the closed form");
    auto* cmd_toy = add_common(
        app.add_subcommand("toy-index", "alternating orbit sum on a window"));
    cmd_toy->add_option("--weight", weight_text, "dominant weight, comma separated");
    cmd_toy->add_option("--window", window_text, "per-coordinate lo:hi ranges");
    auto* cmd_selftest =
        add_common(app.add_subcommand("selftest", "seeded property sweep"));

    CLI11_PARSE(app, argc, argv);

    try {
        json meta = jsonio::metadata_json(group, order, tol, seed);

        if (*cmd_roots) {
            auto d = datum(group);
            json roots = json::array();
            for (const auto& a : d.positive_roots) roots.push_back(a);
            json coroots = json::array();
            for (const auto& av : d.positive_coroots)
                coroots.push_back(jsonio::coweight_json(av));
            emit(meta, {{"rank", d.rank},
                        {"weyl_order", d.weyl_order},
                        {"dual_coxeter", d.dual_coxeter},
                        {"positive_roots", roots},
                        {"positive_coroots", coroots},
                        {"gram", d.gram},
                        {"tlevel_order", tlevel::tlevel_order(d)}});
            return 0;
        }

        if (*cmd_tlevel) {
            emit(meta, jsonio::tlevel_report_json(datum(group)));
            return 0;
        }

        if (*cmd_char) {
            auto d = datum(group);
            auto wl = rootsys::weyl_elements(d);
            auto lam = parse_weight(weight_text, d.rank);
            auto chi = charring::irreducible_character<jetcalc::Cpx>(d, wl, lam);
            if (format == "csv") {
                std::cout << meta.dump() << "\n";
                jsonio::multiplicity_csv(std::cout, selftest::poly_table(chi, d.rank));
            } else {
                emit(meta, {{"character", jsonio::laurent_json(chi)},
                            {"dimension", charring::coefficient_sum(chi).real()}});
            }
            return 0;
        }

        if (*cmd_jet) {
            auto d = datum(group);
            auto v = jsonio::json_field(read_json_file(field_path));
            if (v.rank != d.rank) throw std::invalid_argument("field rank mismatch");
            auto base = parse_coweight(base_text, d.rank);
            auto jet = jetcalc::solve_fixed_point(d, v, base, order);
            auto det = jetcalc::flow_jacobian_det(d, v, jet, order);
            emit(meta, {{"jet", jsonio::jet_json(jet)},
                        {"jacobian", jsonio::series_json(det)}});
            return 0;
        }

        if (*cmd_poisson) {
            auto d = datum(group);
            auto v = jsonio::json_field(read_json_file(field_path));
            if (v.rank != d.rank) throw std::invalid_argument("field rank mismatch");
            auto f = jsonio::json_laurent(read_json_file(test_path));
            auto report = poisson::poisson_check(d, v, f, order, tol);
            emit(meta, jsonio::poisson_report_json(report));
            return report.pass ? 0 : 1;
        }

        if (*cmd_index) {
            auto d = datum(group);
            auto data = jsonio::json_fixed_point_data(read_json_file(points_path));
            jetcalc::VectorFieldSeries v;
            v.rank = d.rank;
            if (!field_path.empty()) v = jsonio::json_field(read_json_file(field_path));
            if (v.rank != d.rank) throw std::invalid_argument("field rank mismatch");
            auto dist = locindex::assemble_fixed_point_index(
                d, data, v, order,
                mode == "G" ? locindex::AssemblyMode::G : locindex::AssemblyMode::T);
            json payload = {{"distribution", jsonio::distribution_json(dist)}};
            if (!pair_path.empty()) {
                auto f = jsonio::json_laurent(read_json_file(pair_path));
                payload["paired"] =
                    jsonio::series_json(locindex::pair_with_character(dist, f, order));
            }
            emit(meta, payload);
            return 0;
        }

        if (*cmd_verlinde) {
            auto p = models::make_verlinde_params(group, level, genus);
            auto direct = models::verlinde_fixed_point(p);
            auto assembled = models::verlinde_assembled(p);
            double route_gap = std::abs(direct - assembled);
            bool pass = route_gap < 1e-8;
            json payload = {{"value", std::llround(direct.real())},
                            {"assembled", assembled.real()},
                            {"route_gap", route_gap}};
            if (with_oracle) {
                double oracle = models::verlinde_trig_oracle(p);
                double deviation = std::abs(direct.real() - oracle);
                payload["oracle"] = oracle;
                payload["deviation"] = deviation;
                pass = pass && deviation < std::max(tol, 1e-6);
            }
            emit(meta, payload);
            return pass ? 0 : 1;
        }

        if (*cmd_toy) {
            auto d = datum(group);
            auto lam = parse_weight(weight_text, d.rank);
            auto win = parse_window(window_text, d.rank, 10);
            auto direct = models::coadjoint_toy_index(d, lam, win);
            auto piped = models::coadjoint_toy_index_by_contributions(d, lam, win);
            double dev = charring::max_abs_diff(direct, piped);
            if (format == "csv") {
                std::cout << meta.dump() << "\n";
                jsonio::multiplicity_csv(std::cout, direct);
            } else {
                emit(meta, {{"multiplicities", jsonio::multiplicity_json(direct)},
                            {"two_path_deviation", dev}});
            }
            return dev == 0.0 ? 0 : 1;
        }

        if (*cmd_selftest) {
            std::cout << meta.dump() << "\n";
            auto result = selftest::run_selftest(seed, std::cout);
            json summary = {{"checks", result.checks},
                            {"failures", result.failures},
                            {"pass", result.pass()}};
            std::cout << summary.dump() << "\n";
            return result.pass() ? 0 : 1;
        }
    } catch (const json::exception& e) {
        std::cout << json{{"error", {{"type", "json"}, {"message", e.what()}}}}.dump()
                  << "\n";
        return 1;
    } catch (const std::invalid_argument& e) {
        std::cout << json{{"error",
                           {{"type", "invalid_argument"}, {"message", e.what()}}}}
                         .dump()
                  << "\n";
        return 1;
    } catch (const std::domain_error& e) {
        std::cout << json{{"error", {{"type", "domain_error"}, {"message", e.what()}}}}
                         .dump()
                  << "\n";
        return 1;
    } catch (const std::length_error& e) {
        std::cout << json{{"error", {{"type", "length_error"}, {"message", e.what()}}}}
                         .dump()
                  << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cout << json{{"error", {{"type", "error"}, {"message", e.what()}}}}.dump()
                  << "\n";
        return 1;
    }
    return 0;
}
