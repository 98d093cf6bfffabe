#include <CLI11.hpp>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <json.hpp>
#include <sstream>
#include <string>
#include <vector>

#include "fqgeom/charsums.hpp"
#include "fqgeom/errors.hpp"
#include "fqgeom/harness.hpp"
#include "fqgeom/isometry.hpp"
#include "fqgeom/simplex.hpp"
#include "fqgeom/sphere.hpp"

namespace {

using nlohmann::json;

void emit(const std::string& text, const std::string& out_path) {
    if (out_path.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream f(out_path, std::ios::binary);
    if (!f) throw std::runtime_error("cannot open output file " + out_path);
    f << text;
}

void emit_json(const json& j, const std::string& out_path) {
    emit(j.dump(2) + "\n", out_path);
}

std::vector<fqgeom::Residue> parse_distances(const std::string& csv) {
    std::vector<fqgeom::Residue> out;
    std::stringstream ss(csv);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (item.empty()) throw CLI::ValidationError("--distances", "empty entry");
        out.push_back(static_cast<fqgeom::Residue>(std::stoul(item)));
    }
    return out;
}

fqgeom::PointSet load_point_set(const std::string& path, fqgeom::Residue q,
                                std::uint32_t d) {
    std::ifstream f(path);
    if (!f) throw std::invalid_argument("cannot open " + path);
    fqgeom::PointSet e = fqgeom::read_point_set(f);
    if (e.q() != q || e.dim() != d) {
        throw std::invalid_argument(path + ": header (" + std::to_string(e.q()) + " " +
                                    std::to_string(e.dim()) + ") does not match --q/--d");
    }
    return e;
}

json report_to_json(const fqgeom::CountReport& rep) {
    json j;
    j["exact"] = rep.exact_count;
    j["main_term"] = {{"value", rep.main_global.convert_to<double>()},
                      {"exact", rep.main_global.str()}};
    j["main_term_stepwise"] = {{"value", rep.main_stepwise.convert_to<double>()},
                               {"exact", rep.main_stepwise.str()}};
    j["residual"] = {{"value", rep.residual.convert_to<double>()},
                     {"exact", rep.residual.str()}};
    j["residual_bound"] = rep.residual_bound;
    j["c_test"] = rep.c_test;
    j["pass"] = rep.pass;
    return j;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"character sums, sphere spectra, and distance-configuration counting"
                 " over F_q^d"};
    app.require_subcommand(1);
    std::string out_path;
    app.add_option("--out", out_path, "write the report here instead of stdout");

    // sphere
    auto* sphere_cmd = app.add_subcommand("sphere", "sphere size and transform values");
    std::uint32_t sp_q = 0, sp_d = 0, sp_t = 0;
    bool sp_scan = false;
    unsigned sp_threads = 1;
    sphere_cmd->add_option("--q", sp_q, "odd prime modulus")->required();
    sphere_cmd->add_option("--d", sp_d, "dimension")->required();
    sphere_cmd->add_option("--t", sp_t, "radius parameter in F_q*")->required();
    sphere_cmd->add_flag("--scan", sp_scan, "run the full decay scan over m != 0");
    sphere_cmd->add_option("--threads", sp_threads, "worker threads for the scan");

    // weil
    auto* weil_cmd = app.add_subcommand("weil", "Kloosterman sums against the 2*sqrt(q) bound");
    std::uint32_t we_q = 0;
    std::string we_char = "both";
    bool we_upto = false;
    weil_cmd->add_option("--q", we_q, "odd prime (or upper limit with --upto)")->required();
    weil_cmd->add_option("--character", we_char, "trivial, quadratic, or both")
        ->check(CLI::IsMember({"trivial", "quadratic", "both"}));
    weil_cmd->add_flag("--upto", we_upto, "scan every odd prime <= q");

    // count
    auto* count_cmd = app.add_subcommand("count", "simplex configuration counting");
    std::uint32_t co_q = 0, co_d = 0, co_k = 1;
    std::string co_distances, co_set;
    double co_density = -1.0;
    std::uint64_t co_seed = 0;
    bool co_nondeg = false;
    double co_budget = 1e8;
    double co_ctest = 4.0;
    unsigned co_threads = 1;
    count_cmd->add_option("--q", co_q)->required();
    count_cmd->add_option("--d", co_d)->required();
    count_cmd->add_option("--k", co_k)->required();
    count_cmd->add_option("--distances", co_distances, "t01,t02,t12,... in F_q*")->required();
    count_cmd->add_option("--set", co_set, "point-set file");
    count_cmd->add_option("--random", co_density, "sample E at this density instead");
    count_cmd->add_option("--seed", co_seed, "seed for --random");
    count_cmd->add_flag("--nondegenerate", co_nondeg, "count only general-position tuples");
    count_cmd->add_option("--budget", co_budget, "work budget for the counter");
    count_cmd->add_option("--c-test", co_ctest, "residual slack constant");
    count_cmd->add_option("--threads", co_threads);

    // isometry
    auto* iso_cmd = app.add_subcommand("isometry", "construct the map between congruent simplices");
    std::uint32_t is_q = 0, is_d = 0;
    std::string is_a, is_b;
    iso_cmd->add_option("--q", is_q)->required();
    iso_cmd->add_option("--d", is_d)->required();
    iso_cmd->add_option("--simplex-a", is_a, "vertex list file (point-set format)")->required();
    iso_cmd->add_option("--simplex-b", is_b, "vertex list file (point-set format)")->required();

    // experiment
    auto* exp_cmd = app.add_subcommand("experiment", "threshold sweep, CSV output");
    fqgeom::ExperimentConfig cfg;
    std::uint32_t ex_q = 0;
    std::string ex_sweep = "all";
    std::string ex_densities = "1.0";
    exp_cmd->add_option("--q", ex_q)->required();
    exp_cmd->add_option("--d", cfg.d)->required();
    exp_cmd->add_option("--k", cfg.k)->required();
    exp_cmd->add_option("--sweep", ex_sweep, "all, random:N, or t01,t02,...");
    exp_cmd->add_option("--densities", ex_densities, "comma-separated densities in (0,1]");
    exp_cmd->add_option("--trials", cfg.trials, "sets per density");
    exp_cmd->add_option("--seed", cfg.seed)->required();
    exp_cmd->add_option("--c-test", cfg.c_test);
    exp_cmd->add_option("--budget", cfg.budget);
    exp_cmd->add_option("--threads", cfg.threads);

    // bench-dft
    auto* bench_cmd = app.add_subcommand("bench-dft", "naive vs factorized transform timing");
    std::uint32_t be_q = 0, be_d = 0, be_rep = 3;
    bench_cmd->add_option("--q", be_q)->required();
    bench_cmd->add_option("--d", be_d)->required();
    bench_cmd->add_option("--repeats", be_rep);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        if (sphere_cmd->parsed()) {
            const fqgeom::SphereSpec spec{sp_q, sp_d, sp_t};
            json j;
            j["q"] = sp_q;
            j["d"] = sp_d;
            j["t"] = sp_t;
            j["size"] = fqgeom::sphere_size(spec);
            fqgeom::Point zero;
            zero.coords.assign(sp_d, 0);
            const fqgeom::Cplx at0 = fqgeom::sphere_ft_closed(spec, zero);
            j["ft_at_zero"] = {at0.real(), at0.imag()};
            if (sp_scan) {
                const auto rep = fqgeom::sphere_decay_scan(spec, sp_threads);
                j["decay_max_normalized"] = rep.max_normalized;
                j["frequencies"] = rep.frequencies;
                j["pass"] = rep.pass;
            }
            emit_json(j, out_path);
        } else if (weil_cmd->parsed()) {
            std::vector<std::uint32_t> primes;
            if (we_upto) {
                for (std::uint32_t p = 3; p <= we_q; ++p) {
                    if (fqgeom::is_odd_prime(p)) primes.push_back(p);
                }
            } else {
                primes.push_back(we_q);
            }
            std::vector<fqgeom::MultCharacter> chars;
            if (we_char != "quadratic") chars.push_back(fqgeom::MultCharacter::trivial());
            if (we_char != "trivial") chars.push_back(fqgeom::MultCharacter::quadratic());
            json results = json::array();
            bool all_pass = true;
            for (std::uint32_t p : primes) {
                const fqgeom::FieldCtx ctx(p);
                for (const auto& psi : chars) {
                    const auto rep = fqgeom::weil_scan(ctx, psi);
                    all_pass = all_pass && rep.pass;
                    results.push_back({{"q", p},
                                       {"character", psi.name()},
                                       {"max_abs", rep.max_abs},
                                       {"bound", rep.bound},
                                       {"pass", rep.pass}});
                }
            }
            emit_json(json{{"results", results}, {"pass", all_pass}}, out_path);
            if (!all_pass) return 1;
        } else if (count_cmd->parsed()) {
            if (co_set.empty() == (co_density < 0.0)) {
                std::cerr << "count: give exactly one of --set or --random\n";
                return 2;
            }
            const fqgeom::PointSet e =
                co_set.empty() ? fqgeom::sample_set(co_q, co_d, co_density, co_seed)
                               : load_point_set(co_set, co_q, co_d);
            fqgeom::SimplexSpec spec{co_k, parse_distances(co_distances)};
            fqgeom::CountOptions opts;
            opts.nondegenerate_only = co_nondeg;
            opts.work_budget = co_budget;
            opts.threads = co_threads;
            const auto rep = fqgeom::concentration_report(e, spec, opts, co_ctest);
            json j = report_to_json(rep);
            j["q"] = co_q;
            j["d"] = co_d;
            j["k"] = co_k;
            j["distances"] = spec.distances;
            j["set_size"] = e.size();
            j["threshold"] = fqgeom::threshold(co_q, co_d, co_k);
            j["nondegenerate_only"] = co_nondeg;
            emit_json(j, out_path);
        } else if (iso_cmd->parsed()) {
            const fqgeom::PointSet a = load_point_set(is_a, is_q, is_d);
            const fqgeom::PointSet b = load_point_set(is_b, is_q, is_d);
            const auto u = fqgeom::build_isometry(a.points(), b.points(), is_q, is_d);
            json j;
            j["q"] = is_q;
            j["d"] = is_d;
            j["matrix"] = u.matrix.a;
            j["translation"] = u.translation.coords;
            j["verified"] = u.orthogonal();
            emit_json(j, out_path);
        } else if (exp_cmd->parsed()) {
            cfg.q = ex_q;
            if (ex_sweep == "all") {
                cfg.sweep = fqgeom::SweepMode::all;
            } else if (ex_sweep.rfind("random:", 0) == 0) {
                cfg.sweep = fqgeom::SweepMode::random_n;
                cfg.random_count = static_cast<std::uint32_t>(std::stoul(ex_sweep.substr(7)));
            } else {
                cfg.sweep = fqgeom::SweepMode::explicit_one;
                cfg.explicit_distances = parse_distances(ex_sweep);
            }
            cfg.densities.clear();
            std::stringstream ss(ex_densities);
            std::string item;
            while (std::getline(ss, item, ',')) cfg.densities.push_back(std::stod(item));
            std::ostringstream csv;
            fqgeom::run_threshold_experiment(cfg, csv);
            emit(csv.str(), out_path);
        } else if (bench_cmd->parsed()) {
            const auto rep = fqgeom::bench_dft(be_q, be_d, be_rep);
            json j;
            j["q"] = be_q;
            j["d"] = be_d;
            j["repeats"] = be_rep;
            j["naive_ns"] = rep.naive_ns;
            j["factorized_ns"] = rep.factorized_ns;
            j["speedup"] = rep.factorized_ns > 0.0 ? rep.naive_ns / rep.factorized_ns : 0.0;
            j["max_abs_diff"] = rep.max_abs_diff;
            emit_json(j, out_path);
        }
    } catch (const fqgeom::DomainError& e) {
        emit_json(json{{"error", {{"kind", e.kind()}, {"message", e.what()}}}}, out_path);
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 0;
}
