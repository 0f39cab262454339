// Command-line front end: spectrum, verify, bae, ground, thermo, dispersion.
// Exit status is 0 iff every requested computation and check succeeded.

#include "axxz/workbench.hpp"

#include <CLI11.hpp>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <variant>

using namespace axxz;
using nlohmann::json;

// Threaded BLAS reductions may reorder sums; outputs must be byte-identical.
extern "C" void openblas_set_num_threads(int);

namespace {

std::vector<std::string> split_list(const std::string& text) {
    std::vector<std::string> out;
    std::stringstream ss(text);
    std::string tok;
    while (std::getline(ss, tok, ','))
        if (!tok.empty()) out.push_back(tok);
    return out;
}

void emit_json(const json& j, const std::string& path) {
    if (path.empty())
        std::cout << j.dump(2) << '\n';
    else
        write_file_atomic(path, j.dump(2) + "\n");
}

cd parse_complex(const json& j) { return {j.at(0).get<double>(), j.at(1).get<double>()}; }

struct BaeArgs {
    std::string seed = "ground";
    double alpha = 0.0;
    int pair_n = 3;
    std::string side = "left";
    double m = 3.0;
    double offset = 0.6;
    std::string w0;
    std::string out, roots_csv;
};

StringSeed string_seed(const std::string& type, const BaeArgs& a) {
    StringSeed s;
    s.type = excitation_type_from_string(type);
    s.alpha = a.alpha;
    s.n = a.pair_n;
    if (a.side != "left" && a.side != "right") throw Error(ErrorCode::InvalidSpec, "side must be left or right");
    s.side = a.side == "left" ? -1 : 1;
    s.m_guess = a.m;
    s.offset = a.offset;
    return s;
}

// A preset name or a JSON file holding either a string seed or explicit roots.
std::variant<StringSeed, RootGuess> read_seed(const BaeArgs& a) {
    if (!std::filesystem::exists(a.seed)) return string_seed(a.seed, a);
    std::ifstream is(a.seed);
    json j;
    try {
        is >> j;
    } catch (const json::exception& e) {
        throw Error(ErrorCode::SchemaMismatch, "seed file: " + std::string(e.what()));
    }
    try {
        if (j.contains("type")) {
            BaeArgs b = a;
            b.alpha = j.value("alpha", a.alpha);
            b.pair_n = j.value("n", a.pair_n);
            b.side = j.value("side", a.side);
            b.m = j.value("m", a.m);
            b.offset = j.value("offset", a.offset);
            return string_seed(j.at("type").get<std::string>(), b);
        }
        RootGuess g;
        for (const auto& z : j.at("z")) g.z.push_back(parse_complex(z));
        for (const auto& w : j.at("w")) g.w.push_back(parse_complex(w));
        if (j.contains("lambda0")) g.lambda0 = parse_complex(j.at("lambda0"));
        return g;
    } catch (const json::exception& e) {
        throw Error(ErrorCode::SchemaMismatch, "seed file: " + std::string(e.what()));
    }
}

int cmd_spectrum(const JobConfig& cfg, const std::string& roots_csv) {
    const auto ds = run_spectrum_job(cfg);
    std::printf("# N=%d gamma=%.6g states=%zu failed=%d%s\n", ds.spec.N, ds.spec.gamma, ds.states.size(),
                ds.failed_states, ds.from_cache ? " (cached)" : "");
    std::printf("# id  energy        k/pi      W0  partner  kind                 z-roots\n");
    for (const auto& s : ds.states) {
        std::printf("%4d %13.8f %9.6f %+3d %7d  %-20s", s.state_id, s.energy, s.momentum_k / kPi, s.W0,
                    s.degenerate_partner, to_string(s.classification.kind));
        for (const cd& z : s.z_roots) std::printf(" (%.4f,%.4f)", z.real(), z.imag());
        for (const auto& f : s.flags) std::printf(" [%s]", f.c_str());
        std::printf("\n");
    }
    if (!roots_csv.empty()) write_roots_csv(ds, roots_csv);
    return ds.failed_states == 0 ? 0 : 1;
}

int cmd_verify(const JobConfig& cfg, const std::string& report_path) {
    const auto report = run_verification(cfg);
    if (report_path.empty()) {
        std::cout << report.to_json().dump(2) << '\n';
    } else {
        write_file_atomic(report_path, report.to_json().dump(2) + "\n");
        for (const auto& c : report.checks)
            std::printf("%-4s %-24s %.3e (tol %.1e) %s\n", c.passed ? "PASS" : "FAIL", c.name.c_str(), c.value,
                        c.tolerance, c.detail.c_str());
    }
    return report.all_passed() ? 0 : 1;
}

int cmd_bae(const ChainSpec& spec, const BaeArgs& a) {
    const auto seed = read_seed(a);
    std::vector<int> branches;
    if (a.w0.empty())
        branches = {1, -1};
    else if (a.w0 == "+1" || a.w0 == "1")
        branches = {1};
    else if (a.w0 == "-1")
        branches = {-1};
    else
        throw Error(ErrorCode::InvalidSpec, "--w0 must be +1 or -1");

    json results = json::array();
    const BaeSolution* first = nullptr;
    std::vector<BaeSolution> sols;
    sols.reserve(branches.size());
    for (int w0 : branches) {
        try {
            sols.push_back(std::visit([&](const auto& s) { return solve_collocation(spec, s, w0); }, seed));
            results.push_back(solution_to_json(sols.back(), spec));
            if (!first) first = &sols.back();
        } catch (const Error& e) {
            results.push_back({{"requested_W0", w0}, {"error", e.what()}});
        }
    }
    emit_json(results, a.out);
    if (first && !a.roots_csv.empty()) write_solution_roots_csv(*first, a.roots_csv);
    return first ? 0 : 1;
}

int cmd_ground(const ChainSpec& spec, const std::string& qn_text, const std::string& out) {
    QuantumNumberConfig qn;
    if (qn_text == "symmetric") {
        qn = QuantumNumberConfig::symmetric(spec.N);
    } else {
        for (const auto& tok : split_list(qn_text)) qn.I.push_back(std::stod(tok));
    }
    const auto sol = solve_ground_log_form(spec, qn);
    auto j = solution_to_json(sol, spec);
    j["energy_density"] = j["energy"].get<double>() / spec.N;
    emit_json(j, out);
    return sol.converged ? 0 : 1;
}

int cmd_thermo(double gamma, const std::string& quantity, const std::string& csv, const std::string& zgrid) {
    const ThermoParams p(gamma);
    if (quantity == "eg") {
        QuadratureResult q;
        const double eg = ground_energy_density(p, &q);
        std::cout << json{{"gamma", gamma}, {"e_g", eg}, {"quadrature_change", q.change}, {"cutoff", q.cutoff}}.dump(2)
                  << '\n';
    } else if (quantity == "constraint") {
        const auto c = excitation_constraint(gamma);
        std::cout << json{{"gamma", gamma}, {"m", c.m}, {"beta_minus_alpha", c.beta_minus_alpha}}.dump(2) << '\n';
    } else if (quantity == "density") {
        const auto grid = parse_alpha_grid(zgrid);
        if (csv.empty()) {
            std::printf("z,density\n");
            for (double z : grid) std::printf("%.10g,%.17g\n", z, density_total(z, gamma));
        } else {
            write_density_csv(gamma, grid, csv);
        }
    } else {
        throw Error(ErrorCode::InvalidSpec, "quantity must be eg, density or constraint");
    }
    return 0;
}

int cmd_dispersion(const std::string& type, int n, double gamma, const std::string& alpha, const std::string& csv) {
    const auto curve = dispersion_curve(dispersion_type_from_string(type), parse_alpha_grid(alpha), n,
                                        ThermoParams(gamma));
    write_dispersion_csv(curve, csv);
    std::printf("wrote %zu points to %s\n", curve.energies.size(), csv.c_str());
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    openblas_set_num_threads(1);
    CLI::App app{"Anti-periodic XXZ chain: spectrum, t-W relation, Bethe roots, thermodynamic limit"};
    app.require_subcommand(1);

    int n = 4;
    double gamma = 0.6;
    std::uint64_t seed = 20240601;

    JobConfig spectrum_cfg;
    double tol = 1e-8;
    std::string out, roots_csv, timestamp;
    auto* spectrum = app.add_subcommand("spectrum", "Diagonalize, extract roots and observables for every state");
    spectrum->add_option("--n", n, "Chain length")->required();
    spectrum->add_option("--gamma", gamma, "Anisotropy, eta = i*gamma");
    spectrum->add_option("--out", out, "Dataset JSON path (reused when it matches)");
    spectrum->add_option("--tol", tol, "State-level residual tolerance");
    spectrum->add_option("--seed", seed, "Seed of the generic combination");
    spectrum->add_option("--roots-csv", roots_csv, "Root scatter CSV");
    spectrum->add_option("--timestamp", timestamp, "Provenance timestamp (omitted by default)");

    std::string checks, report, dataset;
    auto* verify = app.add_subcommand("verify", "Run the identity and cross-check suite");
    verify->add_option("--n", n, "Chain length")->required();
    verify->add_option("--gamma", gamma, "Anisotropy");
    verify->add_option("--checks", checks, "Comma-separated subset of checks");
    verify->add_option("--report", report, "Report JSON path");
    verify->add_option("--dataset", dataset, "Verify a stored dataset instead of rebuilding");
    verify->add_option("--seed", seed, "Seed of the generic combination and random probes");

    BaeArgs bae_args;
    auto* bae = app.add_subcommand("bae", "Solve the Bethe equations from a seed");
    bae->add_option("--n", n, "Chain length")->required();
    bae->add_option("--gamma", gamma, "Anisotropy");
    bae->add_option("--seed", bae_args.seed, "Preset (ground, type-I, type-II, type-III, asymmetric) or JSON file")
        ->required();
    bae->add_option("--alpha", bae_args.alpha, "String center");
    bae->add_option("--pair-n", bae_args.pair_n, "Type-III pair order");
    bae->add_option("--side", bae_args.side, "Asymmetric pair side: left or right");
    bae->add_option("--m", bae_args.m, "Asymmetric pair order guess (odd >= 3)");
    bae->add_option("--offset", bae_args.offset, "Asymmetric pair distance beyond the outermost root");
    bae->add_option("--w0", bae_args.w0, "+1 or -1 (both when omitted)");
    bae->add_option("--out", bae_args.out, "Solution JSON path");
    bae->add_option("--roots-csv", bae_args.roots_csv, "Root CSV of the first converged branch");

    std::string qn = "symmetric";
    auto* ground = app.add_subcommand("ground", "Real-root ground state from the logarithmic equations");
    ground->add_option("--n", n, "Chain length")->required();
    ground->add_option("--gamma", gamma, "Anisotropy");
    ground->add_option("--quantum-numbers", qn, "'symmetric' or a comma-separated list");
    ground->add_option("--out", out, "Solution JSON path");

    std::string quantity = "eg", csv, zgrid = "-10:10:0.01";
    auto* thermo = app.add_subcommand("thermo", "Thermodynamic-limit quantities");
    thermo->add_option("--gamma", gamma, "Anisotropy")->required();
    thermo->add_option("--quantity", quantity, "eg, density or constraint");
    thermo->add_option("--csv", csv, "Density CSV path");
    thermo->add_option("--z", zgrid, "Density grid start:stop:step");

    std::string type = "1", alpha;
    int pair_n = 3;
    auto* dispersion = app.add_subcommand("dispersion", "Excitation energy versus rapidity");
    dispersion->add_option("--type", type, "1, 2 or 3")->required();
    dispersion->add_option("--n", pair_n, "Pair order for type 3");
    dispersion->add_option("--gamma", gamma, "Anisotropy")->required();
    dispersion->add_option("--alpha", alpha, "Grid start:stop:step or list")->required();
    dispersion->add_option("--csv", csv, "Output CSV path")->required();

    CLI11_PARSE(app, argc, argv);

    try {
        auto job = [&] {
            JobConfig cfg;
            cfg.spec = ChainSpec(n, gamma);
            cfg.seed = seed;
            return cfg;
        };
        if (*spectrum) {
            JobConfig cfg = job();
            cfg.tol.bae = cfg.tol.tw = tol;
            cfg.out_path = out;
            if (!timestamp.empty()) cfg.timestamp = timestamp;
            return cmd_spectrum(cfg, roots_csv);
        }
        if (*verify) {
            JobConfig cfg = job();
            cfg.checks = split_list(checks);
            cfg.dataset_path = dataset;
            return cmd_verify(cfg, report);
        }
        if (*bae) return cmd_bae(ChainSpec(n, gamma), bae_args);
        if (*ground) return cmd_ground(ChainSpec(n, gamma), qn, out);
        if (*thermo) return cmd_thermo(gamma, quantity, csv, zgrid);
        if (*dispersion) return cmd_dispersion(type, pair_n, gamma, alpha, csv);
    } catch (const Error& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 2;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 2;
    }
    return 1;
}
