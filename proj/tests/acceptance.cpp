// Acceptance suite: one PASS/FAIL line per criterion.
#include "axxz/workbench.hpp"

#include <chrono>
#include <cstdio>
#include <map>
#include <random>

using namespace axxz;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

struct Outcome {
    bool passed = true;
    std::string detail;

    void require(bool ok, const std::string& what) {
        if (!ok) passed = false;
        if (!detail.empty()) detail += "; ";
        detail += what + (ok ? "" : " [x]");
    }
};

std::string fmt(const char* f, double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, f, v);
    return buf;
}

std::map<int, SpectrumDataset> g_datasets;

const SpectrumDataset& dataset(int n) {
    auto it = g_datasets.find(n);
    if (it == g_datasets.end()) it = g_datasets.emplace(n, run_pipeline(JobConfig{ChainSpec(n, 0.6)})).first;
    return it->second;
}

const std::vector<std::vector<cd>> kTableRows = {
    {{-0.2890, 0}, {0.0, 0}, {0.2890, 0}},
    {{-1.4697, 0}, {-0.0531, 0}, {0.2266, 0}},
    {{-0.2266, 0}, {0.0531, 0}, {1.4697, 0}},
    {{-0.1490, 0}, {0.0, -1.5708}, {0.1490, 0}},
    {{-0.7908, -1.5708}, {0.0, 0}, {0.7908, -1.5708}},
    {{-0.1652, 0}, {0.1384, -0.6102}, {0.1384, 0.6102}},
    {{-0.1384, -0.6102}, {-0.1384, 0.6102}, {0.1652, 0}},
    {{0.0, -1.5708}, {0.0, -0.6238}, {0.0, 0.6238}},
};

Outcome table_reproduction() {
    Outcome o;
    const auto t0 = Clock::now();
    const auto ds = run_pipeline(JobConfig{ChainSpec(4, 0.6)});
    const double elapsed = seconds_since(t0);

    std::vector<std::vector<cd>> distinct;
    std::vector<int> count;
    for (const auto& s : ds.states) {
        std::size_t k = 0;
        while (k < distinct.size() && multiset_distance(distinct[k], s.z_roots) >= 5e-4) ++k;
        if (k == distinct.size()) {
            distinct.push_back(s.z_roots);
            count.push_back(0);
        }
        ++count[k];
    }
    std::vector<int> hits(kTableRows.size(), 0);
    for (const auto& roots : distinct)
        for (std::size_t r = 0; r < kTableRows.size(); ++r)
            if (multiset_distance(roots, kTableRows[r]) < 5e-4) ++hits[r];
    o.require(distinct.size() == 8, std::to_string(distinct.size()) + " distinct triplets");
    o.require(std::all_of(count.begin(), count.end(), [](int c) { return c == 2; }), "each twice");
    o.require(std::all_of(hits.begin(), hits.end(), [](int h) { return h == 1; }), "one-to-one with the table");
    o.require(elapsed < 5.0, fmt("%.3f s", elapsed));
    return o;
}

Outcome operator_tw() {
    Outcome o;
    const auto t0 = Clock::now();
    std::mt19937_64 rng(2024);
    std::uniform_real_distribution<double> re(-0.6, 0.6), im(-1.4, 1.4);
    double worst = 0.0;
    for (int n : {2, 4, 6})
        for (int k = 0; k < 3; ++k) {
            const auto r = operator_tw_check(ChainSpec(n, 0.6), {re(rng), im(rng)}, {re(rng), im(rng)});
            worst = std::max(worst, r.interpolation_residual);
        }
    const double elapsed = seconds_since(t0);
    o.require(worst < 1e-10, fmt("residual %.2e", worst));
    o.require(elapsed < 30.0, fmt("%.2f s", elapsed));
    return o;
}

Outcome spectral_identities() {
    Outcome o;
    double quasi = 0.0, conj = 0.0, w0 = 0.0, sum = 0.0;
    for (int n = 2; n <= 8; ++n) {
        const auto& ds = dataset(n);
        const ChainSpec& spec = ds.spec;
        const double sign = (n - 1) % 2 == 0 ? 1.0 : -1.0;
        for (const auto& s : ds.states) {
            for (const cd u : {cd{0.31, 0.22}, cd{-0.52, 1.13}}) {
                const cd l = lambda_factorized(u, s.lambda0, s.z_roots, spec);
                const cd ls = lambda_factorized(u + kI * kPi, s.lambda0, s.z_roots, spec);
                quasi = std::max(quasi, std::abs(ls - sign * l) / std::max(std::abs(l), 1.0));
            }
            auto conj_gap = [](const std::vector<cd>& v) {
                std::vector<cd> c;
                for (const cd& x : v) c.push_back(canonical_branch(std::conj(x)));
                return multiset_distance(v, c);
            };
            conj = std::max({conj, conj_gap(s.z_roots), conj_gap(s.w_roots)});
            w0 = std::max(w0, std::abs(s.W0_raw * s.W0_raw - 1.0));
            cd total = 0.0;
            for (const cd& x : s.w_roots) total += x;
            sum = std::max(sum, std::abs(mod_i_pi(total)));
        }
    }
    o.require(quasi < 1e-9, fmt("quasi-periodicity %.2e", quasi));
    o.require(conj < 1e-8, fmt("conjugation %.2e", conj));
    o.require(w0 < 1e-6, fmt("|W0^2-1| %.2e", w0));
    o.require(sum < 1e-6, fmt("sum rule %.2e", sum));
    return o;
}

Outcome observables() {
    Outcome o;
    double energy = 0.0, phase = 0.0, quant = 0.0;
    bool order = true;
    for (int n = 2; n <= 10; ++n) {
        const auto& ds = dataset(n);
        const RVec spectrum = hamiltonian_spectrum(ds.spec);
        for (const auto& s : ds.states) {
            energy = std::max({energy, std::abs(s.energy - s.energy_operator),
                               (spectrum.array() - s.energy).abs().minCoeff()});
            phase = std::max(phase, std::abs(std::exp(2.0 * kI * s.momentum_k) - std::exp(-2.0 * kI * s.t0_phase)));
            const double l = std::round(s.momentum_k * n / kPi);
            quant = std::max(quant, std::abs(s.momentum_k - kPi * l / n) / (2e-8 * n));
        }
        const auto t0 = transfer_at_zero(ds.spec);
        order = order && t0.power(2 * n).is_identity();
    }
    o.require(energy < 1e-8, fmt("energy %.2e", energy));
    o.require(phase < 1e-8, fmt("phase %.2e", phase));
    o.require(order, "t(0)^{2N} = 1");
    o.require(quant < 1.0, fmt("quantization %.2e of tolerance", quant));
    return o;
}

Outcome solver_equivalence() {
    Outcome o;
    int failures = 0, solves = 0;
    double worst_res = 0.0, worst_dist = 0.0;
    auto record = [&](const BaeSolution& sol, const StateRecord& ref) {
        ++solves;
        const double d = std::max(multiset_distance(sol.z_roots, ref.z_roots), multiset_distance(sol.w_roots, ref.w_roots));
        worst_res = std::max(worst_res, sol.residual_norm);
        worst_dist = std::max(worst_dist, d);
        if (!(sol.residual_norm < 1e-12 && d < 1e-10)) ++failures;
    };
    std::mt19937_64 rng(5);
    std::uniform_real_distribution<double> jitter(-0.05, 0.05);
    for (int n : {4, 6}) {
        const auto& ds = dataset(n);
        double e_min = 1e300;
        for (const auto& s : ds.states) e_min = std::min(e_min, s.energy);
        for (const auto& s : ds.states) {
            try {
                record(solve_collocation(ds.spec, RootGuess{s.z_roots, s.w_roots, s.lambda0}, s.W0), s);
            } catch (const Error&) {
                ++solves;
                ++failures;
            }
            if (std::abs(s.energy - e_min) > 1e-8) continue;
            for (int trial = 0; trial < 3; ++trial) {
                RootGuess g{s.z_roots, s.w_roots, s.lambda0};
                for (cd& z : g.z) z += jitter(rng);
                for (cd& w : g.w) w += jitter(rng);
                try {
                    record(solve_collocation(ds.spec, g, s.W0), s);
                } catch (const Error&) {
                    ++solves;
                    ++failures;
                }
            }
        }
    }
    o.require(failures == 0, std::to_string(solves - failures) + "/" + std::to_string(solves) + " solves");
    o.require(worst_res < 1e-12, fmt("residual %.2e", worst_res));
    o.require(worst_dist < 1e-10, fmt("root distance %.2e", worst_dist));
    return o;
}

Outcome log_form_ground() {
    Outcome o;
    for (int n : {8, 10}) {
        const auto& ds = dataset(n);
        const auto ground = std::min_element(ds.states.begin(), ds.states.end(),
                                             [](const auto& a, const auto& b) { return a.energy < b.energy; });
        const auto sol = solve_ground_log_form(ds.spec, QuantumNumberConfig::symmetric(n));
        const double d = multiset_distance(sol.z_roots, ground->z_roots);
        const double e = std::abs(energy_from_roots(sol.z_roots, ds.spec) - hamiltonian_spectrum(ds.spec).minCoeff());
        o.require(d < 1e-6 && e < 1e-6, "N=" + std::to_string(n) + fmt(" roots %.1e", d) + fmt(" energy %.1e", e));
    }
    return o;
}

double ground_energy_12() {
    static const double e = hamiltonian_spectrum(ChainSpec(12, 0.6)).minCoeff();
    return e;
}

Outcome thermodynamic_integrals() {
    Outcome o;
    const double e_half = ground_energy_density(ThermoParams(kPi / 2));
    o.require(std::abs(e_half + 4.0 / kPi) < 1e-10, fmt("e_g(pi/2)+4/pi %.1e", e_half + 4.0 / kPi));

    QuadratureResult info;
    const double eg = ground_energy_density(ThermoParams(0.6), &info);
    const ChainSpec spec(12, 0.6);
    const auto log_sol = solve_ground_log_form(spec, QuantumNumberConfig::symmetric(12));
    const double e12 = energy_from_roots(log_sol.z_roots, spec);
    o.require(std::abs(e12 - ground_energy_12()) < 1e-8, fmt("E_gs(12) log form vs dense %.1e", e12 - ground_energy_12()));
    o.require(std::abs(eg - e12 / 12.0) < 0.05, fmt("|e_g - E_gs(12)/12| %.4f", std::abs(eg - e12 / 12.0)));
    o.require(info.change < 1e-11, fmt("halving change %.1e", info.change));

    const auto mass = integrate_real_line([](double z) { return density_total(z, 0.6); }, kPi / (kPi - 0.6), 1e-13);
    o.require(std::abs(mass.value - 1.0) < 1e-8, fmt("density mass - 1 %.1e", mass.value - 1.0));
    return o;
}

Outcome dispersion() {
    Outcome o;
    const ThermoParams p(0.6);
    double odd = 0.0;
    for (double a = 0.0; a <= 4.0 + 1e-12; a += 0.25) {
        odd = std::max(odd, std::abs(excitation_energy(DispersionType::I, a, 0, p) - excitation_energy(DispersionType::I, -a, 0, p)));
        odd = std::max(odd, std::abs(excitation_energy(DispersionType::II, a, 0, p) - excitation_energy(DispersionType::II, -a, 0, p)));
        odd = std::max(odd, std::abs(excitation_energy(DispersionType::III, a, 3, p) - excitation_energy(DispersionType::III, -a, 3, p)));
    }
    o.require(odd < 1e-10, fmt("evenness %.1e", odd));
    for (auto t : {DispersionType::I, DispersionType::II}) {
        const double ratio = excitation_energy(t, 6.0, 0, p) / excitation_energy(t, 0.0, 0, p);
        o.require(ratio < 0.02, std::string("type ") + to_string(t) + fmt(" decay %.2e", ratio));
    }

    // Finite-size type-II gap at N = 12 against the thermodynamic dispersion.
    const ChainSpec spec(12, 0.6);
    const RVec spectrum = hamiltonian_spectrum(spec);
    bool found = false;
    for (double alpha : {0.2, 0.0, 0.4, 0.6}) {
        for (int w0 : {1, -1}) {
            StringSeed seed;
            seed.type = ExcitationType::TypeII;
            seed.alpha = alpha;
            BaeSolution sol;
            try {
                sol = solve_collocation(spec, seed, w0);
            } catch (const Error&) {
                continue;
            }
            const auto cls = classify_roots(sol.z_roots, sol.w_roots, spec);
            if (!sol.converged || cls.kind != RootKind::ConjugatePair || cls.pair_order_n != 2) continue;
            // The excitation carries exactly one w pair, near alpha +- 3 eta/2; the rest are real.
            int complex_w = 0, pair_w = 0;
            for (const cd& w : sol.w_roots) {
                if (std::abs(w.imag()) < 1e-6) continue;
                ++complex_w;
                if (std::abs(std::abs(w.imag()) - 1.5 * 0.6) < 0.1 && std::abs(w.real() - *cls.pair_center_alpha) < 0.1) ++pair_w;
            }
            if (complex_w != 2 || pair_w != 2) continue;
            const double e = energy_from_roots(sol.z_roots, spec);
            const double eig_gap = (spectrum.array() - e).abs().minCoeff();
            const double alpha_fit = *cls.pair_center_alpha;
            const double gap = e - ground_energy_12();
            const double diff = std::abs(gap - excitation_energy(DispersionType::II, alpha_fit, 0, p));
            o.require(eig_gap < 1e-6, fmt("type-II energy is an eigenvalue (%.1e)", eig_gap));
            o.require(diff < 0.1, fmt("alpha_fit %.4f", alpha_fit) + fmt(" gap %.4f", gap) + fmt(" mismatch %.4f", diff));
            found = true;
            break;
        }
        if (found) break;
    }
    if (!found) o.require(false, "no converged type-II solution at N=12");
    return o;
}

Outcome boundary_constraint() {
    Outcome o;
    const ChainSpec spec(10, 0.6);
    StringSeed seed;
    seed.type = ExcitationType::TypeI;
    bool found = false;
    for (int w0 : {1, -1}) {
        BaeSolution sol;
        try {
            sol = solve_collocation(spec, seed, w0);
        } catch (const Error&) {
            continue;
        }
        const auto cls = classify_roots(sol.z_roots, sol.w_roots, spec);
        if (!sol.converged || cls.kind != RootKind::AxisShifted || !cls.boundary_m || !cls.boundary_beta) continue;
        const double dm = std::abs(*cls.boundary_m - (kPi / 0.6 - 1.0));
        const double db = std::abs(*cls.boundary_beta - *cls.pair_center_alpha);
        o.require(dm < 0.5, fmt("m_fit %.4f", *cls.boundary_m));
        o.require(db < 0.2, fmt("|beta-alpha| %.4f", db));
        found = true;
        break;
    }
    if (!found) o.require(false, "no converged type-I solution with a boundary pair");
    return o;
}

}  // namespace

int main() {
    const std::vector<std::pair<const char*, Outcome (*)()>> criteria = {
        {"table reproduction", table_reproduction},
        {"operator t-W", operator_tw},
        {"spectral identities", spectral_identities},
        {"observables", observables},
        {"solver equivalence", solver_equivalence},
        {"log-form ground state", log_form_ground},
        {"thermodynamic integrals", thermodynamic_integrals},
        {"dispersion", dispersion},
        {"boundary constraint", boundary_constraint},
    };
    int failed = 0;
    for (std::size_t k = 0; k < criteria.size(); ++k) {
        Outcome o;
        const auto t0 = Clock::now();
        try {
            o = criteria[k].second();
        } catch (const std::exception& e) {
            o.require(false, std::string("exception: ") + e.what());
        }
        if (!o.passed) ++failed;
        std::printf("criterion %zu (%s): %s  %s  (%.1f s)\n", k + 1, criteria[k].first, o.passed ? "PASS" : "FAIL",
                    o.detail.c_str(), seconds_since(t0));
        std::fflush(stdout);
    }
    return failed == 0 ? 0 : 1;
}
