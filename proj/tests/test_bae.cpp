#include "axxz/bae.hpp"
#include "axxz/thermo.hpp"
#include "oracles.hpp"

#include <doctest.h>

#include <random>

using namespace axxz;

namespace {

struct Reference {
    std::vector<cd> z;
    cd lambda0;
    TWRecord tw;
    double energy;
};

std::vector<Reference> diagonalization_roots(const ChainSpec& spec) {
    const auto fd = diagonalize_family(spec);
    const auto n_states = static_cast<std::size_t>(fd.vectors.cols());
    std::vector<std::vector<cd>> samples(n_states);
    for (const cd& u : z_sample_nodes(spec)) {
        const auto values = eigenvalues_at(fd.vectors, build_transfer(u, spec).entries);
        for (std::size_t s = 0; s < n_states; ++s) samples[s].push_back(values[s]);
    }
    std::vector<Reference> out;
    for (const auto& s : samples) {
        const auto zr = extract_z_roots(s, spec);
        out.push_back({zr.z, zr.lambda0, build_w_function(zr.lambda0, zr.z, spec, [&](cd u) { return zr.poly(u); }),
                       energy_from_roots(zr.z, spec)});
    }
    return out;
}

double ground_energy_oracle(const ChainSpec& spec) {
    return oracle::eigenvalues_hermitian(oracle::hamiltonian(spec.gamma, spec.N)).minCoeff();
}

}  // namespace

TEST_CASE("collocation from diagonalization roots reproduces every N = 4 state") {
    const ChainSpec spec(4, 0.6);
    for (const auto& ref : diagonalization_roots(spec)) {
        const auto sol = solve_collocation(spec, RootGuess{ref.z, ref.tw.w_roots, ref.lambda0}, ref.tw.W0);
        CHECK(sol.converged);
        CHECK(sol.residual_norm < 1e-12);
        CHECK(multiset_distance(sol.z_roots, ref.z) < 1e-10);
        CHECK(multiset_distance(sol.w_roots, ref.tw.w_roots) < 1e-10);
    }
}

TEST_CASE("jittered ground seeds return to the ground roots") {
    const ChainSpec spec(4, 0.6);
    const auto refs = diagonalization_roots(spec);
    const auto ground = *std::min_element(refs.begin(), refs.end(),
                                          [](const auto& a, const auto& b) { return a.energy < b.energy; });
    std::mt19937_64 rng(9);
    std::uniform_real_distribution<double> jitter(-0.05, 0.05);
    for (int trial = 0; trial < 4; ++trial) {
        RootGuess g{ground.z, ground.tw.w_roots, {}};
        for (cd& z : g.z) z += jitter(rng);
        for (cd& w : g.w) w += jitter(rng);
        const auto sol = solve_collocation(spec, g, ground.tw.W0);
        CHECK(sol.residual_norm < 1e-12);
        CHECK(multiset_distance(sol.z_roots, ground.z) < 1e-10);
    }
}

TEST_CASE("a conjugation-symmetric seed stays symmetric") {
    const ChainSpec spec(6, 0.6);
    const auto sol = solve_collocation(spec, StringSeed{}, 1);
    std::vector<cd> conj;
    for (const cd& z : sol.z_roots) conj.push_back(canonical_branch(std::conj(z)));
    CHECK(multiset_distance(sol.z_roots, conj) < 1e-12);
}

TEST_CASE("logarithmic ground solver agrees with dense diagonalization") {
    for (int n : {4, 6, 8}) {
        const ChainSpec spec(n, 0.6);
        const auto sol = solve_ground_log_form(spec, QuantumNumberConfig::symmetric(n));
        CHECK(sol.converged);
        CHECK(energy_from_roots(sol.z_roots, spec) == doctest::Approx(ground_energy_oracle(spec)).epsilon(1e-9));
        for (const cd& z : sol.z_roots) CHECK(std::abs(z.imag()) < 1e-12);
        CHECK(sol.z_roots.size() == static_cast<std::size_t>(n - 1));
    }
}

TEST_CASE("logarithmic ground solver across anisotropies") {
    for (double g : {0.4, 1.0, 1.2}) {
        const ChainSpec spec(6, g);
        const auto sol = solve_ground_log_form(spec, QuantumNumberConfig::symmetric(6));
        CHECK(energy_from_roots(sol.z_roots, spec) == doctest::Approx(ground_energy_oracle(spec)).epsilon(1e-9));
    }
    // At gamma = 1.5 two ground-state w-roots form a complex pair, outside the real-root form.
    CHECK_THROWS_AS(solve_ground_log_form(ChainSpec(6, 1.5), QuantumNumberConfig::symmetric(6)), Error);
}

TEST_CASE("quantum number validation") {
    CHECK_NOTHROW(QuantumNumberConfig::symmetric(6).validate(6));
    CHECK(QuantumNumberConfig::symmetric(6).I == std::vector<double>{-2, -1, 0, 1, 2});
    CHECK(QuantumNumberConfig::symmetric(5).I == std::vector<double>{-1.5, -0.5, 0.5, 1.5});
    const auto check_rejected = [](std::vector<double> I) { CHECK_THROWS_AS(QuantumNumberConfig{I}.validate(6), Error); };
    check_rejected({0, 0, 1, 2, -1});
    check_rejected({0, 1});
    check_rejected({-2, -1, 0, 1, 5});
}

TEST_CASE("kernels: theta is odd and monotone, a is its scaled derivative, b has poles") {
    const double g = 0.6;
    for (int n : {1, 2, 3}) {
        double prev = -1e9;
        for (double x = -4.0; x <= 4.0; x += 0.25) {
            const double t = kernel_theta(n, x, g);
            CHECK(t == doctest::Approx(-kernel_theta(n, -x, g)).epsilon(1e-14));
            CHECK(t > prev);
            prev = t;
            const double h = 1e-5;
            const double fd = (kernel_theta(n, x + h, g) - kernel_theta(n, x - h, g)) / (2.0 * h) / (2.0 * kPi);
            CHECK(kernel_a(n, x, g) == doctest::Approx(fd).epsilon(1e-7));
        }
    }
    // b_n(x) = Re coth(x - i n gamma/2) / pi for real x.
    const double x = 0.37;
    const cd c = std::cosh(cd{x, -g}) / std::sinh(cd{x, -g});
    CHECK(kernel_b(2, x, g) == doctest::Approx(c.real() / kPi).epsilon(1e-12));
    CHECK_THROWS_AS(kernel_b(0, 0.0, g), Error);
}

TEST_CASE("density quantile inverts the cumulative density") {
    const double g = 0.6;
    for (double q : {-0.45, -0.2, 0.0, 0.13, 0.4}) {
        const double z = density_quantile(q, g);
        CHECK(density_cdf(z, g) - 0.5 == doctest::Approx(q).epsilon(1e-10));
    }
}

TEST_CASE("string seeds describe and validate") {
    StringSeed s;
    s.type = ExcitationType::TypeIII;
    s.n = 2;
    CHECK_THROWS_AS(s.validate(), Error);
    s.n = 3;
    CHECK_NOTHROW(s.validate());
    CHECK(excitation_type_from_string("type-II") == ExcitationType::TypeII);
    CHECK_THROWS_AS(excitation_type_from_string("type-IV"), Error);
    const ChainSpec spec(8, 0.6);
    const auto g = seed_from_strings(spec, StringSeed{ExcitationType::TypeII, 0.0});
    CHECK(g.z.size() == 7);
    CHECK(g.w.size() == 8);
}

TEST_CASE("type-II seed converges to an n = 2 conjugate pair") {
    const ChainSpec spec(8, 0.6);
    StringSeed seed;
    seed.type = ExcitationType::TypeII;
    seed.alpha = 0.0;
    const auto sol = solve_collocation(spec, seed, 1);
    CHECK(sol.residual_norm < 1e-10);
    const auto cls = classify_roots(sol.z_roots, sol.w_roots, spec);
    CHECK(cls.kind == RootKind::ConjugatePair);
    REQUIRE(cls.pair_order_n.has_value());
    CHECK(*cls.pair_order_n == 2);
    // The converged energy is an eigenvalue of H.
    const auto ev = oracle::eigenvalues_hermitian(oracle::hamiltonian(0.6, 8));
    const double e = energy_from_roots(sol.z_roots, spec);
    double best = 1e9;
    for (Eigen::Index k = 0; k < ev.size(); ++k) best = std::min(best, std::abs(ev(k) - e));
    CHECK(best < 1e-9);
}

TEST_CASE("ground-state roots follow the total root density") {
    for (int n : {8, 12}) {
        const ChainSpec spec(n, 0.6);
        const auto qn = QuantumNumberConfig::symmetric(n);
        const auto sol = solve_ground_log_form(spec, qn);
        // Counting function N (F(z_j) - 1/2) against the quantum numbers.
        for (std::size_t j = 0; j < sol.z_roots.size(); ++j)
            CHECK(std::abs(n * (density_cdf(sol.z_roots[j].real(), 0.6) - 0.5) - qn.I[j]) < 0.05);
        // Histogram on four bins, within one root per bin.
        const std::vector<double> edges{-1e9, -0.3, 0.0, 0.3, 1e9};
        for (std::size_t b = 0; b + 1 < edges.size(); ++b) {
            int count = 0;
            for (const cd& z : sol.z_roots) count += z.real() >= edges[b] && z.real() < edges[b + 1];
            const double expected = n * (density_cdf(edges[b + 1], 0.6) - density_cdf(edges[b], 0.6));
            CHECK(std::abs(count - expected) <= 1.0);
        }
    }
}
