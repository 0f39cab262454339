#include "axxz/operators.hpp"
#include "oracles.hpp"

#include <doctest.h>

#include <random>

using namespace axxz;

namespace {

std::vector<cd> random_points(int count, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> re(-0.7, 0.7), im(-1.3, 1.3);
    std::vector<cd> out;
    for (int k = 0; k < count; ++k) out.emplace_back(re(rng), im(rng));
    return out;
}

double rel_diff(const CMat& a, const CMat& b) { return oracle::max_abs(a - b) / std::max(oracle::max_abs(b), 1.0); }

}  // namespace

TEST_CASE("R-matrix reduces to the permutation at u = 0 and to -2 P^- at u = -eta") {
    const ChainSpec spec(2, 0.6);
    Eigen::Matrix4cd P = Eigen::Matrix4cd::Zero();
    P(0, 0) = P(3, 3) = P(1, 2) = P(2, 1) = 1.0;
    CHECK((build_r_matrix(0.0, spec) - P).cwiseAbs().maxCoeff() < 1e-14);
    const Eigen::Matrix4cd Pminus = 0.5 * (Eigen::Matrix4cd::Identity() - P);
    CHECK((build_r_matrix(-spec.eta(), spec) + 2.0 * Pminus).cwiseAbs().maxCoeff() < 1e-14);
}

TEST_CASE("R-matrix agrees with the Pauli-expansion definition") {
    const ChainSpec spec(1 + 1, 0.8);
    for (const cd& u : random_points(4, 11)) {
        // Two factors: auxiliary, then one chain site.
        const CMat ref = oracle::r_aux_site(u, spec.eta(), 0, 1);
        const CMat lib = build_r_matrix(u, spec);
        CHECK(rel_diff(lib, ref) < 1e-14);
    }
}

TEST_CASE("Yang-Baxter equation on three spins") {
    const ChainSpec spec(3, 0.6);
    const auto pts = random_points(6, 3);
    for (std::size_t k = 0; k + 1 < pts.size(); k += 2) {
        const cd u = pts[k], v = pts[k + 1];
        // R_ab on three factors via the Pauli expansion.
        auto r = [&](cd x, int a, int b) {
            const cd A = (std::sinh(x + spec.eta()) + std::sinh(x)) / (2.0 * std::sinh(spec.eta()));
            const cd B = (std::sinh(x + spec.eta()) - std::sinh(x)) / (2.0 * std::sinh(spec.eta()));
            CMat m = A * CMat::Identity(8, 8);
            for (char ax : {'x', 'y'})
                m += 0.5 * oracle::embed(oracle::pauli(ax), a, 3) * oracle::embed(oracle::pauli(ax), b, 3);
            m += B * oracle::embed(oracle::pauli('z'), a, 3) * oracle::embed(oracle::pauli('z'), b, 3);
            return m;
        };
        const CMat lhs = r(u - v, 0, 1) * r(u, 0, 2) * r(v, 1, 2);
        const CMat rhs = r(v, 1, 2) * r(u, 0, 2) * r(u - v, 0, 1);
        CHECK(rel_diff(lhs, rhs) < 1e-12);
    }
}

TEST_CASE("transfer matrix matches the full-monodromy construction") {
    for (int n : {2, 3, 4, 5}) {
        for (double g : {0.4, 1.0}) {
            const ChainSpec spec(n, g);
            for (const cd& u : random_points(2, 100 + n)) {
                CAPTURE(n);
                CHECK(rel_diff(build_transfer(u, spec).entries, oracle::transfer(u, g, n)) < 1e-12);
            }
            CHECK(rel_diff(build_transfer(0.0, spec).entries, oracle::transfer(0.0, g, n)) < 1e-13);
        }
    }
}

TEST_CASE("t(0) is the twisted shift and has order 2N") {
    for (int n : {2, 3, 5, 6}) {
        const ChainSpec spec(n, 0.6);
        // sigma^x_1 P_{1N} ... P_{12} assembled from swaps.
        auto swap = [&](int a, int b) {
            CMat s = CMat::Zero(spec.dim(), spec.dim());
            for (char ax : {'x', 'y', 'z'})
                s += oracle::embed(oracle::pauli(ax), a, n) * oracle::embed(oracle::pauli(ax), b, n);
            return CMat(0.5 * (CMat::Identity(spec.dim(), spec.dim()) + s));
        };
        CMat ref = oracle::embed(oracle::pauli('x'), 0, n);
        for (int j = n - 1; j >= 1; --j) ref = ref * swap(0, j);
        const auto t0 = transfer_at_zero(spec);
        CHECK(oracle::max_abs(t0.to_matrix().entries - ref) < 1e-14);
        CHECK(t0.to_matrix().tag_holds());
        CHECK(t0.power(2 * n).is_identity());
        CHECK_FALSE(t0.power(n).is_identity());
    }
}

TEST_CASE("transfer matrix quasi-periodicity, commutativity and adjoint relation") {
    const ChainSpec spec(6, 0.6);
    const double sign = spec.N % 2 == 0 ? -1.0 : 1.0;  // (-1)^{N-1}
    const auto pts = random_points(10, 5);
    for (std::size_t k = 0; k + 1 < pts.size(); k += 2) {
        const CMat tu = build_transfer(pts[k], spec).entries;
        const CMat tv = build_transfer(pts[k + 1], spec).entries;
        CHECK(rel_diff(build_transfer(pts[k] + kI * kPi, spec).entries, sign * tu) < 1e-12);
        CHECK(oracle::max_abs(tu * tv - tv * tu) / (oracle::max_abs(tu) * oracle::max_abs(tv)) < 1e-12);
        const CMat adj = build_transfer(std::conj(pts[k]) - spec.eta(), spec).entries;
        CHECK(rel_diff(tu.adjoint(), sign * adj) < 1e-11);
    }
}

TEST_CASE("Hamiltonian matches the spin-operator definition with the twisted bond") {
    for (int n : {2, 3, 4, 6}) {
        for (double g : {0.4, 0.6, 1.0}) {
            const ChainSpec spec(n, g);
            const auto h = build_hamiltonian(spec);
            CHECK(h.tag == OperatorTag::Hermitian);
            CHECK(h.tag_holds());
            CHECK(oracle::max_abs(h.entries - oracle::hamiltonian(g, n)) < 1e-13);
        }
    }
}

TEST_CASE("Hamiltonian equals the logarithmic derivative of t at the origin") {
    const ChainSpec spec(5, 0.6);
    const double h = 1e-5;
    const CMat t0 = build_transfer(0.0, spec).entries;
    const CMat dt = (build_transfer(h, spec).entries - build_transfer(-h, spec).entries) / (2.0 * h);
    const CMat H = -2.0 * std::sinh(spec.eta()) * t0.inverse() * dt +
                   double(spec.N) * std::cosh(spec.eta()) * CMat::Identity(spec.dim(), spec.dim());
    CHECK(oracle::max_abs(H - build_hamiltonian(spec).entries) < 1e-7);
}

TEST_CASE("hamiltonian_spectrum matches dense diagonalization") {
    for (int n : {3, 4, 7}) {
        const ChainSpec spec(n, 0.6);
        const auto ref = oracle::eigenvalues_hermitian(oracle::hamiltonian(0.6, n));
        const auto lib = hamiltonian_spectrum(spec);
        REQUIRE(lib.size() == ref.size());
        CHECK((lib - ref).cwiseAbs().maxCoeff() < 1e-11);
    }
}

TEST_CASE("Z2 generators square to one and commute with H and t") {
    const ChainSpec two(2, 0.6);
    CMat expected = CMat::Zero(4, 4);
    expected.diagonal() << 1, -1, -1, 1;
    CHECK(oracle::max_abs(build_z2(Axis::Z, two).entries - expected) == 0.0);

    for (int n : {4, 5}) {
        const ChainSpec spec(n, 0.6);
        const CMat H = build_hamiltonian(spec).entries;
        const CMat t = build_transfer(cd{0.21, 0.37}, spec).entries;
        for (Axis ax : {Axis::X, Axis::Y, Axis::Z}) {
            const auto p = z2_permutation(ax, spec);
            CHECK(p.power(2).is_identity());
            const CMat U = build_z2(ax, spec).entries;
            CHECK(commutator_norm(H, U) < 1e-12);
            if (ax == Axis::X) CHECK(commutator_norm(t, U) < 1e-11);
        }
    }
}

TEST_CASE("conserved charge commutes with H, tends to a multiple of total sigma^x and matches the large-u limit") {
    const ChainSpec spec(5, 0.6);
    const auto q = build_charge(spec);
    const CMat H = build_hamiltonian(spec).entries;
    CHECK(commutator_norm(H, q.M_q.entries) < 1e-10);
    CHECK(oracle::max_abs(q.M_q.entries - 0.5 * (q.l_plus.entries + q.l_minus.entries)) < 1e-14);
    CHECK(oracle::max_abs(q.M_q.entries - charge_from_transfer_limit(30.0, spec).entries) < 1e-6);

    const ChainSpec weak(5, 1e-5);
    CMat sx = CMat::Zero(weak.dim(), weak.dim());
    for (int j = 0; j < weak.N; ++j) sx += oracle::embed(oracle::pauli('x'), j, weak.N);
    // With unit-entry sigma^+-, (l+ + l-)/2 tends to total sigma^x / 4.
    CHECK(oracle::max_abs(build_charge(weak).M_q.entries - 0.25 * sx) < 1e-3);
}

TEST_CASE("chain specification validation") {
    CHECK_THROWS_AS(ChainSpec(1, 0.6), Error);
    CHECK_THROWS_AS(ChainSpec(4, 0.0), Error);
    CHECK_THROWS_AS(ChainSpec(4, kPi), Error);
    try {
        ChainSpec(13, 0.6);
        FAIL("expected DimensionOverflow");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::DimensionOverflow);
    }
}
