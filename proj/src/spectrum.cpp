#include "axxz/spectrum.hpp"
#include "axxz/lapack.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>

namespace axxz {

const char* to_string(RootKind kind) {
    switch (kind) {
        case RootKind::AllRealSymmetric: return "all-real-symmetric";
        case RootKind::AllRealAsymmetric: return "all-real-asymmetric";
        case RootKind::AxisShifted: return "axis-shifted";
        case RootKind::ConjugatePair: return "conjugate-pair";
        case RootKind::Mixed: return "mixed";
    }
    return "mixed";
}

RootKind root_kind_from_string(const std::string& s) {
    for (RootKind k : {RootKind::AllRealSymmetric, RootKind::AllRealAsymmetric, RootKind::AxisShifted,
                       RootKind::ConjugatePair, RootKind::Mixed})
        if (s == to_string(k)) return k;
    throw Error(ErrorCode::SchemaMismatch, "unknown root kind '" + s + "'");
}

double BaeResiduals::max() const {
    double m = lambda0_equation;
    for (double v : z_equations) m = std::max(m, v);
    for (double v : w_equations) m = std::max(m, v);
    return m;
}

namespace {

cd draw_complex(std::mt19937_64& rng) {
    std::normal_distribution<double> g(0.0, 1.0);
    const double re = g(rng);
    const double im = g(rng);
    return {re, im};
}

cd draw_point(std::mt19937_64& rng) {
    std::uniform_real_distribution<double> re(0.1, 0.6), im(0.1, 1.4);
    const double a = re(rng);
    const double b = im(rng);
    return {a, b};
}

// Indices of the two largest-magnitude entries.
std::pair<Eigen::Index, Eigen::Index> two_largest(const CVec& v) {
    Eigen::Index i1 = 0, i2 = v.size() > 1 ? 1 : 0;
    if (std::abs(v(i2)) > std::abs(v(i1))) std::swap(i1, i2);
    for (Eigen::Index i = 2; i < v.size(); ++i) {
        const double a = std::abs(v(i));
        if (a > std::abs(v(i1))) {
            i2 = i1;
            i1 = i;
        } else if (a > std::abs(v(i2))) {
            i2 = i;
        }
    }
    return {i1, i2};
}

bool ratio_pair(const CVec& psi, const CMat& t, cd& value) {
    const auto [i1, i2] = two_largest(psi);
    const cd a1 = (t.row(i1) * psi)(0) / psi(i1);
    const cd a2 = (t.row(i2) * psi)(0) / psi(i2);
    value = a1;
    const double scale = std::max(std::abs(a1), t.row(i1).norm());
    return std::abs(a1 - a2) <= 1e-6 * scale;
}

}  // namespace

FamilyDiagonalization diagonalize_family(const ChainSpec& spec, std::uint64_t seed) {
    spec.validate();
    std::mt19937_64 rng(seed);
    const CMat t0 = build_transfer(0.0, spec).entries;
    for (int attempt = 1; attempt <= 5; ++attempt) {
        FamilyDiagonalization fd;
        fd.spec = spec;
        fd.attempts = attempt;
        fd.c0 = draw_complex(rng);
        fd.c1 = draw_complex(rng);
        fd.u1 = draw_point(rng);
        fd.u2 = draw_point(rng);
        const CMat combo = fd.c0 * t0 + fd.c1 * build_transfer(fd.u1, spec).entries;
        auto eig = lapack::general_eigen(combo);
        fd.vectors = std::move(eig.vectors);
        for (Eigen::Index s = 0; s < fd.vectors.cols(); ++s) fd.vectors.col(s).normalize();

        const CMat t2 = build_transfer(fd.u2, spec).entries;
        const double rms = t2.norm() / std::sqrt(double(t2.rows()));
        const CMat tv = t2 * fd.vectors;
        double worst = 0.0;
        for (Eigen::Index s = 0; s < fd.vectors.cols(); ++s) {
            const cd lam = fd.vectors.col(s).dot(tv.col(s));
            const double res = (tv.col(s) - lam * fd.vectors.col(s)).norm() / std::max(std::abs(lam), rms);
            worst = std::max(worst, res);
        }
        fd.max_validation_residual = worst;
        if (worst < 1e-8) return fd;
    }
    throw Error(ErrorCode::DegenerateCombination, "family validation failed after 5 draws");
}

cd eigenvalue_at(const CVec& psi, const CMat& t) {
    cd value;
    if (!ratio_pair(psi, t, value)) throw Error(ErrorCode::InconsistentRatio, "component ratios disagree");
    return value;
}

std::vector<cd> eigenvalues_at(const CMat& vectors, const CMat& t, std::vector<int>* bad) {
    std::vector<cd> out(static_cast<std::size_t>(vectors.cols()));
    for (Eigen::Index s = 0; s < vectors.cols(); ++s) {
        cd value;
        if (!ratio_pair(vectors.col(s), t, value) && bad) bad->push_back(static_cast<int>(s));
        out[static_cast<std::size_t>(s)] = value;
    }
    return out;
}

std::vector<cd> z_sample_nodes(const ChainSpec& spec) { return interpolation_nodes(spec.N - 1, 0.0); }

cd lambda_factorized(cd u, cd lambda0, const std::vector<cd>& z, const ChainSpec& spec) {
    return sinh_product(u, lambda0, z, 0.5 * spec.eta());
}

ZeroRoots extract_z_roots(const std::vector<cd>& samples, const ChainSpec& spec) {
    const int n = spec.N;
    const cd eta = spec.eta();
    ZeroRoots out;
    out.poly = interpolate_trig(samples, n - 1, 0.0);
    auto xs = polynomial_roots(out.poly.coeffs);
    cd sum = 0.0;
    for (cd& x : xs) {
        if (!polish_polynomial_root(out.poly.coeffs, x)) out.polish_failed = true;
        const cd raw = 0.5 * std::log(x) + 0.5 * eta;
        const cd z = canonical_branch(raw);
        if (z.imag() == -kPi / 2) ++out.snapped;
        out.z.push_back(z);
        sum += z - 0.5 * eta;
    }
    std::sort(out.z.begin(), out.z.end(), [](cd a, cd b) { return a.real() != b.real() ? a.real() < b.real() : a.imag() < b.imag(); });
    out.lambda0 = out.poly.coeffs(n - 1) * std::pow(2.0, n - 1) * std::exp(sum);
    cd prod = out.lambda0 * out.lambda0;
    for (const cd& z : out.z) prod *= std::sinh(z + 0.5 * eta) * std::sinh(z - 0.5 * eta);
    out.normalization_residual = std::abs(prod - ((n - 1) % 2 == 0 ? 1.0 : -1.0));
    return out;
}

RootClassification classify_roots(const std::vector<cd>& z, const std::vector<cd>& w, const ChainSpec& spec) {
    const double eps_real = 1e-6 * spec.N;
    const double eps_axis = 1e-6 * spec.N;
    const double half_gamma = spec.gamma / 2;
    RootClassification rc;

    std::vector<cd> reals, axis, complexes;
    for (const cd& r : z) {
        if (std::abs(r.imag()) < eps_real)
            reals.push_back(r);
        else if (std::abs(r.imag() + kPi / 2) < eps_axis || std::abs(r.imag() - kPi / 2) < eps_axis)
            axis.push_back(r);
        else
            complexes.push_back(r);
    }

    // Upper members of conjugate pairs, or empty if some root is unpaired.
    auto pair_up = [](const std::vector<cd>& set, bool& ok) {
        std::vector<cd> upper;
        std::vector<bool> used(set.size(), false);
        ok = true;
        for (std::size_t i = 0; i < set.size(); ++i) {
            if (used[i]) continue;
            std::size_t best = set.size();
            double dist = 1e-6;
            for (std::size_t j = 0; j < set.size(); ++j) {
                if (j == i || used[j]) continue;
                const double d = std::abs(set[j] - std::conj(set[i]));
                if (d < dist) {
                    dist = d;
                    best = j;
                }
            }
            if (best == set.size()) {
                ok = false;
                continue;
            }
            used[i] = used[best] = true;
            upper.push_back(set[i].imag() > 0 ? set[i] : set[best]);
        }
        return upper;
    };

    // Boundary w-pair beta +- m*eta/2: the single complex conjugate w-pair.
    auto detect_boundary = [&]() {
        std::vector<cd> wc;
        for (const cd& r : w)
            if (std::abs(r.imag()) >= eps_real && std::abs(std::abs(r.imag()) - kPi / 2) >= eps_axis) wc.push_back(r);
        bool ok = false;
        const auto up = pair_up(wc, ok);
        if (ok && up.size() == 1) {
            rc.boundary_beta = up[0].real();
            rc.boundary_m = up[0].imag() / half_gamma;
        }
    };

    bool paired = false;
    const auto upper = pair_up(complexes, paired);

    if (complexes.empty() && axis.empty()) {
        std::vector<cd> neg;
        for (const cd& r : z) neg.push_back(-r);
        if (multiset_distance(z, neg) < 1e-6 * spec.N) {
            rc.kind = RootKind::AllRealSymmetric;
        } else {
            rc.kind = RootKind::AllRealAsymmetric;
            detect_boundary();
        }
    } else if (complexes.empty() && axis.size() == 1) {
        rc.kind = RootKind::AxisShifted;
        rc.pair_center_alpha = axis[0].real();
        detect_boundary();
    } else if (axis.empty() && complexes.size() == 2 && paired) {
        const double n_est = upper[0].imag() / half_gamma;
        const double n_round = std::round(n_est);
        rc.pair_center_alpha = upper[0].real();
        if (n_round >= 2 && std::abs(n_est - n_round) <= 0.25) {
            rc.kind = RootKind::ConjugatePair;
            rc.pair_order_n = static_cast<int>(n_round);
        } else {
            rc.kind = RootKind::Mixed;
            rc.unclassified = true;
        }
    } else {
        rc.kind = RootKind::Mixed;
        if (!paired) rc.unclassified = true;
    }
    return rc;
}

double energy_from_roots(const std::vector<cd>& z, const ChainSpec& spec, double* imag) {
    const cd eta = spec.eta();
    cd e = double(spec.N) * std::cosh(eta);
    for (const cd& r : z) e += 2.0 * std::sinh(eta) / std::tanh(r - 0.5 * eta);
    if (imag) *imag = e.imag();
    return e.real();
}

double momentum_from_roots(const std::vector<cd>& z, const ChainSpec& spec) {
    const cd eta = spec.eta();
    cd k = (spec.N % 2 == 0) ? kPi / 2 : 0.0;
    for (const cd& r : z) k += -0.5 * kI * std::log(std::sinh(r + 0.5 * eta) / std::sinh(r - 0.5 * eta));
    return k.real();
}

cd charge_from_roots(cd lambda0, const std::vector<cd>& z, const ChainSpec& spec) {
    cd sum = 0.0;
    for (const cd& r : z) sum += r;
    return 0.25 * std::pow(std::sinh(spec.eta()), spec.N - 1) * lambda0 * std::exp(-sum);
}

double fold_momentum(double k) {
    double f = std::fmod(k, kPi);
    if (f < 0) f += kPi;
    if (kPi - f < 1e-12) f = 0.0;
    return f;
}

ObservableOperators observable_operators(const ChainSpec& spec) {
    return {build_hamiltonian_real(spec), build_charge(spec).M_q.entries};
}

void compute_observables(StateRecord& state, const CVec& psi, cd lambda_at_zero, const ChainSpec& spec,
                         const ObservableOperators& ops) {
    double imag = 0.0;
    state.energy = energy_from_roots(state.z_roots, spec, &imag);
    const CVec hpsi = ops.H * psi;
    state.energy_operator = psi.dot(hpsi).real();
    const double k = momentum_from_roots(state.z_roots, spec);
    state.momentum_k = fold_momentum(k);
    state.t0_phase = std::arg(lambda_at_zero);
    state.charge_Mq = charge_from_roots(state.lambda0, state.z_roots, spec);

    std::string failures;
    if (std::abs(imag) > 1e-9) failures += " energy-imaginary=" + std::to_string(imag);
    if (std::abs(state.energy - state.energy_operator) > 1e-8)
        failures += " energy " + std::to_string(state.energy) + " vs " + std::to_string(state.energy_operator);
    // Sign convention: e^{2ik} equals the conjugate of Lambda(0)^2.
    const cd expected = std::conj(lambda_at_zero * lambda_at_zero);
    if (std::abs(std::exp(2.0 * kI * k) - expected) > 1e-8) failures += " momentum";
    const auto [i1, i2] = two_largest(psi);
    (void)i2;
    const cd mq_op = (ops.Mq.row(i1) * psi)(0) / psi(i1);
    if (std::abs(mq_op - state.charge_Mq) > 1e-7 * std::max(1.0, std::abs(mq_op))) failures += " charge";
    if (!failures.empty()) throw Error(ErrorCode::CrossCheckFailed, "state " + std::to_string(state.state_id) + ":" + failures);
}

void assign_degenerate_partners(std::vector<StateRecord>& states, double tol) {
    std::vector<std::size_t> order(states.size());
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return states[a].energy < states[b].energy; });
    for (auto& s : states) s.degenerate_partner = -1;
    for (std::size_t i = 0; i < order.size(); ++i) {
        StateRecord& a = states[order[i]];
        if (a.degenerate_partner >= 0) continue;
        for (std::size_t j = i + 1; j < order.size(); ++j) {
            StateRecord& b = states[order[j]];
            if (b.energy - a.energy > 1e-6) break;
            if (b.degenerate_partner >= 0) continue;
            if (std::abs(a.lambda0 + b.lambda0) > tol * std::abs(a.lambda0)) continue;
            if (multiset_distance(a.z_roots, b.z_roots) > tol) continue;
            a.degenerate_partner = b.state_id;
            b.degenerate_partner = a.state_id;
            break;
        }
    }
}

}  // namespace axxz
