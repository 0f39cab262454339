#include "axxz/trigpoly.hpp"

#include <Eigen/Eigenvalues>

#include <cmath>
#include <limits>

namespace axxz {

cd mod_i_pi(cd d) {
    double im = std::fmod(d.imag() + kPi / 2, kPi);
    if (im < 0) im += kPi;
    return {d.real(), im - kPi / 2};
}

cd canonical_branch(cd z, double snap) {
    cd c = mod_i_pi(z);
    if (std::abs(c.imag() - kPi / 2) < snap || std::abs(c.imag() + kPi / 2) < snap) c = {c.real(), -kPi / 2};
    return c;
}

cd sinh_product(cd u, cd prefactor, const std::vector<cd>& roots, cd shift) {
    cd p = prefactor;
    for (const cd& r : roots) p *= std::sinh(u - r + shift);
    return p;
}

cd TrigPoly::operator()(cd u) const {
    const cd x = std::exp(2.0 * u);
    cd acc = 0.0;
    for (Eigen::Index m = coeffs.size() - 1; m >= 0; --m) acc = acc * x + coeffs(m);
    return acc * std::exp(-double(degree) * u);
}

std::vector<cd> interpolation_nodes(int degree, double offset) {
    std::vector<cd> u(static_cast<std::size_t>(degree + 1));
    for (int k = 0; k <= degree; ++k) u[static_cast<std::size_t>(k)] = {offset, kPi * k / (degree + 1)};
    return u;
}

TrigPoly interpolate_trig(const std::vector<cd>& samples, int degree, double offset) {
    const int n = degree + 1;
    if (static_cast<int>(samples.size()) != n) throw Error(ErrorCode::InvalidSpec, "sample count mismatch");
    const auto nodes = interpolation_nodes(degree, offset);
    TrigPoly p;
    p.degree = degree;
    p.coeffs = CVec::Zero(n);
    for (int m = 0; m < n; ++m) {
        cd acc = 0.0;
        for (int k = 0; k < n; ++k) {
            const cd y = samples[static_cast<std::size_t>(k)] * std::exp(double(degree) * nodes[static_cast<std::size_t>(k)]);
            acc += y * std::polar(1.0, -2.0 * kPi * double(k) * double(m) / double(n));
        }
        p.coeffs(m) = acc / double(n) * std::exp(-2.0 * offset * double(m));
    }
    return p;
}

std::vector<cd> polynomial_roots(const CVec& coeffs) {
    const auto deg = coeffs.size() - 1;
    if (deg < 1) return {};
    const cd lead = coeffs(deg);
    if (lead == cd{0.0, 0.0}) throw Error(ErrorCode::RootPolishDiverged, "vanishing leading coefficient");
    CMat companion = CMat::Zero(deg, deg);
    for (Eigen::Index i = 1; i < deg; ++i) companion(i, i - 1) = 1.0;
    for (Eigen::Index i = 0; i < deg; ++i) companion(i, deg - 1) = -coeffs(i) / lead;
    Eigen::ComplexEigenSolver<CMat> es(companion, false);
    std::vector<cd> roots(static_cast<std::size_t>(deg));
    for (Eigen::Index i = 0; i < deg; ++i) roots[static_cast<std::size_t>(i)] = es.eigenvalues()(i);
    return roots;
}

bool polish_polynomial_root(const CVec& coeffs, cd& x, int max_iter) {
    auto eval = [&](cd t, cd& dp) {
        cd p = 0.0;
        dp = 0.0;
        for (Eigen::Index m = coeffs.size() - 1; m >= 0; --m) {
            dp = dp * t + p;
            p = p * t + coeffs(m);
        }
        return p;
    };
    cd dp;
    cd cur = x;
    double best = std::abs(eval(cur, dp));
    const double start = best;
    for (int it = 0; it < max_iter && best > 0.0; ++it) {
        const cd p = eval(cur, dp);
        if (dp == cd{0.0, 0.0}) break;
        const cd next = cur - p / dp;
        cd dummy;
        const double val = std::abs(eval(next, dummy));
        if (!(val < best)) break;
        best = val;
        cur = next;
    }
    if (best > start) return false;
    x = cur;
    return true;
}

double multiset_distance(const std::vector<cd>& a, const std::vector<cd>& b) {
    if (a.size() != b.size()) return std::numeric_limits<double>::infinity();
    std::vector<bool> used(b.size(), false);
    double worst = 0.0;
    for (const cd& x : a) {
        double best = std::numeric_limits<double>::infinity();
        std::size_t arg = 0;
        for (std::size_t j = 0; j < b.size(); ++j) {
            if (used[j]) continue;
            const double d = std::abs(mod_i_pi(x - b[j]));
            if (d < best) {
                best = d;
                arg = j;
            }
        }
        used[arg] = true;
        worst = std::max(worst, best);
    }
    return worst;
}

}  // namespace axxz
