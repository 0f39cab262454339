#pragma once
// Brute-force reference implementations used only by the tests. They follow
// the textbook definitions literally (full Kronecker products, naive
// quadrature) and share no code with the library beyond basic types.

#include "axxz/common.hpp"

#include <Eigen/Eigenvalues>

#include <cmath>
#include <functional>

namespace oracle {

using axxz::cd;
using axxz::CMat;

inline CMat pauli(char axis) {
    CMat p(2, 2);
    switch (axis) {
        case 'x': p << 0, 1, 1, 0; break;
        case 'y': p << 0, cd(0, -1), cd(0, 1), 0; break;
        case 'z': p << 1, 0, 0, -1; break;
        default: p = CMat::Identity(2, 2);
    }
    return p;
}

inline CMat kron(const CMat& a, const CMat& b) {
    CMat out(a.rows() * b.rows(), a.cols() * b.cols());
    for (Eigen::Index i = 0; i < a.rows(); ++i)
        for (Eigen::Index j = 0; j < a.cols(); ++j) out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    return out;
}

/// Single-site operator at `pos` among `count` tensor factors (pos 0 leftmost).
inline CMat embed(const CMat& op, int pos, int count) {
    CMat out = CMat::Identity(1, 1);
    for (int k = 0; k < count; ++k) out = kron(out, k == pos ? op : CMat::Identity(2, 2));
    return out;
}

/// R_{0,j}(u) on the auxiliary space (factor 0) and chain site j (factor j+1).
inline CMat r_aux_site(cd u, cd eta, int j, int n) {
    const int count = n + 1;
    const cd a = (std::sinh(u + eta) + std::sinh(u)) / (2.0 * std::sinh(eta));
    const cd b = (std::sinh(u + eta) - std::sinh(u)) / (2.0 * std::sinh(eta));
    const auto dim = Eigen::Index{1} << count;
    CMat r = a * CMat::Identity(dim, dim);
    for (char ax : {'x', 'y'}) r += 0.5 * embed(pauli(ax), j + 1, count) * embed(pauli(ax), 0, count);
    r += b * embed(pauli('z'), j + 1, count) * embed(pauli('z'), 0, count);
    return r;
}

/// t(u) = tr_0(sigma^x_0 R_{0,N} ... R_{0,1}) with the full monodromy.
inline CMat transfer(cd u, double gamma, int n) {
    const cd eta{0.0, gamma};
    const auto dim = Eigen::Index{1} << (n + 1);
    CMat mono = CMat::Identity(dim, dim);
    for (int j = n - 1; j >= 0; --j) mono = mono * r_aux_site(u, eta, j, n);
    const CMat m = embed(pauli('x'), 0, n + 1) * mono;
    const auto half = dim / 2;
    return m.block(0, 0, half, half) + m.block(half, half, half, half);
}

/// H = -sum_n (XX + YY + cosh(eta) ZZ), site N+1 replaced by sigma^x_1 sigma_1 sigma^x_1.
inline CMat hamiltonian(double gamma, int n) {
    const double ch = std::cos(gamma);
    const auto dim = Eigen::Index{1} << n;
    CMat h = CMat::Zero(dim, dim);
    const CMat x = pauli('x');
    for (int s = 0; s < n; ++s) {
        for (char ax : {'x', 'y', 'z'}) {
            const double w = ax == 'z' ? ch : 1.0;
            CMat right = pauli(ax);
            int t = s + 1;
            if (t == n) {
                right = x * right * x;
                t = 0;
            }
            h -= w * embed(pauli(ax), s, n) * embed(right, t, n);
        }
    }
    return h;
}

inline Eigen::VectorXd eigenvalues_hermitian(const CMat& h) {
    Eigen::SelfAdjointEigenSolver<CMat> es(h);
    return es.eigenvalues();
}

/// Composite trapezoid on [-L, L]; for smooth, exponentially decaying
/// integrands this converges geometrically in the step.
inline double trapezoid(const std::function<double(double)>& f, double L, double h) {
    const long steps = static_cast<long>(std::ceil(2.0 * L / h));
    const double dx = 2.0 * L / steps;
    double s = 0.5 * (f(-L) + f(L));
    for (long k = 1; k < steps; ++k) s += f(-L + k * dx);
    return s * dx;
}

inline double max_abs(const CMat& m) { return m.cwiseAbs().maxCoeff(); }

}  // namespace oracle
