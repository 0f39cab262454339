#include "axxz/operators.hpp"
#include "axxz/lapack.hpp"

#include <algorithm>
#include <cmath>

namespace axxz {

namespace {

using RowMat = Eigen::Matrix<cd, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

inline std::size_t site_mask(int site, int n) { return std::size_t{1} << (n - 1 - site); }
inline int spin(std::size_t b, int site, int n) { return (b & site_mask(site, n)) ? -1 : 1; }

cd unit_phase(std::uint8_t p) {
    switch (p & 3U) {
        case 0: return {1.0, 0.0};
        case 1: return {0.0, 1.0};
        case 2: return {-1.0, 0.0};
        default: return {0.0, -1.0};
    }
}

}  // namespace

bool OperatorMatrix::tag_holds(double tol) const {
    switch (tag) {
        case OperatorTag::Hermitian:
            return (entries - entries.adjoint()).cwiseAbs().maxCoeff() < tol;
        case OperatorTag::SignedPermutation: {
            const auto n = entries.rows();
            std::vector<int> col_count(static_cast<std::size_t>(n), 0);
            for (Eigen::Index r = 0; r < n; ++r) {
                int row_count = 0;
                for (Eigen::Index c = 0; c < n; ++c) {
                    const cd v = entries(r, c);
                    if (v == cd{0.0, 0.0}) continue;
                    if (v != cd{1.0, 0.0} && v != cd{-1.0, 0.0}) return false;
                    ++row_count;
                    ++col_count[static_cast<std::size_t>(c)];
                }
                if (row_count != 1) return false;
            }
            for (int c : col_count)
                if (c != 1) return false;
            return true;
        }
        case OperatorTag::Generic: return true;
    }
    return false;
}

SignedPermutation SignedPermutation::identity(std::size_t dim) {
    SignedPermutation p;
    p.target.resize(dim);
    p.phase.assign(dim, 0);
    for (std::size_t b = 0; b < dim; ++b) p.target[b] = static_cast<std::uint32_t>(b);
    return p;
}

SignedPermutation SignedPermutation::compose(const SignedPermutation& rhs) const {
    SignedPermutation out;
    out.target.resize(rhs.target.size());
    out.phase.resize(rhs.target.size());
    for (std::size_t b = 0; b < rhs.target.size(); ++b) {
        const auto mid = rhs.target[b];
        out.target[b] = target[mid];
        out.phase[b] = static_cast<std::uint8_t>((rhs.phase[b] + phase[mid]) & 3U);
    }
    return out;
}

SignedPermutation SignedPermutation::power(int k) const {
    SignedPermutation result = identity(target.size());
    SignedPermutation base = *this;
    while (k > 0) {
        if (k & 1) result = result.compose(base);
        base = base.compose(base);
        k >>= 1;
    }
    return result;
}

bool SignedPermutation::is_identity() const {
    for (std::size_t b = 0; b < target.size(); ++b)
        if (target[b] != b || phase[b] != 0) return false;
    return true;
}

OperatorMatrix SignedPermutation::to_matrix() const {
    const auto n = static_cast<Eigen::Index>(target.size());
    OperatorMatrix m;
    m.entries = CMat::Zero(n, n);
    bool real = true;
    for (std::size_t b = 0; b < target.size(); ++b) {
        m.entries(target[b], static_cast<Eigen::Index>(b)) = unit_phase(phase[b]);
        real = real && (phase[b] % 2 == 0);
    }
    m.tag = real ? OperatorTag::SignedPermutation : OperatorTag::Generic;
    return m;
}

VertexWeights vertex_weights(cd u, const ChainSpec& spec) {
    const cd eta = spec.eta();
    const cd s = std::sinh(eta);
    const cd a = std::sinh(u + eta);
    const cd b = std::sinh(u);
    return {(a + b) / (2.0 * s), (a - b) / (2.0 * s)};
}

Eigen::Matrix4cd build_r_matrix(cd u, const ChainSpec& spec) {
    const auto w = vertex_weights(u, spec);
    Eigen::Matrix4cd r = Eigen::Matrix4cd::Zero();
    r(0, 0) = r(3, 3) = w.A + w.B;
    r(1, 1) = r(2, 2) = w.A - w.B;
    r(1, 2) = r(2, 1) = 1.0;
    return r;
}

SignedPermutation transfer_at_zero(const ChainSpec& spec) {
    spec.validate();
    const int n = spec.N;
    const std::size_t dim = spec.dim();
    SignedPermutation p;
    p.target.resize(dim);
    p.phase.assign(dim, 0);
    std::vector<int> s(static_cast<std::size_t>(n));
    for (std::size_t b = 0; b < dim; ++b) {
        for (int j = 0; j < n; ++j) s[static_cast<std::size_t>(j)] = (b & site_mask(j, n)) ? 1 : 0;
        for (int j = 1; j < n; ++j) std::swap(s[0], s[static_cast<std::size_t>(j)]);
        s[0] ^= 1;
        std::size_t out = 0;
        for (int j = 0; j < n; ++j)
            if (s[static_cast<std::size_t>(j)]) out |= site_mask(j, n);
        p.target[b] = static_cast<std::uint32_t>(out);
    }
    return p;
}

OperatorMatrix build_transfer(cd u, const ChainSpec& spec) {
    spec.validate();
    if (u == cd{0.0, 0.0}) return transfer_at_zero(spec).to_matrix();

    const int n = spec.N;
    const auto dim = static_cast<Eigen::Index>(spec.dim());
    const auto w = vertex_weights(u, spec);
    const cd up = w.A + w.B;
    const cd dn = w.A - w.B;

    // Auxiliary 2x2 block of chain operators; row operations only.
    RowMat t00 = RowMat::Identity(dim, dim), t01 = RowMat::Zero(dim, dim);
    RowMat t10 = RowMat::Zero(dim, dim), t11 = RowMat::Identity(dim, dim);
    Eigen::Matrix<cd, 1, Eigen::Dynamic> a0u(dim), a0d(dim), a1u(dim), a1d(dim);

    auto apply = [&](RowMat& top, RowMat& bot, std::size_t r, std::size_t rd) {
        const auto ri = static_cast<Eigen::Index>(r);
        const auto rdi = static_cast<Eigen::Index>(rd);
        a0u = top.row(ri);
        a0d = top.row(rdi);
        a1u = bot.row(ri);
        a1d = bot.row(rdi);
        top.row(ri) = up * a0u;
        top.row(rdi) = dn * a0d + a1u;
        bot.row(ri) = a0d + dn * a1u;
        bot.row(rdi) = up * a1d;
    };

    for (int j = 0; j < n; ++j) {
        const std::size_t mask = site_mask(j, n);
        for (std::size_t r = 0; r < spec.dim(); ++r) {
            if (r & mask) continue;
            apply(t00, t10, r, r | mask);
            apply(t01, t11, r, r | mask);
        }
    }
    OperatorMatrix t;
    t.entries = t01 + t10;
    t.tag = OperatorTag::Generic;
    return t;
}

RMat build_hamiltonian_real(const ChainSpec& spec) {
    spec.validate();
    const int n = spec.N;
    const auto dim = spec.dim();
    const double ch = std::cos(spec.gamma);
    RMat h = RMat::Zero(static_cast<Eigen::Index>(dim), static_cast<Eigen::Index>(dim));
    for (std::size_t b = 0; b < dim; ++b) {
        const auto bi = static_cast<Eigen::Index>(b);
        for (int j = 0; j < n; ++j) {
            const int k = (j + 1) % n;
            const bool boundary = (j == n - 1);
            const int sj = spin(b, j, n), sk = spin(b, k, n);
            // Boundary bond sees sigma^y and sigma^z of site 1 with flipped sign.
            h(bi, bi) += (boundary ? ch : -ch) * sj * sk;
            const bool flips = boundary ? (sj == sk) : (sj != sk);
            if (flips) {
                const auto c = static_cast<Eigen::Index>(b ^ site_mask(j, n) ^ site_mask(k, n));
                h(c, bi) += -2.0;
            }
        }
    }
    return h;
}

OperatorMatrix build_hamiltonian(const ChainSpec& spec) {
    OperatorMatrix h;
    h.entries = build_hamiltonian_real(spec).cast<cd>();
    h.tag = OperatorTag::Hermitian;
    return h;
}

RVec hamiltonian_spectrum(const ChainSpec& spec) {
    const RMat h = build_hamiltonian_real(spec);
    const auto dim = spec.dim();
    const auto half = static_cast<Eigen::Index>(dim / 2);
    const std::size_t all = dim - 1;
    RVec out(static_cast<Eigen::Index>(dim));
    for (int sector = 0; sector < 2; ++sector) {
        const double sign = sector == 0 ? 1.0 : -1.0;
        RMat block(half, half);
        for (Eigen::Index c = 0; c < half; ++c) {
            const auto cbar = static_cast<Eigen::Index>(static_cast<std::size_t>(c) ^ all);
            block.col(c) = h.col(c).head(half) + sign * h.col(cbar).head(half);
        }
        out.segment(sector * half, half) = lapack::symmetric_eigenvalues(block);
    }
    std::sort(out.data(), out.data() + out.size());
    return out;
}

SignedPermutation z2_permutation(Axis axis, const ChainSpec& spec) {
    spec.validate();
    const int n = spec.N;
    const std::size_t dim = spec.dim();
    SignedPermutation p;
    p.target.resize(dim);
    p.phase.resize(dim);
    for (std::size_t b = 0; b < dim; ++b) {
        int downs = 0;
        for (int j = 0; j < n; ++j) downs += (b & site_mask(j, n)) ? 1 : 0;
        const int ups = n - downs;
        switch (axis) {
            case Axis::X:
                p.target[b] = static_cast<std::uint32_t>(b ^ (dim - 1));
                p.phase[b] = 0;
                break;
            case Axis::Y:
                // sigma^y |u> = i|d>, sigma^y |d> = -i|u>
                p.target[b] = static_cast<std::uint32_t>(b ^ (dim - 1));
                p.phase[b] = static_cast<std::uint8_t>((ups + 3 * downs) & 3);
                break;
            case Axis::Z:
                p.target[b] = static_cast<std::uint32_t>(b);
                p.phase[b] = static_cast<std::uint8_t>((2 * downs) & 3);
                break;
        }
    }
    return p;
}

OperatorMatrix build_z2(Axis axis, const ChainSpec& spec) { return z2_permutation(axis, spec).to_matrix(); }

ChargeOperators build_charge(const ChainSpec& spec) {
    spec.validate();
    const int n = spec.N;
    const auto dim = static_cast<Eigen::Index>(spec.dim());
    const cd half_eta = 0.5 * spec.eta();
    ChargeOperators q;
    q.l_plus.entries = CMat::Zero(dim, dim);
    q.l_minus.entries = CMat::Zero(dim, dim);
    for (std::size_t b = 0; b < spec.dim(); ++b) {
        for (int j = 0; j < n; ++j) {
            int left = 0, right = 0;
            for (int k = 0; k < j; ++k) left += spin(b, k, n);
            for (int k = j + 1; k < n; ++k) right += spin(b, k, n);
            const auto c = static_cast<Eigen::Index>(b ^ site_mask(j, n));
            const auto bi = static_cast<Eigen::Index>(b);
            if (spin(b, j, n) < 0) {
                q.l_plus.entries(c, bi) += 0.5 * std::exp(-half_eta * double(right) + half_eta * double(left));
            } else {
                q.l_minus.entries(c, bi) += 0.5 * std::exp(half_eta * double(right) - half_eta * double(left));
            }
        }
    }
    q.M_q.entries = 0.5 * (q.l_plus.entries + q.l_minus.entries);
    q.M_q.tag = OperatorTag::Generic;
    q.l_plus.tag = q.l_minus.tag = OperatorTag::Generic;
    return q;
}

OperatorMatrix charge_from_transfer_limit(double u, const ChainSpec& spec) {
    const cd eta = spec.eta();
    const int n = spec.N;
    OperatorMatrix t = build_transfer(cd{u, 0.0}, spec);
    const cd scale = 0.25 * std::exp(-double(n - 1) * eta / 2.0) *
                     std::pow(2.0 * std::sinh(eta) * std::exp(-u), n - 1);
    t.entries *= scale;
    return t;
}

OperatorMatrix pauli_on_site(Axis axis, int site, const ChainSpec& spec) {
    const int n = spec.N;
    const auto dim = static_cast<Eigen::Index>(spec.dim());
    OperatorMatrix m;
    m.entries = CMat::Zero(dim, dim);
    for (std::size_t b = 0; b < spec.dim(); ++b) {
        const auto bi = static_cast<Eigen::Index>(b);
        const int s = spin(b, site, n);
        const auto flipped = static_cast<Eigen::Index>(b ^ site_mask(site, n));
        switch (axis) {
            case Axis::X: m.entries(flipped, bi) = 1.0; break;
            case Axis::Y: m.entries(flipped, bi) = s > 0 ? kI : -kI; break;
            case Axis::Z: m.entries(bi, bi) = double(s); break;
        }
    }
    m.tag = OperatorTag::Hermitian;
    return m;
}

double commutator_norm(const CMat& a, const CMat& b) { return (a * b - b * a).cwiseAbs().maxCoeff(); }

}  // namespace axxz
