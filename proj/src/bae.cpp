#include "axxz/bae.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <random>
#include <sstream>

namespace axxz {

namespace {

struct NewtonState {
    std::vector<cd> z, w;
    cd lambda0;
};

CVec pack(const NewtonState& s) {
    const auto nz = static_cast<Eigen::Index>(s.z.size());
    const auto nw = static_cast<Eigen::Index>(s.w.size());
    CVec x(nz + nw + 1);
    for (Eigen::Index i = 0; i < nz; ++i) x(i) = s.z[static_cast<std::size_t>(i)];
    for (Eigen::Index i = 0; i < nw; ++i) x(nz + i) = s.w[static_cast<std::size_t>(i)];
    x(nz + nw) = s.lambda0;
    return x;
}

NewtonState unpack(const CVec& x, std::size_t nz, std::size_t nw) {
    NewtonState s;
    s.z.assign(x.data(), x.data() + nz);
    s.w.assign(x.data() + nz, x.data() + nz + nw);
    s.lambda0 = x(static_cast<Eigen::Index>(nz + nw));
    return s;
}

double min_separation(const std::vector<cd>& r) {
    double m = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < r.size(); ++i)
        for (std::size_t j = i + 1; j < r.size(); ++j) m = std::min(m, std::abs(r[i] - r[j]));
    return m;
}

bool collided(const NewtonState& s) { return min_separation(s.z) < 1e-10 || min_separation(s.w) < 1e-10; }

// Product of all entries but one, without division.
cd product_except(const std::vector<cd>& v, std::size_t skip) {
    cd p = 1.0;
    for (std::size_t i = 0; i < v.size(); ++i)
        if (i != skip) p *= v[i];
    return p;
}

// Scaled residual and Jacobian of the collocation system.
void residual_and_jacobian(const NewtonState& s, int W0, const ChainSpec& spec, const std::vector<cd>& pts, CVec& F,
                           CMat* J) {
    const int n = spec.N;
    const cd eta = spec.eta();
    const cd half = 0.5 * eta;
    const cd sn = std::pow(std::sinh(eta), -n);
    const std::size_t nz = s.z.size(), nw = s.w.size();
    const auto rows = static_cast<Eigen::Index>(pts.size());
    F.resize(rows);
    if (J) J->resize(rows, static_cast<Eigen::Index>(nz + nw + 1));

    std::vector<cd> A(nz), B(nz), S(nw);
    for (Eigen::Index k = 0; k < rows; ++k) {
        const cd u = pts[static_cast<std::size_t>(k)];
        cd pa = 1.0, pb = 1.0, ps = 1.0;
        for (std::size_t j = 0; j < nz; ++j) {
            A[j] = std::sinh(u - s.z[j] + half);
            B[j] = std::sinh(u - eta - s.z[j] + half);
            pa *= A[j];
            pb *= B[j];
        }
        for (std::size_t l = 0; l < nw; ++l) {
            S[l] = std::sinh(u - s.w[l]);
            ps *= S[l];
        }
        const cd la = s.lambda0 * pa, lb = s.lambda0 * pb;
        const cd wv = double(W0) * sn * ps;
        const cd ad = a_fn(u, spec) * d_fn(u - eta, spec);
        const cd du = d_fn(u, spec);
        const double scale = std::abs(la * lb) + std::abs(ad) + std::abs(du * wv);
        F(k) = (la * lb + ad - du * wv) / scale;
        if (!J) continue;
        for (std::size_t j = 0; j < nz; ++j) {
            const cd da = -s.lambda0 * std::cosh(u - s.z[j] + half) * product_except(A, j);
            const cd db = -s.lambda0 * std::cosh(u - eta - s.z[j] + half) * product_except(B, j);
            (*J)(k, static_cast<Eigen::Index>(j)) = (da * lb + la * db) / scale;
        }
        for (std::size_t l = 0; l < nw; ++l)
            (*J)(k, static_cast<Eigen::Index>(nz + l)) =
                du * double(W0) * sn * std::cosh(u - s.w[l]) * product_except(S, l) / scale;
        (*J)(k, static_cast<Eigen::Index>(nz + nw)) = 2.0 * s.lambda0 * pa * pb / scale;
    }
}

struct NewtonOutcome {
    NewtonState state;
    double residual = 0.0;
    int iterations = 0;
    bool converged = false;
    bool collision = false;
};

NewtonOutcome collocation_newton(NewtonState s, int W0, const ChainSpec& spec, const NewtonOptions& opts) {
    const auto pts = collocation_points(spec);
    const std::size_t nz = s.z.size(), nw = s.w.size();
    NewtonOutcome out;
    CVec x = pack(s), F;
    CMat J;
    residual_and_jacobian(s, W0, spec, pts, F, &J);
    double r = F.norm();
    int it = 0;
    for (; it < opts.max_iterations && r >= opts.residual_tol; ++it) {
        if (collided(unpack(x, nz, nw))) {
            out.collision = true;
            break;
        }
        const CVec dx = J.completeOrthogonalDecomposition().solve(-F);
        double lambda = 1.0;
        CVec xn, Fn;
        CMat Jn;
        double rn = r;
        while (lambda >= opts.min_step) {
            xn = x + lambda * dx;
            residual_and_jacobian(unpack(xn, nz, nw), W0, spec, pts, Fn, &Jn);
            rn = Fn.norm();
            if (std::isfinite(rn) && rn < r) break;
            lambda *= opts.damping;
        }
        if (!(rn < r)) break;
        const double step = (xn - x).norm();
        x = xn;
        F = Fn;
        J = Jn;
        r = rn;
        if (step < opts.step_tol * (1.0 + x.norm())) {
            ++it;
            break;
        }
    }
    out.state = unpack(x, nz, nw);
    out.residual = r;
    out.iterations = it;
    out.converged = r < opts.residual_tol;
    return out;
}

// Lambda(u) = sum_m c_m e^{p_m u}, p_m = 2m - (N-1).
CVec lambda_coefficients(const std::vector<cd>& z, cd lambda0, const ChainSpec& spec) {
    const cd half = 0.5 * spec.eta();
    CVec c = CVec::Constant(1, lambda0);
    for (const cd& zj : z) {
        const cd a = 0.5 * std::exp(-zj + half);
        const cd b = -0.5 * std::exp(zj - half);
        CVec next = CVec::Zero(c.size() + 1);
        next.tail(c.size()) += a * c;
        next.head(c.size()) += b * c;
        c = next;
    }
    return c;
}

double factorial(int k) { return std::tgamma(k + 1.0); }

// Taylor coefficients at u = 0 of a(u)d(u-eta) = [(cosh 2u - cosh 2eta)/2]^N / sinh^{2N}(eta).
CVec ad_taylor(const ChainSpec& spec, int K) {
    const int n = spec.N;
    const cd eta = spec.eta();
    // Exponent q of e^{qu} -> coefficient, stored with offset 2N.
    std::vector<cd> coef(static_cast<std::size_t>(4 * n + 1), 0.0);
    coef[static_cast<std::size_t>(2 * n)] = 1.0;
    const cd base0 = -0.5 * std::cosh(2.0 * eta);
    for (int step = 0; step < n; ++step) {
        std::vector<cd> next(coef.size(), 0.0);
        for (std::size_t q = 0; q < coef.size(); ++q) {
            if (coef[q] == 0.0) continue;
            next[q] += coef[q] * base0;
            if (q + 2 < coef.size()) next[q + 2] += 0.25 * coef[q];
            if (q >= 2) next[q - 2] += 0.25 * coef[q];
        }
        coef = std::move(next);
    }
    const cd norm = std::pow(std::sinh(eta), -2 * n);
    CVec A(K);
    for (int k = 0; k < K; ++k) {
        cd sum = 0.0;
        for (std::size_t q = 0; q < coef.size(); ++q) {
            const double e = double(q) - 2.0 * n;
            sum += coef[q] * std::pow(e, k);
        }
        A(k) = sum / factorial(k) * norm;
    }
    return A;
}

// Divisibility conditions: the first N Taylor coefficients of
// Lambda(u)Lambda(u-eta) + a(u)d(u-eta) vanish at u = 0.
void coefficient_system(const CVec& c, const ChainSpec& spec, const CVec& A, CVec& G, CMat& J) {
    const int n = spec.N;
    const cd eta = spec.eta();
    G.resize(n);
    J.resize(n, n);
    CMat M(n, n);
    for (int k = 0; k < n; ++k) {
        for (int m = 0; m < n; ++m)
            for (int mp = 0; mp < n; ++mp) {
                const double pm = 2 * m - (n - 1), pmp = 2 * mp - (n - 1);
                M(m, mp) = std::pow(pm + pmp, k) / factorial(k) * std::exp(-pmp * eta);
            }
        const double scale = std::abs(A(k)) + 1.0;
        G(k) = (c.transpose() * M * c)(0, 0) + A(k);
        G(k) /= scale;
        J.row(k) = ((M + M.transpose()) * c).transpose() / scale;
    }
}

void coefficient_newton(CVec& c, const ChainSpec& spec) {
    const CVec A = ad_taylor(spec, spec.N);
    CVec G, Gn;
    CMat J, Jn;
    coefficient_system(c, spec, A, G, J);
    double r = G.norm();
    for (int it = 0; it < 200 && r >= 1e-13; ++it) {
        const CVec dc = J.fullPivLu().solve(-G);
        double lambda = 1.0, rn = r;
        CVec cn;
        while (lambda > 1e-10) {
            cn = c + lambda * dc;
            coefficient_system(cn, spec, A, Gn, Jn);
            rn = Gn.norm();
            if (std::isfinite(rn) && rn < r) break;
            lambda *= 0.5;
        }
        if (!(rn < r)) break;
        c = cn;
        G = Gn;
        J = Jn;
        r = rn;
    }
}

// Folds roots into Im in [-pi/2, pi/2), compensating the prefactor sign.
// Roots on the cut are moved to the lower edge without touching their value
// beyond a whole multiple of i*pi.
void canonicalize(std::vector<cd>& roots, double& sign) {
    for (cd& r : roots) {
        cd c = mod_i_pi(r);
        if (c.imag() > kPi / 2 - 1e-6) c -= kI * kPi;
        const long shifts = std::lround((r.imag() - c.imag()) / kPi);
        if (shifts % 2 != 0) sign = -sign;
        r = c;
    }
}

void sort_roots(std::vector<cd>& r) {
    std::sort(r.begin(), r.end(),
              [](cd a, cd b) { return a.real() != b.real() ? a.real() < b.real() : a.imag() < b.imag(); });
}

BaeSolution finish(NewtonOutcome&& o, int W0, const ChainSpec& spec, std::string descriptor, std::string route,
                   int extra_iterations) {
    BaeSolution sol;
    double lsign = 1.0, wsign = W0;
    sol.z_roots = std::move(o.state.z);
    sol.w_roots = std::move(o.state.w);
    canonicalize(sol.z_roots, lsign);
    canonicalize(sol.w_roots, wsign);
    sort_roots(sol.z_roots);
    sort_roots(sol.w_roots);
    sol.lambda0 = lsign * o.state.lambda0;
    sol.W0 = wsign > 0 ? 1 : -1;
    sol.residual_norm = collocation_residual(sol.z_roots, sol.w_roots, sol.lambda0, sol.W0, spec).norm();
    sol.iterations = o.iterations + extra_iterations;
    sol.converged = o.converged;
    sol.seed_descriptor = std::move(descriptor);
    sol.route = std::move(route);
    return sol;
}

std::string describe_guess(const RootGuess& g) {
    std::ostringstream os;
    os << "roots(z=" << g.z.size() << ",w=" << g.w.size() << ")";
    return os.str();
}

// Ground-state roots for this N, computed once per solve.
BaeSolution ground_roots(const ChainSpec& spec) {
    return solve_ground_log_form(spec, QuantumNumberConfig::symmetric(spec.N));
}

// Removes the k entries closest to `a`.
std::vector<cd> drop_nearest(std::vector<cd> v, cd a, std::size_t k) {
    std::sort(v.begin(), v.end(), [&](cd x, cd y) { return std::abs(x - a) < std::abs(y - a); });
    v.erase(v.begin(), v.begin() + static_cast<std::ptrdiff_t>(std::min(k, v.size())));
    return v;
}

// Removes the k outermost entries on `side`.
std::vector<cd> drop_outermost(std::vector<cd> v, int side, std::size_t k) {
    std::sort(v.begin(), v.end(), [&](cd x, cd y) { return side * x.real() < side * y.real(); });
    v.resize(v.size() - std::min(k, v.size()));
    return v;
}

}  // namespace

// ---------------------------------------------------------------------------

QuantumNumberConfig QuantumNumberConfig::symmetric(int N) {
    QuantumNumberConfig q;
    for (int j = 0; j < N - 1; ++j) q.I.push_back(j - (N - 2) / 2.0);
    return q;
}

void QuantumNumberConfig::validate(int N) const {
    if (static_cast<int>(I.size()) != N - 1)
        throw Error(ErrorCode::InvalidSpec, "expected " + std::to_string(N - 1) + " quantum numbers");
    std::vector<double> sorted = I;
    std::sort(sorted.begin(), sorted.end());
    for (std::size_t j = 0; j < sorted.size(); ++j) {
        const double shifted = sorted[j] + (N - 2) / 2.0;
        if (std::abs(shifted - std::round(shifted)) > 1e-12 || shifted < -1e-12 || shifted > N - 2 + 1e-12)
            throw Error(ErrorCode::InvalidSpec, "quantum number out of range or of wrong parity");
        if (j > 0 && sorted[j] - sorted[j - 1] < 0.5)
            throw Error(ErrorCode::InvalidSpec, "quantum numbers must be distinct");
    }
}

const char* to_string(ExcitationType t) {
    switch (t) {
        case ExcitationType::Ground: return "ground";
        case ExcitationType::TypeI: return "type-I";
        case ExcitationType::TypeII: return "type-II";
        case ExcitationType::TypeIII: return "type-III";
        case ExcitationType::Asymmetric: return "asymmetric";
    }
    return "?";
}

ExcitationType excitation_type_from_string(const std::string& s) {
    for (auto t : {ExcitationType::Ground, ExcitationType::TypeI, ExcitationType::TypeII, ExcitationType::TypeIII,
                   ExcitationType::Asymmetric})
        if (s == to_string(t)) return t;
    throw Error(ErrorCode::UnsupportedType, "unknown excitation type '" + s + "'");
}

void StringSeed::validate() const {
    if (type == ExcitationType::TypeIII && n < 3) throw Error(ErrorCode::InvalidSpec, "type-III requires n >= 3");
    if (type == ExcitationType::Asymmetric) {
        const double nearest = std::round(m_guess);
        if (std::abs(m_guess - nearest) > 1e-12 || nearest < 3 || static_cast<long>(nearest) % 2 == 0)
            throw Error(ErrorCode::InvalidSpec, "asymmetric seed requires odd m >= 3");
        if (side != -1 && side != 1) throw Error(ErrorCode::InvalidSpec, "side must be -1 or +1");
    }
    if (!std::isfinite(alpha)) throw Error(ErrorCode::InvalidSpec, "alpha must be finite");
}

std::string StringSeed::describe() const {
    std::ostringstream os;
    os << to_string(type);
    switch (type) {
        case ExcitationType::TypeI:
        case ExcitationType::TypeII: os << "(alpha=" << alpha << ")"; break;
        case ExcitationType::TypeIII: os << "(alpha=" << alpha << ",n=" << n << ")"; break;
        case ExcitationType::Asymmetric:
            os << "(side=" << (side < 0 ? "left" : "right") << ",m=" << m_guess << ",offset=" << offset << ")";
            break;
        case ExcitationType::Ground: break;
    }
    return os.str();
}

cd lambda0_from_normalization(const std::vector<cd>& z, const ChainSpec& spec) {
    const cd half = 0.5 * spec.eta();
    cd p = 1.0;
    for (const cd& zj : z) p *= std::sinh(zj + half) * std::sinh(zj - half);
    const double sign = (spec.N - 1) % 2 == 0 ? 1.0 : -1.0;
    return std::sqrt(cd(sign) / p);
}

std::vector<cd> collocation_points(const ChainSpec& spec) {
    const int K = 2 * spec.N + 1;
    std::vector<cd> pts;
    for (int k = 0; k < K; ++k) pts.push_back(kI * (kPi * (k + 0.5) / K));
    return pts;
}

CVec collocation_residual(const std::vector<cd>& z, const std::vector<cd>& w, cd lambda0, int W0,
                          const ChainSpec& spec) {
    CVec F;
    residual_and_jacobian({z, w, lambda0}, W0, spec, collocation_points(spec), F, nullptr);
    return F;
}

BaeSolution solve_collocation(const ChainSpec& spec, const RootGuess& seed, int W0, const NewtonOptions& opts) {
    spec.validate();
    const auto n = static_cast<std::size_t>(spec.N);
    if (seed.z.size() != n - 1 || seed.w.size() != n)
        throw Error(ErrorCode::InvalidSpec, "seed needs N-1 z-roots and N w-roots");
    if (W0 != 1 && W0 != -1) throw Error(ErrorCode::InvalidSpec, "W0 must be +1 or -1");

    NewtonState start{seed.z, seed.w, seed.lambda0 == 0.0 ? lambda0_from_normalization(seed.z, spec) : seed.lambda0};
    const std::string descriptor = describe_guess(seed);

    std::mt19937_64 rng(opts.jitter_seed);
    std::uniform_real_distribution<double> jitter(-opts.jitter, opts.jitter);
    auto jittered = [&](NewtonState s) {
        for (auto* v : {&s.z, &s.w})
            for (cd& r : *v) r += cd(jitter(rng), jitter(rng));
        return s;
    };

    NewtonOutcome direct;
    int restarts = 0;
    NewtonState attempt = start;
    while (true) {
        direct = collocation_newton(attempt, W0, spec, opts);
        if (!direct.collision) break;
        if (++restarts > opts.max_restarts)
            throw Error(ErrorCode::SingularJacobian, "roots collide after " + std::to_string(opts.max_restarts) +
                                                         " jittered restarts");
        attempt = jittered(start);
    }
    if (direct.converged) return finish(std::move(direct), W0, spec, descriptor, "collocation", 0);
    if (!opts.allow_globalization)
        throw Error(ErrorCode::Diverged, "collocation residual stagnated at " + std::to_string(direct.residual));

    // Newton on the coefficients of Lambda, then roots, W, and a collocation polish.
    CVec c = lambda_coefficients(start.z, start.lambda0, spec);
    // An unconverged coefficient stage still tends to land in the right basin.
    coefficient_newton(c, spec);
    auto xs = polynomial_roots(c);
    std::vector<cd> z;
    cd shift_sum = 0.0;
    for (cd& x : xs) {
        polish_polynomial_root(c, x);
        z.push_back(canonical_branch(0.5 * std::log(x) + 0.5 * spec.eta()));
        shift_sum += -z.back() + 0.5 * spec.eta();
    }
    const cd lambda0 = c(c.size() - 1) * std::pow(2.0, spec.N - 1) / std::exp(shift_sum);
    const auto lam = [&](cd u) {
        cd v = 0.0;
        for (Eigen::Index m = c.size() - 1; m >= 0; --m) v = v * std::exp(2.0 * u) + c(m);
        return v * std::exp(-double(spec.N - 1) * u);
    };
    const TWRecord tw = build_w_function(lambda0, z, spec, lam, std::numeric_limits<double>::infinity());
    NewtonOutcome polished = collocation_newton({z, tw.w_roots, lambda0}, tw.W0, spec, opts);
    if (!polished.converged)
        throw Error(ErrorCode::Diverged, "collocation residual stagnated at " + std::to_string(direct.residual) +
                                             ", after coefficient stage at " + std::to_string(polished.residual));
    return finish(std::move(polished), tw.W0, spec, descriptor, "coefficient+collocation", direct.iterations);
}

BaeSolution solve_collocation(const ChainSpec& spec, const StringSeed& seed, int W0, const NewtonOptions& opts) {
    seed.validate();
    auto sol = solve_collocation(spec, seed_from_strings(spec, seed), W0, opts);
    sol.seed_descriptor = seed.describe();
    return sol;
}

// ---------------------------------------------------------------------------

double kernel_theta(int n, double x, double gamma) {
    const double t = std::tan(n * gamma / 2.0);
    if (std::abs(t) < 1e-300) throw Error(ErrorCode::PoleAt, "tan(n gamma/2) vanishes");
    return 2.0 * std::atan(std::tanh(x) / t);
}

double kernel_a(int n, double x, double gamma) {
    const double c = 1.0 / std::tan(n * gamma / 2.0);
    const double t = std::tanh(x);
    return c * (1.0 - t * t) / (1.0 + c * c * t * t) / kPi;
}

double kernel_b(int n, double x, double gamma) {
    const cd arg(x, -n * gamma / 2.0);
    const cd s = std::sinh(arg);
    if (std::abs(s) < 1e-14) throw Error(ErrorCode::PoleAt, "sinh(x - n eta/2) vanishes at x = " + std::to_string(x));
    return (std::cosh(arg) / s).real() / kPi;
}

double density_quantile(double q, double gamma) {
    const double a = kPi / (kPi - gamma);
    const double c = std::cos(a * (kPi / 2.0 - gamma));
    if (!(c > 0.0)) throw Error(ErrorCode::InvalidSpec, "total density is not positive at this gamma");
    return std::asinh(c * std::tan(kPi * q)) / a;
}

namespace {

double ln_abs_sinh(double x, double phi) { return std::log(std::abs(std::sinh(cd(x, -phi)))); }
double d_ln_abs_sinh(double x, double phi) {
    const cd arg(x, -phi);
    return (std::cosh(arg) / std::sinh(arg)).real();
}
double d_theta(int n, double x, double gamma) { return 2.0 * kPi * kernel_a(n, x, gamma); }

void log_system(const std::vector<double>& I, const RVec& x, int N, double g, RVec& F, RMat& J) {
    const int nz = N - 1;
    const int m = 2 * N - 1;
    F.setZero(m);
    J.setZero(m, m);
    for (int j = 0; j < nz; ++j) {
        const double zj = x(j);
        F(j) = 2 * kernel_theta(1, zj, g) - kernel_theta(3, zj, g) - 4 * kPi * I[static_cast<std::size_t>(j)] / N;
        J(j, j) = 2 * d_theta(1, zj, g) - d_theta(3, zj, g);
        F(nz + j) = ln_abs_sinh(zj, 1.5 * g);
        J(nz + j, j) = d_ln_abs_sinh(zj, 1.5 * g);
        for (int l = 0; l < N; ++l) {
            const double d = zj - x(nz + l);
            F(j) += kernel_theta(1, d, g) / N;
            J(j, j) += d_theta(1, d, g) / N;
            J(j, nz + l) = -d_theta(1, d, g) / N;
            F(nz + j) -= ln_abs_sinh(d, 0.5 * g) / N;
            J(nz + j, j) -= d_ln_abs_sinh(d, 0.5 * g) / N;
            J(nz + j, nz + l) = d_ln_abs_sinh(d, 0.5 * g) / N;
        }
    }
    for (int l = 0; l < N; ++l) {
        F(m - 1) += x(nz + l);
        J(m - 1, nz + l) = 1.0;
    }
}

}  // namespace

BaeSolution solve_ground_log_form(const ChainSpec& spec, const QuantumNumberConfig& qn, const NewtonOptions& opts) {
    spec.validate();
    qn.validate(spec.N);
    const int N = spec.N;
    const double g = spec.gamma;
    const int nz = N - 1;

    RVec x(2 * N - 1);
    for (int j = 0; j < nz; ++j) x(j) = density_quantile(qn.I[static_cast<std::size_t>(j)] / N, g);
    for (int l = 0; l < N; ++l) x(nz + l) = density_quantile((l - (N - 1) / 2.0) / N, g);

    RVec F, Fn;
    RMat J, Jn;
    log_system(qn.I, x, N, g, F, J);
    double r = F.norm();
    int it = 0;
    for (; it < opts.max_iterations && r >= opts.residual_tol; ++it) {
        const RVec dx = J.fullPivLu().solve(-F);
        double lambda = 1.0, rn = r;
        RVec xn;
        while (lambda >= opts.min_step) {
            xn = x + lambda * dx;
            if (!xn.allFinite()) throw Error(ErrorCode::NonRealDrift, "iterate left the real line");
            log_system(qn.I, xn, N, g, Fn, Jn);
            rn = Fn.norm();
            if (std::isfinite(rn) && rn < r) break;
            lambda *= opts.damping;
        }
        if (!(rn < r)) break;
        const double step = (xn - x).norm();
        x = xn;
        F = Fn;
        J = Jn;
        r = rn;
        if (step < opts.step_tol * (1.0 + x.norm())) {
            ++it;
            break;
        }
    }
    // Round-off floor of the log system is about 1e-15 per equation.
    if (!(r < std::max(opts.residual_tol, 1e-13 * N)))
        throw Error(ErrorCode::Diverged, "log-form residual stagnated at " + std::to_string(r));

    BaeSolution sol;
    for (int j = 0; j < nz; ++j) sol.z_roots.emplace_back(x(j), 0.0);
    for (int l = 0; l < N; ++l) sol.w_roots.emplace_back(x(nz + l), 0.0);
    sort_roots(sol.z_roots);
    sort_roots(sol.w_roots);
    double prod = 1.0;
    for (const cd& z : sol.z_roots) prod *= std::norm(std::sinh(z + 0.5 * spec.eta()));
    sol.lambda0 = (N % 2 == 0 ? kI : cd(1.0)) / std::sqrt(prod);
    sol.W0 = 1;
    sol.iterations = it;
    sol.route = "log-form";
    std::ostringstream os;
    os << "log-form(I=";
    for (std::size_t j = 0; j < qn.I.size(); ++j) os << (j ? "," : "") << qn.I[j];
    os << ")";
    sol.seed_descriptor = os.str();

    // The real solution must also satisfy the complex relation.
    sol.residual_norm = collocation_residual(sol.z_roots, sol.w_roots, sol.lambda0, sol.W0, spec).norm();
    if (sol.residual_norm > 1e-8)
        throw Error(ErrorCode::NonRealDrift,
                    "real-root solution violates the complex relation by " + std::to_string(sol.residual_norm));
    sol.converged = true;
    return sol;
}

RootGuess seed_from_strings(const ChainSpec& spec, const StringSeed& seed) {
    seed.validate();
    const cd eta = spec.eta();
    const double a = seed.alpha;
    const BaeSolution g = ground_roots(spec);
    RootGuess out;
    out.z = g.z_roots;
    out.w = g.w_roots;
    auto append = [](std::vector<cd>& v, std::initializer_list<cd> extra) { v.insert(v.end(), extra); };

    switch (seed.type) {
        case ExcitationType::Ground: break;
        case ExcitationType::TypeI: {
            const double m = kPi / spec.gamma - 1.0;
            out.z = drop_nearest(out.z, a, 1);
            out.w = drop_nearest(out.w, a, 2);
            append(out.z, {cd(a, -kPi / 2)});
            append(out.w, {a + m * eta / 2.0, a - m * eta / 2.0});
            break;
        }
        case ExcitationType::TypeII:
            out.z = drop_nearest(out.z, a, 2);
            out.w = drop_nearest(out.w, a, 2);
            append(out.z, {a + eta, a - eta});
            append(out.w, {a + 1.5 * eta, a - 1.5 * eta});
            break;
        case ExcitationType::TypeIII: {
            const double n = seed.n;
            out.z = drop_nearest(out.z, a, 2);
            out.w = drop_nearest(out.w, a, 4);
            append(out.z, {a + n * eta / 2.0, a - n * eta / 2.0});
            append(out.w, {a + (n - 1) * eta / 2.0, a - (n - 1) * eta / 2.0, a + (n + 1) * eta / 2.0,
                           a - (n + 1) * eta / 2.0});
            break;
        }
        case ExcitationType::Asymmetric: {
            const int side = seed.side;
            double zmax = 0.0;
            for (const cd& z : out.z) zmax = std::max(zmax, std::abs(z));
            const double beta = side * (zmax + seed.offset);
            out.z = drop_outermost(out.z, side, 1);
            out.w = drop_outermost(out.w, side, 2);
            append(out.z, {cd(beta + side * 0.15, 0.0)});
            append(out.w, {beta + seed.m_guess * eta / 2.0, beta - seed.m_guess * eta / 2.0});
            break;
        }
    }
    out.lambda0 = lambda0_from_normalization(out.z, spec);
    return out;
}

}  // namespace axxz
