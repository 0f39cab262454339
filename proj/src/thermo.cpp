#include "axxz/thermo.hpp"

#include <Eigen/Eigenvalues>

#include <array>
#include <cmath>
#include <sstream>

namespace axxz {

namespace {

constexpr int kGaussOrder = 16;
// e^{-36.8} ~ 1e-16 relative to the peak; doubled for margin.
constexpr double kTailExponent = 2.0 * 36.8;
constexpr int kMaxHalvings = 10;

struct GaussRule {
    std::array<double, kGaussOrder> x{}, w{};
};

// Golub-Welsch: nodes and weights on [-1, 1].
const GaussRule& gauss_rule() {
    static const GaussRule rule = [] {
        Eigen::MatrixXd T = Eigen::MatrixXd::Zero(kGaussOrder, kGaussOrder);
        for (int k = 1; k < kGaussOrder; ++k) {
            const double b = k / std::sqrt(4.0 * k * k - 1.0);
            T(k, k - 1) = T(k - 1, k) = b;
        }
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(T);
        GaussRule r;
        for (int i = 0; i < kGaussOrder; ++i) {
            r.x[static_cast<std::size_t>(i)] = es.eigenvalues()(i);
            const double v0 = es.eigenvectors()(0, i);
            r.w[static_cast<std::size_t>(i)] = 2.0 * v0 * v0;
        }
        return r;
    }();
    return rule;
}

double composite(const std::function<double(double)>& f, double T, int panels) {
    const auto& g = gauss_rule();
    const double h = 2.0 * T / panels;
    double sum = 0.0;
    for (int p = 0; p < panels; ++p) {
        const double mid = -T + (p + 0.5) * h;
        double s = 0.0;
        for (int i = 0; i < kGaussOrder; ++i)
            s += g.w[static_cast<std::size_t>(i)] * f(mid + 0.5 * h * g.x[static_cast<std::size_t>(i)]);
        sum += 0.5 * h * s;
    }
    return sum;
}

double checked_denominator(double alpha, double k_gamma) {
    const double d = std::cosh(2.0 * alpha) - std::cos(k_gamma);
    if (std::abs(d) < 1e-14)
        throw Error(ErrorCode::DenominatorSingular,
                    "cosh(2 alpha) = cos(" + std::to_string(k_gamma) + ") at alpha = " + std::to_string(alpha));
    return d;
}

}  // namespace

void ThermoParams::validate() const {
    if (!(gamma >= 1e-3 && gamma <= kPi - 1e-3))
        throw Error(ErrorCode::InvalidSpec, "gamma must lie in [1e-3, pi - 1e-3]");
    if (!(quad_abs_tol > 0.0)) throw Error(ErrorCode::InvalidSpec, "quad_abs_tol must be positive");
    if (!(quad_cutoff_T >= 0.0) || !std::isfinite(quad_cutoff_T))
        throw Error(ErrorCode::InvalidSpec, "quad_cutoff_T must be finite and non-negative");
}

const char* to_string(DispersionType t) {
    switch (t) {
        case DispersionType::I: return "I";
        case DispersionType::II: return "II";
        case DispersionType::III: return "III";
    }
    return "?";
}

DispersionType dispersion_type_from_string(const std::string& s) {
    if (s == "I" || s == "1") return DispersionType::I;
    if (s == "II" || s == "2") return DispersionType::II;
    if (s == "III" || s == "3") return DispersionType::III;
    throw Error(ErrorCode::UnsupportedType, "unknown excitation type '" + s + "'");
}

QuadratureResult integrate_real_line(const std::function<double(double)>& f, double decay, double abs_tol,
                                     double cutoff, int initial_panels_per_unit) {
    if (!(decay > 0.0)) throw Error(ErrorCode::QuadratureNotConverged, "integrand does not decay");
    QuadratureResult r;
    r.cutoff = cutoff > 0.0 ? cutoff : kTailExponent / decay;
    int panels = std::max(2, static_cast<int>(std::ceil(2.0 * r.cutoff * initial_panels_per_unit)));
    double prev = composite(f, r.cutoff, panels);
    for (int h = 0; h < kMaxHalvings; ++h) {
        panels *= 2;
        const double next = composite(f, r.cutoff, panels);
        r.change = std::abs(next - prev);
        r.value = next;
        r.panels = panels;
        if (!std::isfinite(next)) break;
        if (r.change < abs_tol) return r;
        prev = next;
    }
    throw Error(ErrorCode::QuadratureNotConverged, "panel halving changed the integral by " + std::to_string(r.change));
}

double dressed_kernel(double a, double tau, double gamma) {
    const double p = kPi - gamma;
    const double x = std::abs(tau);
    if (x < 1e-5) {
        // tanh(p t/2)/sinh(pi t/2) = (p/pi)(1 - (p^2/12 + pi^2/24) t^2 + ...)
        return std::cosh(a * tau) * (p / kPi) * (1.0 - (p * p / 12.0 + kPi * kPi / 24.0) * tau * tau);
    }
    if (x < 30.0) return std::cosh(a * tau) * std::tanh(0.5 * p * tau) / std::sinh(0.5 * kPi * tau);
    // Even in tau; exponentials combined before evaluation.
    const double aa = std::abs(a);
    return std::exp((aa - 0.5 * kPi) * x) * (1.0 + std::exp(-2.0 * aa * x)) / (1.0 - std::exp(-kPi * x)) *
           std::tanh(0.5 * p * x);
}

double density_total(double z, double gamma) {
    const double p = kPi - gamma;
    const double num = 2.0 * std::cosh(kPi * z / p) * std::sin(kPi * gamma / (2.0 * p));
    const double den = p * (std::cosh(2.0 * kPi * z / p) + std::cos(kPi * (kPi - 2.0 * gamma) / p));
    if (!(den > 0.0)) throw Error(ErrorCode::DenominatorSingular, "density denominator is not positive");
    return num / den;
}

double density_cdf(double z, double gamma) {
    const double a = kPi / (kPi - gamma);
    const double c = std::cos(a * (kPi / 2.0 - gamma));
    return 0.5 + std::atan(std::sinh(a * z) / c) / kPi;
}

double ground_energy_density(const ThermoParams& p, QuadratureResult* info) {
    p.validate();
    const double g = p.gamma;
    const double a = 0.5 * (kPi - 2.0 * g);
    const auto q = integrate_real_line([&](double t) { return dressed_kernel(a, t, g); }, 0.5 * kPi - std::abs(a),
                                       p.quad_abs_tol, p.quad_cutoff_T);
    if (info) *info = q;
    return -std::sin(g) * q.value + std::cos(g);
}

ExcitationConstraint excitation_constraint(double gamma) {
    ThermoParams{gamma}.validate();
    return {kPi / gamma - 1.0, 0.0};
}

double delta_fraction(int m, double gamma) {
    const double x = m * gamma / (2.0 * kPi);
    return x - std::floor(x);
}

double excitation_energy(DispersionType type, double alpha, int n, const ThermoParams& p, QuadratureResult* info) {
    p.validate();
    if (!std::isfinite(alpha)) throw Error(ErrorCode::InvalidSpec, "alpha must be finite");
    const double g = p.gamma;
    const double sg = std::sin(g);

    // Integrand: cos(tau alpha) * sum_i w_i cosh(a_i tau) * tanh/sinh.
    std::vector<std::pair<double, double>> terms;  // (weight, a)
    double prefactor = sg;
    double rational = 0.0;
    switch (type) {
        case DispersionType::I:
            terms = {{1.0, 0.5 * g}};
            rational = 2.0 * sg * sg / (std::cosh(2.0 * alpha) + std::cos(g));
            break;
        case DispersionType::II:
            terms = {{1.0, 0.5 * (kPi - 3.0 * g)}};
            rational = 4.0 * sg * sg / checked_denominator(alpha, g) -
                       2.0 * sg * std::sin(3.0 * g) / checked_denominator(alpha, 3.0 * g);
            break;
        case DispersionType::III: {
            if (n < 3) throw Error(ErrorCode::InvalidSpec, "type III requires n >= 3");
            const double d1 = delta_fraction(n - 1, g), d2 = delta_fraction(n + 1, g);
            // cosh(A t) cosh(B t) = [cosh((A+B) t) + cosh((A-B) t)] / 2
            terms = {{0.5, 0.5 * kPi * (1.0 - 2.0 * d2)}, {0.5, 0.5 * kPi * (1.0 - 2.0 * d1)}};
            prefactor = 2.0 * sg;
            rational = 2.0 * sg * std::sin((n - 1) * g) / checked_denominator(alpha, (n - 1) * g) -
                       2.0 * sg * std::sin((n + 1) * g) / checked_denominator(alpha, (n + 1) * g);
            break;
        }
    }
    double amax = 0.0;
    for (const auto& [w, a] : terms) amax = std::max(amax, std::abs(a));
    const auto q = integrate_real_line(
        [&](double t) {
            double s = 0.0;
            for (const auto& [w, a] : terms) s += w * dressed_kernel(a, t, g);
            return std::cos(t * alpha) * s;
        },
        0.5 * kPi - amax, p.quad_abs_tol, p.quad_cutoff_T, std::max(1, static_cast<int>(std::ceil(std::abs(alpha)))));
    if (info) *info = q;
    return prefactor * q.value + rational;
}

DispersionCurve dispersion_curve(DispersionType type, const std::vector<double>& alpha_grid, int n,
                                 const ThermoParams& p) {
    DispersionCurve c;
    c.type = type;
    c.n = type == DispersionType::III ? n : 0;
    c.gamma = p.gamma;
    c.alpha_grid = alpha_grid;
    c.energies.reserve(alpha_grid.size());
    for (double a : alpha_grid) c.energies.push_back(excitation_energy(type, a, n, p));
    return c;
}

std::vector<double> parse_alpha_grid(const std::string& text) {
    auto to_double = [&](const std::string& s) {
        std::size_t used = 0;
        double v = 0.0;
        try {
            v = std::stod(s, &used);
        } catch (const std::exception&) {
            used = 0;
        }
        if (used != s.size() || !std::isfinite(v)) throw Error(ErrorCode::InvalidSpec, "bad grid value '" + s + "'");
        return v;
    };
    std::vector<double> out;
    if (text.find(':') != std::string::npos) {
        std::vector<double> parts;
        std::stringstream ss(text);
        std::string tok;
        while (std::getline(ss, tok, ':')) parts.push_back(to_double(tok));
        if (parts.size() != 3 || !(parts[2] > 0.0) || parts[1] < parts[0])
            throw Error(ErrorCode::InvalidSpec, "grid must be start:stop:step with step > 0");
        const auto count = static_cast<long>(std::floor((parts[1] - parts[0]) / parts[2] + 1e-9)) + 1;
        if (count > 1000000) throw Error(ErrorCode::InvalidSpec, "grid too large");
        for (long i = 0; i < count; ++i) out.push_back(parts[0] + i * parts[2]);
        return out;
    }
    std::stringstream ss(text);
    std::string tok;
    while (std::getline(ss, tok, ',')) out.push_back(to_double(tok));
    if (out.empty()) throw Error(ErrorCode::InvalidSpec, "empty grid");
    return out;
}

}  // namespace axxz
