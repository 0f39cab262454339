#include "axxz/workbench.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>
#include <unistd.h>

namespace axxz {

using nlohmann::json;

namespace {

json cjson(cd z) { return json::array({z.real(), z.imag()}); }

cd cparse(const json& j) {
    if (!j.is_array() || j.size() != 2) throw Error(ErrorCode::SchemaMismatch, "complex value must be [re, im]");
    return {j.at(0).get<double>(), j.at(1).get<double>()};
}

json cvec_json(const std::vector<cd>& v) {
    json a = json::array();
    for (const cd& z : v) a.push_back(cjson(z));
    return a;
}

std::vector<cd> cvec_parse(const json& j) {
    std::vector<cd> v;
    for (const auto& e : j) v.push_back(cparse(e));
    return v;
}

template <class T>
json opt_json(const std::optional<T>& v) {
    return v ? json(*v) : json(nullptr);
}

template <class T>
std::optional<T> opt_parse(const json& j) {
    if (j.is_null()) return std::nullopt;
    return j.get<T>();
}

json tolerances_json(const Tolerances& t) {
    return {{"bae", t.bae},
            {"tw", t.tw},
            {"energy", t.energy},
            {"momentum", t.momentum},
            {"conjugation", t.conjugation},
            {"w0", t.w0},
            {"sum_rule", t.sum_rule},
            {"operator_identity", t.operator_identity},
            {"degeneracy", t.degeneracy}};
}

Tolerances tolerances_parse(const json& j) {
    Tolerances t;
    t.bae = j.at("bae");
    t.tw = j.at("tw");
    t.energy = j.at("energy");
    t.momentum = j.at("momentum");
    t.conjugation = j.at("conjugation");
    t.w0 = j.at("w0");
    t.sum_rule = j.at("sum_rule");
    t.operator_identity = j.at("operator_identity");
    t.degeneracy = j.at("degeneracy");
    return t;
}

json state_json(const StateRecord& s) {
    const auto& c = s.classification;
    return {{"state_id", s.state_id},
            {"lambda0", cjson(s.lambda0)},
            {"z_roots", cvec_json(s.z_roots)},
            {"W0", s.W0},
            {"W0_raw", cjson(s.W0_raw)},
            {"w_roots", cvec_json(s.w_roots)},
            {"energy", s.energy},
            {"energy_operator", s.energy_operator},
            {"momentum_k", s.momentum_k},
            {"t0_phase", s.t0_phase},
            {"charge_Mq", cjson(s.charge_Mq)},
            {"classification",
             {{"kind", to_string(c.kind)},
              {"pair_order_n", opt_json(c.pair_order_n)},
              {"pair_center_alpha", opt_json(c.pair_center_alpha)},
              {"boundary_beta", opt_json(c.boundary_beta)},
              {"boundary_m", opt_json(c.boundary_m)},
              {"unclassified", c.unclassified}}},
            {"degenerate_partner", s.degenerate_partner},
            {"tw_residual", s.tw_residual},
            {"divisibility_residual", s.divisibility_residual},
            {"bae", {{"z_equations", s.bae.z_equations}, {"w_equations", s.bae.w_equations}, {"lambda0_equation", s.bae.lambda0_equation}, {"sum_rule", s.bae.sum_rule}}},
            {"flags", s.flags}};
}

StateRecord state_parse(const json& j) {
    StateRecord s;
    s.state_id = j.at("state_id");
    s.lambda0 = cparse(j.at("lambda0"));
    s.z_roots = cvec_parse(j.at("z_roots"));
    s.W0 = j.at("W0");
    s.W0_raw = cparse(j.at("W0_raw"));
    s.w_roots = cvec_parse(j.at("w_roots"));
    s.energy = j.at("energy");
    s.energy_operator = j.at("energy_operator");
    s.momentum_k = j.at("momentum_k");
    s.t0_phase = j.at("t0_phase");
    s.charge_Mq = cparse(j.at("charge_Mq"));
    const auto& c = j.at("classification");
    s.classification.kind = root_kind_from_string(c.at("kind"));
    s.classification.pair_order_n = opt_parse<int>(c.at("pair_order_n"));
    s.classification.pair_center_alpha = opt_parse<double>(c.at("pair_center_alpha"));
    s.classification.boundary_beta = opt_parse<double>(c.at("boundary_beta"));
    s.classification.boundary_m = opt_parse<double>(c.at("boundary_m"));
    s.classification.unclassified = c.at("unclassified");
    s.degenerate_partner = j.at("degenerate_partner");
    s.tw_residual = j.at("tw_residual");
    s.divisibility_residual = j.at("divisibility_residual");
    const auto& b = j.at("bae");
    s.bae.z_equations = b.at("z_equations").get<std::vector<double>>();
    s.bae.w_equations = b.at("w_equations").get<std::vector<double>>();
    s.bae.lambda0_equation = b.at("lambda0_equation");
    s.bae.sum_rule = b.at("sum_rule");
    s.flags = j.at("flags").get<std::vector<std::string>>();
    return s;
}

bool selected(const std::vector<std::string>& sel, const std::string& name) {
    return sel.empty() || std::find(sel.begin(), sel.end(), name) != sel.end();
}

CheckResult make_check(std::string name, double value, double tol, std::string detail = {}) {
    return {std::move(name), value < tol, value, tol, std::move(detail)};
}

std::string fmt(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

cd random_point(std::mt19937_64& rng) {
    std::uniform_real_distribution<double> re(-0.6, 0.6), im(-1.4, 1.4);
    return {re(rng), im(rng)};
}

double max_abs(const CMat& m) { return m.cwiseAbs().maxCoeff(); }

std::vector<cd> conjugate_roots(const std::vector<cd>& r) {
    std::vector<cd> out;
    for (const cd& z : r) out.push_back(canonical_branch(std::conj(z)));
    return out;
}

std::ifstream open_input(const std::string& path) {
    std::ifstream is(path);
    if (!is) throw Error(ErrorCode::Io, "cannot open '" + path + "'");
    return is;
}

std::vector<std::string> split_csv(const std::string& line) {
    std::vector<std::string> out;
    std::stringstream ss(line);
    std::string tok;
    while (std::getline(ss, tok, ',')) out.push_back(tok);
    return out;
}

}  // namespace

// ---------------------------------------------------------------------------

void Tolerances::validate() const {
    for (double t : {bae, tw, energy, momentum, conjugation, w0, sum_rule, operator_identity, degeneracy})
        if (!(t > 0.0) || !std::isfinite(t)) throw Error(ErrorCode::InvalidSpec, "tolerances must be positive");
}

void JobConfig::validate() const {
    spec.validate();
    tol.validate();
    for (const auto& c : checks)
        if (std::find(check_names().begin(), check_names().end(), c) == check_names().end())
            throw Error(ErrorCode::InvalidSpec, "unknown check '" + c + "'");
}

SpectrumDataset run_pipeline(const JobConfig& config) {
    config.validate();
    const ChainSpec& spec = config.spec;
    const auto fd = diagonalize_family(spec, config.seed);
    const auto count = static_cast<std::size_t>(fd.vectors.cols());

    std::vector<std::vector<cd>> samples(count);
    std::vector<bool> inconsistent(count, false);
    for (const cd& u : z_sample_nodes(spec)) {
        std::vector<int> bad;
        const auto values = eigenvalues_at(fd.vectors, build_transfer(u, spec).entries, &bad);
        for (std::size_t s = 0; s < count; ++s) samples[s].push_back(values[s]);
        for (int b : bad) inconsistent[static_cast<std::size_t>(b)] = true;
    }

    const auto ops = observable_operators(spec);
    SpectrumDataset ds;
    ds.spec = spec;
    ds.provenance = {config.seed, fd.c0, fd.c1, fd.u1, fd.u2, fd.max_validation_residual, fd.attempts, config.tol,
                     config.timestamp};
    for (std::size_t s = 0; s < count; ++s) {
        StateRecord r;
        r.state_id = static_cast<int>(s);
        bool failed = false;
        auto flag = [&](ErrorCode code, bool fatal) {
            r.flags.emplace_back(to_string(code));
            failed = failed || fatal;
        };
        if (inconsistent[s]) flag(ErrorCode::InconsistentRatio, true);
        try {
            const auto zr = extract_z_roots(samples[s], spec);
            r.lambda0 = zr.lambda0;
            r.z_roots = zr.z;
            if (zr.polish_failed) flag(ErrorCode::RootPolishDiverged, false);
            try {
                compute_observables(r, fd.vectors.col(static_cast<Eigen::Index>(s)), samples[s][0], spec, ops);
            } catch (const Error& e) {
                flag(e.code(), true);
            }
            const auto tw = build_w_function(r.lambda0, r.z_roots, spec, [&](cd u) { return zr.poly(u); });
            r.W0 = tw.W0;
            r.W0_raw = tw.W0_raw;
            r.w_roots = tw.w_roots;
            r.tw_residual = tw.tw_residual;
            r.divisibility_residual = tw.divisibility_residual;
            r.bae = tw.bae;
            r.classification = classify_roots(r.z_roots, r.w_roots, spec);
            if (r.classification.unclassified) flag(ErrorCode::UnclassifiedPattern, false);
        } catch (const Error& e) {
            flag(e.code(), true);
        }
        if (failed) ++ds.failed_states;
        ds.states.push_back(std::move(r));
    }
    assign_degenerate_partners(ds.states, config.tol.degeneracy);
    if (100 * static_cast<std::size_t>(ds.failed_states) > count) {
        std::string which;
        for (const auto& r : ds.states)
            if (!r.flags.empty() && which.size() < 200)
                which += " " + std::to_string(r.state_id) + ":" + r.flags.front();
        throw Error(ErrorCode::CrossCheckFailed,
                    std::to_string(ds.failed_states) + " of " + std::to_string(count) + " states failed;" + which);
    }
    return ds;
}

SpectrumDataset run_spectrum_job(const JobConfig& config) {
    config.validate();
    if (!config.out_path.empty() && std::filesystem::exists(config.out_path)) {
        try {
            SpectrumDataset cached = load_dataset(config.out_path);
            if (cached.spec.N == config.spec.N && cached.spec.gamma == config.spec.gamma &&
                cached.provenance.seed == config.seed && cached.provenance.tol == config.tol) {
                cached.from_cache = true;
                return cached;
            }
        } catch (const Error&) {
            // Unreadable or foreign file: rebuild and replace it.
        }
    }
    SpectrumDataset ds = run_pipeline(config);
    if (!config.out_path.empty()) save_dataset(ds, config.out_path);
    return ds;
}

json dataset_to_json(const SpectrumDataset& ds) {
    const auto& p = ds.provenance;
    json states = json::array();
    for (const auto& s : ds.states) states.push_back(state_json(s));
    return {{"schema_version", ds.schema_version},
            {"spec", {{"N", ds.spec.N}, {"gamma", ds.spec.gamma}}},
            {"provenance",
             {{"seed", p.seed},
              {"c0", cjson(p.c0)},
              {"c1", cjson(p.c1)},
              {"u1", cjson(p.u1)},
              {"u2", cjson(p.u2)},
              {"validation_residual", p.validation_residual},
              {"attempts", p.attempts},
              {"tolerances", tolerances_json(p.tol)},
              {"timestamp", opt_json(p.timestamp)}}},
            {"failed_states", ds.failed_states},
            {"states", std::move(states)}};
}

SpectrumDataset dataset_from_json(const json& j) {
    try {
        const int version = j.at("schema_version");
        if (version != kSchemaVersion)
            throw Error(ErrorCode::SchemaMismatch, "unsupported schema_version " + std::to_string(version));
        SpectrumDataset ds;
        ds.schema_version = version;
        ds.spec = ChainSpec(j.at("spec").at("N").get<int>(), j.at("spec").at("gamma").get<double>());
        const auto& p = j.at("provenance");
        ds.provenance.seed = p.at("seed");
        ds.provenance.c0 = cparse(p.at("c0"));
        ds.provenance.c1 = cparse(p.at("c1"));
        ds.provenance.u1 = cparse(p.at("u1"));
        ds.provenance.u2 = cparse(p.at("u2"));
        ds.provenance.validation_residual = p.at("validation_residual");
        ds.provenance.attempts = p.at("attempts");
        ds.provenance.tol = tolerances_parse(p.at("tolerances"));
        ds.provenance.timestamp = opt_parse<std::string>(p.at("timestamp"));
        ds.failed_states = j.at("failed_states");
        for (const auto& s : j.at("states")) ds.states.push_back(state_parse(s));
        if (ds.states.size() != ds.spec.dim())
            throw Error(ErrorCode::SchemaMismatch, "expected " + std::to_string(ds.spec.dim()) + " states");
        return ds;
    } catch (const json::exception& e) {
        throw Error(ErrorCode::SchemaMismatch, e.what());
    }
}

SpectrumDataset load_dataset(const std::string& path) {
    auto is = open_input(path);
    json j;
    try {
        is >> j;
    } catch (const json::exception& e) {
        throw Error(ErrorCode::SchemaMismatch, std::string("not valid JSON: ") + e.what());
    }
    return dataset_from_json(j);
}

void save_dataset(const SpectrumDataset& ds, const std::string& path) {
    write_file_atomic(path, dataset_to_json(ds).dump(1) + "\n");
}

void write_file_atomic(const std::string& path, const std::string& content) {
    namespace fs = std::filesystem;
    const fs::path target(path);
    const fs::path tmp = target.string() + ".tmp." + std::to_string(::getpid());
    {
        std::ofstream os(tmp, std::ios::binary | std::ios::trunc);
        if (!os) throw Error(ErrorCode::Io, "cannot open '" + tmp.string() + "' for writing");
        os << content;
        os.flush();
        if (!os) throw Error(ErrorCode::Io, "write to '" + tmp.string() + "' failed");
    }
    std::error_code ec;
    fs::rename(tmp, target, ec);
    if (ec) {
        fs::remove(tmp, ec);
        throw Error(ErrorCode::Io, "cannot move dataset into '" + path + "'");
    }
}

// ---------------------------------------------------------------------------

bool VerificationReport::all_passed() const {
    return std::all_of(checks.begin(), checks.end(), [](const CheckResult& c) { return c.passed; });
}

json VerificationReport::to_json() const {
    json arr = json::array();
    for (const auto& c : checks)
        arr.push_back(
            {{"name", c.name}, {"passed", c.passed}, {"value", c.value}, {"tolerance", c.tolerance}, {"detail", c.detail}});
    return {{"schema_version", kSchemaVersion},
            {"spec", {{"N", spec.N}, {"gamma", spec.gamma}}},
            {"all_passed", all_passed()},
            {"checks", std::move(arr)}};
}

const std::vector<std::string>& check_names() {
    static const std::vector<std::string> names{
        "ybe",         "commutativity",  "quasi_periodicity", "t0_power",       "tw_operator",
        "tw_scalar",   "conjugation",    "lambda_quasi_periodicity",     "bae",               "w0_sum_rule",    "momentum_phase",
        "momentum_quantization",         "energy",            "degeneracy"};
    return names;
}

std::vector<CheckResult> operator_checks(const ChainSpec& spec, const Tolerances& tol, std::uint64_t seed,
                                         const std::vector<std::string>& sel) {
    std::mt19937_64 rng(seed);
    std::vector<CheckResult> out;
    const double op_tol = tol.operator_identity;

    if (selected(sel, "ybe")) {
        // R12(u-v) R13(u) R23(v) = R23(v) R13(u) R12(u-v) on three spins.
        const Eigen::Matrix2cd I2 = Eigen::Matrix2cd::Identity();
        Eigen::Matrix<cd, 8, 8> P23 = Eigen::Matrix<cd, 8, 8>::Zero();
        for (int b = 0; b < 8; ++b) P23((b & 4) | ((b & 1) << 1) | ((b & 2) >> 1), b) = 1.0;
        auto r12 = [&](cd u) {
            const Eigen::Matrix4cd r = build_r_matrix(u, spec);
            Eigen::Matrix<cd, 8, 8> m;
            for (int i = 0; i < 4; ++i)
                for (int j = 0; j < 4; ++j) m.block<2, 2>(2 * i, 2 * j) = r(i, j) * I2;
            return m;
        };
        auto r23 = [&](cd u) {
            Eigen::Matrix<cd, 8, 8> m = Eigen::Matrix<cd, 8, 8>::Zero();
            m.block<4, 4>(0, 0) = m.block<4, 4>(4, 4) = build_r_matrix(u, spec);
            return m;
        };
        double worst = 0.0;
        for (int k = 0; k < 3; ++k) {
            const cd u = random_point(rng), v = random_point(rng);
            const Eigen::Matrix<cd, 8, 8> r13 = P23 * r12(u) * P23;
            const Eigen::Matrix<cd, 8, 8> lhs = r12(u - v) * r13 * r23(v);
            const Eigen::Matrix<cd, 8, 8> rhs = r23(v) * r13 * r12(u - v);
            worst = std::max(worst, (lhs - rhs).cwiseAbs().maxCoeff() / lhs.cwiseAbs().maxCoeff());
        }
        out.push_back(make_check("ybe", worst, op_tol));
    }

    if (selected(sel, "commutativity") || selected(sel, "quasi_periodicity")) {
        double comm = 0.0, quasi = 0.0;
        const double sign = (spec.N - 1) % 2 == 0 ? 1.0 : -1.0;
        for (int k = 0; k < 2; ++k) {
            const cd u = random_point(rng), v = random_point(rng);
            const CMat tu = build_transfer(u, spec).entries;
            const CMat tv = build_transfer(v, spec).entries;
            comm = std::max(comm, commutator_norm(tu, tv) / (max_abs(tu) * max_abs(tv)));
            const CMat shifted = build_transfer(u + kI * kPi, spec).entries;
            quasi = std::max(quasi, max_abs(shifted - sign * tu) / max_abs(tu));
        }
        if (selected(sel, "commutativity")) out.push_back(make_check("commutativity", comm, op_tol));
        if (selected(sel, "quasi_periodicity")) out.push_back(make_check("quasi_periodicity", quasi, op_tol));
    }

    if (selected(sel, "t0_power")) {
        const bool ok = transfer_at_zero(spec).power(2 * spec.N).is_identity();
        out.push_back({"t0_power", ok, ok ? 0.0 : 1.0, 0.5, "exact permutation arithmetic"});
    }

    if (selected(sel, "tw_operator")) {
        if (spec.N > 8) {
            out.push_back({"tw_operator", true, 0.0, op_tol, "skipped: operator form limited to N <= 8"});
        } else {
            double worst = 0.0;
            for (int k = 0; k < 3; ++k) {
                const auto r = operator_tw_check(spec, random_point(rng), random_point(rng));
                worst = std::max({worst, r.interpolation_residual, r.commutator});
            }
            out.push_back(make_check("tw_operator", worst, op_tol));
        }
    }

    if (selected(sel, "tw_scalar")) {
        // Fresh spectrum, random points per state.
        JobConfig job;
        job.spec = spec;
        job.seed = seed;
        job.tol = tol;
        const SpectrumDataset fresh = run_pipeline(job);
        double worst = 0.0;
        int at = -1;
        for (const auto& s : fresh.states) {
            double r = s.tw_residual;
            for (int k = 0; k < 2; ++k)
                r = std::max(r, scalar_tw_check(random_point(rng), s.lambda0, s.z_roots, s.W0, s.w_roots, spec));
            if (r > worst) {
                worst = r;
                at = s.state_id;
            }
        }
        auto c = make_check("tw_scalar", worst, tol.tw);
        c.detail = "worst state " + std::to_string(at);
        out.push_back(c);
    }
    return out;
}

std::vector<CheckResult> dataset_checks(const SpectrumDataset& ds, const Tolerances& tol,
                                        const std::vector<std::string>& sel) {
    const ChainSpec& spec = ds.spec;
    const int n = spec.N;
    std::vector<CheckResult> out;
    auto worst_over = [&](auto&& f) {
        double w = 0.0;
        int at = -1;
        for (const auto& s : ds.states) {
            const double v = f(s);
            if (!(v <= w)) {
                w = v;
                at = s.state_id;
            }
        }
        return std::pair{w, at};
    };
    auto state_detail = [](int at) { return at >= 0 ? "worst state " + std::to_string(at) : std::string(); };

    if (selected(sel, "conjugation")) {
        const auto [w, at] = worst_over([&](const StateRecord& s) {
            return std::max(multiset_distance(s.z_roots, conjugate_roots(s.z_roots)),
                            multiset_distance(s.w_roots, conjugate_roots(s.w_roots)));
        });
        out.push_back(make_check("conjugation", w, tol.conjugation, state_detail(at)));
    }
    if (selected(sel, "lambda_quasi_periodicity")) {
        const double sign = (n - 1) % 2 == 0 ? 1.0 : -1.0;
        const std::vector<cd> probes{{0.27, 0.33}, {-0.41, 1.07}};
        const auto [w, at] = worst_over([&](const StateRecord& s) {
            double r = 0.0;
            for (const cd& u : probes) {
                const cd l = lambda_factorized(u, s.lambda0, s.z_roots, spec);
                const cd ls = lambda_factorized(u + kI * kPi, s.lambda0, s.z_roots, spec);
                r = std::max(r, std::abs(ls - sign * l) / std::max(std::abs(l), 1.0));
            }
            return r;
        });
        out.push_back(make_check("lambda_quasi_periodicity", w, 1e-9, state_detail(at)));
    }
    if (selected(sel, "bae")) {
        const auto [w, at] = worst_over([&](const StateRecord& s) {
            return bae_residuals(s.lambda0, s.z_roots, s.W0, s.w_roots, spec).max();
        });
        out.push_back(make_check("bae", w, tol.bae, state_detail(at)));
    }
    if (selected(sel, "w0_sum_rule")) {
        const auto [w, at] = worst_over([&](const StateRecord& s) {
            cd sum = 0.0;
            for (const cd& x : s.w_roots) sum += x;
            return std::max({std::abs(s.W0_raw - double(s.W0)), std::abs(mod_i_pi(sum)),
                             bae_residuals(s.lambda0, s.z_roots, s.W0, s.w_roots, spec).sum_rule});
        });
        out.push_back(make_check("w0_sum_rule", w, std::max(tol.w0, tol.sum_rule), state_detail(at)));
    }
    if (selected(sel, "momentum_phase")) {
        const auto [w, at] = worst_over([&](const StateRecord& s) {
            return std::abs(std::exp(2.0 * kI * s.momentum_k) - std::exp(-2.0 * kI * s.t0_phase));
        });
        out.push_back(make_check("momentum_phase", w, tol.momentum, state_detail(at)));
    }
    if (selected(sel, "momentum_quantization")) {
        const auto [w, at] = worst_over([&](const StateRecord& s) {
            const double l = std::round(s.momentum_k * n / kPi);
            return std::abs(s.momentum_k - kPi * l / n);
        });
        out.push_back(make_check("momentum_quantization", w, 2e-8 * n, state_detail(at)));
    }
    if (selected(sel, "energy")) {
        const RVec spectrum = hamiltonian_spectrum(spec);
        const auto [w, at] = worst_over([&](const StateRecord& s) {
            const double nearest = (spectrum.array() - s.energy).abs().minCoeff();
            return std::max(nearest, std::abs(s.energy - s.energy_operator));
        });
        out.push_back(make_check("energy", w, tol.energy, state_detail(at)));
    }
    if (selected(sel, "degeneracy")) {
        int unpaired = 0;
        const auto [w, at] = worst_over([&](const StateRecord& s) {
            const int p = s.degenerate_partner;
            if (p < 0 || p >= static_cast<int>(ds.states.size()) ||
                ds.states[static_cast<std::size_t>(p)].degenerate_partner != s.state_id) {
                ++unpaired;
                return std::numeric_limits<double>::infinity();
            }
            const auto& q = ds.states[static_cast<std::size_t>(p)];
            return std::max(std::abs(s.energy - q.energy), std::abs(s.lambda0 + q.lambda0) / std::abs(s.lambda0));
        });
        out.push_back(make_check("degeneracy", w, tol.degeneracy,
                                 unpaired ? std::to_string(unpaired) + " unpaired states" : state_detail(at)));
    }
    return out;
}

VerificationReport run_verification(const JobConfig& config) {
    config.validate();
    VerificationReport report;
    SpectrumDataset ds;
    if (!config.dataset_path.empty()) {
        ds = load_dataset(config.dataset_path);
        if (ds.spec.N != config.spec.N || ds.spec.gamma != config.spec.gamma)
            throw Error(ErrorCode::SchemaMismatch, "dataset spec differs from the requested one");
    } else {
        ds = run_pipeline(config);
    }
    report.spec = ds.spec;
    report.checks = operator_checks(ds.spec, config.tol, config.seed, config.checks);
    auto more = dataset_checks(ds, config.tol, config.checks);
    report.checks.insert(report.checks.end(), more.begin(), more.end());
    // Report order follows check_names().
    std::stable_sort(report.checks.begin(), report.checks.end(), [](const CheckResult& a, const CheckResult& b) {
        const auto& names = check_names();
        return std::find(names.begin(), names.end(), a.name) < std::find(names.begin(), names.end(), b.name);
    });
    return report;
}

// ---------------------------------------------------------------------------

void write_dispersion_csv(const DispersionCurve& curve, const std::string& path) {
    std::ostringstream os;
    os << "alpha,energy,type,n,gamma\n";
    for (std::size_t i = 0; i < curve.alpha_grid.size(); ++i)
        os << fmt(curve.alpha_grid[i]) << ',' << fmt(curve.energies[i]) << ',' << to_string(curve.type) << ','
           << curve.n << ',' << fmt(curve.gamma) << '\n';
    write_file_atomic(path, os.str());
}

DispersionCurve read_dispersion_csv(const std::string& path) {
    auto is = open_input(path);
    std::string line;
    if (!std::getline(is, line) || line != "alpha,energy,type,n,gamma")
        throw Error(ErrorCode::SchemaMismatch, "unexpected dispersion CSV header");
    DispersionCurve c;
    bool first = true;
    while (std::getline(is, line)) {
        if (line.empty()) continue;
        const auto f = split_csv(line);
        if (f.size() != 5) throw Error(ErrorCode::SchemaMismatch, "dispersion row needs 5 fields");
        c.alpha_grid.push_back(std::stod(f[0]));
        c.energies.push_back(std::stod(f[1]));
        if (first) {
            c.type = dispersion_type_from_string(f[2]);
            c.n = std::stoi(f[3]);
            c.gamma = std::stod(f[4]);
            first = false;
        }
    }
    return c;
}

void write_density_csv(double gamma, const std::vector<double>& z_grid, const std::string& path) {
    std::ostringstream os;
    os << "z,density,gamma\n";
    for (double z : z_grid) os << fmt(z) << ',' << fmt(density_total(z, gamma)) << ',' << fmt(gamma) << '\n';
    write_file_atomic(path, os.str());
}

std::vector<std::pair<double, double>> read_density_csv(const std::string& path) {
    auto is = open_input(path);
    std::string line;
    if (!std::getline(is, line) || line != "z,density,gamma")
        throw Error(ErrorCode::SchemaMismatch, "unexpected density CSV header");
    std::vector<std::pair<double, double>> rows;
    while (std::getline(is, line)) {
        if (line.empty()) continue;
        const auto f = split_csv(line);
        if (f.size() != 3) throw Error(ErrorCode::SchemaMismatch, "density row needs 3 fields");
        rows.emplace_back(std::stod(f[0]), std::stod(f[1]));
    }
    return rows;
}

void write_roots_csv(const SpectrumDataset& ds, const std::string& path, int state_id) {
    std::ostringstream os;
    os << "state_id,set,index,re,im,energy,kind\n";
    for (const auto& s : ds.states) {
        if (state_id >= 0 && s.state_id != state_id) continue;
        auto rows = [&](const char* set, const std::vector<cd>& roots) {
            for (std::size_t i = 0; i < roots.size(); ++i)
                os << s.state_id << ',' << set << ',' << i << ',' << fmt(roots[i].real()) << ','
                   << fmt(roots[i].imag()) << ',' << fmt(s.energy) << ',' << to_string(s.classification.kind) << '\n';
        };
        rows("z", s.z_roots);
        rows("w", s.w_roots);
    }
    write_file_atomic(path, os.str());
}

void write_solution_roots_csv(const BaeSolution& sol, const std::string& path) {
    std::ostringstream os;
    os << "set,index,re,im\n";
    auto rows = [&](const char* set, const std::vector<cd>& roots) {
        for (std::size_t i = 0; i < roots.size(); ++i)
            os << set << ',' << i << ',' << fmt(roots[i].real()) << ',' << fmt(roots[i].imag()) << '\n';
    };
    rows("z", sol.z_roots);
    rows("w", sol.w_roots);
    write_file_atomic(path, os.str());
}

json solution_to_json(const BaeSolution& sol, const ChainSpec& spec) {
    double imag = 0.0;
    const double e = energy_from_roots(sol.z_roots, spec, &imag);
    const auto cls = classify_roots(sol.z_roots, sol.w_roots, spec);
    return {{"spec", {{"N", spec.N}, {"gamma", spec.gamma}}},
            {"z_roots", cvec_json(sol.z_roots)},
            {"w_roots", cvec_json(sol.w_roots)},
            {"lambda0", cjson(sol.lambda0)},
            {"W0", sol.W0},
            {"residual_norm", sol.residual_norm},
            {"iterations", sol.iterations},
            {"converged", sol.converged},
            {"seed_descriptor", sol.seed_descriptor},
            {"route", sol.route},
            {"energy", e},
            {"momentum_k", fold_momentum(momentum_from_roots(sol.z_roots, spec))},
            {"classification", to_string(cls.kind)},
            {"pair_order_n", opt_json(cls.pair_order_n)},
            {"boundary_m", opt_json(cls.boundary_m)},
            {"boundary_beta", opt_json(cls.boundary_beta)}};
}

}  // namespace axxz
