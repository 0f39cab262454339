#pragma once
/// @file workbench.hpp
/// Orchestration: the spectrum pipeline, dataset persistence, verification
/// reports and CSV emission.

#include "axxz/bae.hpp"
#include "axxz/thermo.hpp"

#include <json.hpp>

#include <cstdint>
#include <optional>

namespace axxz {

inline constexpr int kSchemaVersion = 1;

struct Tolerances {
    double bae = 1e-8;
    double tw = 1e-8;
    double energy = 1e-8;
    double momentum = 1e-8;
    double conjugation = 1e-8;
    double w0 = 1e-6;
    double sum_rule = 1e-6;
    double operator_identity = 1e-10;
    double degeneracy = 1e-6;

    void validate() const;
    bool operator==(const Tolerances&) const = default;
};

struct JobConfig {
    JobConfig() = default;
    explicit JobConfig(const ChainSpec& s) : spec(s) {}

    ChainSpec spec;
    std::uint64_t seed = 20240601;
    Tolerances tol;
    std::string out_path;      ///< dataset target; empty keeps it in memory
    std::string dataset_path;  ///< verification input; empty rebuilds
    std::vector<std::string> checks;  ///< empty selects every check
    std::optional<std::string> timestamp;

    void validate() const;
};

struct Provenance {
    std::uint64_t seed = 0;
    cd c0, c1, u1, u2;
    double validation_residual = 0.0;
    int attempts = 0;
    Tolerances tol;
    std::optional<std::string> timestamp;
};

struct SpectrumDataset {
    int schema_version = kSchemaVersion;
    ChainSpec spec;
    std::vector<StateRecord> states;
    Provenance provenance;
    int failed_states = 0;
    bool from_cache = false;  ///< not serialized
};

/// Diagonalize, extract roots, build W, compute observables, classify and
/// pair. Per-state errors become flags; more than 1% failing states throws
/// CrossCheckFailed.
SpectrumDataset run_pipeline(const JobConfig& config);

/// run_pipeline plus persistence. When `out_path` already holds a dataset
/// for the same spec, seed and tolerances it is returned unchanged.
SpectrumDataset run_spectrum_job(const JobConfig& config);

nlohmann::json dataset_to_json(const SpectrumDataset& ds);
/// Throws SchemaMismatch for unknown versions or malformed content.
SpectrumDataset dataset_from_json(const nlohmann::json& j);
SpectrumDataset load_dataset(const std::string& path);
void save_dataset(const SpectrumDataset& ds, const std::string& path);

/// Writes via a sibling temporary file and rename. Throws Io.
void write_file_atomic(const std::string& path, const std::string& content);

struct CheckResult {
    std::string name;
    bool passed = false;
    double value = 0.0;  ///< worst observed residual
    double tolerance = 0.0;
    std::string detail;
};

struct VerificationReport {
    ChainSpec spec;
    std::vector<CheckResult> checks;

    bool all_passed() const;
    nlohmann::json to_json() const;
};

/// Names of every available check, in report order.
const std::vector<std::string>& check_names();

/// Identities evaluated on freshly built operators and a fresh pipeline:
/// ybe, commutativity, quasi_periodicity, t0_power, tw_operator, tw_scalar.
std::vector<CheckResult> operator_checks(const ChainSpec& spec, const Tolerances& tol, std::uint64_t seed,
                                         const std::vector<std::string>& selected);

/// Checks on stored records: conjugation, lambda_quasi_periodicity, bae,
/// w0_sum_rule, momentum_phase, momentum_quantization, energy, degeneracy.
std::vector<CheckResult> dataset_checks(const SpectrumDataset& ds, const Tolerances& tol,
                                        const std::vector<std::string>& selected);

VerificationReport run_verification(const JobConfig& config);

// CSV emission. Columns are documented in the README.
void write_dispersion_csv(const DispersionCurve& curve, const std::string& path);
DispersionCurve read_dispersion_csv(const std::string& path);
void write_density_csv(double gamma, const std::vector<double>& z_grid, const std::string& path);
/// Rows (z, density) from a density CSV.
std::vector<std::pair<double, double>> read_density_csv(const std::string& path);
/// One row per root; `state_id < 0` selects every state.
void write_roots_csv(const SpectrumDataset& ds, const std::string& path, int state_id = -1);
void write_solution_roots_csv(const BaeSolution& sol, const std::string& path);

nlohmann::json solution_to_json(const BaeSolution& sol, const ChainSpec& spec);

}  // namespace axxz
