#pragma once

#include <cstdint>
#include <ostream>
#include <string>
#include <vector>

#include <json.hpp>

#include "qcorr/correlations.hpp"
#include "qcorr/optimizer.hpp"
#include "qcorr/states.hpp"

namespace qcorr::cli {

inline constexpr const char* kSchemaVersion = "1";
inline constexpr int kExitOk = 0;
inline constexpr int kExitVerificationFailed = 1;
inline constexpr int kExitInputError = 2;

/// Parses a JSON state document:
///   {"dims": [2, 2], "kind": "dense", "matrix": [[[re, im], ...], ...]}
///   {"dims": [2, 2], "kind": "pure", "amplitudes": [[re, im], ...]}
///   {"dims": [2, 2], "kind": "named", "family": "werner", "params": {"p": 0.5}}
/// Throws Error(ParseError) naming the line or the offending field.
StateSpec parse_state_document(const std::string& text);

/// Reads a state file ("-" for stdin) and parses it.
StateSpec load_state_file(const std::string& path);

/// x rounded to 12 significant digits; reports store this so the printed
/// text and the parsed value agree exactly.
double round12(double x);
std::string format12(double x);

nlohmann::json config_json(const OptimizerConfig& config);
nlohmann::json measurement_json(const ProjectiveMeasurement& m, const std::vector<double>& params);
nlohmann::json table_json(const ProbabilityTable& table);
nlohmann::json info_json(const DensityMatrix& rho);
nlohmann::json discord_json(const DensityMatrix& rho, std::size_t k,
                            const OptimalMeasurementResult& result, const OptimizerConfig& config);
nlohmann::json sequential_json(const SequentialReport& report);

/// Sweep CSV with header `param,I,D0,D1,Q,C`; one row per parameter value.
void write_sweep_csv(const std::string& family, double from, double to, double step,
                     const OptimizerConfig& config, std::ostream& out);

/// Default seed: QCORR_SEED when set and numeric, otherwise 0.
std::uint64_t default_seed();

/// Entry point shared by the executable and the tests. `args` excludes the
/// program name. Returns the process exit code.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace qcorr::cli
