#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "bresse/evolve.hpp"
#include "bresse/fitting.hpp"
#include "bresse/model.hpp"
#include "bresse/spectral.hpp"
#include "bresse/witness.hpp"

namespace bresse {

inline constexpr const char* kToolVersion = "0.1.0";

/// Provenance stamp carried by every output file.
struct RunManifest {
    std::string scenario_path;
    std::string subcommand;
    std::string out_dir;
    std::uint64_t seed = 0;
    std::string version = kToolVersion;
    std::uint64_t config_hash = 0;

    std::string comment_line() const;
};

std::uint64_t fnv1a(const std::string& data);

/// Hash of the canonical scenario text plus the run-defining knobs.
std::uint64_t manifest_hash(const ScenarioConfig& cfg, const std::string& subcommand,
                            std::uint64_t seed);

/// Full-precision float rendering (17 significant digits, '.' decimal).
std::string format_double(double value);

// CSV writers. Comma separator, LF endings, manifest comment on top.
void write_trace_csv(const std::string& path, const EnergyTrace& trace,
                     const RunManifest& manifest, const DecayFit* fit = nullptr);
void write_sweep_csv(const std::string& path, const std::vector<ResolventSample>& sweep,
                     const RunManifest& manifest);
void write_witness_csv(const std::string& path, const std::vector<WitnessSample>& samples,
                       const RunManifest& manifest);
void write_spectrum_csv(const std::string& path, const std::vector<Complex>& eigenvalues,
                        const RunManifest& manifest);

/// Coordinate-format text dump (row col value per line) of M, K, C and the
/// energy Gram G for external cross-checking.
void dump_operator_matrices(const DiscreteOperator& op, const std::string& dir,
                            const RunManifest& manifest);

// Plot scripts are emitted as gnuplot text rather than rendered images.
void write_trace_plot_script(const std::string& path, const std::string& trace_csv);
void write_sweep_plot_script(const std::string& path, const std::string& sweep_csv);

}  // namespace bresse
