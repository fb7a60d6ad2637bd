#pragma once

#include <optional>
#include <string>
#include <vector>

#include "dicke/analysis.hpp"
#include "dicke/model_config.hpp"
#include "dicke/propagate.hpp"

namespace dicke::cli {

struct ConfigError : Error {
    using Error::Error;
};

// Flat run description shared by simulate/compare; all frequencies in units
// of the mode frequency (omega = 1 internally).
struct RunConfig {
    ModelConfig model;
    double horizon_cycles = 50.0;
    double t_start_cycles = 0.0;
    int samples_per_cycle = 16;
    int initial_m2 = 0;
    int initial_n = 0;
    bool with_effective = false;
    bool jz_survival = false;
    std::string out = "dicke_run";
    std::string preset;
};

// Which effective model overlays an exact run.
enum class EffectiveKind { ResonantDSC, HalfIntegerAnyG, LMG, ClosedFormTwoLevel };

EffectiveKind choose_effective(const ModelConfig& model);
const char* effective_kind_name(EffectiveKind k);

std::vector<std::string> preset_names();
// Applies a named figure preset; throws ConfigError for unknown names.
void apply_preset(RunConfig& cfg, const std::string& name);

// key = value lines, # comments; unknown keys rejected.
void apply_config_file(RunConfig& cfg, const std::string& path);

HalfInteger parse_half_integer(const std::string& text);

// CSV with a header row, 17 significant digits.
void write_csv(const std::string& path, const std::vector<std::string>& header,
               const std::vector<std::vector<double>>& columns);

struct RunDiagnostics {
    std::string method;
    double final_step = 0.0;
    double convergence_delta = 0.0;
    double norm_drift = 0.0;
    double cutoff_tail_mass = 0.0;
};

void write_manifest(const std::string& data_path, const std::string& command,
                    const RunConfig& cfg, const std::string& effective_kind,
                    const RunDiagnostics& diag, double wall_time_s);
void write_manifest_simple(const std::string& data_path, const std::string& command,
                           const std::string& description, double wall_time_s,
                           const std::vector<std::string>& extra_outputs = {},
                           const RunDiagnostics* diag = nullptr);

// Population of the top four Fock rows, maximized over samples; reports how
// hard the trajectory presses against the cutoff.
double cutoff_tail_mass(const Trajectory& traj);
double norm_drift(const Trajectory& traj);

}  // namespace dicke::cli
