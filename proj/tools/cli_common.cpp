#include "cli_common.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "dicke/version.hpp"

namespace dicke::cli {

EffectiveKind choose_effective(const ModelConfig& model) {
    if (!model.J.is_integer()) return EffectiveKind::HalfIntegerAnyG;
    const int k = model.nearest_k();
    if (k == 0) return EffectiveKind::LMG;
    const double b2 = model.beta() * model.beta();
    if (std::abs(b2 - k) <= model.resonance_tol) return EffectiveKind::ResonantDSC;
    return EffectiveKind::ClosedFormTwoLevel;
}

const char* effective_kind_name(EffectiveKind k) {
    switch (k) {
        case EffectiveKind::ResonantDSC: return "resonant_dsc";
        case EffectiveKind::HalfIntegerAnyG: return "half_integer";
        case EffectiveKind::LMG: return "lmg";
        case EffectiveKind::ClosedFormTwoLevel: return "closed_form_two_level";
    }
    return "?";
}

namespace {

struct Preset {
    const char* name;
    void (*apply)(RunConfig&);
    const char* note;
};

void set_model(RunConfig& c, int J2, double g, double omega0, int n_max) {
    c.model.J = HalfInteger::from_twice(J2);
    c.model.g = g;
    c.model.omega0 = omega0;
    c.model.n_max = n_max;
}

const Preset kPresets[] = {
    {"fig2a",
     [](RunConfig& c) {
         set_model(c, 2, std::sqrt(5.0), 0.1, 60);
         c.horizon_cycles = 25;
         c.samples_per_cycle = 32;
         c.with_effective = true;
     },
     "two atoms at the k = 5 resonance: complete depopulation"},
    {"fig2b",
     [](RunConfig& c) {
         set_model(c, 8, 1.0, 0.1, 120);
         c.horizon_cycles = 40;
         c.with_effective = true;
     },
     "eight atoms, k = 1, omega0 = 0.1: qualitative secular agreement"},
    {"fig2c",
     [](RunConfig& c) {
         set_model(c, 8, 1.0, 0.01, 80);
         c.horizon_cycles = 800;
         c.with_effective = true;
     },
     "eight atoms, k = 1, omega0 = 0.01: quantitative secular agreement"},
    {"fig3a",
     [](RunConfig& c) {
         set_model(c, 4, std::sqrt(3.0) + 0.03, 0.1, 96);
         c.horizon_cycles = 40;
         c.with_effective = true;
     },
     "four atoms slightly detuned from k = 3"},
    {"fig3b",
     [](RunConfig& c) {
         set_model(c, 4, std::sqrt(3.0) + 0.07, 0.1, 96);
         c.horizon_cycles = 30;
         c.with_effective = true;
     },
     "four atoms further detuned from k = 3"},
    {"fig4a",
     [](RunConfig& c) {
         set_model(c, 2, 1.2, 0.01, 40);
         c.horizon_cycles = 800;
         c.with_effective = true;
     },
     "off-resonant suppression over 800 cycles (also run with --J 2)"},
    {"fig4b",
     [](RunConfig& c) {
         set_model(c, 2, 1.2, 0.01, 40);
         c.t_start_cycles = 120;
         c.horizon_cycles = 20;
         c.samples_per_cycle = 64;
         c.jz_survival = true;
     },
     "Jz-basis survival window, cycles 120-140 (rerun with --omega0 0)"},
    {"fig5a",
     [](RunConfig& c) {
         set_model(c, 8, 0.05, 0.01, 12);
         c.horizon_cycles = 200;
         c.with_effective = true;
     },
     "photon-number regime, J = 4: photon cdf panel"},
    {"fig5b",
     [](RunConfig& c) {
         set_model(c, 40, std::sqrt(0.01 / 20.0), 0.01, 12);
         c.horizon_cycles = 200;
         c.with_effective = true;
     },
     "photon-number regime, J = 20: photon cdf panel"},
    {"fig5c",
     [](RunConfig& c) {
         set_model(c, 8, 0.05, 0.01, 12);
         c.horizon_cycles = 200;
         c.with_effective = true;
     },
     "photon-number regime, J = 4: survival panel"},
    {"fig5d",
     [](RunConfig& c) {
         set_model(c, 40, std::sqrt(0.01 / 20.0), 0.01, 12);
         c.horizon_cycles = 200;
         c.with_effective = true;
     },
     "photon-number regime, J = 20: survival panel"},
};

}  // namespace

std::vector<std::string> preset_names() {
    std::vector<std::string> names;
    for (const auto& p : kPresets) names.push_back(p.name);
    return names;
}

void apply_preset(RunConfig& cfg, const std::string& name) {
    for (const auto& p : kPresets) {
        if (name == p.name) {
            p.apply(cfg);
            cfg.preset = name;
            return;
        }
    }
    throw ConfigError("unknown preset '" + name + "'");
}

HalfInteger parse_half_integer(const std::string& text) {
    try {
        auto slash = text.find('/');
        if (slash != std::string::npos) {
            int num = std::stoi(text.substr(0, slash));
            int den = std::stoi(text.substr(slash + 1));
            if (den != 2) throw ConfigError("half-integers use denominator 2: '" + text + "'");
            return HalfInteger::from_twice(num);
        }
        size_t used = 0;
        double v = std::stod(text, &used);
        if (used != text.size()) throw ConfigError("cannot parse '" + text + "'");
        double twice = 2.0 * v;
        if (std::abs(twice - std::round(twice)) > 1e-9)
            throw ConfigError("'" + text + "' is not integer or half-integer");
        return HalfInteger::from_twice(static_cast<int>(std::lround(twice)));
    } catch (const std::invalid_argument&) {
        throw ConfigError("cannot parse '" + text + "' as a spin quantum number");
    }
}

namespace {

std::string trim(const std::string& s) {
    auto b = s.find_first_not_of(" \t\r");
    auto e = s.find_last_not_of(" \t\r");
    if (b == std::string::npos) return "";
    return s.substr(b, e - b + 1);
}

bool parse_bool(const std::string& v) {
    if (v == "1" || v == "true" || v == "yes" || v == "on") return true;
    if (v == "0" || v == "false" || v == "no" || v == "off") return false;
    throw ConfigError("expected a boolean, got '" + v + "'");
}

}  // namespace

void apply_config_file(RunConfig& cfg, const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file '" + path + "'");
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        auto hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        line = trim(line);
        if (line.empty()) continue;
        auto eq = line.find('=');
        if (eq == std::string::npos)
            throw ConfigError(path + ":" + std::to_string(lineno) + ": expected key = value");
        std::string key = trim(line.substr(0, eq));
        std::string value = trim(line.substr(eq + 1));
        try {
            if (key == "preset") apply_preset(cfg, value);
            else if (key == "J") cfg.model.J = parse_half_integer(value);
            else if (key == "omega0") cfg.model.omega0 = std::stod(value);
            else if (key == "g") cfg.model.g = std::stod(value);
            else if (key == "g2") cfg.model.g = std::sqrt(std::stod(value));
            else if (key == "n_max") cfg.model.n_max = std::stoi(value);
            else if (key == "horizon_cycles") cfg.horizon_cycles = std::stod(value);
            else if (key == "t_start_cycles") cfg.t_start_cycles = std::stod(value);
            else if (key == "samples_per_cycle") cfg.samples_per_cycle = std::stoi(value);
            else if (key == "initial_m") cfg.initial_m2 = parse_half_integer(value).twice();
            else if (key == "initial_n") cfg.initial_n = std::stoi(value);
            else if (key == "effective") cfg.with_effective = parse_bool(value);
            else if (key == "jz_survival") cfg.jz_survival = parse_bool(value);
            else if (key == "out") cfg.out = value;
            else throw ConfigError("unknown key '" + key + "'");
        } catch (const std::invalid_argument&) {
            throw ConfigError(path + ":" + std::to_string(lineno) + ": bad value for " + key);
        }
    }
}

void write_csv(const std::string& path, const std::vector<std::string>& header,
               const std::vector<std::vector<double>>& columns) {
    std::filesystem::path p(path);
    if (p.has_parent_path()) std::filesystem::create_directories(p.parent_path());
    std::ofstream out(path);
    if (!out) throw Error("cannot write '" + path + "'");
    for (size_t c = 0; c < header.size(); ++c) out << (c ? "," : "") << header[c];
    out << "\n";
    const size_t rows = columns.empty() ? 0 : columns.front().size();
    char buf[40];
    for (size_t r = 0; r < rows; ++r) {
        for (size_t c = 0; c < columns.size(); ++c) {
            std::snprintf(buf, sizeof(buf), "%.17g", columns[c][r]);
            out << (c ? "," : "") << buf;
        }
        out << "\n";
    }
}

namespace {

nlohmann::json config_json(const RunConfig& cfg) {
    nlohmann::json j;
    j["J"] = cfg.model.J.str();
    j["J2"] = cfg.model.J.twice();
    j["omega"] = cfg.model.omega;
    j["omega0"] = cfg.model.omega0;
    j["g"] = cfg.model.g;
    j["n_max"] = cfg.model.n_max;
    j["horizon_cycles"] = cfg.horizon_cycles;
    j["t_start_cycles"] = cfg.t_start_cycles;
    j["samples_per_cycle"] = cfg.samples_per_cycle;
    j["initial_m2"] = cfg.initial_m2;
    j["initial_n"] = cfg.initial_n;
    j["effective"] = cfg.with_effective;
    j["jz_survival"] = cfg.jz_survival;
    j["preset"] = cfg.preset;
    return j;
}

void dump_manifest(const std::string& data_path, nlohmann::json j) {
    std::ofstream out(data_path + ".manifest.json");
    if (!out) throw Error("cannot write manifest for '" + data_path + "'");
    out << j.dump(2) << "\n";
}

}  // namespace

void write_manifest(const std::string& data_path, const std::string& command,
                    const RunConfig& cfg, const std::string& effective_kind,
                    const RunDiagnostics& diag, double wall_time_s) {
    nlohmann::json j;
    j["tool"] = "dicke";
    j["version"] = kVersion;
    j["command"] = command;
    j["config"] = config_json(cfg);
    j["effective_model"] = effective_kind;
    j["outputs"] = {data_path};
    j["wall_time_s"] = wall_time_s;
    j["convergence"] = {{"method", diag.method},
                        {"final_step", diag.final_step},
                        {"convergence_delta", diag.convergence_delta},
                        {"norm_drift", diag.norm_drift},
                        {"cutoff_tail_mass", diag.cutoff_tail_mass}};
    dump_manifest(data_path, std::move(j));
}

void write_manifest_simple(const std::string& data_path, const std::string& command,
                           const std::string& description, double wall_time_s,
                           const std::vector<std::string>& extra_outputs,
                           const RunDiagnostics* diag) {
    nlohmann::json j;
    j["tool"] = "dicke";
    j["version"] = kVersion;
    j["command"] = command;
    j["description"] = description;
    j["outputs"] = nlohmann::json::array({data_path});
    for (const auto& o : extra_outputs) j["outputs"].push_back(o);
    j["wall_time_s"] = wall_time_s;
    if (diag)
        j["convergence"] = {{"method", diag->method},
                            {"norm_drift", diag->norm_drift},
                            {"cutoff_tail_mass", diag->cutoff_tail_mass}};
    dump_manifest(data_path, std::move(j));
}

double cutoff_tail_mass(const Trajectory& traj) {
    double worst = 0.0;
    for (const auto& s : traj.states) {
        const SpinBosonBasis& b = s.basis;
        const int lo = std::max(0, b.n_max - 3);
        double mass = 0.0;
        for (int level = 0; level < b.spin_dim(); ++level)
            for (int n = lo; n <= b.n_max; ++n) mass += std::norm(s.amps(level * b.fock_dim() + n));
        worst = std::max(worst, mass);
    }
    return worst;
}

double norm_drift(const Trajectory& traj) {
    double worst = 0.0;
    for (const auto& s : traj.states) worst = std::max(worst, std::abs(s.norm() - 1.0));
    return worst;
}

}  // namespace dicke::cli
