#include "dicke/model_config.hpp"

#include <cmath>

namespace dicke {

int required_n_max(const ModelConfig& cfg) {
    const double beta = std::abs(cfg.beta());
    const double Jv = cfg.J.value();
    const int k = cfg.nearest_k();
    return cfg.initial_n + 4 * k + static_cast<int>(std::ceil(beta * beta * Jv * Jv + 6.0 * beta * Jv));
}

void enforce_cutoff(const ModelConfig& cfg) {
    if (!cfg.check_cutoff) return;
    if (cfg.omega <= 0.0) throw Error("omega must be positive");
    const int need = required_n_max(cfg);
    if (cfg.n_max < need)
        throw CutoffTooSmall("n_max = " + std::to_string(cfg.n_max) +
                                 " below the cutoff heuristic for these parameters",
                             need);
}

void require_resonance(const ModelConfig& cfg, int k) {
    if (k < 1) throw OffResonance("resonance index k must be a positive integer");
    const double b2 = cfg.beta() * cfg.beta();
    if (std::abs(b2 - k) > cfg.resonance_tol)
        throw OffResonance("(g/omega)^2 = " + std::to_string(b2) + " is not within tolerance of k = " +
                           std::to_string(k));
}

}  // namespace dicke
