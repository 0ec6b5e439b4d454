#pragma once

// Shared scenario fixtures for the test suites: an all-ones beam of length
// pi under the four canonical damping arrangements, plus the undamped,
// viscous and certificate configurations.

#include "bresse/model.hpp"
#include "bresse/types.hpp"

namespace bresse::testing {

inline ScenarioConfig base_config(int n_elements) {
    ScenarioConfig cfg;
    cfg.params = {1.0, 1.0, 1.0, 1.0, 1.0, 1.0, kPi};
    cfg.bc = BoundaryCondition::FullDirichlet;
    cfg.run.n_elements = n_elements;
    const double L = cfg.params.length;
    cfg.damping.d1 = DampingProfile::zero(L);
    cfg.damping.d2 = DampingProfile::zero(L);
    cfg.damping.d3 = DampingProfile::zero(L);
    return cfg;
}

inline ScenarioConfig undamped_config(int n) { return base_config(n); }

inline ScenarioConfig global_kv_config(int n) {  // analytic regime
    ScenarioConfig cfg = base_config(n);
    const double L = cfg.params.length;
    cfg.damping.d1 = DampingProfile::global(1.0, L);
    cfg.damping.d2 = DampingProfile::global(1.0, L);
    cfg.damping.d3 = DampingProfile::global(1.0, L);
    return cfg;
}

inline ScenarioConfig smooth_local_config(int n) {  // exponential regime
    ScenarioConfig cfg = base_config(n);
    const double L = cfg.params.length;
    const auto ramp = DampingProfile::smoothstep(1.0, 0.25 * L, 0.75 * L, 0.05 * L, L);
    cfg.damping.d1 = ramp;
    cfg.damping.d2 = ramp;
    cfg.damping.d3 = ramp;
    return cfg;
}

inline ScenarioConfig nonsmooth_local_config(int n) {  // 1/t regime
    ScenarioConfig cfg = base_config(n);
    const double L = cfg.params.length;
    const auto window = DampingProfile::indicator(1.0, 0.30 * L, 0.70 * L, L);
    cfg.damping.d1 = window;
    cfg.damping.d2 = window;
    cfg.damping.d3 = window;
    return cfg;
}

inline ScenarioConfig shear_only_config(int n) {  // 1/sqrt(t) regime
    ScenarioConfig cfg = base_config(n);
    const double L = cfg.params.length;
    cfg.damping.d2 = DampingProfile::indicator(1.0, 0.30 * L, 0.70 * L, L);
    return cfg;
}

inline ScenarioConfig viscous_config(int n) {
    ScenarioConfig cfg = nonsmooth_local_config(n);
    cfg.damping.model = DampingModel::Viscous;
    return cfg;
}

inline ScenarioConfig witness_config(int n) {
    ScenarioConfig cfg = base_config(n);
    cfg.params.ell = 0.5;
    cfg.bc = BoundaryCondition::DirichletNeumannNeumann;
    const double L = cfg.params.length;
    cfg.damping.d2 = DampingProfile::global(1.0, L);
    cfg.damping.d3 = DampingProfile::global(1.0, L);
    return cfg;
}

}  // namespace bresse::testing
