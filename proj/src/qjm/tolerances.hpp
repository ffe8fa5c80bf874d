#pragma once

namespace qjm {

// Global numerical tolerances. Defaults suit double-precision dense algebra
// at dimensions up to ~64. Each field can be overridden at startup through
// the environment (QJM_TAU_NORM, QJM_TAU_HERM, QJM_TAU_NUM, QJM_TAU_DEG,
// QJM_TAU_SAT, QJM_TAU_P, QJM_TAU_RANK) or programmatically via tol().
struct Tolerances {
    double norm = 1e-10;  // state normalization
    double herm = 1e-10;  // Hermiticity residual
    double num = 1e-9;    // generic numerical identity / inequality margin
    double deg = 1e-12;   // degeneracy threshold for standard deviations
    double sat = 1e-7;    // saturation detection (composed operations)
    double p = 1e-12;     // outcome-probability threshold p(m) == 0
    double rank = 1e-8;   // singular-value cutoff for coplanarity rank tests
};

// Mutable global instance, initialized once from the environment.
Tolerances& tol();

}  // namespace qjm
