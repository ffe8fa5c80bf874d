#include "qjm/tolerances.hpp"

#include <cstdlib>
#include <string>

namespace qjm {

namespace {

void maybe_override(double& field, const char* env_name) {
    if (const char* value = std::getenv(env_name)) {
        try {
            field = std::stod(value);
        } catch (...) {
            // malformed override: keep the default
        }
    }
}

Tolerances from_env() {
    Tolerances t;
    maybe_override(t.norm, "QJM_TAU_NORM");
    maybe_override(t.herm, "QJM_TAU_HERM");
    maybe_override(t.num, "QJM_TAU_NUM");
    maybe_override(t.deg, "QJM_TAU_DEG");
    maybe_override(t.sat, "QJM_TAU_SAT");
    maybe_override(t.p, "QJM_TAU_P");
    maybe_override(t.rank, "QJM_TAU_RANK");
    return t;
}

}  // namespace

Tolerances& tol() {
    static Tolerances instance = from_env();
    return instance;
}

}  // namespace qjm
