#pragma once

#include "qjm/core.hpp"
#include "qjm/random.hpp"

namespace qjm {

// Real embedding of complex amplitude vectors used by both proofs:
// a_type stacks (Re, Im); b_type stacks (Im, -Re). Both are isometries, and
// embed(a, a_type) . embed(b, b_type) = Im <a|b>.
enum class EmbedConvention { a_type, b_type };

RealVec embed(const Vec& amplitudes, EmbedConvention convention);

enum class LemmaId { lemma1, lemma2, lemma3 };

// One instance of the vector inequalities: unit vectors a_hat, b_hat and the
// pair (x_vec, y_vec) whose constraints depend on the lemma (orthogonal for
// lemma 1; orthonormal for lemma 2; x free, y unit, orthogonal for lemma 3).
struct LemmaInstance {
    RealVec a_hat;
    RealVec b_hat;
    RealVec x_vec;
    RealVec y_vec;

    double chi() const { return a_hat.dot(b_hat); }
};

// Left side minus chi^2 of the respective inequality; nonnegative for every
// valid instance. Preconditions are validated and violations reported.
double lemma1_slack(const LemmaInstance& inst);
double lemma2_slack(const LemmaInstance& inst);
double lemma3_slack(const LemmaInstance& inst);

double lemma_slack(const LemmaInstance& inst, LemmaId id);

// Diagnosis of the saturation conditions: the four vectors must be coplanar
// (Gram rank <= 2), and for lemmas 1/3, x_vec must be the orthogonal
// projection of a_hat onto its own direction (same for y_vec in lemma 1).
struct SaturationWitness {
    bool coplanar = false;
    bool x_is_projection = true;
    bool y_is_projection = true;
    int gram_rank = 0;
    double third_singular_value = 0;

    bool holds() const { return coplanar && x_is_projection && y_is_projection; }
};

SaturationWitness saturation_witness(const LemmaInstance& inst, LemmaId id);

// Random instance satisfying the lemma's preconditions exactly (up to
// floating point), for falsification sweeps.
LemmaInstance random_lemma_instance(Rng& rng, Eigen::Index dim, LemmaId id);

}  // namespace qjm
