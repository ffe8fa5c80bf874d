#include "qjm/geometry.hpp"

#include <cmath>
#include <string>

namespace qjm {

namespace {

double clamped_perp(const RealVec& unit_vec, const RealVec& axis) {
    const double c = unit_vec.dot(axis);
    return std::sqrt(std::max(1.0 - c * c, 0.0));
}

double cross_coefficient(double chi) { return std::sqrt(std::max(1.0 - chi * chi, 0.0)); }

void require_unit(const RealVec& v, const char* name) {
    if (std::abs(v.norm() - 1.0) > tol().num) {
        fail(Errc::invalid_argument, std::string(name) + " must be a unit vector");
    }
}

void require_orthogonal(const RealVec& x, const RealVec& y) {
    if (std::abs(x.dot(y)) > tol().num) {
        fail(Errc::invalid_argument,
             "vectors not orthogonal, inner product " + std::to_string(x.dot(y)));
    }
}

// x_vec equals the orthogonal projection of a_hat onto its own direction.
// The zero vector is the projection exactly when a_hat is orthogonal to the
// (then arbitrary) direction; with no direction singled out this reduces to
// dimension > 2 always admitting one.
bool projection_condition(const RealVec& a_hat, const RealVec& x_vec, const RealVec& other) {
    const double n = x_vec.norm();
    if (n <= tol().deg) {
        if (a_hat.size() > 2) {
            return true;
        }
        // in the plane the direction orthogonal to `other` is fixed (up to sign)
        RealVec dir(2);
        dir << -other(1), other(0);
        if (dir.norm() <= tol().deg) {
            return true;
        }
        dir.normalize();
        return std::abs(a_hat.dot(dir)) <= tol().sat;
    }
    const RealVec x_hat = x_vec / n;
    return (x_vec - a_hat.dot(x_hat) * x_hat).norm() <= tol().sat;
}

}  // namespace

RealVec embed(const Vec& amplitudes, EmbedConvention convention) {
    const Eigen::Index d = amplitudes.size();
    RealVec out(2 * d);
    switch (convention) {
        case EmbedConvention::a_type:
            out.head(d) = amplitudes.real();
            out.tail(d) = amplitudes.imag();
            break;
        case EmbedConvention::b_type:
            out.head(d) = amplitudes.imag();
            out.tail(d) = -amplitudes.real();
            break;
    }
    return out;
}

double lemma1_slack(const LemmaInstance& inst) {
    require_unit(inst.a_hat, "a_hat");
    require_unit(inst.b_hat, "b_hat");
    require_orthogonal(inst.x_vec, inst.y_vec);
    const double chi = inst.chi();
    const double da = (inst.a_hat - inst.x_vec).norm();
    const double db = (inst.b_hat - inst.y_vec).norm();
    return da * da + db * db + 2.0 * cross_coefficient(chi) * da * db - chi * chi;
}

double lemma2_slack(const LemmaInstance& inst) {
    require_unit(inst.a_hat, "a_hat");
    require_unit(inst.b_hat, "b_hat");
    require_unit(inst.x_vec, "x_hat");
    require_unit(inst.y_vec, "y_hat");
    require_orthogonal(inst.x_vec, inst.y_vec);
    const double chi = inst.chi();
    const double a_perp = clamped_perp(inst.a_hat, inst.x_vec);
    const double b_perp = clamped_perp(inst.b_hat, inst.y_vec);
    return a_perp * a_perp + b_perp * b_perp + 2.0 * cross_coefficient(chi) * a_perp * b_perp -
           chi * chi;
}

double lemma3_slack(const LemmaInstance& inst) {
    require_unit(inst.a_hat, "a_hat");
    require_unit(inst.b_hat, "b_hat");
    require_unit(inst.y_vec, "y_hat");
    require_orthogonal(inst.x_vec, inst.y_vec);
    const double chi = inst.chi();
    const double da = (inst.a_hat - inst.x_vec).norm();
    const double b_perp = clamped_perp(inst.b_hat, inst.y_vec);
    return da * da + b_perp * b_perp + 2.0 * cross_coefficient(chi) * da * b_perp - chi * chi;
}

double lemma_slack(const LemmaInstance& inst, LemmaId id) {
    switch (id) {
        case LemmaId::lemma1: return lemma1_slack(inst);
        case LemmaId::lemma2: return lemma2_slack(inst);
        case LemmaId::lemma3: return lemma3_slack(inst);
    }
    fail(Errc::invalid_argument, "unknown lemma");
}

SaturationWitness saturation_witness(const LemmaInstance& inst, LemmaId id) {
    SaturationWitness w;

    Eigen::MatrixXd gram(4, 4);
    const RealVec* vecs[4] = {&inst.a_hat, &inst.b_hat, &inst.x_vec, &inst.y_vec};
    for (int i = 0; i < 4; ++i) {
        for (int j = 0; j < 4; ++j) {
            gram(i, j) = vecs[i]->dot(*vecs[j]);
        }
    }
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(gram);
    w.gram_rank = 0;
    for (Eigen::Index i = 0; i < 4; ++i) {
        if (svd.singularValues()(i) > tol().rank) {
            ++w.gram_rank;
        }
    }
    w.third_singular_value = svd.singularValues()(2);
    w.coplanar = w.gram_rank <= 2;

    if (id == LemmaId::lemma1 || id == LemmaId::lemma3) {
        w.x_is_projection = projection_condition(inst.a_hat, inst.x_vec, inst.y_vec);
    }
    if (id == LemmaId::lemma1) {
        w.y_is_projection = projection_condition(inst.b_hat, inst.y_vec, inst.x_vec);
    }
    return w;
}

LemmaInstance random_lemma_instance(Rng& rng, Eigen::Index dim, LemmaId id) {
    if (dim < 2) {
        fail(Errc::config, "lemma instances need dimension >= 2 for orthogonal pairs");
    }
    LemmaInstance inst;
    inst.a_hat = rng.real_unit(dim);
    inst.b_hat = rng.real_unit(dim);

    RealVec x = rng.real_unit(dim);
    RealVec y = rng.real_gaussian(dim);
    y -= y.dot(x) * x;
    double n = y.norm();
    while (n < 1e-9) {
        y = rng.real_gaussian(dim);
        y -= y.dot(x) * x;
        n = y.norm();
    }
    y /= n;

    switch (id) {
        case LemmaId::lemma1:
            inst.x_vec = rng.uniform(0.0, 2.0) * x;
            inst.y_vec = rng.uniform(0.0, 2.0) * y;
            break;
        case LemmaId::lemma2:
            inst.x_vec = x;
            inst.y_vec = y;
            break;
        case LemmaId::lemma3:
            inst.x_vec = rng.uniform(0.0, 2.0) * x;
            inst.y_vec = y;
            break;
    }
    return inst;
}

}  // namespace qjm
