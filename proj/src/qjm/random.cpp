#include "qjm/random.hpp"

#include <cmath>

namespace qjm {

double Rng::normal() {
    if (has_spare_) {
        has_spare_ = false;
        return spare_;
    }
    double u, v, s;
    do {
        u = 2.0 * uniform() - 1.0;
        v = 2.0 * uniform() - 1.0;
        s = u * u + v * v;
    } while (s >= 1.0 || s == 0.0);
    const double scale = std::sqrt(-2.0 * std::log(s) / s);
    spare_ = v * scale;
    has_spare_ = true;
    return u * scale;
}

Ket Rng::haar_ket(Eigen::Index dim) {
    Vec v(dim);
    for (Eigen::Index i = 0; i < dim; ++i) {
        v(i) = complex_normal();
    }
    v /= v.norm();
    return Ket(std::move(v));
}

HermitianOperator Rng::hermitian(Eigen::Index dim) {
    Mat g(dim, dim);
    for (Eigen::Index i = 0; i < dim; ++i) {
        for (Eigen::Index j = 0; j < dim; ++j) {
            g(i, j) = complex_normal();
        }
    }
    Mat h = (g + g.adjoint()) / 2.0;
    return HermitianOperator(std::move(h));
}

Mat Rng::unitary(Eigen::Index dim) {
    Mat g(dim, dim);
    for (Eigen::Index i = 0; i < dim; ++i) {
        for (Eigen::Index j = 0; j < dim; ++j) {
            g(i, j) = complex_normal();
        }
    }
    Eigen::HouseholderQR<Mat> qr(g);
    return qr.householderQ();
}

RealVec Rng::real_gaussian(Eigen::Index dim) {
    RealVec v(dim);
    for (Eigen::Index i = 0; i < dim; ++i) {
        v(i) = normal();
    }
    return v;
}

RealVec Rng::real_unit(Eigen::Index dim) {
    RealVec v = real_gaussian(dim);
    double n = v.norm();
    while (n < 1e-12) {
        v = real_gaussian(dim);
        n = v.norm();
    }
    return v / n;
}

std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t stream) {
    std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (stream + 1);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

}  // namespace qjm
