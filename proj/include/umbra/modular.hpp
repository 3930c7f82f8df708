#pragma once

#include <Eigen/Dense>

#include <cstdint>

namespace umbra {

using ModMatrix = Eigen::Matrix<std::int64_t, Eigen::Dynamic, Eigen::Dynamic>;

/// Finite-dimensional representation of [Q, xhat] = I over the prime field
/// Z_p: x = diag(0..p-1), Q the cyclic one-step matrix, and
/// xhat = x Q'^{-1} with Q' = [Q, x] computed in the matrix algebra.
struct ModularMatrixRep {
    std::int64_t p = 0;
    ModMatrix x;
    ModMatrix q;
    ModMatrix qprime;        // [Q, x] mod p; equals Q for the cyclic Q
    ModMatrix xhat;          // x * qprime^{-1} mod p
    bool qprime_equals_q = false;
    bool ccr_holds = false;  // [Q, xhat] == I mod p, verified at build time
};

ModMatrix mod_mul(const ModMatrix& a, const ModMatrix& b, std::int64_t p);
ModMatrix mod_reduce(ModMatrix m, std::int64_t p);
/// Gauss-Jordan inverse over Z_p; throws std::domain_error if singular.
ModMatrix mod_inverse(const ModMatrix& m, std::int64_t p);

/// Builds the representation; throws std::invalid_argument unless p is prime.
ModularMatrixRep finite_field_rep(std::int64_t p);

}  // namespace umbra
