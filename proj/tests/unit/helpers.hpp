#pragma once

#include <Eigen/Dense>
#include <vector>

#include "gmlab/matrix.hpp"
#include "gmlab/polynomial.hpp"

namespace testing {

inline gmlab::Polynomial Z(int slot) { return gmlab::Polynomial::variable(slot); }
inline gmlab::Polynomial constant(double c) { return gmlab::Polynomial(c); }

inline gmlab::MatrixPolynomial scalar_matrix(const gmlab::Polynomial& p) {
    using gmlab::IndexKey;
    gmlab::MatrixPolynomial m({IndexKey::plain({0})}, {IndexKey::plain({0})});
    m.set(0, 0, p);
    return m;
}

inline gmlab::DistList rademacher(int n) { return gmlab::uniform_dists(n, gmlab::VariableDistribution::rademacher()); }

}  // namespace testing
