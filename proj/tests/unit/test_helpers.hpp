#pragma once

#include <cmath>

#include "qclab/core/state.hpp"

namespace qclab::test {

inline PureState plus() {
  CVector v(2);
  v << 1.0 / std::sqrt(2.0), 1.0 / std::sqrt(2.0);
  return PureState(v);
}

inline PureState minus() {
  CVector v(2);
  v << 1.0 / std::sqrt(2.0), -1.0 / std::sqrt(2.0);
  return PureState(v);
}

inline PureState bell() {
  CVector v = CVector::Zero(4);
  v[0] = v[3] = 1.0 / std::sqrt(2.0);
  return PureState(v);
}

inline DensityMatrix dm(const PureState& psi) { return DensityMatrix::from_pure(psi); }

// Three-sigma half-width of a Bernoulli mean estimate.
inline double three_sigma(double p, double n) { return 3.0 * std::sqrt(p * (1.0 - p) / n); }

}  // namespace qclab::test
