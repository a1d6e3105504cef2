#pragma once

#include "vqpt/qcore.hpp"

namespace vqpt {

/// |<a|b>|^2
double fidelity_pure(const StateVector& a, const StateVector& b);

/// S(A, B) = 1 - ||A - B||_F / ||A||_F
double similarity(const UnitaryMatrix& a, const UnitaryMatrix& b);

/// Mean over the computational basis of |<i|U^dagger V|i>|^2, i.e. the
/// average pure-state fidelity between U|i> and V|i>.
double mean_basis_fidelity(const UnitaryMatrix& target, const UnitaryMatrix& predicted);

} // namespace vqpt
