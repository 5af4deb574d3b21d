#pragma once

#include <vector>

#include "cfa/space.hpp"

namespace cfa {

struct LiftResult {
    /// r_1..r_k in ring coordinates with sum r_i·y_i = target
    std::vector<Vector> coefficients;
    int steps = 0;
    /// max_i v(y_i): each correction satisfies v(r) >= v(residual) - K
    int K = 0;
    /// residual valuations before each step, strictly increasing
    std::vector<int> residual_valuations;
};

/// Successive approximation. Each step solves the homogeneous system
/// sum σ(r_i)σ(y_i) = σ(residual) in degree v(residual), with
/// deg σ(r_i) = v(residual) - v(y_i) and free variables set to zero, then
/// subtracts the full products. Throws NotSpanned with the failing degree.
LiftResult lift_solve(const FilteredSpace& space, const Vector& target, const std::vector<Vector>& spanners);

struct InverseResult {
    Vector inverse;          ///< x with x·a = 1
    bool two_sided = false;  ///< whether also a·x = 1
};

/// Left inverse of a unit. Throws NotUnit when v(a) >= 1.
InverseResult invert(const AlgebraPtr& ring, const Vector& a);

}  // namespace cfa
