#pragma once

#include <memory>
#include <vector>

#include "isrl/field.hpp"

namespace isrl {

// Sobolev metric operator L = -alpha * Lap + I and its inverse K, applied
// component-wise to vector fields. Diagonalized by the real DFT under
// periodic boundary conditions with discrete Laplacian eigenvalues
// lam(kx, ky) = 4 sin^2(pi kx / W) + 4 sin^2(pi ky / H), so every spectral
// multiplier 1 + alpha * lam is >= 1 and the zero frequency maps to exactly 1.
//
// Immutable after construction and cheap to copy (shared state), so one
// operator can serve concurrent applications.
class MetricOperator {
public:
    MetricOperator(int height, int width, double alpha);

    int height() const;
    int width() const;
    double alpha() const;

    /// Momentum m = L v.
    VectorField2 apply_L(const VectorField2& v) const;

    /// Velocity v = K m.
    VectorField2 apply_K(const VectorField2& m) const;

    /// Sum over nodes of <L v, v>; >= 0, zero iff v = 0.
    double inner_product_Lv(const VectorField2& v) const;

    /// Raw-plane transform used by the tape primitive: out = L in (or K in
    /// when inverse). Planes are height*width row-major.
    void apply_plane(const double* in, double* out, bool inverse) const;

    /// Spectral multipliers (1 + alpha*lam) on the half-spectrum grid
    /// height x (width/2 + 1), row-major. Exposed for tests.
    const std::vector<double>& multipliers() const;

private:
    struct Impl;
    std::shared_ptr<const Impl> impl_;
};

} // namespace isrl
