#pragma once

#include <string>
#include <vector>

namespace isrl {

/// Dense H x W grid of reals, row-major. Image intensities live in [0,1].
struct ScalarField2 {
    int height = 0;
    int width = 0;
    std::vector<double> data;

    ScalarField2() = default;
    ScalarField2(int h, int w, double fill = 0.0)
        : height(h), width(w), data(std::size_t(h) * w, fill) {}

    double& at(int y, int x) { return data[std::size_t(y) * width + x]; }
    double at(int y, int x) const { return data[std::size_t(y) * width + x]; }
    std::size_t size() const { return data.size(); }
};

/// Dense H x W grid of 2-vectors, stored as two planes (x then y component).
struct VectorField2 {
    int height = 0;
    int width = 0;
    std::vector<double> x;
    std::vector<double> y;

    VectorField2() = default;
    VectorField2(int h, int w)
        : height(h), width(w), x(std::size_t(h) * w, 0.0), y(std::size_t(h) * w, 0.0) {}

    std::size_t nodes() const { return x.size(); }
};

/// Transformation stored as absolute sample coordinates phi(x) per node.
struct Deformation2 {
    VectorField2 positions;

    static Deformation2 identity(int h, int w);

    int height() const { return positions.height; }
    int width() const { return positions.width; }

    /// positions - identity.
    VectorField2 displacement() const;
    static Deformation2 from_displacement(const VectorField2& disp);
};

/// Per-node 2x2 Jacobian, component (i,j) = d v_i / d x_j.
struct JacobianField2 {
    ScalarField2 xx, xy, yx, yy;
};

/// Bilinear sampling of f at the deformation's positions; coordinates are
/// clamped to the image domain.
ScalarField2 interpolate(const ScalarField2& f, const Deformation2& pos);

/// Finite-difference Jacobian: central differences in the interior, one-sided
/// at the boundary. Requires height, width >= 3.
JacobianField2 jacobian(const VectorField2& v);

/// Trace of the Jacobian, same stencil rules.
ScalarField2 divergence(const VectorField2& v);

/// (outer o inner)(x): outer's positions sampled at inner's positions.
Deformation2 compose(const Deformation2& outer, const Deformation2& inner);

double min_value(const ScalarField2& f);
double max_value(const ScalarField2& f);
double max_abs(const VectorField2& v);

// --- serialization ---------------------------------------------------------

/// Binary PGM (P5, 8-bit). Values are clamped to [0,1] and scaled to 0..255.
void write_pgm(const ScalarField2& f, const std::string& path);
ScalarField2 read_pgm(const std::string& path);

/// Flat little-endian float32 file: 8-byte header (height, width as uint32),
/// then per-node interleaved (x, y) components in row-major node order.
void write_vec2(const VectorField2& v, const std::string& path);
VectorField2 read_vec2(const std::string& path);

} // namespace isrl
