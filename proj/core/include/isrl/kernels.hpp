#pragma once

// Raw grid kernels shared by the field API and the tape primitives.
// All planes are row-major double arrays of size h*w; positions are
// absolute grid coordinates (x along width, y along height).

#include <cstddef>

namespace isrl::detail {

// Bilinear sample of plane f at (px[i], py[i]); coordinates clamped to the
// domain [0, w-1] x [0, h-1].
void bilinear_sample(const double* f, int h, int w,
                     const double* px, const double* py, int n, double* out);

// Adjoint of bilinear_sample w.r.t. the field: scatters a[i] with the same
// bilinear weights. Accumulates into acc (caller zeroes it).
void bilinear_splat(const double* a, int h, int w,
                    const double* px, const double* py, int n, double* acc);

// Spatial gradient of f at the sample points (d/dpx, d/dpy of the bilinear
// formula). Zero where the coordinate is clamped (subgradient of clamp).
void bilinear_pos_grad(const double* f, int h, int w,
                       const double* px, const double* py, int n,
                       double* gx, double* gy);

// d/dx with central differences in the interior, one-sided at the two
// boundary columns. Requires w >= 2 (>= 3 for a true interior).
void fd_dx(const double* f, int h, int w, double* out);
void fd_dy(const double* f, int h, int w, double* out);

// Exact transposes of the fd_dx / fd_dy linear maps (adjoint scatter of the
// same stencil weights).
void fd_dx_adj(const double* a, int h, int w, double* out);
void fd_dy_adj(const double* a, int h, int w, double* out);

// im2col geometry for kernel k, stride s, padding p (zero padding).
struct ConvGeom {
    int n, c, h, w;    // input
    int k, s, p;
    int ho, wo;        // output spatial dims
    ConvGeom(int n_, int c_, int h_, int w_, int k_, int s_, int p_)
        : n(n_), c(c_), h(h_), w(w_), k(k_), s(s_), p(p_),
          ho((h_ + 2 * p_ - k_) / s_ + 1), wo((w_ + 2 * p_ - k_) / s_ + 1) {}
    std::size_t cols_rows() const { return std::size_t(c) * k * k; }
    std::size_t cols_cols() const { return std::size_t(n) * ho * wo; }
};

// x[n,c,h,w] -> cols[c*k*k, n*ho*wo]; column index = ((n*ho + oy)*wo + ox).
void im2col(const ConvGeom& g, const double* x, double* cols);
// Transpose scatter of im2col. Accumulates into acc (caller zeroes it).
void col2im(const ConvGeom& g, const double* cols, double* acc);

// [co, n*L] -> [n, co, ho, wo] and back (pure index permutations).
void conv_pack(int n, int co, int l, const double* y, double* out);
void conv_unpack(int n, int co, int l, const double* y4, double* out);

// Nearest-neighbour 2x upsampling of [n,c,h,w] and its transpose (2x2 sum
// pooling).
void upsample2x(int n, int c, int h, int w, const double* x, double* out);
void poolsum2x(int n, int c, int h, int w, const double* a, double* out);

// C[m,p] = A[m,k] * B[k,p]
void matmul(const double* A, const double* B, double* C, int m, int k, int p);

} // namespace isrl::detail
