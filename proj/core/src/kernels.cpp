#include "isrl/kernels.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>

namespace isrl::detail {

namespace {

struct CellWeights {
    int ix, iy;          // lower-left node
    double fx, fy;       // fractional offsets in [0,1]
    bool clamped_x, clamped_y;
};

inline CellWeights locate(double px, double py, int h, int w) {
    CellWeights c;
    c.clamped_x = px <= 0.0 || px >= double(w - 1);
    c.clamped_y = py <= 0.0 || py >= double(h - 1);
    const double cx = std::clamp(px, 0.0, double(w - 1));
    const double cy = std::clamp(py, 0.0, double(h - 1));
    c.ix = std::min(int(cx), w - 2);
    c.iy = std::min(int(cy), h - 2);
    if (w == 1) c.ix = 0;
    if (h == 1) c.iy = 0;
    c.fx = cx - c.ix;
    c.fy = cy - c.iy;
    return c;
}

} // namespace

void bilinear_sample(const double* f, int h, int w,
                     const double* px, const double* py, int n, double* out) {
    for (int i = 0; i < n; ++i) {
        const CellWeights c = locate(px[i], py[i], h, w);
        const int i00 = c.iy * w + c.ix;
        const double f00 = f[i00];
        const double f01 = f[i00 + (w > 1 ? 1 : 0)];
        const double f10 = f[i00 + (h > 1 ? w : 0)];
        const double f11 = f[i00 + (h > 1 ? w : 0) + (w > 1 ? 1 : 0)];
        const double top = f00 + c.fx * (f01 - f00);
        const double bot = f10 + c.fx * (f11 - f10);
        out[i] = top + c.fy * (bot - top);
    }
}

void bilinear_splat(const double* a, int h, int w,
                    const double* px, const double* py, int n, double* acc) {
    for (int i = 0; i < n; ++i) {
        const CellWeights c = locate(px[i], py[i], h, w);
        const int i00 = c.iy * w + c.ix;
        const int dx = w > 1 ? 1 : 0;
        const int dy = h > 1 ? w : 0;
        const double v = a[i];
        acc[i00] += v * (1 - c.fx) * (1 - c.fy);
        acc[i00 + dx] += v * c.fx * (1 - c.fy);
        acc[i00 + dy] += v * (1 - c.fx) * c.fy;
        acc[i00 + dy + dx] += v * c.fx * c.fy;
    }
}

void bilinear_pos_grad(const double* f, int h, int w,
                       const double* px, const double* py, int n,
                       double* gx, double* gy) {
    for (int i = 0; i < n; ++i) {
        const CellWeights c = locate(px[i], py[i], h, w);
        const int i00 = c.iy * w + c.ix;
        const int dx = w > 1 ? 1 : 0;
        const int dy = h > 1 ? w : 0;
        const double f00 = f[i00], f01 = f[i00 + dx];
        const double f10 = f[i00 + dy], f11 = f[i00 + dy + dx];
        gx[i] = c.clamped_x ? 0.0
                            : (1 - c.fy) * (f01 - f00) + c.fy * (f11 - f10);
        gy[i] = c.clamped_y ? 0.0
                            : (1 - c.fx) * (f10 - f00) + c.fx * (f11 - f01);
    }
}

void fd_dx(const double* f, int h, int w, double* out) {
    for (int y = 0; y < h; ++y) {
        const double* r = f + std::size_t(y) * w;
        double* o = out + std::size_t(y) * w;
        o[0] = r[1] - r[0];
        for (int x = 1; x < w - 1; ++x) o[x] = 0.5 * (r[x + 1] - r[x - 1]);
        o[w - 1] = r[w - 1] - r[w - 2];
    }
}

void fd_dy(const double* f, int h, int w, double* out) {
    for (int x = 0; x < w; ++x) out[x] = f[w + x] - f[x];
    for (int y = 1; y < h - 1; ++y) {
        const double* up = f + std::size_t(y - 1) * w;
        const double* dn = f + std::size_t(y + 1) * w;
        double* o = out + std::size_t(y) * w;
        for (int x = 0; x < w; ++x) o[x] = 0.5 * (dn[x] - up[x]);
    }
    const double* l0 = f + std::size_t(h - 2) * w;
    const double* l1 = f + std::size_t(h - 1) * w;
    double* o = out + std::size_t(h - 1) * w;
    for (int x = 0; x < w; ++x) o[x] = l1[x] - l0[x];
}

// Adjoints scatter the forward stencil weights, so they are transposes by
// construction.
void fd_dx_adj(const double* a, int h, int w, double* out) {
    std::memset(out, 0, sizeof(double) * std::size_t(h) * w);
    for (int y = 0; y < h; ++y) {
        const double* r = a + std::size_t(y) * w;
        double* o = out + std::size_t(y) * w;
        o[1] += r[0];
        o[0] -= r[0];
        for (int x = 1; x < w - 1; ++x) {
            o[x + 1] += 0.5 * r[x];
            o[x - 1] -= 0.5 * r[x];
        }
        o[w - 1] += r[w - 1];
        o[w - 2] -= r[w - 1];
    }
}

void fd_dy_adj(const double* a, int h, int w, double* out) {
    std::memset(out, 0, sizeof(double) * std::size_t(h) * w);
    for (int x = 0; x < w; ++x) {
        out[w + x] += a[x];
        out[x] -= a[x];
    }
    for (int y = 1; y < h - 1; ++y) {
        const double* r = a + std::size_t(y) * w;
        for (int x = 0; x < w; ++x) {
            out[std::size_t(y + 1) * w + x] += 0.5 * r[x];
            out[std::size_t(y - 1) * w + x] -= 0.5 * r[x];
        }
    }
    const double* r = a + std::size_t(h - 1) * w;
    for (int x = 0; x < w; ++x) {
        out[std::size_t(h - 1) * w + x] += r[x];
        out[std::size_t(h - 2) * w + x] -= r[x];
    }
}

void im2col(const ConvGeom& g, const double* x, double* cols) {
    const std::size_t ccols = g.cols_cols();
    const std::size_t plane = std::size_t(g.h) * g.w;
    for (int c = 0; c < g.c; ++c) {
        for (int ky = 0; ky < g.k; ++ky) {
            for (int kx = 0; kx < g.k; ++kx) {
                const std::size_t row = (std::size_t(c) * g.k + ky) * g.k + kx;
                double* dst = cols + row * ccols;
                for (int n = 0; n < g.n; ++n) {
                    const double* src = x + (std::size_t(n) * g.c + c) * plane;
                    for (int oy = 0; oy < g.ho; ++oy) {
                        const int iy = oy * g.s - g.p + ky;
                        const bool in_y = iy >= 0 && iy < g.h;
                        for (int ox = 0; ox < g.wo; ++ox) {
                            const int ix = ox * g.s - g.p + kx;
                            *dst++ = (in_y && ix >= 0 && ix < g.w)
                                         ? src[std::size_t(iy) * g.w + ix]
                                         : 0.0;
                        }
                    }
                }
            }
        }
    }
}

void col2im(const ConvGeom& g, const double* cols, double* acc) {
    const std::size_t ccols = g.cols_cols();
    const std::size_t plane = std::size_t(g.h) * g.w;
    for (int c = 0; c < g.c; ++c) {
        for (int ky = 0; ky < g.k; ++ky) {
            for (int kx = 0; kx < g.k; ++kx) {
                const std::size_t row = (std::size_t(c) * g.k + ky) * g.k + kx;
                const double* src = cols + row * ccols;
                for (int n = 0; n < g.n; ++n) {
                    double* dst = acc + (std::size_t(n) * g.c + c) * plane;
                    for (int oy = 0; oy < g.ho; ++oy) {
                        const int iy = oy * g.s - g.p + ky;
                        const bool in_y = iy >= 0 && iy < g.h;
                        for (int ox = 0; ox < g.wo; ++ox) {
                            const double v = *src++;
                            const int ix = ox * g.s - g.p + kx;
                            if (in_y && ix >= 0 && ix < g.w)
                                dst[std::size_t(iy) * g.w + ix] += v;
                        }
                    }
                }
            }
        }
    }
}

void conv_pack(int n, int co, int l, const double* y, double* out) {
    // y[co, n*l] -> out[n, co, l]
    for (int c = 0; c < co; ++c)
        for (int i = 0; i < n; ++i)
            std::memcpy(out + (std::size_t(i) * co + c) * l,
                        y + (std::size_t(c) * n + i) * l, sizeof(double) * l);
}

void conv_unpack(int n, int co, int l, const double* y4, double* out) {
    for (int c = 0; c < co; ++c)
        for (int i = 0; i < n; ++i)
            std::memcpy(out + (std::size_t(c) * n + i) * l,
                        y4 + (std::size_t(i) * co + c) * l, sizeof(double) * l);
}

void upsample2x(int n, int c, int h, int w, const double* x, double* out) {
    const std::size_t planes = std::size_t(n) * c;
    for (std::size_t p = 0; p < planes; ++p) {
        const double* src = x + p * h * w;
        double* dst = out + p * 4 * h * w;
        for (int y = 0; y < 2 * h; ++y)
            for (int x2 = 0; x2 < 2 * w; ++x2)
                dst[std::size_t(y) * 2 * w + x2] = src[std::size_t(y / 2) * w + x2 / 2];
    }
}

void poolsum2x(int n, int c, int h, int w, const double* a, double* out) {
    // a is [n,c,2h,2w]; out is [n,c,h,w]
    const std::size_t planes = std::size_t(n) * c;
    for (std::size_t p = 0; p < planes; ++p) {
        const double* src = a + p * 4 * h * w;
        double* dst = out + p * h * w;
        for (int y = 0; y < h; ++y)
            for (int x2 = 0; x2 < w; ++x2) {
                const std::size_t b = std::size_t(2 * y) * 2 * w + 2 * x2;
                dst[std::size_t(y) * w + x2] =
                    src[b] + src[b + 1] + src[b + 2 * w] + src[b + 2 * w + 1];
            }
    }
}

void matmul(const double* A, const double* B, double* C, int m, int k, int p) {
    std::memset(C, 0, sizeof(double) * std::size_t(m) * p);
    for (int i = 0; i < m; ++i) {
        const double* a = A + std::size_t(i) * k;
        double* c = C + std::size_t(i) * p;
        for (int t = 0; t < k; ++t) {
            const double av = a[t];
            if (av == 0.0) continue;
            const double* b = B + std::size_t(t) * p;
            for (int j = 0; j < p; ++j) c[j] += av * b[j];
        }
    }
}

} // namespace isrl::detail
