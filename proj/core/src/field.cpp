#include "isrl/field.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstring>
#include <fstream>

#include "isrl/errors.hpp"
#include "isrl/kernels.hpp"

namespace isrl {

namespace {

void require_same_shape(int h1, int w1, int h2, int w2, const char* what) {
    if (h1 != h2 || w1 != w2)
        throw DimensionError(std::string(what) + ": grid shapes differ (" +
                             std::to_string(h1) + "x" + std::to_string(w1) + " vs " +
                             std::to_string(h2) + "x" + std::to_string(w2) + ")");
}

void require_min_grid(int h, int w, const char* what) {
    if (h < 3 || w < 3)
        throw DimensionError(std::string(what) + ": grid must be at least 3x3, got " +
                             std::to_string(h) + "x" + std::to_string(w));
}

} // namespace

Deformation2 Deformation2::identity(int h, int w) {
    Deformation2 d;
    d.positions = VectorField2(h, w);
    for (int y = 0; y < h; ++y)
        for (int x = 0; x < w; ++x) {
            d.positions.x[std::size_t(y) * w + x] = x;
            d.positions.y[std::size_t(y) * w + x] = y;
        }
    return d;
}

VectorField2 Deformation2::displacement() const {
    VectorField2 u(positions.height, positions.width);
    const int w = positions.width;
    for (int y = 0; y < positions.height; ++y)
        for (int x = 0; x < w; ++x) {
            const std::size_t i = std::size_t(y) * w + x;
            u.x[i] = positions.x[i] - x;
            u.y[i] = positions.y[i] - y;
        }
    return u;
}

Deformation2 Deformation2::from_displacement(const VectorField2& disp) {
    Deformation2 d = identity(disp.height, disp.width);
    for (std::size_t i = 0; i < disp.nodes(); ++i) {
        d.positions.x[i] += disp.x[i];
        d.positions.y[i] += disp.y[i];
    }
    return d;
}

ScalarField2 interpolate(const ScalarField2& f, const Deformation2& pos) {
    require_same_shape(f.height, f.width, pos.height(), pos.width(), "interpolate");
    ScalarField2 out(f.height, f.width);
    detail::bilinear_sample(f.data.data(), f.height, f.width,
                            pos.positions.x.data(), pos.positions.y.data(),
                            int(f.size()), out.data.data());
    return out;
}

JacobianField2 jacobian(const VectorField2& v) {
    require_min_grid(v.height, v.width, "jacobian");
    JacobianField2 j{ScalarField2(v.height, v.width), ScalarField2(v.height, v.width),
                     ScalarField2(v.height, v.width), ScalarField2(v.height, v.width)};
    detail::fd_dx(v.x.data(), v.height, v.width, j.xx.data.data());
    detail::fd_dy(v.x.data(), v.height, v.width, j.xy.data.data());
    detail::fd_dx(v.y.data(), v.height, v.width, j.yx.data.data());
    detail::fd_dy(v.y.data(), v.height, v.width, j.yy.data.data());
    return j;
}

ScalarField2 divergence(const VectorField2& v) {
    require_min_grid(v.height, v.width, "divergence");
    ScalarField2 out(v.height, v.width);
    std::vector<double> tmp(out.size());
    detail::fd_dx(v.x.data(), v.height, v.width, out.data.data());
    detail::fd_dy(v.y.data(), v.height, v.width, tmp.data());
    for (std::size_t i = 0; i < out.size(); ++i) out.data[i] += tmp[i];
    return out;
}

Deformation2 compose(const Deformation2& outer, const Deformation2& inner) {
    require_same_shape(outer.height(), outer.width(), inner.height(), inner.width(),
                       "compose");
    Deformation2 out;
    out.positions = VectorField2(outer.height(), outer.width());
    const int n = int(outer.positions.nodes());
    detail::bilinear_sample(outer.positions.x.data(), outer.height(), outer.width(),
                            inner.positions.x.data(), inner.positions.y.data(), n,
                            out.positions.x.data());
    detail::bilinear_sample(outer.positions.y.data(), outer.height(), outer.width(),
                            inner.positions.x.data(), inner.positions.y.data(), n,
                            out.positions.y.data());
    return out;
}

double min_value(const ScalarField2& f) {
    return *std::min_element(f.data.begin(), f.data.end());
}

double max_value(const ScalarField2& f) {
    return *std::max_element(f.data.begin(), f.data.end());
}

double max_abs(const VectorField2& v) {
    double m = 0.0;
    for (double d : v.x) m = std::max(m, std::fabs(d));
    for (double d : v.y) m = std::max(m, std::fabs(d));
    return m;
}

// --- serialization ---------------------------------------------------------

void write_pgm(const ScalarField2& f, const std::string& path) {
    std::ofstream os(path, std::ios::binary);
    if (!os) throw IoError("write_pgm: cannot open " + path);
    os << "P5\n" << f.width << " " << f.height << "\n255\n";
    std::vector<unsigned char> row(f.width);
    for (int y = 0; y < f.height; ++y) {
        for (int x = 0; x < f.width; ++x) {
            const double v = std::clamp(f.at(y, x), 0.0, 1.0);
            row[x] = static_cast<unsigned char>(std::lround(v * 255.0));
        }
        os.write(reinterpret_cast<const char*>(row.data()), row.size());
    }
    if (!os) throw IoError("write_pgm: write failed for " + path);
}

namespace {

int next_pnm_int(std::istream& is) {
    // Skips whitespace and '#' comments.
    int c = is.get();
    while (c != EOF) {
        if (c == '#') {
            while (c != EOF && c != '\n') c = is.get();
        } else if (!std::isspace(c)) {
            break;
        }
        c = is.get();
    }
    int value = 0;
    bool any = false;
    while (c != EOF && std::isdigit(c)) {
        value = value * 10 + (c - '0');
        any = true;
        c = is.get();
    }
    if (!any) throw IoError("malformed PNM header");
    return value;
}

} // namespace

ScalarField2 read_pgm(const std::string& path) {
    std::ifstream is(path, std::ios::binary);
    if (!is) throw IoError("read_pgm: cannot open " + path);
    char m0 = 0, m1 = 0;
    is.get(m0);
    is.get(m1);
    if (m0 != 'P' || m1 != '5') throw IoError("read_pgm: not a binary PGM: " + path);
    const int w = next_pnm_int(is);
    const int h = next_pnm_int(is);
    const int maxval = next_pnm_int(is);
    if (maxval != 255) throw IoError("read_pgm: only 8-bit PGM supported");
    ScalarField2 f(h, w);
    std::vector<unsigned char> buf(std::size_t(h) * w);
    is.read(reinterpret_cast<char*>(buf.data()), buf.size());
    if (!is) throw IoError("read_pgm: truncated file " + path);
    for (std::size_t i = 0; i < buf.size(); ++i) f.data[i] = buf[i] / 255.0;
    return f;
}

void write_vec2(const VectorField2& v, const std::string& path) {
    std::ofstream os(path, std::ios::binary);
    if (!os) throw IoError("write_vec2: cannot open " + path);
    const std::uint32_t hdr[2] = {std::uint32_t(v.height), std::uint32_t(v.width)};
    os.write(reinterpret_cast<const char*>(hdr), sizeof(hdr));
    std::vector<float> buf(2 * v.nodes());
    for (std::size_t i = 0; i < v.nodes(); ++i) {
        buf[2 * i] = float(v.x[i]);
        buf[2 * i + 1] = float(v.y[i]);
    }
    os.write(reinterpret_cast<const char*>(buf.data()), buf.size() * sizeof(float));
    if (!os) throw IoError("write_vec2: write failed for " + path);
}

VectorField2 read_vec2(const std::string& path) {
    std::ifstream is(path, std::ios::binary);
    if (!is) throw IoError("read_vec2: cannot open " + path);
    std::uint32_t hdr[2];
    is.read(reinterpret_cast<char*>(hdr), sizeof(hdr));
    if (!is) throw IoError("read_vec2: truncated header in " + path);
    VectorField2 v(int(hdr[0]), int(hdr[1]));
    std::vector<float> buf(2 * v.nodes());
    is.read(reinterpret_cast<char*>(buf.data()), buf.size() * sizeof(float));
    if (!is) throw IoError("read_vec2: truncated data in " + path);
    for (std::size_t i = 0; i < v.nodes(); ++i) {
        v.x[i] = buf[2 * i];
        v.y[i] = buf[2 * i + 1];
    }
    return v;
}

} // namespace isrl
