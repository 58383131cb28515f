#include "isrl/metric.hpp"

#include <cmath>
#include <mutex>

#include <fftw3.h>

#include "isrl/errors.hpp"

namespace isrl {

namespace {
// FFTW plan creation is not thread-safe; execution with new arrays is.
std::mutex& planner_mutex() {
    static std::mutex m;
    return m;
}
} // namespace

struct MetricOperator::Impl {
    int h = 0, w = 0;
    double alpha = 0.0;
    std::vector<double> mult;     // 1 + alpha*lam, h x (w/2+1)
    fftw_plan fwd = nullptr;      // r2c
    fftw_plan inv = nullptr;      // c2r

    Impl(int height, int width, double a) : h(height), w(width), alpha(a) {
        if (h < 1 || w < 1) throw DimensionError("MetricOperator: empty grid");
        if (a < 0.0) throw ConfigError("MetricOperator: alpha must be nonnegative");
        const int wc = w / 2 + 1;
        mult.resize(std::size_t(h) * wc);
        for (int ky = 0; ky < h; ++ky) {
            const double sy = std::sin(M_PI * ky / h);
            for (int kx = 0; kx < wc; ++kx) {
                const double sx = std::sin(M_PI * kx / w);
                const double lam = 4.0 * (sx * sx + sy * sy);
                mult[std::size_t(ky) * wc + kx] = 1.0 + alpha * lam;
            }
        }
        std::lock_guard<std::mutex> lock(planner_mutex());
        double* rbuf = fftw_alloc_real(std::size_t(h) * w);
        fftw_complex* cbuf = fftw_alloc_complex(std::size_t(h) * wc);
        // FFTW_UNALIGNED: plans are later executed on caller-owned arrays.
        fwd = fftw_plan_dft_r2c_2d(h, w, rbuf, cbuf, FFTW_ESTIMATE | FFTW_UNALIGNED);
        inv = fftw_plan_dft_c2r_2d(h, w, cbuf, rbuf, FFTW_ESTIMATE | FFTW_UNALIGNED);
        fftw_free(rbuf);
        fftw_free(cbuf);
        if (!fwd || !inv) throw NumericError("MetricOperator: FFTW planning failed");
    }

    ~Impl() {
        std::lock_guard<std::mutex> lock(planner_mutex());
        if (fwd) fftw_destroy_plan(fwd);
        if (inv) fftw_destroy_plan(inv);
    }

    Impl(const Impl&) = delete;
    Impl& operator=(const Impl&) = delete;

    void apply(const double* in, double* out, bool inverse) const {
        const int wc = w / 2 + 1;
        thread_local std::vector<double> rscratch;
        thread_local std::vector<fftw_complex> cscratch;
        rscratch.assign(in, in + std::size_t(h) * w);
        cscratch.resize(std::size_t(h) * wc);
        fftw_execute_dft_r2c(fwd, rscratch.data(), cscratch.data());
        const double norm = 1.0 / (double(h) * double(w));
        for (std::size_t i = 0; i < cscratch.size(); ++i) {
            const double m = inverse ? norm / mult[i] : norm * mult[i];
            cscratch[i][0] *= m;
            cscratch[i][1] *= m;
        }
        fftw_execute_dft_c2r(inv, cscratch.data(), out);
    }
};

MetricOperator::MetricOperator(int height, int width, double alpha)
    : impl_(std::make_shared<const Impl>(height, width, alpha)) {}

int MetricOperator::height() const { return impl_->h; }
int MetricOperator::width() const { return impl_->w; }
double MetricOperator::alpha() const { return impl_->alpha; }
const std::vector<double>& MetricOperator::multipliers() const { return impl_->mult; }

void MetricOperator::apply_plane(const double* in, double* out, bool inverse) const {
    impl_->apply(in, out, inverse);
}

namespace {

VectorField2 apply_both(const MetricOperator& op, const VectorField2& v, bool inverse) {
    if (v.height != op.height() || v.width != op.width())
        throw DimensionError("MetricOperator: field shape does not match operator grid");
    VectorField2 out(v.height, v.width);
    op.apply_plane(v.x.data(), out.x.data(), inverse);
    op.apply_plane(v.y.data(), out.y.data(), inverse);
    return out;
}

} // namespace

VectorField2 MetricOperator::apply_L(const VectorField2& v) const {
    return apply_both(*this, v, /*inverse=*/false);
}

VectorField2 MetricOperator::apply_K(const VectorField2& m) const {
    return apply_both(*this, m, /*inverse=*/true);
}

double MetricOperator::inner_product_Lv(const VectorField2& v) const {
    const VectorField2 lv = apply_L(v);
    double acc = 0.0;
    for (std::size_t i = 0; i < v.nodes(); ++i)
        acc += lv.x[i] * v.x[i] + lv.y[i] * v.y[i];
    return acc;
}

} // namespace isrl
