#include <umbilic/grid.hpp>

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace umbilic {

GridField sample(const std::function<double(double, double)>& fn, const Window& win,
                 double h, double scale_meta) {
    if (h <= 0) throw std::invalid_argument("sample: spacing must be positive");
    if (win.x1 <= win.x0 || win.y1 <= win.y0)
        throw std::invalid_argument("sample: degenerate window");
    const int nx = static_cast<int>(std::floor((win.x1 - win.x0) / h + 0.5)) + 1;
    const int ny = static_cast<int>(std::floor((win.y1 - win.y0) / h + 0.5)) + 1;
    if (nx < 3 || ny < 3)
        throw std::invalid_argument("sample: window too small for minimum dims");

    GridField f;
    f.x0 = win.x0;
    f.y0 = win.y0;
    f.h = h;
    f.nx = nx;
    f.ny = ny;
    f.scale = scale_meta;
    f.values.resize(static_cast<std::size_t>(nx) * ny);
    for (int j = 0; j < ny; ++j) {
        const double y = win.y0 + j * h;
        for (int i = 0; i < nx; ++i) f.at(i, j) = fn(win.x0 + i * h, y);
    }
    for (const double v : f.values)
        if (!std::isfinite(v)) throw std::invalid_argument("sample: non-finite value");
    return f;
}

GridField sample(const Polynomial& family, const Window& win, double h, double s) {
    if (family.n_spatial() != 2)
        throw std::invalid_argument("sample: polynomial family must have n_spatial == 2");
    const CompiledPoly2 eval(family.substitute_scale(Rational(s)));
    return sample([&](double x, double y) { return eval(x, y); }, win, h, s);
}

namespace {

std::vector<double> sampled_kernel(double width, double h, int radius) {
    std::vector<double> w(static_cast<std::size_t>(2 * radius + 1));
    double sum = 0.0;
    for (int k = -radius; k <= radius; ++k) {
        const double t = k * h / width;
        w[static_cast<std::size_t>(k + radius)] = std::exp(-0.5 * t * t);
        sum += w[static_cast<std::size_t>(k + radius)];
    }
    for (double& v : w) v /= sum;
    return w;
}

double kernel_m2(const std::vector<double>& w, double h, int radius) {
    double m2 = 0.0;
    for (int k = -radius; k <= radius; ++k)
        m2 += w[static_cast<std::size_t>(k + radius)] * (k * h) * (k * h);
    return m2;
}

// Sampled Gaussian, truncated at 4 sigma and renormalized. The width
// parameter is calibrated (secant iteration) so the discrete kernel's second
// moment equals sigma^2 exactly; truncation would otherwise bias the
// diffusion rate by ~1e-3 and break the semigroup identity at the 1e-5
// level.
std::vector<double> gaussian_kernel(double sigma, double h, int radius) {
    const double target = sigma * sigma;
    double w0 = sigma;
    auto m2_of = [&](double width) {
        return kernel_m2(sampled_kernel(width, h, radius), h, radius);
    };
    double w1 = sigma * 1.02;
    double f0 = m2_of(w0) - target, f1 = m2_of(w1) - target;
    for (int it = 0; it < 30 && std::abs(f1) > 1e-16 * target; ++it) {
        if (f1 == f0) break;
        double next = w1 - f1 * (w1 - w0) / (f1 - f0);
        next = std::min(std::max(next, 0.25 * sigma), 4.0 * sigma);
        w0 = w1;
        f0 = f1;
        w1 = next;
        f1 = m2_of(w1) - target;
    }
    return sampled_kernel(w1, h, radius);
}

// One separable pass along the x axis; transpose-free by explicit indexing.
void convolve_axis(const GridField& in, GridField& out, const std::vector<double>& w,
                   int radius, bool along_x) {
    const int nx = in.nx, ny = in.ny;
    for (int j = 0; j < ny; ++j) {
        for (int i = 0; i < nx; ++i) {
            const int pos = along_x ? i : j;
            const int limit = along_x ? nx : ny;
            const int klo = std::max(-radius, -pos);
            const int khi = std::min(radius, limit - 1 - pos);
            double acc = 0.0, wsum = 0.0;
            for (int k = klo; k <= khi; ++k) {
                const double wk = w[static_cast<std::size_t>(k + radius)];
                acc += wk * (along_x ? in.at(i + k, j) : in.at(i, j + k));
                wsum += wk;
            }
            out.at(i, j) = acc / wsum;
        }
    }
}

}  // namespace

GridField blur(const GridField& field, double delta_s) {
    if (delta_s < 0) throw std::invalid_argument("blur: delta_s must be >= 0");
    if (delta_s == 0) return field;

    const double sigma = std::sqrt(2.0 * delta_s);
    if (sigma < 0.5 * field.h) {
        GridField out = field;
        out.under_resolved = true;
        return out;
    }

    const int radius = static_cast<int>(std::ceil(4.0 * sigma / field.h));
    const auto w = gaussian_kernel(sigma, field.h, radius);

    GridField tmp = field;
    convolve_axis(field, tmp, w, radius, true);
    GridField out = field;
    convolve_axis(tmp, out, w, radius, false);

    out.scale = field.scale + delta_s;
    out.blur_var = field.blur_var + 2.0 * delta_s;
    // Beyond one kernel radius the convolution never sees the boundary, so
    // the margin is a hard guarantee; it accumulates per blur.
    out.margin = field.margin + radius;
    out.under_resolved = field.under_resolved;
    return out;
}

Vec2 node_gradient(const GridField& f, int i, int j) {
    const double inv = 1.0 / (2.0 * f.h);
    return {(f.at(i + 1, j) - f.at(i - 1, j)) * inv,
            (f.at(i, j + 1) - f.at(i, j - 1)) * inv};
}

std::vector<GradientSample> gradient_vectors(const GridField& f) {
    std::vector<GradientSample> out;
    out.reserve(static_cast<std::size_t>(std::max(0, f.nx - 2)) *
                static_cast<std::size_t>(std::max(0, f.ny - 2)));
    for (int j = 1; j + 1 < f.ny; ++j)
        for (int i = 1; i + 1 < f.nx; ++i)
            out.push_back({f.x(i), f.y(j), node_gradient(f, i, j)});
    return out;
}

Vec2 interpolate_gradient(const GridField& f, const Vec2& p) {
    // Bilinear on the node gradient field, clamped one node into the interior.
    double fi = (p.x - f.x0) / f.h, fj = (p.y - f.y0) / f.h;
    fi = std::clamp(fi, 1.0, static_cast<double>(f.nx - 2));
    fj = std::clamp(fj, 1.0, static_cast<double>(f.ny - 2));
    int i = std::min(static_cast<int>(fi), f.nx - 3);
    int j = std::min(static_cast<int>(fj), f.ny - 3);
    i = std::max(i, 1);
    j = std::max(j, 1);
    const double tx = fi - i, ty = fj - j;
    const Vec2 g00 = node_gradient(f, i, j), g10 = node_gradient(f, i + 1, j);
    const Vec2 g01 = node_gradient(f, i, j + 1), g11 = node_gradient(f, i + 1, j + 1);
    const Vec2 gx0 = g00 * (1 - tx) + g10 * tx;
    const Vec2 gx1 = g01 * (1 - tx) + g11 * tx;
    return gx0 * (1 - ty) + gx1 * ty;
}

}  // namespace umbilic
