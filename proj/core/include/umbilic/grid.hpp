#pragma once

#include <umbilic/geometry.hpp>
#include <umbilic/polynomial.hpp>
#include <umbilic/rational.hpp>

#include <functional>
#include <vector>

namespace umbilic {

struct Window {
    double x0 = 0, y0 = 0, x1 = 0, y1 = 0;
};

// Uniformly sampled scalar field at one scale. Square spacing in both axes.
// `margin` counts boundary-affected cells (grows with numeric blurring);
// detections inside the margin are discarded by the detector.
struct GridField {
    double x0 = 0.0, y0 = 0.0;
    double h = 0.0;
    int nx = 0, ny = 0;
    std::vector<double> values;

    double scale = 0.0;       // s metadata
    double blur_var = 0.0;    // per-axis variance accumulated by numeric blurs
    int margin = 0;           // boundary-affected cells on each side
    bool under_resolved = false;  // set when a blur was skipped (sigma < h/2)

    double& at(int i, int j) { return values[static_cast<std::size_t>(j) * nx + i]; }
    double at(int i, int j) const { return values[static_cast<std::size_t>(j) * nx + i]; }
    double x(int i) const { return x0 + i * h; }
    double y(int j) const { return y0 + j * h; }
};

// values[i][j] = fn(x0 + i h, y0 + j h). Throws when the window covers fewer
// than 3 nodes per axis or h <= 0.
GridField sample(const std::function<double(double, double)>& fn, const Window& win,
                 double h, double scale_meta = 0.0);

// Samples a polynomial family (n_spatial == 2) at a fixed scale.
GridField sample(const Polynomial& family, const Window& win, double h, double s);

// Separable discrete convolution with a Gaussian of per-axis standard
// deviation sqrt(2 delta_s), truncated at 4 sigma and renormalized (the
// sampled kernel is calibrated to carry the exact second moment 2 delta_s);
// near the boundary the clipped kernel is renormalized over in-bounds
// samples. The output scale is input scale + delta_s and the margin grows by
// the kernel radius. A blur with sigma < h/2 returns the input unchanged with
// under_resolved set.
GridField blur(const GridField& field, double delta_s);

struct GradientSample {
    double x, y;
    Vec2 g;
};

// Central differences at every interior node.
std::vector<GradientSample> gradient_vectors(const GridField& field);

// Central-difference gradient at node (i, j); valid for 1 <= i <= nx-2.
Vec2 node_gradient(const GridField& field, int i, int j);

// Bilinear interpolation of the central-difference gradient at a point
// (clamped to the interior).
Vec2 interpolate_gradient(const GridField& field, const Vec2& p);

}  // namespace umbilic
