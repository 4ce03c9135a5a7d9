#pragma once

#include <array>
#include <cmath>
#include <optional>
#include <string>

namespace umbilic {

struct Vec2 {
    double x = 0.0, y = 0.0;

    Vec2 operator+(const Vec2& o) const { return {x + o.x, y + o.y}; }
    Vec2 operator-(const Vec2& o) const { return {x - o.x, y - o.y}; }
    Vec2 operator*(double k) const { return {x * k, y * k}; }
    double dot(const Vec2& o) const { return x * o.x + y * o.y; }
    double norm() const { return std::hypot(x, y); }
    Vec2 normalized() const {
        const double n = norm();
        return n > 0 ? Vec2{x / n, y / n} : Vec2{0, 0};
    }
};

inline double distance(const Vec2& a, const Vec2& b) { return (a - b).norm(); }

struct SymMat2 {
    double a11 = 0.0, a12 = 0.0, a22 = 0.0;

    double det() const { return a11 * a22 - a12 * a12; }
    double trace() const { return a11 + a22; }
    Vec2 apply(const Vec2& v) const {
        return {a11 * v.x + a12 * v.y, a12 * v.x + a22 * v.y};
    }
    // H * step = rhs; returns nullopt when |det| is zero.
    std::optional<Vec2> solve(const Vec2& rhs) const {
        const double d = det();
        if (d == 0.0) return std::nullopt;
        return Vec2{(a22 * rhs.x - a12 * rhs.y) / d, (a11 * rhs.y - a12 * rhs.x) / d};
    }
};

struct EigenPair {
    double lambda = 0.0;
    Vec2 vec{};
};

// Eigen-decomposition of a symmetric 2x2, ascending by eigenvalue.
std::array<EigenPair, 2> sym_eigen(const SymMat2& m);

enum class Morse { Min, Max, Saddle, Degenerate };

// Min when both eigenvalues exceed eps, Max when both are below -eps,
// Degenerate when the smaller magnitude is within eps, Saddle otherwise.
Morse classify_eigen(double l1, double l2, double eps);

// Count of negative eigenvalues; -1 for degenerate points.
int morse_index(double l1, double l2, double eps);

std::string morse_name(Morse m);
// Report wording: a both-positive critical point is announced as a "summit".
std::string morse_display(Morse m);

// Branch labels of the built-in cubic family's critical point branches.
enum class Branch { Pc1Plus, Pc1Minus, Pc2Plus, Pc2Minus };

std::string branch_name(Branch b);

struct CriticalPoint {
    Vec2 pos{};
    double s = 0.0;
    double z = 0.0;
    SymMat2 hessian{};
    std::array<EigenPair, 2> eigen{};
    Morse morse = Morse::Degenerate;
    int index = -1;  // Morse index; -1 when degenerate
    std::optional<Branch> branch{};
    bool refined = true;  // false when subpixel refinement fell back to the cell center
};

}  // namespace umbilic
