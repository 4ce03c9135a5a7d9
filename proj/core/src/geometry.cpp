#include <umbilic/geometry.hpp>

#include <algorithm>
#include <cmath>

namespace umbilic {

std::array<EigenPair, 2> sym_eigen(const SymMat2& m) {
    const double mid = 0.5 * (m.a11 + m.a22);
    const double half_gap = 0.5 * (m.a11 - m.a22);
    const double disc = std::hypot(half_gap, m.a12);
    const double l1 = mid - disc, l2 = mid + disc;

    auto vector_for = [&](double lambda) -> Vec2 {
        // Row with the larger residual gives the numerically better vector.
        const Vec2 r1{m.a11 - lambda, m.a12};
        const Vec2 r2{m.a12, m.a22 - lambda};
        const Vec2 r = r1.norm() >= r2.norm() ? r1 : r2;
        if (r.norm() == 0.0) return {1.0, 0.0};  // multiple eigenvalue
        Vec2 v{-r.y, r.x};  // orthogonal to the chosen row
        v = v.normalized();
        if (v.x < 0 || (v.x == 0 && v.y < 0)) v = v * -1.0;
        return v;
    };

    EigenPair lo{l1, vector_for(l1)};
    EigenPair hi{l2, vector_for(l2)};
    if (disc == 0.0) {  // isotropic: fixed orthonormal pair
        lo.vec = {1.0, 0.0};
        hi.vec = {0.0, 1.0};
    }
    return {lo, hi};
}

Morse classify_eigen(double l1, double l2, double eps) {
    if (std::min(std::abs(l1), std::abs(l2)) <= eps) return Morse::Degenerate;
    if (l1 > 0 && l2 > 0) return Morse::Min;
    if (l1 < 0 && l2 < 0) return Morse::Max;
    return Morse::Saddle;
}

int morse_index(double l1, double l2, double eps) {
    if (classify_eigen(l1, l2, eps) == Morse::Degenerate) return -1;
    return (l1 < 0 ? 1 : 0) + (l2 < 0 ? 1 : 0);
}

std::string morse_name(Morse m) {
    switch (m) {
        case Morse::Min: return "min";
        case Morse::Max: return "max";
        case Morse::Saddle: return "saddle";
        case Morse::Degenerate: return "degenerate";
    }
    return "?";
}

std::string morse_display(Morse m) {
    switch (m) {
        case Morse::Min: return "summit (min)";
        case Morse::Max: return "max";
        case Morse::Saddle: return "col (saddle)";
        case Morse::Degenerate: return "degenerate";
    }
    return "?";
}

std::string branch_name(Branch b) {
    switch (b) {
        case Branch::Pc1Plus: return "pc1+";
        case Branch::Pc1Minus: return "pc1-";
        case Branch::Pc2Plus: return "pc2+";
        case Branch::Pc2Minus: return "pc2-";
    }
    return "?";
}

}  // namespace umbilic
