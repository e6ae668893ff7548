#pragma once

#include <array>
#include <cmath>
#include <complex>

namespace minsurf {

using cplx = std::complex<double>;

inline constexpr double kPi = 3.14159265358979323846;

struct Vec3 {
    double x = 0, y = 0, z = 0;

    Vec3 operator+(const Vec3& o) const { return {x + o.x, y + o.y, z + o.z}; }
    Vec3 operator-(const Vec3& o) const { return {x - o.x, y - o.y, z - o.z}; }
    Vec3 operator*(double s) const { return {x * s, y * s, z * s}; }
    Vec3& operator+=(const Vec3& o) { x += o.x; y += o.y; z += o.z; return *this; }
    double dot(const Vec3& o) const { return x * o.x + y * o.y + z * o.z; }
    Vec3 cross(const Vec3& o) const {
        return {y * o.z - z * o.y, z * o.x - x * o.z, x * o.y - y * o.x};
    }
    double norm() const { return std::sqrt(dot(*this)); }
    Vec3 normalized() const { double n = norm(); return n > 0 ? Vec3{x / n, y / n, z / n} : Vec3{}; }
    double operator[](int i) const { return i == 0 ? x : (i == 1 ? y : z); }
};

inline Vec3 operator*(double s, const Vec3& v) { return v * s; }

struct Mat3 {
    // row-major
    std::array<double, 9> m{1, 0, 0, 0, 1, 0, 0, 0, 1};

    static Mat3 identity() { return {}; }

    Vec3 apply(const Vec3& v) const {
        return {m[0] * v.x + m[1] * v.y + m[2] * v.z,
                m[3] * v.x + m[4] * v.y + m[5] * v.z,
                m[6] * v.x + m[7] * v.y + m[8] * v.z};
    }
    Mat3 mul(const Mat3& o) const {
        Mat3 r;
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j) {
                double s = 0;
                for (int k = 0; k < 3; ++k) s += m[3 * i + k] * o.m[3 * k + j];
                r.m[3 * i + j] = s;
            }
        return r;
    }
    Mat3 transpose() const {
        Mat3 r;
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j) r.m[3 * i + j] = m[3 * j + i];
        return r;
    }
    double orthogonality_defect() const {
        Mat3 id = mul(transpose());
        double d = 0;
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j) d = std::max(d, std::abs(id.m[3 * i + j] - (i == j ? 1.0 : 0.0)));
        return d;
    }
};

enum class MotionKind { VerticalPlaneReflection, HorizontalLineHalfTurn, VerticalTranslation, Other };

// Rigid motion p -> linear * p + shift.
struct RigidMotion {
    Mat3 linear;
    Vec3 shift;
    MotionKind kind = MotionKind::Other;

    Vec3 apply(const Vec3& p) const { return linear.apply(p) + shift; }
    RigidMotion compose(const RigidMotion& inner) const {
        // this(inner(p))
        return {linear.mul(inner.linear), linear.apply(inner.shift) + shift, MotionKind::Other};
    }

    // reflection in the vertical plane { p . n = d }, n horizontal unit vector
    static RigidMotion vertical_plane_reflection(const Vec3& n, double d);
    // half turn about the horizontal line {point + t * dir}, dir horizontal unit vector
    static RigidMotion horizontal_half_turn(const Vec3& point, const Vec3& dir);
    static RigidMotion translation(const Vec3& t);
};

inline RigidMotion RigidMotion::vertical_plane_reflection(const Vec3& n, double d) {
    RigidMotion r;
    r.kind = MotionKind::VerticalPlaneReflection;
    // I - 2 n n^T
    r.linear.m = {1 - 2 * n.x * n.x, -2 * n.x * n.y, -2 * n.x * n.z,
                  -2 * n.y * n.x, 1 - 2 * n.y * n.y, -2 * n.y * n.z,
                  -2 * n.z * n.x, -2 * n.z * n.y, 1 - 2 * n.z * n.z};
    r.shift = 2 * d * n;
    return r;
}

inline RigidMotion RigidMotion::horizontal_half_turn(const Vec3& point, const Vec3& dir) {
    RigidMotion r;
    r.kind = MotionKind::HorizontalLineHalfTurn;
    // rotation by pi about axis dir: 2 d d^T - I
    const Vec3& d = dir;
    r.linear.m = {2 * d.x * d.x - 1, 2 * d.x * d.y, 2 * d.x * d.z,
                  2 * d.y * d.x, 2 * d.y * d.y - 1, 2 * d.y * d.z,
                  2 * d.z * d.x, 2 * d.z * d.y, 2 * d.z * d.z - 1};
    r.shift = point - r.linear.apply(point);
    return r;
}

inline RigidMotion RigidMotion::translation(const Vec3& t) {
    RigidMotion r;
    r.kind = MotionKind::VerticalTranslation;
    r.shift = t;
    return r;
}

}  // namespace minsurf
