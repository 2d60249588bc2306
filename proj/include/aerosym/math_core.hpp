// Minimal 3D vector / rotation algebra with the body-frame conventions used
// throughout the library: rotation matrices carry body axes as columns, so
// inertial = R * body. Header-only; these types sit in every integrator and
// controller inner loop.
#pragma once

#include <array>
#include <cmath>

#include "aerosym/errors.hpp"

namespace aerosym {

struct Vec3 {
    double x = 0.0;
    double y = 0.0;
    double z = 0.0;

    constexpr double operator[](int i) const { return i == 0 ? x : (i == 1 ? y : z); }

    constexpr Vec3 operator+(const Vec3& o) const { return {x + o.x, y + o.y, z + o.z}; }
    constexpr Vec3 operator-(const Vec3& o) const { return {x - o.x, y - o.y, z - o.z}; }
    constexpr Vec3 operator-() const { return {-x, -y, -z}; }
    constexpr Vec3 operator*(double s) const { return {x * s, y * s, z * s}; }
    constexpr Vec3 operator/(double s) const { return {x / s, y / s, z / s}; }
    Vec3& operator+=(const Vec3& o) { x += o.x; y += o.y; z += o.z; return *this; }
    Vec3& operator-=(const Vec3& o) { x -= o.x; y -= o.y; z -= o.z; return *this; }

    constexpr double dot(const Vec3& o) const { return x * o.x + y * o.y + z * o.z; }
    constexpr Vec3 cross(const Vec3& o) const {
        return {y * o.z - z * o.y, z * o.x - x * o.z, x * o.y - y * o.x};
    }
    constexpr double norm_squared() const { return dot(*this); }
    double norm() const { return std::sqrt(norm_squared()); }
    bool is_finite() const {
        return std::isfinite(x) && std::isfinite(y) && std::isfinite(z);
    }
};

constexpr Vec3 operator*(double s, const Vec3& v) { return v * s; }

constexpr Vec3 kE1{1.0, 0.0, 0.0};
constexpr Vec3 kE2{0.0, 1.0, 0.0};
constexpr Vec3 kE3{0.0, 0.0, 1.0};

// Row-major 3x3 matrix.
struct Mat3 {
    std::array<double, 9> m{};

    static constexpr Mat3 identity() {
        return Mat3{{1, 0, 0, 0, 1, 0, 0, 0, 1}};
    }

    constexpr double operator()(int r, int c) const { return m[3 * r + c]; }
    double& operator()(int r, int c) { return m[3 * r + c]; }

    constexpr Vec3 operator*(const Vec3& v) const {
        return {m[0] * v.x + m[1] * v.y + m[2] * v.z,
                m[3] * v.x + m[4] * v.y + m[5] * v.z,
                m[6] * v.x + m[7] * v.y + m[8] * v.z};
    }

    Mat3 operator*(const Mat3& o) const {
        Mat3 r;
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j)
                r(i, j) = (*this)(i, 0) * o(0, j) + (*this)(i, 1) * o(1, j) +
                          (*this)(i, 2) * o(2, j);
        return r;
    }

    constexpr Mat3 transpose() const {
        return Mat3{{m[0], m[3], m[6], m[1], m[4], m[7], m[2], m[5], m[8]}};
    }

    // M^T * v without materializing the transpose.
    constexpr Vec3 transpose_times(const Vec3& v) const {
        return {m[0] * v.x + m[3] * v.y + m[6] * v.z,
                m[1] * v.x + m[4] * v.y + m[7] * v.z,
                m[2] * v.x + m[5] * v.y + m[8] * v.z};
    }

    Mat3 operator+(const Mat3& o) const {
        Mat3 r;
        for (int i = 0; i < 9; ++i) r.m[i] = m[i] + o.m[i];
        return r;
    }

    Mat3 operator-(const Mat3& o) const {
        Mat3 r;
        for (int i = 0; i < 9; ++i) r.m[i] = m[i] - o.m[i];
        return r;
    }

    Mat3 operator*(double s) const {
        Mat3 r;
        for (int i = 0; i < 9; ++i) r.m[i] = m[i] * s;
        return r;
    }

    double frobenius_norm() const {
        double s = 0.0;
        for (double v : m) s += v * v;
        return std::sqrt(s);
    }

    double determinant() const {
        return m[0] * (m[4] * m[8] - m[5] * m[7]) -
               m[1] * (m[3] * m[8] - m[5] * m[6]) +
               m[2] * (m[3] * m[7] - m[4] * m[6]);
    }

    constexpr Vec3 column(int c) const { return {m[c], m[3 + c], m[6 + c]}; }
};

/**
 * @brief Skew-symmetric matrix of the cross product: skew(x) * y == x.cross(y).
 */
constexpr Mat3 skew(const Vec3& x) {
    return Mat3{{0, -x.z, x.y, x.z, 0, -x.x, -x.y, x.x, 0}};
}

/**
 * @brief Vehicle attitude as a rotation matrix whose columns are the body
 *        axes expressed in the inertial frame.
 *
 * Construction from a raw matrix validates orthonormality (||R^T R - I||_F
 * and det within 1e-9). Compositions of already-valid rotations skip the
 * check.
 */
class Rotation {
public:
    Rotation() : m_(Mat3::identity()) {}

    explicit Rotation(const Mat3& m) : m_(m) {
        const Mat3 err = m.transpose() * m - Mat3::identity();
        if (err.frobenius_norm() > 1e-9 || std::abs(m.determinant() - 1.0) > 1e-9) {
            throw ConfigError("matrix is not a rotation (orthonormality or det check failed)");
        }
    }

    static Rotation identity() { return Rotation(); }

    const Mat3& matrix() const { return m_; }

    // body -> inertial
    Vec3 apply(const Vec3& v) const { return m_ * v; }
    // inertial -> body
    Vec3 apply_inverse(const Vec3& v) const { return m_.transpose_times(v); }

    Vec3 column(int c) const { return m_.column(c); }

    Rotation times(const Rotation& o) const { return Rotation(m_ * o.m_, Unchecked{}); }

    Rotation transpose() const { return Rotation(m_.transpose(), Unchecked{}); }

    double orthonormality_defect() const {
        return (m_.transpose() * m_ - Mat3::identity()).frobenius_norm();
    }

    struct Unchecked {};
    Rotation(const Mat3& m, Unchecked) : m_(m) {}

private:
    Mat3 m_;
};

/**
 * @brief Exponential map of so(3): the rotation by angle |w| about axis w/|w|.
 *
 * Rodrigues formula with a second-order series below 1e-8 rad to avoid the
 * 0/0 at the origin. Exact solution of Rdot = R * skew(w) over unit time for
 * constant w, which is what keeps integrated attitudes on SO(3).
 */
inline Rotation exp_so3(const Vec3& w) {
    const double theta2 = w.norm_squared();
    const Mat3 s = skew(w);
    const Mat3 s2 = s * s;
    double a;  // sin(t)/t
    double b;  // (1-cos(t))/t^2
    if (theta2 < 1e-8 * 1e-8) {
        a = 1.0 - theta2 / 6.0;
        b = 0.5 - theta2 / 24.0;
    } else {
        const double theta = std::sqrt(theta2);
        a = std::sin(theta) / theta;
        b = (1.0 - std::cos(theta)) / theta2;
    }
    return Rotation(Mat3::identity() + s * a + s2 * b, Rotation::Unchecked{});
}

}  // namespace aerosym
