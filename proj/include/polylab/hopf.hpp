#pragma once

#include <complex>
#include <stdexcept>
#include <vector>

#include "polylab/vec.hpp"

namespace polylab::hopf {

// Hamilton convention throughout: ij = k, jk = i, ki = j.
struct Quaternion {
    double q0 = 0.0, q1 = 0.0, q2 = 0.0, q3 = 0.0;

    double norm2() const { return q0 * q0 + q1 * q1 + q2 * q2 + q3 * q3; }

    Quaternion conjugate() const { return {q0, -q1, -q2, -q3}; }

    Quaternion operator*(const Quaternion& b) const {
        return {
            q0 * b.q0 - q1 * b.q1 - q2 * b.q2 - q3 * b.q3,
            q0 * b.q1 + q1 * b.q0 + q2 * b.q3 - q3 * b.q2,
            q0 * b.q2 - q1 * b.q3 + q2 * b.q0 + q3 * b.q1,
            q0 * b.q3 + q1 * b.q2 - q2 * b.q1 + q3 * b.q0,
        };
    }
};

// q = a + b*j with a, b complex.
struct ComplexPair {
    std::complex<double> a{0.0, 0.0};
    std::complex<double> b{0.0, 0.0};

    Quaternion to_quaternion() const { return {a.real(), a.imag(), b.real(), b.imag()}; }
};

// conj(q) * i * q written out in coordinates. |hopf_map(q)| = |q|^2.
inline Vec3 hopf_map(const Quaternion& q) {
    return {
        q.q0 * q.q0 + q.q1 * q.q1 - q.q2 * q.q2 - q.q3 * q.q3,
        2.0 * (q.q1 * q.q2 - q.q0 * q.q3),
        2.0 * (q.q0 * q.q2 + q.q1 * q.q3),
    };
}

// Same map in split-complex form: (|a|^2 - |b|^2, 2 Im(a conj(b)), 2 Re(a conj(b))).
inline Vec3 hopf_map_complex(const ComplexPair& p) {
    const std::complex<double> ab = p.a * std::conj(p.b);
    return {std::norm(p.a) - std::norm(p.b), 2.0 * ab.imag(), 2.0 * ab.real()};
}

enum class PlanarComponent { first, second };

inline Vec2 hopf_map_planar_one(double x, double y) {
    return {x * x - y * y, 2.0 * x * y};
}

// Planar restriction: z_i = x_i + y_i*j (component first) or i*z_i (component
// second). Both land in the i-k coordinate plane; the middle coordinate of the
// full map vanishes identically, and we keep (first, third) as the R^2 image.
inline std::vector<Vec2> hopf_map_planar(const std::vector<double>& x,
                                         const std::vector<double>& y,
                                         PlanarComponent component) {
    if (x.size() != y.size())
        throw std::invalid_argument("hopf_map_planar: coordinate vectors differ in length");
    (void)component;  // both restrictions share the same coordinate image
    std::vector<Vec2> edges(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) edges[i] = hopf_map_planar_one(x[i], y[i]);
    return edges;
}

// Rotation of an imaginary quaternion v by a unit quaternion w: Im(conj(w) v w).
// This is the SO(3) action under which the Hopf map is equivariant.
inline Vec3 rotate_by_unit_quaternion(const Vec3& v, const Quaternion& w) {
    const Quaternion vq{0.0, v.x, v.y, v.z};
    const Quaternion r = w.conjugate() * vq * w;
    return {r.q1, r.q2, r.q3};
}

}  // namespace polylab::hopf
