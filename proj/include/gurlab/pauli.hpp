// Spin-1/2 building blocks: Pauli matrices, single-site embeddings into a
// three-qubit register, and a few named states. Used by the spin demo and by
// tests that need states with known correlation structure.

#pragma once

#include <cmath>
#include <numbers>

#include "gurlab/hilbert.hpp"

namespace gurlab::pauli {

inline Mat identity2() { return Mat::Identity(2, 2); }

inline Mat x() {
    Mat s(2, 2);
    s << Complex(0, 0), Complex(1, 0),
         Complex(1, 0), Complex(0, 0);
    return s;
}

inline Mat y() {
    Mat s(2, 2);
    s << Complex(0, 0), Complex(0, -1),
         Complex(0, 1), Complex(0, 0);
    return s;
}

inline Mat z() {
    Mat s(2, 2);
    s << Complex(1, 0), Complex(0, 0),
         Complex(0, 0), Complex(-1, 0);
    return s;
}

// 0 -> x, 1 -> y, 2 -> z.
inline Mat axis(int k) {
    switch (k) {
        case 0: return x();
        case 1: return y();
        case 2: return z();
        default: throw PreconditionError("pauli::axis: axis index must be 0, 1, or 2");
    }
}

// Spin projection along a direction (normalized internally).
inline Mat direction(double nx, double ny, double nz) {
    const double n = std::sqrt(nx * nx + ny * ny + nz * nz);
    if (!(n > 0.0))
        throw PreconditionError("pauli::direction: zero direction vector");
    return (nx * x() + ny * y() + nz * z()) / n;
}

// s acting on one site of a three-qubit register (dim 8), identity elsewhere.
inline Mat embed3(const Mat& s, int site) {
    if (s.rows() != 2 || s.cols() != 2)
        throw DimensionError("pauli::embed3: single-site operator must be 2x2");
    const Mat id = identity2();
    switch (site) {
        case 0: return kron(kron(s, id), id);
        case 1: return kron(kron(id, s), id);
        case 2: return kron(kron(id, id), s);
        default: throw PreconditionError("pauli::embed3: site must be 0, 1, or 2");
    }
}

// (|000> + |111>)/sqrt(2).
inline Vec ghz3() {
    Vec v = Vec::Zero(8);
    const double a = 1.0 / std::numbers::sqrt2;
    v[0] = Complex(a, 0);
    v[7] = Complex(a, 0);
    return v;
}

// |000>.
inline Vec ket000() {
    Vec v = Vec::Zero(8);
    v[0] = Complex(1, 0);
    return v;
}

// chi1 (x) chi2 (x) chi3 for arbitrary single-qubit factors.
inline Vec product3(const Vec& a, const Vec& b, const Vec& c) {
    if (a.size() != 2 || b.size() != 2 || c.size() != 2)
        throw DimensionError("pauli::product3: factors must be 2-dimensional");
    Vec v(8);
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j)
            for (int k = 0; k < 2; ++k)
                v[4 * i + 2 * j + k] = a[i] * b[j] * c[k];
    return v;
}

} // namespace gurlab::pauli
