#pragma once

#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <vector>

namespace jsant {

using Vec = std::vector<double>;

inline double dot(const Vec& a, const Vec& b) {
    if (a.size() != b.size()) throw std::invalid_argument("dot: dimension mismatch");
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

inline double norm2(const Vec& a) { return std::sqrt(dot(a, a)); }

inline double norm_p(const Vec& a, double p) {
    double s = 0.0;
    for (double c : a) s += std::pow(std::abs(c), p);
    return std::pow(s, 1.0 / p);
}

inline Vec operator+(const Vec& a, const Vec& b) {
    if (a.size() != b.size()) throw std::invalid_argument("vec+: dimension mismatch");
    Vec r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] + b[i];
    return r;
}

inline Vec operator-(const Vec& a, const Vec& b) {
    if (a.size() != b.size()) throw std::invalid_argument("vec-: dimension mismatch");
    Vec r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] - b[i];
    return r;
}

inline Vec operator*(double t, const Vec& a) {
    Vec r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = t * a[i];
    return r;
}

inline Vec operator-(const Vec& a) { return -1.0 * a; }

inline Vec unit(const Vec& a) {
    double n = norm2(a);
    if (n == 0.0) throw std::invalid_argument("unit: zero vector");
    return (1.0 / n) * a;
}

inline Vec basis_vector(int n, int m) {
    Vec e(static_cast<std::size_t>(n), 0.0);
    e[static_cast<std::size_t>(m)] = 1.0;
    return e;
}

}  // namespace jsant
