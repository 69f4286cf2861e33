#ifndef FRACLAN_JET_HPP
#define FRACLAN_JET_HPP

#include <cmath>

namespace fraclan {

// Truncated Taylor scalar carrying a value and its first three derivatives
// with respect to a single underlying variable.  Used to propagate exact
// parameter derivatives through spectral-density formulas.
struct Jet3 {
    double v = 0.0;   // value
    double d1 = 0.0;  // first derivative
    double d2 = 0.0;  // second derivative
    double d3 = 0.0;  // third derivative

    Jet3() = default;
    explicit Jet3(double value) : v(value) {}
    Jet3(double value, double g1, double g2 = 0.0, double g3 = 0.0)
        : v(value), d1(g1), d2(g2), d3(g3) {}

    // The independent variable itself.
    static Jet3 variable(double value) { return Jet3(value, 1.0); }

    double deriv(int order) const {
        switch (order) {
            case 0: return v;
            case 1: return d1;
            case 2: return d2;
            default: return d3;
        }
    }
};

inline Jet3 operator+(const Jet3& a, const Jet3& b) {
    return {a.v + b.v, a.d1 + b.d1, a.d2 + b.d2, a.d3 + b.d3};
}
inline Jet3 operator-(const Jet3& a, const Jet3& b) {
    return {a.v - b.v, a.d1 - b.d1, a.d2 - b.d2, a.d3 - b.d3};
}
inline Jet3 operator-(const Jet3& a) { return {-a.v, -a.d1, -a.d2, -a.d3}; }
inline Jet3 operator+(const Jet3& a, double c) { return {a.v + c, a.d1, a.d2, a.d3}; }
inline Jet3 operator+(double c, const Jet3& a) { return a + c; }
inline Jet3 operator-(const Jet3& a, double c) { return {a.v - c, a.d1, a.d2, a.d3}; }
inline Jet3 operator-(double c, const Jet3& a) { return {c - a.v, -a.d1, -a.d2, -a.d3}; }
inline Jet3 operator*(const Jet3& a, double c) { return {a.v * c, a.d1 * c, a.d2 * c, a.d3 * c}; }
inline Jet3 operator*(double c, const Jet3& a) { return a * c; }
inline Jet3 operator/(const Jet3& a, double c) { return a * (1.0 / c); }

// Leibniz product rule through order three.
inline Jet3 operator*(const Jet3& a, const Jet3& b) {
    return {a.v * b.v,
            a.d1 * b.v + a.v * b.d1,
            a.d2 * b.v + 2.0 * a.d1 * b.d1 + a.v * b.d2,
            a.d3 * b.v + 3.0 * a.d2 * b.d1 + 3.0 * a.d1 * b.d2 + a.v * b.d3};
}

// Composition f(g) given derivatives f0..f3 of the outer function at g.v
// (Faa di Bruno through order three).
inline Jet3 compose(double f0, double f1, double f2, double f3, const Jet3& g) {
    const double g1 = g.d1, g2 = g.d2, g3 = g.d3;
    return {f0,
            f1 * g1,
            f2 * g1 * g1 + f1 * g2,
            f3 * g1 * g1 * g1 + 3.0 * f2 * g1 * g2 + f1 * g3};
}

inline Jet3 inverse(const Jet3& a) {
    const double iv = 1.0 / a.v;
    return compose(iv, -iv * iv, 2.0 * iv * iv * iv, -6.0 * iv * iv * iv * iv, a);
}
inline Jet3 operator/(const Jet3& a, const Jet3& b) { return a * inverse(b); }
inline Jet3 operator/(double c, const Jet3& b) { return inverse(b) * c; }

inline Jet3 exp(const Jet3& a) {
    const double e = std::exp(a.v);
    return compose(e, e, e, e, a);
}
inline Jet3 log(const Jet3& a) {
    const double iv = 1.0 / a.v;
    return compose(std::log(a.v), iv, -iv * iv, 2.0 * iv * iv * iv, a);
}
inline Jet3 sin(const Jet3& a) {
    const double s = std::sin(a.v), c = std::cos(a.v);
    return compose(s, c, -s, -c, a);
}
inline Jet3 cos(const Jet3& a) {
    const double s = std::sin(a.v), c = std::cos(a.v);
    return compose(c, -s, -c, s, a);
}
// base^e for constant base > 0.
inline Jet3 pow(double base, const Jet3& e) { return exp(e * std::log(base)); }
// a^c for constant exponent.
inline Jet3 pow(const Jet3& a, double c) {
    const double v = std::pow(a.v, c);
    const double f1 = c * std::pow(a.v, c - 1.0);
    const double f2 = c * (c - 1.0) * std::pow(a.v, c - 2.0);
    const double f3 = c * (c - 1.0) * (c - 2.0) * std::pow(a.v, c - 3.0);
    return compose(v, f1, f2, f3, a);
}

}  // namespace fraclan

#endif
