#pragma once

// Forward-mode dual numbers; second derivatives by nesting Dual<Dual<double>>.

#include <cmath>
#include <type_traits>

namespace dirichlet {

template <class T> struct Dual {
    T a{}; // value
    T b{}; // derivative part

    Dual() = default;
    Dual(T value, T deriv) : a(value), b(deriv) {}
    // Implicit lift of constants.
    Dual(double c) : a(c), b() {} // NOLINT(google-explicit-constructor)
};

inline double scalar_value(double x) { return x; }
template <class T> double scalar_value(const Dual<T>& x) { return scalar_value(x.a); }

template <class T> Dual<T> operator+(const Dual<T>& x, const Dual<T>& y) { return {x.a + y.a, x.b + y.b}; }
template <class T> Dual<T> operator-(const Dual<T>& x, const Dual<T>& y) { return {x.a - y.a, x.b - y.b}; }
template <class T> Dual<T> operator-(const Dual<T>& x) { return {-x.a, -x.b}; }
template <class T> Dual<T> operator*(const Dual<T>& x, const Dual<T>& y) {
    return {x.a * y.a, x.a * y.b + x.b * y.a};
}
template <class T> Dual<T> operator/(const Dual<T>& x, const Dual<T>& y) {
    const T q = x.a / y.a;
    return {q, (x.b - q * y.b) / y.a};
}

template <class T> Dual<T> operator+(double c, const Dual<T>& x) { return Dual<T>(c) + x; }
template <class T> Dual<T> operator+(const Dual<T>& x, double c) { return x + Dual<T>(c); }
template <class T> Dual<T> operator-(double c, const Dual<T>& x) { return Dual<T>(c) - x; }
template <class T> Dual<T> operator-(const Dual<T>& x, double c) { return x - Dual<T>(c); }
template <class T> Dual<T> operator*(double c, const Dual<T>& x) { return Dual<T>(c) * x; }
template <class T> Dual<T> operator*(const Dual<T>& x, double c) { return x * Dual<T>(c); }
template <class T> Dual<T> operator/(double c, const Dual<T>& x) { return Dual<T>(c) / x; }
template <class T> Dual<T> operator/(const Dual<T>& x, double c) { return x / Dual<T>(c); }

template <class T> Dual<T> sin(const Dual<T>& x) {
    using std::cos;
    using std::sin;
    return {sin(x.a), cos(x.a) * x.b};
}
template <class T> Dual<T> cos(const Dual<T>& x) {
    using std::cos;
    using std::sin;
    return {cos(x.a), -sin(x.a) * x.b};
}
template <class T> Dual<T> exp(const Dual<T>& x) {
    using std::exp;
    const T e = exp(x.a);
    return {e, e * x.b};
}
template <class T> Dual<T> log(const Dual<T>& x) {
    using std::log;
    return {log(x.a), x.b / x.a};
}
template <class T> Dual<T> sqrt(const Dual<T>& x) {
    using std::sqrt;
    const T r = sqrt(x.a);
    return {r, x.b / (2.0 * r)};
}
template <class T> Dual<T> atan(const Dual<T>& x) {
    using std::atan;
    return {atan(x.a), x.b / (1.0 + x.a * x.a)};
}

// Integer power by repeated squaring on the chain-rule form x^k -> k x^(k-1).
template <class T> T pow_int(const T& x, int k) {
    if (k == 0) return T(1.0);
    if (k < 0) return T(1.0) / pow_int(x, -k);
    T result = x;
    T acc(1.0);
    int e = k;
    while (e > 1) {
        if (e % 2 == 1) acc = acc * result;
        result = result * result;
        e /= 2;
    }
    return acc * result;
}
inline double pow_int(const double& x, int k) {
    if (k == 0) return 1.0;
    if (k < 0) return 1.0 / pow_int(x, -k);
    double result = x, acc = 1.0;
    int e = k;
    while (e > 1) {
        if (e % 2 == 1) acc *= result;
        result *= result;
        e /= 2;
    }
    return acc * result;
}

using Dual1 = Dual<double>;
using Dual2 = Dual<Dual<double>>;

} // namespace dirichlet
