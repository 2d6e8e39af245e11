#pragma once

#include <cmath>
#include <cstddef>
#include <limits>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace isop {

using Vec = std::vector<double>;

inline constexpr double kInf = std::numeric_limits<double>::infinity();
inline constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();
inline constexpr double kE = 2.718281828459045235360287471352662498;
inline constexpr double kPi = 3.141592653589793238462643383279502884;
inline constexpr double kSqrt2Pi = 2.506628274631000502415765284811045253;

/// Base class for domain errors raised by the library.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Potential with a tail too heavy (or flat) to normalize.
struct NonIntegrableError : Error {
    using Error::Error;
};

/// Modulus without the superlinear growth a moment-generating integral needs.
struct NotUniformlyConvexError : Error {
    using Error::Error;
};

/// Failed precondition on user input.
struct PreconditionError : Error {
    using Error::Error;
};

inline double sqr(double x) { return x * x; }

inline double dot(std::span<const double> a, std::span<const double> b) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

inline double norm2(std::span<const double> a) { return std::sqrt(dot(a, a)); }

inline Vec scaled_vec(std::span<const double> a, double c) {
    Vec r(a.begin(), a.end());
    for (double& v : r) v *= c;
    return r;
}

inline Vec add_vec(std::span<const double> a, std::span<const double> b) {
    Vec r(a.begin(), a.end());
    for (std::size_t i = 0; i < b.size(); ++i) r[i] += b[i];
    return r;
}

inline Vec sub_vec(std::span<const double> a, std::span<const double> b) {
    Vec r(a.begin(), a.end());
    for (std::size_t i = 0; i < b.size(); ++i) r[i] -= b[i];
    return r;
}

inline Vec linspace(double lo, double hi, int count) {
    if (count < 2) throw PreconditionError("linspace: need at least two points");
    Vec g(static_cast<std::size_t>(count));
    for (int i = 0; i < count; ++i)
        g[static_cast<std::size_t>(i)] = lo + (hi - lo) * static_cast<double>(i) / (count - 1);
    return g;
}

/// Geometric grid from lo to hi (both positive); endpoints are exact.
inline Vec logspace(double lo, double hi, int count) {
    if (lo <= 0.0 || hi <= 0.0) throw PreconditionError("logspace: endpoints must be positive");
    Vec g = linspace(std::log(lo), std::log(hi), count);
    for (double& v : g) v = std::exp(v);
    g.front() = lo;
    g.back() = hi;
    return g;
}

}  // namespace isop
