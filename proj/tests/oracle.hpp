#pragma once

// Test-only numeric oracles, kept independent of the library's symbolic
// machinery: plain double bisection against hand-entered polynomials.

#include <cmath>
#include <functional>
#include <vector>

#include "betaforge/rational.hpp"

namespace oracle {

// Root of f in (lo, hi) by bisection, assuming f(lo) < 0 < f(hi).
inline double bisect(const std::function<double(double)>& f, double lo, double hi) {
    for (int i = 0; i < 200; ++i) {
        double mid = (lo + hi) / 2;
        if (f(mid) < 0)
            lo = mid;
        else
            hi = mid;
    }
    return (lo + hi) / 2;
}

// Unique positive root of sum a_i x^i - 1 for nonnegative a_i.
inline double subdivision_root(const std::vector<long>& coeffs) {
    auto f = [&](double x) {
        double acc = -1.0;
        double p = 1.0;
        for (long a : coeffs) {
            p *= x;
            acc += a * p;
        }
        return acc;
    };
    return bisect(f, 0.0, 1.0);
}

inline double midpoint(const betaforge::RootInterval& iv) {
    return betaforge::to_double(iv.midpoint());
}

inline bool encloses(const betaforge::RootInterval& iv, double x, double slack = 1e-9) {
    return betaforge::to_double(iv.lo) - slack <= x && x <= betaforge::to_double(iv.hi) + slack;
}

} // namespace oracle
