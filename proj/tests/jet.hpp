#pragma once

#include <cmath>

// Second-order forward-mode number: value, first and second derivative in one
// variable. Enough arithmetic for relax_xlnx_t.
struct Jet {
    double v = 0.0, d1 = 0.0, d2 = 0.0;

    static Jet variable(double x) { return {x, 1.0, 0.0}; }
    double value() const { return v; }

    friend Jet operator+(Jet a, Jet b) { return {a.v + b.v, a.d1 + b.d1, a.d2 + b.d2}; }
    friend Jet operator-(Jet a, Jet b) { return {a.v - b.v, a.d1 - b.d1, a.d2 - b.d2}; }
    friend Jet operator-(Jet a, double b) { return {a.v - b, a.d1, a.d2}; }
    friend Jet operator*(Jet a, Jet b) {
        return {a.v * b.v, a.d1 * b.v + a.v * b.d1, a.d2 * b.v + 2.0 * a.d1 * b.d1 + a.v * b.d2};
    }
    friend Jet operator*(double s, Jet a) { return {s * a.v, s * a.d1, s * a.d2}; }
    friend Jet log(Jet a) { return {std::log(a.v), a.d1 / a.v, a.d2 / a.v - a.d1 * a.d1 / (a.v * a.v)}; }
};
