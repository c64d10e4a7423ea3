#pragma once

#include "oy/common.hpp"

#include <algorithm>

namespace oy {

// Truncated Taylor series in one complex variable about a fixed point.
// Coefficient k is the k-th derivative divided by k!. Used to extract
// residues of integrands with a higher-order pole at the expansion point.
struct Jet {
    std::vector<cd> c;

    explicit Jet(int len) : c(len, cd(0.0)) {}
    static Jet constant(cd v, int len) {
        Jet j(len);
        j.c[0] = v;
        return j;
    }
    static Jet variable(cd v0, int len) {
        Jet j(len);
        j.c[0] = v0;
        if (len > 1) j.c[1] = 1.0;
        return j;
    }
    int len() const { return static_cast<int>(c.size()); }
};

inline Jet operator+(const Jet& a, const Jet& b) {
    Jet r(a.len());
    for (int i = 0; i < a.len(); ++i) r.c[i] = a.c[i] + b.c[i];
    return r;
}

inline Jet operator-(const Jet& a, const Jet& b) {
    Jet r(a.len());
    for (int i = 0; i < a.len(); ++i) r.c[i] = a.c[i] - b.c[i];
    return r;
}

inline Jet operator*(const Jet& a, const Jet& b) {
    Jet r(a.len());
    for (int i = 0; i < a.len(); ++i)
        for (int j = 0; i + j < a.len(); ++j) r.c[i + j] += a.c[i] * b.c[j];
    return r;
}

inline Jet operator*(cd s, const Jet& a) {
    Jet r(a.len());
    for (int i = 0; i < a.len(); ++i) r.c[i] = s * a.c[i];
    return r;
}

// exp of a jet: standard recurrence e' = e * f'.
inline Jet jet_exp(const Jet& f) {
    Jet e(f.len());
    e.c[0] = std::exp(f.c[0]);
    for (int n = 1; n < f.len(); ++n) {
        cd acc(0.0);
        for (int k = 1; k <= n; ++k) acc += double(k) * f.c[k] * e.c[n - k];
        e.c[n] = acc / double(n);
    }
    return e;
}

// reciprocal of a jet (constant term must be nonzero).
inline Jet jet_recip(const Jet& f) {
    Jet r(f.len());
    r.c[0] = 1.0 / f.c[0];
    for (int n = 1; n < f.len(); ++n) {
        cd acc(0.0);
        for (int k = 1; k <= n; ++k) acc += f.c[k] * r.c[n - k];
        r.c[n] = -acc / f.c[0];
    }
    return r;
}

// 1/(v - p) expanded about v = 0, valid for |v| < |p|.
inline Jet jet_inv_linear(cd p, int len) {
    Jet r(len);
    cd t = -1.0 / p;
    for (int i = 0; i < len; ++i) {
        r.c[i] = t;
        t /= p;
    }
    return r;
}

} // namespace oy
