#pragma once

#include <cmath>
#include <vector>

#include "sdlw/errors.hpp"

namespace sdlw {

/// Rectangular domain in Z x R: strips k_min..k_max, uniform t-samples.
struct GridSpec {
    int k_min = 0;
    int k_max = 1;
    double t_min = 0.0;
    double t_max = 1.0;
    double t_step = 0.1;

    int num_strips() const { return k_max - k_min + 1; }
    int num_gaps() const { return k_max - k_min; }
    int num_samples() const {
        return static_cast<int>(std::floor((t_max - t_min) / t_step + 1e-9)) + 1;
    }
    double t(int j) const { return t_min + j * t_step; }
    int k(int i) const { return k_min + i; }

    void validate() const {
        if (k_max <= k_min) throw ValidationError("grid: k_max must exceed k_min");
        if (!(t_max > t_min)) throw ValidationError("grid: t_max must exceed t_min");
        if (!(t_step > 0)) throw ValidationError("grid: t_step must be positive");
    }

    bool operator==(const GridSpec&) const = default;
};

/// Dense per-vertex storage, strip-major.
template <class T>
struct Grid {
    int nk = 0, nt = 0;
    std::vector<T> data;

    Grid() = default;
    Grid(int nk_, int nt_, T fill = T{}) : nk(nk_), nt(nt_), data(size_t(nk_) * size_t(nt_), fill) {}

    T& operator()(int i, int j) { return data[size_t(i) * size_t(nt) + size_t(j)]; }
    const T& operator()(int i, int j) const { return data[size_t(i) * size_t(nt) + size_t(j)]; }
};

} // namespace sdlw
