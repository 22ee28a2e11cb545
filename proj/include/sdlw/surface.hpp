#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "sdlw/ambient.hpp"
#include "sdlw/grid.hpp"

namespace sdlw {

enum class Family { Minimal, Maximal, BrLW, BiLW };

struct Provenance {
    Family family = Family::Minimal;
    double eps = 1;     // +1 minimal, -1 maximal
    double s = 0;       // Weingarten genericity constant (curved families)
    double lambda = 0;  // frame spectral parameter (curved families)
    double theta = 0;   // accumulated parallel offset, 0 for base surfaces
    bool parallel = false;
};

/// Semi-discrete Legendre immersion sampled on a grid: positions x, unit
/// normals n and their analytic t-derivatives. Samples where the construction
/// degenerates (maximal case at |g| = 1) are marked invalid, and the bracketed
/// crossing parameters are kept per strip so the pieces stay separate.
struct SemiDiscreteSurface {
    GridSpec grid;
    AmbientMetric ambient;
    Grid<Vec4> x, n, dx, dn;
    Grid<std::uint8_t> valid;
    Grid<std::int8_t> sheet;  // sign of 1+s|g|^2 (H3 sheets); 0 when unused
    std::vector<std::vector<double>> crossings;  // per strip, t of denominator sign changes
    Provenance provenance;

    int num_strips() const { return grid.num_strips(); }
    int num_samples() const { return grid.num_samples(); }

    bool vertex_valid(int i, int j) const { return valid(i, j) != 0; }
    bool edge_valid(int i, int j) const { return valid(i, j) != 0 && valid(i + 1, j) != 0; }

    /// Piece index of sample j on strip i (count of crossings below t_j).
    int piece_of(int i, int j) const {
        const double t = grid.t(j);
        int p = 0;
        for (double c : crossings[(size_t)i])
            if (c < t) ++p;
        return p;
    }

    /// Contiguous valid sample ranges [lo, hi] of strip i, split at crossings.
    std::vector<std::pair<int, int>> pieces(int i) const;
};

} // namespace sdlw
