#include "sdlw/surface.hpp"

namespace sdlw {

std::vector<std::pair<int, int>> SemiDiscreteSurface::pieces(int i) const {
    std::vector<std::pair<int, int>> out;
    const int nt = num_samples();
    int j = 0;
    while (j < nt) {
        if (!vertex_valid(i, j)) {
            ++j;
            continue;
        }
        int lo = j;
        int p = piece_of(i, lo);
        while (j + 1 < nt && vertex_valid(i, j + 1) && piece_of(i, j + 1) == p) ++j;
        out.emplace_back(lo, j);
        ++j;
    }
    return out;
}

} // namespace sdlw
