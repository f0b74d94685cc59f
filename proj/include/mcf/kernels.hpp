#pragma once

#include <algorithm>
#include <limits>

namespace mcf::kern {

// Maximum of f(i, j) over the n0 x n1 grid, serial reference version.
template <class F>
double grid_max_serial(int n0, int n1, F&& f) {
    double m = -std::numeric_limits<double>::infinity();
    for (int i = 0; i < n0; ++i)
        for (int j = 0; j < n1; ++j)
            m = std::max(m, static_cast<double>(f(i, j)));
    return m;
}

// Parallel version. Max-reduction is order independent, so results are
// bit-identical to the serial path regardless of thread count.
template <class F>
double grid_max(int n0, int n1, F&& f) {
#ifdef MCF_HAVE_OPENMP
    double m = -std::numeric_limits<double>::infinity();
#pragma omp parallel for collapse(2) reduction(max : m) schedule(static)
    for (int i = 0; i < n0; ++i)
        for (int j = 0; j < n1; ++j)
            m = std::max(m, static_cast<double>(f(i, j)));
    return m;
#else
    return grid_max_serial(n0, n1, f);
#endif
}

} // namespace mcf::kern
