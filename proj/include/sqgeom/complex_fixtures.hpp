#pragma once

// Small complexes and presentations of known type, used to exercise the
// homology and enumeration machinery.

#include "sqgeom/toddcox.hpp"
#include "sqgeom/topology.hpp"

namespace sqgeom::topology::fixtures {

/// Boundary of the 3-simplex: a 2-sphere.  H1 = 0.
inline TwoComplex tetrahedron() {
    return complex_from_triangles(4, {{0, 1, 2}, {0, 1, 3}, {0, 2, 3}, {1, 2, 3}});
}

/// 7-vertex torus: triangles {i, i+1, i+3} and {i, i+2, i+3} mod 7.  H1 = Z^2.
inline TwoComplex torus7() {
    std::vector<std::array<std::uint32_t, 3>> tris;
    for (std::uint32_t i = 0; i < 7; ++i) {
        tris.push_back({i, (i + 1) % 7, (i + 3) % 7});
        tris.push_back({i, (i + 2) % 7, (i + 3) % 7});
    }
    return complex_from_triangles(7, std::move(tris));
}

/// 6-vertex real projective plane.  H1 = Z/2.
inline TwoComplex projective_plane6() {
    return complex_from_triangles(6, {{0, 1, 2},
                                      {0, 1, 3},
                                      {0, 2, 4},
                                      {0, 3, 5},
                                      {0, 4, 5},
                                      {1, 2, 5},
                                      {1, 3, 4},
                                      {1, 4, 5},
                                      {2, 3, 4},
                                      {2, 3, 5}});
}

/// <a, b | a^2, b^2, (ab)^3>: the symmetric group on three letters, order 6.
inline GroupPresentation symmetric3() {
    return GroupPresentation{2, {{1, 1}, {2, 2}, {1, 2, 1, 2, 1, 2}}};
}

/// <a | a>: the trivial group.
inline GroupPresentation single_relator_trivial() {
    return GroupPresentation{1, {{1}}};
}

} // namespace sqgeom::topology::fixtures
