// Honeycomb clusters with open boundaries.  Bond length a = 1; the patch is
// centered on a plaquette center, which keeps the two sublattices balanced
// for symmetric cuts.

#pragma once

#include <array>
#include <cstddef>
#include <vector>

namespace zm {

enum class PatchShape { disk, rectangle };

struct Site {
    double x = 0.0;
    double y = 0.0;
    int sublattice = 0;  // 0 = A, 1 = B
};

struct Bond {
    int a = 0;  // A-site index
    int b = 0;  // B-site index
};

// Hexagonal plaquette: the 6 member sites in loop order.
using Plaquette = std::array<int, 6>;

struct HoneycombPatch {
    PatchShape shape = PatchShape::disk;
    double radius = 0.0;        // disk
    int n1 = 0, n2 = 0;         // rectangle (unit cells)
    std::vector<Site> sites;
    std::vector<Bond> bonds;
    std::vector<Plaquette> plaquettes;  // complete hexagons inside the patch
    int count_A = 0;
    int count_B = 0;

    std::size_t size() const { return sites.size(); }
    // largest site distance from the center (bulk-filter length scale)
    double extent() const;
    std::vector<int> degrees() const;
};

// Disk of the given radius (in bond lengths) about a plaquette center.
HoneycombPatch build_patch_disk(double radius);

// n1 x n2 primitive cells (open parallelogram cluster), 2 sites per cell.
HoneycombPatch build_patch_rectangle(int n1, int n2);

} // namespace zm
