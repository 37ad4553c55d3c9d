#include "zeromode/honeycomb.hpp"

#include "zeromode/errors.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <map>
#include <tuple>

namespace zm {

namespace {

// a1 = (sqrt3, 0), a2 = (sqrt3/2, 3/2); A at the cell origin, B at (0,1).
constexpr double kSqrt3 = 1.7320508075688772935;

struct CellKey {
    int i, j, s;
    bool operator<(const CellKey& o) const {
        return std::tie(i, j, s) < std::tie(o.i, o.j, o.s);
    }
};

std::pair<double, double> site_pos(int i, int j, int s) {
    const double x = i * kSqrt3 + j * (kSqrt3 / 2.0);
    const double y = j * 1.5 + (s == 1 ? 1.0 : 0.0);
    return {x, y};
}

HoneycombPatch assemble(PatchShape shape, int irange,
                        const std::function<bool(int, int, int)>& keep_cell,
                        double center_x, double center_y) {
    HoneycombPatch patch;
    patch.shape = shape;

    std::map<CellKey, int> index;
    for (int i = -irange; i <= irange; ++i)
        for (int j = -irange; j <= irange; ++j)
            for (int s : {0, 1})
                if (keep_cell(i, j, s)) index[{i, j, s}] = -1;

    // keep only sites with at least one bond
    auto has = [&](int i, int j, int s) { return index.count({i, j, s}) != 0; };
    std::vector<CellKey> order;
    for (auto& [key, idx] : index) {
        bool bonded;
        if (key.s == 0)
            bonded = has(key.i, key.j, 1) || has(key.i, key.j - 1, 1) ||
                     has(key.i + 1, key.j - 1, 1);
        else
            bonded = has(key.i, key.j, 0) || has(key.i, key.j + 1, 0) ||
                     has(key.i - 1, key.j + 1, 0);
        if (bonded) order.push_back(key);
    }
    index.clear();
    for (const CellKey& key : order) {
        index[key] = static_cast<int>(patch.sites.size());
        auto [x, y] = site_pos(key.i, key.j, key.s);
        patch.sites.push_back({x - center_x, y - center_y, key.s});
        (key.s == 0 ? patch.count_A : patch.count_B)++;
    }
    auto at = [&](int i, int j, int s) -> int {
        auto it = index.find({i, j, s});
        return it == index.end() ? -1 : it->second;
    };
    for (const CellKey& key : order) {
        if (key.s != 0) continue;
        const int ia = index[key];
        for (auto [bi, bj] : {std::pair{key.i, key.j}, {key.i, key.j - 1},
                              {key.i + 1, key.j - 1}}) {
            const int ib = at(bi, bj, 1);
            if (ib >= 0) patch.bonds.push_back({ia, ib});
        }
    }
    // complete hexagons, counter-clockwise so the directed phase sum equals
    // the enclosed flux with the +z normal:
    // A(i,j), B(i+1,j-1), A(i+1,j), B(i+1,j), A(i,j+1), B(i,j)
    for (const CellKey& key : order) {
        if (key.s != 0) continue;
        const int i = key.i, j = key.j;
        const int v0 = at(i, j, 0), v1 = at(i + 1, j - 1, 1), v2 = at(i + 1, j, 0);
        const int v3 = at(i + 1, j, 1), v4 = at(i, j + 1, 0), v5 = at(i, j, 1);
        if (v0 >= 0 && v1 >= 0 && v2 >= 0 && v3 >= 0 && v4 >= 0 && v5 >= 0)
            patch.plaquettes.push_back({v0, v1, v2, v3, v4, v5});
    }
    if (patch.sites.size() < 100)
        throw argument_error("build_patch: size yields fewer than 100 sites");
    return patch;
}

} // namespace

double HoneycombPatch::extent() const {
    double r = 0.0;
    for (const Site& s : sites) r = std::max(r, std::hypot(s.x, s.y));
    return r;
}

std::vector<int> HoneycombPatch::degrees() const {
    std::vector<int> deg(sites.size(), 0);
    for (const Bond& b : bonds) {
        deg[b.a]++;
        deg[b.b]++;
    }
    return deg;
}

HoneycombPatch build_patch_disk(double radius) {
    if (!(radius > 0.0)) throw argument_error("build_patch: radius must be positive");
    // center on the plaquette center at (sqrt3/2, 1/2); the disk cut is then
    // inversion-symmetric, which balances the sublattices exactly
    const double cx = kSqrt3 / 2.0, cy = 0.5;
    const int irange = static_cast<int>(radius / 1.4) + 3;
    auto patch = assemble(
        PatchShape::disk, irange,
        [&](int i, int j, int s) {
            auto [x, y] = site_pos(i, j, s);
            return (x - cx) * (x - cx) + (y - cy) * (y - cy) <= radius * radius;
        },
        cx, cy);
    patch.radius = radius;
    return patch;
}

HoneycombPatch build_patch_rectangle(int n1, int n2) {
    if (n1 < 2 || n2 < 2)
        throw argument_error("build_patch: rectangle needs at least 2x2 cells");
    // parallelogram cluster of n1 x n2 primitive cells, centered on its
    // inversion center (which again balances the sublattices)
    const double cx = (n1 - 1) * kSqrt3 / 2.0 + (n2 - 1) * kSqrt3 / 4.0;
    const double cy = (n2 - 1) * 0.75 + 0.5;
    auto patch = assemble(
        PatchShape::rectangle, n1 + n2 + 2,
        [&](int i, int j, int s) {
            (void)s;
            return i >= 0 && i < n1 && j >= 0 && j < n2;
        },
        cx, cy);
    patch.n1 = n1;
    patch.n2 = n2;
    return patch;
}

} // namespace zm
