#pragma once

// Structured grids, ghost-padded state fields and the boundary/mask
// descriptions that go with them.

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "pifweno/euler.hpp"

namespace pifweno {

/// One coordinate direction: [lo, hi] split into `cells` equal cells with
/// nodes at lo + (i + 1/2) * spacing for i = 0 .. cells-1.
struct Axis {
    double lo = 0.0;
    double hi = 1.0;
    int cells = 1;

    double spacing() const { return (hi - lo) / cells; }
    double node(int i) const { return lo + (i + 0.5) * spacing(); }
};

inline constexpr int kMinGhost = 5;
inline constexpr int kDefaultGhost = 6;

template <int D>
struct Grid {
    std::array<Axis, D> axes{};
    int ghost = kDefaultGhost;

    Grid() = default;
    Grid(std::array<Axis, D> a, int g = kDefaultGhost) : axes(a), ghost(g) { validate(); }

    void validate() const {
        if (ghost < kMinGhost) throw ConfigError("ghost width must be at least 5");
        for (const Axis& ax : axes) {
            if (ax.cells < 1) throw ConfigError("cell count must be positive");
            if (!(ax.hi > ax.lo)) throw ConfigError("axis extent must be positive");
        }
    }

    int cells(int a) const { return axes[a].cells; }
    int nx() const { return axes[0].cells; }
    int ny() const {
        if constexpr (D == 2) return axes[1].cells;
        else return 1;
    }
    double spacing(int a) const { return axes[a].spacing(); }
    int total_cells() const { return nx() * ny(); }
    double cell_volume() const {
        double v = 1.0;
        for (const Axis& ax : axes) v *= ax.spacing();
        return v;
    }
    int padded(int a) const {
        if (a < D) return axes[a].cells + 2 * ghost;
        return 1;
    }
    std::string mesh_string() const {
        if constexpr (D == 2) return std::to_string(nx()) + "x" + std::to_string(ny());
        else return std::to_string(nx());
    }
};

/// Ghost-padded array of values, indexed by signed cell indices in
/// [-ghost, cells + ghost) per axis. In 1D the j index is always 0.
template <int D, class T>
class PaddedArray {
public:
    PaddedArray() = default;
    explicit PaddedArray(const Grid<D>& g, T init = T{})
        : grid_(g), px_(g.padded(0)), data_(static_cast<std::size_t>(g.padded(0)) * g.padded(1), init) {}

    const Grid<D>& grid() const { return grid_; }

    std::size_t index(int i, int j = 0) const {
        const int g = grid_.ghost;
        if constexpr (D == 2) return static_cast<std::size_t>(j + g) * px_ + static_cast<std::size_t>(i + g);
        else return static_cast<std::size_t>(i + g);
    }
    T& operator()(int i, int j = 0) { return data_[index(i, j)]; }
    const T& operator()(int i, int j = 0) const { return data_[index(i, j)]; }

    std::vector<T>& raw() { return data_; }
    const std::vector<T>& raw() const { return data_; }

private:
    Grid<D> grid_{};
    std::size_t px_ = 0;
    std::vector<T> data_;
};

template <int D>
using Field = PaddedArray<D, State<D>>;

enum class BoundaryKind { periodic, outflow, wall, inflow };

std::string to_string(BoundaryKind k);

/// A stretch of one side (tangential coordinate range, 2D only) whose
/// boundary kind differs from the side's default.
template <int D>
struct BoundarySegment {
    double lo = 0.0;
    double hi = 0.0;
    BoundaryKind kind = BoundaryKind::outflow;
    State<D> state{};
};

template <int D>
struct SideBoundary {
    BoundaryKind kind = BoundaryKind::outflow;
    State<D> inflow_state{};
    std::vector<BoundarySegment<D>> segments;
};

/// Sides ordered (x-lo, x-hi[, y-lo, y-hi]).
template <int D>
struct BoundarySet {
    std::array<SideBoundary<D>, 2 * D> sides{};

    static BoundarySet uniform(BoundaryKind k) {
        BoundarySet b;
        for (auto& s : b.sides) s.kind = k;
        return b;
    }
    const SideBoundary<D>& side(int axis, int hi) const { return sides[2 * axis + hi]; }
    SideBoundary<D>& side(int axis, int hi) { return sides[2 * axis + hi]; }
    bool periodic(int axis) const { return side(axis, 0).kind == BoundaryKind::periodic; }
};

/// Axis-aligned obstacle cut out of the bounding rectangle. Faces flagged as
/// walls reflect; the cells inside are ghost donors for nearby active cells.
struct SolidBlock {
    std::array<double, 2> lo{};
    std::array<double, 2> hi{};
    // x-lo, x-hi, y-lo, y-hi
    std::array<bool, 4> wall_faces{};
};

struct MaskedDomain {
    std::vector<SolidBlock> blocks;
    std::vector<std::uint8_t> active; // interior cells, row-major (i fastest)
};

template <int D>
struct Domain {
    Grid<D> grid;
    BoundarySet<D> bcs;
    std::optional<MaskedDomain> mask; // 2D only

    bool is_active(int i, int j = 0) const {
        if (!mask) return true;
        return mask->active[static_cast<std::size_t>(j) * grid.nx() + i] != 0;
    }
};

/// Build the activity mask for a set of blocks: a cell is inactive when its
/// node lies strictly inside a block.
MaskedDomain make_mask(const Grid<2>& grid, std::vector<SolidBlock> blocks);

} // namespace pifweno
