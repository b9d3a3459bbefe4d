#include "pifweno/field.hpp"

namespace pifweno {

std::string to_string(BoundaryKind k) {
    switch (k) {
    case BoundaryKind::periodic: return "periodic";
    case BoundaryKind::outflow: return "outflow";
    case BoundaryKind::wall: return "wall";
    case BoundaryKind::inflow: return "inflow";
    }
    return "unknown";
}

MaskedDomain make_mask(const Grid<2>& grid, std::vector<SolidBlock> blocks) {
    MaskedDomain m;
    m.active.assign(static_cast<std::size_t>(grid.nx()) * grid.ny(), 1);
    for (int j = 0; j < grid.ny(); ++j)
        for (int i = 0; i < grid.nx(); ++i) {
            const double x = grid.axes[0].node(i);
            const double y = grid.axes[1].node(j);
            for (const SolidBlock& b : blocks)
                if (x > b.lo[0] && x < b.hi[0] && y > b.lo[1] && y < b.hi[1])
                    m.active[static_cast<std::size_t>(j) * grid.nx() + i] = 0;
        }
    m.blocks = std::move(blocks);
    return m;
}

} // namespace pifweno
