#include "ttb/hermite_beam.hpp"

#include <stdexcept>

namespace ttb {

ShapeEval shape(double xi, double l) {
    if (!(xi >= 0.0 && xi <= 1.0)) {
        throw std::domain_error("shape: xi must lie in [0, 1]");
    }
    if (!(l > 0.0)) {
        throw std::domain_error("shape: element length must be positive");
    }

    const double x2 = xi * xi;
    const double x3 = x2 * xi;

    ShapeEval e;
    e.n << 1.0 - 3.0 * x2 + 2.0 * x3,
           l * (x3 - 2.0 * x2 + xi),
           3.0 * x2 - 2.0 * x3,
           l * (x3 - x2);
    // chain rule: d/ds = (1/l) d/dxi
    e.d1 << (6.0 * x2 - 6.0 * xi) / l,
            3.0 * x2 - 4.0 * xi + 1.0,
            (6.0 * xi - 6.0 * x2) / l,
            3.0 * x2 - 2.0 * xi;
    e.d2 << (12.0 * xi - 6.0) / (l * l),
            (6.0 * xi - 4.0) / l,
            (6.0 - 12.0 * xi) / (l * l),
            (6.0 * xi - 2.0) / l;
    return e;
}

ElementBlocks element_blocks(double l) {
    if (!(l > 0.0)) {
        throw std::domain_error("element_blocks: element length must be positive");
    }

    const double l2 = l * l;
    const double l3 = l2 * l;

    ElementBlocks b;
    b.nn << 13.0 * l / 35.0,   11.0 * l2 / 210.0,  9.0 * l / 70.0,    -13.0 * l2 / 420.0,
            11.0 * l2 / 210.0, l3 / 105.0,         13.0 * l2 / 420.0, -l3 / 140.0,
            9.0 * l / 70.0,    13.0 * l2 / 420.0,  13.0 * l / 35.0,   -11.0 * l2 / 210.0,
            -13.0 * l2 / 420.0, -l3 / 140.0,       -11.0 * l2 / 210.0, l3 / 105.0;
    b.bb << 12.0 / l3,  6.0 / l2,  -12.0 / l3,  6.0 / l2,
            6.0 / l2,   4.0 / l,   -6.0 / l2,   2.0 / l,
            -12.0 / l3, -6.0 / l2, 12.0 / l3,   -6.0 / l2,
            6.0 / l2,   2.0 / l,   -6.0 / l2,   4.0 / l;
    return b;
}

}  // namespace ttb
