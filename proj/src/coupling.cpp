#include "ttb/coupling.hpp"

#include "ttb/hermite_beam.hpp"

namespace ttb {

CouplingBlocks build_coupling_blocks(const VehicleParams& params,
                                     const WheelLocation& loc,
                                     const IrregularitySample& irr,
                                     double v_inst,
                                     double gravity) {
    const ShapeEval sh = shape(loc.xi, loc.l);
    const Eigen::RowVector4d n = sh.n.transpose();
    const Eigen::RowVector4d n1 = sh.d1.transpose();
    const Eigen::RowVector4d n2 = sh.d2.transpose();

    const double mw = params.m_wheel;
    const double k1 = params.k_susp;
    const double c1 = params.c_susp;

    CouplingBlocks b;
    b.m_11 = params.m_body;
    b.c_11 = c1;
    b.k_11 = k1;

    b.m_rr = mw * sh.n * n;
    b.c_rr = c1 * sh.n * n + 2.0 * v_inst * mw * sh.n * n1;
    b.k_rr = k1 * sh.n * n + (c1 * v_inst + mw * params.a) * sh.n * n1 +
             mw * v_inst * v_inst * sh.n * n2;

    b.c_1r = -c1 * n;
    b.c_r1 = -c1 * sh.n;
    b.k_1r = -k1 * n - c1 * v_inst * n1;
    b.k_r1 = k1 * sh.n;

    b.f_1 = k1 * irr.r + c1 * v_inst * irr.r1;
    const double contact = (params.m_body + mw) * gravity - k1 * irr.r -
                           c1 * v_inst * irr.r1 -
                           mw * (params.a * irr.r1 + v_inst * v_inst * irr.r2);
    b.f_r = contact * sh.n;
    return b;
}

CouplingBlocks departed_coupling_blocks(const VehicleParams& params) {
    CouplingBlocks b;
    b.m_11 = params.m_body;
    return b;
}

}  // namespace ttb
