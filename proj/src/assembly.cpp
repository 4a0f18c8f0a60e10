#include "ttb/assembly.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <ostream>
#include <stdexcept>

#include <Eigen/Eigenvalues>

#include "ttb/hermite_beam.hpp"

namespace ttb {

void BeamSection::validate() const {
    if (!(rigidity > 0.0)) throw std::invalid_argument("beam section: rigidity must be positive");
    if (!(mass_per_length > 0.0)) throw std::invalid_argument("beam section: mass per length must be positive");
    if (damping_per_length < 0.0) throw std::invalid_argument("beam section: damping must be non-negative");
}

void Mesh::validate() const {
    if (n < 2) throw std::invalid_argument("mesh: need at least 2 elements");
    if (!(l > 0.0)) throw std::invalid_argument("mesh: element length must be positive");
    rail.validate();
    bridge.validate();
    if (k_bed < 0.0) throw std::invalid_argument("mesh: bed stiffness must be non-negative");
    if (c_bed < 0.0) throw std::invalid_argument("mesh: bed damping must be non-negative");
}

int GlobalSystem::index_of(int full_dof) const {
    if (full_dof < 0 || full_dof >= static_cast<int>(dof_map.size())) return -1;
    const int idx = dof_map[full_dof];
    if (idx < 0) return -1;
    return has_vehicle ? idx + 1 : idx;
}

std::vector<std::array<int, 8>> connectivity(int n) {
    if (n < 1) throw std::invalid_argument("connectivity: need at least one element");
    const int r = 2 * (n + 1);  // bridge DOFs start after the rail block
    std::vector<std::array<int, 8>> vcs;
    vcs.reserve(static_cast<std::size_t>(n));
    for (int p = 1; p <= n; ++p) {
        vcs.push_back({2 * p - 1, 2 * p, 2 * p + 1, 2 * p + 2,
                       r + 2 * p - 1, r + 2 * p, r + 2 * p + 1, r + 2 * p + 2});
    }
    return vcs;
}

GlobalSystem assemble_rail_bridge(const Mesh& mesh) {
    mesh.validate();
    const int nfull = 4 * (mesh.n + 1);

    GlobalSystem sys;
    sys.elements = mesh.n;
    sys.m = Eigen::MatrixXd::Zero(nfull, nfull);
    sys.c = Eigen::MatrixXd::Zero(nfull, nfull);
    sys.k = Eigen::MatrixXd::Zero(nfull, nfull);
    sys.f = Eigen::VectorXd::Zero(nfull);
    sys.dof_map.resize(static_cast<std::size_t>(nfull));
    for (int i = 0; i < nfull; ++i) sys.dof_map[static_cast<std::size_t>(i)] = i;

    const ElementBlocks eb = element_blocks(mesh.l);

    // 8x8 elementary matrices: rail pair block, bridge pair block, and
    // the bed-layer coupling between them
    Eigen::Matrix<double, 8, 8> me = Eigen::Matrix<double, 8, 8>::Zero();
    Eigen::Matrix<double, 8, 8> ce = Eigen::Matrix<double, 8, 8>::Zero();
    Eigen::Matrix<double, 8, 8> ke = Eigen::Matrix<double, 8, 8>::Zero();

    me.topLeftCorner<4, 4>() = mesh.rail.mass_per_length * eb.nn;
    me.bottomRightCorner<4, 4>() = mesh.bridge.mass_per_length * eb.nn;

    ke.topLeftCorner<4, 4>() = mesh.rail.rigidity * eb.bb + mesh.k_bed * eb.nn;
    ke.bottomRightCorner<4, 4>() = mesh.bridge.rigidity * eb.bb + mesh.k_bed * eb.nn;
    ke.topRightCorner<4, 4>() = -mesh.k_bed * eb.nn;
    ke.bottomLeftCorner<4, 4>() = -mesh.k_bed * eb.nn;

    ce.topLeftCorner<4, 4>() = (mesh.c_bed + mesh.rail.damping_per_length) * eb.nn;
    ce.bottomRightCorner<4, 4>() = (mesh.c_bed + mesh.bridge.damping_per_length) * eb.nn;
    ce.topRightCorner<4, 4>() = -mesh.c_bed * eb.nn;
    ce.bottomLeftCorner<4, 4>() = -mesh.c_bed * eb.nn;

    for (const auto& vc : connectivity(mesh.n)) {
        for (int i = 0; i < 8; ++i) {
            const int gi = vc[static_cast<std::size_t>(i)] - 1;
            for (int j = 0; j < 8; ++j) {
                const int gj = vc[static_cast<std::size_t>(j)] - 1;
                sys.m(gi, gj) += me(i, j);
                sys.c(gi, gj) += ce(i, j);
                sys.k(gi, gj) += ke(i, j);
            }
        }
    }
    return sys;
}

GlobalSystem apply_constraints(const GlobalSystem& sys, int n) {
    if (sys.reduced) throw std::invalid_argument("apply_constraints: system already reduced");
    if (sys.has_vehicle) throw std::invalid_argument("apply_constraints: vehicle already coupled");
    if (n != sys.elements) throw std::invalid_argument("apply_constraints: element count mismatch");

    const int nfull = 4 * (n + 1);
    const int r = 2 * (n + 1);
    // vertical translations at both ends of both beams
    const std::array<int, 4> fixed = {0, 2 * n, r, r + 2 * n};

    GlobalSystem out;
    out.elements = n;
    out.reduced = true;
    out.dof_map.assign(static_cast<std::size_t>(nfull), -1);

    std::vector<int> keep;
    keep.reserve(static_cast<std::size_t>(nfull - 4));
    for (int i = 0; i < nfull; ++i) {
        bool is_fixed = false;
        for (int fidx : fixed) is_fixed |= (i == fidx);
        if (is_fixed) continue;
        out.dof_map[static_cast<std::size_t>(i)] = static_cast<int>(keep.size());
        keep.push_back(i);
    }

    const auto nk = static_cast<int>(keep.size());
    out.m.resize(nk, nk);
    out.c.resize(nk, nk);
    out.k.resize(nk, nk);
    out.f.resize(nk);
    for (int i = 0; i < nk; ++i) {
        out.f(i) = sys.f(keep[static_cast<std::size_t>(i)]);
        for (int j = 0; j < nk; ++j) {
            const int gi = keep[static_cast<std::size_t>(i)];
            const int gj = keep[static_cast<std::size_t>(j)];
            out.m(i, j) = sys.m(gi, gj);
            out.c(i, j) = sys.c(gi, gj);
            out.k(i, j) = sys.k(gi, gj);
        }
    }
    return out;
}

GlobalSystem scatter_vehicle(const GlobalSystem& sys, const CouplingBlocks& blocks,
                             const WheelLocation& loc) {
    if (!sys.reduced) throw std::invalid_argument("scatter_vehicle: reduce the system first");
    if (sys.has_vehicle) throw std::invalid_argument("scatter_vehicle: vehicle already coupled");
    if (loc.j < 1 || loc.j > sys.elements) {
        throw std::invalid_argument("scatter_vehicle: wheel element out of range");
    }

    const int nred = sys.size();
    GlobalSystem out;
    out.elements = sys.elements;
    out.reduced = true;
    out.has_vehicle = true;
    out.dof_map = sys.dof_map;

    out.m = Eigen::MatrixXd::Zero(nred + 1, nred + 1);
    out.c = Eigen::MatrixXd::Zero(nred + 1, nred + 1);
    out.k = Eigen::MatrixXd::Zero(nred + 1, nred + 1);
    out.f = Eigen::VectorXd::Zero(nred + 1);
    out.m.bottomRightCorner(nred, nred) = sys.m;
    out.c.bottomRightCorner(nred, nred) = sys.c;
    out.k.bottomRightCorner(nred, nred) = sys.k;
    out.f.tail(nred) = sys.f;

    out.m(0, 0) += blocks.m_11;
    out.c(0, 0) += blocks.c_11;
    out.k(0, 0) += blocks.k_11;
    out.f(0) = blocks.f_1;

    // rail DOFs of the element under the wheel, through the constraint map
    std::array<int, 4> target{};
    for (int a = 0; a < 4; ++a) {
        const int full = 2 * (loc.j - 1) + a;
        const int idx = sys.dof_map[static_cast<std::size_t>(full)];
        target[static_cast<std::size_t>(a)] = (idx < 0) ? -1 : idx + 1;
    }

    for (int a = 0; a < 4; ++a) {
        const int ra = target[static_cast<std::size_t>(a)];
        if (ra < 0) continue;
        out.f(ra) += blocks.f_r(a);
        out.c(0, ra) += blocks.c_1r(a);
        out.k(0, ra) += blocks.k_1r(a);
        out.c(ra, 0) += blocks.c_r1(a);
        out.k(ra, 0) += blocks.k_r1(a);
        for (int b = 0; b < 4; ++b) {
            const int rb = target[static_cast<std::size_t>(b)];
            if (rb < 0) continue;
            out.m(ra, rb) += blocks.m_rr(a, b);
            out.c(ra, rb) += blocks.c_rr(a, b);
            out.k(ra, rb) += blocks.k_rr(a, b);
        }
    }
    return out;
}

std::vector<int> beam_free_dofs(const GlobalSystem& sys, bool bridge) {
    const int n = sys.elements;
    const int r = 2 * (n + 1);
    const int begin = bridge ? r : 0;
    std::vector<int> out;
    out.reserve(static_cast<std::size_t>(r));
    for (int full = begin; full < begin + r; ++full) {
        const int idx = sys.index_of(full);
        if (idx >= 0) out.push_back(idx);
    }
    return out;
}

std::vector<double> beam_block_frequencies_hz(const GlobalSystem& sys, bool bridge, int count) {
    const std::vector<int> idx = beam_free_dofs(sys, bridge);
    const auto nb = static_cast<int>(idx.size());
    Eigen::MatrixXd kb(nb, nb), mb(nb, nb);
    for (int i = 0; i < nb; ++i) {
        for (int j = 0; j < nb; ++j) {
            kb(i, j) = sys.k(idx[static_cast<std::size_t>(i)], idx[static_cast<std::size_t>(j)]);
            mb(i, j) = sys.m(idx[static_cast<std::size_t>(i)], idx[static_cast<std::size_t>(j)]);
        }
    }
    Eigen::GeneralizedSelfAdjointEigenSolver<Eigen::MatrixXd> eig(kb, mb);
    if (eig.info() != Eigen::Success) {
        throw std::runtime_error("beam_block_frequencies_hz: eigensolver failed");
    }
    std::vector<double> out;
    const int take = std::min(count, nb);
    out.reserve(static_cast<std::size_t>(take));
    for (int i = 0; i < take; ++i) {
        out.push_back(std::sqrt(std::max(eig.eigenvalues()(i), 0.0)) / (2.0 * M_PI));
    }
    return out;
}

void dump_matrix_coordinate(const Eigen::MatrixXd& a, std::ostream& out) {
    char line[96];
    for (Eigen::Index i = 0; i < a.rows(); ++i) {
        for (Eigen::Index j = 0; j < a.cols(); ++j) {
            if (a(i, j) == 0.0) continue;
            std::snprintf(line, sizeof line, "%ld %ld %.17g\n",
                          static_cast<long>(i + 1), static_cast<long>(j + 1), a(i, j));
            out << line;
        }
    }
}

}  // namespace ttb
