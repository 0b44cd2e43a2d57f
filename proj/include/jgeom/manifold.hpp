#pragma once

#include <cmath>
#include <vector>

#include "pair_geometry.hpp"
#include "tangent_spectral.hpp"

namespace jgeom {

/// One rank-homogeneous block of a geodesic: a_k, tripotent u_k, c_k = u_k a u_k, speed ξ_k.
struct GeodesicBlock {
    Projection a;
    HermMat u;
    HermMat c;
    double xi = 0;
};

/**
 * @brief Geodesic t ↦ γ_{a,u}(t) stored as block data.
 *
 * Each block moves in the span of {a_k, u_k, c_k} along
 *   cos²(ξt)·a_k + ½sin(2ξt)·u_k + sin²(ξt)·c_k,
 * while a0 stays fixed. Evaluation is closed-form.
 */
struct Geodesic {
    Projection base;
    Projection a0;
    std::vector<GeodesicBlock> blocks;

    std::size_t dim() const noexcept { return base.dim(); }
    std::size_t rank() const noexcept { return base.rank(); }
};

inline Geodesic geodesic(const TangentVec& u, const Tolerances& tol = {})
{
    auto dec = decompose_tangent(u, tol);
    Geodesic g{u.base(), std::move(dec.a0), {}};
    const CMat& a = u.base().mat();
    for (auto& blk : dec.blocks) {
        HermMat c = HermMat::symmetrized(blk.u.mat() * a * blk.u.mat());
        g.blocks.push_back({std::move(blk.a), std::move(blk.u), std::move(c), blk.xi});
    }
    return g;
}

inline Projection eval(const Geodesic& g, double t)
{
    HermMat x = g.a0.herm();
    for (const auto& blk : g.blocks) {
        const double s = blk.xi * t;
        const double cs = std::cos(s), sn = std::sin(s);
        x += (cs * cs) * blk.a.herm() + (sn * cs) * blk.u + (sn * sn) * blk.c;
    }
    return Projection::trusted(std::move(x), g.rank());
}

/// Levi norm √(tr(u²)/2); minimal tripotents have norm one.
inline double levi_norm(const TangentVec& u)
{
    return u.mat().frobenius_norm() / std::sqrt(2.0);
}

/**
 * Chart Φ_a(b) = 2·(P₁(a)b)⁻¹ ∘ E½(a)b, the inverse taken in V₁(a) with unit a.
 * Throws AntipodalPair when P₁(a)b is singular on range(a).
 */
inline TangentVec chart_phi(const Projection& a, const Projection& b, const Tolerances& tol = {})
{
    detail::require_equal_rank(a, b);
    if (a.rank() == 0) return TangentVec::zero(a);
    const CMat qa = range_basis(a.herm());
    const auto e = herm_eig(detail::compress(qa, b.herm()));
    if (e.values.back() < tol.tol_invert)
        throw AntipodalPair("b lies in the antipodal set O_a: P1(a)b has eigenvalue " +
                            std::to_string(e.values.back()) + " on range(a)");
    CMat scaled = e.vectors;
    for (std::size_t j = 0; j < scaled.cols(); ++j)
        for (std::size_t i = 0; i < scaled.rows(); ++i) scaled(i, j) /= e.values[j];
    const CMat inv_local = scaled * e.vectors.adjoint();
    const HermMat inv = HermMat::symmetrized(qa * inv_local * qa.adjoint());
    const HermMat v = 2.0 * jprod(inv, peirce(a, PeirceIndex::half, b.herm()));
    return TangentVec::projected(a, v);
}

/// Chart Ψ_a(v) = exp(G(a, arctan v))·a, the endpoint of the geodesic with velocity arctan v.
inline Projection chart_psi(const TangentVec& v, const Tolerances& tol = {})
{
    return eval(geodesic(arctan_of(v, tol), tol), 1.0);
}

/// Tangent u with γ_{a,u}(1) = b and every spectral value in (0, π/2).
inline TangentVec log_map(const Projection& a, const Projection& b, const Tolerances& tol = {})
{
    return arctan_of(chart_phi(a, b, tol), tol);
}

/// Riemann distance √(Σ θ_k²) over the principal angles, π/2 terms included.
inline double distance(const Projection& a, const Projection& b, const Tolerances& tol = {})
{
    const auto angles = principal_angles(a, b, tol);
    double sum = 0;
    for (std::size_t k = 0; k < angles.thetas.size(); ++k)
        sum += static_cast<double>(angles.multiplicities[k]) * angles.thetas[k] * angles.thetas[k];
    return std::sqrt(sum);
}

struct Midpoint {
    Projection c;
    PeirceReflection sigma;   // exchanges a and b
};

inline Midpoint midpoint_symmetry(const Projection& a, const Projection& b, const Tolerances& tol = {})
{
    Projection c = eval(geodesic(log_map(a, b, tol), tol), 0.5);
    return {c, PeirceReflection{c}};
}

/// ‖E½(γ(t)) γ̈(t)‖_op with γ̈ from a central second difference of step h.
inline double connection_residual(const Geodesic& g, double t, double h)
{
    const Projection mid = eval(g, t);
    const HermMat second = (1.0 / (h * h)) * (eval(g, t + h).herm() - 2.0 * mid.herm() + eval(g, t - h).herm());
    return op_norm(peirce(mid, PeirceIndex::half, second).mat());
}

} // namespace jgeom
