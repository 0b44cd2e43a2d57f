#pragma once

#include <cmath>
#include <numbers>
#include <vector>

#include "jordan.hpp"

namespace jgeom {

/// One term ξ·u_k of a spectral resolution; u_k is a tripotent of the given rank.
struct SpectralTerm {
    double xi = 0;
    HermMat u;
    std::size_t rank = 0;
};

/// u = Σ ξ_k u_k with 0 < ξ_1 < ξ_2 < … and pairwise triple-orthogonal tripotents u_k.
struct SpectralResolution {
    std::vector<SpectralTerm> terms;

    bool empty() const noexcept { return terms.empty(); }
};

struct TangentBlock {
    Projection a;      // a_k = a·u_k²
    HermMat u;         // tripotent in V½(a_k) with a_k u_k² = a_k
    double xi = 0;
};

/// a = a0 + Σ a_k, u = Σ ξ_k u_k with mutually orthogonal blocks and a0·u = 0.
struct TangentDecomposition {
    Projection a0;
    std::vector<TangentBlock> blocks;
};

/**
 * @brief Triple-spectral resolution of a tangent vector.
 *
 * Relative to orthonormal bases of range(a) and ker(a), u has the block form
 * [[0, B], [B*, 0]]. The SVD B = Σ σ_j v_j w_j* yields the symmetrized partial
 * isometries v_j w_j* + w_j v_j*, which are grouped into tripotents by
 * clustering σ_j with gaps ≤ tol_cluster. Singular values ≤ tol_cluster are
 * dropped.
 */
inline SpectralResolution resolve(const TangentVec& u, const Tolerances& tol = {})
{
    SpectralResolution out;
    const HermMat& a = u.base().herm();
    const CMat qa = range_basis(a);
    const CMat qc = kernel_basis(a);
    if (qa.cols() == 0 || qc.cols() == 0) return out;

    const CMat block = qa.adjoint() * u.mat() * qc;
    const auto s = svd(block);
    const CMat left = qa * s.U;
    const CMat right = qc * s.V;
    const std::size_t n = u.dim();

    for (const auto& [first, last] : cluster_descending(s.sigma, tol.tol_cluster)) {
        if (s.sigma[first] <= tol.tol_cluster) continue;
        CMat partial(n, n);
        double sum = 0;
        for (std::size_t j = first; j < last; ++j) {
            sum += s.sigma[j];
            for (std::size_t r = 0; r < n; ++r) {
                const Complex lr = left(r, j);
                for (std::size_t c = 0; c < n; ++c) partial(r, c) += lr * std::conj(right(c, j));
            }
        }
        out.terms.push_back({sum / static_cast<double>(last - first),
                             HermMat::symmetrized(partial + partial.adjoint()), last - first});
    }
    std::reverse(out.terms.begin(), out.terms.end());
    return out;
}

inline HermMat reconstruct(const SpectralResolution& res, std::size_t n)
{
    HermMat sum = HermMat::zeros(n);
    for (const auto& t : res.terms) sum += t.xi * t.u;
    return sum;
}

/// Splits a and u into the orthogonal blocks (a_k, u_k, ξ_k) with a_k := a·u_k², plus the remainder a0.
inline TangentDecomposition decompose_tangent(const TangentVec& u, const Tolerances& tol = {})
{
    const Projection& a = u.base();
    const auto res = resolve(u, tol);
    TangentDecomposition out;
    HermMat rest = a.herm();
    std::size_t rest_rank = a.rank();
    for (const auto& term : res.terms) {
        const CMat& uk = term.u.mat();
        HermMat ak = HermMat::symmetrized(a.mat() * uk * uk);
        rest -= ak;
        rest_rank -= std::min(rest_rank, term.rank);
        out.blocks.push_back({Projection::trusted(std::move(ak), term.rank), term.u, term.xi});
    }
    out.a0 = Projection::trusted(std::move(rest), rest_rank);
    return out;
}

/// Odd functional calculus Σ f(ξ_k) u_k. f is assumed odd.
template <typename F>
TangentVec odd_calculus(const TangentVec& u, F&& f, const Tolerances& tol = {})
{
    const auto res = resolve(u, tol);
    HermMat sum = HermMat::zeros(u.dim());
    for (const auto& t : res.terms) sum += static_cast<double>(f(t.xi)) * t.u;
    return TangentVec::projected(u.base(), sum);
}

/// tan u; requires every ξ_k < π/2 − tol_eq.
inline TangentVec tan_of(const TangentVec& u, const Tolerances& tol = {})
{
    const auto res = resolve(u, tol);
    HermMat sum = HermMat::zeros(u.dim());
    for (const auto& t : res.terms) {
        if (t.xi >= std::numbers::pi / 2 - tol.tol_eq)
            throw DomainViolation("tan: spectral value " + std::to_string(t.xi) + " is not below π/2");
        sum += std::tan(t.xi) * t.u;
    }
    return TangentVec::projected(u.base(), sum);
}

inline TangentVec arctan_of(const TangentVec& u, const Tolerances& tol = {})
{
    return odd_calculus(u, [](double x) { return std::atan(x); }, tol);
}

struct TwoGeneratedReport {
    HermMat c;              // u² − a
    double max_residual = 0;
};

/**
 * Checks the multiplication table of the subalgebra generated by a projection a
 * and a tripotent u ∈ V½(a) with a∘u² = a: c := u² − a is an idempotent
 * orthogonal to a, and u² = a + c acts as the unit on span{a, u, u², c}.
 */
inline TwoGeneratedReport check_two_generated(const TangentVec& u, const Tolerances& tol = {})
{
    const HermMat& a = u.base().herm();
    const HermMat& x = u.herm();
    const HermMat x2 = jsquare(x);
    auto norm = [](const HermMat& m) { return op_norm(m.mat()); };

    if (norm(HermMat::symmetrized(x.mat() * x.mat() * x.mat()) - x) > tol.tol_eq)
        throw PreconditionViolation("u is not a tripotent");
    if (norm(jprod(a, x2) - a) > tol.tol_eq) throw PreconditionViolation("a∘u² differs from a");

    TwoGeneratedReport out;
    out.c = x2 - a;
    const HermMat& c = out.c;
    const HermMat zero = HermMat::zeros(a.dim());
    const struct {
        const HermMat& lhs;
        const HermMat& rhs;
        HermMat expected;
    } table[] = {
        {a, a, a},          {a, x, 0.5 * x},  {a, x2, a},  {a, c, zero},
        {x, x, x2},         {x, x2, x},       {x, c, 0.5 * x},
        {x2, x2, x2},       {x2, c, c},       {c, c, c},
    };
    for (const auto& row : table) out.max_residual = std::max(out.max_residual, norm(jprod(row.lhs, row.rhs) - row.expected));
    out.max_residual = std::max(out.max_residual, norm(HermMat::symmetrized(c.mat() * c.mat()) - c));
    out.max_residual = std::max(out.max_residual, op_norm(a.mat() * c.mat()));
    return out;
}

} // namespace jgeom
