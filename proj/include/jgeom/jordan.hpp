#pragma once

#include <string>

#include "matrix_core.hpp"

namespace jgeom {

/// Peirce eigenvalue of left multiplication by an idempotent.
enum class PeirceIndex { one, half, zero };

inline const char* to_string(PeirceIndex k)
{
    switch (k) {
    case PeirceIndex::one: return "1";
    case PeirceIndex::half: return "1/2";
    case PeirceIndex::zero: return "0";
    }
    return "?";
}

/// An orthogonal projection p = p² = p* together with its rank.
class Projection {
public:
    Projection() = default;

    static Projection from(const HermMat& m, const Tolerances& tol = {})
    {
        const auto check = is_projection(m, tol);
        if (!check.is_projection)
            throw ProjectionViolation("‖p² − p‖_op = " + std::to_string(check.residual) + " exceeds tol_proj");
        return Projection(m, check.rank);
    }

    /// Wraps a matrix known to be a projection of the given rank, without checking.
    static Projection trusted(HermMat m, std::size_t rank) { return Projection(std::move(m), rank); }

    static Projection zero(std::size_t n) { return Projection(HermMat::zeros(n), 0); }

    const HermMat& herm() const noexcept { return m_; }
    const CMat& mat() const noexcept { return m_.mat(); }
    std::size_t rank() const noexcept { return rank_; }
    std::size_t dim() const noexcept { return m_.dim(); }

private:
    Projection(HermMat m, std::size_t rank) : m_(std::move(m)), rank_(rank) {}

    HermMat m_;
    std::size_t rank_ = 0;
};

inline void require_same_dim(const HermMat& x, const HermMat& y, const char* op)
{
    if (x.dim() != y.dim())
        throw DimensionMismatch(std::string(op) + ": dimensions " + std::to_string(x.dim()) + " and " +
                                std::to_string(y.dim()));
}

/// Jordan product x∘y = ½(xy + yx).
inline HermMat jprod(const HermMat& x, const HermMat& y)
{
    require_same_dim(x, y, "jprod");
    const CMat& a = x.mat();
    const CMat& b = y.mat();
    return HermMat::symmetrized((a * b + b * a) * 0.5);
}

inline HermMat jsquare(const HermMat& x) { return jprod(x, x); }

/// Quadratic representation P(x)y = 2x∘(x∘y) − x²∘y.
inline HermMat quad_P(const HermMat& x, const HermMat& y)
{
    require_same_dim(x, y, "quad_P");
    return 2.0 * jprod(x, jprod(x, y)) - jprod(jsquare(x), y);
}

/**
 * Triple product {abc} = (a∘b*)∘c − (c∘a)∘b* + (b*∘c)∘a, evaluated with Jordan
 * products only. On Hermitian arguments it agrees with ½(abc + cba).
 */
inline HermMat triple(const HermMat& a, const HermMat& b, const HermMat& c)
{
    require_same_dim(a, b, "triple");
    require_same_dim(a, c, "triple");
    return jprod(jprod(a, b), c) - jprod(jprod(c, a), b) + jprod(jprod(b, c), a);
}

/// The linear map z ↦ {x y z}.
struct BoxOperator {
    HermMat x;
    HermMat y;

    HermMat operator()(const HermMat& z) const { return triple(x, y, z); }
};

inline BoxOperator box(const HermMat& x, const HermMat& y)
{
    require_same_dim(x, y, "box");
    return {x, y};
}

/// Peirce projector E_k(a) via the block formula on the splitting a ⊕ (1 − a).
inline HermMat peirce(const Projection& a, PeirceIndex k, const HermMat& x)
{
    require_same_dim(a.herm(), x, "peirce");
    const CMat& p = a.mat();
    const CMat q = CMat::identity(a.dim()) - p;
    const CMat& m = x.mat();
    switch (k) {
    case PeirceIndex::one: return HermMat::symmetrized(p * m * p);
    case PeirceIndex::half: {
        const CMat pmq = p * m * q;
        return HermMat::symmetrized(pmq + pmq.adjoint());
    }
    case PeirceIndex::zero: return HermMat::symmetrized(q * m * q);
    }
    throw DimensionMismatch("unknown Peirce index");
}

/// Peirce projector from the operator identities E₁ = P(a), E½ = 2L(a) − 2P(a), E₀ = I − 2L(a) + P(a).
inline HermMat peirce_operator_form(const Projection& a, PeirceIndex k, const HermMat& x)
{
    require_same_dim(a.herm(), x, "peirce");
    const HermMat px = quad_P(a.herm(), x);
    const HermMat lx = jprod(a.herm(), x);
    switch (k) {
    case PeirceIndex::one: return px;
    case PeirceIndex::half: return 2.0 * lx - 2.0 * px;
    case PeirceIndex::zero: return x - 2.0 * lx + px;
    }
    throw DimensionMismatch("unknown Peirce index");
}

/// Peirce reflection S(p) = Id − 2E½(p): fixes V₁ ⊕ V₀ and negates V½.
inline HermMat peirce_reflection(const Projection& p, const HermMat& x)
{
    return x - 2.0 * peirce(p, PeirceIndex::half, x);
}

/// S(p) as a reusable operator.
struct PeirceReflection {
    Projection p;

    HermMat operator()(const HermMat& x) const { return peirce_reflection(p, x); }
};

/// A Hermitian u in the Peirce ½-space of its base projection a, i.e. a∘u = ½u.
class TangentVec {
public:
    TangentVec() = default;

    /// Checks ‖a∘u − ½u‖_op ≤ tol_eq·max(1, ‖u‖_max).
    static TangentVec from(Projection base, HermMat u, const Tolerances& tol = {})
    {
        require_same_dim(base.herm(), u, "tangent");
        const double defect = op_norm((jprod(base.herm(), u) - 0.5 * u).mat());
        if (defect > tol.tol_eq * std::max(1.0, u.mat().max_abs()))
            throw TangentViolation("‖a∘u − ½u‖ = " + std::to_string(defect) + " exceeds tol_eq");
        return TangentVec(std::move(base), std::move(u));
    }

    /// The tangent E½(a)x.
    static TangentVec projected(Projection base, const HermMat& x)
    {
        HermMat u = peirce(base, PeirceIndex::half, x);
        return TangentVec(std::move(base), std::move(u));
    }

    static TangentVec zero(Projection base)
    {
        const std::size_t n = base.dim();
        return TangentVec(std::move(base), HermMat::zeros(n));
    }

    const Projection& base() const noexcept { return base_; }
    const HermMat& herm() const noexcept { return u_; }
    const CMat& mat() const noexcept { return u_.mat(); }
    std::size_t dim() const noexcept { return u_.dim(); }

private:
    TangentVec(Projection base, HermMat u) : base_(std::move(base)), u_(std::move(u)) {}

    Projection base_;
    HermMat u_;
};

/// Inner derivation G(a,u)x = 2({u a x} − {a u x}).
inline HermMat G_op(const TangentVec& u, const HermMat& x)
{
    const HermMat& a = u.base().herm();
    return 2.0 * (triple(u.herm(), a, x) - triple(a, u.herm(), x));
}

inline HermMat G_op(const Projection& a, const HermMat& u, const HermMat& x, const Tolerances& tol = {})
{
    return G_op(TangentVec::from(a, u, tol), x);
}

/// D = ua − au. Anti-Hermitian, and G(a,u)x = Dx − xD.
inline CMat derivation_matrix(const TangentVec& u)
{
    const CMat& a = u.base().mat();
    const CMat& v = u.mat();
    const CMat d = v * a - a * v;
    return (d - d.adjoint()) * 0.5;
}

/// x ↦ Q x Q* with Q unitary; Jordan *-automorphisms of inner type.
struct InnerAutomorphism {
    CMat q;

    HermMat operator()(const HermMat& x) const { return HermMat::symmetrized(q * x.mat() * q.adjoint()); }
};

/// exp(t·G(a,u)), evaluated as conjugation by e^{tD}.
inline InnerAutomorphism exp_derivation(const TangentVec& u, double t)
{
    return {expm(derivation_matrix(u) * t)};
}

} // namespace jgeom
