#pragma once

#include <cmath>
#include <numbers>
#include <vector>

#include "jordan.hpp"

namespace jgeom {

/// Rank-one pair (a_k, b_k) with P(a_k)b_k = λ a_k and 0 < λ < 1.
struct MinimalPair {
    double lambda = 0;
    Projection a;
    Projection b;
};

/**
 * Orthogonal splitting of two equal-rank projections:
 *   a = a0 + shared + Σ a_k,   b = b0 + shared + Σ b_k,
 * with a0 ⊥ b0 (Case I), a common part (Case II) and rank-one angle pairs
 * (Case III). Pairs are ordered by non-increasing λ.
 */
struct PairDecomposition {
    Projection a0;
    Projection b0;
    Projection shared;
    std::vector<MinimalPair> pairs;
};

struct PrincipalAngles {
    std::vector<double> thetas;               // distinct, ascending, in [0, π/2]
    std::vector<std::size_t> multiplicities;

    /// Every angle repeated by its multiplicity; length = rank.
    std::vector<double> expanded() const
    {
        std::vector<double> out;
        for (std::size_t k = 0; k < thetas.size(); ++k) out.insert(out.end(), multiplicities[k], thetas[k]);
        return out;
    }
};

struct LambdaPair {
    double lambda = 0;   // P(a)b = λa
    double mu = 0;       // P(b)a = μb
};

namespace detail {

inline void require_equal_rank(const Projection& a, const Projection& b)
{
    require_same_dim(a.herm(), b.herm(), "projection pair");
    if (a.rank() != b.rank())
        throw RankMismatch("ranks " + std::to_string(a.rank()) + " and " + std::to_string(b.rank()) + " differ");
}

/// Q* b Q for orthonormal columns Q: the compression of P(a)b to range(a).
inline HermMat compress(const CMat& basis, const HermMat& b)
{
    return HermMat::symmetrized(basis.adjoint() * b.mat() * basis);
}

inline CMat column(const CMat& m, std::size_t j) { return m.col_range(j, 1); }

} // namespace detail

inline PairDecomposition decompose_pair(const Projection& a, const Projection& b, const Tolerances& tol = {})
{
    detail::require_equal_rank(a, b);
    const std::size_t n = a.dim();
    PairDecomposition out;
    out.a0 = out.b0 = out.shared = Projection::zero(n);
    if (a.rank() == 0) return out;

    const CMat qa = range_basis(a.herm());
    const auto eig_a = herm_eig(detail::compress(qa, b.herm()));
    const CMat xs = qa * eig_a.vectors;

    CMat shared(n, n), a0(n, n);
    std::size_t shared_rank = 0, a0_rank = 0;
    for (std::size_t j = 0; j < xs.cols(); ++j) {
        const double lambda = eig_a.values[j];
        const CMat x = detail::column(xs, j);
        if (lambda >= 1.0 - tol.tol_cluster) {
            shared += x * x.adjoint();
            ++shared_rank;
        } else if (lambda <= tol.tol_cluster) {
            a0 += x * x.adjoint();
            ++a0_rank;
        } else {
            CMat y = b.mat() * x;
            y *= Complex(1.0 / y.frobenius_norm());
            out.pairs.push_back({lambda, Projection::trusted(HermMat::symmetrized(x * x.adjoint()), 1),
                                 Projection::trusted(HermMat::symmetrized(y * y.adjoint()), 1)});
        }
    }
    out.shared = Projection::trusted(HermMat::symmetrized(shared), shared_rank);
    out.a0 = Projection::trusted(HermMat::symmetrized(a0), a0_rank);

    // b0 from the compression of a to range(b).
    const CMat qb = range_basis(b.herm());
    const auto eig_b = herm_eig(detail::compress(qb, a.herm()));
    const CMat zs = qb * eig_b.vectors;
    CMat b0(n, n);
    std::size_t b0_rank = 0;
    for (std::size_t j = 0; j < zs.cols(); ++j) {
        if (eig_b.values[j] > tol.tol_cluster) continue;
        const CMat z = detail::column(zs, j);
        b0 += z * z.adjoint();
        ++b0_rank;
    }
    if (b0_rank != a0_rank)
        throw NumericalFailure("decompose_pair: orthogonal parts have ranks " + std::to_string(a0_rank) + " and " +
                               std::to_string(b0_rank));
    out.b0 = Projection::trusted(HermMat::symmetrized(b0), b0_rank);
    return out;
}

/// λ and μ for a pair with P(a)b = λa and P(b)a = μb; throws NotScalarPair otherwise.
inline LambdaPair lambda_check(const Projection& a, const Projection& b, const Tolerances& tol = {})
{
    detail::require_equal_rank(a, b);
    if (a.rank() == 0) throw NotScalarPair("zero projections carry no λ");
    auto scalar_of = [&](const Projection& p, const Projection& q) {
        const HermMat pqp = quad_P(p.herm(), q.herm());
        const double s = pqp.trace() / static_cast<double>(p.rank());
        if (op_norm((pqp - s * p.herm()).mat()) > tol.tol_eq)
            throw NotScalarPair("P(a)b is not a scalar multiple of a");
        return s;
    };
    LambdaPair out{scalar_of(a, b), scalar_of(b, a)};
    if (std::abs(out.lambda - out.mu) > 1e-9)
        throw NumericalFailure("λ = " + std::to_string(out.lambda) + " and μ = " + std::to_string(out.mu) + " disagree");
    if (out.lambda < -1e-12 || out.lambda > 1 + 1e-12)
        throw NumericalFailure("λ = " + std::to_string(out.lambda) + " outside [0, 1]");
    return out;
}

/// θ = arccos √λ per Case III pair, 0 for the shared part, π/2 for the orthogonal part.
inline PrincipalAngles principal_angles(const Projection& a, const Projection& b, const Tolerances& tol = {})
{
    const auto d = decompose_pair(a, b, tol);
    PrincipalAngles out;
    if (d.shared.rank() > 0) {
        out.thetas.push_back(0.0);
        out.multiplicities.push_back(d.shared.rank());
    }
    // pairs come with non-increasing λ, i.e. non-decreasing θ
    for (std::size_t k = 0; k < d.pairs.size();) {
        std::size_t end = k + 1;
        while (end < d.pairs.size() && d.pairs[end - 1].lambda - d.pairs[end].lambda <= tol.tol_cluster) ++end;
        double sum = 0;
        for (std::size_t j = k; j < end; ++j) sum += std::acos(std::sqrt(d.pairs[j].lambda));
        out.thetas.push_back(sum / static_cast<double>(end - k));
        out.multiplicities.push_back(end - k);
        k = end;
    }
    if (d.a0.rank() > 0) {
        out.thetas.push_back(std::numbers::pi / 2);
        out.multiplicities.push_back(d.a0.rank());
    }
    return out;
}

/// Smallest eigenvalue of P(a)b on range(a); zero rank gives 1.
inline double min_compressed_eigenvalue(const Projection& a, const Projection& b)
{
    detail::require_equal_rank(a, b);
    if (a.rank() == 0) return 1.0;
    return herm_eig(detail::compress(range_basis(a.herm()), b.herm())).values.back();
}

/// True iff P(a)b is not invertible in V₁(a), i.e. b lies in the antipodal set of a.
inline bool is_antipodal(const Projection& a, const Projection& b, const Tolerances& tol = {})
{
    return min_compressed_eigenvalue(a, b) < tol.tol_invert;
}

} // namespace jgeom
