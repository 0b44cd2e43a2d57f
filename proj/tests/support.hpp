#pragma once

// Random fixtures and the Sym(R,2) model shared by the unit and acceptance suites.

#include <cmath>
#include <random>
#include <vector>

#include "jgeom/jordan.hpp"

namespace jgeom::testing {

using Rng = std::mt19937_64;

inline CMat gaussian(Rng& rng, std::size_t rows, std::size_t cols)
{
    std::normal_distribution<double> nd;
    CMat m(rows, cols);
    for (auto& v : m.data()) v = Complex(nd(rng), nd(rng));
    return m;
}

inline HermMat random_hermitian(Rng& rng, std::size_t n)
{
    return HermMat::symmetrized(gaussian(rng, n, n));
}

/// Haar-ish unitary from classical Gram-Schmidt on a Gaussian matrix (test-only, independent of the library kernels).
inline CMat random_unitary(Rng& rng, std::size_t n)
{
    CMat q = gaussian(rng, n, n);
    for (std::size_t j = 0; j < n; ++j) {
        for (int pass = 0; pass < 2; ++pass) {
            for (std::size_t k = 0; k < j; ++k) {
                Complex dot{};
                for (std::size_t i = 0; i < n; ++i) dot += std::conj(q(i, k)) * q(i, j);
                for (std::size_t i = 0; i < n; ++i) q(i, j) -= dot * q(i, k);
            }
        }
        double nrm = 0;
        for (std::size_t i = 0; i < n; ++i) nrm += std::norm(q(i, j));
        nrm = std::sqrt(nrm);
        for (std::size_t i = 0; i < n; ++i) q(i, j) /= nrm;
    }
    return q;
}

/// Unitary frame whose first r columns span range(a).
struct Frame {
    CMat q;
    std::size_t r = 0;

    std::size_t n() const { return q.rows(); }
    CMat range() const { return q.col_range(0, r); }
    CMat kernel() const { return q.col_range(r, n() - r); }
    Projection projection() const
    {
        const CMat v = range();
        return Projection::trusted(HermMat::symmetrized(v * v.adjoint()), r);
    }
};

inline Frame random_frame(Rng& rng, std::size_t n, std::size_t r) { return {random_unitary(rng, n), r}; }

inline Projection random_projection(Rng& rng, std::size_t n, std::size_t r) { return random_frame(rng, n, r).projection(); }

/// u = Q [[0, K], [K*, 0]] Q* with K Gaussian and scaled by `scale`.
inline TangentVec random_tangent(Rng& rng, const Frame& f, double scale = 1.0)
{
    const CMat k = gaussian(rng, f.r, f.n() - f.r) * scale;
    const CMat off = f.range() * k * f.kernel().adjoint();
    return TangentVec::from(f.projection(), HermMat::symmetrized(off + off.adjoint()));
}

/// Tangent with prescribed singular values ξ_j of its off-diagonal block (|ξ| ≤ min(r, n−r)).
inline TangentVec tangent_with_spectrum(Rng& rng, const Frame& f, const std::vector<double>& xis)
{
    const std::size_t m = f.n() - f.r;
    const CMat ul = random_unitary(rng, f.r);
    const CMat vr = random_unitary(rng, m);
    CMat k(f.r, m);
    for (std::size_t j = 0; j < xis.size(); ++j)
        for (std::size_t i = 0; i < f.r; ++i)
            for (std::size_t c = 0; c < m; ++c) k(i, c) += xis[j] * ul(i, j) * std::conj(vr(c, j));
    const CMat off = f.range() * k * f.kernel().adjoint();
    return TangentVec::from(f.projection(), HermMat::symmetrized(off + off.adjoint()));
}

/// Rank-r projection at prescribed principal angles from range(a) of the frame (angles.size() ≤ r, 2r ≤ n).
inline Projection projection_at_angles(const Frame& f, const std::vector<double>& angles)
{
    const std::size_t n = f.n(), r = f.r;
    CMat basis(n, r);
    for (std::size_t j = 0; j < r; ++j) {
        const double th = j < angles.size() ? angles[j] : 0.0;
        for (std::size_t i = 0; i < n; ++i) basis(i, j) = std::cos(th) * f.q(i, j) + std::sin(th) * f.q(i, r + j);
    }
    return Projection::trusted(HermMat::symmetrized(basis * basis.adjoint()), r);
}

inline double uniform(Rng& rng, double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng); }

inline double op_dist(const HermMat& x, const HermMat& y) { return op_norm((x - y).mat()); }
inline double op_dist(const CMat& x, const CMat& y) { return op_norm(x - y); }

// Sym(R,2): A = B(0), C = B(π/2), X = [[0,1],[1,0]], B(θ) = [[cos², ½sin2θ], [½sin2θ, sin²]].
inline HermMat sym_B(double theta)
{
    const double c = std::cos(theta), s = std::sin(theta);
    return HermMat::symmetrized(CMat::from_rows({{c * c, s * c}, {s * c, s * s}}));
}
inline Projection proj_B(double theta) { return Projection::trusted(sym_B(theta), 1); }
inline Projection proj_A() { return Projection::trusted(HermMat::symmetrized(CMat::diagonal({1.0, 0.0})), 1); }
inline Projection proj_C() { return Projection::trusted(HermMat::symmetrized(CMat::diagonal({0.0, 1.0})), 1); }
inline HermMat sym_X() { return HermMat::symmetrized(CMat::from_rows({{0, 1}, {1, 0}})); }
inline TangentVec tangent_X(double scale = 1.0) { return TangentVec::from(proj_A(), scale * sym_X()); }

/// Q (m ⊕ 0) Q* for an m of smaller size embedded in the top-left corner.
inline HermMat embed(const HermMat& m, const CMat& q)
{
    CMat big(q.rows(), q.rows());
    for (std::size_t i = 0; i < m.dim(); ++i)
        for (std::size_t j = 0; j < m.dim(); ++j) big(i, j) = m.mat()(i, j);
    return HermMat::symmetrized(q * big * q.adjoint());
}

} // namespace jgeom::testing
