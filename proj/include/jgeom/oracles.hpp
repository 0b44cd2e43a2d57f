#pragma once

// Brute-force references for the closed-form machinery. Nothing here calls into
// tangent_spectral, pair_geometry or manifold; only matrix kernels and the
// Jordan operator G(a,u) are shared.

#include <algorithm>
#include <cmath>
#include <span>
#include <vector>

#include "jordan.hpp"
#include "pair_geometry.hpp"

namespace jgeom::oracles {

/// Q a Q* with Q = expm(t(ua − au)).
inline Projection conjugation_orbit(const TangentVec& u, double t)
{
    const CMat& a = u.base().mat();
    const CMat q = expm((u.mat() * a - a * u.mat()) * t);
    return Projection::trusted(HermMat::symmetrized(q * a * q.adjoint()), u.base().rank());
}

/// Σ_{k<terms} tᵏ/k! · G(a,u)ᵏ a by repeated application of G.
inline HermMat series_G_apply(const TangentVec& u, double t, int terms)
{
    HermMat term = u.base().herm();
    HermMat sum = term;
    for (int k = 1; k < terms; ++k) {
        term = (t / k) * G_op(u, term);
        sum += term;
    }
    return sum;
}

/// Angles from the singular values of Qa*Qb (cosines) and (1 − b)Qa (sines); ascending.
/// Small angles come from the sines, where arccos would lose half the digits.
inline PrincipalAngles principal_angles_svd(const Projection& a, const Projection& b)
{
    require_same_dim(a.herm(), b.herm(), "principal_angles_svd");
    if (a.rank() != b.rank()) throw RankMismatch("principal_angles_svd: ranks differ");
    PrincipalAngles out;
    if (a.rank() == 0) return out;
    auto basis = [](const Projection& p) {
        const auto e = herm_eig(p.herm());
        return e.vectors.col_range(0, p.rank());
    };
    const CMat qa = basis(a);
    const auto cosines = svd(qa.adjoint() * basis(b)).sigma;                          // descending
    auto sines = svd((CMat::identity(a.dim()) - b.mat()) * qa).sigma;                 // descending
    std::reverse(sines.begin(), sines.end());
    for (std::size_t k = 0; k < cosines.size(); ++k) {
        const double c = std::clamp(cosines[k], 0.0, 1.0);
        const double th = c > std::sqrt(0.5) ? std::asin(std::clamp(sines[k], 0.0, 1.0)) : std::acos(c);
        out.thetas.push_back(th);
        out.multiplicities.push_back(1);
    }
    std::sort(out.thetas.begin(), out.thetas.end());
    return out;
}

/// Σ √(tr((p_{i+1} − p_i)²)/2) over consecutive samples.
inline double path_length(std::span<const HermMat> samples)
{
    double len = 0;
    for (std::size_t i = 1; i < samples.size(); ++i)
        len += (samples[i] - samples[i - 1]).mat().frobenius_norm() / std::sqrt(2.0);
    return len;
}

inline double path_length(std::span<const Projection> samples)
{
    std::vector<HermMat> mats;
    mats.reserve(samples.size());
    for (const auto& p : samples) mats.push_back(p.herm());
    return path_length(std::span<const HermMat>(mats));
}

} // namespace jgeom::oracles
