#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "jgeom/oracles.hpp"
#include "jgeom/pair_geometry.hpp"
#include "support.hpp"

using namespace jgeom;
using namespace jgeom::testing;

namespace {

constexpr double kHalfPi = std::numbers::pi / 2;

void expect_pair_invariants(const Projection& a, const Projection& b, const PairDecomposition& d)
{
    HermMat sa = d.a0.herm() + d.shared.herm(), sb = d.b0.herm() + d.shared.herm();
    for (const auto& p : d.pairs) {
        sa += p.a.herm();
        sb += p.b.herm();
    }
    EXPECT_LE(op_dist(sa, a.herm()), 1e-9);
    EXPECT_LE(op_dist(sb, b.herm()), 1e-9);
    EXPECT_EQ(d.a0.rank(), d.b0.rank());
    EXPECT_LE(op_norm(d.a0.mat() * d.b0.mat()), 1e-9);

    // every listed piece, pairwise orthogonal across blocks
    std::vector<std::pair<int, const Projection*>> pieces{{-1, &d.a0}, {-1, &d.b0}, {-2, &d.shared}};
    for (std::size_t k = 0; k < d.pairs.size(); ++k) {
        pieces.push_back({static_cast<int>(k), &d.pairs[k].a});
        pieces.push_back({static_cast<int>(k), &d.pairs[k].b});
    }
    for (std::size_t i = 0; i < pieces.size(); ++i)
        for (std::size_t j = i + 1; j < pieces.size(); ++j)
            if (pieces[i].first != pieces[j].first)
                EXPECT_LE(op_norm(pieces[i].second->mat() * pieces[j].second->mat()), 1e-9);

    for (std::size_t k = 0; k < d.pairs.size(); ++k) {
        const auto& p = d.pairs[k];
        EXPECT_GT(p.lambda, 0.0);
        EXPECT_LT(p.lambda, 1.0);
        if (k > 0) EXPECT_LE(p.lambda, d.pairs[k - 1].lambda);
        EXPECT_LE(op_dist(quad_P(p.a.herm(), p.b.herm()), p.lambda * p.a.herm()), 1e-9);
        EXPECT_LE(op_dist(quad_P(p.b.herm(), p.a.herm()), p.lambda * p.b.herm()), 1e-9);
        EXPECT_EQ(is_projection(p.a.herm()).rank, 1u);
        EXPECT_EQ(is_projection(p.b.herm()).rank, 1u);

        // {a_k, b_k, a_k∘b_k} linearly independent: 3 nonzero singular values of their stacked vectorizations
        const std::size_t n = a.dim();
        CMat stacked(3, n * n);
        const HermMat ab = jprod(p.a.herm(), p.b.herm());
        const HermMat* vs[] = {&p.a.herm(), &p.b.herm(), &ab};
        for (std::size_t r = 0; r < 3; ++r)
            for (std::size_t e = 0; e < n * n; ++e) stacked(r, e) = vs[r]->mat().data()[e];
        EXPECT_GT(svd(stacked).sigma[2], 1e-6);
    }
}

Projection direct_sum_fixture(Rng& rng, std::size_t n, std::size_t shared, std::size_t ortho,
                              const std::vector<double>& angles, Projection* other)
{
    // columns: [shared | ortho a | angle a | ortho b | angle partners]
    const CMat q = random_unitary(rng, n);
    const std::size_t r = shared + ortho + angles.size();
    CMat qa(n, r), qb(n, r);
    std::size_t col = 0, next = r;
    for (std::size_t j = 0; j < shared; ++j, ++col)
        for (std::size_t i = 0; i < n; ++i) qa(i, col) = qb(i, col) = q(i, col);
    for (std::size_t j = 0; j < ortho; ++j, ++col, ++next)
        for (std::size_t i = 0; i < n; ++i) {
            qa(i, col) = q(i, col);
            qb(i, col) = q(i, next);
        }
    for (double th : angles) {
        for (std::size_t i = 0; i < n; ++i) {
            qa(i, col) = q(i, col);
            qb(i, col) = std::cos(th) * q(i, col) + std::sin(th) * q(i, next);
        }
        ++col;
        ++next;
    }
    *other = Projection::trusted(HermMat::symmetrized(qb * qb.adjoint()), r);
    return Projection::trusted(HermMat::symmetrized(qa * qa.adjoint()), r);
}

} // namespace

TEST(DecomposePair, EqualPair)
{
    Rng rng(1);
    const auto a = random_projection(rng, 6, 3);
    const auto d = decompose_pair(a, a);
    EXPECT_EQ(d.shared.rank(), 3u);
    EXPECT_EQ(d.a0.rank(), 0u);
    EXPECT_TRUE(d.pairs.empty());
    EXPECT_LE(op_dist(d.shared.herm(), a.herm()), 1e-12);
}

TEST(DecomposePair, ModelPair)
{
    for (double th : {0.1, 0.6, 1.2, 1.5}) {
        const auto d = decompose_pair(proj_A(), proj_B(th));
        ASSERT_EQ(d.pairs.size(), 1u);
        EXPECT_NEAR(d.pairs[0].lambda, std::cos(th) * std::cos(th), 1e-15);
        EXPECT_EQ(d.shared.rank(), 0u);
        EXPECT_EQ(d.a0.rank(), 0u);
        expect_pair_invariants(proj_A(), proj_B(th), d);
    }
}

TEST(DecomposePair, OrthogonalPair)
{
    const auto d = decompose_pair(proj_A(), proj_C());
    EXPECT_TRUE(d.pairs.empty());
    EXPECT_EQ(d.shared.rank(), 0u);
    EXPECT_LE(op_dist(d.a0.herm(), proj_A().herm()), 0.0);
    EXPECT_LE(op_dist(d.b0.herm(), proj_C().herm()), 0.0);
}

TEST(DecomposePair, RandomInvariants)
{
    Rng rng(2);
    for (int rep = 0; rep < 40; ++rep) {
        const std::size_t n = 2 + rep % 11;
        const std::size_t r = 1 + rep % n;
        const auto a = random_projection(rng, n, r), b = random_projection(rng, n, r);
        const auto d = decompose_pair(a, b);
        expect_pair_invariants(a, b, d);
        // generic pairs: Case II has rank max(0, 2r − n), Case I is empty
        EXPECT_EQ(d.shared.rank(), 2 * r > n ? 2 * r - n : 0u);
        EXPECT_EQ(d.a0.rank(), 0u);
    }
}

TEST(DecomposePair, MixedDirectSums)
{
    Rng rng(3);
    for (int rep = 0; rep < 20; ++rep) {
        const std::size_t shared = rep % 3, ortho = (rep / 3) % 3;
        std::vector<double> angles;
        for (std::size_t k = 0; k < 1 + rep % 3; ++k) angles.push_back(uniform(rng, 0.05, 1.5));
        const std::size_t n = shared + 2 * ortho + 2 * angles.size() + rep % 2;
        Projection b;
        const auto a = direct_sum_fixture(rng, n, shared, ortho, angles, &b);
        const auto d = decompose_pair(a, b);
        EXPECT_EQ(d.shared.rank(), shared);
        EXPECT_EQ(d.a0.rank(), ortho);
        EXPECT_EQ(d.pairs.size(), angles.size());
        expect_pair_invariants(a, b, d);
    }
}

TEST(DecomposePair, LambdasAreSpectrumOfSquaredShiftedSum)
{
    // (a + b − e)² with e the projection onto range(a) + range(b): eigenvalues λ_k on each angle block,
    // 1 on the shared part and 0 on the orthogonal part.
    Rng rng(4);
    for (int rep = 0; rep < 10; ++rep) {
        const std::vector<double> angles{uniform(rng, 0.1, 0.7), uniform(rng, 0.8, 1.4)};
        const std::size_t shared = 1, ortho = 1;
        const std::size_t n = shared + 2 * ortho + 2 * angles.size() + 1;
        Projection b;
        const auto a = direct_sum_fixture(rng, n, shared, ortho, angles, &b);
        const auto basis = svd((a.herm() + b.herm()).mat());
        CMat range_e(n, 0);
        std::size_t dim_e = 0;
        for (double s : basis.sigma) dim_e += s > 1e-8;
        range_e = basis.U.col_range(0, dim_e);
        const HermMat e = HermMat::symmetrized(range_e * range_e.adjoint());
        const HermMat m = a.herm() + b.herm() - e;
        const auto spectrum = herm_eig(HermMat::symmetrized(range_e.adjoint() * m.mat() * m.mat() * range_e));

        const auto d = decompose_pair(a, b);
        std::vector<double> expected{1.0, 0.0, 0.0};
        for (const auto& p : d.pairs) expected.insert(expected.end(), 2, p.lambda);
        std::sort(expected.rbegin(), expected.rend());
        ASSERT_EQ(spectrum.values.size(), expected.size());
        for (std::size_t k = 0; k < expected.size(); ++k) EXPECT_NEAR(spectrum.values[k], expected[k], 1e-10);
    }
}

TEST(DecomposePair, RankMismatch)
{
    Rng rng(5);
    EXPECT_THROW(decompose_pair(random_projection(rng, 5, 2), random_projection(rng, 5, 3)), RankMismatch);
    EXPECT_THROW(decompose_pair(random_projection(rng, 5, 2), random_projection(rng, 4, 2)), DimensionMismatch);
}

TEST(LambdaCheck, Examples)
{
    Rng rng(6);
    const auto a = random_projection(rng, 5, 1);
    const auto same = lambda_check(a, a);
    EXPECT_NEAR(same.lambda, 1.0, 1e-12);
    EXPECT_NEAR(same.mu, 1.0, 1e-12);
    const auto orth = lambda_check(proj_A(), proj_C());
    EXPECT_EQ(orth.lambda, 0.0);
    EXPECT_EQ(orth.mu, 0.0);
    const auto third = lambda_check(proj_A(), proj_B(std::numbers::pi / 3));
    EXPECT_NEAR(third.lambda, 0.25, 1e-15);
    EXPECT_NEAR(third.mu, 0.25, 1e-15);
}

TEST(LambdaCheck, NonScalarPairRejected)
{
    Rng rng(7);
    const auto a = random_projection(rng, 6, 2), b = random_projection(rng, 6, 2);
    EXPECT_THROW(lambda_check(a, b), NotScalarPair);
}

TEST(LambdaCheck, ScalarButNotMinimal)
{
    // rank-2 a with b at a common angle θ in both directions: P(a)b = cos²θ·a although a is not minimal
    Rng rng(8);
    const auto f = random_frame(rng, 5, 2);
    const auto b = projection_at_angles(f, {0.7, 0.7});
    const auto l = lambda_check(f.projection(), b);
    EXPECT_NEAR(l.lambda, std::cos(0.7) * std::cos(0.7), 1e-12);
}

TEST(PrincipalAngles, Examples)
{
    Rng rng(9);
    const auto a = random_projection(rng, 6, 3);
    for (double th : principal_angles(a, a).expanded()) EXPECT_EQ(th, 0.0);
    for (double th : {0.3, 1.0, 1.5}) {
        const auto pa = principal_angles(proj_A(), proj_B(th)).expanded();
        ASSERT_EQ(pa.size(), 1u);
        EXPECT_NEAR(pa[0], th, 1e-12);
    }
    const auto orth = principal_angles(proj_A(), proj_C());
    ASSERT_EQ(orth.thetas.size(), 1u);
    EXPECT_DOUBLE_EQ(orth.thetas[0], kHalfPi);
}

TEST(PrincipalAngles, RandomRankTwoInC4AgreesWithSvdOracle)
{
    Rng rng(10);
    for (int rep = 0; rep < 50; ++rep) {
        const auto a = random_projection(rng, 4, 2), b = random_projection(rng, 4, 2);
        const auto mine = principal_angles(a, b).expanded();
        const auto oracle = oracles::principal_angles_svd(a, b).expanded();
        ASSERT_EQ(mine.size(), oracle.size());
        for (std::size_t k = 0; k < mine.size(); ++k) EXPECT_NEAR(mine[k], oracle[k], 1e-8);
    }
}

TEST(PrincipalAngles, MultiplicitiesMatchCases)
{
    Rng rng(11);
    Projection b;
    const auto a = direct_sum_fixture(rng, 9, 2, 1, {0.4, 0.4}, &b);
    const auto pa = principal_angles(a, b);
    ASSERT_EQ(pa.thetas.size(), 3u);
    EXPECT_EQ(pa.thetas[0], 0.0);
    EXPECT_EQ(pa.multiplicities[0], 2u);
    EXPECT_NEAR(pa.thetas[1], 0.4, 1e-10);
    EXPECT_EQ(pa.multiplicities[1], 2u);
    EXPECT_DOUBLE_EQ(pa.thetas[2], kHalfPi);
    EXPECT_EQ(pa.multiplicities[2], 1u);
}

TEST(Antipodal, Examples)
{
    Rng rng(12);
    const auto a = random_projection(rng, 5, 2);
    EXPECT_FALSE(is_antipodal(a, a));
    EXPECT_TRUE(is_antipodal(proj_A(), proj_C()));
    for (double th : {0.1, 1.0, 1.5}) EXPECT_FALSE(is_antipodal(proj_A(), proj_B(th)));
    EXPECT_THROW(is_antipodal(random_projection(rng, 5, 1), a), RankMismatch);
}

TEST(Antipodal, Symmetric)
{
    Rng rng(13);
    for (int rep = 0; rep < 30; ++rep) {
        Projection b;
        const auto a = direct_sum_fixture(rng, 8, rep % 2, rep % 3 == 0 ? 1 : 0, {uniform(rng, 0.1, 1.4)}, &b);
        EXPECT_EQ(is_antipodal(a, b), is_antipodal(b, a));
        EXPECT_EQ(is_antipodal(a, b), rep % 3 == 0);
    }
}
