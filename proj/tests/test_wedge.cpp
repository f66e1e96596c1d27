#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "bergman/wedge.hpp"

using namespace bergman;
using wedge::WedgeVector;
using wedge::cplx;

namespace {

std::vector<Eigen::VectorXcd> random_vectors(std::mt19937_64& rng, int count, int dim)
{
    std::normal_distribution<double> g(0.0, 1.0);
    std::vector<Eigen::VectorXcd> out(count);
    for (auto& v : out) {
        v.resize(dim);
        for (int i = 0; i < dim; ++i) v[i] = cplx(g(rng), g(rng));
    }
    return out;
}

Eigen::VectorXcd unit(int dim, int i)
{
    Eigen::VectorXcd e = Eigen::VectorXcd::Zero(dim);
    e[i] = 1.0;
    return e;
}

} // namespace

TEST_CASE("basis wedges")
{
    auto u = wedge::wedge_of({unit(4, 0), unit(4, 1)});
    CHECK(u.coords().size() == 1);
    CHECK(u.coord({0, 1}) == cplx(1.0, 0.0));
    CHECK(wedge::inner(u, u) == cplx(1.0, 0.0));

    auto v = wedge::wedge_of({unit(4, 2), unit(4, 3)});
    CHECK(wedge::inner(u, v) == cplx(0.0, 0.0));
}

TEST_CASE("antisymmetry and degeneracy")
{
    std::mt19937_64 rng(1);
    auto vs = random_vectors(rng, 2, 5);
    auto uv = wedge::wedge_of({vs[0], vs[1]});
    auto vu = wedge::wedge_of({vs[1], vs[0]});
    for (const auto& [idx, c] : uv.coords()) CHECK(std::abs(c + vu.coord(idx)) < 1e-14);

    auto vv = wedge::wedge_of({vs[0], vs[0]});
    CHECK(vv.norm2() < 1e-24);
}

TEST_CASE("Cauchy-Binet: wedge inner product equals det(A B*)")
{
    std::mt19937_64 rng(42);
    for (int trial = 0; trial < 200; ++trial) {
        int m = 3 + static_cast<int>(rng() % 6); // 3..8
        int s = 1 + static_cast<int>(rng() % std::min(3, m));
        auto as = random_vectors(rng, s, m);
        auto bs = random_vectors(rng, s, m);
        cplx lhs = wedge::inner(wedge::wedge_of(as), wedge::wedge_of(bs));

        Eigen::MatrixXcd A(s, m), B(s, m);
        for (int i = 0; i < s; ++i) {
            A.row(i) = as[i].transpose();
            B.row(i) = bs[i].transpose();
        }
        cplx rhs = (A * B.adjoint()).determinant();
        CHECK(std::abs(lhs - rhs) <= 1e-10 * (1.0 + std::abs(rhs)));
    }
}

TEST_CASE("squared wedge norm is the Gram determinant")
{
    std::mt19937_64 rng(7);
    for (int trial = 0; trial < 50; ++trial) {
        int m = 4 + static_cast<int>(rng() % 4);
        int s = 2 + static_cast<int>(rng() % 2);
        auto vs = random_vectors(rng, s, m);
        double lhs = wedge::wedge_of(vs).norm2();
        double rhs = wedge::gram_det(vs);
        CHECK(lhs == doctest::Approx(rhs).epsilon(1e-10));
        CHECK(rhs > 0.0); // independent with probability one
    }
    // dependent tuple: Gram determinant vanishes
    std::mt19937_64 rng2(9);
    auto vs = random_vectors(rng2, 2, 5);
    vs.push_back(vs[0] + cplx(2.0, -1.0) * vs[1]);
    CHECK(std::abs(wedge::gram_det(vs)) < 1e-10 * vs[0].squaredNorm() * vs[1].squaredNorm()
                                              * vs[2].squaredNorm());
}

TEST_CASE("Plucker residual of decomposables vanishes")
{
    std::mt19937_64 rng(13);
    for (int trial = 0; trial < 60; ++trial) {
        int m = 4 + static_cast<int>(rng() % 5);
        int s = 2 + static_cast<int>(rng() % 3);
        if (s > m) continue;
        auto vs = random_vectors(rng, s, m);
        auto u = wedge::wedge_of(vs);
        CHECK(wedge::plucker_residual(u) <= 1e-12 * std::max(1.0, u.norm2()));
        CHECK(wedge::is_decomposable(u, 1e-9));
    }
}

TEST_CASE("the classical non-decomposable example")
{
    WedgeVector u(2, 4);
    u.add({0, 1}, 1.0);
    u.add({2, 3}, 1.0);
    CHECK(wedge::plucker_residual(u) == doctest::Approx(1.0));
    CHECK_FALSE(wedge::is_decomposable(u, 1e-9));

    // quadratic scaling of the residual
    WedgeVector cu = u;
    cu *= cplx(0.0, 3.0);
    CHECK(wedge::plucker_residual(cu) == doctest::Approx(9.0));
}

TEST_CASE("limits of decomposables stay decomposable")
{
    std::mt19937_64 rng(31);
    auto base = random_vectors(rng, 3, 6); // v0, v1, w0
    double k = 1e6;
    auto u = wedge::wedge_of({base[0] + (1.0 / k) * base[2], base[1]});
    double n2 = u.norm2();
    CHECK(wedge::is_decomposable(u, 1e-9));
    CHECK(wedge::plucker_residual(u) / n2 < 1e-10);
}

TEST_CASE("zero vector and shape errors")
{
    WedgeVector z(2, 4);
    CHECK_THROWS_AS(wedge::plucker_residual(z), std::invalid_argument);
    CHECK_THROWS_AS(wedge::is_decomposable(z, 1e-9), std::invalid_argument);
    WedgeVector a(2, 4), b(3, 4);
    a.add({0, 1}, 1.0);
    CHECK_THROWS_AS(wedge::inner(a, b), std::invalid_argument);
    CHECK_THROWS_AS(WedgeVector(2, 100), std::invalid_argument); // ambient cap
}
