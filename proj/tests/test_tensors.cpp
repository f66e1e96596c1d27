#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "bergman/tensors.hpp"

using namespace bergman;
namespace {

// Closed-form oracles from hand differentiation of log K.
// disc:     T = 2/(1-|z|^2)^2,       Ric = -T, T~ = 3T
// ball n:   T = (n+1)(I/(1-s) + z* z/(1-s)^2), Ric = -T, T~ = (n+2)T
// polydisc: block diagonal of disc entries,    Ric = -T, T~ = (n+2)T
Eigen::MatrixXcd disc_T_oracle(const Point& z)
{
    double u = 1.0 - std::norm(z[0]);
    Eigen::MatrixXcd T(1, 1);
    T(0, 0) = 2.0 / (u * u);
    return T;
}

Eigen::MatrixXcd ball_T_oracle(const Point& z)
{
    const int n = static_cast<int>(z.size());
    double u = 1.0 - z.squaredNorm();
    Eigen::MatrixXcd T(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            T(i, j) = (n + 1.0) * ((i == j ? 1.0 / u : 0.0) + std::conj(z[i]) * z[j] / (u * u));
    return T;
}

Eigen::MatrixXcd polydisc_T_oracle(const Point& z)
{
    const int n = static_cast<int>(z.size());
    Eigen::MatrixXcd T = Eigen::MatrixXcd::Zero(n, n);
    for (int i = 0; i < n; ++i) {
        double u = 1.0 - std::norm(z[i]);
        T(i, i) = 2.0 / (u * u);
    }
    return T;
}

} // namespace

TEST_CASE("Bergman tensor at distinguished points")
{
    auto disc = KernelSource::closed_form(DomainSpec::disc());
    CHECK(bergman_tensor(disc, make_point({0.0}))(0, 0).real() == doctest::Approx(2.0));

    auto ball = KernelSource::closed_form(DomainSpec::ball(2));
    Eigen::MatrixXcd Tb = bergman_tensor(ball, make_point({0.0, 0.0}));
    CHECK((Tb - 3.0 * Eigen::MatrixXcd::Identity(2, 2)).cwiseAbs().maxCoeff() < 1e-12);

    auto poly = KernelSource::closed_form(DomainSpec::polydisc(2));
    Eigen::MatrixXcd Tp = bergman_tensor(poly, make_point({0.0, 0.0}));
    CHECK((Tp - 2.0 * Eigen::MatrixXcd::Identity(2, 2)).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("Bergman tensor matches oracles at interior points")
{
    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> u(-0.55, 0.55);
    auto disc = KernelSource::closed_form(DomainSpec::disc());
    auto ball = KernelSource::closed_form(DomainSpec::ball(2));
    auto poly = KernelSource::closed_form(DomainSpec::polydisc(2));
    for (int trial = 0; trial < 25; ++trial) {
        Point z1 = make_point({cplx(u(rng), u(rng))});
        CHECK((bergman_tensor(disc, z1) - disc_T_oracle(z1)).cwiseAbs().maxCoeff() < 1e-10);

        Point z2 = make_point({cplx(u(rng), u(rng)), cplx(u(rng), u(rng))});
        if (ball.domain().contains(z2))
            CHECK((bergman_tensor(ball, z2) - ball_T_oracle(z2)).cwiseAbs().maxCoeff() < 1e-9);
        CHECK((bergman_tensor(poly, z2) - polydisc_T_oracle(z2)).cwiseAbs().maxCoeff() < 1e-9);
    }
}

TEST_CASE("FD Ricci against the symbolic oracle")
{
    auto disc = KernelSource::closed_form(DomainSpec::disc());
    Eigen::MatrixXcd R = ricci_tensor(disc, make_point({0.0}), 1e-3);
    CHECK(R(0, 0).real() == doctest::Approx(-2.0).epsilon(1e-6));

    auto ball = KernelSource::closed_form(DomainSpec::ball(2));
    Eigen::MatrixXcd Rb = ricci_tensor(ball, make_point({0.0, 0.0}), 1e-3);
    CHECK((Rb + 3.0 * Eigen::MatrixXcd::Identity(2, 2)).cwiseAbs().maxCoeff() < 1e-5);

    // off-center: Ric = -T on these homogeneous domains
    std::mt19937_64 rng(5);
    std::uniform_real_distribution<double> u(-0.4, 0.4);
    for (int trial = 0; trial < 10; ++trial) {
        Point z = make_point({cplx(u(rng), u(rng))});
        Eigen::MatrixXcd want = -disc_T_oracle(z);
        Eigen::MatrixXcd got = ricci_tensor(disc, z, 1e-3);
        CHECK(std::abs(got(0, 0).real() - want(0, 0).real())
              < 1e-5 * std::abs(want(0, 0).real()));
    }
    Point zp = make_point({cplx(0.3, -0.2), cplx(-0.1, 0.25)});
    auto poly = KernelSource::closed_form(DomainSpec::polydisc(2));
    Eigen::MatrixXcd Rp = ricci_tensor(poly, zp, 1e-3);
    Eigen::MatrixXcd wantp = -polydisc_T_oracle(zp);
    CHECK((Rp - wantp).cwiseAbs().maxCoeff() < 1e-5 * wantp.cwiseAbs().maxCoeff());
}

TEST_CASE("tilde tensor values and identity")
{
    auto disc = KernelSource::closed_form(DomainSpec::disc());
    CHECK(tilde_tensor(disc, make_point({0.0}))(0, 0).real() == doctest::Approx(6.0));

    auto ball = KernelSource::closed_form(DomainSpec::ball(2));
    Eigen::MatrixXcd Tt = tilde_tensor(ball, make_point({0.0, 0.0}));
    CHECK((Tt - 12.0 * Eigen::MatrixXcd::Identity(2, 2)).cwiseAbs().maxCoeff() < 1e-5);

    // consistency with (n+1)T - Ric (FD tolerance on the radial exact route)
    Point z = make_point({cplx(0.35, 0.2)});
    Eigen::MatrixXcd lhs = tilde_tensor(disc, z);
    Eigen::MatrixXcd rhs = 2.0 * bergman_tensor(disc, z) - ricci_tensor(disc, z, 1e-3);
    CHECK((lhs - rhs).cwiseAbs().maxCoeff() < 1e-5 * lhs.cwiseAbs().maxCoeff());
}

TEST_CASE("tilde tensor positive definite at random interior points")
{
    auto series = KernelSource::series(DomainSpec::disc(), 60);
    std::mt19937_64 rng(17);
    std::uniform_real_distribution<double> u(-0.7, 0.7);
    int checked = 0;
    while (checked < 30) {
        Point z = make_point({cplx(u(rng), u(rng))});
        if (!series.domain().contains(z)) continue;
        ++checked;
        CHECK(min_eigenvalue(tilde_tensor(series, z)) > 0.0);
    }
}

TEST_CASE("Ricci upper bound as a matrix inequality")
{
    // (n+1) T - Ric is positive definite at sampled interior points
    auto ball = KernelSource::closed_form(DomainSpec::ball(2));
    std::mt19937_64 rng(23);
    std::uniform_real_distribution<double> u(-0.45, 0.45);
    for (int trial = 0; trial < 15; ++trial) {
        Point z = make_point({cplx(u(rng), u(rng)), cplx(u(rng), u(rng))});
        if (!ball.domain().contains(z)) continue;
        Eigen::MatrixXcd M = 3.0 * bergman_tensor(ball, z) - ricci_tensor(ball, z, 1e-3);
        CHECK(min_eigenvalue(M) > 0.0);
    }
    // disc at 0: (n+1)T - Ric = [6]
    auto disc = KernelSource::closed_form(DomainSpec::disc());
    Eigen::MatrixXcd M = 2.0 * bergman_tensor(disc, make_point({0.0}))
                         - ricci_tensor(disc, make_point({0.0}), 1e-3);
    CHECK(M(0, 0).real() == doctest::Approx(6.0).epsilon(1e-6));
}

TEST_CASE("biholomorphic invariance of the tilde tensor on the disc")
{
    // disc automorphism phi_a(z) = (z-a)/(1 - conj(a) z):
    // T~(phi(z)) |phi'(z)|^2 = T~(z)
    auto disc = KernelSource::closed_form(DomainSpec::disc());
    std::mt19937_64 rng(29);
    std::uniform_real_distribution<double> u(-0.5, 0.5);
    for (int trial = 0; trial < 20; ++trial) {
        cplx a(u(rng), u(rng)), z(u(rng), u(rng));
        cplx w = (z - a) / (1.0 - std::conj(a) * z);
        cplx dphi = (1.0 - std::norm(a)) / std::pow(1.0 - std::conj(a) * z, 2);
        double lhs = tilde_tensor(disc, make_point({w}))(0, 0).real() * std::norm(dphi);
        double rhs = tilde_tensor(disc, make_point({z}))(0, 0).real();
        CHECK(std::abs(lhs - rhs) < 1e-8 * std::abs(rhs));
    }
}

TEST_CASE("vector length")
{
    Eigen::MatrixXcd M(1, 1);
    M(0, 0) = 2.0;
    Eigen::VectorXcd X(1);
    X[0] = 1.0;
    CHECK(vector_length(M, X) == doctest::Approx(std::sqrt(2.0)));
    X[0] = 0.0;
    CHECK(vector_length(M, X) == doctest::Approx(0.0));

    // |c| scaling
    Eigen::MatrixXcd M2(2, 2);
    M2 << 3.0, cplx(0.5, 0.2), cplx(0.5, -0.2), 1.0;
    Eigen::VectorXcd Y(2);
    Y << cplx(0.3, -1.0), cplx(2.0, 0.1);
    cplx c(1.7, -0.4);
    CHECK(vector_length(M2, c * Y) == doctest::Approx(std::abs(c) * vector_length(M2, Y)));
    Eigen::VectorXcd bad(3);
    CHECK_THROWS_AS(vector_length(M2, bad), std::invalid_argument);
}

TEST_CASE("degenerate truncation is a hard error")
{
    // m = n+1 monomial terms on the ball give a kernel whose tensor is
    // singular at some points; a deliberately crippled custom series (two
    // equal-direction terms) must be rejected rather than clamped
    std::vector<CustomTerm> terms = {{{0}, 0.5641895835477563}, {{2}, 0.9772050238058398}};
    auto d = DomainSpec::custom_series(1, terms);
    auto src = KernelSource::series(d, 2);
    // tensor of span{1, z^2} degenerates at z = 0 (no linear term)
    CHECK_THROWS_AS(bergman_tensor(src, make_point({0.0})), numerical_error);
}
