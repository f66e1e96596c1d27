#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "bergman/criterion.hpp"

using namespace bergman;
namespace {

constexpr double pi = std::numbers::pi;

std::vector<FunctionVector> unit_tuple(int m, int count)
{
    std::vector<FunctionVector> fs(count);
    for (int j = 0; j < count; ++j) {
        fs[j].coeffs = Eigen::VectorXcd::Zero(m);
        fs[j].coeffs[j] = 1.0;
    }
    return fs;
}

Point random_point(std::mt19937_64& rng, const DomainSpec& d, double lo, double hi)
{
    std::uniform_real_distribution<double> u(lo, hi);
    for (;;) {
        Point z(d.dimension());
        for (int i = 0; i < z.size(); ++i) z[i] = cplx(u(rng), u(rng));
        if (d.contains(z)) return z;
    }
}

} // namespace

TEST_CASE("jet matrix determinant of the leading tuple at the disc center")
{
    auto basis = BasisSpec::build(DomainSpec::disc(), 10);
    auto fs = unit_tuple(10, 2);
    // rows (phi_0, phi_1) and their derivatives at 0: det = sqrt(2)/pi
    CHECK(std::abs(jet_matrix_det(basis, fs, make_point({0.0})))
          == doctest::Approx(std::sqrt(2.0) / pi).epsilon(1e-12));

    // dependent tuple is rejected
    auto bad = fs;
    bad[1].coeffs = 2.0 * bad[0].coeffs;
    CHECK_THROWS_AS(jet_matrix_det(basis, bad, make_point({0.0})), std::invalid_argument);
}

TEST_CASE("norm identity residual at seeded interior points")
{
    struct Case {
        KernelSource src;
        double lo, hi;
    };
    std::vector<Case> cases;
    cases.push_back({KernelSource::closed_form(DomainSpec::disc()), -0.6, 0.6});
    cases.push_back({KernelSource::closed_form(DomainSpec::ball(2)), -0.45, 0.45});
    cases.push_back({KernelSource::closed_form(DomainSpec::polydisc(2)), -0.6, 0.6});
    cases.push_back({KernelSource::series(DomainSpec::disc(), 60), -0.6, 0.6});
    cases.push_back({KernelSource::series(DomainSpec::annulus(0.5), 60), -0.9, 0.9});

    std::mt19937_64 rng(101);
    for (auto& c : cases) {
        for (int trial = 0; trial < 100; ++trial) {
            Point z = random_point(rng, c.src.domain(), c.lo, c.hi);
            CHECK(norm_identity_residual(c.src, z) < 1e-8);
        }
    }
}

TEST_CASE("dual tuple attains the criterion denominator")
{
    // normalized value of the dual tuple = det of the bordered jet Gram
    // = K^{n+1} det T, the claimed supremum
    for (auto& src : {KernelSource::series(DomainSpec::disc(), 40),
                      KernelSource::series(DomainSpec::polydisc(2), 60),
                      KernelSource::series(DomainSpec::annulus(0.5), 40)}) {
        std::mt19937_64 rng(7);
        for (int trial = 0; trial < 10; ++trial) {
            Point z = random_point(rng, src.domain(), -0.8, 0.8);
            auto fs = dual_tuple(src.basis(), z);
            auto rep = tilde_ratio(src, fs, z);
            CHECK(rep.normalized == doctest::Approx(rep.denominator).epsilon(1e-9));
        }
    }
}

TEST_CASE("normalized ratio is invariant under tuple recombination")
{
    auto src = KernelSource::series(DomainSpec::disc(), 30);
    std::mt19937_64 rng(13);
    std::normal_distribution<double> g(0.0, 1.0);
    Point z = make_point({cplx(0.4, -0.3)});
    auto fs = unit_tuple(30, 2);
    auto base = tilde_ratio(src, fs, z);

    for (int trial = 0; trial < 20; ++trial) {
        Eigen::MatrixXcd M(2, 2);
        for (int i = 0; i < 2; ++i)
            for (int j = 0; j < 2; ++j) M(i, j) = cplx(g(rng), g(rng));
        if (std::abs(M.determinant()) < 0.1) continue;
        std::vector<FunctionVector> gs(2);
        for (int j = 0; j < 2; ++j)
            gs[j].coeffs = fs[0].coeffs * M(0, j) + fs[1].coeffs * M(1, j);
        auto rep = tilde_ratio(src, gs, z);
        CHECK(rep.normalized == doctest::Approx(base.normalized).epsilon(1e-9));
        // numerator and Gramian both scale by |det M|^2
        double scale = std::norm(M.determinant());
        CHECK(rep.gram == doctest::Approx(scale * base.gram).epsilon(1e-9));
    }
}

TEST_CASE("criterion ratio decays along boundary approach sequences")
{
    struct Case {
        KernelSource src;
        Point target;
    };
    std::vector<Case> cases;
    cases.push_back({KernelSource::series(DomainSpec::disc(), 60), make_point({1.0})});
    cases.push_back({KernelSource::series(DomainSpec::annulus(0.5), 60), make_point({1.0})});
    cases.push_back({KernelSource::series(DomainSpec::annulus(0.5), 60), make_point({0.5})});

    for (auto& c : cases) {
        const int m = c.src.basis().size();
        const int n = c.src.domain().dimension();
        auto fs = unit_tuple(m, n + 1);
        auto seq = c.src.domain().approach_sequence(c.target, 4);
        double prev = std::numeric_limits<double>::infinity();
        for (const auto& z : seq) {
            double r = tilde_ratio(c.src, fs, z).ratio;
            CHECK(r > 0.0);
            CHECK(r < prev);
            prev = r;
        }
    }
}

TEST_CASE("sup probe brackets the denominator")
{
    for (auto& src : {KernelSource::series(DomainSpec::disc(), 20),
                      KernelSource::series(DomainSpec::annulus(0.5), 20)}) {
        std::mt19937_64 rng(23);
        for (int trial = 0; trial < 5; ++trial) {
            Point z = random_point(rng, src.domain(), -0.8, 0.8);
            auto probe = fraction_sup_probe(src, z, 4, 17);
            CHECK(probe.best <= probe.target * (1.0 + 1e-9));
            CHECK(probe.best >= probe.target * (1.0 - 1e-4));
        }
    }
}

TEST_CASE("Fubini-Study pullback matches the tilde tensor")
{
    auto disc = KernelSource::closed_form(DomainSpec::disc());
    CHECK(fubini_pullback_residual(disc, make_point({cplx(0.3, 0.2)})) < 1e-5);

    auto ball = KernelSource::closed_form(DomainSpec::ball(2));
    Eigen::MatrixXcd tt = tilde_tensor(ball, make_point({0.1, 0.2}));
    CHECK(fubini_pullback_residual(ball, make_point({0.1, 0.2}))
          < 1e-4 * tt.cwiseAbs().maxCoeff());
}

TEST_CASE("Kobayashi ratio bounded by the squared norm")
{
    auto src = KernelSource::series(DomainSpec::disc(), 30);
    std::mt19937_64 rng(29);
    std::normal_distribution<double> g(0.0, 1.0);
    for (int trial = 0; trial < 30; ++trial) {
        FunctionVector f;
        f.coeffs = Eigen::VectorXcd(30);
        for (int k = 0; k < 30; ++k) f.coeffs[k] = cplx(g(rng), g(rng));
        Point z = random_point(rng, src.domain(), -0.8, 0.8);
        CHECK(kobayashi_ratio(src, f, z) <= f.norm2() * (1.0 + 1e-10));
    }
    // the constant phi_0 attains the bound at the center
    FunctionVector c0;
    c0.coeffs = Eigen::VectorXcd::Zero(30);
    c0.coeffs[0] = 1.0;
    CHECK(kobayashi_ratio(src, c0, make_point({0.0})) == doctest::Approx(1.0).epsilon(1e-12));

    FunctionVector zero;
    zero.coeffs = Eigen::VectorXcd::Zero(30);
    CHECK_THROWS_AS(kobayashi_ratio(src, zero, make_point({0.0})), std::invalid_argument);
}
