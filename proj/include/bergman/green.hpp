#pragma once

#include <cmath>
#include <limits>
#include <numbers>
#include <random>
#include <vector>

#include <Eigen/Dense>

#include "bergman/criterion.hpp"
#include "bergman/domain.hpp"

namespace bergman {

// Pluricomplex Green function with logarithmic pole, in the closed Moebius
// forms available on the disc and the ball. Other domains are deliberately
// unsupported.
class GreenSpec {
public:
    GreenSpec(DomainSpec domain, Point pole) : domain_(std::move(domain)), pole_(std::move(pole))
    {
        if (domain_.kind() != DomainKind::Disc && domain_.kind() != DomainKind::Ball)
            throw std::invalid_argument("Green function implemented for disc and ball only");
        if (!domain_.contains(pole_)) throw std::invalid_argument("Green pole must be interior");
    }

    const DomainSpec& domain() const { return domain_; }
    const Point& pole() const { return pole_; }

    // Moebius automorphism of the ball sending the pole to the origin,
    // evaluated at zeta. For the disc this is (zeta - p)/(1 - conj(p) zeta).
    Point moebius(const Point& zeta) const
    {
        const int n = domain_.dimension();
        const Point& a = pole_;
        double a2 = a.squaredNorm();
        if (a2 < 1e-30) return zeta;
        cplx za(0.0, 0.0);
        for (int i = 0; i < n; ++i) za += zeta[i] * std::conj(a[i]);
        double s = std::sqrt(1.0 - a2);
        Point proj = (za / a2) * a;          // P_a zeta
        Point orth = zeta - proj;            // Q_a zeta
        return (a - proj - s * orth) / (1.0 - za);
    }

    // G(zeta) = log |moebius(zeta)|, negative in the domain, 0 on the
    // boundary. At the pole the value is -infinity.
    double value(const Point& zeta) const
    {
        if (!domain_.contains(zeta)) throw std::invalid_argument("green_value: point outside domain");
        double r = moebius(zeta).norm();
        if (r == 0.0) return -std::numeric_limits<double>::infinity();
        return std::log(r);
    }

private:
    DomainSpec domain_;
    Point pole_;
};

struct VolumeEstimate {
    double value = 0.0;
    double stderr_ = 0.0;
    long long samples = 0;
    unsigned seed = 0;
};

namespace green_detail {

constexpr int kBatches = 32;

inline Point sample_box(std::mt19937_64& rng, int n)
{
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    Point z(n);
    for (int i = 0; i < n; ++i) z[i] = cplx(u(rng), u(rng));
    return z;
}

} // namespace green_detail

// Monte Carlo estimate of the Lebesgue volume of {G < level} by uniform
// sampling of the ambient box [-1,1]^{2n} with rejection. Batch means give
// the standard error; one RNG stream per batch keeps the sum reproducible.
inline VolumeEstimate sublevel_volume(const GreenSpec& g, double level, long long N, unsigned seed)
{
    if (!(level < 0.0)) throw std::invalid_argument("sublevel level must be negative");
    if (N < 1000) throw std::invalid_argument("sublevel_volume needs at least 1000 samples");

    const int n = g.domain().dimension();
    const double box_vol = std::pow(4.0, n);
    const long long per_batch = N / green_detail::kBatches;

    std::vector<double> batch_means(green_detail::kBatches);
    for (int b = 0; b < green_detail::kBatches; ++b) {
        std::mt19937_64 rng(seed + 0x9e3779b97f4a7c15ull * (b + 1));
        long long hits = 0;
        for (long long i = 0; i < per_batch; ++i) {
            Point z = green_detail::sample_box(rng, n);
            if (!g.domain().contains(z)) continue;
            if ((z - g.pole()).norm() < 1e-14) continue;
            if (g.value(z) < level) ++hits;
        }
        batch_means[b] = box_vol * static_cast<double>(hits) / static_cast<double>(per_batch);
    }

    VolumeEstimate est;
    est.samples = per_batch * green_detail::kBatches;
    est.seed = seed;
    double mean = 0.0;
    for (double m : batch_means) mean += m;
    mean /= green_detail::kBatches;
    double var = 0.0;
    for (double m : batch_means) var += (m - mean) * (m - mean);
    var /= (green_detail::kBatches - 1);
    est.value = mean;
    est.stderr_ = std::sqrt(var / green_detail::kBatches);
    return est;
}

// C = 1 + e^{4n + 7 + sup_modulus^2}, the extension constant sufficient for
// the jet-preserving L2 extension from the Green sublevel set.
inline double extension_constant(int n, double sup_modulus)
{
    if (n < 1) throw std::invalid_argument("extension_constant: n must be >= 1");
    if (!(sup_modulus > 0.0)) throw std::invalid_argument("extension_constant: sup_modulus must be positive");
    return 1.0 + std::exp(4.0 * n + 7.0 + sup_modulus * sup_modulus);
}

// integral of |f|^2 over {G < level} for each tuple entry, by pulling the
// integral back to the Moebius preimage ball of radius e^{level} and
// sampling that ball uniformly. The Jacobian of the automorphism is
// (1-|p|^2)^{n+1} / |1 - <w,p>|^{2(n+1)} in real volume.
inline std::vector<double> sublevel_masses(const GreenSpec& g, const BasisSpec& basis,
                                           const std::vector<FunctionVector>& fs, double level,
                                           long long N, unsigned seed)
{
    const int n = g.domain().dimension();
    const double s = std::exp(level);
    const double pi = std::numbers::pi;
    double nfac = std::tgamma(n + 1.0);
    const double ball_vol = std::pow(pi, n) * std::pow(s, 2 * n) / nfac;
    const Point& p = g.pole();
    const double jac_num = std::pow(1.0 - p.squaredNorm(), n + 1);

    std::vector<double> acc(fs.size(), 0.0);
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    long long kept = 0;
    while (kept < N) {
        // uniform point of the radius-s ball by box rejection
        Point w(n);
        for (int i = 0; i < n; ++i) w[i] = cplx(s * u(rng), s * u(rng));
        if (w.norm() >= s) continue;
        ++kept;
        Point zeta = g.moebius(w); // involution: maps ball_s onto the sublevel set
        cplx wp(0.0, 0.0);
        for (int i = 0; i < n; ++i) wp += w[i] * std::conj(p[i]);
        double jac = jac_num / std::pow(std::norm(1.0 - wp), n + 1);
        for (size_t j = 0; j < fs.size(); ++j) {
            cplx val(0.0, 0.0);
            for (int k = 0; k < basis.size(); ++k)
                val += fs[j].coeffs[k] * basis.value(k, zeta);
            acc[j] += std::norm(val) * jac;
        }
    }
    for (double& a : acc) a *= ball_vol / static_cast<double>(N);
    return acc;
}

struct HyperconvexityRow {
    Point pole;
    double bound; // C^{n+1} * product of sublevel masses
    double ratio; // criterion ratio at the pole
};

// The inequality chain behind the hyperconvexity argument: the criterion
// ratio at each pole is dominated by the extension constant times the
// product of sublevel-set masses of the tuple, and the bound trends to 0
// as the poles approach the boundary.
inline std::vector<HyperconvexityRow> hyperconvexity_bound(const KernelSource& src,
                                                           const std::vector<FunctionVector>& fs,
                                                           const std::vector<Point>& poles,
                                                           double level = -1.0, long long N = 20000,
                                                           unsigned seed = 0)
{
    const BasisSpec& basis = src.basis();
    const int n = basis.dimension();
    if (static_cast<int>(fs.size()) != n + 1)
        throw std::invalid_argument("hyperconvexity_bound: tuple must have n+1 entries");
    const double C = extension_constant(n, 1.0); // model domains sit in the unit ball/polydisc
    const double Cpow = std::pow(C, n + 1);

    std::vector<HyperconvexityRow> out;
    for (const auto& pole : poles) {
        GreenSpec g(src.domain(), pole);
        auto masses = sublevel_masses(g, basis, fs, level, N, seed);
        double prod = 1.0;
        for (double m : masses) prod *= m;
        HyperconvexityRow row;
        row.pole = pole;
        row.bound = Cpow * prod;
        row.ratio = tilde_ratio(src, fs, pole).ratio;
        out.push_back(std::move(row));
    }
    return out;
}

} // namespace bergman
