#pragma once

#include <array>
#include <cmath>
#include <numbers>
#include <optional>
#include <random>
#include <vector>

#include <Eigen/Dense>

#include "bergman/tensors.hpp"

namespace bergman {

// Piecewise-straight interior path; the admissible competitors whose
// lengths certify distance upper bounds.
struct Path {
    std::vector<Point> nodes;

    void validate(const DomainSpec& d) const
    {
        if (nodes.size() < 2) throw std::invalid_argument("path needs at least two nodes");
        for (const auto& p : nodes)
            if (!d.contains(p)) throw std::invalid_argument("path node outside domain");
        for (size_t i = 1; i < nodes.size(); ++i)
            if ((nodes[i] - nodes[i - 1]).norm() <= 1e-16)
                throw std::invalid_argument("consecutive path nodes coincide");
    }

    static Path straight_line(const Point& a, const Point& b, int segments)
    {
        if (segments < 1) throw std::invalid_argument("segments must be >= 1");
        Path p;
        for (int s = 0; s <= segments; ++s)
            p.nodes.push_back(a + (b - a) * (static_cast<double>(s) / segments));
        return p;
    }
};

namespace detail {

// 8-point Gauss-Legendre on [0,1]
inline const std::array<double, 8>& gauss8_nodes()
{
    static const std::array<double, 8> x = {0.0198550717512319, 0.1016667612931866,
                                            0.2372337950418355, 0.4082826787521751,
                                            0.5917173212478249, 0.7627662049581645,
                                            0.8983332387068134, 0.9801449282487681};
    return x;
}

inline const std::array<double, 8>& gauss8_weights()
{
    static const std::array<double, 8> w = {0.0506142681451881, 0.1111905172266872,
                                            0.1568533229389436, 0.1813418916891810,
                                            0.1813418916891810, 0.1568533229389436,
                                            0.1111905172266872, 0.0506142681451881};
    return w;
}

// Recursive adaptive Gauss on [t0,t1]; bisect while the two-panel estimate
// still moves the result.
inline double adaptive_gauss(const std::function<double(double)>& f, double t0, double t1,
                             double tol, int depth)
{
    auto panel = [&](double a, double b) {
        double acc = 0.0;
        for (int q = 0; q < 8; ++q)
            acc += gauss8_weights()[q] * f(a + (b - a) * gauss8_nodes()[q]);
        return acc * (b - a);
    };
    double whole = panel(t0, t1);
    double mid = 0.5 * (t0 + t1);
    double split = panel(t0, mid) + panel(mid, t1);
    if (depth <= 0 || std::abs(whole - split) <= tol * (std::abs(split) + 1e-12)) return split;
    return adaptive_gauss(f, t0, mid, tol, depth - 1) + adaptive_gauss(f, mid, t1, tol, depth - 1);
}

inline double segment_length(const KernelSource& src, MetricKind kind, const Point& a,
                             const Point& b, double fd_h)
{
    Point tangent = b - a;
    auto speed = [&](double t) {
        Point z = a + tangent * t;
        if (src.radial_1d()) {
            // exact radial scalar; valid at every point of a radial domain
            RadialTensors rt = radial_tensors(src, std::norm(z[0]));
            double g = (kind == MetricKind::Bergman) ? rt.T : rt.tilde;
            return std::sqrt(g) * std::abs(tangent[0]);
        }
        Eigen::MatrixXcd M = metric_tensor(src, kind, z, fd_h);
        return vector_length(M, tangent);
    };
    return adaptive_gauss(speed, 0.0, 1.0, 1e-6, 12);
}

} // namespace detail

// Sum over segments of Gauss quadrature of the metric speed along the
// straight-segment parametrization.
inline double path_length(const KernelSource& src, MetricKind kind, const Path& p,
                          double fd_h = 1e-3)
{
    p.validate(src.domain());
    double acc = 0.0;
    for (size_t i = 1; i < p.nodes.size(); ++i)
        acc += detail::segment_length(src, kind, p.nodes[i - 1], p.nodes[i], fd_h);
    return acc;
}

// Minimizes path_length over the interior node positions starting from the
// straight line; the result is a certified upper bound on the distance.
inline double distance_upper(const KernelSource& src, MetricKind kind, const Point& a,
                             const Point& b, int segments = 16, int iters = 200, unsigned seed = 0,
                             double fd_h = 1e-3)
{
    const DomainSpec& d = src.domain();
    if (!d.contains(a) || !d.contains(b))
        throw std::invalid_argument("distance_upper: endpoint outside domain");

    Path p = Path::straight_line(a, b, segments);
    // Straight chords may clip a hole (annulus, puncture); restart from a
    // log-polar arc between the endpoints, which stays at positive radius.
    bool clipped = false;
    for (const auto& node : p.nodes)
        if (!d.contains(node)) clipped = true;
    if (clipped && d.dimension() == 1) {
        double ra = std::abs(a[0]), rb = std::abs(b[0]);
        double tha = std::arg(a[0]), thb = std::arg(b[0]);
        double dth = thb - tha;
        if (dth > std::numbers::pi) dth -= 2.0 * std::numbers::pi;
        if (dth < -std::numbers::pi) dth += 2.0 * std::numbers::pi;
        for (int s = 0; s <= segments; ++s) {
            double t = static_cast<double>(s) / segments;
            double r = std::pow(ra, 1.0 - t) * std::pow(rb, t);
            p.nodes[s][0] = std::polar(r, tha + t * dth);
        }
        p.nodes.front() = a;
        p.nodes.back() = b;
    }

    auto total = [&](const Path& path) { return path_length(src, kind, path, fd_h); };

    double best = total(p);
    const int n = d.dimension();
    double step = 0.05 * (b - a).norm() / segments;
    std::mt19937_64 rng(seed);

    for (int it = 0; it < iters; ++it) {
        // finite-difference gradient over all interior nodes
        std::vector<Point> grad(p.nodes.size(), Point::Zero(n));
        const double delta = 1e-5;
        bool any = false;
        for (size_t s = 1; s + 1 < p.nodes.size(); ++s) {
            for (int i = 0; i < n; ++i) {
                for (int part = 0; part < 2; ++part) {
                    cplx dz = part == 0 ? cplx(delta, 0.0) : cplx(0.0, delta);
                    Path pp = p, pm = p;
                    pp.nodes[s][i] += dz;
                    pm.nodes[s][i] -= dz;
                    double lp, lm;
                    try {
                        lp = total(pp);
                        lm = total(pm);
                    } catch (const std::exception&) {
                        continue;
                    }
                    double g = (lp - lm) / (2.0 * delta);
                    grad[s][i] += part == 0 ? cplx(g, 0.0) : cplx(0.0, g);
                    any = true;
                }
            }
        }
        if (!any) break;
        double gnorm = 0.0;
        for (const auto& g : grad) gnorm += g.squaredNorm();
        gnorm = std::sqrt(gnorm);
        if (gnorm < 1e-10) break;

        bool improved = false;
        double trial_step = step;
        for (int bt = 0; bt < 12; ++bt) {
            Path cand = p;
            bool ok = true;
            for (size_t s = 1; s + 1 < cand.nodes.size(); ++s) {
                cand.nodes[s] -= grad[s] * (trial_step / gnorm);
                if (!d.contains(cand.nodes[s])) ok = false;
            }
            if (ok) {
                double len;
                try {
                    len = total(cand);
                } catch (const std::exception&) {
                    len = std::numeric_limits<double>::infinity();
                }
                if (len < best) {
                    best = len;
                    p = cand;
                    step = trial_step * 1.2;
                    improved = true;
                    break;
                }
            }
            trial_step *= 0.5;
        }
        if (!improved) {
            step *= 0.5;
            if (step < 1e-12) break;
        }
    }
    return best;
}

// 1-D adaptive quadrature of the radial metric speed along a common ray.
// Exact distance on the disc (radial paths are geodesics by rotational
// symmetry), certified upper bound otherwise.
inline double radial_distance(const KernelSource& src, MetricKind kind, double r1, double r2)
{
    if (!src.radial_1d())
        throw std::invalid_argument("radial_distance requires a one-dimensional radial domain");
    const DomainSpec& d = src.domain();
    double lo = std::min(r1, r2), hi = std::max(r1, r2);
    Point plo = make_point({cplx(lo, 0.0)}), phi = make_point({cplx(hi, 0.0)});
    if (!d.contains(plo) || !d.contains(phi))
        throw std::invalid_argument("radial_distance: ray exits domain");

    auto speed = [&](double rho) {
        RadialTensors rt = radial_tensors(src, rho * rho);
        return std::sqrt(kind == MetricKind::Bergman ? rt.T : rt.tilde);
    };
    return detail::adaptive_gauss(speed, lo, hi, 1e-9, 36);
}

struct ProbeRow {
    int k;
    Point point;
    double boundary_distance;
    double distance_estimate;
};

struct ProbeResult {
    std::vector<ProbeRow> rows;
    Point anchor;
    double slope; // least-squares slope of distance vs k
};

struct ProbeConfig {
    int segments = 16;
    int iters = 200;
    unsigned seed = 0;
    double fd_h = 1e-3;
    std::optional<Point> anchor; // default: 0.5 on the target ray / origin
};

// Distance upper bounds from a fixed interior anchor to each approach
// point, plus a log-fit slope of distance vs k. Radial domains use the
// exact radial quadrature; ball and polydisc use the path optimizer.
inline ProbeResult completeness_probe(const KernelSource& src, MetricKind kind,
                                      const Point& target, int kmax, ProbeConfig cfg = {})
{
    const DomainSpec& d = src.domain();
    auto points = d.approach_sequence(target, kmax);

    ProbeResult out;
    Point anchor;
    if (cfg.anchor) {
        anchor = *cfg.anchor;
        if (!d.contains(anchor)) throw std::invalid_argument("probe anchor outside domain");
    } else if (d.dimension() == 1) {
        // anchor on the target ray, halfway into the domain
        double anchor_r =
            d.kind() == DomainKind::Annulus ? 0.5 * (1.0 + d.inner_radius()) : 0.5;
        double rt = std::abs(target[0]);
        cplx dir = rt > 1e-14 ? target[0] / rt : cplx(1.0, 0.0);
        anchor = make_point({dir * anchor_r});
    } else {
        anchor = Point::Zero(d.dimension());
    }
    out.anchor = anchor;

    for (int k = 1; k <= kmax; ++k) {
        const Point& z = points[k - 1];
        ProbeRow row;
        row.k = k;
        row.point = z;
        row.boundary_distance = d.boundary_distance(z);
        if (d.dimension() == 1)
            row.distance_estimate = radial_distance(src, kind, std::abs(anchor[0]), std::abs(z[0]));
        else
            row.distance_estimate =
                distance_upper(src, kind, anchor, z, cfg.segments, cfg.iters, cfg.seed, cfg.fd_h);
        out.rows.push_back(std::move(row));
    }

    // least-squares fit distance = slope * k + intercept
    double n = static_cast<double>(out.rows.size());
    double sk = 0, sd = 0, skk = 0, skd = 0;
    for (const auto& r : out.rows) {
        sk += r.k;
        sd += r.distance_estimate;
        skk += static_cast<double>(r.k) * r.k;
        skd += r.k * r.distance_estimate;
    }
    double denom = n * skk - sk * sk;
    out.slope = denom != 0.0 ? (n * skd - sk * sd) / denom : 0.0;
    return out;
}

} // namespace bergman
