#pragma once

#include <cmath>
#include <complex>
#include <optional>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "bergman/errors.hpp"

namespace bergman {

using cplx = std::complex<double>;
using Point = Eigen::VectorXcd;

enum class DomainKind {
    Disc,          // unit disc in C
    Polydisc,      // product of n unit discs
    Ball,          // Euclidean unit ball in C^n
    Annulus,       // r < |z| < 1 in C
    PuncturedDisc, // unit disc minus the origin
    CustomSeries   // user-supplied monomial system on the unit polydisc
};

struct CustomTerm {
    std::vector<int> exponents;
    double normalization; // reciprocal L2 norm of the monomial
};

// A bounded model domain. Membership and boundary-distance queries are the
// geometric substrate for every approach-sequence experiment. The puncture
// of the punctured disc counts as a boundary point, so completeness probes
// toward it are expressible.
class DomainSpec {
public:
    static DomainSpec disc() { return DomainSpec(DomainKind::Disc, 1, 0.0, {}); }

    static DomainSpec polydisc(int n) { return DomainSpec(DomainKind::Polydisc, n, 0.0, {}); }

    static DomainSpec ball(int n) { return DomainSpec(DomainKind::Ball, n, 0.0, {}); }

    static DomainSpec annulus(double inner_radius)
    {
        if (!(inner_radius > 0.0 && inner_radius < 1.0))
            throw std::invalid_argument("annulus inner radius must lie in (0,1)");
        return DomainSpec(DomainKind::Annulus, 1, inner_radius, {});
    }

    static DomainSpec punctured_disc() { return DomainSpec(DomainKind::PuncturedDisc, 1, 0.0, {}); }

    // Custom monomial series on the unit polydisc of the given dimension.
    static DomainSpec custom_series(int n, std::vector<CustomTerm> terms)
    {
        if (terms.empty())
            throw std::invalid_argument("custom series needs at least one term");
        for (const auto& t : terms) {
            if (static_cast<int>(t.exponents.size()) != n)
                throw std::invalid_argument("custom term exponent length mismatch");
            if (!(t.normalization > 0.0))
                throw std::invalid_argument("custom term normalization must be positive");
        }
        return DomainSpec(DomainKind::CustomSeries, n, 0.0, std::move(terms));
    }

    DomainKind kind() const { return kind_; }
    int dimension() const { return dim_; }
    double inner_radius() const { return inner_radius_; }
    const std::vector<CustomTerm>& custom_terms() const { return custom_; }

    bool contains(const Point& z) const
    {
        check_dim(z);
        for (int i = 0; i < dim_; ++i)
            if (!std::isfinite(z[i].real()) || !std::isfinite(z[i].imag())) return false;
        switch (kind_) {
        case DomainKind::Disc:
            return std::abs(z[0]) < 1.0;
        case DomainKind::Polydisc:
        case DomainKind::CustomSeries: {
            for (int i = 0; i < dim_; ++i)
                if (std::abs(z[i]) >= 1.0) return false;
            return true;
        }
        case DomainKind::Ball:
            return z.norm() < 1.0;
        case DomainKind::Annulus: {
            double r = std::abs(z[0]);
            return r > inner_radius_ && r < 1.0;
        }
        case DomainKind::PuncturedDisc: {
            double r = std::abs(z[0]);
            return r > 0.0 && r < 1.0;
        }
        }
        return false;
    }

    // Euclidean distance to the topological boundary; for the punctured disc
    // the puncture counts as boundary.
    double boundary_distance(const Point& z) const
    {
        if (!contains(z)) throw std::invalid_argument("boundary_distance: point outside domain");
        switch (kind_) {
        case DomainKind::Disc:
            return 1.0 - std::abs(z[0]);
        case DomainKind::Polydisc:
        case DomainKind::CustomSeries: {
            double d = 1.0;
            for (int i = 0; i < dim_; ++i) d = std::min(d, 1.0 - std::abs(z[i]));
            return d;
        }
        case DomainKind::Ball:
            return 1.0 - z.norm();
        case DomainKind::Annulus: {
            double r = std::abs(z[0]);
            return std::min(1.0 - r, r - inner_radius_);
        }
        case DomainKind::PuncturedDisc: {
            double r = std::abs(z[0]);
            return std::min(1.0 - r, r);
        }
        }
        return 0.0;
    }

    bool on_boundary(const Point& z, double tol = 1e-12) const
    {
        check_dim(z);
        switch (kind_) {
        case DomainKind::Disc:
            return std::abs(std::abs(z[0]) - 1.0) <= tol;
        case DomainKind::Polydisc:
        case DomainKind::CustomSeries: {
            bool touches = false;
            for (int i = 0; i < dim_; ++i) {
                double r = std::abs(z[i]);
                if (r > 1.0 + tol) return false;
                if (std::abs(r - 1.0) <= tol) touches = true;
            }
            return touches;
        }
        case DomainKind::Ball:
            return std::abs(z.norm() - 1.0) <= tol;
        case DomainKind::Annulus: {
            double r = std::abs(z[0]);
            return std::abs(r - 1.0) <= tol || std::abs(r - inner_radius_) <= tol;
        }
        case DomainKind::PuncturedDisc: {
            double r = std::abs(z[0]);
            return std::abs(r - 1.0) <= tol || r <= tol;
        }
        }
        return false;
    }

    // Points z_k inside the domain with boundary_distance(z_k) = 10^{-k},
    // k = 1..kmax, marching toward the target along the inward normal /
    // radial ray.
    std::vector<Point> approach_sequence(const Point& target, int kmax) const
    {
        check_dim(target);
        if (kmax < 1) throw std::invalid_argument("approach_sequence: kmax must be >= 1");
        if (!on_boundary(target)) throw std::invalid_argument("approach_sequence: target not on boundary");

        std::vector<Point> out;
        out.reserve(kmax);
        for (int k = 1; k <= kmax; ++k) {
            double eps = std::pow(10.0, -k);
            out.push_back(approach_point(target, eps));
        }
        return out;
    }

    // A single interior point at prescribed boundary distance on the ray
    // toward the target. Shared by approach_sequence and the probe anchors.
    Point approach_point(const Point& target, double eps) const
    {
        Point z = target;
        switch (kind_) {
        case DomainKind::Disc:
            z[0] = target[0] * (1.0 - eps);
            break;
        case DomainKind::Ball:
            z = target * (1.0 - eps);
            break;
        case DomainKind::Polydisc:
        case DomainKind::CustomSeries: {
            // Pull the coordinates sitting on the unit circle inward; the
            // remaining coordinates must already be deeper than eps.
            for (int i = 0; i < dim_; ++i) {
                double r = std::abs(z[i]);
                if (std::abs(r - 1.0) <= 1e-12)
                    z[i] *= (1.0 - eps);
                else if (1.0 - r <= eps)
                    throw std::invalid_argument("approach_sequence: interior coordinate too close to the boundary");
            }
            break;
        }
        case DomainKind::Annulus: {
            double rt = std::abs(target[0]);
            cplx dir = target[0] / rt;
            if (std::abs(rt - inner_radius_) <= 1e-12)
                z[0] = dir * (inner_radius_ + eps);
            else
                z[0] = dir * (1.0 - eps);
            break;
        }
        case DomainKind::PuncturedDisc: {
            double rt = std::abs(target[0]);
            if (rt <= 1e-12)
                z[0] = cplx(eps, 0.0); // radial ray toward the puncture
            else
                z[0] = (target[0] / rt) * (1.0 - eps);
            break;
        }
        }
        return z;
    }

    std::string name() const
    {
        switch (kind_) {
        case DomainKind::Disc: return "disc";
        case DomainKind::Polydisc: return "polydisc:" + std::to_string(dim_);
        case DomainKind::Ball: return "ball:" + std::to_string(dim_);
        case DomainKind::Annulus: return "annulus:" + std::to_string(inner_radius_);
        case DomainKind::PuncturedDisc: return "punctured-disc";
        case DomainKind::CustomSeries: return "custom-series:" + std::to_string(dim_);
        }
        return "?";
    }

private:
    DomainSpec(DomainKind kind, int dim, double inner_radius, std::vector<CustomTerm> custom)
        : kind_(kind), dim_(dim), inner_radius_(inner_radius), custom_(std::move(custom))
    {
        if (dim_ < 1) throw std::invalid_argument("domain dimension must be >= 1");
        if ((kind_ == DomainKind::Annulus || kind_ == DomainKind::PuncturedDisc) && dim_ != 1)
            throw std::invalid_argument("annulus and punctured disc are one-dimensional");
    }

    void check_dim(const Point& z) const
    {
        if (static_cast<int>(z.size()) != dim_)
            throw std::invalid_argument("point dimension mismatch");
    }

    DomainKind kind_;
    int dim_;
    double inner_radius_;
    std::vector<CustomTerm> custom_;
};

inline Point make_point(std::initializer_list<cplx> coords)
{
    Point z(static_cast<Eigen::Index>(coords.size()));
    Eigen::Index i = 0;
    for (cplx c : coords) z[i++] = c;
    return z;
}

} // namespace bergman
