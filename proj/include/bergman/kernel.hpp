#pragma once

#include <cmath>
#include <numbers>
#include <optional>

#include <Eigen/Core>

#include "bergman/basis.hpp"
#include "bergman/domain.hpp"
#include "bergman/errors.hpp"

namespace bergman {

// K(z,zbar) and its mixed derivatives up to order (1,1) on the diagonal.
// antiholo is the componentwise conjugate of holo there, and the bordered
// matrix [[K, antiholo^T],[holo, mixed]] is Hermitian positive definite.
struct KernelJet {
    double value = 0.0;
    Eigen::VectorXcd holo;     // d/dz_i of K(z, zeta_bar), on the diagonal
    Eigen::VectorXcd antiholo; // d/dzeta_bar_j, on the diagonal
    Eigen::MatrixXcd mixed;    // d^2/dz_i dzeta_bar_j, on the diagonal

    Eigen::MatrixXcd bordered() const
    {
        const int n = static_cast<int>(holo.size());
        Eigen::MatrixXcd B(n + 1, n + 1);
        B(0, 0) = value;
        for (int j = 0; j < n; ++j) B(0, 1 + j) = antiholo[j];
        for (int i = 0; i < n; ++i) B(1 + i, 0) = holo[i];
        B.block(1, 1, n, n) = mixed;
        return B;
    }
};

enum class KernelMode { ClosedForm, Series };

// Evaluates a Bergman kernel of a model domain, either truncated (from a
// finite orthonormal basis) or in closed form where one exists. All
// derivatives up to order (1,1) are exact term-by-term / symbolic; finite
// differences enter only at the fourth-order quantities downstream.
class KernelSource {
public:
    static KernelSource closed_form(const DomainSpec& d)
    {
        if (d.kind() == DomainKind::Annulus || d.kind() == DomainKind::CustomSeries)
            throw std::invalid_argument("closed-form kernel unavailable for " + d.name());
        return KernelSource(d, std::nullopt);
    }

    static KernelSource series(BasisSpec basis)
    {
        DomainSpec d = basis.domain();
        return KernelSource(d, std::move(basis));
    }

    static KernelSource series(const DomainSpec& d, int m) { return series(BasisSpec::build(d, m)); }

    const DomainSpec& domain() const { return domain_; }
    KernelMode mode() const { return basis_ ? KernelMode::Series : KernelMode::ClosedForm; }

    const BasisSpec& basis() const
    {
        if (!basis_) throw std::invalid_argument("closed-form source carries no basis");
        return *basis_;
    }

    // K(z, w_bar)
    cplx eval(const Point& z, const Point& w) const
    {
        require_inside(z);
        require_inside(w);
        if (basis_) {
            cplx acc(0.0, 0.0);
            for (int k = 0; k < basis_->size(); ++k)
                acc += basis_->value(k, z) * std::conj(basis_->value(k, w));
            return acc;
        }
        return closed_eval(z, w);
    }

    KernelJet jet(const Point& z) const
    {
        require_inside(z);
        KernelJet out;
        const int n = domain_.dimension();
        if (basis_) {
            Eigen::MatrixXcd J = basis_->jet_matrix(z);
            Eigen::MatrixXcd B = J * J.adjoint();
            out.value = B(0, 0).real();
            out.holo = B.col(0).segment(1, n);
            out.antiholo = B.row(0).segment(1, n);
            out.mixed = B.block(1, 1, n, n);
        } else {
            out = closed_jet(z);
        }
        if (!(out.value > 0.0))
            throw numerical_error("kernel not positive at the point; truncation too small");
        return out;
    }

    // --- radial diagonal, one complex dimension ---------------------------
    // For n = 1 the diagonal kernel of a monomial system is a function
    // F(t) of t = |z|^2 alone, and all radial derivatives are exact. This
    // is what makes the tilde tensor and the radial distance integrands
    // computable without finite differences in one dimension.

    bool radial_1d() const { return domain_.dimension() == 1; }

    // d^p F / d t^p at t = |z|^2, p = 0..4
    double radial_F(double t, int p) const
    {
        if (!radial_1d()) throw std::invalid_argument("radial_F: source is not one-dimensional");
        if (basis_) {
            double acc = 0.0;
            for (const auto& term : basis_->terms()) {
                int k = term.exponents[0];
                double fall = 1.0;
                for (int q = 0; q < p; ++q) fall *= (k - q);
                if (fall == 0.0) continue;
                acc += term.normalization * term.normalization * fall * std::pow(t, k - p);
            }
            return acc;
        }
        // disc / punctured disc: F(t) = 1/(pi (1-t)^2)
        double fact = 1.0;
        for (int q = 2; q <= p + 1; ++q) fact *= q;
        return fact / (std::numbers::pi * std::pow(1.0 - t, p + 2));
    }

private:
    KernelSource(DomainSpec d, std::optional<BasisSpec> basis)
        : domain_(std::move(d)), basis_(std::move(basis))
    {
    }

    void require_inside(const Point& z) const
    {
        if (!domain_.contains(z)) throw std::invalid_argument("point outside domain");
    }

    cplx closed_eval(const Point& z, const Point& w) const
    {
        const double pi = std::numbers::pi;
        switch (domain_.kind()) {
        case DomainKind::Disc:
        case DomainKind::PuncturedDisc: {
            cplx u = 1.0 - z[0] * std::conj(w[0]);
            return 1.0 / (pi * u * u);
        }
        case DomainKind::Polydisc: {
            cplx acc(1.0, 0.0);
            for (int i = 0; i < domain_.dimension(); ++i) {
                cplx u = 1.0 - z[i] * std::conj(w[i]);
                acc *= 1.0 / (pi * u * u);
            }
            return acc;
        }
        case DomainKind::Ball: {
            const int n = domain_.dimension();
            cplx s(0.0, 0.0);
            for (int i = 0; i < n; ++i) s += z[i] * std::conj(w[i]);
            double nfac = std::tgamma(n + 1.0);
            return nfac / (std::pow(pi, n) * std::pow(1.0 - s, n + 1));
        }
        default:
            throw std::invalid_argument("closed-form kernel unavailable");
        }
    }

    KernelJet closed_jet(const Point& z) const
    {
        const double pi = std::numbers::pi;
        const int n = domain_.dimension();
        KernelJet out;
        out.holo.resize(n);
        out.antiholo.resize(n);
        out.mixed.resize(n, n);

        switch (domain_.kind()) {
        case DomainKind::Disc:
        case DomainKind::PuncturedDisc: {
            double t = std::norm(z[0]);
            double u = 1.0 - t;
            out.value = 1.0 / (pi * u * u);
            cplx kz = 2.0 * std::conj(z[0]) / (pi * u * u * u);
            out.holo[0] = kz;
            out.antiholo[0] = std::conj(kz);
            out.mixed(0, 0) = (2.0 + 4.0 * t) / (pi * u * u * u * u);
            break;
        }
        case DomainKind::Polydisc: {
            // product kernel: assemble from per-factor jets
            Eigen::VectorXd K(n);
            Eigen::VectorXcd Kz(n);
            Eigen::VectorXd Kzz(n);
            double prod = 1.0;
            for (int i = 0; i < n; ++i) {
                double t = std::norm(z[i]);
                double u = 1.0 - t;
                K[i] = 1.0 / (pi * u * u);
                Kz[i] = 2.0 * std::conj(z[i]) / (pi * u * u * u);
                Kzz[i] = (2.0 + 4.0 * t) / (pi * u * u * u * u);
                prod *= K[i];
            }
            out.value = prod;
            for (int i = 0; i < n; ++i) out.holo[i] = prod / K[i] * Kz[i];
            for (int j = 0; j < n; ++j) out.antiholo[j] = std::conj(out.holo[j]);
            for (int i = 0; i < n; ++i)
                for (int j = 0; j < n; ++j) {
                    if (i == j)
                        out.mixed(i, j) = prod / K[i] * Kzz[i];
                    else
                        out.mixed(i, j) = prod / (K[i] * K[j]) * Kz[i] * std::conj(Kz[j]);
                }
            break;
        }
        case DomainKind::Ball: {
            double s = z.squaredNorm();
            double u = 1.0 - s;
            double nfac = std::tgamma(n + 1.0);
            double base = nfac / std::pow(pi, n);
            out.value = base / std::pow(u, n + 1);
            double d1 = base * (n + 1) / std::pow(u, n + 2);
            double d2 = base * (n + 1) * (n + 2) / std::pow(u, n + 3);
            for (int i = 0; i < n; ++i) out.holo[i] = d1 * std::conj(z[i]);
            for (int j = 0; j < n; ++j) out.antiholo[j] = std::conj(out.holo[j]);
            for (int i = 0; i < n; ++i)
                for (int j = 0; j < n; ++j)
                    out.mixed(i, j) = (i == j ? d1 : 0.0) + d2 * std::conj(z[i]) * z[j];
            break;
        }
        default:
            throw std::invalid_argument("closed-form kernel unavailable");
        }
        return out;
    }

    DomainSpec domain_;
    std::optional<BasisSpec> basis_;
};

} // namespace bergman
