#pragma once

#include <algorithm>
#include <cmath>
#include <functional>
#include <numbers>
#include <vector>

#include <Eigen/Core>

#include "bergman/domain.hpp"

namespace bergman {

struct BasisTerm {
    std::vector<int> exponents; // negative entries only for the annulus
    double normalization;       // reciprocal L2 norm of the monomial
};

namespace detail {

// z^k for integer k, with 0^0 = 1. Negative k only reaches us for annulus
// points, which stay away from the origin.
inline cplx ipow(cplx z, int k)
{
    if (k == 0) return cplx(1.0, 0.0);
    bool neg = k < 0;
    unsigned e = static_cast<unsigned>(neg ? -k : k);
    cplx base = z, acc(1.0, 0.0);
    while (e) {
        if (e & 1u) acc *= base;
        base *= base;
        e >>= 1;
    }
    return neg ? cplx(1.0, 0.0) / acc : acc;
}

// Multi-indices of C^n ordered by total degree, then lexicographically.
inline std::vector<std::vector<int>> graded_multi_indices(int n, int count)
{
    std::vector<std::vector<int>> out;
    for (int degree = 0; static_cast<int>(out.size()) < count; ++degree) {
        std::vector<std::vector<int>> level;
        std::vector<int> alpha(n, 0);
        // enumerate alpha with |alpha| = degree in lex order
        std::function<void(int, int)> rec = [&](int pos, int remaining) {
            if (pos == n - 1) {
                alpha[pos] = remaining;
                level.push_back(alpha);
                return;
            }
            for (int a = remaining; a >= 0; --a) {
                alpha[pos] = a;
                rec(pos + 1, remaining - a);
            }
        };
        rec(0, degree);
        std::sort(level.begin(), level.end());
        for (auto& a : level) {
            out.push_back(std::move(a));
            if (static_cast<int>(out.size()) == count) break;
        }
    }
    return out;
}

} // namespace detail

// A finite orthonormal system of (Laurent) monomials on a model domain.
// The normalizations are exact reciprocal norms from radial/beta integrals,
// so the truncated kernel K_m = sum phi_k(z) conj(phi_k(w)) is itself the
// reproducing kernel of the span.
class BasisSpec {
public:
    static BasisSpec build(const DomainSpec& d, int m)
    {
        const int n = d.dimension();
        if (m < n + 1) throw std::invalid_argument("basis size must be at least n+1");

        std::vector<BasisTerm> terms;
        terms.reserve(m);
        const double pi = std::numbers::pi;

        switch (d.kind()) {
        case DomainKind::Disc:
        case DomainKind::PuncturedDisc:
            // L2 holomorphic functions extend across the puncture, so the
            // punctured disc carries the disc basis verbatim.
            for (int k = 0; k < m; ++k)
                terms.push_back({{k}, std::sqrt((k + 1) / pi)});
            break;
        case DomainKind::Polydisc: {
            auto alphas = detail::graded_multi_indices(n, m);
            for (auto& a : alphas) {
                double c = 1.0;
                for (int ai : a) c *= (ai + 1) / pi;
                terms.push_back({std::move(a), std::sqrt(c)});
            }
            break;
        }
        case DomainKind::Ball: {
            auto alphas = detail::graded_multi_indices(n, m);
            for (auto& a : alphas) {
                // |z^alpha|^2 integrates to pi^n alpha! / (n+|alpha|)!
                int total = 0;
                double log_norm2 = n * std::log(pi);
                for (int ai : a) {
                    total += ai;
                    log_norm2 += std::lgamma(ai + 1.0);
                }
                log_norm2 -= std::lgamma(n + total + 1.0);
                terms.push_back({std::move(a), std::exp(-0.5 * log_norm2)});
            }
            break;
        }
        case DomainKind::Annulus: {
            const double r = d.inner_radius();
            // interleave k = 0, 1, -1, 2, -2, ...
            std::vector<int> ks;
            ks.push_back(0);
            for (int j = 1; static_cast<int>(ks.size()) < m; ++j) {
                ks.push_back(j);
                if (static_cast<int>(ks.size()) < m) ks.push_back(-j);
            }
            for (int k : ks) {
                double norm2;
                if (k == -1)
                    norm2 = 2.0 * pi * std::log(1.0 / r);
                else
                    norm2 = pi * (1.0 - std::pow(r, 2 * k + 2)) / (k + 1);
                terms.push_back({{k}, 1.0 / std::sqrt(norm2)});
            }
            break;
        }
        case DomainKind::CustomSeries: {
            const auto& custom = d.custom_terms();
            if (static_cast<int>(custom.size()) < m)
                throw std::invalid_argument("custom series has fewer terms than requested");
            for (int k = 0; k < m; ++k)
                terms.push_back({custom[k].exponents, custom[k].normalization});
            break;
        }
        }
        return BasisSpec(d, std::move(terms));
    }

    const DomainSpec& domain() const { return domain_; }
    int size() const { return static_cast<int>(terms_.size()); }
    int dimension() const { return domain_.dimension(); }
    const std::vector<BasisTerm>& terms() const { return terms_; }
    const BasisTerm& term(int k) const { return terms_[k]; }

    cplx value(int k, const Point& z) const
    {
        const auto& t = terms_[k];
        cplx v(t.normalization, 0.0);
        for (int i = 0; i < dimension(); ++i) v *= detail::ipow(z[i], t.exponents[i]);
        return v;
    }

    // d phi_k / d z_i
    cplx derivative(int k, int i, const Point& z) const
    {
        const auto& t = terms_[k];
        int e = t.exponents[i];
        if (e == 0) return cplx(0.0, 0.0);
        cplx v(t.normalization * e, 0.0);
        for (int j = 0; j < dimension(); ++j)
            v *= detail::ipow(z[j], j == i ? t.exponents[j] - 1 : t.exponents[j]);
        return v;
    }

    // Jet matrix J, (n+1) x m: row 0 holds the basis values at z, row 1+i
    // holds the i-th holomorphic partials. The bordered Gram J J^* is the
    // matrix of kernel derivatives up to order (1,1).
    Eigen::MatrixXcd jet_matrix(const Point& z) const
    {
        const int n = dimension();
        const int m = size();
        Eigen::MatrixXcd J(n + 1, m);
        for (int k = 0; k < m; ++k) {
            J(0, k) = value(k, z);
            for (int i = 0; i < n; ++i) J(1 + i, k) = derivative(k, i, z);
        }
        return J;
    }

private:
    BasisSpec(DomainSpec d, std::vector<BasisTerm> terms)
        : domain_(std::move(d)), terms_(std::move(terms))
    {
    }

    DomainSpec domain_;
    std::vector<BasisTerm> terms_;
};

} // namespace bergman
