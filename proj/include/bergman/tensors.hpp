#pragma once

#include <cmath>
#include <functional>

#include <Eigen/Dense>

#include "bergman/kernel.hpp"

namespace bergman {

// sqrt( sum M_ij X_i conj(X_j) ) for Hermitian positive semidefinite M.
inline double vector_length(const Eigen::MatrixXcd& M, const Eigen::VectorXcd& X)
{
    if (M.rows() != X.size()) throw std::invalid_argument("vector_length: dimension mismatch");
    double q = (X.adjoint() * M * X)(0, 0).real();
    return std::sqrt(std::max(q, 0.0));
}

inline Eigen::MatrixXcd hermitize(const Eigen::MatrixXcd& M)
{
    return 0.5 * (M + M.adjoint());
}

inline double min_eigenvalue(const Eigen::MatrixXcd& M)
{
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(hermitize(M));
    return es.eigenvalues().minCoeff();
}

// T_ij = (K K_ij - K_i K_j) / K^2, assembled from the exact kernel jet.
inline Eigen::MatrixXcd bergman_tensor(const KernelSource& src, const Point& z)
{
    KernelJet jet = src.jet(z);
    const int n = src.domain().dimension();
    Eigen::MatrixXcd T(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            T(i, j) = (jet.value * jet.mixed(i, j) - jet.holo[i] * jet.antiholo[j])
                      / (jet.value * jet.value);
    T = hermitize(T);
    if (min_eigenvalue(T) <= 0.0)
        throw numerical_error("Bergman tensor not positive definite; basis too small");
    return T;
}

// Complex Hessian d^2 f / dz_i dz_bar_j of a real-valued f by central
// differences on the 2n real coordinates, with one Richardson step.
inline Eigen::MatrixXcd complex_hessian_fd(const std::function<double(const Point&)>& f,
                                           const Point& z, double h)
{
    const int n = static_cast<int>(z.size());
    auto shifted = [&](int p, double dp, int q, double dq) {
        Point w = z;
        // real coordinate p: p < n is Re z_p, p >= n is Im z_{p-n}
        auto bump = [&](int c, double d) {
            if (c < n)
                w[c] += d;
            else
                w[c - n] += cplx(0.0, d);
        };
        bump(p, dp);
        if (q >= 0) bump(q, dq);
        return w;
    };

    auto real_hessian = [&](double step) {
        Eigen::MatrixXd H(2 * n, 2 * n);
        double f0 = f(z);
        for (int p = 0; p < 2 * n; ++p) {
            double fp = f(shifted(p, step, -1, 0));
            double fm = f(shifted(p, -step, -1, 0));
            H(p, p) = (fp - 2.0 * f0 + fm) / (step * step);
        }
        for (int p = 0; p < 2 * n; ++p)
            for (int q = p + 1; q < 2 * n; ++q) {
                double fpp = f(shifted(p, step, q, step));
                double fpm = f(shifted(p, step, q, -step));
                double fmp = f(shifted(p, -step, q, step));
                double fmm = f(shifted(p, -step, q, -step));
                H(p, q) = H(q, p) = (fpp - fpm - fmp + fmm) / (4.0 * step * step);
            }
        return H;
    };

    Eigen::MatrixXd H = (4.0 * real_hessian(0.5 * h) - real_hessian(h)) / 3.0;

    Eigen::MatrixXcd L(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            L(i, j) = 0.25
                      * cplx(H(i, j) + H(n + i, n + j), H(i, n + j) - H(n + i, j));
    return hermitize(L);
}

namespace detail {

// Derivatives of log F from derivatives of F.
struct LogDerivs {
    double g1, g2, g3, g4;
};

inline LogDerivs log_derivs(double F0, double F1, double F2, double F3, double F4)
{
    double r1 = F1 / F0, r2 = F2 / F0, r3 = F3 / F0, r4 = F4 / F0;
    LogDerivs g;
    g.g1 = r1;
    g.g2 = r2 - r1 * r1;
    g.g3 = r3 - 3.0 * r1 * r2 + 2.0 * r1 * r1 * r1;
    g.g4 = r4 - 4.0 * r1 * r3 - 3.0 * r2 * r2 + 12.0 * r1 * r1 * r2 - 6.0 * r1 * r1 * r1 * r1;
    return g;
}

} // namespace detail

// Exact radial tensors for one-dimensional sources. With t = |z|^2 and
// F(t) = K(z,z), the Laplacian-type operator d/dz d/dz_bar acting on a
// radial function h(t) is h'(t) + t h''(t), so T, Ric and T-tilde reduce
// to rational expressions in the exact radial derivatives of F.
struct RadialTensors {
    double T;     // Bergman tensor (scalar, n = 1)
    double ric;   // Ricci of the Bergman metric
    double tilde; // 2T - ric
};

inline RadialTensors radial_tensors(const KernelSource& src, double t)
{
    double F0 = src.radial_F(t, 0);
    if (!(F0 > 0.0)) throw numerical_error("kernel not positive on the radial section");
    auto g = detail::log_derivs(F0, src.radial_F(t, 1), src.radial_F(t, 2), src.radial_F(t, 3),
                                src.radial_F(t, 4));
    RadialTensors out;
    out.T = g.g1 + t * g.g2;
    if (!(out.T > 0.0)) throw numerical_error("radial Bergman tensor not positive");
    double T1 = 2.0 * g.g2 + t * g.g3; // dT/dt
    double T2 = 3.0 * g.g3 + t * g.g4; // d^2 T/dt^2
    double u1 = T1 / out.T;
    double u2 = T2 / out.T - u1 * u1;
    double lap_logT = u1 + t * u2;
    out.ric = -lap_logT;
    out.tilde = 2.0 * out.T + lap_logT;
    return out;
}

namespace detail {

inline double effective_step(const KernelSource& src, const Point& z, double h)
{
    double bd = src.domain().boundary_distance(z);
    return std::min(h, bd / 8.0);
}

} // namespace detail

// Ric_ij = - d^2/dz_i dz_bar_j log det T, by central finite differences of
// log det bergman_tensor with one Richardson step. The step shrinks to
// boundary_distance/8 near the boundary so the stencil stays interior.
inline Eigen::MatrixXcd ricci_tensor(const KernelSource& src, const Point& z, double h = 1e-3)
{
    double step = detail::effective_step(src, z, h);
    auto log_det_T = [&](const Point& w) {
        Eigen::MatrixXcd T = bergman_tensor(src, w);
        double det = T.determinant().real();
        if (!(det > 0.0)) throw numerical_error("det T not positive on FD stencil");
        return std::log(det);
    };
    return -complex_hessian_fd(log_det_T, z, step);
}

// T_tilde = (n+1) T - Ric. One-dimensional sources take the exact radial
// route; higher dimensions assemble from the FD Ricci. A non-PD result is
// reported as an error, never clamped.
inline Eigen::MatrixXcd tilde_tensor(const KernelSource& src, const Point& z, double h = 1e-3)
{
    const int n = src.domain().dimension();
    Eigen::MatrixXcd Tt;
    if (src.radial_1d()) {
        Tt.resize(1, 1);
        Tt(0, 0) = radial_tensors(src, std::norm(z[0])).tilde;
    } else {
        Eigen::MatrixXcd T = bergman_tensor(src, z);
        Tt = hermitize((n + 1.0) * T - ricci_tensor(src, z, h));
    }
    if (min_eigenvalue(Tt) <= 0.0)
        throw numerical_error("tilde tensor not positive definite; step or truncation failure");
    return Tt;
}

// Tensor of the requested kind at a point; the shared entry point for the
// geodesy integrands.
enum class MetricKind { Bergman, Tilde };

inline Eigen::MatrixXcd metric_tensor(const KernelSource& src, MetricKind kind, const Point& z,
                                      double h = 1e-3)
{
    if (kind == MetricKind::Bergman) return bergman_tensor(src, z);
    return tilde_tensor(src, z, h);
}

} // namespace bergman
