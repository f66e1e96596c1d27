#pragma once

#include <cmath>
#include <random>
#include <vector>

#include <Eigen/Dense>

#include "bergman/kernel.hpp"
#include "bergman/tensors.hpp"
#include "bergman/wedge.hpp"

namespace bergman {

// f = sum c_k phi_k in the truncated space, held by its coefficient vector
// against a BasisSpec.
struct FunctionVector {
    Eigen::VectorXcd coeffs;

    double norm2() const { return coeffs.squaredNorm(); }
};

struct CriterionReport {
    double numerator;   // squared jet determinant
    double gram;        // Gramian of the tuple
    double denominator; // K^{n+1} det T
    double ratio;       // numerator / denominator
    double normalized;  // numerator / gram
};

namespace detail {

inline Eigen::MatrixXcd coeff_matrix(const std::vector<FunctionVector>& fs)
{
    if (fs.empty()) throw std::invalid_argument("empty function tuple");
    const int m = static_cast<int>(fs[0].coeffs.size());
    Eigen::MatrixXcd C(m, static_cast<int>(fs.size()));
    for (size_t j = 0; j < fs.size(); ++j) {
        if (fs[j].coeffs.size() != m) throw std::invalid_argument("coefficient length mismatch");
        C.col(static_cast<int>(j)) = fs[j].coeffs;
    }
    return C;
}

inline std::vector<Eigen::VectorXcd> columns(const Eigen::MatrixXcd& C)
{
    std::vector<Eigen::VectorXcd> out;
    out.reserve(C.cols());
    for (int j = 0; j < C.cols(); ++j) out.push_back(C.col(j));
    return out;
}

inline void require_independent(const Eigen::MatrixXcd& C)
{
    double g = wedge::gram_det(columns(C));
    double scale = 1.0;
    for (int j = 0; j < C.cols(); ++j) scale *= C.col(j).squaredNorm();
    if (!(g > 1e-12 * std::max(scale, 1e-300)))
        throw std::invalid_argument("function tuple is linearly dependent");
}

} // namespace detail

// Determinant of the (n+1)x(n+1) matrix of values and first holomorphic
// partials of the tuple at z, from exact basis derivatives.
inline cplx jet_matrix_det(const BasisSpec& basis, const std::vector<FunctionVector>& fs,
                           const Point& z)
{
    const int n = basis.dimension();
    if (static_cast<int>(fs.size()) != n + 1)
        throw std::invalid_argument("jet_matrix_det: tuple must have n+1 entries");
    Eigen::MatrixXcd C = detail::coeff_matrix(fs);
    detail::require_independent(C);
    return (basis.jet_matrix(z) * C).determinant();
}

// Relative difference between det of the bordered jet matrix and
// K^{n+1} det T, both sides assembled independently from the same exact jet.
inline double norm_identity_residual(const KernelSource& src, const Point& z)
{
    KernelJet jet = src.jet(z);
    const int n = src.domain().dimension();
    double lhs = jet.bordered().determinant().real();
    double rhs = std::pow(jet.value, n + 1) * bergman_tensor(src, z).determinant().real();
    if (!(std::abs(rhs) > 0.0)) throw numerical_error("degenerate jet in norm identity");
    return std::abs(lhs - rhs) / std::abs(rhs);
}

inline double criterion_denominator(const KernelSource& src, const Point& z)
{
    KernelJet jet = src.jet(z);
    const int n = src.domain().dimension();
    double d = std::pow(jet.value, n + 1) * bergman_tensor(src, z).determinant().real();
    if (!(d > 0.0)) throw numerical_error("degenerate criterion denominator");
    return d;
}

// All completeness-criterion quantities at a point for a fixed tuple. The
// Gramian comes from the wedge-module Gram determinant of the coefficient
// columns; orthonormality of the basis makes it the exact L2 Gramian.
inline CriterionReport tilde_ratio(const KernelSource& src, const std::vector<FunctionVector>& fs,
                                   const Point& z)
{
    const BasisSpec& basis = src.basis();
    const int n = basis.dimension();
    if (static_cast<int>(fs.size()) != n + 1)
        throw std::invalid_argument("tilde_ratio: tuple must have n+1 entries");
    Eigen::MatrixXcd C = detail::coeff_matrix(fs);
    detail::require_independent(C);

    CriterionReport rep;
    rep.numerator = std::norm((basis.jet_matrix(z) * C).determinant());
    rep.gram = wedge::gram_det(detail::columns(C));
    rep.denominator = criterion_denominator(src, z);
    rep.ratio = rep.numerator / rep.denominator;
    rep.normalized = rep.numerator / rep.gram;
    return rep;
}

// The tuple dual to the point evaluations: coefficients of K_m(., z) and
// of its antiholomorphic first derivatives in the basis. The sup in the
// fraction identity is attained here.
inline std::vector<FunctionVector> dual_tuple(const BasisSpec& basis, const Point& z)
{
    Eigen::MatrixXcd J = basis.jet_matrix(z);
    std::vector<FunctionVector> fs(J.rows());
    for (int r = 0; r < J.rows(); ++r) fs[r].coeffs = J.row(r).adjoint();
    return fs;
}

struct SupProbeResult {
    double best;   // best normalized value found
    double target; // K^{n+1} det T at the point
};

// Maximizes numerator/gram over (n+1)-tuples by seeded multi-start
// Wirtinger gradient ascent with backtracking; the dual-tuple warm start
// pins the known optimum, the random restarts guard against stalls.
inline SupProbeResult fraction_sup_probe(const KernelSource& src, const Point& z, int restarts = 8,
                                         unsigned seed = 0)
{
    const BasisSpec& basis = src.basis();
    const int n = basis.dimension();
    const int m = basis.size();
    if (m < n + 1) throw std::invalid_argument("fraction_sup_probe: basis too small");

    Eigen::MatrixXcd J = basis.jet_matrix(z);
    double target = criterion_denominator(src, z);

    auto log_objective = [&](const Eigen::MatrixXcd& C) {
        Eigen::MatrixXcd A = J * C;
        Eigen::MatrixXcd G = C.adjoint() * C;
        double ldA = std::log(std::abs(A.determinant()));
        double ldG = std::log(std::abs(G.determinant()));
        return 2.0 * ldA - ldG;
    };

    auto ascend = [&](Eigen::MatrixXcd C) {
        double g = log_objective(C);
        double eta = 0.1;
        for (int it = 0; it < 300; ++it) {
            Eigen::MatrixXcd A = J * C;
            Eigen::MatrixXcd G = C.adjoint() * C;
            Eigen::MatrixXcd AinvJ = A.partialPivLu().solve(J);
            Eigen::MatrixXcd CGinv = C * G.partialPivLu().solve(
                                             Eigen::MatrixXcd::Identity(n + 1, n + 1));
            // Wirtinger ascent direction for log |det(JC)|^2 - log det(C*C)
            Eigen::MatrixXcd D = AinvJ.adjoint() - CGinv;
            double dn = D.norm();
            if (dn < 1e-12) break;
            bool moved = false;
            for (int bt = 0; bt < 25; ++bt) {
                Eigen::MatrixXcd Cn = C + eta * D;
                double gn = log_objective(Cn);
                if (std::isfinite(gn) && gn > g) {
                    C = Cn;
                    g = gn;
                    eta *= 1.5;
                    moved = true;
                    break;
                }
                eta *= 0.5;
            }
            if (!moved) break;
        }
        return g;
    };

    double best_log = -std::numeric_limits<double>::infinity();

    // dual-tuple warm start achieves the optimum exactly
    {
        Eigen::MatrixXcd C0 = J.adjoint();
        best_log = std::max(best_log, ascend(C0));
    }

    std::mt19937_64 rng(seed);
    std::normal_distribution<double> gauss(0.0, 1.0);
    for (int r = 0; r < restarts; ++r) {
        Eigen::MatrixXcd C(m, n + 1);
        for (int k = 0; k < m; ++k)
            for (int j = 0; j <= n; ++j) C(k, j) = cplx(gauss(rng), gauss(rng));
        double g = ascend(C);
        if (std::isfinite(g)) best_log = std::max(best_log, g);
    }

    SupProbeResult out{std::exp(best_log), target};
    if (!std::isfinite(out.best))
        throw numerical_error("fraction_sup_probe: optimizer diverged");
    return out;
}

// Max-norm difference between the FD complex Hessian of
// log(K^{n+1} det T) and the tilde tensor.
inline double fubini_pullback_residual(const KernelSource& src, const Point& z, double h = 1e-3)
{
    double step = detail::effective_step(src, z, h);
    auto log_norm2 = [&](const Point& w) { return std::log(criterion_denominator(src, w)); };
    Eigen::MatrixXcd fs = complex_hessian_fd(log_norm2, z, step);
    Eigen::MatrixXcd tt = tilde_tensor(src, z, h);
    return (fs - tt).cwiseAbs().maxCoeff();
}

// |f(z)|^2 / K(z,z)
inline double kobayashi_ratio(const KernelSource& src, const FunctionVector& f, const Point& z)
{
    const BasisSpec& basis = src.basis();
    if (!(f.norm2() > 0.0)) throw std::invalid_argument("kobayashi_ratio: zero function");
    cplx fz(0.0, 0.0);
    for (int k = 0; k < basis.size(); ++k) fz += f.coeffs[k] * basis.value(k, z);
    double K = src.eval(z, z).real();
    if (!(K > 0.0)) throw numerical_error("kobayashi_ratio: degenerate kernel");
    return std::norm(fz) / K;
}

} // namespace bergman
