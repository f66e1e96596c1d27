#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <functional>
#include <map>
#include <set>
#include <vector>

#include <Eigen/Dense>

#include "bergman/errors.hpp"

namespace bergman::wedge {

using cplx = std::complex<double>;

// Strictly increasing tuple of indices below the ambient dimension.
using MultiIndex = std::vector<int>;

constexpr int kMaxAmbient = 64; // cap on relation enumeration

// Degree-s element of the exterior power of an m-dimensional coordinate
// space, stored on strictly increasing multi-indices with signs normalized
// at insertion.
class WedgeVector {
public:
    WedgeVector(int degree, int ambient) : degree_(degree), ambient_(ambient)
    {
        if (degree < 1 || ambient < degree)
            throw std::invalid_argument("wedge degree must satisfy 1 <= s <= m");
        if (ambient > kMaxAmbient) throw std::invalid_argument("ambient dimension above cap");
    }

    int degree() const { return degree_; }
    int ambient() const { return ambient_; }
    const std::map<MultiIndex, cplx>& coords() const { return coords_; }

    // Adds c on a possibly unsorted index tuple; sorting carries the
    // permutation sign, repeated indices contribute nothing.
    void add(MultiIndex idx, cplx c)
    {
        if (static_cast<int>(idx.size()) != degree_)
            throw std::invalid_argument("multi-index degree mismatch");
        int sign = 1;
        for (size_t i = 0; i < idx.size(); ++i) {
            for (size_t j = i + 1; j < idx.size(); ++j) {
                if (idx[i] == idx[j]) return;
                if (idx[i] > idx[j]) {
                    std::swap(idx[i], idx[j]);
                    sign = -sign;
                }
            }
            if (idx[i] < 0 || idx[i] >= ambient_)
                throw std::invalid_argument("multi-index out of ambient range");
        }
        cplx& slot = coords_[idx];
        slot += static_cast<double>(sign) * c;
        if (slot == cplx(0.0, 0.0)) coords_.erase(idx);
    }

    cplx coord(const MultiIndex& sorted_idx) const
    {
        auto it = coords_.find(sorted_idx);
        return it == coords_.end() ? cplx(0.0, 0.0) : it->second;
    }

    double norm2() const
    {
        double acc = 0.0;
        for (const auto& [idx, c] : coords_) acc += std::norm(c);
        return acc;
    }

    WedgeVector& operator*=(cplx c)
    {
        for (auto& [idx, v] : coords_) v *= c;
        return *this;
    }

    WedgeVector operator+(const WedgeVector& other) const
    {
        if (degree_ != other.degree_ || ambient_ != other.ambient_)
            throw std::invalid_argument("wedge shape mismatch");
        WedgeVector out = *this;
        for (const auto& [idx, c] : other.coords_) out.add(idx, c);
        return out;
    }

private:
    int degree_, ambient_;
    std::map<MultiIndex, cplx> coords_;
};

namespace detail {

inline void enumerate_subsets(const std::vector<int>& pool, int size,
                              const std::function<void(const MultiIndex&)>& fn)
{
    MultiIndex cur;
    std::function<void(size_t)> rec = [&](size_t start) {
        if (static_cast<int>(cur.size()) == size) {
            fn(cur);
            return;
        }
        for (size_t i = start; i < pool.size(); ++i) {
            cur.push_back(pool[i]);
            rec(i + 1);
            cur.pop_back();
        }
    };
    rec(0);
}

} // namespace detail

// Wedge of s coordinate vectors in dimension m: the coordinate at a
// multi-index J is the s x s minor of the stacked vectors on columns J.
inline WedgeVector wedge_of(const std::vector<Eigen::VectorXcd>& vectors)
{
    if (vectors.empty()) throw std::invalid_argument("wedge_of: empty input");
    const int s = static_cast<int>(vectors.size());
    const int m = static_cast<int>(vectors[0].size());
    for (const auto& v : vectors)
        if (static_cast<int>(v.size()) != m)
            throw std::invalid_argument("wedge_of: dimension mismatch");

    WedgeVector out(s, m);
    std::vector<int> all(m);
    for (int i = 0; i < m; ++i) all[i] = i;
    Eigen::MatrixXcd sub(s, s);
    detail::enumerate_subsets(all, s, [&](const MultiIndex& J) {
        for (int r = 0; r < s; ++r)
            for (int c = 0; c < s; ++c) sub(r, c) = vectors[r][J[c]];
        cplx det = sub.determinant();
        if (det != cplx(0.0, 0.0)) out.add(J, det);
    });
    return out;
}

// sum_J u_J conj(v_J); for decomposables this is the Gram determinant of
// the factor tuples.
inline cplx inner(const WedgeVector& u, const WedgeVector& v)
{
    if (u.degree() != v.degree() || u.ambient() != v.ambient())
        throw std::invalid_argument("inner: wedge shape mismatch");
    cplx acc(0.0, 0.0);
    for (const auto& [idx, c] : u.coords()) acc += c * std::conj(v.coord(idx));
    return acc;
}

// det of the pairwise inner-product matrix of a tuple; equals the squared
// wedge norm of the tuple.
inline Eigen::MatrixXcd gram_matrix(const std::vector<Eigen::VectorXcd>& vectors)
{
    const int k = static_cast<int>(vectors.size());
    Eigen::MatrixXcd G(k, k);
    for (int i = 0; i < k; ++i)
        for (int j = 0; j < k; ++j) G(i, j) = vectors[j].dot(vectors[i]); // <v_i, v_j>
    return G;
}

inline double gram_det(const std::vector<Eigen::VectorXcd>& vectors)
{
    return gram_matrix(vectors).determinant().real();
}

// Maximum absolute value of the quadratic relations
//   sum_{i in L} rho_{I,L,i} a_{I u {i}} a_{L \ {i}}
// over disjoint index sets I (size s-1) and L (size s+1) drawn from the
// support plus one slack index. rho is +1 when the counts of smaller
// elements of L and of I agree mod 2, -1 otherwise; the stored coordinates
// already carry canonical increasing order.
inline double plucker_residual(const WedgeVector& u)
{
    if (u.coords().empty()) throw std::invalid_argument("plucker_residual: zero vector");
    const int s = u.degree();
    if (s == 1) return 0.0; // every 1-vector is decomposable

    // support indices plus one slack index
    std::set<int> support;
    for (const auto& [idx, c] : u.coords())
        for (int i : idx) support.insert(i);
    std::vector<int> pool(support.begin(), support.end());
    for (int i = 0; i < u.ambient(); ++i)
        if (!support.count(i)) {
            pool.push_back(i);
            break;
        }
    std::sort(pool.begin(), pool.end());

    double worst = 0.0;
    detail::enumerate_subsets(pool, s - 1, [&](const MultiIndex& I) {
        std::vector<int> rest;
        for (int i : pool)
            if (std::find(I.begin(), I.end(), i) == I.end()) rest.push_back(i);
        detail::enumerate_subsets(rest, s + 1, [&](const MultiIndex& L) {
            cplx acc(0.0, 0.0);
            for (int i : L) {
                int below_L = static_cast<int>(std::count_if(L.begin(), L.end(),
                                                             [&](int j) { return j < i; }));
                int below_I = static_cast<int>(std::count_if(I.begin(), I.end(),
                                                             [&](int j) { return j < i; }));
                double rho = (below_L % 2 == below_I % 2) ? 1.0 : -1.0;

                MultiIndex Ii = I;
                Ii.insert(std::upper_bound(Ii.begin(), Ii.end(), i), i);
                MultiIndex Li;
                for (int j : L)
                    if (j != i) Li.push_back(j);
                acc += rho * u.coord(Ii) * u.coord(Li);
            }
            worst = std::max(worst, std::abs(acc));
        });
    });
    return worst;
}

inline bool is_decomposable(const WedgeVector& u, double tol)
{
    double n2 = u.norm2();
    if (!(n2 > 0.0)) throw std::invalid_argument("is_decomposable: zero vector");
    return plucker_residual(u) / n2 <= tol;
}

} // namespace bergman::wedge
