#pragma once

#include "graph.hpp"

#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace starspec {

/// Spectra alpha^(j) (strictly decreasing, positive; the point 0 is implicit) and gamma.
struct SpectralInstance {
    std::vector<QVec> branches;
    Rational gamma;

    std::vector<int> lengths() const
    {
        std::vector<int> m;
        for (auto& b : branches) m.push_back(static_cast<int>(b.size()));
        return m;
    }

    /// Flat parameter vector: per branch (alpha_m, ..., alpha_1), then gamma.
    QVec chi() const
    {
        QVec out;
        for (auto& b : branches)
            for (auto it = b.rbegin(); it != b.rend(); ++it) out.push_back(*it);
        out.push_back(gamma);
        return out;
    }

    static SpectralInstance from_chi(const std::vector<int>& lengths, const QVec& chi)
    {
        std::size_t total = 1;
        for (int m : lengths) total += static_cast<std::size_t>(m);
        if (chi.size() != total) throw std::invalid_argument("chi has the wrong number of components");
        SpectralInstance inst;
        std::size_t pos = 0;
        for (int m : lengths) {
            QVec b(m);
            for (int i = m - 1; i >= 0; --i) b[i] = chi[pos++];
            inst.branches.push_back(std::move(b));
        }
        inst.gamma = chi[pos];
        return inst;
    }

    SpectralInstance scaled(const Rational& t) const
    {
        SpectralInstance s = *this;
        for (auto& b : s.branches)
            for (auto& a : b) a *= t;
        s.gamma *= t;
        return s;
    }

    friend bool operator==(const SpectralInstance& a, const SpectralInstance& b)
    {
        return a.branches == b.branches && a.gamma == b.gamma;
    }
};

/// Empty when the instance is valid for G, otherwise the reason.
inline std::string instance_problem(const StarGraph& G, const SpectralInstance& inst)
{
    if (inst.lengths() != G.branch_lengths()) return "branch lengths of the instance do not match the graph";
    for (std::size_t j = 0; j < inst.branches.size(); ++j) {
        const QVec& a = inst.branches[j];
        for (std::size_t k = 0; k < a.size(); ++k) {
            if (a[k] <= 0) return "branch " + std::to_string(j + 1) + ": spectrum points must be positive";
            if (k > 0 && a[k] >= a[k - 1])
                return "branch " + std::to_string(j + 1) + ": spectrum must be strictly decreasing";
        }
    }
    return {};
}

inline void validate_instance(const StarGraph& G, const SpectralInstance& inst)
{
    if (auto why = instance_problem(G, inst); !why.empty()) throw std::invalid_argument(why);
}

/// Ranks n_k^(j) of the spectral projections and n0 = dim H_0.
struct GeneralizedDimension {
    std::vector<IVec> n;
    long long n0 = 0;

    IVec flat() const
    {
        IVec out;
        for (auto& b : n)
            for (long long x : b) out.push_back(x);
        out.push_back(n0);
        return out;
    }

    /// Every projection nonzero and no branch resolving the identity.
    bool nondegenerate() const
    {
        if (n0 < 1) return false;
        for (auto& b : n) {
            long long s = 0;
            for (long long x : b) {
                if (x < 1) return false;
                s += x;
            }
            if (s >= n0) return false;
        }
        return true;
    }

    friend bool operator==(const GeneralizedDimension& a, const GeneralizedDimension& b)
    {
        return a.n == b.n && a.n0 == b.n0;
    }
};

namespace detail {

/// Summand range [lo, hi] (1-based) of the space at `level` on a branch of length m.
inline std::pair<int, int> level_interval(int m, int level)
{
    return {1 + (level + 1) / 2, m - level / 2};
}

/// Character at `level` is alpha_a - alpha_b, alpha_{m+1} = 0.
inline std::pair<int, int> level_char_indices(int m, int level)
{
    return {1 + level / 2, m + 1 - (level + 1) / 2};
}

} // namespace detail

/// f(g0) = gamma; along a branch the alternating-ends differences of the spectrum.
inline QVec char_from_chi(const StarGraph& G, const SpectralInstance& inst)
{
    validate_instance(G, inst);
    QVec f(G.size());
    f[G.root()] = inst.gamma;
    for (int b = 0; b < G.branches(); ++b) {
        int m = G.branch_length(b);
        const QVec& a = inst.branches[b];
        auto alpha = [&](int i) { return i <= m ? a[i - 1] : Rational(0); };
        for (int lvl = 0; lvl < m; ++lvl) {
            auto [i, j] = detail::level_char_indices(m, lvl);
            f[G.at_level(b, lvl)] = alpha(i) - alpha(j);
        }
    }
    return f;
}

/// Inverse of char_from_chi; rejects characters whose spectrum is not
/// strictly decreasing and positive.
inline SpectralInstance chi_from_char(const StarGraph& G, const QVec& f)
{
    G.check_vector(f);
    SpectralInstance inst;
    inst.gamma = f[G.root()];
    for (int b = 0; b < G.branches(); ++b) {
        int m = G.branch_length(b);
        QVec a(m + 2);
        std::vector<bool> known(m + 2, false);
        a[m + 1] = 0;
        known[m + 1] = true;
        for (int lvl = 0; lvl < m; ++lvl) {
            auto [i, j] = detail::level_char_indices(m, lvl);
            const Rational& x = f[G.at_level(b, lvl)];
            if (!known[i]) {
                a[i] = x + a[j];
                known[i] = true;
            } else {
                a[j] = a[i] - x;
                known[j] = true;
            }
        }
        inst.branches.emplace_back(a.begin() + 1, a.begin() + 1 + m);
    }
    if (auto why = instance_problem(G, inst); !why.empty())
        throw std::invalid_argument("character does not come from a valid instance: " + why);
    return inst;
}

/// d(g0) = n0; the space at each branch level is the sum of its summand range.
inline IVec dim_from_n(const StarGraph& G, const GeneralizedDimension& n)
{
    if (static_cast<int>(n.n.size()) != G.branches()) throw std::invalid_argument("dimension has the wrong number of branches");
    IVec d(G.size(), 0);
    d[G.root()] = n.n0;
    for (int b = 0; b < G.branches(); ++b) {
        int m = G.branch_length(b);
        if (static_cast<int>(n.n[b].size()) != m) throw std::invalid_argument("dimension branch length mismatch");
        for (long long x : n.n[b])
            if (x < 0) throw std::invalid_argument("generalized dimension entries must be nonnegative");
        for (int lvl = 0; lvl < m; ++lvl) {
            auto [lo, hi] = detail::level_interval(m, lvl);
            long long s = 0;
            for (int i = lo; i <= hi; ++i) s += n.n[b][i - 1];
            d[G.at_level(b, lvl)] = s;
        }
    }
    if (n.n0 < 0) throw std::invalid_argument("n0 must be nonnegative");
    return d;
}

/// Inverse of dim_from_n: each summand is the drop between consecutive levels.
inline GeneralizedDimension n_from_dim(const StarGraph& G, const IVec& d)
{
    G.check_vector(d);
    GeneralizedDimension n;
    n.n0 = d[G.root()];
    for (int b = 0; b < G.branches(); ++b) {
        int m = G.branch_length(b);
        IVec nb(m, 0);
        for (int lvl = 0; lvl < m; ++lvl) {
            auto [lo, hi] = detail::level_interval(m, lvl);
            long long here = d[G.at_level(b, lvl)];
            long long next = lvl + 1 < m ? d[G.at_level(b, lvl + 1)] : 0;
            int dropped = lvl + 1 < m ? ((lvl + 1) % 2 == 1 ? lo : hi) : lo;
            nb[dropped - 1] = here - next;
        }
        for (long long x : nb)
            if (x < 0) throw std::invalid_argument("dimension is not monotone along a branch: no generalized dimension");
        n.n.push_back(std::move(nb));
    }
    if (n.n0 < 0) throw std::invalid_argument("negative root dimension");
    return n;
}

/// 0 < d(leaf) < ... < d(inner) < d(g0) on every branch.
inline bool nondegenerate_dim(const StarGraph& G, const IVec& d)
{
    G.check_vector(d);
    for (int b = 0; b < G.branches(); ++b) {
        long long prev = 0;
        for (int t = 0; t < G.branch_length(b); ++t) {
            long long x = d[G.vertex(b, t)];
            if (x <= prev) return false;
            prev = x;
        }
        if (d[G.root()] <= prev) return false;
    }
    return true;
}

/// 0 < f(leaf) < ... < f(inner) on every branch.
inline bool nondegenerate_char(const StarGraph& G, const QVec& f)
{
    G.check_vector(f);
    for (int b = 0; b < G.branches(); ++b) {
        Rational prev = 0;
        for (int t = 0; t < G.branch_length(b); ++t) {
            const Rational& x = f[G.vertex(b, t)];
            if (x <= prev) return false;
            prev = x;
        }
    }
    return true;
}

/// M_f: chi (flat order of SpectralInstance::chi) to f (vertex order).
inline QMatrix char_matrix(const StarGraph& G)
{
    int cols = 1;
    for (int m : G.branch_lengths()) cols += m;
    QMatrix M(G.size(), cols);
    M(G.root(), cols - 1) = 1;
    int pos = 0;
    for (int b = 0; b < G.branches(); ++b) {
        int m = G.branch_length(b);
        auto col = [&](int i) { return pos + (m - i); };
        for (int lvl = 0; lvl < m; ++lvl) {
            auto [i, j] = detail::level_char_indices(m, lvl);
            int v = G.at_level(b, lvl);
            M(v, col(i)) += 1;
            if (j <= m) M(v, col(j)) -= 1;
        }
        pos += m;
    }
    return M;
}

/// M_d: d (vertex order) to flat n (per branch n_1..n_m, then n0).
inline QMatrix dim_matrix(const StarGraph& G)
{
    int rows = 1;
    for (int m : G.branch_lengths()) rows += m;
    QMatrix M(rows, G.size());
    M(rows - 1, G.root()) = 1;
    int pos = 0;
    for (int b = 0; b < G.branches(); ++b) {
        int m = G.branch_length(b);
        for (int lvl = 0; lvl < m; ++lvl) {
            auto [lo, hi] = detail::level_interval(m, lvl);
            int dropped = lvl + 1 < m ? ((lvl + 1) % 2 == 1 ? lo : hi) : lo;
            M(pos + dropped - 1, G.at_level(b, lvl)) += 1;
            if (lvl + 1 < m) M(pos + dropped - 1, G.at_level(b, lvl + 1)) -= 1;
        }
        pos += m;
    }
    return M;
}

/// Sum over branches of alpha . n minus gamma n0; zero is necessary for a
/// representation of generalized dimension n.
inline Rational trace_defect(const SpectralInstance& inst, const GeneralizedDimension& n)
{
    Rational s = -inst.gamma * n.n0;
    for (std::size_t j = 0; j < inst.branches.size(); ++j)
        for (std::size_t k = 0; k < inst.branches[j].size(); ++k) s += inst.branches[j][k] * n.n.at(j).at(k);
    return s;
}

/// Sum over even vertices of f d minus the sum over odd ones.
inline Rational parity_pairing(const StarGraph& G, const IVec& d, const QVec& f)
{
    Rational s = 0;
    for (int g = 0; g < G.size(); ++g) {
        if (d[g] == 0) continue;
        if (G.parity(g) == Parity::even) s += f[g] * d[g];
        else s -= f[g] * d[g];
    }
    return s;
}

} // namespace starspec
