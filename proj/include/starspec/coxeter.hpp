#pragma once

#include "graph.hpp"

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace starspec {

/// (sigma_g x)_g = -x_g + sum of x over the neighbours of g.
template <class T>
std::vector<T> reflect(const StarGraph& G, int g, std::vector<T> x)
{
    G.check(g);
    G.check_vector(x);
    T s = -x[g];
    for (int h : G.neighbors(g)) s += x[h];
    x[g] = s;
    return x;
}

/// Simultaneous reflection at every vertex of parity p.
template <class T>
std::vector<T> coxeter_dim(const StarGraph& G, Parity p, const std::vector<T>& x)
{
    G.check_vector(x);
    std::vector<T> y = x;
    for (int g = 0; g < G.size(); ++g) {
        if (G.parity(g) != p) continue;
        T s = -x[g];
        for (int h : G.neighbors(g)) s += x[h];
        y[g] = s;
    }
    return y;
}

inline QMatrix reflection_matrix(const StarGraph& G, Parity p)
{
    QMatrix m = QMatrix::identity(G.size());
    for (int g = 0; g < G.size(); ++g) {
        if (G.parity(g) != p) continue;
        m(g, g) = -1;
        for (int h : G.neighbors(g)) m(g, h) = 1;
    }
    return m;
}

/// Order of the two parity maps in the Coxeter element.
enum class CoxeterOrder {
    odd_after_even, // C = c_odd . c_even (even map applied first)
    even_after_odd  // C = c_even . c_odd
};

/// Elementary Coxeter matrix acting on column vectors.
inline QMatrix coxeter_matrix(const StarGraph& G, CoxeterOrder order = CoxeterOrder::odd_after_even)
{
    QMatrix e = reflection_matrix(G, Parity::even), o = reflection_matrix(G, Parity::odd);
    return order == CoxeterOrder::odd_after_even ? o * e : e * o;
}

inline QMatrix matrix_power(const QMatrix& m, int k)
{
    if (k < 0) throw std::invalid_argument("negative matrix power");
    QMatrix r = QMatrix::identity(m.rows());
    for (int i = 0; i < k; ++i) r = r * m;
    return r;
}

/// Dimension together with character.
struct DimCharPair {
    IVec d;
    QVec f;

    friend bool operator==(const DimCharPair& a, const DimCharPair& b) { return a.d == b.d && a.f == b.f; }
};

/// d(g) + f(g) > 0 everywhere, d >= 0, f >= 0 and f != 0.
inline bool in_S(const StarGraph& G, const DimCharPair& p)
{
    G.check_vector(p.d);
    G.check_vector(p.f);
    bool nonzero = false;
    for (int g = 0; g < G.size(); ++g) {
        if (p.d[g] < 0 || p.f[g] < 0) return false;
        if (p.f[g] != 0) nonzero = true;
        if (p.d[g] + p.f[g] <= 0) return false;
    }
    return nonzero;
}

/// A step of the reflection functor was applied outside its domain.
class FunctorDomainError : public std::domain_error {
public:
    FunctorDomainError(int vertex, Parity token, Rational value, const std::string& what)
        : std::domain_error(what), vertex_(vertex), token_(token), value_(std::move(value))
    {
    }
    int vertex() const { return vertex_; }
    Parity token() const { return token_; }
    const Rational& value() const { return value_; }

private:
    int vertex_;
    Parity token_;
    Rational value_;
};

/// Vertices of parity p that the functor with token p acts on: d(g) > 0 or
/// the reflected dimension is positive there.
inline std::vector<int> touched_vertices(const StarGraph& G, Parity p, const IVec& d)
{
    IVec nd = coxeter_dim(G, p, d);
    std::vector<int> out;
    for (int g = 0; g < G.size(); ++g)
        if (G.parity(g) == p && (d[g] > 0 || nd[g] > 0)) out.push_back(g);
    return out;
}

/// Character reflected at the vertices of parity p inside the support of d.
inline QVec support_reflect(const StarGraph& G, Parity p, const IVec& d, const QVec& f)
{
    QVec out = f;
    for (int g = 0; g < G.size(); ++g) {
        if (G.parity(g) != p || d[g] == 0) continue;
        Rational s = -f[g];
        for (int h : G.neighbors(g)) s += f[h];
        out[g] = s;
    }
    return out;
}

/// Functor step with token p: dimension reflected at parity p, character
/// reflected at the opposite parity on the support. Throws
/// FunctorDomainError naming the first touched vertex with f(g) <= 0.
inline DimCharPair coxeter_char(const StarGraph& G, Parity token, const DimCharPair& pair)
{
    G.check_vector(pair.d);
    G.check_vector(pair.f);
    for (long long x : pair.d)
        if (x < 0) throw std::invalid_argument("dimension vector has a negative entry");
    for (int g : touched_vertices(G, token, pair.d))
        if (pair.f[g] <= 0)
            throw FunctorDomainError(g, token, pair.f[g],
                                     std::string(to_string(token)) + " functor needs f > 0 at " + G.vertex_name(g) +
                                         ", found " + to_string(pair.f[g]));
    DimCharPair out;
    out.d = coxeter_dim(G, token, pair.d);
    for (long long x : out.d)
        if (x < 0) throw std::domain_error("reflected dimension is negative");
    out.f = support_reflect(G, opposite(token), pair.d, pair.f);
    return out;
}

/// Sequence of parity tokens.
struct CoxeterWord {
    std::vector<Parity> tokens;

    static CoxeterWord alternating(Parity first, int length)
    {
        CoxeterWord w;
        Parity p = first;
        for (int i = 0; i < length; ++i) {
            w.tokens.push_back(p);
            p = opposite(p);
        }
        return w;
    }

    std::size_t size() const { return tokens.size(); }

    bool alternates() const
    {
        for (std::size_t i = 1; i < tokens.size(); ++i)
            if (tokens[i] == tokens[i - 1]) return false;
        return true;
    }
};

/// Trajectory of (d, f) under a word, first element the input.
inline std::vector<DimCharPair> apply_word(const StarGraph& G, const CoxeterWord& w, const DimCharPair& start)
{
    std::vector<DimCharPair> traj{start};
    for (Parity p : w.tokens) traj.push_back(coxeter_char(G, p, traj.back()));
    return traj;
}

/// Printed closed form of the k-th Coxeter power on E6~ (row-vector convention,
/// periodic in k with period 6).
inline QMatrix coxeter_table_e6(int k)
{
    if (k < 0) throw std::invalid_argument("k must be nonnegative");
    long long s = k % 2 == 0 ? 1 : -1;
    QMatrix m;
    Rational den;
    switch (k % 3) {
    case 0:
        den = 12;
        m = QMatrix{{11 + 3 * s, 4, -1 + 3 * s, 4, -1 + 3 * s, 4, 3 * (3 - s)},
                    {-4, 4, -4, -8, -4, -8, -12},
                    {-1 + 3 * s, 4, 11 + 3 * s, 4, -1 + 3 * s, 4, 3 * (3 - s)},
                    {-4, -8, -4, 4, -4, -8, -12},
                    {-1 + 3 * s, 4, -1 + 3 * s, 4, 11 + 3 * s, 4, 3 * (3 - s)},
                    {-4, -8, -4, -8, -4, 4, -12},
                    {3 * (3 - s), 12, 3 * (3 - s), 12, 3 * (3 - s), 12, 3 * (9 + s)}};
        break;
    case 1:
        den = 4;
        m = QMatrix{{1 + s, 4, 1 + s, 0, 1 + s, 0, 3 - s},
                    {-4, -4, 0, 0, 0, 0, -4},
                    {1 + s, 0, 1 + s, 4, 1 + s, 0, 3 - s},
                    {0, 0, -4, -4, 0, 0, -4},
                    {1 + s, 0, 1 + s, 0, 1 + s, 4, 3 - s},
                    {0, 0, 0, 0, -4, -4, -4},
                    {3 - s, 4, 3 - s, 4, 3 - s, 4, 9 + s}};
        break;
    default:
        den = 12;
        m = QMatrix{{-5 + 3 * s, -4, 7 + 3 * s, 8, 7 + 3 * s, 8, 3 * (3 - s)},
                    {4, -4, -8, -4, -8, -4, -12},
                    {7 + 3 * s, 8, -5 + 3 * s, -4, 7 + 3 * s, 8, 3 * (3 - s)},
                    {-8, -4, 4, -4, -8, -4, -12},
                    {7 + 3 * s, 8, 7 + 3 * s, 8, -5 + 3 * s, -4, 3 * (3 - s)},
                    {-8, -4, -8, -4, 4, -4, -12},
                    {3 * (3 - s), 12, 3 * (3 - s), 12, 3 * (3 - s), 12, 3 * (9 + s)}};
        break;
    }
    return Rational(1) / den * m;
}

/// Defect functional of E6~ for C = c_odd . c_even: C^k x drifts by
/// ((k-1)/6) * <defect, x> * delta relative to the periodic table.
inline IVec defect_e6() { return {1, -2, 1, -2, 1, -2, 3}; }

/// Exact C^k on E6~ (column vectors, C = c_odd . c_even): the transposed
/// periodic table plus the delta drift.
inline QMatrix coxeter_power_matrix_e6(int k)
{
    if (k < 0) throw std::invalid_argument("k must be nonnegative");
    QVec delta = to_q({1, 2, 1, 2, 1, 2, 3});
    QVec defect = to_q(defect_e6());
    return coxeter_table_e6(k).transpose() + Rational(k - 1, 6) * outer(delta, defect);
}

} // namespace starspec
