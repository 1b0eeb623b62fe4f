#pragma once

#include "rational.hpp"

#include <algorithm>
#include <numeric>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace starspec {

enum class Parity { even, odd };

inline Parity opposite(Parity p) { return p == Parity::even ? Parity::odd : Parity::even; }

inline const char* to_string(Parity p) { return p == Parity::even ? "even" : "odd"; }

inline Parity parse_parity(std::string_view s)
{
    if (s == "even") return Parity::even;
    if (s == "odd") return Parity::odd;
    throw std::invalid_argument("parity must be \"even\" or \"odd\", got \"" + std::string(s) + "\"");
}

/// Star-shaped tree. Branch b has m_b vertices labelled (b, t), t = distance
/// from the leaf; vertex indices run branch by branch, root last. The root is odd.
class StarGraph {
public:
    StarGraph() = default;

    explicit StarGraph(std::vector<int> branch_lengths) : m_(std::move(branch_lengths))
    {
        if (m_.empty()) throw std::invalid_argument("star graph needs at least one branch");
        for (int m : m_)
            if (m < 1) throw std::invalid_argument("branch lengths must be positive");
        int n = 0;
        for (int m : m_) {
            offset_.push_back(n);
            n += m;
        }
        root_ = n;
        nbr_.assign(n + 1, {});
        parity_.assign(n + 1, Parity::odd);
        branch_of_.assign(n + 1, -1);
        for (std::size_t b = 0; b < m_.size(); ++b) {
            for (int t = 0; t < m_[b]; ++t) {
                int v = offset_[b] + t;
                branch_of_[v] = static_cast<int>(b);
                int dist = m_[b] - t;
                parity_[v] = dist % 2 == 0 ? Parity::odd : Parity::even;
                int w = t + 1 < m_[b] ? v + 1 : root_;
                edges_.emplace_back(v, w);
                nbr_[v].push_back(w);
                nbr_[w].push_back(v);
            }
        }
        for (auto& l : nbr_) std::sort(l.begin(), l.end());
    }

    int size() const { return root_ + 1; }
    int root() const { return root_; }
    int branches() const { return static_cast<int>(m_.size()); }
    const std::vector<int>& branch_lengths() const { return m_; }
    int branch_length(int b) const { return m_.at(b); }

    /// Vertex (b, t), t counted from the leaf.
    int vertex(int b, int t) const
    {
        if (b < 0 || b >= branches() || t < 0 || t >= m_[b]) throw std::out_of_range("no such vertex label");
        return offset_[b] + t;
    }
    int leaf(int b) const { return vertex(b, 0); }
    int inner(int b) const { return vertex(b, m_[b] - 1); }

    /// Vertex at distance `level + 1` from the root along branch b.
    int at_level(int b, int level) const { return vertex(b, m_.at(b) - 1 - level); }

    int branch_of(int v) const { return branch_of_.at(v); }
    int level_of(int v) const
    {
        int b = branch_of(v);
        return b < 0 ? -1 : m_[b] - 1 - (v - offset_[b]);
    }
    int offset(int b) const { return offset_.at(b); }

    Parity parity(int v) const { return parity_.at(v); }
    const std::vector<int>& neighbors(int v) const { return nbr_.at(v); }
    const std::vector<std::pair<int, int>>& edges() const { return edges_; }
    bool adjacent(int u, int v) const
    {
        auto& l = neighbors(u);
        return std::binary_search(l.begin(), l.end(), v);
    }

    /// "g0" for the root, "g<i+1>" for vertex index i otherwise.
    std::string vertex_name(int v) const
    {
        check(v);
        return v == root_ ? "g0" : "g" + std::to_string(v + 1);
    }

    void check(int v) const
    {
        if (v < 0 || v > root_) throw std::out_of_range("vertex index " + std::to_string(v) + " out of range");
    }

    template <class V>
    void check_vector(const V& x) const
    {
        if (static_cast<int>(x.size()) != size())
            throw std::invalid_argument("vector has " + std::to_string(x.size()) + " entries, graph has " +
                                        std::to_string(size()) + " vertices");
    }

    friend bool operator==(const StarGraph& a, const StarGraph& b) { return a.m_ == b.m_; }

private:
    std::vector<int> m_, offset_, branch_of_;
    int root_ = 0;
    std::vector<std::vector<int>> nbr_;
    std::vector<std::pair<int, int>> edges_;
    std::vector<Parity> parity_;
};

inline StarGraph build_star(std::vector<int> branch_lengths) { return StarGraph(std::move(branch_lengths)); }

inline IVec unit_vector(const StarGraph& G, int v)
{
    G.check(v);
    IVec e(G.size(), 0);
    e[v] = 1;
    return e;
}

/// q(x) = sum x_i^2 - sum over edges x_i x_j.
template <class T>
T tits_form(const StarGraph& G, const std::vector<T>& x)
{
    G.check_vector(x);
    T q = 0;
    for (const auto& xi : x) q += xi * xi;
    for (auto [u, v] : G.edges()) q -= x[u] * x[v];
    return q;
}

/// (x, y) = q(x + y) - q(x) - q(y).
template <class T>
T bilinear_form(const StarGraph& G, const std::vector<T>& x, const std::vector<T>& y)
{
    G.check_vector(x);
    G.check_vector(y);
    T s = 0;
    for (std::size_t i = 0; i < x.size(); ++i) s += 2 * x[i] * y[i];
    for (auto [u, v] : G.edges()) s -= x[u] * y[v] + x[v] * y[u];
    return s;
}

/// Matrix of the bilinear form, 2I - adjacency.
inline QMatrix form_matrix(const StarGraph& G)
{
    QMatrix B = 2 * QMatrix::identity(G.size());
    for (auto [u, v] : G.edges()) {
        B(u, v) = -1;
        B(v, u) = -1;
    }
    return B;
}

enum class GraphKind { Dynkin, ExtendedDynkin, Wild };

inline const char* to_string(GraphKind k)
{
    switch (k) {
    case GraphKind::Dynkin: return "Dynkin";
    case GraphKind::ExtendedDynkin: return "ExtendedDynkin";
    default: return "Wild";
    }
}

struct GraphClass {
    GraphKind kind = GraphKind::Wild;
    std::string name;               // "E6~", "D5", ...; empty for wild graphs
    IVec delta;                     // extended Dynkin only
    std::vector<int> extending;     // { v : delta_v = 1 }
    IVec witness;                   // wild only: x >= 0 with q(x) < 0
};

namespace detail {

struct Inertia {
    int positive = 0, zero = 0, negative = 0;
};

/// Exact inertia of a symmetric rational matrix by symmetric elimination.
inline Inertia inertia(QMatrix a)
{
    int n = a.rows();
    std::vector<bool> done(n, false);
    Inertia in;
    for (int step = 0; step < n; ++step) {
        int p = -1;
        for (int i = 0; i < n && p < 0; ++i)
            if (!done[i] && a(i, i) != 0) p = i;
        if (p < 0) {
            // all remaining diagonal entries vanish
            for (int i = 0; i < n; ++i)
                for (int j = 0; j < n; ++j)
                    if (!done[i] && !done[j] && a(i, j) != 0) {
                        // 2x2 block [[0,b],[b,0]] has one positive and one negative eigenvalue
                        in.negative += 1;
                        in.positive += 1;
                        Rational b = a(i, j);
                        for (int r = 0; r < n; ++r)
                            for (int c = 0; c < n; ++c) {
                                if (done[r] || done[c] || r == i || r == j || c == i || c == j) continue;
                                a(r, c) -= (a(r, i) * a(j, c) + a(r, j) * a(i, c)) / b;
                            }
                        done[i] = done[j] = true;
                        goto next;
                    }
            for (int i = 0; i < n; ++i)
                if (!done[i]) ++in.zero;
            return in;
        }
        if (a(p, p) > 0) ++in.positive;
        else ++in.negative;
        for (int r = 0; r < n; ++r) {
            if (done[r] || r == p || a(r, p) == 0) continue;
            Rational s = a(r, p) / a(p, p);
            for (int c = 0; c < n; ++c)
                if (!done[c] && c != p) a(r, c) -= s * a(p, c);
        }
        done[p] = true;
    next:;
    }
    return in;
}

inline std::string dynkin_name(std::vector<int> m)
{
    std::sort(m.begin(), m.end());
    if (m.size() == 1) return "A" + std::to_string(m[0] + 1);
    if (m.size() == 2) return "A" + std::to_string(m[0] + m[1] + 1);
    if (m.size() == 3) {
        if (m[0] == 1 && m[1] == 1) return "D" + std::to_string(m[2] + 3);
        if (m[0] == 1 && m[1] == 2) return "E" + std::to_string(m[2] + 4);
    }
    return "?";
}

inline std::string extended_name(std::vector<int> m)
{
    std::sort(m.begin(), m.end());
    if (m == std::vector<int>{1, 1, 1, 1}) return "D4~";
    if (m == std::vector<int>{2, 2, 2}) return "E6~";
    if (m == std::vector<int>{1, 3, 3}) return "E7~";
    if (m == std::vector<int>{1, 2, 5}) return "E8~";
    return "?";
}

inline IVec positive_integer_kernel_vector(const StarGraph& G)
{
    auto ker = kernel(form_matrix(G));
    if (ker.size() != 1) throw std::logic_error("radical is not one-dimensional");
    QVec v = ker[0];
    Integer l = 1;
    for (auto& x : v) l = boost::multiprecision::lcm(l, boost::multiprecision::denominator(x));
    IVec out;
    Integer g = 0;
    for (auto& x : v) {
        Integer z = boost::multiprecision::numerator(Rational(x * l));
        g = boost::multiprecision::gcd(g, z);
    }
    for (auto& x : v) {
        Integer z = boost::multiprecision::numerator(Rational(x * l)) / g;
        out.push_back(z.convert_to<long long>());
    }
    if (out[0] < 0)
        for (auto& x : out) x = -x;
    return out;
}

inline GraphClass classify_untyped(const StarGraph& G);

/// x = 2 delta_H + e_v for an extended Dynkin sub-star H and a vertex v adjacent to it.
inline IVec wild_witness(const StarGraph& G)
{
    const std::vector<std::vector<int>> patterns = {{1, 1, 1, 1}, {2, 2, 2}, {3, 3, 1}, {5, 2, 1}};
    std::vector<int> order(G.branches());
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](int a, int b) { return G.branch_length(a) > G.branch_length(b); });
    for (const auto& pat : patterns) {
        if (static_cast<int>(pat.size()) > G.branches()) continue;
        bool fits = true;
        for (std::size_t i = 0; i < pat.size(); ++i)
            if (G.branch_length(order[i]) < pat[i]) fits = false;
        if (!fits) continue;

        StarGraph H(pat);
        IVec dh = positive_integer_kernel_vector(H);
        IVec x(G.size(), 0);
        x[G.root()] = 2 * dh[H.root()];
        for (std::size_t i = 0; i < pat.size(); ++i)
            for (int lvl = 0; lvl < pat[i]; ++lvl)
                x[G.at_level(order[i], lvl)] = 2 * dh[H.at_level(static_cast<int>(i), lvl)];
        int v = -1;
        for (std::size_t i = 0; i < pat.size() && v < 0; ++i)
            if (G.branch_length(order[i]) > pat[i]) v = G.at_level(order[i], pat[i]);
        if (v < 0 && static_cast<int>(pat.size()) < G.branches()) v = G.inner(order[pat.size()]);
        if (v < 0) continue; // G is H itself
        x[v] = 1;
        return x;
    }
    throw std::logic_error("no extended Dynkin sub-star found in a wild star");
}

} // namespace detail

/// Dynkin iff q is positive definite; extended Dynkin iff semidefinite with a
/// one-dimensional radical; wild otherwise.
inline GraphClass classify(const StarGraph& G)
{
    auto in = detail::inertia(form_matrix(G));
    GraphClass c;
    if (in.negative == 0 && in.zero == 0) {
        c.kind = GraphKind::Dynkin;
        c.name = detail::dynkin_name(G.branch_lengths());
    } else if (in.negative == 0 && in.zero == 1) {
        c.kind = GraphKind::ExtendedDynkin;
        c.name = detail::extended_name(G.branch_lengths());
        c.delta = detail::positive_integer_kernel_vector(G);
        for (int v = 0; v < G.size(); ++v)
            if (c.delta[v] == 1) c.extending.push_back(v);
    } else {
        c.kind = GraphKind::Wild;
        c.witness = detail::wild_witness(G);
    }
    return c;
}

inline GraphClass require_extended(const StarGraph& G)
{
    GraphClass c = classify(G);
    if (c.kind != GraphKind::ExtendedDynkin)
        throw std::domain_error(std::string("graph is ") + to_string(c.kind) + ", extended Dynkin required");
    return c;
}

inline bool is_simple_root(const IVec& d)
{
    long long s = 0;
    for (long long x : d) {
        if (x < 0 || x > 1) return false;
        s += x;
    }
    return s == 1;
}

inline int simple_vertex(const IVec& d)
{
    for (std::size_t i = 0; i < d.size(); ++i)
        if (d[i] == 1) return static_cast<int>(i);
    return -1;
}

template <class T>
bool is_positive(const std::vector<T>& x)
{
    bool nonzero = false;
    for (const auto& e : x) {
        if (e < 0) return false;
        if (e != 0) nonzero = true;
    }
    return nonzero;
}

} // namespace starspec
