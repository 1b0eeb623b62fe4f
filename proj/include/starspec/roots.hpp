#pragma once

#include "coxeter.hpp"
#include "graph.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <vector>

namespace starspec {

enum class RootKind { real, imaginary, none };
enum class Sign { positive, negative };

inline const char* to_string(RootKind k)
{
    switch (k) {
    case RootKind::real: return "real";
    case RootKind::imaginary: return "imaginary";
    default: return "none";
    }
}

struct Root {
    IVec vec;
    RootKind kind = RootKind::none;
    Sign sign = Sign::positive;
};

/// Nonzero integer x with q(x) = 1 (real) or q(x) = 0 (imaginary).
inline RootKind is_root(const StarGraph& G, const GraphClass& cls, const IVec& x)
{
    G.check_vector(x);
    if (cls.kind == GraphKind::Wild) throw std::domain_error("root test is only defined for Dynkin and extended Dynkin graphs");
    if (std::all_of(x.begin(), x.end(), [](long long v) { return v == 0; })) return RootKind::none;
    long long q = tits_form(G, x);
    if (q == 1) return RootKind::real;
    if (q == 0) return RootKind::imaginary;
    return RootKind::none;
}

inline RootKind is_root(const StarGraph& G, const IVec& x) { return is_root(G, classify(G), x); }

/// Rational overload; rejects non-integer entries.
inline RootKind is_root(const StarGraph& G, const QVec& x)
{
    IVec v;
    for (auto& e : x) {
        if (!is_integer(e)) throw std::invalid_argument("root test needs integer entries");
        v.push_back(boost::multiprecision::numerator(e).convert_to<long long>());
    }
    return is_root(G, v);
}

inline Root make_root(const StarGraph& G, const GraphClass& cls, IVec x)
{
    Root r;
    r.kind = is_root(G, cls, x);
    if (r.kind == RootKind::none) throw std::invalid_argument("vector is not a root");
    bool nonneg = std::all_of(x.begin(), x.end(), [](long long v) { return v >= 0; });
    bool nonpos = std::all_of(x.begin(), x.end(), [](long long v) { return v <= 0; });
    if (!nonneg && !nonpos) throw std::logic_error("root with mixed signs");
    r.sign = nonneg ? Sign::positive : Sign::negative;
    r.vec = std::move(x);
    return r;
}

inline int default_extending_vertex(const GraphClass& cls)
{
    if (cls.kind != GraphKind::ExtendedDynkin) throw std::domain_error("extending vertex needs an extended Dynkin graph");
    if (cls.extending.empty()) throw std::logic_error("no extending vertex");
    return cls.extending.front();
}

/// Positive roots with alpha_e = 0: one representative of each delta-series up to sign.
inline std::vector<Root> fundamental_roots(const StarGraph& G, const GraphClass& cls, std::optional<int> extending = {})
{
    int e = extending ? *extending : default_extending_vertex(cls);
    if (cls.kind != GraphKind::ExtendedDynkin) throw std::domain_error("fundamental roots need an extended Dynkin graph");
    if (cls.delta.at(e) != 1) throw std::invalid_argument(G.vertex_name(e) + " is not an extending vertex");

    std::vector<Root> out;
    IVec x(G.size(), 0);
    // odometer over the box 0 <= x <= delta with x_e = 0
    while (true) {
        if (std::any_of(x.begin(), x.end(), [](long long v) { return v != 0; }) && tits_form(G, x) == 1)
            out.push_back(Root{x, RootKind::real, Sign::positive});
        int i = 0;
        for (; i < G.size(); ++i) {
            if (i == e) continue;
            if (x[i] < cls.delta[i]) {
                ++x[i];
                break;
            }
            x[i] = 0;
        }
        if (i == G.size()) break;
    }
    std::sort(out.begin(), out.end(), [](const Root& a, const Root& b) { return a.vec < b.vec; });
    return out;
}

/// alpha + Z delta, stored by the representative with alpha_e = 0.
struct DeltaSeries {
    IVec base;
    IVec delta;

    IVec member(long long k) const
    {
        IVec v = base;
        for (std::size_t i = 0; i < v.size(); ++i) v[i] += k * delta[i];
        return v;
    }

    bool contains(const IVec& x, int e) const
    {
        long long k = x.at(e) - base.at(e);
        return member(k) == x;
    }

    friend bool operator==(const DeltaSeries& a, const DeltaSeries& b) { return a.base == b.base; }
    friend bool operator<(const DeltaSeries& a, const DeltaSeries& b) { return a.base < b.base; }
};

inline IVec reduce_mod_delta(const IVec& x, const IVec& delta, int e)
{
    IVec v = x;
    long long k = x.at(e);
    for (std::size_t i = 0; i < v.size(); ++i) v[i] -= k * delta[i];
    return v;
}

/// Finite set of delta-series closed under both parity Coxeter maps.
struct CSeries {
    std::vector<DeltaSeries> orbit;
    int extending = 0;

    std::size_t size() const { return orbit.size(); }

    bool contains(const IVec& x) const
    {
        if (orbit.empty()) return false;
        IVec b = reduce_mod_delta(x, orbit.front().delta, extending);
        return std::any_of(orbit.begin(), orbit.end(), [&](const DeltaSeries& s) { return s.base == b; });
    }

    std::vector<IVec> bases() const
    {
        std::vector<IVec> out;
        for (auto& s : orbit) out.push_back(s.base);
        std::sort(out.begin(), out.end());
        return out;
    }
};

/// Orbit of the seed's delta-series under c_even and c_odd, computed modulo delta.
inline CSeries coxeter_series(const StarGraph& G, const GraphClass& cls, const IVec& seed, std::optional<int> extending = {})
{
    int e = extending ? *extending : default_extending_vertex(cls);
    if (cls.kind != GraphKind::ExtendedDynkin) throw std::domain_error("Coxeter series need an extended Dynkin graph");
    if (is_root(G, cls, seed) != RootKind::real) throw std::invalid_argument("Coxeter series seed must be a real root");

    CSeries cs;
    cs.extending = e;
    std::set<IVec> seen;
    std::deque<IVec> queue;
    IVec start = reduce_mod_delta(seed, cls.delta, e);
    seen.insert(start);
    queue.push_back(start);
    while (!queue.empty()) {
        IVec x = queue.front();
        queue.pop_front();
        cs.orbit.push_back(DeltaSeries{x, cls.delta});
        for (Parity p : {Parity::even, Parity::odd}) {
            IVec y = reduce_mod_delta(coxeter_dim(G, p, x), cls.delta, e);
            if (seen.insert(y).second) queue.push_back(y);
        }
    }
    return cs;
}

/// All delta-series: representatives of Delta_f and its negative.
inline std::vector<DeltaSeries> all_delta_series(const StarGraph& G, const GraphClass& cls, std::optional<int> extending = {})
{
    std::vector<DeltaSeries> out;
    for (auto& r : fundamental_roots(G, cls, extending)) {
        IVec neg = r.vec;
        for (auto& x : neg) x = -x;
        out.push_back(DeltaSeries{r.vec, cls.delta});
        out.push_back(DeltaSeries{neg, cls.delta});
    }
    std::sort(out.begin(), out.end());
    return out;
}

/// Partition of all delta-series into Coxeter series, ordered by smallest base.
inline std::vector<CSeries> c_series_partition(const StarGraph& G, const GraphClass& cls, std::optional<int> extending = {})
{
    int e = extending ? *extending : default_extending_vertex(cls);
    std::vector<CSeries> parts;
    std::set<IVec> covered;
    for (auto& s : all_delta_series(G, cls, e)) {
        if (covered.count(s.base)) continue;
        CSeries cs = coxeter_series(G, cls, s.base, e);
        for (auto& m : cs.orbit) covered.insert(m.base);
        parts.push_back(std::move(cs));
    }
    return parts;
}

/// A Coxeter series is regular when none of its members is a simple root.
inline bool is_regular(const StarGraph& G, const CSeries& cs)
{
    for (int v = 0; v < G.size(); ++v)
        if (cs.contains(unit_vector(G, v))) return false;
    return true;
}

/// The three named series of E6~: seeds e_g1, e_g2, e_g0.
inline CSeries k_series_e6(int which)
{
    StarGraph G({2, 2, 2});
    GraphClass cls = classify(G);
    int seed_vertex = which == 1 ? 0 : which == 2 ? 1 : which == 3 ? G.root() : -1;
    if (seed_vertex < 0) throw std::invalid_argument("series name must be K1, K2 or K3");
    return coxeter_series(G, cls, unit_vector(G, seed_vertex));
}

/// Positive real roots d reachable from simple roots by height-increasing
/// simple reflections, with d(root) <= root_bound. Finite for Dynkin graphs
/// without a bound (pass a negative bound).
inline std::vector<IVec> positive_real_roots(const StarGraph& G, long long root_bound)
{
    std::set<IVec> seen;
    std::deque<IVec> queue;
    for (int v = 0; v < G.size(); ++v) {
        IVec e = unit_vector(G, v);
        if (root_bound >= 0 && e[G.root()] > root_bound) continue;
        seen.insert(e);
        queue.push_back(e);
    }
    while (!queue.empty()) {
        IVec x = queue.front();
        queue.pop_front();
        for (int v = 0; v < G.size(); ++v) {
            IVec y = reflect(G, v, x);
            if (y[v] <= x[v]) continue;
            if (root_bound >= 0 && y[G.root()] > root_bound) continue;
            if (seen.insert(y).second) queue.push_back(y);
        }
    }
    std::vector<IVec> out(seen.begin(), seen.end());
    std::sort(out.begin(), out.end(), [&](const IVec& a, const IVec& b) {
        if (a[G.root()] != b[G.root()]) return a[G.root()] < b[G.root()];
        return a < b;
    });
    return out;
}

} // namespace starspec
