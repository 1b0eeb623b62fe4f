#pragma once

#include "coxeter.hpp"
#include "feasibility.hpp"
#include "graph.hpp"
#include "transfer.hpp"

#include <Eigen/Dense>

#include <cmath>
#include <complex>
#include <cstdint>
#include <map>
#include <optional>
#include <random>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace starspec {

using Complex = std::complex<double>;
using CMatrix = Eigen::MatrixXcd;

/// Raised when a numerical construction misses its tolerance.
class ConstructionFailure : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Locally scalar representation: a space per vertex and Gamma_{to,from}
/// for every directed edge.
struct GraphRep {
    std::vector<int> dims;
    std::map<std::pair<int, int>, CMatrix> ops;
    std::optional<QVec> character;

    const CMatrix& op(int to, int from) const
    {
        auto it = ops.find({to, from});
        if (it == ops.end()) throw std::out_of_range("no operator on edge " + std::to_string(from) + " -> " + std::to_string(to));
        return it->second;
    }
    CMatrix& op(int to, int from) { return ops.at({to, from}); }

    IVec dimension() const { return IVec(dims.begin(), dims.end()); }
};

/// All spaces as given, all edge operators zero.
inline GraphRep zero_rep(const StarGraph& G, const std::vector<int>& dims)
{
    G.check_vector(dims);
    GraphRep r;
    r.dims = dims;
    for (auto [u, v] : G.edges()) {
        r.ops[{u, v}] = CMatrix::Zero(dims[u], dims[v]);
        r.ops[{v, u}] = CMatrix::Zero(dims[v], dims[u]);
    }
    return r;
}

/// C at g, zero elsewhere; character zero.
inline GraphRep simple_rep(const StarGraph& G, int g)
{
    G.check(g);
    std::vector<int> dims(G.size(), 0);
    dims[g] = 1;
    GraphRep r = zero_rep(G, dims);
    r.character = QVec(G.size(), 0);
    return r;
}

/// A_g = sum over neighbours g' of Gamma_{g,g'} Gamma_{g',g}.
inline CMatrix vertex_operator(const StarGraph& G, const GraphRep& rep, int g)
{
    CMatrix A = CMatrix::Zero(rep.dims[g], rep.dims[g]);
    for (int h : G.neighbors(g)) A += rep.op(g, h) * rep.op(h, g);
    return A;
}

inline CMatrix random_unitary(int n, std::mt19937_64& rng)
{
    std::normal_distribution<double> N(0.0, 1.0);
    CMatrix Z(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) Z(i, j) = Complex(N(rng), N(rng));
    Eigen::HouseholderQR<CMatrix> qr(Z);
    CMatrix Q = qr.householderQ() * CMatrix::Identity(n, n);
    CMatrix R = qr.matrixQR().triangularView<Eigen::Upper>();
    for (int i = 0; i < n; ++i) {
        Complex d = R(i, i);
        if (std::abs(d) > 0) Q.col(i) *= d / std::abs(d);
    }
    return Q;
}

/// Gamma'_{u,v} = U_u^* Gamma_{u,v} U_v.
inline GraphRep change_basis(const StarGraph& G, const GraphRep& rep, const std::vector<CMatrix>& U)
{
    G.check_vector(U);
    GraphRep out = rep;
    for (auto& [key, m] : out.ops) m = U[key.first].adjoint() * rep.op(key.first, key.second) * U[key.second];
    return out;
}

inline GraphRep random_basis_change(const StarGraph& G, const GraphRep& rep, std::mt19937_64& rng)
{
    std::vector<CMatrix> U;
    for (int g = 0; g < G.size(); ++g) U.push_back(random_unitary(rep.dims[g], rng));
    return change_basis(G, rep, U);
}

inline GraphRep direct_sum(const StarGraph& G, const GraphRep& a, const GraphRep& b)
{
    std::vector<int> dims(G.size());
    for (int g = 0; g < G.size(); ++g) dims[g] = a.dims[g] + b.dims[g];
    GraphRep r = zero_rep(G, dims);
    for (auto& [key, m] : r.ops) {
        auto [u, v] = key;
        m.topLeftCorner(a.dims[u], a.dims[v]) = a.op(u, v);
        m.bottomRightCorner(b.dims[u], b.dims[v]) = b.op(u, v);
    }
    if (a.character && a.character == b.character) r.character = a.character;
    return r;
}

/// Reflection functor with token p at the matrix level. At each touched vertex
/// g of parity p the incident maps form an isometry (up to sqrt f(g)) into the
/// sum of the neighbour spaces; the new space is its orthogonal complement.
inline GraphRep reflect_rep(const StarGraph& G, Parity token, const GraphRep& rep, const DimCharPair& pair)
{
    if (rep.dimension() != pair.d) throw std::invalid_argument("representation dimension does not match the pair");
    DimCharPair next = coxeter_char(G, token, pair); // checks the domain
    GraphRep out = rep;
    out.character = next.f;
    for (int g : touched_vertices(G, token, pair.d)) {
        const auto& nb = G.neighbors(g);
        int hat = 0;
        for (int h : nb) hat += rep.dims[h];
        int dg = rep.dims[g];
        int ng = hat - dg;
        if (ng != next.d[g]) throw std::logic_error("matrix functor and dimension reflection disagree");
        double s = std::sqrt(to_double(pair.f[g]));

        CMatrix W;
        if (dg == 0) W = CMatrix::Identity(hat, hat);
        else {
            CMatrix Gam(hat, dg);
            int off = 0;
            for (int h : nb) {
                Gam.middleRows(off, rep.dims[h]) = rep.op(h, g);
                off += rep.dims[h];
            }
            Eigen::HouseholderQR<CMatrix> qr(Gam);
            CMatrix Q = qr.householderQ() * CMatrix::Identity(hat, hat);
            W = Q.rightCols(ng);
        }
        out.dims[g] = ng;
        int off = 0;
        for (int h : nb) {
            CMatrix blk = s * W.middleRows(off, rep.dims[h]);
            out.ops[{h, g}] = blk;
            out.ops[{g, h}] = blk.adjoint();
            off += rep.dims[h];
        }
    }
    return out;
}

/// Irreducible locally scalar representation with dimension d and character f,
/// obtained by replaying the reduction of d in reverse from a simple one.
inline GraphRep build_graph_rep(const StarGraph& G, const IVec& d, const QVec& f)
{
    ReductionPath path = reduction_path(G, d);
    FeasibilityVerdict v = iterative_feasible(G, path, f);
    if (v.status != Status::feasible && v.status != Status::degenerate)
        throw std::domain_error("no representation with this dimension and character");
    for (auto& c : v.certificate)
        if (!c.satisfied) throw std::domain_error("no representation with this dimension and character: " + c.name);
    GraphRep rep = simple_rep(G, path.terminal);
    rep.character = v.trajectory.back().f;
    for (std::size_t i = path.tokens.size(); i-- > 0;) {
        rep = reflect_rep(G, path.tokens[i], rep, v.trajectory[i + 1]);
        if (rep.dimension() != v.trajectory[i].d || *rep.character != v.trajectory[i].f)
            throw std::logic_error("functor replay left the recorded trajectory");
    }
    return rep;
}

// ----------------------------------------------------------- canonical form

namespace detail {

/// Coefficients of the canonical chain on one branch: c[l][i] is the squared
/// weight of summand i on the edge between levels l and l+1 (l = -1 is the
/// root edge, c[-1][i] = alpha_i). Returned shifted by one.
inline std::vector<std::vector<double>> chain_coefficients(int m, const QVec& alpha, const QVec& level_chars)
{
    std::vector<std::vector<double>> c(m, std::vector<double>(m + 1, 0.0));
    std::vector<Rational> prev(m + 1, 0);
    for (int i = 1; i <= m; ++i) {
        prev[i] = alpha[i - 1];
        c[0][i] = to_double(prev[i]);
    }
    for (int l = 0; l + 1 < m; ++l) {
        auto [lo, hi] = level_interval(m, l + 1);
        std::vector<Rational> cur(m + 1, 0);
        for (int i = lo; i <= hi; ++i) {
            cur[i] = level_chars[l] - prev[i];
            if (cur[i] <= 0) throw std::domain_error("canonical chain has a non-positive weight");
            c[l + 1][i] = to_double(cur[i]);
        }
        prev = cur;
    }
    return c;
}

inline std::vector<int> block_offsets(const IVec& n, int lo, int hi)
{
    std::vector<int> off(n.size() + 2, 0);
    int o = 0;
    for (int i = lo; i <= hi; ++i) {
        off[i] = o;
        o += static_cast<int>(n[i - 1]);
    }
    return off;
}

inline CMatrix polar_factor(const CMatrix& X)
{
    Eigen::JacobiSVD<CMatrix> svd(X, Eigen::ComputeThinU | Eigen::ComputeThinV);
    return svd.matrixU() * svd.matrixV().adjoint();
}

} // namespace detail

/// Unitarily equivalent form whose non-root edges are the explicit diagonal
/// blocks sqrt(c_i) I with zero padding; the root edges keep the remaining data.
inline GraphRep canonicalize(const StarGraph& G, const GraphRep& rep, double tol = 1e-6)
{
    if (!rep.character) throw std::invalid_argument("canonical form needs the character");
    const QVec& f = *rep.character;
    IVec d = rep.dimension();
    if (!nondegenerate_dim(G, d)) throw std::domain_error("degenerate dimension: canonical form undefined");
    if (!nondegenerate_char(G, f)) throw std::domain_error("degenerate character: canonical form undefined");
    SpectralInstance inst = chi_from_char(G, f);
    GeneralizedDimension n = n_from_dim(G, d);
    int root = G.root();

    std::vector<CMatrix> U(G.size());
    U[root] = CMatrix::Identity(d[root], d[root]);
    std::vector<std::vector<std::vector<double>>> coeff(G.branches());

    for (int b = 0; b < G.branches(); ++b) {
        int m = G.branch_length(b);
        const QVec& alpha = inst.branches[b];
        QVec chars;
        for (int l = 0; l < m; ++l) chars.push_back(f[G.at_level(b, l)]);
        coeff[b] = detail::chain_coefficients(m, alpha, chars);
        const IVec& nb = n.n[b];

        int v0 = G.at_level(b, 0);
        CMatrix B = rep.op(v0, root) * rep.op(root, v0);
        Eigen::SelfAdjointEigenSolver<CMatrix> es(B);
        const auto& ev = es.eigenvalues();
        int dim0 = d[v0];
        CMatrix U0(dim0, dim0);
        double scale = std::max(1.0, to_double(alpha[0]));
        // eigenvalues come ascending; alpha_1 is the largest
        int pos = 0;
        for (int i = 1; i <= m; ++i) {
            for (int r = 0; r < nb[i - 1]; ++r, ++pos) {
                int src = dim0 - 1 - pos;
                if (std::abs(ev(src) - to_double(alpha[i - 1])) > tol * scale)
                    throw std::domain_error("root edge spectrum does not match the character on branch " + std::to_string(b + 1));
                U0.col(pos) = es.eigenvectors().col(src);
            }
        }
        if (pos != dim0) throw std::logic_error("block sizes do not fill the inner space");
        U[v0] = U0;

        for (int l = 0; l + 1 < m; ++l) {
            int va = G.at_level(b, l), vb = G.at_level(b, l + 1);
            auto [lo, hi] = detail::level_interval(m, l);
            auto [lo2, hi2] = detail::level_interval(m, l + 1);
            auto offa = detail::block_offsets(nb, lo, hi);
            CMatrix M = rep.op(vb, va) * U[va];
            CMatrix X(d[vb], d[vb]);
            int o = 0;
            for (int i = lo2; i <= hi2; ++i) {
                double c = coeff[b][l + 1][i];
                X.middleCols(o, nb[i - 1]) = M.middleCols(offa[i], nb[i - 1]) / std::sqrt(c);
                o += static_cast<int>(nb[i - 1]);
            }
            int dropped = lo2 != lo ? lo : hi;
            double leak = M.middleCols(offa[dropped], nb[dropped - 1]).norm();
            if (leak > tol * scale) throw std::domain_error("edge does not annihilate the dropped summand");
            U[vb] = detail::polar_factor(X);
        }
    }

    GraphRep out = change_basis(G, rep, U);
    for (int b = 0; b < G.branches(); ++b) {
        int m = G.branch_length(b);
        const IVec& nb = n.n[b];
        for (int l = 0; l + 1 < m; ++l) {
            int va = G.at_level(b, l), vb = G.at_level(b, l + 1);
            auto [lo, hi] = detail::level_interval(m, l);
            auto [lo2, hi2] = detail::level_interval(m, l + 1);
            auto offa = detail::block_offsets(nb, lo, hi);
            auto offb = detail::block_offsets(nb, lo2, hi2);
            CMatrix E = CMatrix::Zero(d[vb], d[va]);
            for (int i = lo2; i <= hi2; ++i)
                E.block(offb[i], offa[i], nb[i - 1], nb[i - 1]) =
                    std::sqrt(coeff[b][l + 1][i]) * CMatrix::Identity(nb[i - 1], nb[i - 1]);
            out.ops[{vb, va}] = E;
            out.ops[{va, vb}] = E.adjoint();
        }
    }
    return out;
}

// --------------------------------------------------------- algebra side

/// Orthoprojections P_k^(j) on C^{n0} with parameters inst.
struct AlgebraRep {
    int n0 = 0;
    std::vector<std::vector<CMatrix>> P;
    SpectralInstance inst;
    std::optional<GeneralizedDimension> dimension;

    /// A_j = sum_k alpha_k^(j) P_k^(j).
    CMatrix A(int j) const
    {
        CMatrix a = CMatrix::Zero(n0, n0);
        for (std::size_t k = 0; k < P.at(j).size(); ++k) a += to_double(inst.branches.at(j).at(k)) * P[j][k];
        return a;
    }

    /// sum_j A_j - gamma I.
    CMatrix residual() const
    {
        CMatrix r = -to_double(inst.gamma) * CMatrix::Identity(n0, n0);
        for (std::size_t j = 0; j < P.size(); ++j) r += A(static_cast<int>(j));
        return r;
    }
};

/// Reads the projections off the root edges of a canonical representation.
inline AlgebraRep to_algebra_rep(const StarGraph& G, const GraphRep& rep, double tol = 1e-8)
{
    if (!rep.character) throw std::invalid_argument("algebra representation needs the character");
    SpectralInstance inst = chi_from_char(G, *rep.character);
    GeneralizedDimension n = n_from_dim(G, rep.dimension());
    AlgebraRep a;
    a.n0 = rep.dims[G.root()];
    a.inst = inst;
    a.dimension = n;
    for (int b = 0; b < G.branches(); ++b) {
        int v0 = G.at_level(b, 0);
        const CMatrix& R = rep.op(G.root(), v0);
        std::vector<CMatrix> Pb;
        int off = 0;
        for (std::size_t i = 0; i < inst.branches[b].size(); ++i) {
            int ni = static_cast<int>(n.n[b][i]);
            CMatrix Gi = R.middleCols(off, ni) / std::sqrt(to_double(inst.branches[b][i]));
            double err = (Gi.adjoint() * Gi - CMatrix::Identity(ni, ni)).norm();
            if (err > tol)
                throw ConstructionFailure("root edge block " + std::to_string(i + 1) + " on branch " + std::to_string(b + 1) +
                                          " is not an isometry (error " + std::to_string(err) + ")");
            Pb.push_back(Gi * Gi.adjoint());
            off += ni;
        }
        a.P.push_back(std::move(Pb));
    }
    return a;
}

/// Orthonormal basis of the range of a projection.
inline CMatrix range_basis(const CMatrix& P)
{
    Eigen::SelfAdjointEigenSolver<CMatrix> es(P);
    int r = 0;
    for (int i = 0; i < P.rows(); ++i)
        if (es.eigenvalues()(i) > 0.5) ++r;
    return es.eigenvectors().rightCols(r);
}

/// The graph side of an algebra representation, already in canonical form.
inline GraphRep graph_rep_from_algebra(const StarGraph& G, const AlgebraRep& a)
{
    validate_instance(G, a.inst);
    QVec f = char_from_chi(G, a.inst);
    GeneralizedDimension n;
    n.n0 = a.n0;
    std::vector<std::vector<CMatrix>> gam(G.branches());
    for (int b = 0; b < G.branches(); ++b) {
        IVec nb;
        for (auto& P : a.P.at(b)) {
            gam[b].push_back(range_basis(P));
            nb.push_back(gam[b].back().cols());
        }
        n.n.push_back(nb);
    }
    IVec d = dim_from_n(G, n);
    GraphRep rep = zero_rep(G, std::vector<int>(d.begin(), d.end()));
    rep.character = f;
    for (int b = 0; b < G.branches(); ++b) {
        int m = G.branch_length(b);
        QVec chars;
        for (int l = 0; l < m; ++l) chars.push_back(f[G.at_level(b, l)]);
        auto coeff = detail::chain_coefficients(m, a.inst.branches[b], chars);
        const IVec& nb = n.n[b];
        int v0 = G.at_level(b, 0);
        CMatrix R(a.n0, d[v0]);
        int off = 0;
        for (int i = 1; i <= m; ++i) {
            R.middleCols(off, nb[i - 1]) = std::sqrt(coeff[0][i]) * gam[b][i - 1];
            off += static_cast<int>(nb[i - 1]);
        }
        rep.ops[{G.root(), v0}] = R;
        rep.ops[{v0, G.root()}] = R.adjoint();
        for (int l = 0; l + 1 < m; ++l) {
            int va = G.at_level(b, l), vb = G.at_level(b, l + 1);
            auto [lo, hi] = detail::level_interval(m, l);
            auto [lo2, hi2] = detail::level_interval(m, l + 1);
            auto offa = detail::block_offsets(nb, lo, hi);
            auto offb = detail::block_offsets(nb, lo2, hi2);
            CMatrix E = CMatrix::Zero(d[vb], d[va]);
            for (int i = lo2; i <= hi2; ++i)
                E.block(offb[i], offa[i], nb[i - 1], nb[i - 1]) =
                    std::sqrt(coeff[l + 1][i]) * CMatrix::Identity(nb[i - 1], nb[i - 1]);
            rep.ops[{vb, va}] = E;
            rep.ops[{va, vb}] = E.adjoint();
        }
    }
    return rep;
}

// -------------------------------------------------- hyperplane constructor

struct HyperplaneOptions {
    std::uint64_t seed = 0;
    int restarts = 32;
    int max_iterations = 10000;
    double tolerance = 1e-8;
};

struct HyperplaneResult {
    AlgebraRep rep;
    double residual = 0;
    int restart = -1;
    int iterations = 0;
    std::uint64_t seed = 0;
};

/// Three 3x3 Hermitian matrices with spectra {alpha1, alpha2, 0} and sum
/// gamma I, by alternating exact updates of one summand at a time.
inline HyperplaneResult build_hyperplane_rep(const SpectralInstance& inst, const HyperplaneOptions& opt = {})
{
    FeasibilityVerdict h = horn_check_e6(inst);
    if (!h.feasible()) throw std::domain_error(std::string("Horn criterion not satisfied (") + to_string(h.status) + ")");
    const int n = 3;
    double gamma = to_double(inst.gamma);
    std::vector<Eigen::Vector3d> spec(3);
    for (int j = 0; j < 3; ++j) spec[j] = Eigen::Vector3d(0.0, to_double(inst.branches[j][1]), to_double(inst.branches[j][0]));
    double scale = std::max(1.0, std::abs(gamma));

    double best = INFINITY;
    for (int r = 0; r < opt.restarts; ++r) {
        std::seed_seq seq{static_cast<std::uint32_t>(opt.seed), static_cast<std::uint32_t>(opt.seed >> 32),
                          static_cast<std::uint32_t>(r)};
        std::mt19937_64 rng(seq);
        std::vector<CMatrix> V(3), A(3);
        for (int j = 0; j < 3; ++j) {
            V[j] = random_unitary(n, rng);
            A[j] = V[j] * spec[j].cast<Complex>().asDiagonal() * V[j].adjoint();
        }
        double res = INFINITY, prev = INFINITY;
        int it = 0, stall = 0;
        for (; it < opt.max_iterations; ++it) {
            for (int j = 0; j < 3; ++j) {
                CMatrix R = gamma * CMatrix::Identity(n, n);
                for (int i = 0; i < 3; ++i)
                    if (i != j) R -= A[i];
                Eigen::SelfAdjointEigenSolver<CMatrix> es(R);
                V[j] = es.eigenvectors();
                A[j] = V[j] * spec[j].cast<Complex>().asDiagonal() * V[j].adjoint();
            }
            res = (A[0] + A[1] + A[2] - gamma * CMatrix::Identity(n, n)).norm();
            if (res < 1e-14 * scale) break;
            if (prev - res < 1e-16 * scale) {
                if (++stall > 50) break;
            } else stall = 0;
            prev = res;
        }
        best = std::min(best, res);
        if (res < opt.tolerance) {
            HyperplaneResult out;
            out.rep.n0 = n;
            out.rep.inst = inst;
            out.rep.dimension = delta_dimension_e6();
            for (int j = 0; j < 3; ++j) {
                CMatrix v1 = V[j].col(2), v2 = V[j].col(1);
                out.rep.P.push_back({v1 * v1.adjoint(), v2 * v2.adjoint()});
            }
            out.residual = out.rep.residual().norm();
            out.restart = r;
            out.iterations = it + 1;
            out.seed = opt.seed;
            return out;
        }
    }
    throw ConstructionFailure("construction failed after " + std::to_string(opt.restarts) +
                              " restarts (best residual " + std::to_string(best) +
                              "); existence is asserted by the Horn criterion");
}

} // namespace starspec
