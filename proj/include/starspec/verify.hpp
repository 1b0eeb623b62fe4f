#pragma once

#include "rep.hpp"
#include "transfer.hpp"

#include <Eigen/SVD>

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

namespace starspec {

struct Tolerances {
    double verify = 1e-9;   // adjointness, idempotency, scalar vertex operators, weighted sum
    double spectrum = 1e-8; // eigenvalue to allowed point
    double rank = 1e-8;     // singular values below rank * sigma_max count as zero
};

struct Check {
    std::string name;
    bool passed = false;
    double residual = 0;
    std::string detail;
};

struct VerificationReport {
    std::vector<Check> checks;

    bool overall() const
    {
        return std::all_of(checks.begin(), checks.end(), [](const Check& c) { return c.passed; });
    }

    const Check* find(const std::string& name) const
    {
        for (auto& c : checks)
            if (c.name == name) return &c;
        return nullptr;
    }

    std::vector<std::string> failures() const
    {
        std::vector<std::string> out;
        for (auto& c : checks)
            if (!c.passed) out.push_back(c.name);
        return out;
    }

    void add(std::string name, bool ok, double residual = 0, std::string detail = {})
    {
        checks.push_back(Check{std::move(name), ok, residual, std::move(detail)});
    }
};

namespace detail {

/// Nullity of M with rank decided by singular values above tol * sigma_max.
inline int nullity(const CMatrix& M, double tol)
{
    if (M.cols() == 0) return 0;
    if (M.rows() == 0) return static_cast<int>(M.cols());
    Eigen::BDCSVD<CMatrix> svd(M);
    const auto& s = svd.singularValues();
    double smax = s.size() ? s(0) : 0.0;
    int rank = 0;
    if (smax > 0)
        for (int i = 0; i < s.size(); ++i)
            if (s(i) > tol * smax) ++rank;
    return static_cast<int>(M.cols()) - rank;
}

inline CMatrix kron(const CMatrix& A, const CMatrix& B)
{
    CMatrix K(A.rows() * B.rows(), A.cols() * B.cols());
    for (int i = 0; i < A.rows(); ++i)
        for (int j = 0; j < A.cols(); ++j) K.block(i * B.rows(), j * B.cols(), B.rows(), B.cols()) = A(i, j) * B;
    return K;
}

/// Number of eigenvalues of a Hermitian projection above 1/2.
inline int projection_rank(const CMatrix& P)
{
    if (P.rows() == 0) return 0;
    Eigen::SelfAdjointEigenSolver<CMatrix> es(P, Eigen::EigenvaluesOnly);
    int r = 0;
    for (int i = 0; i < P.rows(); ++i)
        if (es.eigenvalues()(i) > 0.5) ++r;
    return r;
}

} // namespace detail

/// Dimension of the space of families {C_g} with C_u Gamma_{u,v} = Gamma_{u,v} C_v
/// on every directed edge.
inline int commutant_dimension(const StarGraph& G, const GraphRep& rep, double tol = 1e-8)
{
    std::vector<int> off(G.size() + 1, 0);
    for (int g = 0; g < G.size(); ++g) off[g + 1] = off[g] + rep.dims[g] * rep.dims[g];
    int unknowns = off[G.size()];
    int rows = 0;
    for (auto& [key, m] : rep.ops) rows += static_cast<int>(m.rows() * m.cols());
    CMatrix S = CMatrix::Zero(rows, unknowns);
    int r = 0;
    for (auto& [key, Gam] : rep.ops) {
        auto [u, v] = key;
        int du = rep.dims[u], dv = rep.dims[v];
        int n = du * dv;
        if (n == 0) continue;
        S.block(r, off[u], n, du * du) += detail::kron(Gam.transpose(), CMatrix::Identity(du, du));
        S.block(r, off[v], n, dv * dv) -= detail::kron(CMatrix::Identity(dv, dv), Gam);
        r += n;
    }
    return detail::nullity(S.topRows(r), tol);
}

/// Dimension of the commutant of all the projections.
inline int commutant_dimension(const AlgebraRep& a, double tol = 1e-8)
{
    int n = a.n0;
    std::size_t count = 0;
    for (auto& b : a.P) count += b.size();
    CMatrix S(static_cast<Eigen::Index>(count) * n * n, n * n);
    CMatrix I = CMatrix::Identity(n, n);
    int r = 0;
    for (auto& b : a.P)
        for (auto& P : b) {
            S.middleRows(r, n * n) = detail::kron(P.transpose(), I) - detail::kron(I, P);
            r += n * n;
        }
    return detail::nullity(S, tol);
}

/// Shapes, adjoint pairs, dimension d and A_g = f(g) I on every nonzero space.
inline VerificationReport verify_graph_rep(const StarGraph& G, const GraphRep& rep, const IVec& d, const QVec& f,
                                           const Tolerances& tol = {}, bool irreducibility = true)
{
    VerificationReport rpt;
    bool sized = static_cast<int>(rep.dims.size()) == G.size();
    rpt.add("dimension", sized && rep.dimension() == d, 0, sized ? "" : "wrong number of vertices");
    if (!sized) return rpt;

    bool shapes = true;
    std::string bad;
    for (auto [u, v] : G.edges())
        for (auto [a, b] : {std::pair{u, v}, std::pair{v, u}}) {
            auto it = rep.ops.find({a, b});
            if (it == rep.ops.end() || it->second.rows() != rep.dims[a] || it->second.cols() != rep.dims[b]) {
                shapes = false;
                bad = G.vertex_name(b) + " -> " + G.vertex_name(a);
            }
        }
    rpt.add("shapes", shapes, 0, bad);
    if (!shapes) return rpt;

    double adj = 0;
    for (auto [u, v] : G.edges()) adj = std::max(adj, (rep.op(u, v) - rep.op(v, u).adjoint()).norm());
    rpt.add("adjointness", adj <= tol.verify, adj);

    if (rep.character) {
        bool same = *rep.character == f;
        rpt.add("character", same, 0, same ? "" : "recorded character differs");
    }

    for (int g = 0; g < G.size(); ++g) {
        if (rep.dims[g] == 0) continue;
        CMatrix A = vertex_operator(G, rep, g);
        double res = (A - to_double(f[g]) * CMatrix::Identity(rep.dims[g], rep.dims[g])).norm();
        rpt.add("locally_scalar:" + G.vertex_name(g), res <= tol.verify, res);
    }
    if (irreducibility) {
        int c = commutant_dimension(G, rep, tol.rank);
        rpt.add("irreducible", c == 1, c, "commutant dimension " + std::to_string(c));
    }
    return rpt;
}

/// Orthoprojection relations, non-degeneracy, the weighted sum, spectra of
/// each A_j and the trace identity on ranks.
inline VerificationReport verify_algebra_rep(const AlgebraRep& a, const Tolerances& tol = {}, bool irreducibility = true)
{
    VerificationReport rpt;
    StarGraph G(a.inst.lengths());
    std::string why = instance_problem(G, a.inst);
    rpt.add("instance", why.empty(), 0, why);

    bool shape = a.P.size() == a.inst.branches.size();
    for (std::size_t j = 0; shape && j < a.P.size(); ++j) {
        if (a.P[j].size() != a.inst.branches[j].size()) shape = false;
        for (auto& P : a.P[j])
            if (P.rows() != a.n0 || P.cols() != a.n0) shape = false;
    }
    rpt.add("shapes", shape);
    if (!shape || !why.empty()) return rpt;

    int n = a.n0;
    double herm = 0, idem = 0, orth = 0;
    GeneralizedDimension ranks;
    ranks.n0 = n;
    for (auto& b : a.P) {
        IVec rb;
        for (std::size_t k = 0; k < b.size(); ++k) {
            herm = std::max(herm, (b[k] - b[k].adjoint()).norm());
            idem = std::max(idem, (b[k] * b[k] - b[k]).norm());
            for (std::size_t l = k + 1; l < b.size(); ++l) orth = std::max(orth, (b[k] * b[l]).norm());
            rb.push_back(detail::projection_rank(b[k]));
        }
        ranks.n.push_back(rb);
    }
    rpt.add("hermitian", herm <= tol.verify, herm);
    rpt.add("idempotency", idem <= tol.verify, idem);
    rpt.add("orthogonality", orth <= tol.verify, orth);
    rpt.add("nondegenerate", ranks.nondegenerate(), 0, "ranks " + [&] {
        std::string s;
        for (auto x : ranks.flat()) s += (s.empty() ? "" : ",") + std::to_string(x);
        return s;
    }());
    if (a.dimension) {
        bool same = *a.dimension == ranks;
        rpt.add("dimension", same, 0, same ? "" : "ranks differ from the recorded dimension");
    }

    double ws = a.residual().norm();
    rpt.add("weighted_sum", ws <= tol.verify, ws);

    // each eigenvalue of A_j near 0 or some alpha_k, with multiplicity rank P_k
    double worst = 0;
    bool mult_ok = true;
    for (std::size_t j = 0; j < a.P.size(); ++j) {
        Eigen::SelfAdjointEigenSolver<CMatrix> es(a.A(static_cast<int>(j)), Eigen::EigenvaluesOnly);
        const QVec& al = a.inst.branches[j];
        std::vector<long long> count(al.size() + 1, 0);
        for (int i = 0; i < n; ++i) {
            double lam = es.eigenvalues()(i);
            double best = std::abs(lam);
            std::size_t at = al.size();
            for (std::size_t k = 0; k < al.size(); ++k) {
                double dist = std::abs(lam - to_double(al[k]));
                if (dist < best) {
                    best = dist;
                    at = k;
                }
            }
            worst = std::max(worst, best);
            ++count[at];
        }
        for (std::size_t k = 0; k < al.size(); ++k)
            if (count[k] != ranks.n[j][k]) mult_ok = false;
    }
    rpt.add("spectra", worst <= tol.spectrum && mult_ok, worst, mult_ok ? "" : "eigenvalue multiplicities differ from ranks");

    Rational defect = trace_defect(a.inst, ranks);
    rpt.add("trace_identity", defect == 0, to_double(defect), "defect " + to_string(defect));

    if (irreducibility) {
        int c = commutant_dimension(a, tol.rank);
        rpt.add("irreducible", c == 1, c, "commutant dimension " + std::to_string(c));
    }
    return rpt;
}

} // namespace starspec
