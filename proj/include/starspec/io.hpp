#pragma once

#include "feasibility.hpp"
#include "rep.hpp"
#include "roots.hpp"
#include "verify.hpp"

#include <json.hpp>

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

namespace starspec {

using Json = nlohmann::ordered_json;

/// Malformed input: bad JSON, missing fields, non-rational strings.
class ParseError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

inline Json rational_json(const Rational& r) { return to_string(r); }

/// Strings "p", "p/q", "1.25" or JSON integers; floats are refused.
inline Rational rational_from_json(const Json& j)
{
    if (j.is_string()) {
        try {
            return parse_rational(j.get<std::string>());
        } catch (const std::invalid_argument& e) {
            throw ParseError(e.what());
        }
    }
    if (j.is_number_integer()) return Rational(j.get<long long>());
    throw ParseError("rational expected as a string \"p/q\" or an integer, got " + j.dump());
}

inline Json qvec_json(const QVec& v)
{
    Json a = Json::array();
    for (auto& x : v) a.push_back(rational_json(x));
    return a;
}

inline QVec qvec_from_json(const Json& j)
{
    if (!j.is_array()) throw ParseError("array of rationals expected");
    QVec v;
    for (auto& x : j) v.push_back(rational_from_json(x));
    return v;
}

inline Json ivec_json(const IVec& v) { return Json(v); }

inline IVec ivec_from_json(const Json& j)
{
    if (!j.is_array()) throw ParseError("array of integers expected");
    IVec v;
    for (auto& x : j) {
        if (!x.is_number_integer()) throw ParseError("integer expected, got " + x.dump());
        v.push_back(x.get<long long>());
    }
    return v;
}

inline int vertex_from_name(const StarGraph& G, const std::string& s)
{
    if (s.size() < 2 || s[0] != 'g') throw ParseError("vertex name expected, got \"" + s + "\"");
    int i;
    try {
        i = std::stoi(s.substr(1));
    } catch (...) {
        throw ParseError("vertex name expected, got \"" + s + "\"");
    }
    if (i == 0) return G.root();
    if (i < 1 || i > G.root()) throw ParseError("no vertex " + s);
    return i - 1;
}

// ------------------------------------------------------------------ instance

struct InstanceFile {
    SpectralInstance instance;
    std::optional<long long> scan_bound;
    std::optional<std::uint64_t> seed;
    Tolerances tolerances;
};

inline Json instance_json(const SpectralInstance& inst)
{
    Json b = Json::array();
    for (auto& br : inst.branches) b.push_back(qvec_json(br));
    Json j;
    j["branches"] = b;
    j["gamma"] = rational_json(inst.gamma);
    return j;
}

inline Json instance_file_json(const InstanceFile& f)
{
    Json j = instance_json(f.instance);
    if (f.scan_bound) j["scan_bound"] = *f.scan_bound;
    if (f.seed) j["seed"] = *f.seed;
    return j;
}

inline InstanceFile instance_from_json(const Json& j)
{
    if (!j.is_object()) throw ParseError("instance must be a JSON object");
    if (!j.contains("branches") || !j["branches"].is_array()) throw ParseError("instance needs \"branches\": an array of spectra");
    if (!j.contains("gamma")) throw ParseError("instance needs \"gamma\"");
    InstanceFile f;
    for (auto& b : j["branches"]) {
        QVec a = qvec_from_json(b);
        if (a.empty()) throw ParseError("every branch needs at least one spectrum point");
        f.instance.branches.push_back(std::move(a));
    }
    if (f.instance.branches.empty()) throw ParseError("instance has no branches");
    f.instance.gamma = rational_from_json(j["gamma"]);
    if (j.contains("scan_bound")) {
        if (!j["scan_bound"].is_number_integer()) throw ParseError("scan_bound must be an integer");
        f.scan_bound = j["scan_bound"].get<long long>();
    }
    if (j.contains("seed")) {
        if (!j["seed"].is_number_unsigned()) throw ParseError("seed must be a nonnegative integer");
        f.seed = j["seed"].get<std::uint64_t>();
    }
    if (j.contains("tolerances")) {
        const Json& t = j["tolerances"];
        if (!t.is_object()) throw ParseError("tolerances must be an object");
        auto num = [&](const char* k, double& out) {
            if (!t.contains(k)) return;
            if (!t[k].is_number() || t[k].get<double>() <= 0) throw ParseError(std::string("tolerance ") + k + " must be positive");
            out = t[k].get<double>();
        };
        num("verify", f.tolerances.verify);
        num("spectrum", f.tolerances.spectrum);
        num("rank", f.tolerances.rank);
    }
    return f;
}

inline Json parse_json_text(const std::string& text, const std::string& where)
{
    try {
        return Json::parse(text);
    } catch (const Json::parse_error& e) {
        throw ParseError(where + ": " + e.what());
    }
}

// ----------------------------------------------------------------- dimensions

inline Json dimension_json(const GeneralizedDimension& n)
{
    Json j;
    j["n"] = n.n;
    j["n0"] = n.n0;
    return j;
}

/// Either {"n": [[...]...], "n0": k} or {"d": [...]} in vertex order; returns d.
inline IVec graph_dimension_from_json(const StarGraph& G, const Json& j)
{
    if (!j.is_object()) throw ParseError("dimension must be a JSON object");
    if (j.contains("d")) {
        IVec d = ivec_from_json(j["d"]);
        if (static_cast<int>(d.size()) != G.size()) throw ParseError("dimension vector has the wrong length");
        return d;
    }
    if (!j.contains("n") || !j.contains("n0")) throw ParseError("dimension needs \"n\" and \"n0\" or \"d\"");
    GeneralizedDimension n;
    for (auto& b : j["n"]) n.n.push_back(ivec_from_json(b));
    if (!j["n0"].is_number_integer()) throw ParseError("n0 must be an integer");
    n.n0 = j["n0"].get<long long>();
    try {
        return dim_from_n(G, n);
    } catch (const std::invalid_argument& e) {
        throw ParseError(e.what());
    }
}

// ------------------------------------------------------------------- verdicts

inline Json certificate_json(const std::vector<CertificateEntry>& c)
{
    Json a = Json::array();
    for (auto& e : c) a.push_back(Json{{"name", e.name}, {"value", rational_json(e.value)}, {"satisfied", e.satisfied}});
    return a;
}

inline Json verdict_json(const FeasibilityVerdict& v, bool with_trajectory = false)
{
    Json j;
    j["status"] = to_string(v.status);
    j["branch"] = v.branch.label();
    j["witness_dimension"] = v.witness_dimension ? dimension_json(*v.witness_dimension) : Json(nullptr);
    j["witness_graph_dimension"] = v.witness_graph_dimension ? ivec_json(*v.witness_graph_dimension) : Json(nullptr);
    j["certificate"] = certificate_json(v.certificate);
    Json s = Json::array();
    for (Parity p : v.schedule) s.push_back(to_string(p));
    j["schedule"] = s;
    if (with_trajectory) {
        Json t = Json::array();
        for (auto& p : v.trajectory) t.push_back(Json{{"d", ivec_json(p.d)}, {"f", qvec_json(p.f)}});
        j["trajectory"] = t;
    }
    j["notes"] = v.notes;
    j["scan_bound"] = v.scan_bound;
    j["candidates_scanned"] = v.candidates_scanned;
    return j;
}

inline Json spectral_verdict_json(const SpectralVerdict& v)
{
    Json j;
    j["feasible"] = v.feasible;
    Json used = Json::array();
    for (auto& u : v.used) used.push_back(qvec_json(u));
    j["used"] = used;
    j["sub_instance"] = v.sub_lengths.empty() && v.sub_instance.branches.empty() ? Json(nullptr) : instance_json(v.sub_instance);
    j["sub_verdict"] = v.sub_verdict ? verdict_json(*v.sub_verdict) : Json(nullptr);
    j["subsets_tried"] = v.subsets_tried;
    j["notes"] = v.notes;
    return j;
}

// ------------------------------------------------------------------- matrices

/// Row-major rows of [re, im] pairs.
inline Json matrix_json(const CMatrix& m)
{
    Json rows = Json::array();
    for (int i = 0; i < m.rows(); ++i) {
        Json row = Json::array();
        for (int k = 0; k < m.cols(); ++k) row.push_back(Json::array({m(i, k).real(), m(i, k).imag()}));
        rows.push_back(row);
    }
    return rows;
}

inline CMatrix matrix_from_json(const Json& j, int rows, int cols)
{
    if (!j.is_array() || static_cast<int>(j.size()) != rows) throw ParseError("matrix has the wrong number of rows");
    CMatrix m(rows, cols);
    for (int i = 0; i < rows; ++i) {
        const Json& r = j[i];
        if (!r.is_array() || static_cast<int>(r.size()) != cols) throw ParseError("matrix row has the wrong length");
        for (int k = 0; k < cols; ++k) {
            const Json& z = r[k];
            if (!z.is_array() || z.size() != 2 || !z[0].is_number() || !z[1].is_number())
                throw ParseError("matrix entries must be [re, im] pairs");
            m(i, k) = Complex(z[0].get<double>(), z[1].get<double>());
        }
    }
    return m;
}

// ------------------------------------------------------------ representations

struct RepMetadata {
    std::optional<double> residual;
    std::optional<std::uint64_t> seed;
    std::optional<int> restart;
    std::optional<int> iterations;
    std::string method;
};

inline Json graph_rep_json(const StarGraph& G, const GraphRep& rep, const RepMetadata& meta = {})
{
    Json j;
    j["kind"] = "graph";
    j["branch_lengths"] = G.branch_lengths();
    j["dims"] = rep.dims;
    j["character"] = rep.character ? qvec_json(*rep.character) : Json(nullptr);
    Json e = Json::array();
    for (auto& [key, m] : rep.ops)
        e.push_back(Json{{"to", G.vertex_name(key.first)}, {"from", G.vertex_name(key.second)}, {"matrix", matrix_json(m)}});
    j["edges"] = e;
    Json md;
    if (!meta.method.empty()) md["method"] = meta.method;
    if (meta.residual) md["residual"] = *meta.residual;
    if (meta.seed) md["seed"] = *meta.seed;
    j["metadata"] = md.is_null() ? Json::object() : md;
    return j;
}

inline Json algebra_rep_json(const AlgebraRep& a, const RepMetadata& meta = {})
{
    Json j;
    j["kind"] = "algebra";
    j["n0"] = a.n0;
    j["instance"] = instance_json(a.inst);
    j["dimension"] = a.dimension ? dimension_json(*a.dimension) : Json(nullptr);
    Json P = Json::array();
    for (auto& b : a.P) {
        Json pb = Json::array();
        for (auto& m : b) pb.push_back(matrix_json(m));
        P.push_back(pb);
    }
    j["projections"] = P;
    Json md = Json::object();
    if (!meta.method.empty()) md["method"] = meta.method;
    if (meta.residual) md["residual"] = *meta.residual;
    if (meta.seed) md["seed"] = *meta.seed;
    if (meta.restart) md["restart"] = *meta.restart;
    if (meta.iterations) md["iterations"] = *meta.iterations;
    j["metadata"] = md;
    return j;
}

inline GraphRep graph_rep_from_json(const StarGraph& G, const Json& j)
{
    if (!j.contains("dims") || !j.contains("edges")) throw ParseError("graph representation needs \"dims\" and \"edges\"");
    std::vector<int> dims;
    for (long long x : ivec_from_json(j["dims"])) dims.push_back(static_cast<int>(x));
    if (static_cast<int>(dims.size()) != G.size()) throw ParseError("dims has the wrong length for the graph");
    for (int x : dims)
        if (x < 0) throw ParseError("negative space dimension");
    GraphRep rep;
    rep.dims = dims;
    if (j.contains("character") && !j["character"].is_null()) rep.character = qvec_from_json(j["character"]);
    for (auto& e : j["edges"]) {
        if (!e.contains("to") || !e.contains("from") || !e.contains("matrix")) throw ParseError("edge needs to, from and matrix");
        int to = vertex_from_name(G, e["to"].get<std::string>());
        int from = vertex_from_name(G, e["from"].get<std::string>());
        if (!G.adjacent(to, from)) throw ParseError("no edge between " + G.vertex_name(from) + " and " + G.vertex_name(to));
        rep.ops[{to, from}] = matrix_from_json(e["matrix"], dims[to], dims[from]);
    }
    return rep;
}

inline AlgebraRep algebra_rep_from_json(const Json& j)
{
    if (!j.contains("n0") || !j.contains("instance") || !j.contains("projections"))
        throw ParseError("algebra representation needs n0, instance and projections");
    AlgebraRep a;
    if (!j["n0"].is_number_integer() || j["n0"].get<long long>() < 0) throw ParseError("n0 must be a nonnegative integer");
    a.n0 = j["n0"].get<int>();
    a.inst = instance_from_json(j["instance"]).instance;
    if (j.contains("dimension") && !j["dimension"].is_null()) {
        GeneralizedDimension n;
        for (auto& b : j["dimension"]["n"]) n.n.push_back(ivec_from_json(b));
        n.n0 = j["dimension"]["n0"].get<long long>();
        a.dimension = n;
    }
    for (auto& b : j["projections"]) {
        std::vector<CMatrix> pb;
        for (auto& m : b) pb.push_back(matrix_from_json(m, a.n0, a.n0));
        a.P.push_back(std::move(pb));
    }
    return a;
}

using AnyRep = std::variant<GraphRep, AlgebraRep>;

/// Graph representations carry their branch lengths; the graph is rebuilt from them.
inline std::pair<std::optional<StarGraph>, AnyRep> rep_from_json(const Json& j)
{
    if (!j.is_object() || !j.contains("kind")) throw ParseError("representation needs \"kind\"");
    std::string kind = j["kind"].get<std::string>();
    if (kind == "algebra") return {std::nullopt, algebra_rep_from_json(j)};
    if (kind == "graph") {
        if (!j.contains("branch_lengths")) throw ParseError("graph representation needs branch_lengths");
        std::vector<int> m = j["branch_lengths"].get<std::vector<int>>();
        StarGraph G(m);
        return {G, graph_rep_from_json(G, j)};
    }
    throw ParseError("unknown representation kind \"" + kind + "\"");
}

// -------------------------------------------------------------------- reports

inline Json report_json(const VerificationReport& r)
{
    Json j;
    j["overall"] = r.overall();
    Json c = Json::array();
    for (auto& ch : r.checks) {
        Json e{{"name", ch.name}, {"passed", ch.passed}, {"residual", ch.residual}};
        if (!ch.detail.empty()) e["detail"] = ch.detail;
        c.push_back(e);
    }
    j["checks"] = c;
    return j;
}

inline Json classification_json(const GraphClass& cls)
{
    Json j;
    j["class"] = to_string(cls.kind);
    j["name"] = cls.name.empty() ? Json(nullptr) : Json(cls.name);
    j["delta"] = cls.kind == GraphKind::ExtendedDynkin ? ivec_json(cls.delta) : Json(nullptr);
    if (cls.kind == GraphKind::Wild) j["witness"] = ivec_json(cls.witness);
    return j;
}

inline Json series_json(const CSeries& cs)
{
    Json a = Json::array();
    for (auto& b : cs.bases()) a.push_back(ivec_json(b));
    return a;
}

} // namespace starspec
