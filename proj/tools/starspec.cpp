// starspec: command line front end for the star-graph spectral toolkit.

#include "starspec/starspec.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

using namespace starspec;
namespace fs = std::filesystem;

namespace {

enum Exit : int { ok = 0, infeasible = 1, undecided = 2, construction_failed = 3, usage = 64, data = 65, io = 66 };

struct CliError : std::runtime_error {
    int code;
    std::string kind;
    CliError(int c, std::string k, const std::string& msg) : std::runtime_error(msg), code(c), kind(std::move(k)) {}
};

void emit(const Json& j, bool pretty) { std::cout << (pretty ? j.dump(2) : j.dump()) << "\n"; }

std::string read_file(const std::string& path)
{
    std::ifstream in(path);
    if (!in) throw CliError(io, "io_error", "cannot read " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

Json read_json(const std::string& path) { return parse_json_text(read_file(path), path); }

void write_json(const std::string& path, const Json& j)
{
    std::ofstream out(path);
    if (!out) throw CliError(io, "io_error", "cannot write " + path);
    out << j.dump(2) << "\n";
}

StarGraph graph_from(const std::vector<int>& branches)
{
    try {
        return StarGraph(branches);
    } catch (const std::invalid_argument& e) {
        throw ParseError(e.what());
    }
}

IVec parse_ivec(const std::string& s)
{
    IVec v;
    std::stringstream ss(s);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
        try {
            std::size_t pos;
            v.push_back(std::stoll(tok, &pos));
            if (pos != tok.size()) throw std::invalid_argument(tok);
        } catch (...) {
            throw ParseError("integer list expected, got \"" + s + "\"");
        }
    }
    return v;
}

QVec parse_qvec(const std::string& s)
{
    QVec v;
    std::stringstream ss(s);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
        try {
            v.push_back(parse_rational(tok));
        } catch (const std::invalid_argument& e) {
            throw ParseError(e.what());
        }
    }
    return v;
}

Json qmatrix_json(const QMatrix& m)
{
    Json rows = Json::array();
    for (int i = 0; i < m.rows(); ++i) rows.push_back(qvec_json(m.row(i)));
    return rows;
}

int verdict_exit(Status s)
{
    switch (s) {
    case Status::feasible: return ok;
    case Status::infeasible: return infeasible;
    default: return undecided;
    }
}

Json instance_schema()
{
    return Json::parse(R"({
  "$schema": "https://json-schema.org/draft/2020-12/schema",
  "title": "starspec instance",
  "type": "object",
  "required": ["branches", "gamma"],
  "properties": {
    "branches": {
      "type": "array", "minItems": 1,
      "items": {"type": "array", "minItems": 1, "items": {"$ref": "#/$defs/rational"}},
      "description": "per branch the nonzero spectrum points, strictly decreasing"
    },
    "gamma": {"$ref": "#/$defs/rational"},
    "scan_bound": {"type": "integer", "minimum": 0},
    "seed": {"type": "integer", "minimum": 0},
    "tolerances": {
      "type": "object",
      "properties": {
        "verify": {"type": "number", "exclusiveMinimum": 0},
        "spectrum": {"type": "number", "exclusiveMinimum": 0},
        "rank": {"type": "number", "exclusiveMinimum": 0}
      }
    }
  },
  "$defs": {
    "rational": {
      "oneOf": [
        {"type": "string", "pattern": "^[+-]?([0-9]+(/[0-9]+)?|[0-9]*\\.[0-9]+)$"},
        {"type": "integer"}
      ]
    }
  }
})");
}

// ------------------------------------------------------------- subcommands

int cmd_classify(const std::vector<int>& branches, bool pretty)
{
    emit(classification_json(classify(graph_from(branches))), pretty);
    return ok;
}

int cmd_roots(const std::vector<int>& branches, const std::string& series, const std::string& extending, long long bound,
              bool pretty)
{
    StarGraph G = graph_from(branches);
    GraphClass cls = classify(G);
    if (bound >= 0 || cls.kind == GraphKind::Dynkin) {
        if (cls.kind == GraphKind::Wild) throw std::domain_error("root listing needs a Dynkin or extended Dynkin graph");
        if (cls.kind == GraphKind::ExtendedDynkin && bound < 0) throw std::domain_error("extended Dynkin graphs need --positive-bound");
        auto roots = positive_real_roots(G, bound);
        Json a = Json::array();
        for (auto& r : roots) a.push_back(ivec_json(r));
        emit(Json{{"graph", cls.name}, {"count", roots.size()}, {"positive_real_roots", a}}, pretty);
        return ok;
    }
    cls = require_extended(G);
    int e = extending.empty() ? default_extending_vertex(cls) : vertex_from_name(G, extending);
    if (series.empty()) {
        auto roots = fundamental_roots(G, cls, e);
        Json a = Json::array();
        for (auto& r : roots) a.push_back(ivec_json(r.vec));
        emit(Json{{"graph", cls.name}, {"extending", G.vertex_name(e)}, {"count", roots.size()}, {"delta_f", a}}, pretty);
        return ok;
    }
    if (series == "all") {
        Json parts = Json::array();
        for (auto& cs : c_series_partition(G, cls, e))
            parts.push_back(Json{{"size", cs.size()}, {"regular", is_regular(G, cs)}, {"bases", series_json(cs)}});
        emit(Json{{"graph", cls.name}, {"extending", G.vertex_name(e)}, {"count", parts.size()}, {"c_series", parts}}, pretty);
        return ok;
    }
    if (cls.name != "E6~") throw ParseError("named series K1, K2, K3 exist for E6~ only");
    int which = series == "K1" ? 1 : series == "K2" ? 2 : series == "K3" ? 3 : 0;
    if (!which) throw ParseError("--series must be K1, K2, K3 or all");
    CSeries cs = k_series_e6(which);
    emit(Json{{"series", series}, {"count", cs.size()}, {"bases", series_json(cs)}}, pretty);
    return ok;
}

int cmd_coxeter(const std::vector<int>& branches, int k_max, bool table, const std::string& word, const std::string& dim,
                const std::string& chr)
{
    StarGraph G = graph_from(branches);
    if (!word.empty()) {
        CoxeterWord w;
        std::stringstream ss(word);
        std::string tok;
        while (std::getline(ss, tok, ',')) {
            try {
                w.tokens.push_back(parse_parity(tok));
            } catch (const std::invalid_argument& e) {
                throw ParseError(e.what());
            }
        }
        DimCharPair p{parse_ivec(dim), parse_qvec(chr)};
        if (static_cast<int>(p.d.size()) != G.size() || static_cast<int>(p.f.size()) != G.size())
            throw ParseError("--dim and --char need one entry per vertex");
        DimCharPair cur = p;
        emit(Json{{"step", 0}, {"d", ivec_json(cur.d)}, {"f", qvec_json(cur.f)}}, false);
        for (std::size_t i = 0; i < w.tokens.size(); ++i) {
            cur = coxeter_char(G, w.tokens[i], cur);
            emit(Json{{"step", i + 1}, {"token", to_string(w.tokens[i])}, {"d", ivec_json(cur.d)}, {"f", qvec_json(cur.f)}}, false);
        }
        return ok;
    }
    if (table && classify(G).name != "E6~") throw ParseError("--table is available for E6~ only");
    QMatrix C = coxeter_matrix(G);
    QMatrix P = QMatrix::identity(G.size());
    for (int k = 0; k <= k_max; ++k) {
        Json line{{"k", k}, {"matrix", qmatrix_json(P)}};
        if (table) {
            line["table"] = qmatrix_json(coxeter_table_e6(k).transpose());
            line["equal"] = P == coxeter_table_e6(k).transpose();
        }
        emit(line, false);
        P = P * C;
    }
    return ok;
}

int cmd_feasible(const std::string& path, std::optional<long long> scan, bool spectral, bool trajectory, bool pretty)
{
    InstanceFile inf = instance_from_json(read_json(path));
    StarGraph G = graph_from(inf.instance.lengths());
    SolveOptions opt;
    if (inf.scan_bound) opt.scan_bound = *inf.scan_bound;
    if (scan) opt.scan_bound = *scan;
    if (spectral) {
        SpectralVerdict v = spectral_problem(G, inf.instance, opt);
        emit(spectral_verdict_json(v), pretty);
        return v.feasible ? ok : infeasible;
    }
    FeasibilityVerdict v = solve(G, inf.instance, opt);
    emit(verdict_json(v, trajectory), pretty);
    return verdict_exit(v.status);
}

int cmd_construct(const std::string& path, const std::string& dim_path, const std::string& out, std::optional<std::uint64_t> seed,
                  int restarts, const std::string& form, bool pretty)
{
    InstanceFile inf = instance_from_json(read_json(path));
    const SpectralInstance& inst = inf.instance;
    StarGraph G = graph_from(inst.lengths());
    validate_instance(G, inst);
    QVec f = char_from_chi(G, inst);
    std::uint64_t s = seed ? *seed : inf.seed ? *inf.seed : 0;
    if (form != "algebra" && form != "graph") throw ParseError("--form must be algebra or graph");

    IVec d;
    if (!dim_path.empty()) d = graph_dimension_from_json(G, read_json(dim_path));
    else {
        SolveOptions opt;
        if (inf.scan_bound) opt.scan_bound = *inf.scan_bound;
        FeasibilityVerdict v = solve(G, inst, opt);
        if (!v.feasible()) {
            std::cerr << Json{{"error", {{"code", "infeasible"}, {"message", std::string("no representation: ") + to_string(v.status)}}}}.dump()
                      << "\n";
            return verdict_exit(v.status);
        }
        d = *v.witness_graph_dimension;
    }

    Json result;
    GraphClass cls = classify(G);
    bool imaginary = cls.kind == GraphKind::ExtendedDynkin && is_root(G, cls, d) == RootKind::imaginary;
    if (imaginary) {
        if (cls.name != "E6~" || d != cls.delta) throw std::domain_error("construction for imaginary roots covers delta on E6~ only");
        HyperplaneOptions ho;
        ho.seed = s;
        ho.restarts = restarts;
        HyperplaneResult h;
        try {
            h = build_hyperplane_rep(inst, ho);
        } catch (const ConstructionFailure& e) {
            throw CliError(construction_failed, "construction_failed", e.what());
        }
        if (form == "graph") result = graph_rep_json(G, graph_rep_from_algebra(G, h.rep), {h.residual, s, h.restart, h.iterations, "hyperplane"});
        else result = algebra_rep_json(h.rep, {h.residual, s, h.restart, h.iterations, "hyperplane"});
    } else {
        GraphRep rep;
        try {
            rep = build_graph_rep(G, d, f);
        } catch (const FunctorDomainError& e) {
            throw CliError(infeasible, "infeasible", e.what());
        } catch (const std::domain_error& e) {
            throw CliError(infeasible, "infeasible", e.what());
        }
        if (form == "graph") {
            double res = 0;
            for (int g = 0; g < G.size(); ++g)
                if (rep.dims[g]) res = std::max(res, (vertex_operator(G, rep, g) - to_double(f[g]) * CMatrix::Identity(rep.dims[g], rep.dims[g])).norm());
            result = graph_rep_json(G, rep, {res, std::nullopt, std::nullopt, std::nullopt, "reflection_functors"});
        } else {
            if (!nondegenerate_dim(G, d)) throw std::domain_error("degenerate dimension: use --form graph");
            AlgebraRep a;
            try {
                a = to_algebra_rep(G, canonicalize(G, rep));
            } catch (const ConstructionFailure& e) {
                throw CliError(construction_failed, "construction_failed", e.what());
            }
            result = algebra_rep_json(a, {a.residual().norm(), std::nullopt, std::nullopt, std::nullopt, "reflection_functors"});
        }
    }
    if (out.empty()) emit(result, pretty);
    else write_json(out, result);
    return ok;
}

int cmd_verify(const std::string& rep_path, const std::string& inst_path, Tolerances tol, bool pretty)
{
    Json j = read_json(rep_path);
    auto [G, any] = rep_from_json(j);
    std::optional<InstanceFile> inf;
    if (!inst_path.empty()) {
        inf = instance_from_json(read_json(inst_path));
        if (inf->tolerances.verify != Tolerances{}.verify) tol.verify = inf->tolerances.verify;
        if (inf->tolerances.spectrum != Tolerances{}.spectrum) tol.spectrum = inf->tolerances.spectrum;
        if (inf->tolerances.rank != Tolerances{}.rank) tol.rank = inf->tolerances.rank;
    }
    VerificationReport rpt;
    if (auto* a = std::get_if<AlgebraRep>(&any)) {
        rpt = verify_algebra_rep(*a, tol);
        if (inf) {
            bool same = a->inst == inf->instance;
            rpt.add("instance_match", same, 0, same ? "" : "representation parameters differ from the instance");
        }
    } else {
        auto& g = std::get<GraphRep>(any);
        QVec f;
        if (inf) f = char_from_chi(*G, inf->instance);
        else if (g.character) f = *g.character;
        else throw ParseError("graph representation without a character needs --instance");
        rpt = verify_graph_rep(*G, g, g.dimension(), f, tol);
    }
    emit(report_json(rpt), pretty);
    return rpt.overall() ? ok : infeasible;
}

int cmd_solve_batch(const std::string& dir, std::optional<long long> scan, bool pretty)
{
    if (!fs::is_directory(dir)) throw CliError(io, "io_error", dir + " is not a directory");
    std::vector<fs::path> files;
    for (auto& e : fs::directory_iterator(dir))
        if (e.is_regular_file() && e.path().extension() == ".json") files.push_back(e.path());
    std::sort(files.begin(), files.end());
    Json results = Json::array();
    std::map<std::string, long long> counts;
    for (auto& p : files) {
        Json r{{"file", p.filename().string()}};
        try {
            InstanceFile inf = instance_from_json(read_json(p.string()));
            StarGraph G = graph_from(inf.instance.lengths());
            SolveOptions opt;
            if (inf.scan_bound) opt.scan_bound = *inf.scan_bound;
            if (scan) opt.scan_bound = *scan;
            FeasibilityVerdict v = solve(G, inf.instance, opt);
            r["status"] = to_string(v.status);
            r["branch"] = v.branch.label();
            r["witness_graph_dimension"] = v.witness_graph_dimension ? ivec_json(*v.witness_graph_dimension) : Json(nullptr);
            ++counts[to_string(v.status)];
        } catch (const ParseError& e) {
            r["error"] = {{"code", "parse_error"}, {"message", e.what()}};
            ++counts["error"];
        } catch (const std::exception& e) {
            r["error"] = {{"code", "invalid_instance"}, {"message", e.what()}};
            ++counts["error"];
        }
        results.push_back(r);
    }
    Json summary = Json::object();
    for (const char* k : {"feasible", "infeasible", "degenerate", "boundary", "undecided", "error"}) summary[k] = counts[k];
    emit(Json{{"directory", dir}, {"count", files.size()}, {"summary", summary}, {"results", results}}, pretty);
    return ok;
}

void error_out(const std::string& kind, const std::string& msg)
{
    std::cerr << Json{{"error", {{"code", kind}, {"message", msg}}}}.dump() << "\n";
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Spectral problems for sums of Hermitian operators on star graphs"};
    app.set_version_flag("--version", std::string(starspec::version));
    bool schema = false, pretty = false;
    app.add_flag("--json-schema", schema, "print the instance file JSON schema");
    app.add_flag("--pretty", pretty, "indent JSON output");

    std::vector<int> branches;
    auto add_branches = [&](CLI::App* sc) {
        sc->add_option("--branches", branches, "branch lengths, e.g. 2,2,2")->delimiter(',')->required();
    };

    auto* classify_cmd = app.add_subcommand("classify", "Dynkin / extended Dynkin / wild");
    add_branches(classify_cmd);

    auto* roots_cmd = app.add_subcommand("roots", "fundamental roots and Coxeter series");
    add_branches(roots_cmd);
    std::string series, extending;
    long long bound = -1;
    roots_cmd->add_option("--series", series, "K1, K2, K3 (E6~) or all");
    roots_cmd->add_option("--extending", extending, "extending vertex, e.g. g1");
    roots_cmd->add_option("--positive-bound", bound, "list positive real roots with d(g0) <= bound");

    auto* cox_cmd = app.add_subcommand("coxeter", "powers of the Coxeter map, or a functor word on (d, f)");
    add_branches(cox_cmd);
    int k_max = 6;
    bool table = false;
    std::string word, dim, chr;
    cox_cmd->add_option("--k-max", k_max, "largest power")->check(CLI::Range(0, 1000));
    cox_cmd->add_flag("--table", table, "also print the periodic closed form (E6~)");
    cox_cmd->add_option("--word", word, "comma separated parities, applied left to right");
    cox_cmd->add_option("--dim", dim, "dimension vector for --word");
    cox_cmd->add_option("--char", chr, "character vector for --word");

    auto* feas_cmd = app.add_subcommand("feasible", "decide an instance");
    std::string inst_path;
    std::optional<long long> scan;
    bool spectral = false, trajectory = false;
    feas_cmd->add_option("--instance", inst_path)->required();
    feas_cmd->add_option("--scan-bound", scan, "largest d(g0) scanned on extended Dynkin graphs");
    feas_cmd->add_flag("--spectral", spectral, "allow spectrum points to be absent");
    feas_cmd->add_flag("--trajectory", trajectory, "include the (d, f) trajectory");

    auto* cons_cmd = app.add_subcommand("construct", "build a representation");
    std::string dim_path, out_path, form = "algebra";
    std::optional<std::uint64_t> seed;
    int restarts = 32;
    cons_cmd->add_option("--instance", inst_path)->required();
    cons_cmd->add_option("--dimension", dim_path, "dimension file: {\"n\":..,\"n0\":..} or {\"d\":[..]}");
    cons_cmd->add_option("-o,--output", out_path);
    cons_cmd->add_option("--seed", seed);
    cons_cmd->add_option("--restarts", restarts)->check(CLI::PositiveNumber);
    cons_cmd->add_option("--form", form, "algebra or graph");

    auto* ver_cmd = app.add_subcommand("verify", "check a representation file");
    std::string rep_path;
    Tolerances tol;
    ver_cmd->add_option("--rep", rep_path)->required();
    ver_cmd->add_option("--instance", inst_path);
    ver_cmd->add_option("--tol-verify", tol.verify)->check(CLI::PositiveNumber);
    ver_cmd->add_option("--tol-spectrum", tol.spectrum)->check(CLI::PositiveNumber);
    ver_cmd->add_option("--tol-rank", tol.rank)->check(CLI::PositiveNumber);

    auto* batch_cmd = app.add_subcommand("solve-batch", "decide every *.json instance in a directory");
    std::string dir;
    batch_cmd->add_option("--dir", dir)->required();
    batch_cmd->add_option("--scan-bound", scan);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e);
        error_out("usage", e.what());
        return usage;
    }

    try {
        if (schema) {
            emit(instance_schema(), true);
            return ok;
        }
        if (*classify_cmd) return cmd_classify(branches, pretty);
        if (*roots_cmd) return cmd_roots(branches, series, extending, bound, pretty);
        if (*cox_cmd) return cmd_coxeter(branches, k_max, table, word, dim, chr);
        if (*feas_cmd) return cmd_feasible(inst_path, scan, spectral, trajectory, pretty);
        if (*cons_cmd) return cmd_construct(inst_path, dim_path, out_path, seed, restarts, form, pretty);
        if (*ver_cmd) return cmd_verify(rep_path, inst_path, tol, pretty);
        if (*batch_cmd) return cmd_solve_batch(dir, scan, pretty);
        error_out("usage", "a subcommand is required");
        std::cerr << app.help();
        return usage;
    } catch (const CliError& e) {
        error_out(e.kind, e.what());
        return e.code;
    } catch (const ParseError& e) {
        error_out("parse_error", e.what());
        return usage;
    } catch (const std::invalid_argument& e) {
        error_out("invalid_input", e.what());
        return data;
    } catch (const std::domain_error& e) {
        error_out("out_of_scope", e.what());
        return data;
    } catch (const std::exception& e) {
        error_out("internal", e.what());
        return 70;
    }
}
