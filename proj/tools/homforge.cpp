// homforge command-line front end.
#include "homforge/circuit.hpp"
#include "homforge/cnf.hpp"
#include "homforge/counting_oracles.hpp"
#include "homforge/error.hpp"
#include "homforge/field.hpp"
#include "homforge/gadget_search.hpp"
#include "homforge/gadgets.hpp"
#include "homforge/graph.hpp"
#include "homforge/hom_compiler.hpp"
#include "homforge/intermediates.hpp"
#include "homforge/tree_decomp.hpp"

#include <CLI11.hpp>

#include <charconv>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

using namespace homforge;

namespace {

constexpr const char* kVersion = "0.1.0";

enum ExitCode { kOk = 0, kMismatch = 1, kUsage = 2 };

std::uint64_t fnv1a(const std::string& bytes) {
    std::uint64_t h = 1469598103934665603ULL;
    for (unsigned char c : bytes) {
        h ^= c;
        h *= 1099511628211ULL;
    }
    return h;
}

std::string hex(std::uint64_t v) {
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(v));
    return buf;
}

// Ordered key/value report; `human` prints "key: value", otherwise key=value.
class Report {
public:
    explicit Report(bool human) : human_(human) {}

    template <class T>
    void add(const std::string& key, const T& value) {
        std::ostringstream s;
        s << value;
        rows_.emplace_back(key, s.str());
    }
    void add(const std::string& key, bool value) { rows_.emplace_back(key, value ? "true" : "false"); }

    void print(std::ostream& out, const std::string& prefix = "") const {
        std::size_t w = 0;
        for (const auto& [k, v] : rows_)
            w = std::max(w, k.size());
        for (const auto& [k, v] : rows_) {
            if (human_)
                out << prefix << k << ':' << std::string(w - k.size() + 1, ' ') << v << '\n';
            else
                out << prefix << k << '=' << v << '\n';
        }
    }

private:
    bool human_;
    std::vector<std::pair<std::string, std::string>> rows_;
};

// Files read by a command, hashed for the reproducibility header.
class Inputs {
public:
    std::string read(const std::string& role, const std::string& path) {
        std::ifstream in(path, std::ios::binary);
        if (!in)
            throw Error("cannot open " + role + " file '" + path + "'");
        std::ostringstream s;
        s << in.rdbuf();
        files_.emplace_back(role, path + " fnv1a:" + hex(fnv1a(s.str())));
        return s.str();
    }
    const std::vector<std::pair<std::string, std::string>>& files() const { return files_; }

private:
    std::vector<std::pair<std::string, std::string>> files_;
};

template <class T, class Reader>
T parse_file(Inputs& in, const std::string& role, const std::string& path, Reader reader) {
    std::istringstream s(in.read(role, path));
    try {
        return reader(s);
    } catch (const ParseError& e) {
        throw Error(path + ": " + e.what());
    }
}

struct Global {
    std::string format = "human";
    std::uint64_t seed = 1;
    bool human() const { return format == "human"; }
};

void header(Report& r, const Global& g, const std::string& command, const Inputs& in, const Field* field) {
    r.add("version", std::string("homforge ") + kVersion);
    r.add("command", command);
    r.add("seed", g.seed);
    if (field)
        r.add("field", field->name());
    for (const auto& [role, desc] : in.files())
        r.add("input." + role, desc);
}

std::vector<std::uint64_t> parse_modulus(const std::string& text) {
    std::vector<std::uint64_t> out;
    std::stringstream s(text);
    for (std::string part; std::getline(s, part, ',');) {
        std::uint64_t v = 0;
        auto [ptr, ec] = std::from_chars(part.data(), part.data() + part.size(), v);
        if (part.empty() || ec != std::errc{} || ptr != part.data() + part.size())
            throw Error("bad modulus coefficient '" + part + "'");
        out.push_back(v);
    }
    return out;
}

const Field& field_from(const std::string& spec, const std::string& modulus) {
    if (modulus.empty())
        return Field::parse(spec);
    return Field::parse(spec, parse_modulus(modulus));
}

FieldElem element_from(const Field& f, const std::string& text, std::size_t line) {
    long long v = 0;
    auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
    if (ec != std::errc{} || ptr != text.data() + text.size())
        throw ParseError("expected an integer value, got '" + text + "'", line);
    if (v >= 0 && static_cast<unsigned long long>(v) < f.q())
        return f.element(static_cast<std::uint64_t>(v));
    return f.from_int(v);
}

// `<label> <value>` lines.
std::map<VarLabel, FieldElem> read_assignment(std::istream& in, const Field& f) {
    std::map<VarLabel, FieldElem> out;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        std::istringstream s(line);
        std::string label, value, extra;
        if (!(s >> label) || label[0] == '#')
            continue;
        if (!(s >> value) || (s >> extra))
            throw ParseError("expected '<label> <value>'", lineno);
        VarLabel v;
        try {
            v = VarLabel::parse(label);
        } catch (const ParseError&) {
            throw;
        } catch (const Error& e) {
            throw ParseError(e.what(), lineno);
        }
        if (!out.emplace(v, element_from(f, value, lineno)).second)
            throw ParseError("label " + label + " assigned twice", lineno);
    }
    return out;
}

// With a path the body goes to the file and the caller reports on stdout.
void write_or_print(const std::string& path, const std::string& body, std::ostream& out) {
    if (path.empty()) {
        out << body;
        return;
    }
    std::ofstream f(path);
    if (!f)
        throw Error("cannot write '" + path + "'");
    f << body;
}

// ---------------------------------------------------------------------------

struct CompileArgs {
    std::string graph, decomp, target, out;
    int complete_target = 0;
    bool specialize = false;
};

int run_compile(const Global& g, const CompileArgs& a) {
    Inputs in;
    Graph gr = parse_file<Graph>(in, "graph", a.graph, read_graph);
    Graph h;
    if (!a.target.empty())
        h = parse_file<Graph>(in, "target", a.target, read_graph);
    else if (a.complete_target > 0)
        h = Graph::complete(a.complete_target);
    else
        throw Error("give --target H.gr or --complete-target n");
    NiceTreeDecomp d;
    std::string source;
    if (!a.decomp.empty()) {
        d = parse_file<NiceTreeDecomp>(in, "decomp", a.decomp, read_decomp);
        source = "file";
    } else if (gr.n() <= 12) {
        d = treewidth_exact(gr).decomp;
        source = "exact";
    } else {
        d = make_nice(greedy_decomposition(gr), gr);
        source = "greedy";
    }
    CompiledHom c;
    try {
        c = compile(gr, d, h);
    } catch (const InvalidDecomposition& e) {
        std::cerr << "error: invalid decomposition\n";
        for (const auto& v : e.violations())
            std::cerr << "  " << v << '\n';
        return kUsage;
    }
    Report r(g.human());
    header(r, g, "compile", in, nullptr);
    r.add("decomposition", source);
    r.add("g_vertices", c.meta.g_vertices);
    r.add("h_vertices", c.meta.h_vertices);
    r.add("h_edges", c.meta.h_edges);
    r.add("width", c.meta.width);
    r.add("gates", c.meta.gates);
    r.add("wires", c.meta.wires);
    r.add("size_bound", c.meta.size_bound);
    r.add("skew", c.meta.skew);
    r.add("specialized_z", a.specialize);
    std::ostringstream body;
    r.print(body, "# ");
    write_circuit(body, a.specialize ? specialize_Z(c) : c.circuit);
    write_or_print(a.out, body.str(), std::cout);
    if (!a.out.empty())
        r.print(std::cout);
    return kOk;
}

struct EvalArgs {
    std::string circuit, family, field = "2", modulus, assign, missing = "one", method;
    int n = 0;
};

int run_eval(const Global& g, const EvalArgs& a) {
    Inputs in;
    const Field& f = field_from(a.field, a.modulus);
    std::map<VarLabel, FieldElem> assignment;
    if (!a.assign.empty())
        assignment = parse_file<std::map<VarLabel, FieldElem>>(
            in, "assign", a.assign, [&](std::istream& s) { return read_assignment(s, f); });
    auto value = [&](const VarLabel& v) -> FieldElem {
        auto it = assignment.find(v);
        if (it != assignment.end())
            return it->second;
        if (a.missing == "one")
            return f.one();
        if (a.missing == "zero")
            return f.zero();
        throw Error("no value for " + v.to_string());
    };
    Report r(g.human());
    if (!a.circuit.empty()) {
        Circuit c = parse_file<Circuit>(in, "circuit", a.circuit, read_circuit);
        header(r, g, "eval", in, &f);
        FieldElem v = evaluate(c, FieldRing(f), [&](const VarLabel& l) { return std::optional<FieldElem>(value(l)); });
        r.add("value", v.to_string());
        r.print(std::cout);
        return kOk;
    }
    if (a.family.empty() || a.n < 1)
        throw Error("give --circuit, or --family with --n >= 1");
    const Family fam = parse_family(a.family);
    header(r, g, "eval", in, &f);
    r.add("family", to_string(fam));
    r.add("n", a.n);
    std::string method = a.method;
    if (method.empty())
        method = a.n <= definitional_limit(fam) ? "both" : "fast";
    std::optional<FieldElem> fast, def;
    if (method == "fast" || method == "both") {
        fast = eval_fast(fam, a.n, f, value);
        r.add("fast", fast->to_string());
    }
    if (method == "definitional" || method == "both") {
        def = eval_definitional(fam, a.n, f.q(), FieldRing(f), Valuation<FieldElem>(value));
        r.add("definitional", def->to_string());
    }
    const bool agree = !(fast && def) || *fast == *def;
    if (fast && def)
        r.add("agree", agree);
    r.print(std::cout);
    return agree ? kOk : kMismatch;
}

struct InstanceArgs {
    std::string graph, cnf, hypergraph;
};

struct CountArgs {
    InstanceArgs inst;
    std::string family, field = "2", modulus, caps;
    int k = -1;
};

int run_count(const Global& g, const CountArgs& a) {
    Inputs in;
    const Field& f = field_from(a.field, a.modulus);
    const Family fam = parse_family(a.family);
    std::optional<TruncCaps> caps;
    if (!a.caps.empty()) {
        auto parts = parse_modulus(a.caps);
        if (parts.size() != 2)
            throw Error("--caps expects 'dz,dt'");
        caps = TruncCaps{parts[0], parts[1]};
    }
    CoefficientQuery q;
    CountResult oracle;
    BigInt expected;
    switch (fam) {
    case Family::Sat: {
        if (a.inst.cnf.empty())
            throw Error("sat needs --cnf");
        Cnf phi = parse_file<Cnf>(in, "cnf", a.inst.cnf, read_dimacs);
        q = count_via_coefficient(phi, f, caps);
        oracle = count_sat3(phi, f);
        expected = oracle.exact;
        break;
    }
    case Family::TDM: {
        if (a.inst.hypergraph.empty())
            throw Error("3dm needs --hypergraph");
        Hypergraph3 h = parse_file<Hypergraph3>(in, "hypergraph", a.inst.hypergraph, read_hypergraph);
        q = count_via_coefficient(h, f, caps);
        oracle = count_3dm(h, f);
        expected = oracle.exact;
        break;
    }
    default: {
        if (a.inst.graph.empty())
            throw Error(to_string(fam) + " needs --graph");
        Graph gr = parse_file<Graph>(in, "graph", a.inst.graph, read_graph);
        if (fam != Family::Clow && a.k < 0)
            throw Error(to_string(fam) + " needs --k");
        q = count_via_coefficient(fam, gr, a.k, f, caps);
        if (fam == Family::VC)
            oracle = count_vc(gr, a.k, f);
        else if (fam == Family::CIS)
            oracle = count_clique(gr, a.k, f);
        else
            oracle = count_hc(gr, f);
        expected = fam == Family::Clow ? 2 * oracle.exact : oracle.exact;
        break;
    }
    }
    const FieldElem want = make_count(expected, f).modp;
    Report r(g.human());
    header(r, g, "count", in, &f);
    r.add("family", to_string(fam));
    r.add("target", "z^" + std::to_string(q.target.dz) + " t^" + std::to_string(q.target.dt));
    r.add("caps", std::to_string(q.caps.dz) + "," + std::to_string(q.caps.dt));
    r.add("coefficient", q.value.to_string());
    r.add("relation", q.relation);
    r.add("oracle_exact", oracle.exact);
    r.add("expected_modp", want.to_string());
    r.add("match", q.value == want);
    r.print(std::cout);
    return q.value == want ? kOk : kMismatch;
}

struct OracleArgs {
    InstanceArgs inst;
    std::string what, field, modulus;
    std::uint64_t mod = 0;
    int k = -1, length = 0;
};

int run_oracle(const Global& g, const OracleArgs& a) {
    Inputs in;
    if (a.field.empty() && a.mod == 0)
        throw Error("give --mod p or --field");
    const Field& f = a.field.empty() ? Field::get(a.mod) : field_from(a.field, a.modulus);
    CountResult res;
    auto graph = [&] {
        if (a.inst.graph.empty())
            throw Error(a.what + " needs --graph");
        return parse_file<Graph>(in, "graph", a.inst.graph, read_graph);
    };
    auto need_k = [&] {
        if (a.k < 0)
            throw Error(a.what + " needs --k");
        return a.k;
    };
    if (a.what == "sat") {
        if (a.inst.cnf.empty())
            throw Error("sat needs --cnf");
        res = count_sat3(parse_file<Cnf>(in, "cnf", a.inst.cnf, read_dimacs), f);
    } else if (a.what == "vc") {
        Graph gr = graph();
        res = count_vc(gr, need_k(), f);
    } else if (a.what == "clique") {
        Graph gr = graph();
        res = count_clique(gr, need_k(), f);
    } else if (a.what == "independent") {
        Graph gr = graph();
        res = count_independent(gr, need_k(), f);
    } else if (a.what == "hc") {
        res = count_hc(graph(), f);
    } else if (a.what == "clows") {
        Graph gr = graph();
        res = count_clows(gr, a.length > 0 ? a.length : gr.n(), f);
    } else if (a.what == "3dm") {
        if (a.inst.hypergraph.empty())
            throw Error("3dm needs --hypergraph");
        res = count_3dm(parse_file<Hypergraph3>(in, "hypergraph", a.inst.hypergraph, read_hypergraph), f);
    } else {
        throw Error("unknown --what '" + a.what + "'");
    }
    Report r(g.human());
    header(r, g, "oracle", in, &f);
    r.add("what", a.what);
    r.add("exact", res.exact);
    r.add("modp", res.modp.to_string());
    r.print(std::cout);
    return kOk;
}

GadgetTriple load_or_search(Inputs& in, const Global& g, const std::string& path, GadgetNeed need) {
    if (!path.empty())
        return parse_file<GadgetTriple>(in, "triple", path, read_gadget);
    SearchOptions opts;
    opts.seed = g.seed;
    return search_gadgets(need, opts);
}

struct VerifyArgs {
    std::string theorem, bp, circuit, triple, field = "5", modulus;
    bool fault = false;
};

int run_verify(const Global& g, const VerifyArgs& a) {
    Inputs in;
    Report r(g.human());
    if (a.theorem == "cycle") {
        if (a.bp.empty())
            throw Error("--theorem cycle needs --bp");
        LayeredBP bp = parse_file<LayeredBP>(in, "bp", a.bp, read_bp);
        const Field& f = field_from(a.field, a.modulus);
        auto rep = verify_cycle_identity(bp, f);
        header(r, g, "verify", in, &f);
        r.add("theorem", a.theorem);
        r.add("layers", rep.layers);
        r.add("factor", rep.factor);
        r.add("homs", rep.homs);
        r.add("paths", rep.paths);
        r.add("g", rep.g.to_string());
        r.add("identity", rep.identity_holds);
        r.add("recovered", rep.char_two ? std::string("n/a") : std::string(rep.recovered ? "true" : "false"));
        if (!rep.note.empty())
            r.add("note", rep.note);
        r.add("ok", rep.ok());
        r.print(std::cout);
        return rep.ok() ? kOk : kMismatch;
    }
    if (a.theorem == "gadget-bp") {
        if (a.bp.empty())
            throw Error("--theorem gadget-bp needs --bp");
        LayeredBP bp = parse_file<LayeredBP>(in, "bp", a.bp, read_bp);
        GadgetTriple pair = load_or_search(in, g, a.triple, GadgetNeed::Pair);
        auto rep = verify_gadget_bijection(bp, pair);
        header(r, g, "verify", in, nullptr);
        r.add("theorem", a.theorem);
        r.add("layers", bp.layers());
        r.add("homs", rep.homs);
        r.add("paths", rep.paths);
        r.add("p1", rep.p1);
        r.add("p2", rep.p2);
        r.add("ends", rep.ends);
        r.add("monomials_match", rep.monomials_match);
        r.add("ok", rep.ok());
        r.print(std::cout);
        return rep.ok() ? kOk : kMismatch;
    }
    if (a.theorem == "parse-hom") {
        if (a.circuit.empty())
            throw Error("--theorem parse-hom needs --circuit");
        Circuit c = parse_file<Circuit>(in, "circuit", a.circuit, read_circuit);
        GadgetTriple t = load_or_search(in, g, a.triple, GadgetNeed::Triple);
        auto rep = verify_parse_hom_bijection(c, t, a.fault);
        header(r, g, "verify", in, nullptr);
        r.add("theorem", a.theorem);
        r.add("fault_injected", a.fault);
        r.add("depth", rep.depth);
        r.add("parse_trees", rep.parse_trees);
        r.add("homs", rep.homs);
        r.add("ok", rep.ok());
        r.print(std::cout);
        return rep.ok() ? kOk : kMismatch;
    }
    throw Error("unknown --theorem '" + a.theorem + "' (cycle, gadget-bp or parse-hom)");
}

struct SearchArgs {
    std::string need = "triple", out;
    int max_n = 10, exhaustive_max_n = 8;
    std::size_t samples = 200'000;
};

int run_search(const Global& g, const SearchArgs& a) {
    SearchOptions opts;
    opts.seed = g.seed;
    opts.max_n = a.max_n;
    opts.exhaustive_max_n = a.exhaustive_max_n;
    opts.samples_per_n = a.samples;
    SearchStats stats;
    if (a.need != "pair" && a.need != "triple")
        throw Error("--need must be pair or triple");
    GadgetTriple t = search_gadgets(a.need == "pair" ? GadgetNeed::Pair : GadgetNeed::Triple, opts, &stats);
    Inputs none;
    Report r(g.human());
    header(r, g, "search", none, nullptr);
    r.add("need", a.need);
    for (std::size_t n = 1; n < stats.graphs_examined.size(); ++n)
        if (stats.graphs_examined[n] > 0)
            r.add("rigid_at_" + std::to_string(n),
                  std::to_string(stats.rigid_found[n]) + "/" + std::to_string(stats.graphs_examined[n]));
    r.add("c_max", t.c_max);
    r.add("certified", certify(t).empty());
    std::ostringstream body;
    r.print(body, "# ");
    write_gadget(body, t);
    write_or_print(a.out, body.str(), std::cout);
    if (!a.out.empty())
        r.print(std::cout);
    return kOk;
}

struct DecompArgs {
    std::string graph, method, check, out;
};

int run_decomp(const Global& g, const DecompArgs& a) {
    Inputs in;
    Graph gr = parse_file<Graph>(in, "graph", a.graph, read_graph);
    Report r(g.human());
    if (!a.check.empty()) {
        NiceTreeDecomp d = parse_file<NiceTreeDecomp>(in, "decomp", a.check, read_decomp);
        auto bad = validate_nice(d, gr);
        header(r, g, "decomp", in, nullptr);
        r.add("valid", bad.empty());
        if (bad.empty()) {
            r.add("width", width(d));
            r.add("join_free", !has_join(d));
        }
        for (std::size_t i = 0; i < bad.size(); ++i)
            r.add("violation." + std::to_string(i + 1), bad[i]);
        r.print(std::cout);
        return bad.empty() ? kOk : kMismatch;
    }
    std::string method = a.method.empty() ? (gr.n() <= 12 ? "exact" : "greedy") : a.method;
    NiceTreeDecomp d;
    if (method == "exact")
        d = treewidth_exact(gr).decomp;
    else if (method == "greedy")
        d = make_nice(greedy_decomposition(gr), gr);
    else
        throw Error("--method must be exact or greedy");
    header(r, g, "decomp", in, nullptr);
    r.add("method", method);
    r.add("width", width(d));
    r.add("nodes", d.nodes.size());
    r.add("join_free", !has_join(d));
    std::ostringstream body;
    r.print(body, "# ");
    write_decomp(body, d);
    write_or_print(a.out, body.str(), std::cout);
    if (!a.out.empty())
        r.print(std::cout);
    return kOk;
}

void add_instance(CLI::App* sub, InstanceArgs& i) {
    sub->add_option("--graph", i.graph, "graph file (p n m / e u v)");
    sub->add_option("--cnf", i.cnf, "DIMACS 3-CNF file");
    sub->add_option("--hypergraph", i.hypergraph, "tripartite hypergraph file (h n / t a b c)");
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"homforge: homomorphism polynomials, circuits and counting over finite fields"};
    app.set_version_flag("--version", std::string("homforge ") + kVersion);
    app.require_subcommand(1);
    Global g;
    app.add_option("--format", g.format, "report style")->check(CLI::IsMember({"human", "kv"}));
    app.add_option("--seed", g.seed, "seed for every random choice");

    CompileArgs ca;
    auto* compile_cmd = app.add_subcommand("compile", "compile f_{G,H} into an arithmetic circuit");
    compile_cmd->add_option("--graph", ca.graph, "pattern graph G")->required();
    compile_cmd->add_option("--decomp", ca.decomp, "nice tree decomposition of G (default: exact)");
    auto* target = compile_cmd->add_option("--target", ca.target, "target graph H");
    auto* complete = compile_cmd->add_option("--complete-target,--target-size", ca.complete_target,
                                             "use the complete graph on n vertices as H");
    target->excludes(complete);
    compile_cmd->add_flag("--specialize-z", ca.specialize, "replace every Z input by 1");
    compile_cmd->add_option("--out", ca.out, "write the circuit here instead of stdout");

    EvalArgs ea;
    auto* eval_cmd = app.add_subcommand("eval", "evaluate a circuit or a polynomial family over F_q");
    eval_cmd->add_option("--circuit", ea.circuit, "circuit file");
    eval_cmd->add_option("--family", ea.family, "sat | vc | cis | clow | 3dm");
    eval_cmd->add_option("--n", ea.n, "family index");
    eval_cmd->add_option("--field", ea.field, "p or p^k");
    eval_cmd->add_option("--modulus", ea.modulus, "c0,c1,...,ck for extension fields");
    eval_cmd->add_option("--assign", ea.assign, "`<label> <value>` lines");
    eval_cmd->add_option("--missing", ea.missing, "value of unlisted labels")
        ->check(CLI::IsMember({"one", "zero", "error"}));
    eval_cmd->add_option("--method", ea.method, "fast | definitional | both")
        ->check(CLI::IsMember({"fast", "definitional", "both"}));

    CountArgs cta;
    auto* count_cmd = app.add_subcommand("count", "read a count mod p off a polynomial coefficient");
    count_cmd->add_option("--family", cta.family, "sat | vc | cis | clow | 3dm")->required();
    add_instance(count_cmd, cta.inst);
    count_cmd->add_option("--k", cta.k, "cover / clique size");
    count_cmd->add_option("--field", cta.field, "p or p^k");
    count_cmd->add_option("--modulus", cta.modulus, "c0,c1,...,ck for extension fields");
    count_cmd->add_option("--caps", cta.caps, "evaluation caps dz,dt (default: the target degrees)");

    OracleArgs oa;
    auto* oracle_cmd = app.add_subcommand("oracle", "brute-force counting");
    oracle_cmd->add_option("--what", oa.what, "sat | vc | clique | independent | hc | clows | 3dm")->required();
    add_instance(oracle_cmd, oa.inst);
    oracle_cmd->add_option("--k", oa.k, "set size");
    oracle_cmd->add_option("--length", oa.length, "clow length (default |V|)");
    oracle_cmd->add_option("--mod", oa.mod, "prime p");
    oracle_cmd->add_option("--field", oa.field, "p or p^k (alternative to --mod)");
    oracle_cmd->add_option("--modulus", oa.modulus, "c0,c1,...,ck for extension fields");

    VerifyArgs va;
    auto* verify_cmd = app.add_subcommand("verify", "check a hardness construction on a small instance");
    verify_cmd->add_option("--theorem", va.theorem, "cycle | gadget-bp | parse-hom")->required();
    verify_cmd->add_option("--bp", va.bp, "layered branching program");
    verify_cmd->add_option("--circuit", va.circuit, "normal-form circuit (parse-hom)");
    verify_cmd->add_option("--triple", va.triple, "gadget file (default: search with --seed)");
    verify_cmd->add_option("--field", va.field, "field for recovering g (cycle)");
    verify_cmd->add_option("--modulus", va.modulus, "c0,c1,...,ck for extension fields");
    verify_cmd->add_flag("--fault", va.fault, "assemble J_n with swapped levels (negative control)");

    SearchArgs sa;
    auto* search_cmd = app.add_subcommand("search", "find rigid, pairwise incomparable gadget graphs");
    search_cmd->add_option("--need", sa.need, "pair | triple");
    search_cmd->add_option("--max-n", sa.max_n, "largest block size");
    search_cmd->add_option("--exhaustive-max-n", sa.exhaustive_max_n, "largest size enumerated exhaustively");
    search_cmd->add_option("--samples", sa.samples, "random graphs per size above the exhaustive range");
    search_cmd->add_option("--out", sa.out, "write the gadget file here instead of stdout");

    DecompArgs da;
    auto* decomp_cmd = app.add_subcommand("decomp", "build or check a nice tree decomposition");
    decomp_cmd->add_option("--graph", da.graph, "graph file")->required();
    decomp_cmd->add_option("--method", da.method, "exact | greedy");
    decomp_cmd->add_option("--check", da.check, "validate this decomposition instead");
    decomp_cmd->add_option("--out", da.out, "write the decomposition here instead of stdout");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kOk : kUsage;
    }

    try {
        if (compile_cmd->parsed())
            return run_compile(g, ca);
        if (eval_cmd->parsed())
            return run_eval(g, ea);
        if (count_cmd->parsed())
            return run_count(g, cta);
        if (oracle_cmd->parsed())
            return run_oracle(g, oa);
        if (verify_cmd->parsed())
            return run_verify(g, va);
        if (search_cmd->parsed())
            return run_search(g, sa);
        if (decomp_cmd->parsed())
            return run_decomp(g, da);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kUsage;
    }
    return kUsage;
}
