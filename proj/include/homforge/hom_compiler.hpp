#pragma once

#include "homforge/circuit.hpp"
#include "homforge/graph.hpp"
#include "homforge/tree_decomp.hpp"

#include <functional>
#include <map>
#include <string>
#include <vector>

namespace homforge {

class InvalidDecomposition : public Error {
public:
    explicit InvalidDecomposition(std::vector<std::string> violations);
    const std::vector<std::string>& violations() const noexcept { return violations_; }

private:
    std::vector<std::string> violations_;
};

struct CompileMeta {
    int g_vertices = 0;
    int h_vertices = 0;
    std::size_t h_edges = 0;
    int width = 0;
    std::size_t gates = 0;
    std::size_t wires = 0;
    BigInt size_bound;
    bool skew = false;
};

/// Per decomposition node: gate ids of <t,phi> and <t,phi>' indexed by the
/// mixed-radix code of phi over the sorted bag (first bag vertex is the
/// least significant digit, digit = image - 1).
struct NodeGates {
    std::vector<Vertex> bag;
    std::vector<GateId> main;
    std::vector<GateId> prime;
};

struct CompiledHom {
    Circuit circuit;
    CompileMeta meta;
    std::vector<NodeGates> tables; // filled only with CompileOptions::keep_tables
};

struct CompileOptions {
    bool keep_tables = false;
};

/// 2|V(G)| * |V(H)|^(width+1) * (2|V(H)| + 2|E(H)|)
BigInt compile_size_bound(int g_vertices, int h_vertices, std::size_t h_edges, int width);

/// Circuit over Z:u:a and Ye:a:b computing the sum over all homomorphisms
/// phi: G -> H of prod_u Z(u,phi(u)) * prod_{uv in E(G)} Y(phi(u),phi(v)).
/// Throws InvalidDecomposition when `d` is not a nice decomposition of G.
CompiledHom compile(const Graph& g, const NiceTreeDecomp& d, const Graph& h, const CompileOptions& opts = {});

/// Every Z input replaced by the constant 1.
Circuit specialize_Z(const CompiledHom& c);

/// Substitution target for one input label.
struct ProjTarget {
    enum class Kind { Zero, One, Var } kind = Kind::One;
    VarLabel var;

    static ProjTarget zero() { return {Kind::Zero, {}}; }
    static ProjTarget one() { return {Kind::One, {}}; }
    static ProjTarget to(VarLabel v) { return {Kind::Var, std::move(v)}; }
};

/// Rewrites every input gate through `sigma`; the gate structure and ids are
/// unchanged. Labels missing from a map-based sigma are kept as they are.
Circuit project(const Circuit& c, const std::function<ProjTarget(const VarLabel&)>& sigma);
Circuit project(const Circuit& c, const std::map<VarLabel, ProjTarget>& sigma);

} // namespace homforge
