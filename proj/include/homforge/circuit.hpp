#pragma once

#include "homforge/error.hpp"
#include "homforge/ring.hpp"
#include "homforge/sparse_poly.hpp"
#include "homforge/var_label.hpp"

#include <concepts>
#include <cstdint>
#include <functional>
#include <iosfwd>
#include <map>
#include <optional>
#include <span>
#include <vector>

namespace homforge {

using GateId = std::uint32_t;

enum class GateKind : std::uint8_t { Const, Input, Add, Mul };

struct Gate {
    GateKind kind = GateKind::Const;
    std::int64_t value = 0;        // Const
    std::uint32_t label = 0;       // Input: index into Circuit::labels()
    std::vector<GateId> children;  // Add / Mul
};

/// Arithmetic circuit stored in topological order: every child id is smaller
/// than its parent's id. Input labels are interned per circuit.
class Circuit {
public:
    GateId add_const(std::int64_t value);
    GateId add_input(const VarLabel& label);
    GateId add_add(std::vector<GateId> children);
    GateId add_mul(std::vector<GateId> children);
    void set_output(GateId g);

    std::size_t size() const noexcept { return gates_.size(); }
    std::size_t num_wires() const noexcept;
    const Gate& gate(GateId g) const { return gates_.at(g); }
    const std::vector<Gate>& gates() const noexcept { return gates_; }
    GateId output() const;
    bool has_output() const noexcept { return output_.has_value(); }

    const std::vector<VarLabel>& labels() const noexcept { return labels_; }
    const VarLabel& label_of(GateId g) const { return labels_.at(gates_.at(g).label); }

    /// Replaces gate g in place (used by projection); keeps ids stable.
    void replace_with_const(GateId g, std::int64_t value);
    void replace_with_input(GateId g, const VarLabel& label);

    /// Throws Error if the topological / fan-in / output invariants fail.
    void validate() const;

    friend bool operator==(const Circuit& a, const Circuit& b);

private:
    GateId push(Gate g);
    std::uint32_t intern(const VarLabel& label);

    std::vector<Gate> gates_;
    std::vector<VarLabel> labels_;
    std::map<VarLabel, std::uint32_t> label_index_;
    std::optional<GateId> output_;
};

bool operator==(const Gate& a, const Gate& b);

/// Evaluates every gate bottom-up and returns the output value. `lookup`
/// maps a label to an optional ring value; an unassigned label throws.
template <RingContext R, std::invocable<const VarLabel&> Lookup>
typename R::value_type evaluate(const Circuit& c, const R& ring, Lookup&& lookup) {
    using V = typename R::value_type;
    std::vector<V> inputs;
    inputs.reserve(c.labels().size());
    for (const auto& label : c.labels()) {
        std::optional<V> v = lookup(label);
        if (!v)
            throw Error("unassigned variable " + label.to_string());
        inputs.push_back(std::move(*v));
    }
    std::vector<V> values;
    values.reserve(c.size());
    for (const Gate& g : c.gates()) {
        switch (g.kind) {
        case GateKind::Const:
            values.push_back(ring.from_int(g.value));
            break;
        case GateKind::Input:
            values.push_back(inputs[g.label]);
            break;
        case GateKind::Add: {
            V acc = values[g.children[0]];
            for (std::size_t i = 1; i < g.children.size(); ++i)
                acc = ring.add(acc, values[g.children[i]]);
            values.push_back(std::move(acc));
            break;
        }
        case GateKind::Mul: {
            V acc = values[g.children[0]];
            for (std::size_t i = 1; i < g.children.size(); ++i)
                ring_mul_into(ring, acc, values[g.children[i]]);
            values.push_back(std::move(acc));
            break;
        }
        }
    }
    return values[c.output()];
}

template <RingContext R>
typename R::value_type evaluate(const Circuit& c, const R& ring,
                                const std::map<VarLabel, typename R::value_type>& assignment) {
    return evaluate(c, ring, [&](const VarLabel& v) -> std::optional<typename R::value_type> {
        auto it = assignment.find(v);
        if (it == assignment.end())
            return std::nullopt;
        return it->second;
    });
}

/// Expanded polynomial over the integers. Throws BudgetExceeded when any
/// intermediate polynomial has more than `term_bound` monomials.
IntPoly eval_symbolic(const Circuit& c, std::size_t term_bound = 1'000'000);
/// Expanded polynomial with coefficients reduced into `field`.
FieldPoly eval_symbolic(const Circuit& c, const Field& field, std::size_t term_bound = 1'000'000);

/// Every Mul gate has at most one child that is itself an Add or Mul gate.
bool check_skew(const Circuit& c);
/// For every Mul gate, the sub-circuits below its children are pairwise disjoint.
bool check_mult_disjoint(const Circuit& c);
/// Every Const gate holds 0 or 1.
bool is_constant_free(const Circuit& c);

struct ParseTree {
    std::vector<GateId> gates; // sorted
    BigInt coefficient;        // product of constant leaves
    Monomial monomial;         // product of input leaves
};

/// Parse trees of a multiplicatively disjoint circuit, reachable from the
/// output. Throws PreconditionError if the circuit is not multiplicatively
/// disjoint and BudgetExceeded if there are more than `bound` trees.
std::vector<ParseTree> enumerate_parse_trees(const Circuit& c, std::size_t bound);
/// Number of parse trees (no enumeration).
BigInt count_parse_trees(const Circuit& c);

/// Text format: `gate <id> const <v>` | `gate <id> input <label>` |
/// `gate <id> add <ids..>` | `gate <id> mul <ids..>` | `output <id>`.
/// Blank lines and lines starting with '#' are ignored.
Circuit read_circuit(std::istream& in);
void write_circuit(std::ostream& out, const Circuit& c);

} // namespace homforge
