#pragma once

#include <array>
#include <compare>
#include <cstdint>
#include <string>
#include <string_view>

namespace homforge {

enum class VarKind : std::uint8_t {
    Z,       // Z:u:a   placement of source vertex u on target vertex a
    EdgeY,   // Ye:a:b  target edge, canonical a < b
    VertexY, // Yv:v
    ClauseY, // Yc:l1:l2:l3, signed literals
    X,       // X:i, X:a:b (canonical), X:a:b:c
    Scalar,  // z, t, y
    Free,
};

/// Variable name from the shared registry. Text syntax: `Z:u:a`, `Ye:a:b`,
/// `Yv:v`, `Yc:l1:l2:l3`, `X:i`, `X:a:b`, `X:a:b:c`, `z`, `t`, `y`, or a free
/// identifier.
class VarLabel {
public:
    VarLabel() = default;

    static VarLabel z(std::int64_t u, std::int64_t a);
    static VarLabel edge_y(std::int64_t a, std::int64_t b);
    static VarLabel vertex_y(std::int64_t v);
    static VarLabel clause_y(std::int64_t l1, std::int64_t l2, std::int64_t l3);
    static VarLabel x(std::int64_t i);
    static VarLabel x_edge(std::int64_t a, std::int64_t b);
    static VarLabel x_hyper(std::int64_t a, std::int64_t b, std::int64_t c);
    static VarLabel scalar(char name);
    static VarLabel free(std::string name);
    static VarLabel parse(std::string_view text);

    VarKind kind() const noexcept { return kind_; }
    std::uint8_t arity() const noexcept { return arity_; }
    std::int64_t index(std::size_t i) const { return idx_.at(i); }
    const std::string& name() const noexcept { return name_; }

    std::string to_string() const;

    friend auto operator<=>(const VarLabel&, const VarLabel&) = default;
    friend bool operator==(const VarLabel&, const VarLabel&) = default;

private:
    VarLabel(VarKind kind, std::uint8_t arity, std::array<std::int64_t, 3> idx, std::string name = {})
        : kind_(kind), arity_(arity), idx_(idx), name_(std::move(name)) {}

    VarKind kind_ = VarKind::Free;
    std::uint8_t arity_ = 0;
    std::array<std::int64_t, 3> idx_{};
    std::string name_;
};

} // namespace homforge
