#include "homforge/var_label.hpp"

#include "homforge/error.hpp"

#include <algorithm>
#include <charconv>
#include <vector>

namespace homforge {

VarLabel VarLabel::z(std::int64_t u, std::int64_t a) { return VarLabel(VarKind::Z, 2, {u, a, 0}); }

VarLabel VarLabel::edge_y(std::int64_t a, std::int64_t b) {
    if (a == b)
        throw Error("edge variable on a self-loop");
    return VarLabel(VarKind::EdgeY, 2, {std::min(a, b), std::max(a, b), 0});
}

VarLabel VarLabel::vertex_y(std::int64_t v) { return VarLabel(VarKind::VertexY, 1, {v, 0, 0}); }

VarLabel VarLabel::clause_y(std::int64_t l1, std::int64_t l2, std::int64_t l3) {
    if (l1 == 0 || l2 == 0 || l3 == 0)
        throw Error("clause literals are nonzero signed variable indices");
    return VarLabel(VarKind::ClauseY, 3, {l1, l2, l3});
}

VarLabel VarLabel::x(std::int64_t i) { return VarLabel(VarKind::X, 1, {i, 0, 0}); }

VarLabel VarLabel::x_edge(std::int64_t a, std::int64_t b) {
    if (a == b)
        throw Error("edge variable on a self-loop");
    return VarLabel(VarKind::X, 2, {std::min(a, b), std::max(a, b), 0});
}

VarLabel VarLabel::x_hyper(std::int64_t a, std::int64_t b, std::int64_t c) {
    return VarLabel(VarKind::X, 3, {a, b, c});
}

VarLabel VarLabel::scalar(char name) {
    if (name != 'z' && name != 't' && name != 'y')
        throw Error(std::string("unknown scalar variable '") + name + "'");
    return VarLabel(VarKind::Scalar, 0, {}, std::string(1, name));
}

VarLabel VarLabel::free(std::string name) {
    if (name.empty())
        throw Error("empty variable name");
    if (name.find(':') != std::string::npos || name.find_first_of(" \t\r\n") != std::string::npos)
        throw Error("free variable names may not contain ':' or whitespace: '" + name + "'");
    if (name == "z" || name == "t" || name == "y")
        return scalar(name[0]);
    return VarLabel(VarKind::Free, 0, {}, std::move(name));
}

VarLabel VarLabel::parse(std::string_view text) {
    std::vector<std::string_view> parts;
    std::size_t start = 0;
    while (true) {
        auto colon = text.find(':', start);
        parts.push_back(text.substr(start, colon == std::string_view::npos ? std::string_view::npos
                                                                          : colon - start));
        if (colon == std::string_view::npos)
            break;
        start = colon + 1;
    }
    if (parts.size() == 1)
        return free(std::string(text));

    std::vector<std::int64_t> nums;
    for (std::size_t i = 1; i < parts.size(); ++i) {
        std::int64_t v = 0;
        auto s = parts[i];
        auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
        if (s.empty() || ec != std::errc{} || ptr != s.data() + s.size())
            throw Error("bad index in variable label '" + std::string(text) + "'");
        nums.push_back(v);
    }
    auto head = parts[0];
    auto need = [&](std::size_t n) {
        if (nums.size() != n)
            throw Error("variable label '" + std::string(text) + "' needs " + std::to_string(n) + " indices");
    };
    if (head == "Z") {
        need(2);
        return z(nums[0], nums[1]);
    }
    if (head == "Ye") {
        need(2);
        return edge_y(nums[0], nums[1]);
    }
    if (head == "Yv") {
        need(1);
        return vertex_y(nums[0]);
    }
    if (head == "Yc") {
        need(3);
        return clause_y(nums[0], nums[1], nums[2]);
    }
    if (head == "X") {
        if (nums.size() == 1)
            return x(nums[0]);
        if (nums.size() == 2)
            return x_edge(nums[0], nums[1]);
        need(3);
        return x_hyper(nums[0], nums[1], nums[2]);
    }
    throw Error("unknown variable label prefix in '" + std::string(text) + "'");
}

std::string VarLabel::to_string() const {
    auto join = [&](const char* head) {
        std::string s = head;
        for (std::uint8_t i = 0; i < arity_; ++i)
            s += ":" + std::to_string(idx_[i]);
        return s;
    };
    switch (kind_) {
    case VarKind::Z:
        return join("Z");
    case VarKind::EdgeY:
        return join("Ye");
    case VarKind::VertexY:
        return join("Yv");
    case VarKind::ClauseY:
        return join("Yc");
    case VarKind::X:
        return join("X");
    case VarKind::Scalar:
    case VarKind::Free:
        return name_;
    }
    return name_;
}

} // namespace homforge
