#pragma once

#include <array>
#include <iosfwd>
#include <vector>

namespace homforge {

/// 3-CNF over variables 1..n; literals are signed indices. Each clause is an
/// ordered triple (shorter input clauses repeat their last literal).
struct Cnf {
    int n = 0;
    std::vector<std::array<int, 3>> clauses;

    bool satisfied_by(const std::vector<bool>& a) const; // a[i-1] = value of x_i
    friend bool operator==(const Cnf&, const Cnf&) = default;
};

/// DIMACS: `p cnf <n> <m>` then clauses terminated by 0; `c` lines are comments.
Cnf read_dimacs(std::istream& in);
void write_dimacs(std::ostream& out, const Cnf& f);

} // namespace homforge
