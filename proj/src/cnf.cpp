#include "homforge/cnf.hpp"

#include "homforge/error.hpp"

#include <charconv>
#include <cstdlib>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>

namespace homforge {

bool Cnf::satisfied_by(const std::vector<bool>& a) const {
    for (const auto& c : clauses) {
        bool sat = false;
        for (int lit : c)
            sat = sat || (lit > 0 ? a[lit - 1] : !a[-lit - 1]);
        if (!sat)
            return false;
    }
    return true;
}

Cnf read_dimacs(std::istream& in) {
    Cnf f;
    std::string line;
    std::size_t lineno = 0;
    bool header = false;
    long declared = 0;
    std::vector<int> pending;
    auto flush = [&] {
        if (pending.empty())
            throw ParseError("empty clause", lineno);
        if (pending.size() > 3)
            throw ParseError("clause has more than 3 literals", lineno);
        while (pending.size() < 3)
            pending.push_back(pending.back());
        f.clauses.push_back({pending[0], pending[1], pending[2]});
        pending.clear();
    };
    while (std::getline(in, line)) {
        ++lineno;
        std::istringstream ss(line);
        std::string tok;
        if (!(ss >> tok) || tok == "c" || tok[0] == '#')
            continue;
        if (tok == "p") {
            std::string fmt;
            long n = -1;
            if (!(ss >> fmt >> n >> declared) || fmt != "cnf" || n < 0 || declared < 0)
                throw ParseError("expected 'p cnf <n> <m>'", lineno);
            f.n = static_cast<int>(n);
            header = true;
            continue;
        }
        if (!header)
            throw ParseError("clause before the 'p cnf' header", lineno);
        do {
            long lit = 0;
            auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), lit);
            if (ec != std::errc{} || ptr != tok.data() + tok.size())
                throw ParseError("expected a literal, got '" + tok + "'", lineno);
            if (lit == 0) {
                flush();
                continue;
            }
            if (std::labs(lit) > f.n)
                throw ParseError("literal " + tok + " exceeds the declared variable count", lineno);
            pending.push_back(static_cast<int>(lit));
        } while (ss >> tok);
    }
    if (!header)
        throw ParseError("missing 'p cnf' header", lineno);
    if (!pending.empty())
        flush();
    if (static_cast<long>(f.clauses.size()) != declared)
        throw ParseError("header declares " + std::to_string(declared) + " clauses, found " +
                             std::to_string(f.clauses.size()),
                         lineno);
    return f;
}

void write_dimacs(std::ostream& out, const Cnf& f) {
    out << "p cnf " << f.n << ' ' << f.clauses.size() << '\n';
    for (const auto& c : f.clauses)
        out << c[0] << ' ' << c[1] << ' ' << c[2] << " 0\n";
}

} // namespace homforge
