#ifndef LGORB_PROBLEM_HPP
#define LGORB_PROBLEM_HPP

// Problem files: a small line-oriented text format describing one orbifold
// instance.  Three sections, each introduced by a bare header line:
//
//   polynomial:
//     <coeff> ; e1 e2 ... en        one monomial per line, scalar syntax
//   group:
//     J                             the grading operator diag(zeta_d^{w_i})
//     A1 ... A5                     built-in five-variable matrices
//     [name =] diag(s1, ..., sn)    diagonal matrix, scalar entries
//     [name =] perm(p1 p2 ... pn)   x_i -> x_{p_i}, 1-based
//     [name =] mat([...], ..., [...]) dense rows, scalar entries
//   options:
//     cap = N                       group closure element cap
//     oracle_bound = N              oracle state-enumeration budget
//     assert_nondegenerate = bool   require certified nondegeneracy
//
// '#' starts a comment anywhere; blank lines are ignored; unknown sections,
// options, or malformed lines raise ParseError with the line number.

#include <cctype>
#include <fstream>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "cyclotomic.hpp"
#include "error.hpp"
#include "matgroup.hpp"
#include "qhpoly.hpp"

namespace lgorb {

struct ProblemOptions {
    long cap = kDefaultGroupCap;
    long oracle_bound = 10000000;
    bool assert_nondegenerate = false;
};

struct Problem {
    QHPoly poly;
    std::vector<std::pair<std::string, Mat>> generators;
    ProblemOptions options;
};

namespace detail {

[[noreturn]] inline void parse_fail(std::size_t line, const std::string& what) {
    fail(ErrorKind::ParseError, "line " + std::to_string(line) + ": " + what);
}

inline std::string strip(const std::string& s) {
    std::size_t a = s.find_first_not_of(" \t\r");
    if (a == std::string::npos) return "";
    std::size_t b = s.find_last_not_of(" \t\r");
    return s.substr(a, b - a + 1);
}

// Split on commas at parenthesis/bracket depth zero.
inline std::vector<std::string> split_args(const std::string& s, std::size_t line) {
    std::vector<std::string> out;
    std::string cur;
    long depth = 0;
    for (char ch : s) {
        if (ch == '(' || ch == '[') ++depth;
        if (ch == ')' || ch == ']') --depth;
        if (depth < 0) parse_fail(line, "unbalanced parentheses");
        if (ch == ',' && depth == 0) {
            out.push_back(strip(cur));
            cur.clear();
        } else {
            cur += ch;
        }
    }
    if (depth != 0) parse_fail(line, "unbalanced parentheses");
    out.push_back(strip(cur));
    return out;
}

inline long parse_long(const std::string& s, std::size_t line, const std::string& what) {
    try {
        std::size_t used = 0;
        long v = std::stol(s, &used);
        if (used != s.size()) parse_fail(line, what + ": trailing characters in '" + s + "'");
        return v;
    } catch (const Error&) {
        throw;
    } catch (const std::exception&) {
        parse_fail(line, what + ": expected an integer, got '" + s + "'");
    }
}

// The grammar `head(interior)` with nothing outside.
inline bool match_call(const std::string& s, const std::string& head, std::string& interior) {
    if (s.size() < head.size() + 2 || s.compare(0, head.size(), head) != 0) return false;
    if (s[head.size()] != '(' || s.back() != ')') return false;
    interior = s.substr(head.size() + 1, s.size() - head.size() - 2);
    return true;
}

inline Mat parse_generator_expr(const std::string& expr, long n, std::size_t line) {
    std::string interior;
    if (match_call(expr, "diag", interior)) {
        std::vector<std::string> args = split_args(interior, line);
        if (static_cast<long>(args.size()) != n)
            parse_fail(line, "diag needs " + std::to_string(n) + " entries, got " +
                                 std::to_string(args.size()));
        std::vector<Cyclotomic> d;
        for (const auto& a : args) {
            try {
                d.push_back(parse_scalar(a));
            } catch (const Error& e) {
                parse_fail(line, e.message());
            }
        }
        return Mat::diagonal(d);
    }
    if (match_call(expr, "perm", interior)) {
        for (char& ch : interior)
            if (ch == ',') ch = ' ';
        std::istringstream in(interior);
        std::vector<long> target;
        std::string tok;
        while (in >> tok) target.push_back(parse_long(tok, line, "perm entry"));
        if (static_cast<long>(target.size()) != n)
            parse_fail(line, "perm needs " + std::to_string(n) + " entries, got " +
                                 std::to_string(target.size()));
        std::vector<long> seen(static_cast<std::size_t>(n), 0);
        for (long& t : target) {
            if (t < 1 || t > n) parse_fail(line, "perm entry " + std::to_string(t) + " out of range");
            if (seen[static_cast<std::size_t>(t - 1)]++)
                parse_fail(line, "perm entry " + std::to_string(t) + " repeated");
            --t;  // to 0-based
        }
        return Mat::permutation(target);
    }
    if (match_call(expr, "mat", interior)) {
        std::vector<std::string> rows = split_args(interior, line);
        if (static_cast<long>(rows.size()) != n)
            parse_fail(line, "mat needs " + std::to_string(n) + " rows, got " +
                                 std::to_string(rows.size()));
        Mat m(n);
        for (long i = 0; i < n; ++i) {
            const std::string& row = rows[static_cast<std::size_t>(i)];
            if (row.size() < 2 || row.front() != '[' || row.back() != ']')
                parse_fail(line, "mat row " + std::to_string(i + 1) + " must be [ ... ]");
            std::vector<std::string> cells = split_args(row.substr(1, row.size() - 2), line);
            if (static_cast<long>(cells.size()) != n)
                parse_fail(line, "mat row " + std::to_string(i + 1) + " needs " +
                                     std::to_string(n) + " entries");
            for (long j = 0; j < n; ++j) {
                try {
                    m.at(i, j) = parse_scalar(cells[static_cast<std::size_t>(j)]);
                } catch (const Error& e) {
                    parse_fail(line, e.message());
                }
            }
        }
        return m;
    }
    parse_fail(line, "expected diag(...), perm(...), or mat(...), got '" + expr + "'");
}

// The five-variable built-in matrices A1..A5 (index 1-5).
inline Mat builtin_matrix(long index) {
    const Cyclotomic z8 = Cyclotomic::zeta(8);
    const Cyclotomic z3 = Cyclotomic::zeta(3);
    const Cyclotomic half_sqrt2 = (Cyclotomic::zeta(8, 1) + Cyclotomic::zeta(8, 7))
                                      .scaled(make_rational(1, 2));  // 1/sqrt(2)
    Mat m(5);
    switch (index) {
        case 1:
            m.at(0, 0) = z8.pow(3);
            m.at(1, 1) = z8;
            m.at(2, 3) = Cyclotomic(1);
            m.at(3, 2) = Cyclotomic(1);
            m.at(4, 4) = Cyclotomic(1);
            return m;
        case 2:
            m.at(0, 1) = Cyclotomic(1);
            m.at(1, 0) = Cyclotomic(-1);
            m.at(2, 2) = Cyclotomic(1);
            m.at(3, 3) = Cyclotomic(1);
            m.at(4, 4) = Cyclotomic(1);
            return m;
        case 3:
            m.at(0, 0) = Cyclotomic(0) - half_sqrt2 * z8;
            m.at(0, 1) = half_sqrt2 * z8;
            m.at(1, 0) = half_sqrt2 * z8.pow(3);
            m.at(1, 1) = half_sqrt2 * z8.pow(3);
            m.at(2, 2) = z3;
            m.at(3, 3) = z3.pow(2);
            m.at(4, 4) = Cyclotomic(1);
            return m;
        case 4:
            m.at(0, 1) = Cyclotomic(1);
            m.at(1, 2) = Cyclotomic(1);
            m.at(2, 0) = Cyclotomic(1);
            m.at(3, 3) = z3;
            m.at(4, 4) = z3.pow(2);
            return m;
        case 5:
            m.at(0, 0) = z3.pow(2);
            m.at(1, 1) = z3;
            m.at(2, 3) = Cyclotomic(1);
            m.at(3, 4) = Cyclotomic(1);
            m.at(4, 2) = Cyclotomic(1);
            return m;
        default:
            internal_check(false, "builtin matrix index out of range");
    }
    return m;  // unreachable
}

inline bool is_identifier(const std::string& s) {
    if (s.empty()) return false;
    if (!std::isalpha(static_cast<unsigned char>(s[0])) && s[0] != '_') return false;
    for (char ch : s)
        if (!std::isalnum(static_cast<unsigned char>(ch)) && ch != '_') return false;
    return true;
}

} // namespace detail

inline Problem parse_problem(const std::string& text) {
    enum class Section { None, Polynomial, Group, Options };
    Section section = Section::None;

    std::vector<Monomial> monomials;
    long n_vars = -1;
    // group lines are collected first: builtins and J need the polynomial
    std::vector<std::pair<std::string, std::size_t>> group_lines;
    ProblemOptions options;
    bool saw_poly_header = false, saw_group_header = false, saw_options_header = false;

    std::istringstream in(text);
    std::string raw;
    std::size_t lineno = 0;
    while (std::getline(in, raw)) {
        ++lineno;
        std::size_t hash = raw.find('#');
        if (hash != std::string::npos) raw.erase(hash);
        std::string line = detail::strip(raw);
        if (line.empty()) continue;

        if (line == "polynomial:") {
            if (saw_poly_header) detail::parse_fail(lineno, "duplicate polynomial section");
            saw_poly_header = true;
            section = Section::Polynomial;
            continue;
        }
        if (line == "group:") {
            if (saw_group_header) detail::parse_fail(lineno, "duplicate group section");
            saw_group_header = true;
            section = Section::Group;
            continue;
        }
        if (line == "options:") {
            if (saw_options_header) detail::parse_fail(lineno, "duplicate options section");
            saw_options_header = true;
            section = Section::Options;
            continue;
        }
        if (line.size() > 1 && line.back() == ':' && line.find_first_of(" \t=(") == std::string::npos)
            detail::parse_fail(lineno, "unknown section '" + line + "'");

        switch (section) {
            case Section::None:
                detail::parse_fail(lineno, "content before the first section header");
            case Section::Polynomial: {
                std::size_t semi = line.find(';');
                if (semi == std::string::npos)
                    detail::parse_fail(lineno, "monomial lines read 'coeff ; e1 e2 ... en'");
                Cyclotomic coeff;
                try {
                    coeff = parse_scalar(detail::strip(line.substr(0, semi)));
                } catch (const Error& e) {
                    detail::parse_fail(lineno, e.message());
                }
                if (coeff.is_zero()) detail::parse_fail(lineno, "zero coefficient");
                std::istringstream es(line.substr(semi + 1));
                std::vector<long> exps;
                std::string tok;
                while (es >> tok) {
                    long e = detail::parse_long(tok, lineno, "exponent");
                    if (e < 0) detail::parse_fail(lineno, "negative exponent");
                    exps.push_back(e);
                }
                if (exps.empty()) detail::parse_fail(lineno, "monomial without exponents");
                if (n_vars < 0) n_vars = static_cast<long>(exps.size());
                if (static_cast<long>(exps.size()) != n_vars)
                    detail::parse_fail(lineno, "expected " + std::to_string(n_vars) +
                                                   " exponents, got " +
                                                   std::to_string(exps.size()));
                monomials.push_back({coeff, exps});
                break;
            }
            case Section::Group:
                group_lines.emplace_back(line, lineno);
                break;
            case Section::Options: {
                std::size_t eq = line.find('=');
                if (eq == std::string::npos)
                    detail::parse_fail(lineno, "option lines read 'key = value'");
                std::string key = detail::strip(line.substr(0, eq));
                std::string value = detail::strip(line.substr(eq + 1));
                if (key == "cap") {
                    options.cap = detail::parse_long(value, lineno, "cap");
                    if (options.cap < 1) detail::parse_fail(lineno, "cap must be positive");
                } else if (key == "oracle_bound") {
                    options.oracle_bound = detail::parse_long(value, lineno, "oracle_bound");
                    if (options.oracle_bound < 1)
                        detail::parse_fail(lineno, "oracle_bound must be positive");
                } else if (key == "assert_nondegenerate") {
                    if (value == "true")
                        options.assert_nondegenerate = true;
                    else if (value == "false")
                        options.assert_nondegenerate = false;
                    else
                        detail::parse_fail(lineno, "assert_nondegenerate must be true or false");
                } else {
                    detail::parse_fail(lineno, "unknown option '" + key + "'");
                }
                break;
            }
        }
    }

    if (!saw_poly_header) fail(ErrorKind::ParseError, "missing polynomial section");
    if (monomials.empty()) fail(ErrorKind::ParseError, "polynomial section is empty");
    if (!saw_group_header) fail(ErrorKind::ParseError, "missing group section");
    if (group_lines.empty()) fail(ErrorKind::ParseError, "group section needs a generator");

    Problem prob{QHPoly(std::move(monomials)), {}, options};
    long n = prob.poly.vars();

    for (const auto& [line, lno] : group_lines) {
        std::string name, expr = line;
        std::size_t eq = line.find('=');
        if (eq != std::string::npos &&
            detail::is_identifier(detail::strip(line.substr(0, eq)))) {
            name = detail::strip(line.substr(0, eq));
            expr = detail::strip(line.substr(eq + 1));
        }
        if (expr == "J") {
            prob.generators.emplace_back(name.empty() ? "J" : name,
                                         prob.poly.grading_operator());
        } else if (expr.size() == 2 && expr[0] == 'A' && expr[1] >= '1' && expr[1] <= '5') {
            if (n != 5)
                detail::parse_fail(lno, std::string(1, expr[0]) + expr[1] +
                                            " is a five-variable matrix, problem has " +
                                            std::to_string(n));
            prob.generators.emplace_back(name.empty() ? expr : name,
                                         detail::builtin_matrix(expr[1] - '0'));
        } else {
            prob.generators.emplace_back(
                name.empty() ? "g" + std::to_string(prob.generators.size() + 1) : name,
                detail::parse_generator_expr(expr, n, lno));
        }
    }
    return prob;
}

inline Problem load_problem(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) fail(ErrorKind::ParseError, "cannot open problem file '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_problem(buf.str());
}

// Close the generators into the full group under the problem's cap.
inline MatGroup problem_group(const Problem& prob) {
    std::vector<Mat> gens;
    for (const auto& [name, m] : prob.generators) gens.push_back(m);
    return MatGroup::closure(gens, prob.options.cap);
}

} // namespace lgorb

#endif // LGORB_PROBLEM_HPP
