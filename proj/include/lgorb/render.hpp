#ifndef LGORB_RENDER_HPP
#define LGORB_RENDER_HPP

// Deterministic plain-text and CSV rendering.  Tables are emitted in
// ascending (p,q) order, exponents as reduced fractions, so output is
// byte-stable across runs and worker counts.  An optional display scale k
// multiplies every exponent (useful to clear denominators).

#include <fstream>
#include <set>
#include <sstream>
#include <string>

#include "oracle.hpp"
#include "poincare.hpp"
#include "problem.hpp"
#include "qhpoly.hpp"
#include "rational.hpp"

namespace lgorb {

namespace detail {

// "2/3"; with scale, "(p*scale)" reduced again.
inline std::string scaled_fraction(const Rational& r, long scale) {
    return rational_str(r * scale);
}

// One power factor for the polynomial string: "", "u", "u^2", "u^(2/3)".
inline std::string power_str(const char* var, const Rational& e, long scale) {
    Rational s = e * scale;
    if (s == 0) return "";
    std::string out = var;
    if (s == 1) return out;
    if (is_integer(s)) return out + "^" + rational_str(s);
    return out + "^(" + rational_str(s) + ")";
}

} // namespace detail

// P(u,v) as one line: "1 + v^3 + 101 u v + ...", terms in (p,q) order.
inline std::string poincare_string(const BigradedTable& t, long scale = 1) {
    if (t.entries.empty()) return "0";
    std::ostringstream out;
    bool first = true;
    for (const auto& [pq, v] : t.entries) {
        long coeff = v;
        if (first) {
            if (coeff < 0) {
                out << "-";
                coeff = -coeff;
            }
            first = false;
        } else {
            out << (coeff < 0 ? " - " : " + ");
            if (coeff < 0) coeff = -coeff;
        }
        std::string us = detail::power_str("u", pq.first, scale);
        std::string vs = detail::power_str("v", pq.second, scale);
        if (coeff != 1 || (us.empty() && vs.empty())) out << coeff;
        if (!us.empty()) out << (coeff != 1 ? " " : "") << us;
        if (!vs.empty()) out << (us.empty() && coeff == 1 ? "" : " ") << vs;
    }
    return out.str();
}

// CSV with header p,q,h; fractions like 1/3 are legal in p and q.
inline std::string hodge_csv(const BigradedTable& t, long scale = 1) {
    std::ostringstream out;
    out << "p,q,h\n";
    for (const auto& [pq, v] : t.entries)
        out << detail::scaled_fraction(pq.first, scale) << ","
            << detail::scaled_fraction(pq.second, scale) << "," << v << "\n";
    return out.str();
}

// Aligned text table: one "h^{p,q} = v" line per entry.
inline std::string hodge_text(const BigradedTable& t, long scale = 1) {
    std::ostringstream out;
    for (const auto& [pq, v] : t.entries)
        out << "h^{" << detail::scaled_fraction(pq.first, scale) << ","
            << detail::scaled_fraction(pq.second, scale) << "} = " << v << "\n";
    if (t.entries.empty()) out << "(empty table)\n";
    return out.str();
}

inline std::string weights_text(const QHPoly& w) {
    std::ostringstream out;
    out << "variables: " << w.vars() << "\n";
    out << "weights:";
    for (long wi : w.weights()) out << " " << wi;
    out << "\ndegree: " << w.degree() << "\n";
    out << "charges:";
    for (const auto& q : w.charges()) out << " " << rational_str(q);
    out << "\ncharge sum: " << rational_str(w.charge_sum()) << "\n";
    out << "central charge: " << rational_str(w.central_charge()) << "\n";
    out << "calabi-yau: " << (w.is_calabi_yau() ? "yes" : "no") << "\n";
    out << "generalized calabi-yau: " << (w.is_generalized_calabi_yau() ? "yes" : "no") << "\n";
    switch (w.nondegeneracy_status()) {
        case NondegStatus::Certified: {
            out << "nondegeneracy: certified (";
            auto atoms = w.atoms();
            for (std::size_t i = 0; i < atoms.size(); ++i)
                out << (i ? " + " : "") << atoms[i].to_string();
            out << ")\n";
            break;
        }
        case NondegStatus::NecessaryOnly:
            out << "nondegeneracy: necessary conditions hold (assumed)\n";
            break;
        case NondegStatus::Suspect:
            out << "nondegeneracy: suspect\n";
            break;
    }
    return out.str();
}

inline std::string group_text(const MatGroup& g) {
    std::ostringstream out;
    out << "order: " << g.size() << "\n";
    out << "classes: " << g.classes().size() << "\n";
    out << "abelian: " << (g.is_abelian() ? "yes" : "no") << "\n";
    out << "inside SL: " << (g.is_sl() ? "yes" : "no") << "\n";
    out << "cyclotomic conductor: " << g.ambient_conductor() << "\n";
    out << "class sizes:";
    for (const auto& c : g.classes()) out << " " << c.members.size();
    out << "\n";
    return out.str();
}

// Inverse of hodge_csv: parse "p,q,h" rows with integer or a/b entries.
// Duplicate bidegrees are rejected; '#' comments and blank lines allowed.
inline BigradedTable parse_table_csv(const std::string& text) {
    auto parse_fraction = [](const std::string& s, std::size_t line) -> Rational {
        std::size_t slash = s.find('/');
        try {
            if (slash == std::string::npos) {
                std::size_t used = 0;
                long v = std::stol(s, &used);
                if (used != s.size()) throw std::invalid_argument(s);
                return Rational(v);
            }
            std::size_t used_n = 0, used_d = 0;
            std::string ns = s.substr(0, slash), ds = s.substr(slash + 1);
            long num = std::stol(ns, &used_n);
            long den = std::stol(ds, &used_d);
            if (used_n != ns.size() || used_d != ds.size()) throw std::invalid_argument(s);
            return make_rational(num, den);
        } catch (const Error&) {
            throw;
        } catch (const std::exception&) {
            fail(ErrorKind::ParseError,
                 "line " + std::to_string(line) + ": expected a number, got '" + s + "'");
        }
    };

    std::istringstream in(text);
    std::string raw;
    std::size_t lineno = 0;
    bool saw_header = false;
    BigradedTable t;
    std::set<std::pair<Rational, Rational>> seen;
    while (std::getline(in, raw)) {
        ++lineno;
        std::size_t hash = raw.find('#');
        if (hash != std::string::npos) raw.erase(hash);
        std::string line = detail::strip(raw);
        if (line.empty()) continue;
        if (!saw_header) {
            if (line != "p,q,h")
                fail(ErrorKind::ParseError,
                     "line " + std::to_string(lineno) + ": expected header p,q,h");
            saw_header = true;
            continue;
        }
        std::vector<std::string> cells = detail::split_args(line, lineno);
        if (cells.size() != 3)
            fail(ErrorKind::ParseError,
                 "line " + std::to_string(lineno) + ": expected three comma-separated fields");
        Rational p = parse_fraction(cells[0], lineno);
        Rational q = parse_fraction(cells[1], lineno);
        std::size_t used = 0;
        long h = 0;
        try {
            h = std::stol(cells[2], &used);
        } catch (const std::exception&) {
            used = std::string::npos;
        }
        if (used != cells[2].size())
            fail(ErrorKind::ParseError,
                 "line " + std::to_string(lineno) + ": expected an integer count, got '" +
                     cells[2] + "'");
        if (!seen.insert(std::make_pair(p, q)).second)
            fail(ErrorKind::ParseError, "line " + std::to_string(lineno) +
                                            ": duplicate bidegree (" + rational_str(p) + "," +
                                            rational_str(q) + ")");
        t.add(p, q, h);
    }
    if (!saw_header) fail(ErrorKind::ParseError, "empty table: missing p,q,h header");
    return t;
}

inline BigradedTable load_table_csv(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) fail(ErrorKind::ParseError, "cannot open table file '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_table_csv(buf.str());
}

inline std::string sectors_text(const OrbifoldData& d, long scale = 1) {
    std::ostringstream out;
    for (const auto& s : d.sectors) {
        out << "sector " << s.class_index << ": order " << s.rep_order << ", class size "
            << s.class_size << ", centralizer " << s.centralizer_size << ", fixed "
            << s.n_fixed << ", age " << rational_str(s.age_g) << ", inverse age "
            << rational_str(s.age_ginv) << ", moved charge " << rational_str(s.moved)
            << "\n";
        out << "  contributes: " << poincare_string(s.table, scale) << "\n";
    }
    return out.str();
}

} // namespace lgorb

#endif // LGORB_RENDER_HPP
