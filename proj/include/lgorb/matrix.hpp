#ifndef LGORB_MATRIX_HPP
#define LGORB_MATRIX_HPP

// Dense square matrices over cyclotomic fields, with the exact linear
// algebra the group engine needs: products, determinants, inverses, and
// kernel bases via Gauss-Jordan elimination.  Everything is a value type;
// nothing here mutates shared state.

#include <string>
#include <vector>

#include "cyclotomic.hpp"
#include "error.hpp"

namespace lgorb {

struct Mat {
    long n = 0;
    std::vector<Cyclotomic> a;  // row-major, n*n entries

    Mat() = default;
    explicit Mat(long size) : n(size), a(static_cast<std::size_t>(size) * size) {}

    static Mat identity(long size) {
        Mat m(size);
        for (long i = 0; i < size; ++i) m.at(i, i) = Cyclotomic(1);
        return m;
    }

    static Mat diagonal(const std::vector<Cyclotomic>& entries) {
        Mat m(static_cast<long>(entries.size()));
        for (long i = 0; i < m.n; ++i) m.at(i, i) = entries[i];
        return m;
    }

    // x_i -> x_{target[i]}: row i carries a 1 in column target[i].
    static Mat permutation(const std::vector<long>& target) {
        Mat m(static_cast<long>(target.size()));
        for (long i = 0; i < m.n; ++i) {
            internal_check(target[i] >= 0 && target[i] < m.n, "permutation index out of range");
            m.at(i, target[i]) = Cyclotomic(1);
        }
        return m;
    }

    Cyclotomic& at(long i, long j) { return a[static_cast<std::size_t>(i) * n + j]; }
    const Cyclotomic& at(long i, long j) const { return a[static_cast<std::size_t>(i) * n + j]; }

    bool is_diagonal() const {
        for (long i = 0; i < n; ++i)
            for (long j = 0; j < n; ++j)
                if (i != j && !at(i, j).is_zero()) return false;
        return true;
    }

    bool is_identity() const {
        for (long i = 0; i < n; ++i)
            for (long j = 0; j < n; ++j)
                if (i == j ? !at(i, j).is_one() : !at(i, j).is_zero()) return false;
        return true;
    }

    Cyclotomic trace() const {
        Cyclotomic t(0);
        for (long i = 0; i < n; ++i) t += at(i, i);
        return t;
    }

    friend Mat operator*(const Mat& x, const Mat& y) {
        internal_check(x.n == y.n, "matrix size mismatch");
        Mat r(x.n);
        for (long i = 0; i < x.n; ++i)
            for (long k = 0; k < x.n; ++k) {
                const Cyclotomic& f = x.at(i, k);
                if (f.is_zero()) continue;
                for (long j = 0; j < x.n; ++j) {
                    const Cyclotomic& g = y.at(k, j);
                    if (g.is_zero()) continue;
                    r.at(i, j) += f * g;
                }
            }
        return r;
    }

    friend bool operator==(const Mat& x, const Mat& y) {
        if (x.n != y.n) return false;
        for (std::size_t i = 0; i < x.a.size(); ++i)
            if (x.a[i] != y.a[i]) return false;
        return true;
    }
    friend bool operator!=(const Mat& x, const Mat& y) { return !(x == y); }

    std::vector<Cyclotomic> apply(const std::vector<Cyclotomic>& v) const {
        internal_check(static_cast<long>(v.size()) == n, "vector size mismatch");
        std::vector<Cyclotomic> r(v.size());
        for (long i = 0; i < n; ++i)
            for (long j = 0; j < n; ++j)
                if (!at(i, j).is_zero() && !v[j].is_zero()) r[i] += at(i, j) * v[j];
        return r;
    }

    Mat pow(long e) const {
        internal_check(e >= 0, "matrix power wants e >= 0");
        Mat acc = identity(n), base = *this;
        while (e > 0) {
            if (e & 1) acc = acc * base;
            e >>= 1;
            if (e) base = base * base;
        }
        return acc;
    }

    // Deterministic canonical key over an explicit conductor (values equal
    // as matrices over Q(zeta_m) produce identical strings).
    std::string key_string(long m) const {
        std::string s = std::to_string(n) + ":";
        for (const auto& e : a) {
            s += e.key_string(m);
            s += ';';
        }
        return s;
    }

    std::string to_string() const {
        std::string s;
        for (long i = 0; i < n; ++i) {
            s += i == 0 ? "[" : " ";
            s += "[";
            for (long j = 0; j < n; ++j) {
                s += at(i, j).to_string();
                if (j + 1 < n) s += ", ";
            }
            s += "]";
            s += (i + 1 < n) ? ",\n" : "]";
        }
        return s;
    }
};

// Determinant by fraction-exact Gaussian elimination with row swaps.
inline Cyclotomic det(Mat m) {
    Cyclotomic result(1);
    for (long col = 0; col < m.n; ++col) {
        long pivot = -1;
        for (long r = col; r < m.n; ++r)
            if (!m.at(r, col).is_zero()) { pivot = r; break; }
        if (pivot < 0) return Cyclotomic(0);
        if (pivot != col) {
            for (long j = 0; j < m.n; ++j) std::swap(m.at(pivot, j), m.at(col, j));
            result = -result;
        }
        result *= m.at(col, col);
        Cyclotomic inv = m.at(col, col).inverse();
        for (long r = col + 1; r < m.n; ++r) {
            if (m.at(r, col).is_zero()) continue;
            Cyclotomic f = m.at(r, col) * inv;
            for (long j = col; j < m.n; ++j) m.at(r, j) -= f * m.at(col, j);
        }
    }
    return result;
}

// Inverse via Gauss-Jordan on [m | I]; throws NotInvertible when singular.
inline Mat inverse(Mat m) {
    Mat inv = Mat::identity(m.n);
    for (long col = 0; col < m.n; ++col) {
        long pivot = -1;
        for (long r = col; r < m.n; ++r)
            if (!m.at(r, col).is_zero()) { pivot = r; break; }
        if (pivot < 0) fail(ErrorKind::NotInvertible, "singular matrix");
        if (pivot != col)
            for (long j = 0; j < m.n; ++j) {
                std::swap(m.at(pivot, j), m.at(col, j));
                std::swap(inv.at(pivot, j), inv.at(col, j));
            }
        Cyclotomic s = m.at(col, col).inverse();
        for (long j = 0; j < m.n; ++j) {
            m.at(col, j) *= s;
            inv.at(col, j) *= s;
        }
        for (long r = 0; r < m.n; ++r) {
            if (r == col || m.at(r, col).is_zero()) continue;
            Cyclotomic f = m.at(r, col);
            for (long j = 0; j < m.n; ++j) {
                m.at(r, j) -= f * m.at(col, j);
                inv.at(r, j) -= f * inv.at(col, j);
            }
        }
    }
    return inv;
}

// Rank by Gaussian elimination (no back-substitution needed).
inline long rank(Mat m) {
    long r = 0;
    for (long col = 0; col < m.n && r < m.n; ++col) {
        long pivot = -1;
        for (long i = r; i < m.n; ++i)
            if (!m.at(i, col).is_zero()) { pivot = i; break; }
        if (pivot < 0) continue;
        if (pivot != r)
            for (long j = 0; j < m.n; ++j) std::swap(m.at(pivot, j), m.at(r, j));
        Cyclotomic inv = m.at(r, col).inverse();
        for (long i = r + 1; i < m.n; ++i) {
            if (m.at(i, col).is_zero()) continue;
            Cyclotomic f = m.at(i, col) * inv;
            for (long j = col; j < m.n; ++j) m.at(i, j) -= f * m.at(r, j);
        }
        ++r;
    }
    return r;
}

// Kernel of a square matrix as an RREF-derived basis.  Basis vector k has a
// 1 in its own free column and 0 in every other free column, so coordinates
// of any kernel vector in this basis can be read off the free positions.
struct KernelBasis {
    std::vector<std::vector<Cyclotomic>> vectors;  // each of length n
    std::vector<long> free_cols;                   // ascending, one per vector
};

inline KernelBasis kernel(Mat m) {
    long n = m.n;
    std::vector<long> pivot_col_of_row;
    long row = 0;
    for (long col = 0; col < n && row < n; ++col) {
        long pivot = -1;
        for (long r = row; r < n; ++r)
            if (!m.at(r, col).is_zero()) { pivot = r; break; }
        if (pivot < 0) continue;
        if (pivot != row)
            for (long j = 0; j < n; ++j) std::swap(m.at(pivot, j), m.at(row, j));
        Cyclotomic s = m.at(row, col).inverse();
        for (long j = 0; j < n; ++j) m.at(row, j) *= s;
        for (long r = 0; r < n; ++r) {
            if (r == row || m.at(r, col).is_zero()) continue;
            Cyclotomic f = m.at(r, col);
            for (long j = 0; j < n; ++j) m.at(r, j) -= f * m.at(row, j);
        }
        pivot_col_of_row.push_back(col);
        ++row;
    }
    KernelBasis out;
    std::vector<bool> is_pivot(n, false);
    for (long c : pivot_col_of_row) is_pivot[c] = true;
    for (long col = 0; col < n; ++col) {
        if (is_pivot[col]) continue;
        std::vector<Cyclotomic> v(n);
        v[col] = Cyclotomic(1);
        for (std::size_t r = 0; r < pivot_col_of_row.size(); ++r)
            v[pivot_col_of_row[r]] = -m.at(static_cast<long>(r), col);
        out.vectors.push_back(std::move(v));
        out.free_cols.push_back(col);
    }
    return out;
}

} // namespace lgorb

#endif // LGORB_MATRIX_HPP
