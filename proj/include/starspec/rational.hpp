#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstddef>
#include <initializer_list>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace starspec {

using Integer = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

using IVec = std::vector<long long>;
using QVec = std::vector<Rational>;

/// Parses "p", "-p/q", or a terminating decimal such as "2.75".
inline Rational parse_rational(std::string_view s)
{
    auto fail = [&] { throw std::invalid_argument("not a rational: \"" + std::string(s) + "\""); };
    std::size_t i = 0;
    while (i < s.size() && s[i] == ' ') ++i;
    std::size_t j = s.size();
    while (j > i && s[j - 1] == ' ') --j;
    std::string_view t = s.substr(i, j - i);
    if (t.empty()) fail();

    bool neg = false;
    if (t.front() == '-' || t.front() == '+') {
        neg = t.front() == '-';
        t.remove_prefix(1);
    }
    auto digits = [&](std::string_view u) {
        if (u.empty()) fail();
        for (char c : u)
            if (c < '0' || c > '9') fail();
        return Integer(std::string(u));
    };

    Rational r;
    if (auto slash = t.find('/'); slash != std::string_view::npos) {
        Integer p = digits(t.substr(0, slash));
        Integer q = digits(t.substr(slash + 1));
        if (q == 0) throw std::invalid_argument("zero denominator in \"" + std::string(s) + "\"");
        r = Rational(p, q);
    } else if (auto dot = t.find('.'); dot != std::string_view::npos) {
        std::string_view ip = t.substr(0, dot), fp = t.substr(dot + 1);
        if (ip.empty() && fp.empty()) fail();
        Integer whole = ip.empty() ? Integer(0) : digits(ip);
        Integer frac = fp.empty() ? Integer(0) : digits(fp);
        Integer scale = boost::multiprecision::pow(Integer(10), static_cast<unsigned>(fp.size()));
        r = Rational(whole * scale + frac, scale);
    } else {
        r = Rational(digits(t));
    }
    return neg ? Rational(-r) : r;
}

/// "p/q" in lowest terms, or "p" when the denominator is 1.
inline std::string to_string(const Rational& r)
{
    const Integer& q = boost::multiprecision::denominator(r);
    if (q == 1) return boost::multiprecision::numerator(r).str();
    return boost::multiprecision::numerator(r).str() + "/" + q.str();
}

inline double to_double(const Rational& r) { return r.convert_to<double>(); }

inline QVec to_q(const IVec& v) { return QVec(v.begin(), v.end()); }

inline bool is_integer(const Rational& r) { return boost::multiprecision::denominator(r) == 1; }

/// Dense exact matrix, row-major.
class QMatrix {
public:
    QMatrix() = default;
    QMatrix(int rows, int cols) : r_(rows), c_(cols), a_(static_cast<std::size_t>(rows) * cols) {}
    QMatrix(std::initializer_list<std::initializer_list<long long>> rows)
    {
        r_ = static_cast<int>(rows.size());
        c_ = r_ ? static_cast<int>(rows.begin()->size()) : 0;
        a_.reserve(static_cast<std::size_t>(r_) * c_);
        for (auto& row : rows) {
            if (static_cast<int>(row.size()) != c_) throw std::invalid_argument("ragged matrix literal");
            for (long long x : row) a_.emplace_back(x);
        }
    }

    static QMatrix identity(int n)
    {
        QMatrix m(n, n);
        for (int i = 0; i < n; ++i) m(i, i) = 1;
        return m;
    }

    int rows() const { return r_; }
    int cols() const { return c_; }
    Rational& operator()(int i, int j) { return a_[static_cast<std::size_t>(i) * c_ + j]; }
    const Rational& operator()(int i, int j) const { return a_[static_cast<std::size_t>(i) * c_ + j]; }

    QMatrix transpose() const
    {
        QMatrix t(c_, r_);
        for (int i = 0; i < r_; ++i)
            for (int j = 0; j < c_; ++j) t(j, i) = (*this)(i, j);
        return t;
    }

    QVec row(int i) const { return QVec(a_.begin() + static_cast<std::ptrdiff_t>(i) * c_, a_.begin() + static_cast<std::ptrdiff_t>(i + 1) * c_); }

    friend bool operator==(const QMatrix& x, const QMatrix& y) { return x.r_ == y.r_ && x.c_ == y.c_ && x.a_ == y.a_; }

    friend QMatrix operator*(const QMatrix& x, const QMatrix& y)
    {
        if (x.c_ != y.r_) throw std::invalid_argument("matrix shape mismatch");
        QMatrix z(x.r_, y.c_);
        for (int i = 0; i < x.r_; ++i)
            for (int k = 0; k < x.c_; ++k) {
                const Rational& xik = x(i, k);
                if (xik == 0) continue;
                for (int j = 0; j < y.c_; ++j) z(i, j) += xik * y(k, j);
            }
        return z;
    }

    friend QVec operator*(const QMatrix& x, const QVec& v)
    {
        if (x.c_ != static_cast<int>(v.size())) throw std::invalid_argument("matrix/vector shape mismatch");
        QVec out(x.r_);
        for (int i = 0; i < x.r_; ++i)
            for (int j = 0; j < x.c_; ++j)
                if (x(i, j) != 0) out[i] += x(i, j) * v[j];
        return out;
    }

    friend QMatrix operator+(QMatrix x, const QMatrix& y)
    {
        if (x.r_ != y.r_ || x.c_ != y.c_) throw std::invalid_argument("matrix shape mismatch");
        for (std::size_t i = 0; i < x.a_.size(); ++i) x.a_[i] += y.a_[i];
        return x;
    }

    friend QMatrix operator-(QMatrix x, const QMatrix& y)
    {
        if (x.r_ != y.r_ || x.c_ != y.c_) throw std::invalid_argument("matrix shape mismatch");
        for (std::size_t i = 0; i < x.a_.size(); ++i) x.a_[i] -= y.a_[i];
        return x;
    }

    friend QMatrix operator*(const Rational& s, QMatrix x)
    {
        for (auto& e : x.a_) e *= s;
        return x;
    }

private:
    int r_ = 0, c_ = 0;
    std::vector<Rational> a_;
};

inline QMatrix outer(const QVec& u, const QVec& v)
{
    QMatrix m(static_cast<int>(u.size()), static_cast<int>(v.size()));
    for (std::size_t i = 0; i < u.size(); ++i)
        for (std::size_t j = 0; j < v.size(); ++j) m(static_cast<int>(i), static_cast<int>(j)) = u[i] * v[j];
    return m;
}

namespace detail {

/// Row-reduces m in place; returns pivot columns.
inline std::vector<int> rref(QMatrix& m)
{
    std::vector<int> pivots;
    int row = 0;
    for (int col = 0; col < m.cols() && row < m.rows(); ++col) {
        int p = row;
        while (p < m.rows() && m(p, col) == 0) ++p;
        if (p == m.rows()) continue;
        if (p != row)
            for (int j = 0; j < m.cols(); ++j) std::swap(m(p, j), m(row, j));
        Rational inv = 1 / m(row, col);
        for (int j = 0; j < m.cols(); ++j) m(row, j) *= inv;
        for (int i = 0; i < m.rows(); ++i) {
            if (i == row || m(i, col) == 0) continue;
            Rational s = m(i, col);
            for (int j = 0; j < m.cols(); ++j) m(i, j) -= s * m(row, j);
        }
        pivots.push_back(col);
        ++row;
    }
    return pivots;
}

} // namespace detail

inline Rational determinant(QMatrix m)
{
    if (m.rows() != m.cols()) throw std::invalid_argument("determinant of non-square matrix");
    int n = m.rows();
    Rational det = 1;
    for (int c = 0; c < n; ++c) {
        int p = c;
        while (p < n && m(p, c) == 0) ++p;
        if (p == n) return 0;
        if (p != c) {
            for (int j = 0; j < n; ++j) std::swap(m(p, j), m(c, j));
            det = -det;
        }
        det *= m(c, c);
        for (int i = c + 1; i < n; ++i) {
            if (m(i, c) == 0) continue;
            Rational s = m(i, c) / m(c, c);
            for (int j = c; j < n; ++j) m(i, j) -= s * m(c, j);
        }
    }
    return det;
}

inline QMatrix inverse(const QMatrix& m)
{
    int n = m.rows();
    if (n != m.cols()) throw std::invalid_argument("inverse of non-square matrix");
    QMatrix aug(n, 2 * n);
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) aug(i, j) = m(i, j);
        aug(i, n + i) = 1;
    }
    auto piv = detail::rref(aug);
    if (static_cast<int>(piv.size()) < n || piv[n - 1] != n - 1) throw std::domain_error("singular matrix");
    QMatrix inv(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) inv(i, j) = aug(i, n + j);
    return inv;
}

/// Basis of the right kernel.
inline std::vector<QVec> kernel(QMatrix m)
{
    auto piv = detail::rref(m);
    std::vector<bool> is_pivot(m.cols(), false);
    for (int c : piv) is_pivot[c] = true;
    std::vector<QVec> basis;
    for (int free = 0; free < m.cols(); ++free) {
        if (is_pivot[free]) continue;
        QVec v(m.cols());
        v[free] = 1;
        for (std::size_t r = 0; r < piv.size(); ++r) v[piv[r]] = -m(static_cast<int>(r), free);
        basis.push_back(std::move(v));
    }
    return basis;
}

inline bool is_integer_matrix(const QMatrix& m)
{
    for (int i = 0; i < m.rows(); ++i)
        for (int j = 0; j < m.cols(); ++j)
            if (!is_integer(m(i, j))) return false;
    return true;
}

/// Integer matrix with integer inverse.
inline bool is_unimodular(const QMatrix& m)
{
    if (m.rows() != m.cols() || !is_integer_matrix(m)) return false;
    Rational d = determinant(m);
    return d == 1 || d == -1;
}

} // namespace starspec
