#pragma once

#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <type_traits>
#include <vector>

#include "field.hpp"

namespace sdclab {

// Dense row-major matrix over a field F. Rational entries are always canonical.
template <class F>
class Matrix {
public:
    using Elem = typename F::Elem;

    Matrix() = default;
    Matrix(F field, int rows, int cols)
        : field_(field), rows_(rows), cols_(cols), data_(static_cast<size_t>(rows) * cols, field.zero()) {
        if (rows < 0 || cols < 0) throw std::invalid_argument("negative matrix shape");
    }

    static Matrix identity(F field, int n) {
        Matrix m(field, n, n);
        for (int i = 0; i < n; ++i) m(i, i) = field.one();
        return m;
    }
    static Matrix from_ints(F field, const std::vector<std::vector<long long>>& rows) {
        int r = static_cast<int>(rows.size());
        int c = r ? static_cast<int>(rows[0].size()) : 0;
        Matrix m(field, r, c);
        for (int i = 0; i < r; ++i) {
            if (static_cast<int>(rows[i].size()) != c) throw std::invalid_argument("ragged matrix rows");
            for (int j = 0; j < c; ++j) m(i, j) = field.from_int(rows[i][j]);
        }
        return m;
    }

    const F& field() const { return field_; }
    int rows() const { return rows_; }
    int cols() const { return cols_; }
    Elem& operator()(int i, int j) { return data_[static_cast<size_t>(i) * cols_ + j]; }
    const Elem& operator()(int i, int j) const { return data_[static_cast<size_t>(i) * cols_ + j]; }
    const std::vector<Elem>& entries() const { return data_; }

    bool is_zero() const {
        for (const auto& e : data_)
            if (!field_.is_zero(e)) return false;
        return true;
    }

    Matrix operator*(const Matrix& o) const {
        if (cols_ != o.rows_) throw std::invalid_argument("matrix product shape mismatch");
        Matrix r(field_, rows_, o.cols_);
        for (int i = 0; i < rows_; ++i)
            for (int k = 0; k < cols_; ++k) {
                const Elem& a = (*this)(i, k);
                if (field_.is_zero(a)) continue;
                for (int j = 0; j < o.cols_; ++j) r(i, j) = field_.add(r(i, j), field_.mul(a, o(k, j)));
            }
        return r;
    }
    Matrix operator+(const Matrix& o) const {
        check_same(o);
        Matrix r = *this;
        for (size_t i = 0; i < data_.size(); ++i) r.data_[i] = field_.add(data_[i], o.data_[i]);
        return r;
    }
    Matrix operator-(const Matrix& o) const {
        check_same(o);
        Matrix r = *this;
        for (size_t i = 0; i < data_.size(); ++i) r.data_[i] = field_.sub(data_[i], o.data_[i]);
        return r;
    }
    bool operator==(const Matrix& o) const { return rows_ == o.rows_ && cols_ == o.cols_ && data_ == o.data_; }

    Matrix transpose() const {
        Matrix t(field_, cols_, rows_);
        for (int i = 0; i < rows_; ++i)
            for (int j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
        return t;
    }
    // Horizontal concatenation [this | o].
    Matrix hcat(const Matrix& o) const {
        if (rows_ != o.rows_) throw std::invalid_argument("hcat row mismatch");
        Matrix r(field_, rows_, cols_ + o.cols_);
        for (int i = 0; i < rows_; ++i) {
            for (int j = 0; j < cols_; ++j) r(i, j) = (*this)(i, j);
            for (int j = 0; j < o.cols_; ++j) r(i, cols_ + j) = o(i, j);
        }
        return r;
    }
    Matrix column(int j) const {
        Matrix r(field_, rows_, 1);
        for (int i = 0; i < rows_; ++i) r(i, 0) = (*this)(i, j);
        return r;
    }

    std::string str() const {
        std::ostringstream os;
        os << "[";
        for (int i = 0; i < rows_; ++i) {
            os << (i ? ", [" : "[");
            for (int j = 0; j < cols_; ++j) os << (j ? ", " : "") << field_.to_string((*this)(i, j));
            os << "]";
        }
        os << "]";
        return os.str();
    }

private:
    void check_same(const Matrix& o) const {
        if (rows_ != o.rows_ || cols_ != o.cols_) throw std::invalid_argument("matrix shape mismatch");
    }

    F field_{};
    int rows_ = 0;
    int cols_ = 0;
    std::vector<Elem> data_;
};

// Reduced row echelon form together with its pivot columns.
template <class F>
struct Echelon {
    Matrix<F> rref;
    std::vector<int> pivots;  // pivots[i] = column of the leading 1 in row i
};

namespace detail {

// Gauss-Jordan over F_p; pivot = first nonzero row at or below the current row, scanning columns left to right.
template <class F>
Echelon<F> gauss_jordan(Matrix<F> m) {
    const F& f = m.field();
    std::vector<int> piv;
    int r = 0;
    for (int c = 0; c < m.cols() && r < m.rows(); ++c) {
        int sel = -1;
        for (int i = r; i < m.rows(); ++i)
            if (!f.is_zero(m(i, c))) { sel = i; break; }
        if (sel < 0) continue;
        if (sel != r)
            for (int j = 0; j < m.cols(); ++j) std::swap(m(sel, j), m(r, j));
        auto inv = f.inv(m(r, c));
        for (int j = c; j < m.cols(); ++j) m(r, j) = f.mul(m(r, j), inv);
        for (int i = 0; i < m.rows(); ++i) {
            if (i == r || f.is_zero(m(i, c))) continue;
            auto factor = m(i, c);
            for (int j = c; j < m.cols(); ++j) m(i, j) = f.sub(m(i, j), f.mul(factor, m(r, j)));
        }
        piv.push_back(c);
        ++r;
    }
    return {std::move(m), std::move(piv)};
}

// Fraction-free Gauss-Jordan (Bareiss) over Z after clearing row denominators.
// Every intermediate entry is a minor of the input, so the divisions are exact.
inline Echelon<Rationals> bareiss(const Matrix<Rationals>& in) {
    const int rows = in.rows(), cols = in.cols();
    std::vector<mpz_class> a(static_cast<size_t>(rows) * cols);
    auto at = [&](int i, int j) -> mpz_class& { return a[static_cast<size_t>(i) * cols + j]; };
    for (int i = 0; i < rows; ++i) {
        mpz_class l = 1;
        for (int j = 0; j < cols; ++j) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), in(i, j).get_den_mpz_t());
        for (int j = 0; j < cols; ++j) at(i, j) = in(i, j).get_num() * (l / in(i, j).get_den());
    }
    mpz_class prev = 1, tmp;
    std::vector<int> piv;
    int r = 0;
    for (int c = 0; c < cols && r < rows; ++c) {
        int sel = -1;
        for (int i = r; i < rows; ++i)
            if (sgn(at(i, c)) != 0) { sel = i; break; }
        if (sel < 0) continue;
        if (sel != r)
            for (int j = 0; j < cols; ++j) swap(at(sel, j), at(r, j));
        const mpz_class p = at(r, c);
        for (int i = 0; i < rows; ++i) {
            if (i == r) continue;
            const mpz_class q = at(i, c);
            for (int j = 0; j < cols; ++j) {
                if (j == c) continue;
                tmp = p * at(i, j) - q * at(r, j);
                mpz_divexact(at(i, j).get_mpz_t(), tmp.get_mpz_t(), prev.get_mpz_t());
            }
            at(i, c) = 0;
        }
        // Rows already reduced keep the determinant scale in sync with the new pivot.
        prev = p;
        piv.push_back(c);
        ++r;
    }
    Matrix<Rationals> out(Rationals{}, rows, cols);
    for (int i = 0; i < static_cast<int>(piv.size()); ++i) {
        const mpz_class& d = at(i, piv[i]);
        for (int j = 0; j < cols; ++j) {
            mpq_class v(at(i, j), d);
            v.canonicalize();
            out(i, j) = v;
        }
    }
    return {std::move(out), std::move(piv)};
}

}  // namespace detail

template <class F>
Echelon<F> echelon(const Matrix<F>& m) {
    if constexpr (std::is_same_v<F, Rationals>)
        return detail::bareiss(m);
    else
        return detail::gauss_jordan(m);
}

template <class F>
int rank(const Matrix<F>& m) {
    return static_cast<int>(echelon(m).pivots.size());
}

// Columns form the canonical kernel basis read off the reduced echelon form:
// one vector per free column f, with 1 at f and -rref(i,f) at each pivot column.
template <class F>
Matrix<F> kernel_basis(const Matrix<F>& m) {
    const F& f = m.field();
    auto e = echelon(m);
    std::vector<bool> is_pivot(m.cols(), false);
    for (int c : e.pivots) is_pivot[c] = true;
    std::vector<int> free_cols;
    for (int c = 0; c < m.cols(); ++c)
        if (!is_pivot[c]) free_cols.push_back(c);
    Matrix<F> k(f, m.cols(), static_cast<int>(free_cols.size()));
    for (size_t t = 0; t < free_cols.size(); ++t) {
        int fc = free_cols[t];
        k(fc, static_cast<int>(t)) = f.one();
        for (size_t i = 0; i < e.pivots.size(); ++i)
            k(e.pivots[i], static_cast<int>(t)) = f.neg(e.rref(static_cast<int>(i), fc));
    }
    return k;
}

// Some x with a*x = b, free variables set to zero; nullopt when inconsistent.
template <class F>
std::optional<Matrix<F>> solve(const Matrix<F>& a, const Matrix<F>& b) {
    if (a.rows() != b.rows()) throw std::invalid_argument("solve: a.rows != b.rows");
    const F& f = a.field();
    auto e = echelon(a.hcat(b));
    Matrix<F> x(f, a.cols(), b.cols());
    for (size_t i = 0; i < e.pivots.size(); ++i) {
        int c = e.pivots[i];
        if (c >= a.cols()) return std::nullopt;
        for (int j = 0; j < b.cols(); ++j) x(c, j) = e.rref(static_cast<int>(i), a.cols() + j);
    }
    return x;
}

}  // namespace sdclab
