#include "contractio/matrix.hpp"

#include <sstream>

namespace contractio {

RatMatrix::RatMatrix(int rows, int cols)
    : rows_(rows), cols_(cols), data_(static_cast<std::size_t>(rows * cols), Rational(0))
{
}

RatMatrix::RatMatrix(const std::vector<std::vector<Rational>>& rows)
{
    rows_ = static_cast<int>(rows.size());
    cols_ = rows.empty() ? 0 : static_cast<int>(rows.front().size());
    for (const auto& row : rows) {
        if (static_cast<int>(row.size()) != cols_) throw DomainError("ragged matrix rows");
        data_.insert(data_.end(), row.begin(), row.end());
    }
}

RatMatrix RatMatrix::identity(int n)
{
    RatMatrix m(n, n);
    for (int i = 0; i < n; ++i) m(i, i) = 1;
    return m;
}

RatMatrix RatMatrix::from_columns(const std::vector<RatVector>& cols, int rows)
{
    RatMatrix m(rows, static_cast<int>(cols.size()));
    for (int c = 0; c < m.cols_; ++c) {
        const auto& col = cols[static_cast<std::size_t>(c)];
        if (static_cast<int>(col.size()) != rows) throw DomainError("column length mismatch");
        for (int r = 0; r < rows; ++r) m(r, c) = col[static_cast<std::size_t>(r)];
    }
    return m;
}

RatVector RatMatrix::column(int c) const
{
    RatVector v(static_cast<std::size_t>(rows_));
    for (int r = 0; r < rows_; ++r) v[static_cast<std::size_t>(r)] = (*this)(r, c);
    return v;
}

std::vector<RatVector> RatMatrix::columns() const
{
    std::vector<RatVector> out;
    for (int c = 0; c < cols_; ++c) out.push_back(column(c));
    return out;
}

RatMatrix operator*(const RatMatrix& a, const RatMatrix& b)
{
    if (a.cols_ != b.rows_) throw DomainError("matrix shape mismatch in product");
    RatMatrix m(a.rows_, b.cols_);
    for (int i = 0; i < a.rows_; ++i)
        for (int k = 0; k < a.cols_; ++k) {
            const Rational& aik = a(i, k);
            if (aik == 0) continue;
            for (int j = 0; j < b.cols_; ++j) m(i, j) += aik * b(k, j);
        }
    return m;
}

RatMatrix operator+(const RatMatrix& a, const RatMatrix& b)
{
    if (a.rows_ != b.rows_ || a.cols_ != b.cols_) throw DomainError("matrix shape mismatch in sum");
    RatMatrix m(a);
    for (std::size_t i = 0; i < m.data_.size(); ++i) m.data_[i] += b.data_[i];
    return m;
}

RatMatrix operator-(const RatMatrix& a, const RatMatrix& b) { return a + Rational(-1) * b; }

RatMatrix operator*(const Rational& c, const RatMatrix& a)
{
    RatMatrix m(a);
    for (auto& x : m.data_) x *= c;
    return m;
}

RatVector operator*(const RatMatrix& a, const RatVector& v)
{
    if (static_cast<int>(v.size()) != a.cols_) throw DomainError("vector length mismatch");
    RatVector out(static_cast<std::size_t>(a.rows_), Rational(0));
    for (int i = 0; i < a.rows_; ++i)
        for (int j = 0; j < a.cols_; ++j) out[static_cast<std::size_t>(i)] += a(i, j) * v[static_cast<std::size_t>(j)];
    return out;
}

RatMatrix RatMatrix::power(long e) const
{
    if (e < 0) return inverse().power(-e);
    RatMatrix result = identity(rows_);
    RatMatrix base = *this;
    while (e > 0) {
        if (e & 1) result = result * base;
        e >>= 1;
        if (e) base = base * base;
    }
    return result;
}

RatMatrix RatMatrix::transpose() const
{
    RatMatrix t(cols_, rows_);
    for (int i = 0; i < rows_; ++i)
        for (int j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
    return t;
}

Rational RatMatrix::determinant() const
{
    if (!is_square()) throw DomainError("determinant of non-square matrix");
    RatMatrix m(*this);
    Rational det(1);
    for (int c = 0; c < cols_; ++c) {
        int pivot = -1;
        for (int r = c; r < rows_; ++r)
            if (m(r, c) != 0) {
                pivot = r;
                break;
            }
        if (pivot < 0) return Rational(0);
        if (pivot != c) {
            for (int j = 0; j < cols_; ++j) std::swap(m(pivot, j), m(c, j));
            det = -det;
        }
        det *= m(c, c);
        for (int r = c + 1; r < rows_; ++r) {
            if (m(r, c) == 0) continue;
            Rational f = m(r, c) / m(c, c);
            for (int j = c; j < cols_; ++j) m(r, j) -= f * m(c, j);
        }
    }
    return det;
}

RatMatrix RatMatrix::rref() const
{
    RatMatrix m(*this);
    int lead = 0;
    for (int c = 0; c < cols_ && lead < rows_; ++c) {
        int pivot = -1;
        for (int r = lead; r < rows_; ++r)
            if (m(r, c) != 0) {
                pivot = r;
                break;
            }
        if (pivot < 0) continue;
        for (int j = 0; j < cols_; ++j) std::swap(m(pivot, j), m(lead, j));
        Rational inv = 1 / m(lead, c);
        for (int j = 0; j < cols_; ++j) m(lead, j) *= inv;
        for (int r = 0; r < rows_; ++r) {
            if (r == lead || m(r, c) == 0) continue;
            Rational f = m(r, c);
            for (int j = 0; j < cols_; ++j) m(r, j) -= f * m(lead, j);
        }
        ++lead;
    }
    return m;
}

int RatMatrix::rank() const
{
    RatMatrix r = rref();
    int rank = 0;
    for (int i = 0; i < rows_; ++i)
        for (int j = 0; j < cols_; ++j)
            if (r(i, j) != 0) {
                ++rank;
                break;
            }
    return rank;
}

RatMatrix RatMatrix::inverse() const
{
    if (!is_square()) throw DomainError("inverse of non-square matrix");
    int n = rows_;
    RatMatrix aug(n, 2 * n);
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) aug(i, j) = (*this)(i, j);
        aug(i, n + i) = 1;
    }
    RatMatrix r = aug.rref();
    RatMatrix inv(n, n);
    for (int i = 0; i < n; ++i) {
        if (r(i, i) != 1) throw DomainError("singular matrix");
        for (int j = 0; j < n; ++j) inv(i, j) = r(i, n + j);
    }
    return inv;
}

std::vector<RatVector> RatMatrix::kernel() const
{
    RatMatrix r = rref();
    std::vector<int> pivot_col(static_cast<std::size_t>(rows_), -1);
    std::vector<bool> is_pivot(static_cast<std::size_t>(cols_), false);
    for (int i = 0; i < rows_; ++i)
        for (int j = 0; j < cols_; ++j)
            if (r(i, j) != 0) {
                pivot_col[static_cast<std::size_t>(i)] = j;
                is_pivot[static_cast<std::size_t>(j)] = true;
                break;
            }
    std::vector<RatVector> basis;
    for (int free = 0; free < cols_; ++free) {
        if (is_pivot[static_cast<std::size_t>(free)]) continue;
        RatVector v(static_cast<std::size_t>(cols_), Rational(0));
        v[static_cast<std::size_t>(free)] = 1;
        for (int i = 0; i < rows_; ++i) {
            int pc = pivot_col[static_cast<std::size_t>(i)];
            if (pc >= 0) v[static_cast<std::size_t>(pc)] = -r(i, free);
        }
        basis.push_back(std::move(v));
    }
    return basis;
}

QPoly RatMatrix::charpoly() const
{
    if (!is_square()) throw DomainError("characteristic polynomial of non-square matrix");
    // Faddeev-LeVerrier: M_k = A M_{k-1} + c_{n-k+1} I, c_{n-k} = -tr(A M_k) / k.
    int n = rows_;
    std::vector<Rational> c(static_cast<std::size_t>(n) + 1, Rational(0));
    c[static_cast<std::size_t>(n)] = 1;
    RatMatrix m(n, n);
    for (int k = 1; k <= n; ++k) {
        m = *this * m + c[static_cast<std::size_t>(n - k + 1)] * identity(n);
        RatMatrix am = *this * m;
        Rational tr(0);
        for (int i = 0; i < n; ++i) tr += am(i, i);
        c[static_cast<std::size_t>(n - k)] = -tr / k;
    }
    return QPoly(std::move(c));
}

RatMatrix RatMatrix::evaluate(const QPoly& f) const
{
    RatMatrix acc(rows_, cols_);
    for (int i = f.degree(); i >= 0; --i) acc = acc * *this + f.coeff(i) * identity(rows_);
    return acc;
}

std::string RatMatrix::to_string() const
{
    std::ostringstream out;
    out << "[";
    for (int i = 0; i < rows_; ++i) {
        out << (i ? ", [" : "[");
        for (int j = 0; j < cols_; ++j) out << (j ? ", " : "") << (*this)(i, j).get_str();
        out << "]";
    }
    out << "]";
    return out.str();
}

std::vector<RatVector> span_basis(const std::vector<RatVector>& vectors, int dim)
{
    if (vectors.empty()) return {};
    RatMatrix m(static_cast<int>(vectors.size()), dim);
    for (int i = 0; i < m.rows(); ++i)
        for (int j = 0; j < dim; ++j) m(i, j) = vectors[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
    RatMatrix r = m.rref();
    std::vector<RatVector> basis;
    for (int i = 0; i < r.rows(); ++i) {
        RatVector row(static_cast<std::size_t>(dim));
        bool nonzero = false;
        for (int j = 0; j < dim; ++j) {
            row[static_cast<std::size_t>(j)] = r(i, j);
            nonzero = nonzero || r(i, j) != 0;
        }
        if (nonzero) basis.push_back(std::move(row));
    }
    return basis;
}

bool in_span(const std::vector<RatVector>& basis, const RatVector& v, int dim)
{
    auto extended = basis;
    extended.push_back(v);
    return span_basis(extended, dim).size() == span_basis(basis, dim).size();
}

bool same_span(const std::vector<RatVector>& a, const std::vector<RatVector>& b, int dim)
{
    return span_basis(a, dim) == span_basis(b, dim);
}

}  // namespace contractio
