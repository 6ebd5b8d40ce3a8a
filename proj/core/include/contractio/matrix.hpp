#pragma once

#include <optional>
#include <string>
#include <vector>

#include "contractio/arith.hpp"
#include "contractio/polynomial.hpp"

namespace contractio {

using RatVector = std::vector<Rational>;

/// Dense row-major matrix over Q.
class RatMatrix {
public:
    RatMatrix() = default;
    RatMatrix(int rows, int cols);
    /// Throws DomainError on ragged input.
    explicit RatMatrix(const std::vector<std::vector<Rational>>& rows);

    static RatMatrix identity(int n);
    /// Matrix whose columns are the given vectors (all of length `rows`).
    static RatMatrix from_columns(const std::vector<RatVector>& cols, int rows);

    int rows() const { return rows_; }
    int cols() const { return cols_; }
    bool is_square() const { return rows_ == cols_; }

    Rational& operator()(int r, int c) { return data_[static_cast<std::size_t>(r * cols_ + c)]; }
    const Rational& operator()(int r, int c) const { return data_[static_cast<std::size_t>(r * cols_ + c)]; }

    RatVector column(int c) const;
    std::vector<RatVector> columns() const;

    friend RatMatrix operator*(const RatMatrix& a, const RatMatrix& b);
    friend RatMatrix operator+(const RatMatrix& a, const RatMatrix& b);
    friend RatMatrix operator-(const RatMatrix& a, const RatMatrix& b);
    friend RatMatrix operator*(const Rational& c, const RatMatrix& a);
    friend RatVector operator*(const RatMatrix& a, const RatVector& v);
    friend bool operator==(const RatMatrix& a, const RatMatrix& b) = default;

    RatMatrix power(long e) const;
    RatMatrix transpose() const;

    Rational determinant() const;
    int rank() const;
    /// Throws DomainError when singular.
    RatMatrix inverse() const;
    /// Reduced row echelon form.
    RatMatrix rref() const;
    /// Basis of the null space, one vector per free column.
    std::vector<RatVector> kernel() const;

    /// Characteristic polynomial det(X I - A), monic of degree n.
    QPoly charpoly() const;
    /// f(A) by Horner.
    RatMatrix evaluate(const QPoly& f) const;

    std::string to_string() const;

private:
    int rows_ = 0;
    int cols_ = 0;
    std::vector<Rational> data_;
};

/// Row-reduced basis of span(vectors); empty for the zero space.
std::vector<RatVector> span_basis(const std::vector<RatVector>& vectors, int dim);
/// True when v lies in span(basis).
bool in_span(const std::vector<RatVector>& basis, const RatVector& v, int dim);
/// Subspace equality (both given by spanning sets).
bool same_span(const std::vector<RatVector>& a, const std::vector<RatVector>& b, int dim);

}  // namespace contractio
