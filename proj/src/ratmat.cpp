#include "cct/ratmat.hpp"

#include "cct/errors.hpp"

namespace cct {

RatMat RatMat::identity(int n) {
    RatMat m(n, n);
    for (int i = 0; i < n; ++i) m.at(i, i) = 1;
    return m;
}

int RatMat::rank() const {
    // Clear denominators row-wise (rank-preserving), then Bareiss.
    std::vector<std::vector<mpz_class>> m(rows_, std::vector<mpz_class>(cols_));
    for (int i = 0; i < rows_; ++i) {
        mpz_class l = 1;
        for (int j = 0; j < cols_; ++j) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), a_[static_cast<size_t>(i) * cols_ + j].get_den_mpz_t());
        for (int j = 0; j < cols_; ++j) {
            const Rat& q = a_[static_cast<size_t>(i) * cols_ + j];
            m[i][j] = q.get_num() * (l / q.get_den());
        }
    }
    int rank = 0;
    mpz_class prev = 1;
    for (int col = 0; col < cols_ && rank < rows_; ++col) {
        int piv = -1;
        for (int i = rank; i < rows_; ++i)
            if (m[i][col] != 0) { piv = i; break; }
        if (piv < 0) continue;
        std::swap(m[rank], m[piv]);
        for (int i = rank + 1; i < rows_; ++i) {
            for (int j = col + 1; j < cols_; ++j) {
                mpz_class t = m[rank][col] * m[i][j] - m[i][col] * m[rank][j];
                mpz_divexact(m[i][j].get_mpz_t(), t.get_mpz_t(), prev.get_mpz_t());
            }
            m[i][col] = 0;
        }
        prev = m[rank][col];
        ++rank;
    }
    return rank;
}

Rat RatMat::det() const {
    if (rows_ != cols_) throw ShapeError("det of non-square matrix");
    RatMat m = *this;
    Rat d(1);
    for (int col = 0; col < cols_; ++col) {
        int piv = -1;
        for (int i = col; i < rows_; ++i)
            if (m.at(i, col) != 0) { piv = i; break; }
        if (piv < 0) return Rat(0);
        if (piv != col) {
            for (int j = 0; j < cols_; ++j) std::swap(m.at(col, j), m.at(piv, j));
            d = -d;
        }
        d *= m.at(col, col);
        for (int i = col + 1; i < rows_; ++i) {
            Rat f = m.at(i, col) / m.at(col, col);
            if (f == 0) continue;
            for (int j = col; j < cols_; ++j) m.at(i, j) -= f * m.at(col, j);
        }
    }
    return d;
}

RatMat RatMat::inverse() const {
    if (rows_ != cols_) throw ShapeError("inverse of non-square matrix");
    int n = rows_;
    RatMat m = *this, inv = identity(n);
    for (int col = 0; col < n; ++col) {
        int piv = -1;
        for (int i = col; i < n; ++i)
            if (m.at(i, col) != 0) { piv = i; break; }
        if (piv < 0) throw DomainError("singular matrix");
        if (piv != col)
            for (int j = 0; j < n; ++j) {
                std::swap(m.at(col, j), m.at(piv, j));
                std::swap(inv.at(col, j), inv.at(piv, j));
            }
        Rat p = m.at(col, col);
        for (int j = 0; j < n; ++j) { m.at(col, j) /= p; inv.at(col, j) /= p; }
        for (int i = 0; i < n; ++i) {
            if (i == col) continue;
            Rat f = m.at(i, col);
            if (f == 0) continue;
            for (int j = 0; j < n; ++j) {
                m.at(i, j) -= f * m.at(col, j);
                inv.at(i, j) -= f * inv.at(col, j);
            }
        }
    }
    return inv;
}

RatVec RatMat::solve(const RatVec& b) const {
    RatMat inv = inverse();
    RatVec x(rows_, Rat(0));
    for (int i = 0; i < rows_; ++i)
        for (int j = 0; j < cols_; ++j) x[i] += inv.at(i, j) * b[j];
    return x;
}

RatMat RatMat::operator*(const RatMat& o) const {
    if (cols_ != o.rows_) throw ShapeError("matrix product shape mismatch");
    RatMat r(rows_, o.cols_);
    for (int i = 0; i < rows_; ++i)
        for (int k = 0; k < cols_; ++k) {
            if (at(i, k) == 0) continue;
            for (int j = 0; j < o.cols_; ++j) r.at(i, j) += at(i, k) * o.at(k, j);
        }
    return r;
}

}  // namespace cct
