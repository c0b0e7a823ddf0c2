#pragma once
#include <vector>

#include "cct/rational.hpp"

namespace cct {

// Small dense rational matrix. Rank goes through Bareiss fraction-free
// elimination on the denominator-cleared integer matrix; determinants and
// solves stay in exact rational arithmetic. No pivoting thresholds anywhere.
class RatMat {
  public:
    RatMat() : rows_(0), cols_(0) {}
    RatMat(int rows, int cols) : rows_(rows), cols_(cols), a_(static_cast<size_t>(rows) * cols, Rat(0)) {}

    static RatMat identity(int n);

    int rows() const { return rows_; }
    int cols() const { return cols_; }

    Rat& at(int i, int j) { return a_[static_cast<size_t>(i) * cols_ + j]; }
    const Rat& at(int i, int j) const { return a_[static_cast<size_t>(i) * cols_ + j]; }

    int rank() const;
    Rat det() const;                       // square only
    RatMat inverse() const;                // square, nonsingular
    RatVec solve(const RatVec& b) const;   // square, nonsingular

    RatMat operator*(const RatMat& o) const;
    bool operator==(const RatMat& o) const = default;

  private:
    int rows_, cols_;
    std::vector<Rat> a_;
};

}  // namespace cct
