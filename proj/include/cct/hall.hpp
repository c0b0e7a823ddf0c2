#pragma once
#include <map>
#include <memory>
#include <string>
#include <vector>

#include "cct/rational.hpp"

namespace cct {

// Classical Hall basis of the free nilpotent Lie algebra of rank r and step s.
// Elements are binary bracket trees over the generators, totally ordered by
// (layer, creation index); a tree [u,v] belongs to the basis iff u < v and
// either v is a generator or v = [x,y] with x <= u. Structure constants come
// from Jacobi rewriting, graded so that brackets landing beyond the step are
// zero.
class HallBasis {
  public:
    static std::shared_ptr<const HallBasis> build(int rank, int step);

    int rank() const { return rank_; }
    int step() const { return step_; }
    int dim() const { return static_cast<int>(layer_.size()); }

    int layer(int k) const { return layer_[static_cast<size_t>(k)]; }
    const std::vector<int>& layer_sizes() const { return layer_sizes_; }

    bool is_generator(int k) const { return k < rank_; }
    int left(int k) const { return left_[static_cast<size_t>(k)]; }
    int right(int k) const { return right_[static_cast<size_t>(k)]; }
    std::string word_str(int k) const;

    // [W_i, W_j] expanded over the basis (dense vector of length dim()).
    RatVec bracket(int i, int j) const;

  private:
    HallBasis() = default;
    int rank_ = 0, step_ = 0;
    std::vector<int> layer_, left_, right_;
    std::vector<int> layer_sizes_;
    // key packs (i,j) with i < j; antisymmetry fills the rest
    std::map<std::pair<int, int>, RatVec> sc_;
    RatVec zero_;

    RatVec rewrite(int i, int j, std::map<std::pair<int, int>, RatVec>& memo,
                   const std::map<std::pair<int, int>, int>& pair_index, int depth) const;
};

}  // namespace cct
