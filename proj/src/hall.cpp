#include "cct/hall.hpp"

#include "cct/errors.hpp"

namespace cct {

std::shared_ptr<const HallBasis> HallBasis::build(int rank, int step) {
    if (rank < 2) throw DomainError("free Lie algebra needs rank >= 2");
    if (step < 1) throw DomainError("step must be >= 1");

    auto b = std::shared_ptr<HallBasis>(new HallBasis());
    b->rank_ = rank;
    b->step_ = step;
    for (int i = 0; i < rank; ++i) {
        b->layer_.push_back(1);
        b->left_.push_back(-1);
        b->right_.push_back(-1);
    }
    b->layer_sizes_.push_back(rank);

    // candidate pairs in (v, u) ascending order within each layer
    std::map<std::pair<int, int>, int> pair_index;
    for (int len = 2; len <= step; ++len) {
        int start = b->dim();
        for (int v = 0; v < start; ++v) {
            for (int u = 0; u < start; ++u) {
                if (b->layer_[static_cast<size_t>(u)] + b->layer_[static_cast<size_t>(v)] != len) continue;
                if (u >= v) continue;
                if (!b->is_generator(v) && b->left_[static_cast<size_t>(v)] > u) continue;
                pair_index[{u, v}] = b->dim();
                b->layer_.push_back(len);
                b->left_.push_back(u);
                b->right_.push_back(v);
            }
        }
        b->layer_sizes_.push_back(b->dim() - start);
    }

    b->zero_.assign(static_cast<size_t>(b->dim()), Rat(0));

    std::map<std::pair<int, int>, RatVec> memo;
    for (int i = 0; i < b->dim(); ++i)
        for (int j = i + 1; j < b->dim(); ++j)
            b->sc_[{i, j}] = b->rewrite(i, j, memo, pair_index, 0);
    return b;
}

std::string HallBasis::word_str(int k) const {
    if (is_generator(k)) return "W" + std::to_string(k + 1);
    return "[" + word_str(left(k)) + "," + word_str(right(k)) + "]";
}

RatVec HallBasis::bracket(int i, int j) const {
    if (i < 0 || j < 0 || i >= dim() || j >= dim()) throw DomainError("basis index out of range");
    if (i == j) return zero_;
    const RatVec& v = sc_.at({std::min(i, j), std::max(i, j)});
    if (i < j) return v;
    RatVec neg = v;
    for (auto& c : neg) c = -c;
    return neg;
}

RatVec HallBasis::rewrite(int i, int j, std::map<std::pair<int, int>, RatVec>& memo,
                          const std::map<std::pair<int, int>, int>& pair_index, int depth) const {
    if (depth > 4096) throw StructureError("hall rewriting runaway");
    RatVec out(static_cast<size_t>(dim()), Rat(0));
    if (i == j) return out;
    if (i > j) {
        RatVec v = rewrite(j, i, memo, pair_index, depth + 1);
        for (auto& c : v) c = -c;
        return v;
    }
    if (layer_[static_cast<size_t>(i)] + layer_[static_cast<size_t>(j)] > step_) return out;

    auto key = std::make_pair(i, j);
    auto hit = memo.find(key);
    if (hit != memo.end()) return hit->second;

    auto basis_pair = pair_index.find(key);
    if (basis_pair != pair_index.end()) {
        out[static_cast<size_t>(basis_pair->second)] = 1;
        memo[key] = out;
        return out;
    }

    // non-Hall pair: j = [x,y] with x > i; Jacobi gives
    // [W_i,[W_x,W_y]] = [[W_i,W_x],W_y] + [W_x,[W_i,W_y]]
    int x = left_[static_cast<size_t>(j)];
    int y = right_[static_cast<size_t>(j)];
    RatVec t1 = rewrite(i, x, memo, pair_index, depth + 1);
    RatVec t2 = rewrite(i, y, memo, pair_index, depth + 1);
    for (int k = 0; k < dim(); ++k) {
        if (t1[static_cast<size_t>(k)] != 0) {
            RatVec ky = rewrite(k, y, memo, pair_index, depth + 1);
            for (int m = 0; m < dim(); ++m) out[static_cast<size_t>(m)] += t1[static_cast<size_t>(k)] * ky[static_cast<size_t>(m)];
        }
        if (t2[static_cast<size_t>(k)] != 0) {
            RatVec xk = rewrite(x, k, memo, pair_index, depth + 1);
            for (int m = 0; m < dim(); ++m) out[static_cast<size_t>(m)] += t2[static_cast<size_t>(k)] * xk[static_cast<size_t>(m)];
        }
    }
    memo[key] = out;
    return out;
}

}  // namespace cct
