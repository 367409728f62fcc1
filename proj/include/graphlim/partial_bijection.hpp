#pragma once

#include <algorithm>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "graphlim/base_space.hpp"
#include "graphlim/rational.hpp"

namespace graphlim {

// A bisection of the finite principal groupoid over `base`: an injective
// partial map given by (source, target) pairs. Pairs are kept sorted by
// source, so equal maps compare equal and serialization is deterministic.
class PartialBijection {
  public:
    PartialBijection() = default;

    PartialBijection(BaseSpace base, std::vector<std::pair<int, int>> pairs,
                     std::string label = {})
        : base_(base), pairs_(std::move(pairs)), label_(std::move(label)) {
        std::sort(pairs_.begin(), pairs_.end());
        validate();
    }

    static PartialBijection identity(BaseSpace base) {
        std::vector<std::pair<int, int>> pairs;
        pairs.reserve(static_cast<std::size_t>(base.n));
        for (int x = 0; x < base.n; ++x) pairs.emplace_back(x, x);
        return PartialBijection(base, std::move(pairs));
    }

    // Full permutation: x -> perm[x].
    static PartialBijection from_permutation(BaseSpace base, const std::vector<int>& perm,
                                             std::string label = {}) {
        if (static_cast<int>(perm.size()) != base.n)
            throw std::invalid_argument("permutation size mismatch");
        std::vector<std::pair<int, int>> pairs;
        pairs.reserve(perm.size());
        for (int x = 0; x < base.n; ++x) pairs.emplace_back(x, perm[x]);
        return PartialBijection(base, std::move(pairs), std::move(label));
    }

    const BaseSpace& base() const { return base_; }
    const std::vector<std::pair<int, int>>& pairs() const { return pairs_; }
    const std::string& label() const { return label_; }
    int size() const { return static_cast<int>(pairs_.size()); }
    bool empty() const { return pairs_.empty(); }

    // Normalized mass of the domain (= of the image).
    Rat mass() const { return rat(size(), base_.n); }

    std::optional<int> apply(int x) const {
        auto it = std::lower_bound(pairs_.begin(), pairs_.end(), std::make_pair(x, -1));
        if (it != pairs_.end() && it->first == x) return it->second;
        return std::nullopt;
    }

    bool operator==(const PartialBijection& other) const {
        return base_ == other.base_ && pairs_ == other.pairs_;
    }

  private:
    void validate() const {
        std::vector<int> targets;
        targets.reserve(pairs_.size());
        int prev_source = -1;
        for (const auto& [s, t] : pairs_) {
            if (s < 0 || s >= base_.n || t < 0 || t >= base_.n)
                throw std::invalid_argument("pair out of base range");
            if (s == prev_source) throw std::invalid_argument("duplicate source");
            prev_source = s;
            targets.push_back(t);
        }
        std::sort(targets.begin(), targets.end());
        if (std::adjacent_find(targets.begin(), targets.end()) != targets.end())
            throw std::invalid_argument("duplicate target");
    }

    BaseSpace base_;
    std::vector<std::pair<int, int>> pairs_;
    std::string label_;
};

// Pseudogroup product: (compose(f, g))(x) = f(g(x)) on the composable part.
inline PartialBijection compose(const PartialBijection& f, const PartialBijection& g) {
    if (!(f.base() == g.base())) throw std::invalid_argument("base space mismatch");
    std::vector<std::pair<int, int>> pairs;
    for (const auto& [x, gx] : g.pairs()) {
        if (auto fgx = f.apply(gx)) pairs.emplace_back(x, *fgx);
    }
    return PartialBijection(f.base(), std::move(pairs));
}

inline PartialBijection invert(const PartialBijection& f) {
    std::vector<std::pair<int, int>> pairs;
    pairs.reserve(f.pairs().size());
    for (const auto& [s, t] : f.pairs()) pairs.emplace_back(t, s);
    return PartialBijection(f.base(), std::move(pairs), f.label());
}

}  // namespace graphlim
