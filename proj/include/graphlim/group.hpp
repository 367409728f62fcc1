#pragma once

#include <algorithm>
#include <cstdint>
#include <cstdlib>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "graphlim/rational.hpp"

namespace graphlim {

// Group words are signed 1-based generator indices: +g is generator g-1 of
// the presentation, -g its inverse. Words act on points on the left, so the
// rightmost letter applies first.
using Word = std::vector<int>;

inline Word free_reduce(Word w) {
    Word out;
    out.reserve(w.size());
    for (int x : w) {
        if (!out.empty() && out.back() == -x)
            out.pop_back();
        else
            out.push_back(x);
    }
    return out;
}

struct GroupPresentation {
    std::vector<std::string> generators;
    std::vector<Word> relators;

    explicit GroupPresentation(std::vector<std::string> gens, std::vector<Word> rels = {})
        : generators(std::move(gens)), relators(std::move(rels)) {
        std::set<std::string> seen(generators.begin(), generators.end());
        if (seen.size() != generators.size())
            throw std::invalid_argument("generator symbols must be distinct");
        for (const auto& r : relators) {
            if (r.empty()) throw std::invalid_argument("relators must be nonempty");
            if (free_reduce(r) != r) throw std::invalid_argument("relators must be freely reduced");
            for (int x : r)
                if (x == 0 || std::abs(x) > rank())
                    throw std::invalid_argument("relator letter out of generator range");
        }
    }

    int rank() const { return static_cast<int>(generators.size()); }
    bool is_free() const { return relators.empty(); }

    // Free group of rank r with symbols a, b, c, ... (g26, g27, ... past z).
    static GroupPresentation free_group(int r) {
        if (r < 0) throw std::invalid_argument("rank must be >= 0");
        std::vector<std::string> gens;
        for (int i = 0; i < r; ++i)
            gens.push_back(i < 26 ? std::string(1, static_cast<char>('a' + i))
                                  : "g" + std::to_string(i));
        return GroupPresentation(std::move(gens));
    }
};

// Visit every freely reduced nonempty word of length <= R, shortest first,
// letters in signed order +1, -1, +2, -2, ... Returns early if the visitor
// returns false.
template <typename Visit>
inline void for_each_reduced_word(int rank, int R, Visit&& visit) {
    if (rank < 1 || R < 1) return;
    std::vector<int> letters;
    for (int g = 1; g <= rank; ++g) {
        letters.push_back(g);
        letters.push_back(-g);
    }
    Word word;
    auto dfs = [&](auto&& self) -> bool {
        if (static_cast<int>(word.size()) == R) return true;
        for (int x : letters) {
            if (!word.empty() && word.back() == -x) continue;
            word.push_back(x);
            if (!visit(static_cast<const Word&>(word))) return false;
            if (!self(self)) return false;
            word.pop_back();
        }
        return true;
    };
    dfs(dfs);
}

// A permutation representation of a presentation. Permutation validity is
// enforced here; relator validity is *reported* (first_relator_violation)
// and enforced by the consumers that require a genuine action, so that the
// same type can carry arbitrary labeled permutation data for the sofic
// deviation diagnostics.
struct PermutationAction {
    GroupPresentation presentation;
    int degree = 1;
    std::vector<std::vector<int>> images;          // images[g][p] = g·p
    std::vector<std::vector<int>> inverse_images;  // inverse_images[g][g·p] = p

    PermutationAction(GroupPresentation pres, int n, std::vector<std::vector<int>> perms)
        : presentation(std::move(pres)), degree(n), images(std::move(perms)) {
        if (degree < 1) throw std::invalid_argument("degree must be >= 1");
        if (static_cast<int>(images.size()) != presentation.rank())
            throw std::invalid_argument("need one permutation per generator");
        inverse_images.assign(images.size(),
                              std::vector<int>(static_cast<std::size_t>(degree), -1));
        for (std::size_t g = 0; g < images.size(); ++g) {
            if (static_cast<int>(images[g].size()) != degree)
                throw std::invalid_argument("permutation size must equal the degree");
            for (int p = 0; p < degree; ++p) {
                const int q = images[g][static_cast<std::size_t>(p)];
                if (q < 0 || q >= degree || inverse_images[g][static_cast<std::size_t>(q)] != -1)
                    throw std::invalid_argument("generator image is not a permutation");
                inverse_images[g][static_cast<std::size_t>(q)] = p;
            }
        }
    }

    // Apply one signed generator.
    int step(int letter, int p) const {
        const std::size_t g = static_cast<std::size_t>(std::abs(letter) - 1);
        if (letter == 0 || g >= images.size())
            throw std::invalid_argument("letter out of generator range");
        return letter > 0 ? images[g][static_cast<std::size_t>(p)]
                          : inverse_images[g][static_cast<std::size_t>(p)];
    }

    // Left action: rightmost letter first.
    int apply_word(const Word& w, int p) const {
        for (auto it = w.rbegin(); it != w.rend(); ++it) p = step(*it, p);
        return p;
    }

    bool word_is_identity(const Word& w) const {
        for (int p = 0; p < degree; ++p)
            if (apply_word(w, p) != p) return false;
        return true;
    }

    // (relator index, first moved point), if any relator fails to act
    // trivially.
    std::optional<std::pair<int, int>> first_relator_violation() const {
        for (std::size_t r = 0; r < presentation.relators.size(); ++r)
            for (int p = 0; p < degree; ++p)
                if (apply_word(presentation.relators[r], p) != p)
                    return std::make_pair(static_cast<int>(r), p);
        return std::nullopt;
    }

    bool transitive() const {
        std::vector<char> seen(static_cast<std::size_t>(degree), 0);
        std::vector<int> stack{0};
        seen[0] = 1;
        int count = 1;
        while (!stack.empty()) {
            const int p = stack.back();
            stack.pop_back();
            for (std::size_t g = 0; g < images.size(); ++g)
                for (int q : {images[g][static_cast<std::size_t>(p)],
                              inverse_images[g][static_cast<std::size_t>(p)]})
                    if (!seen[static_cast<std::size_t>(q)]) {
                        seen[static_cast<std::size_t>(q)] = 1;
                        ++count;
                        stack.push_back(q);
                    }
        }
        return count == degree;
    }
};

// Largest fixed-point fraction over nontrivial freely reduced words of
// length <= R; exact rational. The finite Farber diagnostic: genuinely
// Farber chains drive this to 0 at every fixed R.
inline Rat farber_deviation(const PermutationAction& a, int R) {
    if (R < 1) return Rat(0);
    const int n = a.degree;
    const int r = a.presentation.rank();
    if (r == 0) return Rat(0);
    long best = 0;
    // DFS over reduced words, extending on the right: images'[p] = images[x·p].
    std::vector<int> identity(static_cast<std::size_t>(n));
    for (int p = 0; p < n; ++p) identity[static_cast<std::size_t>(p)] = p;
    auto dfs = [&](auto&& self, const std::vector<int>& imgs, int last, int depth) -> bool {
        if (depth > 0) {
            long fixed = 0;
            for (int p = 0; p < n; ++p)
                if (imgs[static_cast<std::size_t>(p)] == p) ++fixed;
            best = std::max(best, fixed);
            if (best == n) return false;  // cannot get worse
        }
        if (depth == R) return true;
        for (int g = 1; g <= r; ++g)
            for (int x : {g, -g}) {
                if (last == -x) continue;
                std::vector<int> next(static_cast<std::size_t>(n));
                for (int p = 0; p < n; ++p)
                    next[static_cast<std::size_t>(p)] = imgs[static_cast<std::size_t>(a.step(x, p))];
                if (!self(self, next, x, depth + 1)) return false;
            }
        return true;
    };
    dfs(dfs, identity, 0, 0);
    return rat(best, n);
}

struct DeviationReport {
    Rat relator_part;  // max over relators of the moved-point fraction
    Rat farber_part;   // farber_deviation of the labeled permutations
};

// Sofic-approximant diagnostic for arbitrary labeled permutation data: near
// (0, 0) means relators act almost trivially while short nontrivial words
// act almost freely.
inline DeviationReport relator_deviation(const GroupPresentation& p,
                                         const std::vector<std::vector<int>>& perms, int R) {
    PermutationAction labeled(p, perms.empty() ? 1 : static_cast<int>(perms.front().size()),
                              perms);
    Rat worst(0);
    for (const auto& rel : p.relators) {
        long moved = 0;
        for (int x = 0; x < labeled.degree; ++x)
            if (labeled.apply_word(rel, x) != x) ++moved;
        Rat frac = rat(moved, labeled.degree);
        if (frac > worst) worst = frac;
    }
    return {worst, farber_deviation(labeled, R)};
}

}  // namespace graphlim
