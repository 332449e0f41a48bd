#include "pld/ef.hpp"

#include <algorithm>
#include <map>
#include <vector>

#include "pld/errors.hpp"

namespace pld::logic {

namespace {

// A position is the set of pebble pairs placed so far; sorted order is the
// canonical form (pebble placement order is irrelevant to the game value).
using Position = std::vector<std::pair<int, int>>;

class GameSolver {
public:
    GameSolver(const Graph& g, const Graph& h) : g_(g), h_(h) {}

    bool duplicator_wins(Position pos, int rounds) {
        std::sort(pos.begin(), pos.end());
        return wins(pos, rounds);
    }

private:
    // the position is assumed to be a partial isomorphism already
    bool wins(const Position& pos, int rounds) {
        if (rounds == 0) return true;
        auto key = std::make_pair(pos, rounds);
        auto it = memo_.find(key);
        if (it != memo_.end()) return it->second;

        bool ok = true;
        // Spoiler picks a side and a vertex; Duplicator must answer on the
        // other side keeping a partial isomorphism
        for (int v = 1; v <= g_.n() && ok; ++v) {
            bool answered = false;
            for (int w = 1; w <= h_.n() && !answered; ++w) {
                if (!consistent(pos, v, w)) continue;
                answered = wins(extend(pos, v, w), rounds - 1);
            }
            ok = answered;
        }
        for (int w = 1; w <= h_.n() && ok; ++w) {
            bool answered = false;
            for (int v = 1; v <= g_.n() && !answered; ++v) {
                if (!consistent(pos, v, w)) continue;
                answered = wins(extend(pos, v, w), rounds - 1);
            }
            ok = answered;
        }
        memo_.emplace(std::move(key), ok);
        return ok;
    }

    bool consistent(const Position& pos, int v, int w) const {
        for (auto [a, b] : pos) {
            if ((a == v) != (b == w)) return false;
            if (a == v && b == w) return true;  // repeating a placed pair is fine
            if (g_.has_edge(a, v) != h_.has_edge(b, w)) return false;
        }
        return true;
    }

    static Position extend(Position pos, int v, int w) {
        auto pr = std::make_pair(v, w);
        auto it = std::lower_bound(pos.begin(), pos.end(), pr);
        if (it == pos.end() || *it != pr) pos.insert(it, pr);
        return pos;
    }

    const Graph& g_;
    const Graph& h_;
    std::map<std::pair<Position, int>, bool> memo_;
};

}  // namespace

bool ef_equivalent(const Graph& g, const Graph& h, int k, const EfCaps& caps) {
    if (k < 0) throw std::invalid_argument("ef_equivalent: negative round count");
    if (k > caps.max_rounds) {
        throw CapError("ef_equivalent: k exceeds cap " + std::to_string(caps.max_rounds));
    }
    if (g.n() > caps.max_vertices || h.n() > caps.max_vertices) {
        throw CapError("ef_equivalent: graph exceeds vertex cap " +
                       std::to_string(caps.max_vertices));
    }
    // with no rounds every pair of graphs is equivalent (no rank-0 sentences
    // distinguish structures over this vocabulary)
    return GameSolver(g, h).duplicator_wins({}, k);
}

}  // namespace pld::logic
