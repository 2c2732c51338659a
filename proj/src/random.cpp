#include "cag/random.hpp"

#include "cag/error.hpp"

#include <algorithm>
#include <random>

namespace cag {

InstanceKind parse_kind(std::string_view text) {
    if (text == "symmetric") return InstanceKind::symmetric;
    if (text == "s-asymmetric") return InstanceKind::s_asymmetric;
    if (text == "w-asymmetric") return InstanceKind::w_asymmetric;
    if (text == "full") return InstanceKind::full;
    throw InputError("unknown instance kind '" + std::string(text) + "'");
}

std::string to_string(InstanceKind kind) {
    switch (kind) {
        case InstanceKind::symmetric: return "symmetric";
        case InstanceKind::s_asymmetric: return "s-asymmetric";
        case InstanceKind::w_asymmetric: return "w-asymmetric";
        case InstanceKind::full: return "full";
    }
    return "?";
}

Draw::Draw(std::uint64_t seed) {
    std::mt19937_64 engine(seed);
    for (auto& s : state_) s = engine();
}

std::uint64_t Draw::next() {
    // xoshiro256**: fixed output sequence independent of the standard library.
    auto rotl = [](std::uint64_t x, int k) { return (x << k) | (x >> (64 - k)); };
    const std::uint64_t result = rotl(state_[1] * 5, 7) * 9;
    const std::uint64_t t = state_[1] << 17;
    state_[2] ^= state_[0];
    state_[3] ^= state_[1];
    state_[1] ^= state_[2];
    state_[0] ^= state_[3];
    state_[2] ^= t;
    state_[3] = rotl(state_[3], 45);
    return result;
}

std::int64_t Draw::operator()(std::int64_t lo, std::int64_t hi) {
    const std::uint64_t span = static_cast<std::uint64_t>(hi - lo) + 1;
    if (span == 0) return lo + static_cast<std::int64_t>(next());
    const std::uint64_t limit = ~std::uint64_t{0} - (~std::uint64_t{0} % span);
    std::uint64_t x;
    do {
        x = next();
    } while (x >= limit);
    return lo + static_cast<std::int64_t>(x % span);
}

namespace {

Strategy random_strategy(Draw& draw, int nodes) {
    Strategy s;
    while (s.empty()) {
        for (int j = 0; j < nodes; ++j) {
            if (draw(0, 1)) s.push_back(j);
        }
    }
    return s;
}

std::vector<Strategy> random_space(Draw& draw, const RandomSizes& sizes) {
    std::vector<Strategy> space;
    for (int k = 0; k < sizes.strategies; ++k) space.push_back(random_strategy(draw, sizes.nodes));
    return space;
}

void insert_sorted(Strategy& s, NodeIndex j) {
    auto it = std::lower_bound(s.begin(), s.end(), j);
    if (it == s.end() || *it != j) s.insert(it, j);
}

}  // namespace

Instance gen_random(InstanceKind kind, std::uint64_t seed, const RandomSizes& sizes) {
    if (sizes.agents < 1 || sizes.nodes < 1 || sizes.strategies < 1) {
        throw InputError("random sizes must be positive");
    }
    const bool distinct_spaces = kind == InstanceKind::s_asymmetric || kind == InstanceKind::full;
    const bool weighted = kind == InstanceKind::w_asymmetric || kind == InstanceKind::full;
    const bool valued = kind == InstanceKind::full;
    if (distinct_spaces && sizes.agents < 2) {
        throw InputError("asymmetric spaces need at least two agents");
    }
    if (distinct_spaces && sizes.nodes < 2) {
        throw InputError("asymmetric spaces need at least two nodes");
    }
    if (weighted && sizes.max_weight < 2) {
        throw InputError("weighted kinds need max_weight >= 2");
    }
    if (valued && sizes.max_value < 2) {
        throw InputError("valued kinds need max_value >= 2");
    }

    Draw draw(seed);
    Instance inst;
    for (int j = 0; j < sizes.nodes; ++j) {
        inst.nodes.push_back({"q" + std::to_string(j + 1), valued ? draw(1, sizes.max_value) : 1});
    }
    const std::vector<Strategy> shared = distinct_spaces ? std::vector<Strategy>{} : random_space(draw, sizes);
    for (int i = 0; i < sizes.agents; ++i) {
        inst.agents.push_back({std::to_string(i + 1), weighted ? draw(1, sizes.max_weight) : 1,
                               distinct_spaces ? random_space(draw, sizes) : shared});
    }

    std::vector<bool> covered(sizes.nodes, false);
    for (const auto& a : inst.agents) {
        for (const auto& s : a.strategies) {
            for (NodeIndex j : s) covered[j] = true;
        }
    }
    for (int j = 0; j < sizes.nodes; ++j) {
        if (covered[j]) continue;
        const auto k = static_cast<std::size_t>(draw(0, sizes.strategies - 1));
        if (distinct_spaces) {
            insert_sorted(inst.agents[draw(0, sizes.agents - 1)].strategies[k], j);
        } else {
            for (auto& a : inst.agents) insert_sorted(a.strategies[k], j);
        }
    }

    if (weighted && std::all_of(inst.agents.begin(), inst.agents.end(), [](const Agent& a) { return a.weight == 1; })) {
        inst.agents[draw(0, sizes.agents - 1)].weight = draw(2, sizes.max_weight);
    }
    if (valued && std::all_of(inst.nodes.begin(), inst.nodes.end(), [](const Node& n) { return n.value == 1; })) {
        inst.nodes[draw(0, sizes.nodes - 1)].value = draw(2, sizes.max_value);
    }
    if (distinct_spaces && !classify_symmetry(inst).asymmetric_strategy_spaces) {
        // All spaces came out equal as sets: give the last agent one extra
        // strategy that the others lack, or drop one if none is left.
        const auto& reference = inst.agents.front().strategies;
        bool added = false;
        const int bits = std::min(sizes.nodes, 20);
        for (std::uint32_t mask = 1; mask < (1u << bits); ++mask) {
            Strategy candidate;
            for (int j = 0; j < bits; ++j) {
                if (mask & (1u << j)) candidate.push_back(j);
            }
            if (std::find(reference.begin(), reference.end(), candidate) == reference.end()) {
                inst.agents.back().strategies.push_back(std::move(candidate));
                added = true;
                break;
            }
        }
        if (!added) {
            // Every subset is present, so removing all copies of one leaves a non-empty space.
            auto& last = inst.agents.back().strategies;
            const Strategy drop = last.back();
            std::erase(last, drop);
        }
        if (!classify_symmetry(inst).asymmetric_strategy_spaces) {
            throw InputError("sizes too small for distinct strategy spaces");
        }
    }
    return inst;
}

}  // namespace cag
