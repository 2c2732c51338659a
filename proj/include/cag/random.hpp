#pragma once

#include "cag/model.hpp"

#include <cstdint>
#include <string>
#include <string_view>

namespace cag {

enum class InstanceKind {
    symmetric,     ///< shared space, unit weights, unit values
    s_asymmetric,  ///< distinct spaces, unit weights, unit values
    w_asymmetric,  ///< shared space, some weight above 1, unit values
    full,          ///< distinct spaces, some weight above 1, some value above 1
};

/// Accepts "symmetric", "s-asymmetric", "w-asymmetric" and "full".
InstanceKind parse_kind(std::string_view text);
std::string to_string(InstanceKind kind);

struct RandomSizes {
    int agents = 3;
    int nodes = 5;
    int strategies = 3;  ///< per space
    std::int64_t max_weight = 4;
    std::int64_t max_value = 3;
};

/// Deterministic in (kind, seed, sizes) on every platform. Every strategy is
/// non-empty, every node is covered, and the symmetry flags match the kind.
Instance gen_random(InstanceKind kind, std::uint64_t seed, const RandomSizes& sizes = {});

/// Uniform integer in [lo, hi] from a 64-bit engine, by rejection.
class Draw {
public:
    explicit Draw(std::uint64_t seed);
    std::int64_t operator()(std::int64_t lo, std::int64_t hi);

private:
    std::uint64_t next();
    std::uint64_t state_[4];
};

}  // namespace cag
