#include "cag/potentials.hpp"

#include "cag/error.hpp"

#include <algorithm>
#include <cmath>

namespace cag {

namespace {

void require_unit_weights(const Instance& inst) {
    for (const auto& a : inst.agents) {
        if (a.weight != 1) {
            throw InputError("weighted-agents-unsupported");
        }
    }
}

}  // namespace

Rational rosenthal_potential(const Instance& inst, const StrategyProfile& profile) {
    require_unit_weights(inst);
    auto c = loads(inst, profile);
    std::int64_t top = c.empty() ? 0 : *std::max_element(c.begin(), c.end());
    return rosenthal_potential(inst, profile, HarmonicTable(static_cast<std::size_t>(top)));
}

Rational rosenthal_potential(const Instance& inst, const StrategyProfile& profile,
                             const HarmonicTable& harmonic) {
    require_unit_weights(inst);
    auto c = loads(inst, profile);
    // Group node values by load so each harmonic number is multiplied once.
    std::vector<BigInt> value_at_load(harmonic.max_k() + 1);
    for (NodeIndex j = 0; j < c.size(); ++j) {
        if (c[j] == 0) continue;
        if (static_cast<std::size_t>(c[j]) > harmonic.max_k()) {
            throw InputError("harmonic table too small for profile load " + std::to_string(c[j]));
        }
        value_at_load[static_cast<std::size_t>(c[j])] += inst.nodes[j].value;
    }
    Rational phi;
    for (std::size_t k = 1; k < value_at_load.size(); ++k) {
        if (value_at_load[k] != 0) phi += Rational(value_at_load[k]) * harmonic(k);
    }
    return phi;
}

Rational two_agent_potential(const Instance& inst, const StrategyProfile& profile) {
    if (inst.agent_count() != 2) {
        throw InputError("requires-two-agents");
    }
    check_profile(inst, profile);
    const std::int64_t w1 = inst.agents[0].weight;
    const std::int64_t w2 = inst.agents[1].weight;
    const Strategy& s1 = inst.agents[0].strategies[profile.choices[0]];
    const Strategy& s2 = inst.agents[1].strategies[profile.choices[1]];
    const Rational shared = Rational(w1 + w2) - make_rational(w1 * w2, w1 + w2);

    std::vector<unsigned char> mask(inst.node_count(), 0);
    for (NodeIndex j : s1) mask.at(j) |= 1;
    for (NodeIndex j : s2) mask.at(j) |= 2;

    Rational total;
    std::int64_t single = 0;
    BigInt both_value = 0;
    for (NodeIndex j = 0; j < mask.size(); ++j) {
        switch (mask[j]) {
            case 1: single += inst.nodes[j].value * w1; break;
            case 2: single += inst.nodes[j].value * w2; break;
            case 3: both_value += inst.nodes[j].value; break;
            default: break;
        }
    }
    total = Rational(single) + Rational(both_value) * shared;
    return total;
}

double psi(std::int64_t x) {
    if (x < 0) {
        throw InputError("psi: negative argument");
    }
    return x == 0 ? -1.0 : std::log(static_cast<double>(x));
}

double log_potential(const Instance& inst, const StrategyProfile& profile) {
    auto c = loads(inst, profile);
    double sum = 0.0;
    for (NodeIndex j = 0; j < c.size(); ++j) {
        sum += static_cast<double>(inst.nodes[j].value) * psi(c[j]);
    }
    return sum;
}

double log_potential_error_bound(const Instance& inst) {
    std::int64_t vmax = 0;
    for (const auto& n : inst.nodes) vmax = std::max(vmax, n.value);
    return static_cast<double>(inst.node_count()) * static_cast<double>(vmax) * 1e-12;
}

}  // namespace cag
