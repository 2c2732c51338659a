#include "cag/gadgets.hpp"

#include "cag/error.hpp"

#include <boost/integer/extended_euclidean.hpp>

#include <algorithm>
#include <cmath>
#include <functional>
#include <map>
#include <mutex>
#include <regex>
#include <set>
#include <string>
#include <unordered_map>
#include <unordered_set>

namespace cag {

namespace {

/// Incremental instance construction with node lookup by id.
class Builder {
public:
    NodeIndex node(std::string id, std::int64_t value = 1) {
        const NodeIndex j = inst_.nodes.size();
        if (!index_.emplace(id, j).second) {
            throw Error("duplicate generated node id '" + id + "'");
        }
        inst_.nodes.push_back({std::move(id), value});
        return j;
    }

    NodeIndex at(const std::string& id) const { return index_.at(id); }

    AgentIndex agent(std::string id, std::int64_t weight, std::vector<Strategy> strategies) {
        for (auto& s : strategies) {
            std::sort(s.begin(), s.end());
            s.erase(std::unique(s.begin(), s.end()), s.end());
        }
        inst_.agents.push_back({std::move(id), weight, std::move(strategies)});
        return inst_.agents.size() - 1;
    }

    Strategy ids(std::initializer_list<const char*> names) const {
        Strategy s;
        for (const char* n : names) s.push_back(at(n));
        return s;
    }

    Instance take() { return std::move(inst_); }

private:
    Instance inst_;
    std::unordered_map<std::string, NodeIndex> index_;
};

std::string q(int k) { return "q" + std::to_string(k); }

}  // namespace

// ---------------------------------------------------------------------------
// Named instances

Instance example1() {
    Instance inst = example1_minus_dummy();
    inst.agents.push_back({"3", 1, {{0, 3}}});
    return inst;
}

Instance example1_minus_dummy() {
    Builder b;
    b.node("q1", 2);
    b.node("q2", 1);
    b.node("q3", 1);
    b.node("q4", 2);
    b.agent("1", 4, {b.ids({"q1", "q2"}), b.ids({"q3", "q4"})});
    b.agent("2", 1, {b.ids({"q1", "q3"}), b.ids({"q2", "q4"})});
    return b.take();
}

Instance poa_lower_bound(int n, int m) {
    if (m < 1 || n <= m) {
        throw InputError("poa-lb needs n > m >= 1");
    }
    Builder b;
    Strategy head;
    for (int k = 1; k <= n; ++k) {
        NodeIndex j = b.node(q(k));
        if (k <= m) head.push_back(j);
    }
    std::vector<Strategy> space{head};
    for (int k = m + 1; k <= n; ++k) space.push_back({static_cast<NodeIndex>(k - 1)});
    for (int i = 1; i <= m; ++i) b.agent(std::to_string(i), 1, space);
    return b.take();
}

SequentialGame spoa_two_agent() {
    Builder b;
    b.node("q1");
    b.node("q2");
    b.node("q3");
    std::vector<Strategy> space{b.ids({"q1", "q2"}), b.ids({"q3"})};
    b.agent("1", 1, space);
    b.agent("2", 1, space);
    return {b.take(), {0, 1}};
}

SequentialGame spoa_family(int m) {
    if (m < 2) {
        throw InputError("spoa-family needs m >= 2");
    }
    Instance inst = poa_lower_bound(2 * m - 1, m);
    std::vector<AgentIndex> order(inst.agent_count());
    for (AgentIndex i = 0; i < order.size(); ++i) order[i] = i;
    return {std::move(inst), std::move(order)};
}

Instance no_potential_counterexample() {
    Instance inst;
    inst.nodes.push_back({"q1", 1});
    inst.agents.push_back({"1", 1, {{0}, {}}});
    inst.agents.push_back({"2", 2, {{0}, {}}});
    return inst;
}

SequentialGame build_named_instance(std::string_view name) {
    static const std::regex pattern(R"(([a-z0-9-]+)(?:\((\d+)(?:,(\d+))?\))?)");
    std::cmatch match;
    const std::string text(name);
    if (!std::regex_match(text.c_str(), match, pattern)) {
        throw InputError("unknown named instance '" + text + "'");
    }
    const std::string base = match[1];
    const int args = match[3].matched ? 2 : match[2].matched ? 1 : 0;
    auto arg = [&](int k) { return std::stoi(match[k].str()); };
    auto identity = [](Instance inst) {
        std::vector<AgentIndex> order(inst.agent_count());
        for (AgentIndex i = 0; i < order.size(); ++i) order[i] = i;
        return SequentialGame{std::move(inst), std::move(order)};
    };
    if (base == "example1" && args == 0) return identity(example1());
    if (base == "example1-minus-dummy" && args == 0) return identity(example1_minus_dummy());
    if (base == "poa-lb" && args == 2) return identity(poa_lower_bound(arg(2), arg(3)));
    if (base == "spoa-two-agent" && args == 0) return spoa_two_agent();
    if (base == "spoa-family" && args == 1) return spoa_family(arg(2));
    if (base == "no-potential-counterexample" && args == 0) return identity(no_potential_counterexample());
    throw InputError("unknown named instance '" + text + "'");
}

// ---------------------------------------------------------------------------
// Value splitting and common strategy spaces

SplitOutput split_unit_values(const Instance& inst) {
    SplitOutput out;
    std::unordered_set<std::string> taken;
    for (const auto& node : inst.nodes) taken.insert(node.id);
    for (const auto& node : inst.nodes) {
        std::vector<NodeIndex> group;
        if (node.value == 1) {
            group.push_back(out.instance.nodes.size());
            out.instance.nodes.push_back({node.id, 1});
        } else {
            for (std::int64_t k = 1; k <= node.value; ++k) {
                std::string id = node.id + "#" + std::to_string(k);
                while (taken.count(id)) id += "'";
                taken.insert(id);
                group.push_back(out.instance.nodes.size());
                out.instance.nodes.push_back({std::move(id), 1});
            }
        }
        out.groups.push_back(std::move(group));
    }
    for (const auto& agent : inst.agents) {
        Agent copy{agent.id, agent.weight, {}};
        for (const auto& s : agent.strategies) {
            Strategy mapped;
            for (NodeIndex j : s) {
                const auto& g = out.groups.at(j);
                mapped.insert(mapped.end(), g.begin(), g.end());
            }
            std::sort(mapped.begin(), mapped.end());
            copy.strategies.push_back(std::move(mapped));
        }
        out.instance.agents.push_back(std::move(copy));
    }
    return out;
}

namespace {

std::string fresh_id(std::string id, const std::unordered_set<std::string>& taken) {
    while (taken.count(id)) id += "'";
    return id;
}

/// Appends each agent's reserve group to its strategies and shares the union.
CommonSpaceOutput common_space(const Instance& inst, const std::vector<std::vector<Node>>& groups) {
    CommonSpaceOutput out;
    out.instance.nodes = inst.nodes;
    std::unordered_set<std::string> taken;
    for (const auto& node : inst.nodes) taken.insert(node.id);
    std::vector<Strategy> shared;
    for (AgentIndex i = 0; i < inst.agent_count(); ++i) {
        std::vector<NodeIndex> reserve;
        for (const auto& node : groups[i]) {
            std::string id = fresh_id(node.id, taken);
            taken.insert(id);
            reserve.push_back(out.instance.nodes.size());
            out.instance.nodes.push_back({std::move(id), node.value});
        }
        for (std::size_t s = 0; s < inst.agents[i].strategies.size(); ++s) {
            Strategy augmented = inst.agents[i].strategies[s];
            augmented.insert(augmented.end(), reserve.begin(), reserve.end());
            shared.push_back(std::move(augmented));
            out.origin.push_back({i, s});
        }
        out.reserve.push_back(std::move(reserve));
    }
    for (const auto& agent : inst.agents) {
        out.instance.agents.push_back({agent.id, agent.weight, shared});
    }
    return out;
}

}  // namespace

CommonSpaceOutput symmetrize_weighted(const Instance& inst) {
    if (inst.agents.empty()) {
        throw InputError("symmetrize needs at least one agent");
    }
    AgentIndex heavy = 0;
    int heavy_count = 0;
    for (AgentIndex i = 0; i < inst.agent_count(); ++i) {
        if (inst.agents[i].weight != 1) {
            heavy = i;
            ++heavy_count;
        }
    }
    if (heavy_count > 1) {
        throw InputError("symmetrize requires all agents but one to have weight 1");
    }
    std::int64_t M = 0;
    for (const auto& agent : inst.agents) {
        for (const auto& s : agent.strategies) {
            std::int64_t value = 0;
            for (NodeIndex j : s) value += inst.nodes.at(j).value;
            M = std::max(M, value);
        }
    }
    const std::int64_t T = inst.agents[heavy].weight;
    const std::int64_t M_prime = (T + 1) * (M + 1);
    std::vector<std::vector<Node>> groups;
    for (AgentIndex i = 0; i < inst.agent_count(); ++i) {
        const std::int64_t value = i == heavy ? (2 * T + 1) * M_prime : 2 * M_prime;
        groups.push_back({Node{"r" + inst.agents[i].id, value}});
    }
    CommonSpaceOutput out = common_space(inst, groups);
    out.heavy = heavy;
    out.T = T;
    out.M = M;
    out.M_prime = M_prime;
    return out;
}

CommonSpaceOutput symmetrize_weighted_split(const Instance& inst) {
    CommonSpaceOutput out = symmetrize_weighted(inst);
    SplitOutput split = split_unit_values(out.instance);
    out.instance = std::move(split.instance);
    for (auto& reserve : out.reserve) {
        std::vector<NodeIndex> expanded;
        for (NodeIndex j : reserve) {
            expanded.insert(expanded.end(), split.groups[j].begin(), split.groups[j].end());
        }
        reserve = std::move(expanded);
    }
    return out;
}

CommonSpaceOutput unionize_strategies(const Instance& inst) {
    for (const auto& agent : inst.agents) {
        if (agent.weight != 1) throw InputError("unionize requires unit weights");
    }
    for (const auto& node : inst.nodes) {
        if (node.value != 1) throw InputError("unionize requires unit values");
    }
    const std::int64_t M = 2 * static_cast<std::int64_t>(inst.node_count()) + 1;
    std::vector<std::vector<Node>> groups;
    for (const auto& agent : inst.agents) {
        std::vector<Node> group;
        for (std::int64_t k = 1; k <= M; ++k) {
            group.push_back({"r" + agent.id + "_" + std::to_string(k), 1});
        }
        groups.push_back(std::move(group));
    }
    CommonSpaceOutput out = common_space(inst, groups);
    out.M = M;
    out.T = 1;
    return out;
}

std::vector<AgentIndex> roles(const CommonSpaceOutput& out, const StrategyProfile& profile) {
    check_profile(out.instance, profile);
    std::vector<AgentIndex> result;
    for (std::size_t choice : profile.choices) result.push_back(out.origin.at(choice).agent);
    return result;
}

std::optional<StrategyProfile> pull_back(const CommonSpaceOutput& out, const StrategyProfile& profile) {
    const auto role = roles(out, profile);
    const std::size_t m = out.reserve.size();
    StrategyProfile original{std::vector<std::size_t>(m, 0)};
    std::vector<int> claimed(m, 0);
    for (AgentIndex k = 0; k < role.size(); ++k) {
        const AgentIndex i = role[k];
        if (out.instance.agents[k].weight != out.instance.agents[i].weight) return std::nullopt;
        if (++claimed[i] > 1) return std::nullopt;
        original.choices[i] = out.origin[profile.choices[k]].strategy;
    }
    if (std::find(claimed.begin(), claimed.end(), 0) != claimed.end()) return std::nullopt;
    return original;
}

StrategyProfile push_forward(const CommonSpaceOutput& out, const StrategyProfile& original) {
    StrategyProfile result{std::vector<std::size_t>(original.choices.size(), 0)};
    for (AgentIndex i = 0; i < original.choices.size(); ++i) {
        auto it = std::find_if(out.origin.begin(), out.origin.end(), [&](const StrategyOrigin& o) {
            return o.agent == i && o.strategy == original.choices[i];
        });
        if (it == out.origin.end()) {
            throw InputError("profile does not match the original instance");
        }
        result.choices[i] = static_cast<std::size_t>(it - out.origin.begin());
    }
    return result;
}

// ---------------------------------------------------------------------------
// Edge-weight encoding

std::vector<std::int64_t> first_primes(int n) {
    if (n < 1) {
        throw InputError("need at least one prime");
    }
    const double ln = std::log(static_cast<double>(n));
    const auto cap = static_cast<std::int64_t>(2.0 * n * (ln + 2.0) + 16.0);
    std::vector<std::int64_t> primes;
    for (std::int64_t k = 2; k <= cap && static_cast<int>(primes.size()) < n; ++k) {
        bool prime = true;
        for (std::int64_t p : primes) {
            if (p * p > k) break;
            if (k % p == 0) {
                prime = false;
                break;
            }
        }
        if (prime) primes.push_back(k);
    }
    if (static_cast<int>(primes.size()) != n) {
        throw Error("prime search cap too small");
    }
    return primes;
}

namespace {

BigInt floor_mod(const BigInt& a, const BigInt& m) {
    BigInt r = a % m;
    if (r < 0) r += m;
    return r;
}

}  // namespace

FractionDecomposition decompose_fraction(int n, std::int64_t w) {
    if (n < 1) {
        throw InputError("decompose_fraction needs n >= 1");
    }
    if (w < 0 || (n < 62 && w > (std::int64_t{1} << n))) {
        throw InputError("w must lie in [0, 2^n]");
    }
    FractionDecomposition d;
    d.n = n;
    d.primes = first_primes(n);
    d.M = 1;
    for (auto p : d.primes) d.M *= p;
    d.lambda = Rational(BigInt(1), d.M);

    std::vector<BigInt> r;
    for (auto p : d.primes) r.push_back(d.M / p);
    // x[i] * gcd(r_1..r_i) + y[i+1] * r_{i+1} = gcd(r_1..r_{i+1})
    std::vector<BigInt> x(n, BigInt(1));
    std::vector<BigInt> y(n, BigInt(1));
    BigInt g = r[0];
    for (int i = 1; i < n; ++i) {
        auto e = boost::integer::extended_euclidean(g, r[i]);
        x[i - 1] = floor_mod(e.x, d.M);
        y[i] = floor_mod(e.y, d.M);
        g = e.gcd;
    }
    BigInt check = 0;
    for (int i = 0; i < n; ++i) {
        BigInt t = y[i];
        for (int j = i; j < n - 1; ++j) t = floor_mod(t * x[j], d.M);
        d.t.push_back(floor_mod(t, d.M));
        check += d.t.back() * r[i];
    }
    if (floor_mod(check, d.M) != floor_mod(BigInt(1), d.M)) {
        throw Error("extended Euclid coefficients do not combine to 1");
    }
    d.T = (check - 1) / d.M;

    BigInt tail = -BigInt(w) * d.T;
    for (int i = 0; i < n; ++i) {
        const BigInt p(d.primes[i]);
        const BigInt wt = BigInt(w) * d.t[i];
        const BigInt c = floor_mod(wt, p);
        tail += (wt - c) / p;
        if (c != 0) d.terms.push_back({d.primes[i], c});
    }
    if (tail != 0) d.terms.push_back({1, tail});

    Rational sum = 0;
    for (const auto& term : d.terms) sum += Rational(term.C, BigInt(term.B));
    if (sum != Rational(BigInt(w), d.M)) {
        throw Error("fraction decomposition does not sum to w/M");
    }
    return d;
}

int gadget_bits(std::int64_t w_bar) {
    if (w_bar < 1) {
        throw InputError("weight bound must be at least 1");
    }
    int bits = 0;
    while (bits < 62 && (std::int64_t{1} << bits) < w_bar) ++bits;
    return std::max(1, bits);
}

EdgeGadget edge_gadget_terms(std::int64_t w_bar, std::int64_t w) {
    if (w < 0 || w > w_bar) {
        throw InputError("edge weight must lie in [0, weight bound]");
    }
    const auto dec = decompose_fraction(gadget_bits(w_bar), w);
    // 1/B = 2 T(0) - sum_{i=0}^{B-2} T(i) with T(d) = 1/(d+1) - 1/(d+2).
    std::map<std::int64_t, std::int64_t> balance;
    for (const auto& term : dec.terms) {
        const auto c = term.C.convert_to<std::int64_t>();
        balance[0] += 2 * c;
        for (std::int64_t i = 0; i + 2 <= term.B; ++i) balance[i] -= c;
    }
    EdgeGadget g;
    g.w = w;
    g.lambda = dec.lambda;
    for (const auto& [d, count] : balance) {
        auto& list = count > 0 ? g.d_plus : g.d_minus;
        for (std::int64_t k = 0; k < std::abs(count); ++k) list.push_back(d);
    }
    Rational lhs = 0;
    Rational rho = 0;
    auto telescope = [](std::int64_t d) { return make_rational(1, d + 1) - make_rational(1, d + 2); };
    auto harmonic = [](std::int64_t k) {
        Rational h = 0;
        for (std::int64_t t = 1; t <= k; ++t) h += make_rational(1, t);
        return h;
    };
    for (auto d : g.d_plus) {
        lhs += telescope(d);
        rho += harmonic(d) + harmonic(d + 2);
    }
    for (auto d : g.d_minus) {
        lhs -= telescope(d);
        rho += 2 * harmonic(d + 1);
    }
    if (lhs != g.lambda * w) {
        throw Error("edge gadget identity failed");
    }
    g.rho = rho;
    return g;
}

// ---------------------------------------------------------------------------
// Local max-cut

void check_graph(const CutGraph& g) {
    if (g.vertices < 1) {
        throw InputError("graph needs at least one vertex");
    }
    for (const auto& e : g.edges) {
        if (e.u < 0 || e.v < 0 || e.u >= g.vertices || e.v >= g.vertices) {
            throw InputError("edge endpoint out of range");
        }
        if (e.u == e.v) {
            throw InputError("self-loop at vertex " + std::to_string(e.u));
        }
        if (e.w < 1) {
            throw InputError("edge weights must be at least 1");
        }
    }
}

std::int64_t cut_weight(const CutGraph& g, const std::vector<int>& x) {
    if (static_cast<int>(x.size()) != g.vertices) {
        throw InputError("assignment length does not match the graph");
    }
    std::int64_t total = 0;
    for (const auto& e : g.edges) {
        if (x[e.u] != x[e.v]) total += e.w;
    }
    return total;
}

bool oracle_local_maxcut(const CutGraph& g, const std::vector<int>& x) {
    const std::int64_t base = cut_weight(g, x);
    std::vector<int> flipped = x;
    for (int i = 0; i < g.vertices; ++i) {
        flipped[i] = -flipped[i];
        const bool better = cut_weight(g, flipped) > base;
        flipped[i] = -flipped[i];
        if (better) return false;
    }
    return true;
}

namespace {

const EdgeGadget& cached_gadget(std::int64_t w_bar, std::int64_t w) {
    static std::mutex lock;
    static std::map<std::pair<int, std::int64_t>, EdgeGadget> cache;
    const std::pair<int, std::int64_t> key{gadget_bits(w_bar), w};
    std::scoped_lock guard(lock);
    auto it = cache.find(key);
    if (it == cache.end()) it = cache.emplace(key, edge_gadget_terms(w_bar, w)).first;
    return it->second;
}

}  // namespace

MaxCutReduction maxcut_to_cag(const CutGraph& g) {
    check_graph(g);
    std::vector<int> degree(g.vertices, 0);
    std::int64_t w_bar = 1;
    for (const auto& e : g.edges) {
        ++degree[e.u];
        ++degree[e.v];
        w_bar = std::max(w_bar, e.w);
    }
    for (int i = 0; i < g.vertices; ++i) {
        if (degree[i] == 0) {
            throw InputError("isolated vertex u" + std::to_string(i + 1));
        }
    }

    MaxCutReduction red;
    // side[i][0] is s_{i,1}, side[i][1] is s_{i,-1}
    std::vector<std::array<Strategy, 2>> side(g.vertices);
    std::vector<Agent> dummies;
    Instance& inst = red.instance;
    auto add_node = [&](std::string id, std::int64_t copies) {
        const NodeIndex j = inst.nodes.size();
        inst.nodes.push_back({id, 1});
        for (std::int64_t t = 1; t <= copies; ++t) {
            dummies.push_back({"d" + id.substr(1) + "_" + std::to_string(t), 1, {{j}}});
        }
        return j;
    };
    for (std::size_t e = 0; e < g.edges.size(); ++e) {
        const auto& edge = g.edges[e];
        const EdgeGadget& gadget = cached_gadget(w_bar, edge.w);
        const std::string tag = "r_e" + std::to_string(e + 1);
        for (std::size_t k = 0; k < gadget.d_plus.size(); ++k) {
            const std::string base = tag + "+" + std::to_string(k + 1) + "_";
            const NodeIndex r0 = add_node(base + "0", gadget.d_plus[k]);
            const NodeIndex r1 = add_node(base + "1", gadget.d_plus[k]);
            side[edge.u][0].push_back(r0);
            side[edge.v][0].push_back(r0);
            side[edge.u][1].push_back(r1);
            side[edge.v][1].push_back(r1);
        }
        for (std::size_t k = 0; k < gadget.d_minus.size(); ++k) {
            const std::string base = tag + "-" + std::to_string(k + 1) + "_";
            const NodeIndex r0 = add_node(base + "0", gadget.d_minus[k]);
            const NodeIndex r1 = add_node(base + "1", gadget.d_minus[k]);
            side[edge.u][0].push_back(r0);
            side[edge.v][1].push_back(r0);
            side[edge.u][1].push_back(r1);
            side[edge.v][0].push_back(r1);
        }
        red.gadgets.push_back(gadget);
        red.lambda = gadget.lambda;
        red.rho_total += gadget.rho;
    }
    for (int i = 0; i < g.vertices; ++i) {
        for (auto& s : side[i]) std::sort(s.begin(), s.end());
        red.vertex_agents.push_back(inst.agents.size());
        inst.agents.push_back({"u" + std::to_string(i + 1), 1, {side[i][0], side[i][1]}});
    }
    for (auto& d : dummies) inst.agents.push_back(std::move(d));
    return red;
}

std::vector<int> cut_from_profile(const MaxCutReduction& red, const StrategyProfile& profile) {
    check_profile(red.instance, profile);
    std::vector<int> x;
    for (AgentIndex a : red.vertex_agents) x.push_back(profile.choices[a] == 0 ? 1 : -1);
    return x;
}

StrategyProfile profile_from_cut(const MaxCutReduction& red, const std::vector<int>& x) {
    if (x.size() != red.vertex_agents.size()) {
        throw InputError("assignment length does not match the graph");
    }
    StrategyProfile p = zero_profile(red.instance);
    for (std::size_t i = 0; i < x.size(); ++i) {
        if (x[i] != 1 && x[i] != -1) throw InputError("assignment entries must be 1 or -1");
        p.choices[red.vertex_agents[i]] = x[i] == 1 ? 0 : 1;
    }
    return p;
}

// ---------------------------------------------------------------------------
// 3D matching

void check_3dm(const ThreeDMInstance& tdm) {
    if (tdm.n < 1) {
        throw InputError("malformed triples: n must be at least 1");
    }
    if (tdm.triples.empty()) {
        throw InputError("malformed triples: no triples");
    }
    std::set<std::array<int, 3>> seen;
    for (const auto& t : tdm.triples) {
        for (int c : t) {
            if (c < 0 || c >= tdm.n) throw InputError("malformed triples: coordinate out of range");
        }
        if (!seen.insert(t).second) throw InputError("malformed triples: duplicate triple");
    }
}

TdmReduction tdm_to_cag(const ThreeDMInstance& tdm) {
    check_3dm(tdm);
    Builder b;
    b.node("q1", 2);
    b.node("q2", 1);
    b.node("q3", 1);
    b.node("q4", 2);
    for (const char* axis : {"x", "y", "z"}) {
        for (int k = 1; k <= tdm.n; ++k) b.node(std::string("qV") + axis + std::to_string(k), 10);
    }
    for (int k = 1; k <= tdm.n; ++k) b.node("qF" + std::to_string(k), 26);
    b.agent("1", 4, {b.ids({"q1", "q2"}), b.ids({"q3", "q4"})});
    b.agent("2", 1, {b.ids({"q1", "q3"}), b.ids({"q2", "q4"})});

    std::vector<Strategy> space;
    for (const auto& t : tdm.triples) {
        space.push_back({b.at("qVx" + std::to_string(t[0] + 1)), b.at("qVy" + std::to_string(t[1] + 1)),
                         b.at("qVz" + std::to_string(t[2] + 1))});
    }
    space.push_back({b.at("qF1"), b.at("q1"), b.at("q4")});
    for (int k = 2; k <= tdm.n; ++k) space.push_back({b.at("qF" + std::to_string(k))});

    TdmReduction red;
    for (int k = 1; k <= tdm.n; ++k) red.match_agents.push_back(b.agent(std::to_string(3 + k), 1, space));
    red.fail_strategy_offset = tdm.triples.size();
    red.instance = b.take();
    return red;
}

bool oracle_perfect_3dm(const ThreeDMInstance& tdm, std::uint64_t budget) {
    if (tdm.n < 1) {
        throw InputError("malformed triples: n must be at least 1");
    }
    std::vector<std::vector<std::array<int, 3>>> by_x(tdm.n);
    for (const auto& t : tdm.triples) by_x.at(t[0]).push_back(t);
    std::vector<bool> used_y(tdm.n, false);
    std::vector<bool> used_z(tdm.n, false);
    std::uint64_t steps = 0;
    std::function<bool(int)> search = [&](int x) {
        if (x == tdm.n) return true;
        for (const auto& t : by_x[x]) {
            if (++steps > budget) throw DomainError("search-space-too-large");
            if (used_y[t[1]] || used_z[t[2]]) continue;
            used_y[t[1]] = used_z[t[2]] = true;
            if (search(x + 1)) return true;
            used_y[t[1]] = used_z[t[2]] = false;
        }
        return false;
    };
    return search(0);
}

// ---------------------------------------------------------------------------
// Quantified boolean formulas

void check_tqbf(const TqbfFormula& f) {
    if (f.vars < 3 || f.vars % 2 == 0) {
        throw InputError("formula needs an odd number of variables, at least 3");
    }
    if (f.clauses.empty()) {
        throw InputError("formula needs at least one clause");
    }
    for (const auto& c : f.clauses) {
        for (int lit : c) {
            if (lit == 0 || std::abs(lit) > f.vars) throw InputError("literal out of range");
        }
    }
}

TqbfFormula pad_tqbf(const TqbfFormula& f) {
    TqbfFormula padded = f;
    while (padded.vars < 3 || padded.vars % 2 == 0) ++padded.vars;
    return padded;
}

TqbfReduction tqbf_to_cag(const TqbfFormula& f) {
    check_tqbf(f);
    const int n = f.vars;
    const int nc = static_cast<int>(f.clauses.size());
    Builder b;
    const NodeIndex q_exists = b.node("qE");
    const NodeIndex q_forall = b.node("qA");
    std::vector<NodeIndex> clause;
    for (int j = 1; j <= nc; ++j) clause.push_back(b.node("qC" + std::to_string(j)));
    std::vector<NodeIndex> pos(n + 1), neg(n + 1);
    for (int i = 1; i <= n; ++i) {
        pos[i] = b.node("qx" + std::to_string(i));
        neg[i] = b.node("qnx" + std::to_string(i));
    }
    std::array<NodeIndex, 4> dummy{};
    for (int k = 0; k < 4; ++k) dummy[k] = b.node("qD" + std::to_string(k));

    for (int i = 1; i <= n; ++i) {
        const NodeIndex hub = i % 2 == 1 ? q_exists : q_forall;
        b.agent(std::to_string(i), 1, {{hub, pos[i]}, {hub, neg[i]}});
    }
    std::vector<Strategy> picker;
    for (int j = 0; j < nc; ++j) {
        Strategy s{q_forall};
        for (int k = 0; k < nc; ++k) {
            if (k != j) s.push_back(clause[k]);
        }
        picker.push_back(std::move(s));
    }
    b.agent(std::to_string(n + 1), 1, std::move(picker));

    TqbfReduction red;
    std::vector<Strategy> responder;
    for (int j = 0; j < nc; ++j) {
        std::array<NodeIndex, 3> negated{};
        for (int k = 0; k < 3; ++k) {
            const int lit = f.clauses[j][k];
            negated[k] = lit > 0 ? neg[lit] : pos[-lit];
            responder.push_back({q_forall, clause[j], negated[k]});
        }
        red.negated_literal_node.push_back(negated);
    }
    red.false_strategy = responder.size();
    responder.push_back({q_exists, dummy[0], dummy[1], dummy[2], dummy[3]});
    b.agent(std::to_string(n + 2), 1, std::move(responder));
    for (int i = n + 3; i <= n + 5; ++i) b.agent(std::to_string(i), 1, {{dummy[1], dummy[2], dummy[3]}});

    red.game.instance = b.take();
    for (AgentIndex i = 0; i < red.game.instance.agent_count(); ++i) red.game.order.push_back(i);
    red.n = n;
    red.n_prime = (n - 1) / 2;
    red.clause_count = nc;
    red.threshold = make_rational(1, red.n_prime + 1) + 1;
    return red;
}

bool oracle_tqbf(const TqbfFormula& f, std::uint64_t budget) {
    if (f.vars < 1) {
        throw InputError("formula needs at least one variable");
    }
    for (const auto& c : f.clauses) {
        for (int lit : c) {
            if (lit == 0 || std::abs(lit) > f.vars) throw InputError("literal out of range");
        }
    }
    if (f.vars >= 63 || (std::uint64_t{1} << f.vars) > budget) {
        throw DomainError("search-space-too-large");
    }
    std::vector<bool> value(f.vars + 1, false);
    auto matrix = [&] {
        for (const auto& c : f.clauses) {
            bool sat = false;
            for (int lit : c) sat = sat || (lit > 0 ? value[lit] : !value[-lit]);
            if (!sat) return false;
        }
        return true;
    };
    std::function<bool(int)> eval = [&](int i) {
        if (i > f.vars) return matrix();
        value[i] = false;
        const bool lo = eval(i + 1);
        const bool exists = i % 2 == 1;
        if (exists && lo) return true;
        if (!exists && !lo) return false;
        value[i] = true;
        return eval(i + 1);
    };
    return eval(1);
}

}  // namespace cag
