#pragma once

#include "cag/model.hpp"
#include "cag/rational.hpp"
#include "cag/sequential.hpp"

#include <array>
#include <cstdint>
#include <optional>
#include <string_view>
#include <vector>

namespace cag {

// ---------------------------------------------------------------------------
// Named instances

Instance example1();
Instance example1_minus_dummy();
/// n unit nodes, m unit agents sharing {{q1..qm}, {q(m+1)}, ..., {qn}}; needs n > m.
Instance poa_lower_bound(int n, int m);
/// Two agents sharing {{q1,q2}, {q3}}, moving in index order.
SequentialGame spoa_two_agent();
/// 2m-1 nodes, m agents sharing {{q1..qm}, {q(m+1)}, ..., {q(2m-1)}}; needs m >= 2.
SequentialGame spoa_family(int m);
/// One unit node, weights (1,2), both agents choosing between {q1} and the
/// empty set. Deliberately fails validation: it only exists to show that no
/// exact potential fits weighted agents.
Instance no_potential_counterexample();

/// Parses "example1", "example1-minus-dummy", "poa-lb(n,m)", "spoa-two-agent",
/// "spoa-family(m)" or "no-potential-counterexample". The order is the
/// identity for all of them.
SequentialGame build_named_instance(std::string_view name);

// ---------------------------------------------------------------------------
// Value splitting and common strategy spaces

struct SplitOutput {
    Instance instance;
    /// groups[j] lists the unit nodes that replace original node j.
    std::vector<std::vector<NodeIndex>> groups;
};

SplitOutput split_unit_values(const Instance& inst);

/// Where a strategy of the common space came from.
struct StrategyOrigin {
    AgentIndex agent;
    std::size_t strategy;
};

/// Output of the two transforms that give every agent one shared space.
struct CommonSpaceOutput {
    Instance instance;
    std::vector<StrategyOrigin> origin;  ///< one entry per shared strategy
    /// Reserve nodes added for each original agent.
    std::vector<std::vector<NodeIndex>> reserve;
    /// symmetrize_weighted only: the heavy agent and the constants T, M, M'.
    AgentIndex heavy = 0;
    std::int64_t T = 0;
    std::int64_t M = 0;
    std::int64_t M_prime = 0;
};

/// Adds one reserve node per agent (heavy agent: (2T+1)M', others: 2M') and
/// gives all agents the union of the augmented spaces. Requires every weight
/// but at most one to equal 1. The unsplit form keeps node values.
CommonSpaceOutput symmetrize_weighted(const Instance& inst);

/// symmetrize_weighted followed by split_unit_values.
CommonSpaceOutput symmetrize_weighted_split(const Instance& inst);

/// Adds 2n+1 private unit nodes per agent and unions the augmented spaces.
/// Unit weights and values only.
CommonSpaceOutput unionize_strategies(const Instance& inst);

/// Role of each output agent: the original agent whose augmented space
/// contains its chosen strategy.
std::vector<AgentIndex> roles(const CommonSpaceOutput& out, const StrategyProfile& profile);

/// Profile of the original instance played by a perfectly-matched output
/// profile (each original agent impersonated by exactly one output agent of
/// equal weight); nullopt otherwise.
std::optional<StrategyProfile> pull_back(const CommonSpaceOutput& out, const StrategyProfile& profile);

/// The output profile in which every agent plays its own original strategy.
StrategyProfile push_forward(const CommonSpaceOutput& out, const StrategyProfile& original);

// ---------------------------------------------------------------------------
// Edge-weight encoding

struct FractionTerm {
    std::int64_t B;
    BigInt C;
};

struct FractionDecomposition {
    int n = 0;
    std::vector<std::int64_t> primes;
    BigInt M;
    Rational lambda;  ///< 1/M
    std::vector<BigInt> t;  ///< sum t_i r_i = 1 (mod M), each in [0, M)
    BigInt T;               ///< (sum t_i r_i - 1) / M
    std::vector<FractionTerm> terms;  ///< non-zero terms; sum C/B = w/M
};

/// First n primes by trial division below 2n(ln n + 2) + 16.
std::vector<std::int64_t> first_primes(int n);

FractionDecomposition decompose_fraction(int n, std::int64_t w);

struct EdgeGadget {
    std::int64_t w = 0;
    std::vector<std::int64_t> d_plus;   ///< sorted
    std::vector<std::int64_t> d_minus;  ///< sorted
    Rational lambda;
    Rational rho;  ///< potential of the gadget nodes on an uncut edge: H(d)+H(d+2) per d+, 2 H(d+1) per d-
};

/// max(1, ceil(log2 w_bar)).
int gadget_bits(std::int64_t w_bar);

/// d-lists with lambda w = sum_+ (1/(d+1) - 1/(d+2)) - sum_- (...), where
/// lambda = 1/M for the first gadget_bits(w_bar) primes. Equal entries of the
/// two lists cancel.
EdgeGadget edge_gadget_terms(std::int64_t w_bar, std::int64_t w);

// ---------------------------------------------------------------------------
// Local max-cut

struct CutEdge {
    int u;
    int v;
    std::int64_t w;
};

struct CutGraph {
    int vertices = 0;
    std::vector<CutEdge> edges;
};

/// Throws InputError on self-loops, bad endpoints or weights below 1.
void check_graph(const CutGraph& g);

/// sum over edges of (1 - x_u x_v)/2 * w.
std::int64_t cut_weight(const CutGraph& g, const std::vector<int>& x);

bool oracle_local_maxcut(const CutGraph& g, const std::vector<int>& x);

struct MaxCutReduction {
    Instance instance;
    std::vector<AgentIndex> vertex_agents;  ///< agent of vertex i; strategy 0 is x=1, 1 is x=-1
    std::vector<EdgeGadget> gadgets;        ///< per edge
    Rational lambda;
    Rational rho_total;
};

/// Unit-weight, unit-value instance whose Rosenthal potential at the profile
/// of x equals lambda * cut_weight(x) + rho_total.
MaxCutReduction maxcut_to_cag(const CutGraph& g);

std::vector<int> cut_from_profile(const MaxCutReduction& red, const StrategyProfile& profile);
StrategyProfile profile_from_cut(const MaxCutReduction& red, const std::vector<int>& x);

// ---------------------------------------------------------------------------
// 3D matching

struct ThreeDMInstance {
    int n = 0;
    std::vector<std::array<int, 3>> triples;  ///< (x, y, z), each in [0, n)
};

void check_3dm(const ThreeDMInstance& tdm);

struct TdmReduction {
    Instance instance;
    std::vector<AgentIndex> match_agents;
    std::size_t fail_strategy_offset = 0;  ///< first strategy of a match agent outside the triples
};

TdmReduction tdm_to_cag(const ThreeDMInstance& tdm);

/// Exhaustive search; throws DomainError("search-space-too-large") past `budget` steps.
bool oracle_perfect_3dm(const ThreeDMInstance& tdm, std::uint64_t budget = 10'000'000);

// ---------------------------------------------------------------------------
// Quantified boolean formulas

/// exists x1 forall x2 exists x3 ... exists xn (3-CNF); literal +i is x_i, -i is not x_i.
struct TqbfFormula {
    int vars = 0;
    std::vector<std::array<int, 3>> clauses;
};

/// Throws InputError unless vars is odd and at least 3, there is a clause, and
/// every literal names a variable.
void check_tqbf(const TqbfFormula& f);

/// Appends vacuous variables until vars is odd and at least 3; the value of
/// the formula is unchanged.
TqbfFormula pad_tqbf(const TqbfFormula& f);

struct TqbfReduction {
    SequentialGame game;
    int n = 0;
    int n_prime = 0;
    int clause_count = 0;
    /// Node of the negation of literal k of clause j.
    std::vector<std::array<NodeIndex, 3>> negated_literal_node;
    std::size_t false_strategy = 0;  ///< index of s^F in agent n+2's space
    Rational threshold;              ///< 1/(n'+1) + 1
};

TqbfReduction tqbf_to_cag(const TqbfFormula& f);

bool oracle_tqbf(const TqbfFormula& f, std::uint64_t budget = 1ull << 24);

}  // namespace cag
