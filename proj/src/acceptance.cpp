#include "cag/acceptance.hpp"

#include "cag/dynamics.hpp"
#include "cag/equilibria.hpp"
#include "cag/error.hpp"
#include "cag/gadgets.hpp"
#include "cag/potentials.hpp"
#include "cag/random.hpp"
#include "cag/sequential.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <functional>
#include <set>
#include <sstream>
#include <thread>

namespace cag {

namespace {

StrategyProfile profile_of(std::initializer_list<std::size_t> choices) { return StrategyProfile{choices}; }

/// Calls visit(profile) for every profile in lexicographic order.
template <class F>
void for_each_profile(const Instance& inst, F visit) {
    StrategyProfile p = zero_profile(inst);
    for (;;) {
        visit(p);
        std::size_t k = inst.agent_count();
        while (k > 0) {
            --k;
            if (++p.choices[k] < inst.agents[k].strategies.size()) break;
            p.choices[k] = 0;
            if (k == 0) return;
        }
        if (inst.agent_count() == 0) return;
    }
}

bool payoff_table(const Instance& inst, const std::vector<std::pair<Rational, Rational>>& expected,
                  std::string& detail) {
    std::size_t cell = 0;
    for (std::size_t a = 0; a < 2; ++a) {
        for (std::size_t b = 0; b < 2; ++b, ++cell) {
            StrategyProfile p = zero_profile(inst);
            p.choices[0] = a;
            p.choices[1] = b;
            const Rational u1 = utility(inst, p, 0);
            const Rational u2 = utility(inst, p, 1);
            if (u1 != expected[cell].first || u2 != expected[cell].second) {
                detail = "cell " + std::to_string(cell) + " gave (" + to_string(u1) + ", " + to_string(u2) + ")";
                return false;
            }
        }
    }
    detail = "4 cells exact";
    return true;
}

bool payoffs_full(std::string& detail) {
    const Rational a = make_rational(7, 3), b = make_rational(4, 3), c = make_rational(12, 5), d = make_rational(6, 5);
    return payoff_table(example1(), {{a, b}, {c, d}, {c, d}, {a, b}}, detail);
}

bool payoffs_reduced(std::string& detail) {
    const Rational a = make_rational(13, 5), b = make_rational(7, 5), c = make_rational(14, 5), d = make_rational(11, 5);
    return payoff_table(example1_minus_dummy(), {{a, b}, {c, d}, {c, d}, {a, b}}, detail);
}

bool no_pne(std::string& detail) {
    const auto full = enumerate_pne(example1());
    const auto reduced = enumerate_pne(example1_minus_dummy());
    const std::vector<StrategyProfile> expected{profile_of({0, 1}), profile_of({1, 0})};
    detail = std::to_string(full.size()) + " PNE with dummy, " + std::to_string(reduced.size()) + " without";
    return full.empty() && reduced == expected;
}

RandomSizes draw_sizes(Draw& draw, int agents_lo, int agents_hi, int nodes_lo, int nodes_hi, int strat_lo,
                       int strat_hi, std::int64_t max_weight, std::int64_t max_value) {
    RandomSizes s;
    s.agents = static_cast<int>(draw(agents_lo, agents_hi));
    s.nodes = static_cast<int>(draw(nodes_lo, nodes_hi));
    s.strategies = static_cast<int>(draw(strat_lo, strat_hi));
    s.max_weight = max_weight;
    s.max_value = max_value;
    return s;
}

bool symmetrization(std::string& detail) {
    const auto sym = symmetrize_weighted(example1());
    const std::uint64_t scanned = profile_count(sym.instance);
    if (scanned != 125 || pne_exists(sym.instance)) {
        detail = "symmetrized Example 1 has a PNE or the wrong size";
        return false;
    }
    int kept = 0;
    std::vector<Instance> variants{example1_minus_dummy()};
    for (std::uint64_t k = 0; k < 60; ++k) {
        Draw draw(4000 + k);
        RandomSizes s = draw_sizes(draw, 2, 2, 2, 5, 2, 3, 5, 3);
        Instance inst = gen_random(InstanceKind::full, 4000 + k, s);
        inst.agents[1].weight = 1;
        variants.push_back(std::move(inst));
    }
    for (const auto& inst : variants) {
        const auto out = symmetrize_weighted(inst);
        const auto pne = enumerate_pne(out.instance);
        if (pne.empty()) {
            detail = "a symmetrized two-agent variant lost its PNE";
            return false;
        }
        for (const auto& p : pne) {
            auto back = pull_back(out, p);
            if (!back || !is_approx_pne(inst, *back, 1)) {
                detail = "a PNE of a symmetrized variant does not pull back to a PNE";
                return false;
            }
        }
        ++kept;
    }
    detail = "125 profiles, no PNE; " + std::to_string(kept) + " two-agent variants keep PNE";
    return true;
}

bool potentials(std::string& detail) {
    std::uint64_t checked = 0;
    for (std::uint64_t k = 0; k < 500; ++k) {
        Draw draw(5000 + k);
        RandomSizes s = draw_sizes(draw, 2, 4, 2, 6, 1, 3, 2, 3);
        const InstanceKind kind = k % 2 == 0 ? InstanceKind::symmetric : InstanceKind::s_asymmetric;
        if (kind == InstanceKind::s_asymmetric && s.agents < 2) s.agents = 2;
        Instance inst = gen_random(kind, 5000 + k, s);
        for (auto& n : inst.nodes) n.value = draw(1, 3);
        bool ok = true;
        for_each_profile(inst, [&](const StrategyProfile& p) {
            const Rational phi = rosenthal_potential(inst, p);
            for (AgentIndex i = 0; i < inst.agent_count() && ok; ++i) {
                const Rational u = utility(inst, p, i);
                for (std::size_t t = 0; t < inst.agents[i].strategies.size(); ++t) {
                    StrategyProfile q = p;
                    q.choices[i] = t;
                    ++checked;
                    if (rosenthal_potential(inst, q) - phi != utility(inst, q, i) - u) ok = false;
                }
            }
        });
        if (!ok) {
            detail = "Rosenthal identity failed on unit instance seed " + std::to_string(5000 + k);
            return false;
        }
    }
    for (std::uint64_t k = 0; k < 500; ++k) {
        Draw draw(6000 + k);
        RandomSizes s = draw_sizes(draw, 2, 2, 2, 6, 1, 4, 9, 3);
        Instance inst = gen_random(InstanceKind::full, 6000 + k, s);
        bool ok = true;
        for_each_profile(inst, [&](const StrategyProfile& p) {
            const Rational h = two_agent_potential(inst, p);
            for (AgentIndex i = 0; i < 2 && ok; ++i) {
                const Rational u = utility(inst, p, i);
                for (std::size_t t = 0; t < inst.agents[i].strategies.size(); ++t) {
                    StrategyProfile q = p;
                    q.choices[i] = t;
                    ++checked;
                    const Rational lhs = two_agent_potential(inst, q) - h;
                    if (lhs != Rational(inst.agents[i].weight) * (utility(inst, q, i) - u)) ok = false;
                }
            }
        });
        if (!ok) {
            detail = "two-agent identity failed on seed " + std::to_string(6000 + k);
            return false;
        }
    }
    const Instance cx = no_potential_counterexample();
    auto u = [&](AgentIndex i, std::size_t a, std::size_t b) { return utility(cx, profile_of({a, b}), i); };
    // strategy 0 is {q1}, strategy 1 is the empty set
    const Rational path_a = (u(1, 0, 0) - u(1, 0, 1)) + (u(0, 0, 1) - u(0, 1, 1));
    const Rational path_b = (u(0, 0, 0) - u(0, 1, 0)) + (u(1, 1, 0) - u(1, 1, 1));
    if (path_a != make_rational(5, 3) || path_b != make_rational(4, 3)) {
        detail = "counterexample path sums " + to_string(path_a) + " and " + to_string(path_b);
        return false;
    }
    detail = std::to_string(checked) + " deviations exact; path sums 5/3 vs 4/3";
    return true;
}

bool epsilon_dynamics(std::string& detail) {
    std::size_t longest = 0;
    std::string worst;
    for (const Rational& eps : {Rational(1), make_rational(1, 2), make_rational(1, 10)}) {
        for (std::uint64_t k = 0; k < 100; ++k) {
            Draw draw(7000 + k);
            RandomSizes s = draw_sizes(draw, 2, 5, 2, 10, 2, 4, 2, 2);
            const Instance inst = gen_random(InstanceKind::symmetric, 7000 + k, s);
            DynamicsConfig cfg;
            cfg.mode = DynamicsMode::epsilon;
            cfg.epsilon = eps;
            const BigInt bound = epsilon_step_bound(inst, eps);
            cfg.max_steps = static_cast<std::size_t>(bound.convert_to<std::uint64_t>()) + 1;
            const auto trace = run_dynamics(inst, zero_profile(inst), cfg);
            if (trace.termination != Termination::converged || BigInt(trace.steps.size()) > bound ||
                !is_approx_pne(inst, trace.final, 1 + eps)) {
                detail = "epsilon " + to_string(eps) + " failed on seed " + std::to_string(7000 + k);
                return false;
            }
            longest = std::max(longest, trace.steps.size());
        }
    }
    detail = "300 runs converged; longest run " + std::to_string(longest) + " steps";
    return true;
}

bool poa_bounds(std::string& detail) {
    for (auto [n, m] : std::vector<std::pair<int, int>>{{3, 2}, {4, 2}, {5, 3}, {6, 3}}) {
        const Rational expected = n < 2 * m ? make_rational(n, m) : make_rational(2 * m - 1, m);
        const Rational got = poa(poa_lower_bound(n, m));
        if (got != expected) {
            detail = "poa-lb(" + std::to_string(n) + "," + std::to_string(m) + ") gave " + to_string(got);
            return false;
        }
    }
    std::size_t equilibria = 0;
    for (std::uint64_t k = 0; k < 200; ++k) {
        Draw draw(8000 + k);
        RandomSizes s = draw_sizes(draw, 2, 4, 2, 7, 2, 4, 2, 2);
        const Instance inst = gen_random(InstanceKind::symmetric, 8000 + k, s);
        const auto report = analyze(inst);
        if (report.pne.empty()) {
            detail = "symmetric instance without PNE, seed " + std::to_string(8000 + k);
            return false;
        }
        const Rational n = Rational(static_cast<long long>(inst.node_count()));
        const Rational m = Rational(static_cast<long long>(inst.agent_count()));
        const Rational bound = std::min(Rational(2), std::max(n / m, Rational(1)));
        for (const auto& p : report.pne) {
            ++equilibria;
            if (Rational(report.opt_welfare) > bound * Rational(social_welfare(inst, p))) {
                detail = "PoA bound violated, seed " + std::to_string(8000 + k);
                return false;
            }
        }
    }
    detail = "4 lower-bound instances exact; " + std::to_string(equilibria) + " PNE within min(2, max(n/m, 1))";
    return true;
}

bool two_agent_existence(std::string& detail) {
    for (std::uint64_t k = 0; k < 200; ++k) {
        Draw draw(8500 + k);
        RandomSizes s = draw_sizes(draw, 2, 2, 2, 7, 1, 4, 9, 4);
        const Instance inst = gen_random(InstanceKind::full, 8500 + k, s);
        if (!pne_exists(inst)) {
            detail = "no PNE for seed " + std::to_string(8500 + k);
            return false;
        }
    }
    detail = "200 of 200 have a PNE";
    return true;
}

bool alpha_dynamics(std::string& detail) {
    int converged = 0, approx = 0, log_bound = 0, one_plus_alpha = 0;
    std::string log_failures;
    for (std::uint64_t k = 0; k < 100; ++k) {
        const std::uint64_t seed = 9000 + k;
        Draw draw(seed);
        RandomSizes s = draw_sizes(draw, 2, 4, 3, 8, 2, 3, 6, 4);
        const Instance inst = gen_random(InstanceKind::full, seed, s);
        DynamicsConfig cfg;
        cfg.mode = DynamicsMode::alpha;
        const auto trace = run_dynamics(inst, zero_profile(inst), cfg);
        if (trace.termination == Termination::converged) ++converged;
        if (is_approx_pne(inst, trace.final, trace.certified_factor)) ++approx;
        const std::int64_t sw = social_welfare(inst, trace.final);
        const std::int64_t opt = optimal_social_welfare(inst).welfare;
        const long double ln_w = std::log(static_cast<long double>(total_weight(inst)) + 1.0L);
        if (static_cast<long double>(sw) * ln_w >= static_cast<long double>(opt)) {
            ++log_bound;
        } else if (log_failures.size() < 60) {
            log_failures += " " + std::to_string(seed);
        }
        if (Rational(opt) <= (1 + trace.certified_factor) * Rational(sw)) ++one_plus_alpha;
    }
    std::ostringstream out;
    out << converged << "/100 converged, " << approx << "/100 alpha-PNE, " << one_plus_alpha
        << "/100 SW* <= (1+alpha)SW, " << log_bound << "/100 SW >= SW*/ln(W+1)";
    if (log_bound < 100) out << " (fails on seeds" << log_failures << ")";
    detail = out.str();
    return converged == 100 && approx == 100 && one_plus_alpha == 100 && log_bound == 100;
}

bool sequential(std::string& detail) {
    if (spoa(spoa_two_agent()) != make_rational(3, 2)) {
        detail = "two-agent example is not 3/2";
        return false;
    }
    for (int m = 2; m <= 4; ++m) {
        if (spoa(spoa_family(m)) != make_rational(2 * m - 1, m)) {
            detail = "family m=" + std::to_string(m) + " is not (2m-1)/m";
            return false;
        }
    }
    Rational worst = 1;
    for (std::uint64_t k = 0; k < 200; ++k) {
        Draw draw(9500 + k);
        RandomSizes s = draw_sizes(draw, 2, 2, 2, 7, 1, 4, 2, 2);
        if (s.strategies < 2 && k % 2 == 1) s.strategies = 2;
        const InstanceKind kind = k % 2 == 0 ? InstanceKind::symmetric : InstanceKind::s_asymmetric;
        SequentialGame game{gen_random(kind, 9500 + k, s), {0, 1}};
        const Rational ratio = spoa(game);
        worst = std::max(worst, ratio);
        if (ratio > make_rational(3, 2)) {
            detail = "sPoA above 3/2 on seed " + std::to_string(9500 + k);
            return false;
        }
    }
    detail = "3/2 and (2m-1)/m exact; worst random two-agent sPoA " + to_string(worst);
    return true;
}

/// Every edge set on k labelled vertices without an isolated vertex, with
/// every weight assignment from 1..max_w.
std::vector<CutGraph> small_graphs(int max_vertices, std::int64_t max_w) {
    std::vector<CutGraph> graphs;
    for (int k = 2; k <= max_vertices; ++k) {
        std::vector<std::pair<int, int>> pairs;
        for (int u = 0; u < k; ++u) {
            for (int v = u + 1; v < k; ++v) pairs.push_back({u, v});
        }
        for (std::uint32_t mask = 1; mask < (1u << pairs.size()); ++mask) {
            std::vector<std::pair<int, int>> chosen;
            std::vector<int> degree(k, 0);
            for (std::size_t e = 0; e < pairs.size(); ++e) {
                if (mask & (1u << e)) {
                    chosen.push_back(pairs[e]);
                    ++degree[pairs[e].first];
                    ++degree[pairs[e].second];
                }
            }
            if (std::count(degree.begin(), degree.end(), 0) > 0) continue;
            std::vector<std::int64_t> w(chosen.size(), 1);
            for (;;) {
                CutGraph g{k, {}};
                for (std::size_t e = 0; e < chosen.size(); ++e) g.edges.push_back({chosen[e].first, chosen[e].second, w[e]});
                graphs.push_back(std::move(g));
                std::size_t e = 0;
                while (e < w.size() && w[e] == max_w) w[e++] = 1;
                if (e == w.size()) break;
                ++w[e];
            }
        }
    }
    return graphs;
}

std::string check_maxcut(const CutGraph& g) {
    const MaxCutReduction red = maxcut_to_cag(g);
    const int k = g.vertices;
    std::set<std::vector<int>> local_max;
    HarmonicTable harmonic(red.instance.agent_count());
    for (std::uint32_t bits = 0; bits < (1u << k); ++bits) {
        std::vector<int> x(k);
        for (int i = 0; i < k; ++i) x[i] = (bits >> i) & 1 ? -1 : 1;
        const StrategyProfile p = profile_from_cut(red, x);
        const Rational phi = rosenthal_potential(red.instance, p, harmonic);
        if (phi != red.lambda * cut_weight(g, x) + red.rho_total) return "potential identity";
        if (oracle_local_maxcut(g, x)) local_max.insert(x);
    }
    std::set<std::vector<int>> mapped;
    const auto pne = enumerate_pne(red.instance);
    for (const auto& p : pne) mapped.insert(cut_from_profile(red, p));
    if (mapped.size() != pne.size() || mapped != local_max) return "PNE set differs from local max-cuts";
    return {};
}

bool maxcut(std::string& detail, unsigned jobs) {
    const auto graphs = small_graphs(4, 8);
    const unsigned workers = std::max(1u, jobs);
    std::vector<std::string> failure(workers);
    auto work = [&](unsigned w) {
        for (std::size_t g = w; g < graphs.size(); g += workers) {
            std::string why = check_maxcut(graphs[g]);
            if (!why.empty()) {
                failure[w] = why + " on graph " + std::to_string(g);
                return;
            }
        }
    };
    if (workers == 1) {
        work(0);
    } else {
        std::vector<std::jthread> pool;
        for (unsigned w = 0; w < workers; ++w) pool.emplace_back(work, w);
    }
    for (const auto& f : failure) {
        if (!f.empty()) {
            detail = f;
            return false;
        }
    }
    detail = std::to_string(graphs.size()) + " weighted graphs exact";
    return true;
}

bool three_dm(std::string& detail) {
    std::vector<std::array<int, 3>> all;
    for (int x = 0; x < 2; ++x) {
        for (int y = 0; y < 2; ++y) {
            for (int z = 0; z < 2; ++z) all.push_back({x, y, z});
        }
    }
    int instances = 0, perfect = 0;
    for (std::uint32_t mask = 1; mask < (1u << all.size()); ++mask) {
        if (__builtin_popcount(mask) > 4) continue;
        ThreeDMInstance tdm{2, {}};
        for (std::size_t t = 0; t < all.size(); ++t) {
            if (mask & (1u << t)) tdm.triples.push_back(all[t]);
        }
        const bool oracle = oracle_perfect_3dm(tdm);
        const bool reduced = pne_exists(tdm_to_cag(tdm).instance);
        ++instances;
        perfect += oracle;
        if (oracle != reduced) {
            detail = "mismatch on edge set " + std::to_string(mask);
            return false;
        }
    }
    detail = std::to_string(instances) + " instances agree (" + std::to_string(perfect) + " with a perfect matching)";
    return true;
}

bool tqbf(std::string& detail) {
    std::vector<std::array<int, 3>> clauses;
    const std::vector<int> literals{-3, -2, -1, 1, 2, 3};
    for (std::size_t a = 0; a < literals.size(); ++a) {
        for (std::size_t b = a; b < literals.size(); ++b) {
            for (std::size_t c = b; c < literals.size(); ++c) clauses.push_back({literals[a], literals[b], literals[c]});
        }
    }
    int formulas = 0, truths = 0;
    auto check = [&](const std::vector<std::size_t>& pick) {
        TqbfFormula f{3, {}};
        for (auto c : pick) f.clauses.push_back(clauses[c]);
        const TqbfReduction red = tqbf_to_cag(f);
        const bool oracle = oracle_tqbf(f);
        const bool decided = spe_decision(red.game, 0, red.threshold);
        ++formulas;
        truths += oracle;
        return oracle == decided;
    };
    const std::size_t n = clauses.size();
    for (std::size_t a = 0; a < n; ++a) {
        if (!check({a})) return detail = "mismatch on a one-clause formula", false;
        for (std::size_t b = a + 1; b < n; ++b) {
            if (!check({a, b})) return detail = "mismatch on a two-clause formula", false;
            for (std::size_t c = b + 1; c < n; ++c) {
                if (!check({a, b, c})) return detail = "mismatch on a three-clause formula", false;
            }
        }
    }
    detail = std::to_string(formulas) + " formulas agree (" + std::to_string(truths) + " true)";
    return true;
}

struct Entry {
    const char* title;
    std::function<bool(std::string&, const AcceptanceOptions&)> run;
};

const std::vector<Entry>& entries() {
    static const std::vector<Entry> table{
        {"Example 1 payoffs", [](std::string& d, const AcceptanceOptions&) { return payoffs_full(d); }},
        {"Example 1 payoffs without the dummy", [](std::string& d, const AcceptanceOptions&) { return payoffs_reduced(d); }},
        {"PNE sets of Example 1 with and without dummy", [](std::string& d, const AcceptanceOptions&) { return no_pne(d); }},
        {"Symmetrization preserves PNE existence", [](std::string& d, const AcceptanceOptions&) { return symmetrization(d); }},
        {"Potential identities", [](std::string& d, const AcceptanceOptions&) { return potentials(d); }},
        {"Epsilon dynamics step bound", [](std::string& d, const AcceptanceOptions&) { return epsilon_dynamics(d); }},
        {"Price of anarchy", [](std::string& d, const AcceptanceOptions&) { return poa_bounds(d); }},
        {"Two-agent PNE existence", [](std::string& d, const AcceptanceOptions&) { return two_agent_existence(d); }},
        {"Alpha dynamics and welfare bounds", [](std::string& d, const AcceptanceOptions&) { return alpha_dynamics(d); }},
        {"Sequential price of anarchy", [](std::string& d, const AcceptanceOptions&) { return sequential(d); }},
        {"Max-cut reduction", [](std::string& d, const AcceptanceOptions& o) { return maxcut(d, o.jobs); }},
        {"3D-matching reduction", [](std::string& d, const AcceptanceOptions&) { return three_dm(d); }},
        {"TQBF reduction", [](std::string& d, const AcceptanceOptions&) { return tqbf(d); }},
    };
    return table;
}

}  // namespace

CriterionResult run_criterion(int id, const AcceptanceOptions& opts) {
    if (id < 1 || id > kCriterionCount) {
        throw InputError("no criterion " + std::to_string(id));
    }
    const Entry& entry = entries()[static_cast<std::size_t>(id - 1)];
    CriterionResult result;
    result.id = id;
    result.title = entry.title;
    const auto start = std::chrono::steady_clock::now();
    try {
        result.passed = entry.run(result.detail, opts);
    } catch (const std::exception& e) {
        result.passed = false;
        result.detail = std::string("exception: ") + e.what();
    }
    result.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return result;
}

std::vector<CriterionResult> run_acceptance(const AcceptanceOptions& opts) {
    std::vector<CriterionResult> results;
    for (int id = 1; id <= kCriterionCount; ++id) {
        if (!opts.only.empty() && std::find(opts.only.begin(), opts.only.end(), id) == opts.only.end()) continue;
        results.push_back(run_criterion(id, opts));
    }
    return results;
}

std::string format_result(const CriterionResult& r) {
    std::ostringstream out;
    out << (r.passed ? "PASS" : "FAIL") << "  " << (r.id < 10 ? " " : "") << r.id << "  " << r.title << " ("
        << r.detail << ") [" << std::fixed;
    out.precision(1);
    out << r.seconds << "s]";
    return out.str();
}

}  // namespace cag
