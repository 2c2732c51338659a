// cag: command-line front end for the customer attraction game library.
//
// Exit status: 0 success, 1 domain error (no PNE, search budget), 2 bad input.

#include "cag/acceptance.hpp"
#include "cag/dynamics.hpp"
#include "cag/equilibria.hpp"
#include "cag/error.hpp"
#include "cag/gadgets.hpp"
#include "cag/io.hpp"
#include "cag/potentials.hpp"
#include "cag/random.hpp"
#include "cag/sequential.hpp"

#include <CLI11.hpp>

#include <cmath>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

namespace {

using namespace cag;

struct Common {
    std::string output;
    std::string budget;
    unsigned jobs = 1;
};

std::uint64_t parse_budget(const std::string& text) {
    double value = 0;
    std::size_t used = 0;
    try {
        value = std::stod(text, &used);
    } catch (const std::exception&) {
        used = 0;
    }
    if (used != text.size() || !(value >= 1) || value > 1e18 || std::floor(value) != value) {
        throw InputError("budget must be a positive integer, got '" + text + "'");
    }
    return static_cast<std::uint64_t>(value);
}

std::uint64_t budget_of(const Common& c) {
    if (!c.budget.empty()) return parse_budget(c.budget);
    if (const char* env = std::getenv("CAG_BUDGET"); env && *env) return parse_budget(env);
    return kDefaultBudget;
}

SearchOptions search_options(const Common& c) { return {budget_of(c), std::max(1u, c.jobs)}; }

class Sink {
public:
    explicit Sink(const std::string& path) {
        if (!path.empty() && path != "-") {
            file_.open(path, std::ios::binary);
            if (!file_) throw InputError("cannot write '" + path + "'");
        }
    }
    std::ostream& out() { return file_.is_open() ? file_ : std::cout; }

private:
    std::ofstream file_;
};

void emit(const Common& c, const Json& j) {
    Sink sink(c.output);
    sink.out() << dump(j);
}

void require_valid(const Instance& inst) {
    const auto report = validate_instance(inst);
    if (!report.ok()) throw InputError(report.errors.front());
}

Instance load_instance(const std::string& path) {
    Instance inst = parse_instance(read_file(path));
    require_valid(inst);
    return inst;
}

SequentialGame load_game(const std::string& path) {
    SequentialGame game = parse_game(read_file(path));
    require_valid(game.instance);
    check_game(game);
    return game;
}

StrategyProfile profile_arg(const Instance& inst, const std::string& file, const std::vector<std::size_t>& choices) {
    StrategyProfile p = !file.empty() ? parse_profile(read_file(file))
                        : !choices.empty() ? StrategyProfile{choices}
                                           : zero_profile(inst);
    check_profile(inst, p);
    return p;
}

SpeMode parse_mode(const std::string& text) {
    if (text == "deterministic") return SpeMode::deterministic;
    if (text == "exhaustive") return SpeMode::exhaustive;
    throw InputError("unknown mode '" + text + "'");
}

int run(int argc, char** argv) {
    CLI::App app{"Exact analysis of customer attraction games"};
    app.require_subcommand(1);
    Common common;
    auto with_output = [&](CLI::App* sub) {
        sub->add_option("-o,--output", common.output, "Write to this file instead of stdout");
    };
    auto with_search = [&](CLI::App* sub) {
        sub->add_option("--budget", common.budget, "Profile or node budget (overrides CAG_BUDGET)");
        sub->add_option("--jobs", common.jobs, "Worker threads")->check(CLI::PositiveNumber);
    };

    std::string instance_path;
    std::string profile_path;
    std::vector<std::size_t> choices;

    // validate
    auto* validate = app.add_subcommand("validate", "Check an instance file");
    validate->add_option("instance", instance_path)->required();
    with_output(validate);
    validate->callback([&] {
        const auto report = validate_instance(parse_instance(read_file(instance_path)));
        emit(common, validation_to_json(report));
        if (!report.ok()) throw InputError(report.errors.front());
    });

    // eval
    auto* eval = app.add_subcommand("eval", "Loads, utilities and welfare of a profile");
    eval->add_option("instance", instance_path)->required();
    eval->add_option("--profile", profile_path, "Profile file {\"choices\": [...]}");
    eval->add_option("--choices", choices, "Strategy index per agent")->delimiter(',');
    with_output(eval);
    eval->callback([&] {
        const Instance inst = load_instance(instance_path);
        const StrategyProfile p = profile_arg(inst, profile_path, choices);
        Json node_loads = Json::object();
        const auto c = loads(inst, p);
        for (NodeIndex j = 0; j < inst.node_count(); ++j) node_loads[inst.nodes[j].id] = c[j];
        Json utils = Json::object();
        const auto u = utilities(inst, p);
        for (AgentIndex i = 0; i < inst.agent_count(); ++i) utils[inst.agents[i].id] = to_string(u[i]);
        emit(common, {{"profile", p.choices},
                      {"loads", std::move(node_loads)},
                      {"utilities", std::move(utils)},
                      {"social_welfare", social_welfare(inst, p)},
                      {"is_pne", is_approx_pne(inst, p, 1)}});
    });

    // potential
    std::string kind = "rosenthal";
    auto* potential = app.add_subcommand("potential", "Potential value of a profile");
    potential->add_option("instance", instance_path)->required();
    potential->add_option("--kind", kind)->check(CLI::IsMember({"rosenthal", "two-agent", "log"}));
    potential->add_option("--profile", profile_path);
    potential->add_option("--choices", choices)->delimiter(',');
    with_output(potential);
    potential->callback([&] {
        const Instance inst = load_instance(instance_path);
        const StrategyProfile p = profile_arg(inst, profile_path, choices);
        Json out = {{"kind", kind}, {"profile", p.choices}};
        if (kind == "rosenthal") {
            out["value"] = to_string(rosenthal_potential(inst, p));
        } else if (kind == "two-agent") {
            out["value"] = to_string(two_agent_potential(inst, p));
        } else {
            std::ostringstream v, e;
            v.precision(17);
            e.precision(17);
            v << log_potential(inst, p);
            e << log_potential_error_bound(inst);
            out["value"] = v.str();
            out["error_bound"] = e.str();
        }
        emit(common, out);
    });

    // dynamics
    std::string dyn_mode = "epsilon";
    std::string eps = "1/10";
    double alpha = 0;
    bool any_alpha = false;
    std::size_t max_steps = 1'000'000;
    std::string start_path;
    auto* dynamics = app.add_subcommand("dynamics", "Run improvement dynamics; one JSON record per line");
    dynamics->add_option("instance", instance_path)->required();
    dynamics->add_option("--mode", dyn_mode)->check(CLI::IsMember({"epsilon", "alpha"}));
    dynamics->add_option("--eps", eps, "Epsilon as p/q");
    dynamics->add_option("--alpha", alpha, "Improvement factor (default ln(1+w_max)+1)");
    dynamics->add_flag("--allow-any-alpha", any_alpha);
    dynamics->add_option("--max-steps", max_steps);
    dynamics->add_option("--start", start_path, "Start profile file");
    with_output(dynamics);
    dynamics->callback([&] {
        const Instance inst = load_instance(instance_path);
        const StrategyProfile start = profile_arg(inst, start_path, {});
        DynamicsConfig cfg;
        cfg.mode = dyn_mode == "alpha" ? DynamicsMode::alpha : DynamicsMode::epsilon;
        cfg.epsilon = parse_rational(eps);
        cfg.alpha = alpha;
        cfg.allow_any_alpha = any_alpha;
        cfg.max_steps = max_steps;
        const auto trace = run_dynamics(inst, start, cfg);
        Sink sink(common.output);
        for (std::size_t k = 0; k < trace.steps.size(); ++k) {
            sink.out() << step_to_json(k, trace.steps[k]).dump() << '\n';
        }
        sink.out() << trace_summary_to_json(trace).dump() << '\n';
    });

    // analyze
    auto* analyze_cmd = app.add_subcommand("analyze", "Enumerate PNE, optimal welfare and PoA");
    analyze_cmd->add_option("instance", instance_path)->required();
    with_search(analyze_cmd);
    with_output(analyze_cmd);
    analyze_cmd->callback([&] {
        const Instance inst = load_instance(instance_path);
        emit(common, report_to_json(analyze(inst, search_options(common))));
    });

    // spe
    std::string spe_mode = "deterministic";
    bool subgames = false;
    auto* spe = app.add_subcommand("spe", "Subgame-perfect outcomes of a sequential game");
    spe->add_option("game", instance_path)->required();
    spe->add_option("--mode", spe_mode)->check(CLI::IsMember({"deterministic", "exhaustive"}));
    spe->add_flag("--subgames", subgames, "Include the subgame table when small enough");
    with_search(spe);
    with_output(spe);
    spe->callback([&] {
        const SequentialGame game = load_game(instance_path);
        SpeOptions opts;
        opts.budget = budget_of(common);
        opts.record_subgames = subgames;
        emit(common, spe_to_json(spe_solve(game, parse_mode(spe_mode), opts)));
    });

    // spoa
    std::string spoa_mode = "exhaustive";
    auto* spoa_cmd = app.add_subcommand("spoa", "Optimal welfare over the worst SPE welfare");
    spoa_cmd->add_option("game", instance_path)->required();
    spoa_cmd->add_option("--mode", spoa_mode)->check(CLI::IsMember({"deterministic", "exhaustive"}));
    with_search(spoa_cmd);
    with_output(spoa_cmd);
    spoa_cmd->callback([&] {
        const SequentialGame game = load_game(instance_path);
        SpeOptions opts;
        opts.budget = budget_of(common);
        Rational ratio;
        if (parse_mode(spoa_mode) == SpeMode::exhaustive) {
            ratio = spoa(game, opts);
        } else {
            const auto result = spe_solve(game, SpeMode::deterministic, opts);
            const std::int64_t opt = optimal_social_welfare(game.instance, {opts.budget, 1}).welfare;
            ratio = Rational(opt) / Rational(result.outcomes.front().welfare);
        }
        emit(common, to_string(ratio));
    });

    // gadget
    auto* gadget = app.add_subcommand("gadget", "Build reduction gadgets and named instances");
    gadget->require_subcommand(1);
    std::string gadget_input;
    auto* g_maxcut = gadget->add_subcommand("maxcut", "Local max-cut graph to a unit-weight instance");
    g_maxcut->add_option("graph", gadget_input)->required();
    auto* g_3dm = gadget->add_subcommand("3dm", "3D-matching instance to an instance");
    g_3dm->add_option("triples", gadget_input)->required();
    bool pad = false;
    auto* g_tqbf = gadget->add_subcommand("tqbf", "Alternating 3-CNF formula to a sequential game");
    g_tqbf->add_option("formula", gadget_input)->required();
    g_tqbf->add_flag("--pad", pad, "Add vacuous variables until the alternation pattern fits");
    bool no_dummy = false;
    auto* g_example1 = gadget->add_subcommand("example1", "The three-agent instance without a PNE");
    g_example1->add_flag("--no-dummy", no_dummy);
    std::string name;
    auto* g_named = gadget->add_subcommand("named", "poa-lb(n,m), spoa-two-agent, spoa-family(m), ...");
    g_named->add_option("name", name)->required();
    bool split = false;
    auto* g_sym = gadget->add_subcommand("symmetrize", "Common strategy space for one heavy agent");
    g_sym->add_option("instance", gadget_input)->required();
    g_sym->add_flag("--split", split, "Split node values into unit nodes first");
    auto* g_union = gadget->add_subcommand("unionize", "Common strategy space for unit instances");
    g_union->add_option("instance", gadget_input)->required();
    for (auto* sub : gadget->get_subcommands({})) with_output(sub);

    g_maxcut->callback([&] { emit(common, maxcut_reduction_to_json(maxcut_to_cag(parse_graph(read_file(gadget_input))))); });
    g_3dm->callback([&] { emit(common, tdm_reduction_to_json(tdm_to_cag(parse_3dm(read_file(gadget_input))))); });
    g_tqbf->callback([&] {
        TqbfFormula f = parse_tqbf(read_file(gadget_input));
        if (pad) f = pad_tqbf(f);
        emit(common, tqbf_reduction_to_json(tqbf_to_cag(f)));
    });
    g_example1->callback([&] { emit(common, instance_to_json(no_dummy ? example1_minus_dummy() : example1())); });
    g_named->callback([&] { emit(common, game_to_json(build_named_instance(name))); });
    g_sym->callback([&] {
        const Instance inst = load_instance(gadget_input);
        emit(common, common_space_to_json(split ? symmetrize_weighted_split(inst) : symmetrize_weighted(inst)));
    });
    g_union->callback([&] { emit(common, common_space_to_json(unionize_strategies(load_instance(gadget_input)))); });

    // gen
    std::string gen_kind = "symmetric";
    std::uint64_t seed = 0;
    RandomSizes sizes;
    auto* gen = app.add_subcommand("gen", "Deterministic random instance");
    gen->add_option("--kind", gen_kind)->check(CLI::IsMember({"symmetric", "s-asymmetric", "w-asymmetric", "full"}));
    gen->add_option("--seed", seed);
    gen->add_option("--agents", sizes.agents);
    gen->add_option("--nodes", sizes.nodes);
    gen->add_option("--strategies", sizes.strategies);
    gen->add_option("--max-weight", sizes.max_weight);
    gen->add_option("--max-value", sizes.max_value);
    with_output(gen);
    gen->callback([&] { emit(common, instance_to_json(gen_random(parse_kind(gen_kind), seed, sizes))); });

    // verify
    std::vector<int> only;
    auto* verify = app.add_subcommand("verify", "Run the acceptance suite and print a pass/fail table");
    verify->add_option("--only", only, "Criterion ids")->delimiter(',');
    verify->add_option("--jobs", common.jobs)->check(CLI::PositiveNumber);
    int failed = 0;
    verify->callback([&] {
        AcceptanceOptions opts;
        opts.jobs = common.jobs;
        opts.only = only;
        for (int id : only) {
            if (id < 1 || id > kCriterionCount) throw InputError("no criterion " + std::to_string(id));
        }
        if (opts.only.empty()) {
            for (int id = 1; id <= kCriterionCount; ++id) opts.only.push_back(id);
        }
        for (int id : opts.only) {
            const auto r = run_criterion(id, opts);
            std::cout << format_result(r) << std::endl;
            failed += !r.passed;
        }
    });

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }
    return failed == 0 ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    try {
        return run(argc, argv);
    } catch (const cag::DomainError& e) {
        std::cerr << "cag: " << e.what() << '\n';
        return 1;
    } catch (const cag::InputError& e) {
        std::cerr << "cag: " << e.what() << '\n';
        return 2;
    } catch (const nlohmann::json::exception& e) {
        std::cerr << "cag: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "cag: " << e.what() << '\n';
        return 1;
    }
}
