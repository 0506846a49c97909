#include <iostream>
#include <string>

#include "CLI11.hpp"

#include "posetpack/cli.hpp"

namespace {

using posetpack::cli::RunConfig;

void add_common(CLI::App& sub, RunConfig& c) {
    sub.add_option("--format", c.format, "Output format: table or json")->capture_default_str();
}

void add_poset(CLI::App& sub, RunConfig& c) {
    sub.add_option("--poset", c.poset, "Named poset: single, chain:<len>, v, vk:<k>, lambdak:<k>, diamond")
        ->capture_default_str();
    sub.add_option("--poset-file", c.poset_file, "Poset document with 'elements' and 'covers'");
}

void add_kind(CLI::App& sub, RunConfig& c) {
    sub.add_option("--kind", c.kind, "weak or induced")->capture_default_str();
}

void add_budget(CLI::App& sub, RunConfig& c) {
    sub.add_option("--node-budget", c.node_cap, "Search node cap (default from POSETPACK_NODE_BUDGET)");
    sub.add_option("--time-budget-ms", c.time_cap_ms, "Search time cap in milliseconds");
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Incomparable copies of posets in the Boolean lattice"};
    app.set_version_flag("--version", posetpack::cli::kVersion);
    app.require_subcommand(1);
    RunConfig c;

    auto* tmin = app.add_subcommand("tmin", "Minimal convex hull size of a copy");
    add_poset(*tmin, c);
    add_kind(*tmin, c);
    tmin->add_option("--m-max", c.m_max, "Largest ambient lattice searched (default 2|P|)");

    auto* classify = app.add_subcommand("classify", "Height, thin and slim");
    add_poset(*classify, c);

    auto* embed = app.add_subcommand("embed", "Enumerate embeddings into B_n");
    add_poset(*embed, c);
    add_kind(*embed, c);
    embed->add_option("--n", c.n)->required();
    embed->add_option("--limit", c.limit, "Stop after this many embeddings");

    auto* hull = app.add_subcommand("hull", "Convex hull of a set family");
    hull->add_option("--n", c.n)->required();
    hull->add_option("--set", c.sets, "Member subset, e.g. 1,3 or {} (repeatable)")->required();

    auto* label = app.add_subcommand("label", "Hull-interval labeling of B_m");
    add_poset(*label, c);
    add_kind(*label, c);
    label->add_option("--n", c.n, "Ambient m for --assign");
    label->add_option("--assign", c.assign, "element=indices (repeatable); default: minimal-hull witness");
    label->add_option("--m-max", c.m_max);

    auto* construct = app.add_subcommand("construct", "Build an incomparable family");
    construct->set_help_flag("--help", "Print this help message and exit");
    construct->add_option("what", c.construction, "ordered, lowerthm, path, thin or v-family")->required();
    add_poset(*construct, c);
    add_kind(*construct, c);
    construct->add_option("--n", c.n);
    construct->add_option("--h", c.h);
    construct->add_option("--epsilon", c.epsilon, "Exact rational p/q or decimal (epsilon' for 'ordered')")
        ->capture_default_str();
    construct->add_option("--m-max", c.m_max);
    construct->add_option("--min-blocks", c.min_blocks, "Lower limit on the block count")->capture_default_str();
    construct->add_option("--out", c.output, "Write the family document here");

    auto* verify = app.add_subcommand("verify", "Verify a family file");
    verify->add_option("--in", c.input)->required();

    auto* exact = app.add_subcommand("exact", "Exact maximum packing by exhaustive search");
    add_poset(*exact, c);
    add_kind(*exact, c);
    add_budget(*exact, c);
    exact->add_option("--n", c.n)->required();
    exact->add_option("--out", c.output, "Write the witness family here");

    auto* bound = app.add_subcommand("bound", "Chain-counting upper bound");
    add_poset(*bound, c);
    add_kind(*bound, c);
    bound->add_option("--t", c.t, "Hull size (default: computed for --poset)");
    bound->add_option("--n", c.n)->required();
    bound->add_option("--m-max", c.m_max);

    auto* chains = app.add_subcommand("chains", "Count maximal chains meeting a family");
    chains->add_option("--n", c.n)->required();
    chains->add_option("--set", c.sets, "Member subset (repeatable)");

    auto* bollobas = app.add_subcommand("bollobas", "Set-pair inequality on a chain family");
    bollobas->set_help_flag("--help", "Print this help message and exit");
    bollobas->add_option("--in", c.input, "Family file (default: path family from --h/--n)");
    bollobas->add_option("--h", c.h);
    bollobas->add_option("--n", c.n);

    auto* conj = app.add_subcommand("conjecture-v", "V-family formula vs construction vs oracle");
    add_kind(*conj, c);
    add_budget(*conj, c);
    conj->add_option("--n-max", c.n_max)->required();
    conj->add_option("--oracle-n-max", c.oracle_n_max, "Run the exact oracle up to this n")->capture_default_str();

    for (auto* sub : app.get_subcommands({})) add_common(*sub, c);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : posetpack::cli::kUsage;
    }
    c.command = app.get_subcommands().front()->get_name();
    return posetpack::cli::run(c, std::cout, std::cerr);
}
