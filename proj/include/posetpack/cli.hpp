#pragma once

// Subcommand dispatch for the posetpack tool.  Argument parsing lives in
// tools/; everything here works on a filled-in RunConfig so it can be driven
// from tests.

#include <chrono>
#include <cstdlib>
#include <iomanip>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "posetpack/boolean_lattice.hpp"
#include "posetpack/construction.hpp"
#include "posetpack/embedding.hpp"
#include "posetpack/io.hpp"
#include "posetpack/labeling.hpp"
#include "posetpack/oracle.hpp"
#include "posetpack/packing.hpp"
#include "posetpack/poset.hpp"

namespace posetpack::cli {

using nlohmann::json;

inline constexpr const char* kVersion = "0.1.0";
inline constexpr const char* kBudgetEnv = "POSETPACK_NODE_BUDGET";

enum ExitCode : int { kOk = 0, kUsage = 2, kResource = 3, kVerificationFailed = 4 };

struct RunConfig {
    std::string command;
    std::string construction;  // for `construct`
    std::string poset = "single";
    std::string poset_file;
    std::string kind = "weak";
    std::string epsilon = "1/2";
    std::optional<int> n, h, t, m_max, n_max, limit;
    int oracle_n_max = 4;
    int min_blocks = 1;
    std::vector<std::string> sets;
    std::vector<std::string> assign;
    std::string input;
    std::string output;
    std::string format = "table";
    std::optional<std::uint64_t> node_cap;
    std::optional<long long> time_cap_ms;
};

/// single, chain:<len>, v, vk:<k>, lambdak:<k>, diamond.
inline Poset named_poset(const std::string& name) {
    auto arg = [&](const std::string& prefix) -> std::optional<int> {
        if (name.rfind(prefix, 0) != 0) return std::nullopt;
        try {
            std::size_t used = 0;
            int v = std::stoi(name.substr(prefix.size()), &used);
            if (used != name.size() - prefix.size()) throw InvalidInput("");
            return v;
        } catch (const std::exception&) {
            throw InvalidInput("malformed poset name '" + name + "'");
        }
    };
    if (name == "single") return single_poset();
    if (name == "v") return v_poset();
    if (name == "diamond") return diamond_poset();
    if (auto k = arg("chain:")) return chain_poset(*k);
    if (auto k = arg("vk:")) return fork_poset(*k, ForkDirection::up);
    if (auto k = arg("lambdak:")) return fork_poset(*k, ForkDirection::down);
    throw InvalidInput("unknown poset '" + name + "' (expected single, chain:<len>, v, vk:<k>, lambdak:<k>, diamond)");
}

/// "{1,3}", "1,3", "{}" or "" → mask over [n].
inline Mask parse_subset(std::string text, GroundSet ground) {
    std::erase_if(text, [](char c) { return c == '{' || c == '}' || c == ' ' || c == '[' || c == ']'; });
    std::vector<int> idx;
    std::size_t pos = 0;
    while (pos < text.size()) {
        auto comma = text.find(',', pos);
        auto item = text.substr(pos, comma == std::string::npos ? std::string::npos : comma - pos);
        try {
            std::size_t used = 0;
            idx.push_back(std::stoi(item, &used));
            if (used != item.size()) throw InvalidInput("");
        } catch (const std::exception&) {
            throw InvalidInput("malformed subset element '" + item + "'");
        }
        if (comma == std::string::npos) break;
        pos = comma + 1;
    }
    return Subset::from_indices(ground, idx).bits();
}

namespace detail {

inline int require(const std::optional<int>& v, const char* flag) {
    if (!v) throw InvalidInput(std::string("missing required option --") + flag);
    return *v;
}

inline Poset load_poset(const RunConfig& c) {
    if (!c.poset_file.empty()) return io::poset_from_json(io::read_json_file(c.poset_file));
    return named_poset(c.poset);
}

inline SearchBudget search_budget(const RunConfig& c) {
    SearchBudget b;
    if (c.node_cap) {
        b.node_cap = *c.node_cap;
    } else if (const char* env = std::getenv(kBudgetEnv)) {
        try {
            b.node_cap = std::stoull(env);
        } catch (const std::exception&) {
            throw InvalidInput(std::string(kBudgetEnv) + " must be a non-negative integer");
        }
    }
    if (c.time_cap_ms) b.time_cap = std::chrono::milliseconds(*c.time_cap_ms);
    return b;
}

inline json parameters(const RunConfig& c) {
    json p = json::object();
    if (!c.construction.empty()) p["construction"] = c.construction;
    if (!c.poset_file.empty())
        p["poset_file"] = c.poset_file;
    else
        p["poset"] = c.poset;
    p["kind"] = c.kind;
    p["epsilon"] = c.epsilon;
    auto opt = [&](const char* key, const std::optional<int>& v) {
        if (v) p[key] = *v;
    };
    opt("n", c.n);
    opt("h", c.h);
    opt("t", c.t);
    opt("m_max", c.m_max);
    opt("n_max", c.n_max);
    opt("limit", c.limit);
    if (c.command == "conjecture-v") p["oracle_n_max"] = c.oracle_n_max;
    if (c.min_blocks != 1) p["min_blocks"] = c.min_blocks;
    if (!c.sets.empty()) p["sets"] = c.sets;
    if (!c.assign.empty()) p["assign"] = c.assign;
    if (!c.input.empty()) p["input"] = c.input;
    return p;
}

struct Outcome {
    json result;
    int status = kOk;
};

inline Outcome family_outcome(const RunConfig& c, const PackingFamily& fam, json extra) {
    auto report = verify_packing(fam);
    json fam_doc = io::family_json(fam);
    if (!c.output.empty()) io::write_json_file(c.output, fam_doc);
    extra["size"] = fam.size();
    extra["verification"] = io::report_json(fam, report);
    extra["family"] = std::move(fam_doc);
    return {std::move(extra), report.pass() ? kOk : kVerificationFailed};
}

inline Outcome cmd_tmin(const RunConfig& c) {
    auto p = load_poset(c);
    auto kind = parse_kind(c.kind);
    auto r = min_hull(p, kind, c.m_max);
    return {{{"kind", to_string(kind)},
             {"value", r.value},
             {"ambient_m", r.ambient_m},
             {"certified_up_to_m", r.m_max},
             {"witness", io::assignment_json(p, r.witness.images)}}};
}

inline Outcome cmd_classify(const RunConfig& c) {
    auto p = load_poset(c);
    auto weak = height_witness(p, EmbeddingKind::weak);
    auto induced = height_witness(p, EmbeddingKind::induced);
    json r = {{"size", p.size()}, {"height", height(p)}, {"thin", weak.has_value()}, {"slim", induced.has_value()}};
    r["thin_witness"] = weak ? io::assignment_json(p, weak->images) : json(nullptr);
    r["slim_witness"] = induced ? io::assignment_json(p, induced->images) : json(nullptr);
    return {r};
}

inline Outcome cmd_embed(const RunConfig& c) {
    auto p = load_poset(c);
    int n = require(c.n, "n");
    auto kind = parse_kind(c.kind);
    std::optional<std::size_t> limit;
    if (c.limit) limit = static_cast<std::size_t>(*c.limit);
    json list = json::array();
    std::size_t count = 0;
    bool truncated = false;
    for_each_embedding(p, n, kind, [&](const Embedding& e) {
        if (limit && count == *limit) {
            truncated = true;
            return false;
        }
        ++count;
        list.push_back(io::assignment_json(p, e.images));
        return true;
    });
    return {{{"n", n}, {"kind", to_string(kind)}, {"count", count}, {"truncated", truncated}, {"embeddings", list}}};
}

inline SetFamily sets_family(const RunConfig& c, GroundSet ground) {
    std::vector<Mask> masks;
    for (const auto& s : c.sets) masks.push_back(parse_subset(s, ground));
    return SetFamily(ground, masks);
}

inline json family_members(const SetFamily& f) {
    json out = json::array();
    for (Mask m : f.masks()) out.push_back(io::subset_json(m));
    return out;
}

inline Outcome cmd_hull(const RunConfig& c) {
    GroundSet ground(require(c.n, "n"));
    auto f = sets_family(c, ground);
    auto hull = convex_hull(f);
    return {{{"n", ground.n()}, {"family", family_members(f)}, {"hull", family_members(hull)}, {"size", hull.size()}}};
}

inline Outcome cmd_label(const RunConfig& c) {
    auto p = load_poset(c);
    auto kind = parse_kind(c.kind);
    Embedding f;
    if (c.assign.empty()) {
        f = min_hull(p, kind, c.m_max).witness;
    } else {
        GroundSet ground(require(c.n, "n"));
        std::vector<Mask> images(p.size(), 0);
        std::vector<bool> seen(p.size(), false);
        for (const auto& a : c.assign) {
            auto eq = a.find('=');
            if (eq == std::string::npos) throw InvalidInput("--assign expects name=indices, got '" + a + "'");
            int x = p.index_of(a.substr(0, eq));
            images[x] = parse_subset(a.substr(eq + 1), ground);
            seen[x] = true;
        }
        for (int x = 0; x < p.size(); ++x)
            if (!seen[x]) throw InvalidInput("--assign is missing element '" + p.label(x) + "'");
        f = Embedding{std::make_shared<const Poset>(p), ground, images, kind};
        if (!is_valid_embedding(f)) throw InvalidInput("the assignment is not a valid " + c.kind + " embedding");
    }
    auto lab = hull_interval_labeling(f);
    auto [first, last] = lab.interval();
    json ranks = json::array();
    for (std::uint32_t r = 1; r <= lab.label_count(); ++r) {
        Mask s = lab.subset_with_rank(r);
        int group = r < first ? 1 : (r <= last ? 2 : 3);
        ranks.push_back({{"rank", r}, {"set", io::subset_json(s)}, {"group", group}});
    }
    return {{{"m", lab.m()},
             {"embedding", io::assignment_json(p, f.images)},
             {"interval", {first, last}},
             {"labels", ranks}}};
}

inline Outcome cmd_construct(const RunConfig& c) {
    const auto& what = c.construction;
    if (what == "path") {
        int h = require(c.h, "h"), n = require(c.n, "n");
        auto fam = path_family(h, n);
        return family_outcome(c, fam, {{"construction", "path"}, {"expected_size", io::big_json(path_family_size(h, n))}});
    }
    if (what == "v-family") {
        int n = require(c.n, "n");
        auto fam = v_family(n);
        return family_outcome(c, fam, {{"construction", "v-family"}, {"expected_size", io::big_json(v_conjecture_sum(n))}});
    }
    if (what == "thin") {
        auto p = load_poset(c);
        int n = require(c.n, "n");
        auto fam = thin_family(p, n, parse_kind(c.kind));
        return family_outcome(c, fam, {{"construction", "thin"},
                                       {"expected_size", io::big_json(path_family_size(height(p), n))}});
    }
    if (what == "lowerthm") {
        auto p = load_poset(c);
        int n = require(c.n, "n");
        LowerBoundOptions opt;
        opt.epsilon = parse_rational(c.epsilon);
        opt.m_max = c.m_max;
        opt.min_blocks = c.min_blocks;
        auto lb = build_incomparable_family(p, parse_kind(c.kind), n, opt);
        json extra = {{"construction", "lowerthm"},
                      {"t", lb.system.t},
                      {"N", lb.system.ground},
                      {"K", io::big_json(lb.system.count)},
                      {"expected_size", io::big_json(lb.expected_size)},
                      {"target", io::rational_text(lb.target)},
                      {"meets_target", lb.meets_target}};
        return family_outcome(c, lb.family, std::move(extra));
    }
    if (what == "ordered") {
        auto p = load_poset(c);
        OrderedCopyOptions opt;
        opt.epsilon_prime = parse_rational(c.epsilon);
        opt.m_max = c.m_max;
        opt.min_blocks = c.min_blocks;
        auto sys = build_ordered_copies(p, parse_kind(c.kind), opt);
        auto [first, last] = sys.interval();
        json r = {{"construction", "ordered"},
                  {"t", sys.t},
                  {"base_m", sys.base_m},
                  {"blocks", sys.blocks},
                  {"N", sys.ground},
                  {"interval", {first, last}},
                  {"K", io::big_json(sys.count)},
                  {"closed_form", io::rational_text(sys.closed_form)},
                  {"guarantee", io::rational_text(sys.guarantee)},
                  {"meets_guarantee", Rational(sys.count) >= sys.guarantee},
                  {"materialized", sys.materialized}};
        int status = kOk;
        if (sys.materialized) {
            json copies = json::array();
            for (std::size_t i = 0; i < sys.copies.size(); ++i) {
                json sets = json::object();
                for (int x = 0; x < p.size(); ++x) sets[p.label(x)] = io::subset_json(sys.copies[i][x]);
                copies.push_back({{"code", sys.codes[i]}, {"copy", sets}});
            }
            auto violation = find_order_violation(sys.copies);
            r["order_property"] = !violation.has_value();
            if (violation) status = kVerificationFailed;
            r["copies"] = copies;
        }
        return {r, status};
    }
    throw InvalidInput("unknown construction '" + what + "' (expected ordered, lowerthm, path, thin, v-family)");
}

inline PackingFamily load_family(const std::string& path) {
    auto doc = io::read_json_file(path);
    if (doc.contains("result") && doc["result"].contains("family")) return io::family_from_json(doc["result"]["family"]);
    if (doc.contains("result") && doc["result"].contains("witness") && doc["result"]["witness"].contains("copies"))
        return io::family_from_json(doc["result"]["witness"]);
    return io::family_from_json(doc);
}

inline Outcome cmd_verify(const RunConfig& c) {
    if (c.input.empty()) throw InvalidInput("missing required option --in");
    auto fam = load_family(c.input);
    auto report = verify_packing(fam);
    return {io::report_json(fam, report), report.pass() ? kOk : kVerificationFailed};
}

inline Outcome cmd_exact(const RunConfig& c) {
    auto p = load_poset(c);
    int n = require(c.n, "n");
    auto kind = parse_kind(c.kind);
    auto r = max_incomparable_packing(p, n, kind, ImageBudget{}, search_budget(c));
    json witness = io::family_json(r.witness);
    if (!c.output.empty()) io::write_json_file(c.output, witness);
    return {{{"n", n},
             {"kind", to_string(kind)},
             {"M", r.value},
             {"images", r.images},
             {"min_hull_size", r.min_hull_size},
             {"chain_bound", r.chain_bound ? io::big_json(*r.chain_bound) : json("vacuous")},
             {"search_nodes", r.search_nodes},
             {"witness", witness}}};
}

inline Outcome cmd_bound(const RunConfig& c) {
    int n = require(c.n, "n");
    int t = 0;
    json r = json::object();
    if (c.t) {
        t = *c.t;
    } else {
        auto p = load_poset(c);
        auto hull = min_hull(p, parse_kind(c.kind), c.m_max);
        t = hull.value;
        r["t_certified_up_to_m"] = hull.m_max;
    }
    auto per_copy = chcount_lower_bound(t, n);
    auto est = upper_bound_estimate(t, n);
    r["t"] = t;
    r["n"] = n;
    r["chains_per_copy_at_least"] = io::rational_text(per_copy);
    r["total_chains"] = io::big_json(factorial(n));
    r["estimate"] = est ? io::big_json(*est) : json("vacuous");
    r["middle_binomial"] = io::big_json(binomial(n, n / 2));
    return {r};
}

inline Outcome cmd_chains(const RunConfig& c) {
    GroundSet ground(require(c.n, "n"));
    auto f = sets_family(c, ground);
    auto count = count_chains_meeting(f);
    json r = {{"n", ground.n()}, {"family", family_members(f)}, {"chains_meeting", io::big_json(count)}};
    if (!f.empty() && ground.n() >= 1) {
        auto bound = chcount_lower_bound(static_cast<int>(f.size()), ground.n());
        r["lower_bound"] = io::rational_text(bound);
        r["bound_applies"] = bound > 0;
        r["bound_holds"] = Rational(count) >= bound;
    }
    return {r};
}

inline Outcome cmd_bollobas(const RunConfig& c) {
    PackingFamily fam;
    if (!c.input.empty())
        fam = load_family(c.input);
    else
        fam = path_family(require(c.h, "h"), require(c.n, "n"));
    auto sys = set_pairs_from_family(fam);
    auto r = bollobas_check(sys);
    json out = {{"pairs", sys.pairs.size()}, {"sum", io::rational_text(r.sum)}, {"overlapping_pairs", r.overlapping_pairs}};
    out["disjoint_cross_pair"] = r.disjoint_cross ? json{r.disjoint_cross->first, r.disjoint_cross->second} : json(nullptr);
    out["holds"] = r.holds ? json(*r.holds) : json(nullptr);
    return {out};
}

inline Outcome cmd_conjecture_v(const RunConfig& c) {
    int n_max = require(c.n_max, "n-max");
    json rows = json::array();
    int status = kOk;
    for (int n = 2; n <= n_max; ++n) {
        auto formula = v_conjecture_sum(n);
        auto fam = v_family(n);
        auto report = verify_packing(fam);
        if (!report.pass()) status = kVerificationFailed;
        json row = {{"n", n},
                    {"formula", io::big_json(formula)},
                    {"construction", fam.size()},
                    {"verified", report.pass()}};
        bool match = BigInt(fam.size()) == formula;
        if (n <= c.oracle_n_max) {
            auto exact = max_incomparable_packing(v_poset(), n, parse_kind(c.kind), ImageBudget{}, search_budget(c));
            row["oracle"] = exact.value;
            match = match && BigInt(exact.value) == formula;
        } else {
            row["oracle"] = nullptr;
        }
        row["match"] = match ? "yes" : "no";
        rows.push_back(row);
    }
    return {{{"rows", rows}}, status};
}

inline std::string cell(const json& v) { return v.is_string() ? v.get<std::string>() : v.dump(); }

// Human-readable rendering: scalars as "key: value", arrays of flat objects
// as aligned tables, anything else as compact JSON.
inline void render_table(const json& result, std::ostream& out) {
    for (auto it = result.begin(); it != result.end(); ++it) {
        const json& v = it.value();
        bool tabular = v.is_array() && !v.empty() && std::all_of(v.begin(), v.end(), [](const json& row) {
            return row.is_object() && std::none_of(row.begin(), row.end(), [](const json& x) { return x.is_object(); });
        });
        if (!tabular) {
            out << it.key() << ": " << cell(v) << '\n';
            continue;
        }
        std::vector<std::string> cols;
        for (auto c = v.front().begin(); c != v.front().end(); ++c) cols.push_back(c.key());
        std::vector<std::size_t> width(cols.size());
        for (std::size_t k = 0; k < cols.size(); ++k) {
            width[k] = cols[k].size();
            for (const auto& row : v) width[k] = std::max(width[k], cell(row.value(cols[k], json(nullptr))).size());
        }
        out << it.key() << ":\n";
        for (std::size_t k = 0; k < cols.size(); ++k) out << "  " << std::left << std::setw(width[k]) << cols[k];
        out << '\n';
        for (const auto& row : v) {
            for (std::size_t k = 0; k < cols.size(); ++k)
                out << "  " << std::left << std::setw(width[k]) << cell(row.value(cols[k], json(nullptr)));
            out << '\n';
        }
    }
}

}  // namespace detail

/// Runs one subcommand.  Data goes to `out` (deterministic for a given
/// config); diagnostics and timings go to `log`.
inline int run(const RunConfig& c, std::ostream& out, std::ostream& log) {
    using namespace detail;
    const auto start = std::chrono::steady_clock::now();
    Outcome outcome;
    try {
        if (c.format != "json" && c.format != "table")
            throw InvalidInput("--format must be 'json' or 'table'");
        const auto& cmd = c.command;
        if (cmd == "tmin") outcome = cmd_tmin(c);
        else if (cmd == "classify") outcome = cmd_classify(c);
        else if (cmd == "embed") outcome = cmd_embed(c);
        else if (cmd == "hull") outcome = cmd_hull(c);
        else if (cmd == "label") outcome = cmd_label(c);
        else if (cmd == "construct") outcome = cmd_construct(c);
        else if (cmd == "verify") outcome = cmd_verify(c);
        else if (cmd == "exact") outcome = cmd_exact(c);
        else if (cmd == "bound") outcome = cmd_bound(c);
        else if (cmd == "chains") outcome = cmd_chains(c);
        else if (cmd == "bollobas") outcome = cmd_bollobas(c);
        else if (cmd == "conjecture-v") outcome = cmd_conjecture_v(c);
        else throw InvalidInput("unknown command '" + cmd + "'");
    } catch (const InvalidInput& e) {
        log << "error: " << e.what() << '\n';
        return kUsage;
    } catch (const BudgetExceeded& e) {
        log << "budget exceeded: " << e.what();
        if (e.lower()) log << "; best lower bound " << *e.lower();
        if (e.upper()) log << "; upper bound " << *e.upper();
        log << '\n';
        return kResource;
    } catch (const CapExceeded& e) {
        log << "cap exceeded: " << e.what() << '\n';
        return kResource;
    } catch (const json::exception& e) {
        log << "error: malformed document: " << e.what() << '\n';
        return kUsage;
    }

    json doc = {{"meta", {{"command", c.command}, {"parameters", parameters(c)}, {"version", kVersion}}},
                {"result", outcome.result}};
    if (c.format == "json") {
        out << doc.dump(2) << '\n';
    } else {
        out << c.command << (c.construction.empty() ? "" : " " + c.construction) << '\n';
        render_table(outcome.result, out);
    }
    const auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - start);
    log << "elapsed: " << ms.count() << " ms\n";
    if (outcome.status == kVerificationFailed) log << "verification failed\n";
    return outcome.status;
}

}  // namespace posetpack::cli
