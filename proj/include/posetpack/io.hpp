#pragma once

// JSON documents: poset files, family files, subsets as sorted 1-based lists.

#include <fstream>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "posetpack/boolean_lattice.hpp"
#include "posetpack/embedding.hpp"
#include "posetpack/packing.hpp"
#include "posetpack/poset.hpp"

namespace posetpack::io {

using nlohmann::json;

inline json subset_json(Mask m) {
    json out = json::array();
    for (; m != 0; m &= m - 1) out.push_back(std::countr_zero(m) + 1);
    return out;
}

inline Mask subset_from_json(const json& j, GroundSet ground) {
    if (!j.is_array()) throw InvalidInput("a subset must be a list of indices");
    std::vector<int> idx;
    for (const auto& v : j) {
        if (!v.is_number_integer()) throw InvalidInput("subset indices must be integers");
        idx.push_back(v.get<int>());
    }
    return Subset::from_indices(ground, idx).bits();
}

/// Integers that fit in 64 bits stay numbers; larger ones become strings.
inline json big_json(const BigInt& v) {
    if (v >= std::numeric_limits<long long>::min() && v <= std::numeric_limits<long long>::max())
        return v.convert_to<long long>();
    return v.str();
}

inline std::string rational_text(const Rational& q) {
    auto num = boost::multiprecision::numerator(q);
    auto den = boost::multiprecision::denominator(q);
    return den == 1 ? num.str() : num.str() + "/" + den.str();
}

inline json poset_json(const Poset& p) {
    json covers = json::array();
    for (auto [a, b] : p.covers()) covers.push_back({p.label(a), p.label(b)});
    return {{"elements", p.labels()}, {"covers", covers}};
}

inline Poset poset_from_json(const json& j) {
    if (!j.is_object() || !j.contains("elements"))
        throw InvalidInput("poset document needs an 'elements' list");
    std::vector<std::string> labels;
    for (const auto& e : j.at("elements")) {
        if (!e.is_string()) throw InvalidInput("poset elements must be strings");
        labels.push_back(e.get<std::string>());
    }
    std::vector<std::pair<std::string, std::string>> covers;
    if (j.contains("covers"))
        for (const auto& c : j.at("covers")) {
            if (!c.is_array() || c.size() != 2 || !c[0].is_string() || !c[1].is_string())
                throw InvalidInput("each cover must be a pair of element names");
            covers.emplace_back(c[0].get<std::string>(), c[1].get<std::string>());
        }
    return Poset::from_cover_relations(std::move(labels), covers);
}

inline json assignment_json(const Poset& p, const std::vector<Mask>& images) {
    json out = json::object();
    for (int x = 0; x < p.size(); ++x) out[p.label(x)] = subset_json(images.at(x));
    return out;
}

inline std::vector<Mask> assignment_from_json(const Poset& p, const json& j, GroundSet ground) {
    if (!j.is_object()) throw InvalidInput("a copy must map element names to subsets");
    std::vector<Mask> images(p.size(), 0);
    std::vector<bool> seen(p.size(), false);
    for (auto it = j.begin(); it != j.end(); ++it) {
        int x = p.index_of(it.key());
        images[x] = subset_from_json(it.value(), ground);
        seen[x] = true;
    }
    for (int x = 0; x < p.size(); ++x)
        if (!seen[x]) throw InvalidInput("copy does not assign element '" + p.label(x) + "'");
    return images;
}

inline json family_json(const PackingFamily& fam) {
    json copies = json::array();
    for (const auto& c : fam.copies) copies.push_back(assignment_json(*fam.poset, c));
    return {{"n", fam.ground.n()}, {"kind", to_string(fam.kind)}, {"poset", poset_json(*fam.poset)},
            {"copies", copies}};
}

inline PackingFamily family_from_json(const json& j) {
    for (const char* key : {"n", "kind", "poset", "copies"})
        if (!j.contains(key)) throw InvalidInput(std::string("family document is missing '") + key + "'");
    PackingFamily fam;
    fam.ground = GroundSet(j.at("n").get<int>());
    fam.kind = parse_kind(j.at("kind").get<std::string>());
    fam.poset = std::make_shared<const Poset>(poset_from_json(j.at("poset")));
    for (const auto& c : j.at("copies")) fam.copies.push_back(assignment_from_json(*fam.poset, c, fam.ground));
    return fam;
}

inline json conflict_json(const PackingFamily& fam, const ConflictPair& c) {
    return {{"copies", {c.first, c.second}},
            {"sets", {subset_json(c.from_first), subset_json(c.from_second)}},
            {"n", fam.ground.n()}};
}

inline json report_json(const PackingFamily& fam, const VerificationReport& r) {
    json out = {{"pass", r.pass()},
                {"copies", r.copies},
                {"invalid_copies", r.invalid_copies},
                {"image_method", r.image_method},
                {"image_comparisons", r.image_comparisons},
                {"hulls_checked", r.hulls_checked},
                {"hull_comparisons", r.hull_comparisons}};
    out["image_conflict"] = r.image_conflict ? conflict_json(fam, *r.image_conflict) : json(nullptr);
    out["hull_conflict"] = r.hull_conflict ? conflict_json(fam, *r.hull_conflict) : json(nullptr);
    return out;
}

inline json read_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw InvalidInput("cannot open '" + path + "'");
    try {
        return json::parse(in);
    } catch (const json::exception& e) {
        throw InvalidInput("'" + path + "' is not valid JSON: " + e.what());
    }
}

inline void write_json_file(const std::string& path, const json& doc) {
    std::ofstream out(path);
    if (!out) throw InvalidInput("cannot write '" + path + "'");
    out << doc.dump(2) << '\n';
}

}  // namespace posetpack::io
