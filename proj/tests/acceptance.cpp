// Acceptance run: one PASS/FAIL line per criterion, nonzero exit on any FAIL.

#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "oracles.hpp"
#include "posetpack/construction.hpp"
#include "posetpack/labeling.hpp"
#include "posetpack/oracle.hpp"

using namespace posetpack;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t) { return std::chrono::duration<double>(Clock::now() - t).count(); }

struct Check {
    bool ok = true;
    std::ostringstream why;
    void expect(bool cond, const std::string& msg) {
        if (!cond) {
            if (ok) why << msg;
            ok = false;
        }
    }
};

// Hull outcomes of every packing verified in criteria 2, 3 and 8.
struct HullLedger {
    std::size_t packings = 0;
    std::size_t failures = 0;
    void record(const VerificationReport& r) {
        ++packings;
        if (!r.hulls_checked || r.hull_conflict) ++failures;
    }
} hull_ledger;

std::string big(const BigInt& v) { return v.str(); }

void criterion1(Check& c) {
    auto start = Clock::now();
    auto r = max_incomparable_packing(single_poset(), 4, EmbeddingKind::weak);
    auto bound = upper_bound_estimate(1, 4);
    double secs = seconds_since(start);
    c.expect(r.value == 6, "M=" + std::to_string(r.value));
    c.expect(binomial(4, 2) == 6, "binomial");
    c.expect(bound && *bound == 6, "bound mismatch");
    c.expect(secs < 10, "runtime " + std::to_string(secs));
    c.why << (c.ok ? "" : "; ") << "M=6, bound=6, " << secs << " s";
}

void criterion2(Check& c) {
    for (int n = 2; n <= 4; ++n) {
        auto r = max_incomparable_packing(chain_poset(2), n, EmbeddingKind::weak);
        c.expect(BigInt(r.value) == binomial(n - 1, (n - 1) / 2), "oracle M(P2," + std::to_string(n) + ")");
    }
    auto start = Clock::now();
    std::uint64_t worst_image = 0, worst_hull = 0;
    int families = 0;
    for (int h = 0; h <= 3; ++h)
        for (int n = h; n <= 16; ++n) {
            auto fam = path_family(h, n);
            c.expect(BigInt(fam.size()) == binomial(n - h, (n - h) / 2), "path size h=" + std::to_string(h));
            auto rep = verify_packing(fam);
            hull_ledger.record(rep);
            c.expect(rep.pass(), "path family fails verification");
            c.expect(rep.image_comparisons <= 10'000'000, "image comparisons above 1e7");
            worst_image = std::max(worst_image, rep.image_comparisons);
            worst_hull = std::max(worst_hull, rep.hull_comparisons);
            ++families;
        }
    double secs = seconds_since(start);
    c.expect(secs < 60, "runtime");
    c.why << (c.ok ? "" : "; ") << families << " families, max image comparisons " << worst_image
          << ", max hull comparisons " << worst_hull << ", " << secs << " s";
}

void criterion3(Check& c) {
    const std::size_t pinned[] = {1, 1, 2};
    for (int n = 2; n <= 4; ++n) {
        auto r = max_incomparable_packing(v_poset(), n, EmbeddingKind::weak);
        c.expect(r.value == pinned[n - 2], "oracle M(V," + std::to_string(n) + ")=" + std::to_string(r.value));
        c.expect(BigInt(r.value) == v_conjecture_sum(n), "sum differs at n=" + std::to_string(n));
    }
    for (int n = 2; n <= 12; ++n) {
        auto fam = v_family(n);
        c.expect(BigInt(fam.size()) == v_conjecture_sum(n), "v-family size at n=" + std::to_string(n));
        auto rep = verify_packing(fam);
        hull_ledger.record(rep);
        c.expect(rep.pass(), "v-family fails at n=" + std::to_string(n));
    }
    c.why << (c.ok ? "" : "; ") << "oracle 1,1,2; v-family n<=12 verified";
}

void criterion4(Check& c) {
    auto start = Clock::now();
    for (int h = 0; h <= 3; ++h) {
        auto p = chain_poset(h + 1);
        auto r = min_hull(p, EmbeddingKind::weak, 2 * p.size());
        c.expect(r.value == (1 << h), "t1(P^" + std::to_string(h + 1) + ")=" + std::to_string(r.value));
    }
    auto v = v_poset();
    c.expect(min_hull(v, EmbeddingKind::weak, 6).value == 3, "t1(V)");
    c.expect(min_hull(v, EmbeddingKind::induced, 6).value == 3, "t2(V)");
    c.expect(min_hull(diamond_poset(), EmbeddingKind::weak, 8).value == 4, "t1(diamond)");
    for (int len = 1; len <= 4; ++len) c.expect(is_slim(chain_poset(len)), "chain not slim");
    c.expect(is_slim(diamond_poset()), "diamond not slim");
    c.expect(!is_thin(v), "V classified thin");
    double secs = seconds_since(start);
    c.expect(secs < 60, "runtime");
    c.why << (c.ok ? "" : "; ") << secs << " s";
}

void criterion5(Check& c) {
    std::mt19937_64 rng(20240601);
    int positive = 0, naive = 0, violated = 0;
    std::string violations;
    for (int trial = 0; trial < 200; ++trial) {
        int n = 1 + static_cast<int>(rng() % 8);
        int t = 1 + static_cast<int>(rng() % n);
        std::set<Mask> pick;
        while (static_cast<int>(pick.size()) < t) pick.insert(rng() & bits::full(n));
        std::vector<Mask> f(pick.begin(), pick.end());
        auto count = count_chains_meeting(SetFamily(GroundSet(n), f));
        auto bound = chcount_lower_bound(t, n);
        if (bound > 0) {
            ++positive;
            if (Rational(count) < bound) {
                if (violations.empty()) {
                    std::ostringstream o;
                    o << "n=" << n << " t=" << t << " count " << count << " < " << bound;
                    violations = o.str();
                }
                ++violated;
            }
        }
        std::vector<Mask> comp;
        for (Mask m : f) comp.push_back(bits::full(n) & ~m);
        c.expect(count == count_chains_meeting(SetFamily(GroundSet(n), comp)), "complement symmetry");
        if (n <= 7) {
            ++naive;
            c.expect(count == oracle::chains_by_permutations(n, f), "permutation count differs");
        }
    }
    c.expect(violated == 0, std::to_string(violated) + " families below the bound, first " + violations);
    c.why << (c.ok ? "" : "; ") << "200 families, " << positive << " with positive bound, " << naive
          << " checked against permutations";
}

void criterion6(Check& c) {
    std::size_t checked = 0, posets = 0;
    for (int size = 1; size <= 4; ++size)
        for (const auto& p : oracle::all_natural_posets(size)) {
            auto from_covers = Poset::from_relations(p.labels(), p.covers());
            c.expect(from_covers == p, "cover round trip");
            ++posets;
            std::size_t mine = 0;
            for (int m = 0; m <= 4 && mine < 500; ++m)
                for_each_embedding(from_covers, m, EmbeddingKind::weak, [&](const Embedding& e) {
                    auto lab = hull_interval_labeling(e);
                    const std::uint32_t total = std::uint32_t{1} << m;
                    std::vector<bool> used(total + 1, false);
                    for (Mask s = 0; s < total; ++s) {
                        auto r = lab.rank(s);
                        c.expect(r >= 1 && r <= total && !used[r], "not a bijection");
                        if (r >= 1 && r <= total) used[r] = true;
                    }
                    for (Mask a = 0; a < total; ++a)
                        for (Mask b = 0; b < total; ++b)
                            if (a != b && oracle::sub(a, b)) c.expect(lab.rank(a) < lab.rank(b), "not a linear extension");
                    auto hull = oracle::hull_by_definition(m, e.images);
                    auto [first, last] = lab.interval();
                    c.expect(last + 1 - first == hull.size(), "interval length");
                    for (Mask s = 0; s < total; ++s)
                        c.expect(lab.in_interval(lab.rank(s)) == (hull.count(s) > 0), "interval is not the hull");
                    ++checked;
                    return ++mine < 500;
                });
        }
    c.why << (c.ok ? "" : "; ") << posets << " labelled posets, " << checked << " embeddings";
}

void criterion7(Check& c) {
    int systems = 0;
    for (const auto& p : {single_poset(), chain_poset(2), v_poset()})
        for (Rational eps : {Rational(1, 4), Rational(1, 2)}) {
            OrderedCopyOptions opt;
            opt.epsilon_prime = eps;
            auto s = build_ordered_copies(p, EmbeddingKind::weak, opt);
            c.expect(Rational(s.count) >= s.guarantee, "K below guarantee");
            c.expect(Rational(s.count) == s.closed_form, "K differs from closed form");
            c.expect(s.materialized && BigInt(s.copies.size()) == s.count, "enumerated count differs from K");
            c.expect(!find_order_violation(s.copies), "order property fails");
            ++systems;
        }
    c.why << (c.ok ? "" : "; ") << systems << " systems";
}

void criterion8(Check& c) {
    auto start = Clock::now();
    auto lb = build_incomparable_family(chain_poset(2), EmbeddingKind::weak, 14);
    c.expect(lb.family.size() >= 858, "fewer than 858 copies");
    c.expect(lb.family.size() == 1287, "expected 1287 copies, got " + std::to_string(lb.family.size()));
    auto rep = verify_packing(lb.family, {ImageCheck::pairwise, true});
    hull_ledger.record(rep);
    c.expect(rep.invalid_copies.empty(), "invalid copies");
    c.expect(rep.pass(), "P2 family not incomparable");

    OrderedCopyOptions so;
    so.epsilon_prime = Rational(1, 4);
    auto sys = build_ordered_copies(v_poset(), EmbeddingKind::induced, so);
    const int n = sys.ground + 2 * sys.count.convert_to<int>();
    auto lv = build_incomparable_family(v_poset(), EmbeddingKind::induced, n);
    auto rv = verify_packing(lv.family, {ImageCheck::pairwise, true});
    hull_ledger.record(rv);
    c.expect(rv.pass(), "V family not incomparable");
    c.expect(lv.meets_target, "V family below target");
    double secs = seconds_since(start);
    c.expect(secs < 60, "runtime");
    c.why << (c.ok ? "" : "; ") << "P2 n=14: " << lb.family.size() << " copies; V induced n=" << n << " (N="
          << sys.ground << ", K=" << big(sys.count) << "): " << lv.family.size() << " copies; " << secs << " s";
}

void criterion9(Check& c) {
    int pairs = 0;
    for (int n = 0; n <= 30; ++n)
        for (int big_n = 0; big_n <= n; ++big_n, ++pairs)
            c.expect((BigInt(1) << big_n) * binomial(n - big_n, (n - big_n) / 2) >= binomial(n, n / 2),
                     "fails at n=" + std::to_string(n) + " N=" + std::to_string(big_n));
    c.why << (c.ok ? "" : "; ") << pairs << " pairs";
}

void criterion10(Check& c) {
    struct Case {
        const char* name;
        Poset p;
    };
    std::vector<Case> cases{{"single", single_poset()},   {"P2", chain_poset(2)}, {"P3", chain_poset(3)},
                            {"V", v_poset()},             {"Lambda", fork_poset(2, ForkDirection::down)},
                            {"diamond", diamond_poset()}};
    int rows = 0;
    std::vector<std::string> above;
    for (const auto& [name, p] : cases) {
        const int t1 = min_hull(p, EmbeddingKind::weak).value;
        for (int n = 1; n <= 5; ++n) {
            if (n < height(p)) continue;
            auto exact = max_incomparable_packing(p, n, EmbeddingKind::weak);
            std::size_t built = 0;
            if (is_thin(p)) built = std::max(built, thin_family(p, n).size());
            if (p == v_poset() && n >= 2) built = std::max(built, v_family(n).size());
            try {
                built = std::max(built, build_incomparable_family(p, EmbeddingKind::weak, n).family.size());
            } catch (const InvalidInput&) {
            }
            std::string at = std::string(name) + " n=" + std::to_string(n);
            c.expect(built <= exact.value, "construction above oracle at " + at);
            if (auto ub = upper_bound_estimate(t1, n); ub && BigInt(exact.value) > *ub)
                above.push_back(at + " (M=" + std::to_string(exact.value) + ", bound " + big(*ub) + ")");
            ++rows;
        }
    }
    if (!above.empty()) {
        std::string list;
        for (const auto& a : above) list += (list.empty() ? "" : ", ") + a;
        c.expect(false, "oracle above bound at " + list);
    }
    auto p2 = max_incomparable_packing(chain_poset(2), 4, EmbeddingKind::weak);
    c.expect(*upper_bound_estimate(2, 4) == 3 && p2.value == 3, "t=2,n=4 tightness");
    auto v4 = max_incomparable_packing(v_poset(), 4, EmbeddingKind::weak);
    c.expect(*upper_bound_estimate(3, 4) == 2 && v4.value == 2, "t=3,n=4 tightness");
    c.why << (c.ok ? "" : "; ") << rows << " (P,n) rows; tight cases reproduced";
}

void criterion11(Check& c) {
    std::vector<std::string> odd_sums;
    for (int h = 0; h <= 3; ++h)
        for (int n = h; n <= 14; ++n) {
            auto r = bollobas_check(set_pairs_from_family(path_family(h, n)));
            c.expect(r.holds.has_value(), "hypotheses fail");
            if ((n - h) % 2 == 0) {
                c.expect(r.sum == 1, "even n-h sum not 1");
            } else {
                c.expect(r.sum < 1, "odd n-h sum is not below 1");
                if (odd_sums.size() < 3) odd_sums.push_back("h=" + std::to_string(h) + ",n=" + std::to_string(n) + ": " + r.sum.str());
            }
        }
    c.why << (c.ok ? "" : "; observed ");
    for (const auto& s : odd_sums) c.why << s << " ";
}

void criterion12(Check& c) {
    c.expect(hull_ledger.packings > 0, "no packings recorded");
    c.expect(hull_ledger.failures == 0, std::to_string(hull_ledger.failures) + " hull failures");
    c.why << (c.ok ? "" : "; ") << hull_ledger.packings << " packings, " << hull_ledger.failures << " hull failures";
}

}  // namespace

int main() {
    const std::vector<std::pair<const char*, std::function<void(Check&)>>> criteria{
        {"Sperner baseline", criterion1},
        {"path posets exact and path families", criterion2},
        {"V conjecture small n", criterion3},
        {"minimal hulls and classification", criterion4},
        {"chain count lower bound", criterion5},
        {"hull interval labeling", criterion6},
        {"ordered copy systems", criterion7},
        {"layered lower-bound families", criterion8},
        {"auxiliary binomial inequality", criterion9},
        {"upper/lower sandwich", criterion10},
        {"Bollobas set pairs from path families", criterion11},
        {"hull incomparability of verified packings", criterion12},
    };
    int failed = 0;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        Check c;
        try {
            criteria[i].second(c);
        } catch (const std::exception& e) {
            c.expect(false, std::string("exception: ") + e.what());
        }
        std::cout << (c.ok ? "PASS" : "FAIL") << " criterion " << i + 1 << " (" << criteria[i].first
                  << "): " << c.why.str() << std::endl;
        failed += !c.ok;
    }
    std::cout << (criteria.size() - failed) << "/" << criteria.size() << " criteria passed" << std::endl;
    return failed == 0 ? 0 : 1;
}
