// Acceptance runner. One summary line per criterion; sub-items are indented above it.
//
// Usage: dmc_acceptance [--criterion N]...   (no argument runs all eight)
//
// Every count is compared exactly. Runtime budgets are wall-clock seconds on a Release build.
// A sub-item whose name starts with an entry of kKnown fails by design: the reference value is a misprint, and the
// computed value is pinned. Such a criterion prints FAIL but does not change the exit
// status as long as the observed value equals the pinned one.

#include <chrono>
#include <cstdlib>
#include <functional>
#include <iostream>
#include <map>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "dmc/decreasing_set.hpp"
#include "dmc/design.hpp"
#include "dmc/evaluation.hpp"
#include "dmc/lta.hpp"
#include "dmc/profile.hpp"
#include "dmc/type1.hpp"
#include "oracles.hpp"
#include "support.hpp"

namespace dmc::acceptance {
namespace {

using test::mono;

struct Known {
    std::string item;
    BigCount pinned;
    std::string analysis;
};

const std::vector<Known> kKnown = {
    {"W_min x1x4x6", BigCount(8984),
     "the reference row repeats the x1x3x7 row; |I_3|=23 and the closed form over the 23 orbits gives 8984"},
    {"W_min x2x4x5", BigCount(7064),
     "the reference row repeats the x2x3x6 row; |I_3|=19 and the closed form over the 19 orbits gives 7064"},
    {"W_1.5 x1x4x6", BigCount(1524096), "copied row, see W_min x1x4x6"},
    {"W_1.75 x1x4x6", BigCount(20127744), "copied row, see W_min x1x4x6"},
    {"W_1.5 x2x4x5", BigCount(947072), "copied row, see W_min x2x4x5"},
    {"W_1.75 x2x4x5", BigCount(11583488), "copied row, see W_min x2x4x5"},
    {"|LTA_g^f g| x3x5x6 vs x1x3x5", BigCount(9216),
     "h*=x3x5 and J_fg(3)={0,2}, J_fg(5)={0,2,4} give 2^14/2^5*(2^2-1)(2^3-2) = 2^10*3^2; "
     "rank-filtered enumeration agrees"},
};

// Pinned budgets, seconds.
const std::map<int, double> kBudget = {{1, 1.0}, {2, 40.0}, {3, 5.0},   {4, 120.0},
                                       {5, 300.0}, {6, 600.0}, {7, 300.0}, {8, 3600.0}};

struct Tally {
    int fails = 0;
    int known = 0;
    int unexpected = 0;
};

class Criterion {
public:
    explicit Criterion(int n) : n_(n) {}

    void check(const std::string& item, const BigCount& observed, const BigCount& expected) {
        bool ok = observed == expected;
        std::cout << "  [" << (ok ? "ok  " : "FAIL") << "] " << item << ": observed " << observed << ", expected "
                  << expected;
        if (!ok) {
            ++t_.fails;
            const Known* k = find(item);
            if (k && k->pinned == observed) {
                ++t_.known;
                std::cout << " (known discrepancy: " << k->analysis << ")";
            } else {
                ++t_.unexpected;
            }
        }
        std::cout << '\n';
    }
    void check(const std::string& item, bool ok, const std::string& detail = {}) {
        std::cout << "  [" << (ok ? "ok  " : "FAIL") << "] " << item << (detail.empty() ? "" : ": " + detail) << '\n';
        if (!ok) {
            ++t_.fails;
            ++t_.unexpected;
        }
    }
    void note(const std::string& text) { std::cout << "  " << text << '\n'; }

    // Prints the summary line; returns false on an unexpected failure.
    bool finish(const std::string& title, double seconds) {
        double budget = kBudget.at(n_);
        if (seconds > budget) {
            ++t_.fails;
            ++t_.unexpected;
            std::cout << "  [FAIL] runtime " << seconds << " s over the " << budget << " s budget\n";
        }
        std::ostringstream tail;
        tail.precision(3);
        tail << std::fixed << seconds << " s";
        std::cout << "criterion " << n_ << " " << (t_.fails == 0 ? "PASS" : "FAIL") << " " << title << " ("
                  << tail.str();
        if (t_.known) std::cout << ", " << t_.known << " known discrepanc" << (t_.known == 1 ? "y" : "ies") << " pinned";
        std::cout << ")" << std::endl;
        return t_.unexpected == 0;
    }

private:
    static const Known* find(const std::string& item) {
        for (const auto& k : kKnown)
            if (item.rfind(k.item, 0) == 0) return &k;
        return nullptr;
    }
    int n_;
    Tally t_;
};

DecreasingSet polar_half() { return closure(6, {mono("x1x3x4", 6), mono("x0x2x5", 6)}); }

std::string c1(Criterion& c) {
    struct Row {
        int r, m;
        std::uint64_t value;
    };
    const Row rows[] = {{3, 7, 94488},    {3, 8, 777240},    {3, 9, 6304280},    {3, 10, 50781720},
                        {4, 7, 188976},   {4, 8, 3212592},   {4, 9, 52955952},   {4, 10, 859903792}};
    for (const auto& row : rows)
        c.check("W_min RM(" + std::to_string(row.r) + "," + std::to_string(row.m) + ")",
                count_min_weight(rm_set(row.r, row.m)), BigCount(row.value));
    const std::pair<const char*, std::uint64_t> table[] = {{"x0x4x7", 7000}, {"x0x5x6", 5208}, {"x1x3x7", 9240},
                                                           {"x1x4x6", 9240}, {"x2x3x6", 7960}, {"x2x4x5", 7960}};
    for (const auto& [f, v] : table)
        c.check(std::string("W_min ") + f, count_min_weight(rmxpolar(8, mono(f, 8))), BigCount(v));
    return "minimum-weight closed form";
}

std::string c2(Criterion& c) {
    c.check("RM(4,7) W_1.75", count_type1_total(rm_set(4, 7), 3).total, BigCount(5805342720ULL));
    c.check("RM(4,8) W_1.875", count_type1_total(rm_set(4, 8), 4).total, BigCount(1684323434496ULL));
    c.check("RM(4,9) W_1.875", count_type1_total(rm_set(4, 9), 4).total, BigCount(860689275027456ULL));
    c.check("polar m=6 rate 0.5 W_14", count_type1_total(polar_half(), 3).total, BigCount(32768));
    return "pure Type I values";
}

void both_ways(Criterion& c, const std::string& item, const OrbitSpec& spec, const BigCount& expected) {
    c.check(item + " closed form", closed_form_size(spec), expected);
    c.check(item + " enumerated", BigCount(test::distinct(enumerate_orbit(spec))), expected);
}

std::string c3(Criterion& c) {
    const int m = 7;
    Monomial f = mono("x1x3x5", m), g = mono("x3x5x6", m), one = Monomial::one(m);
    both_ways(c, "|LTA_f f| x1x3x5", OrbitSpec::full(f), pow2(9));
    both_ways(c, "|LTA_f^f f| x1x3x5", OrbitSpec::restricted_pair(f, one, f), pow2(6));
    both_ways(c, "|LTA_f^g f| x1x3x5 vs x3x5x6", OrbitSpec::restricted_pair(f, one, g), pow2(5) * 9);
    both_ways(c, "|LTA_g g| x3x5x6", OrbitSpec::full(g), pow2(14));
    both_ways(c, "|LTA_g^f g| x3x5x6 vs x1x3x5", OrbitSpec::restricted_pair(g, one, f), pow2(9) * 9);

    c.check("pair x1x3x5 + x1x3x5", count_pair_A2(f, f, one, 3), BigCount(16384));
    c.check("pair x1x3x5 + x2x4x5", count_pair_A2(f, mono("x2x4x5", m), one, 3), pow2(19));
    c.check("pair x2x3x5 + x2x3x4", count_pair_A2(mono("x2x3x5", m), mono("x2x3x4", m), one, 3), 3 * pow2(16));

    Monomial f6 = mono("x2x4x5", 6), one6 = Monomial::one(6);
    auto Ia = closure(6, {mono("x2x3x4", 6), mono("x1x4x5", 6)});
    auto Ib = closure(6, {mono("x2x3x4", 6), mono("x1x2x5", 6), mono("x0x4x5", 6)});
    auto Ic = closure(6, {mono("x1x2x5", 6), mono("x0x4x5", 6), mono("x1x3x4", 6)});
    const std::pair<const DecreasingSet*, BigCount> selves[] = {{&Ia, 3 * pow2(6)}, {&Ib, pow2(6)}, {&Ic, BigCount(0)}};
    const char* tag[] = {"(a)", "(b)", "(c)"};
    for (int k = 0; k < 3; ++k)
        both_ways(c, std::string("|LTA_f^{f,I} f| x2x4x5 ") + tag[k], OrbitSpec::restricted_self(f6, one6, *selves[k].first),
                  selves[k].second);

    auto I8 = rm_set(3, 8);
    const std::tuple<const char*, const char*, bool> verdicts[] = {
        {"x0x1x2", "x3x4x5", true},  {"x0x1x2", "x0x3x4", false}, {"x1x2x3", "x1x4x5", true},
        {"x0x2x3", "x0x2x4", false}, {"x1x2x3", "x1x2x4", false}, {"x1x4x5", "x1x4x6", true},
        {"x0x2x4", "x0x2x4", false}, {"x1x3x5", "x1x3x5", true}};
    for (const auto& [a, b, valid] : verdicts) {
        bool got = classify_pair(I8, mono(a, 8), mono(b, 8), 3).has_value();
        c.check(std::string("verdict (") + a + ", " + b + ")", got == valid, got ? "valid" : "invalid");
    }

    auto chain = antichain(8, 3, 11);
    std::vector<std::string> names;
    for (const auto& h : chain) names.push_back(h.to_string());
    std::sort(names.begin(), names.end());
    const std::vector<std::string> want = {"x0x4x7", "x0x5x6", "x1x3x7", "x1x4x6", "x2x3x6", "x2x4x5"};
    c.check("antichain A_{11,3}", names == want, std::to_string(names.size()) + " members");
    const std::pair<const char*, int> scores[] = {{"x1x3x7", 56}, {"x1x4x6", 72}, {"x2x3x6", 72},
                                                  {"x2x4x5", 72}, {"x0x4x7", 0},  {"x0x5x6", 0}};
    for (const auto& [s, v] : scores) c.check(std::string("score ") + s, type1_refinement_score(mono(s, 8)), BigCount(v));

    const int ladder[] = {64, 96, 112, 120};
    for (int mu = 1; mu <= 4; ++mu)
        c.check("w_" + std::to_string(mu) + " m=9 r=3", BigCount(wmu(9, 3, mu)), BigCount(ladder[mu - 1]));
    return "worked examples";
}

// Compares every ladder entry with the Gray-code distribution; true when all agree.
bool profile_matches_full(const DecreasingSet& I, std::string& detail) {
    auto p = build_profile(I);
    auto d = full_weight_distribution(I);
    std::ostringstream why;
    bool ok = true;
    for (const auto& e : p.entries) {
        auto comb = e.combined();
        if (!comb || *comb != d.count(e.weight)) {
            ok = false;
            why << " w=" << e.weight << " profile " << (comb ? comb->str() : "unavailable") << " full "
                << d.count(e.weight);
        }
    }
    for (const auto& [w, n] : d.counts) {
        if (w == 0 || w >= 2 * p.w_min) continue;
        bool listed = false;
        for (const auto& e : p.entries) listed = listed || e.weight == w;
        if (!listed) {
            ok = false;
            why << " unlisted w=" << w;
        }
    }
    detail = "K=" + std::to_string(I.size()) + (ok ? "" : why.str());
    return ok;
}

std::string c4(Criterion& c) {
    std::mt19937_64 rng(2024);
    int agree = 0;
    const int n = 24;
    for (int k = 0; k < n;) {
        auto I = test::random_code(rng, 5, 1 + static_cast<int>(rng() % 4), 1 + static_cast<int>(rng() % 3));
        if (I.size() > 24) continue;
        ++k;
        std::string detail;
        bool ok = profile_matches_full(I, detail);
        agree += ok;
        if (!ok) c.check("random m=5 code #" + std::to_string(k), false, detail);
    }
    c.check("random m=5 codes", agree == n, std::to_string(agree) + "/" + std::to_string(n) + " agree");
    const std::pair<const char*, DecreasingSet> named[] = {
        {"RM(1,4)", rm_set(1, 4)}, {"RM(2,4)", rm_set(2, 4)}, {"RM(2,5)", rm_set(2, 5)}};
    for (const auto& [name, I] : named) {
        std::string detail;
        bool ok = profile_matches_full(I, detail);
        c.check(name, ok, detail);
    }
    return "profile equals full enumeration";
}

std::string c5(Criterion& c) {
    auto I = polar_half();
    auto p = build_profile(I);
    c.check("W_8 formula", *p.entries[0].type2.value, BigCount(920));
    c.check("W_8 orbit census", BigCount(min_weight_census(I)), BigCount(920));
    c.check("W_12 via Type II census", p.entries[1].type2.method == Method::Census && p.entries[1].type2.available(),
            method_name(p.entries[1].type2.method));
    c.check("W_12", p.entries[1].combined().value_or(-1), BigCount(25472));
    c.check("W_14 formula", *p.entries[2].type1.value, BigCount(32768));
    c.check("W_14 census", BigCount(type1_census(I, 3).distinct), BigCount(32768));
    auto d = full_weight_distribution(I, 31);
    c.check("W_12 full enumeration", BigCount(d.count(12)), BigCount(25472));
    c.check("W_14 full enumeration", BigCount(d.count(14)), BigCount(32768));
    return "census oracle on the m=6 polar code";
}

std::string c6(Criterion& c) {
    using namespace test;
    // (a)
    {
        int n = 0, bad = 0;
        for (int m = 1; m <= 7; ++m)
            for (IndexMask mask = 1; mask < (IndexMask{1} << m); ++mask) {
                Monomial f(m, mask);
                if (param_count(f, f) > 20) continue;
                auto block = orbit_vectors(OrbitSpec::full(f));
                std::vector<std::array<std::uint64_t, 2>> seen(block.size(), {0, 0});
                for (std::size_t i = 0; i < block.size(); ++i)
                    for (std::size_t w = 0; w < block.width; ++w) seen[i][w] = block.at(i)[w];
                std::sort(seen.begin(), seen.end());
                seen.erase(std::unique(seen.begin(), seen.end()), seen.end());
                bad += BigCount(seen.size()) != orbit_size(f);
                ++n;
            }
        for (int m = 1; m <= 5; ++m)
            for (IndexMask mask = 0; mask < (IndexMask{1} << m); ++mask) {
                Monomial f(m, mask);
                bad += BigCount(full_group_orbit(f)) != orbit_size(f);
                ++n;
            }
        c.check("(a) orbit size vs enumeration", bad == 0, std::to_string(n - bad) + "/" + std::to_string(n));
    }
    // (b)
    {
        std::mt19937_64 rng(606);
        int n = 0, bad = 0;
        while (n < 120) {
            int m = 3 + static_cast<int>(rng() % 5);
            int r = 1 + static_cast<int>(rng() % std::min(4, m));
            Monomial f = random_monomial(rng, m, r), g = random_monomial(rng, m, r);
            Monomial h(m, gcd(f, g).mask() & static_cast<IndexMask>(rng()));
            if (param_count(quotient(f, h), f) > 16) continue;
            bad += BigCount(filtered_pair(f, h, g).size()) != restricted_pair_size(f, h, g);
            ++n;
        }
        int s = 0;
        while (s < 120) {
            int m = 3 + static_cast<int>(rng() % 5);
            int r = 1 + static_cast<int>(rng() % std::min(3, m));
            auto I = random_code(rng, m, r, 3);
            Monomial f = random_monomial(rng, m, r);
            Monomial h(m, f.mask() & static_cast<IndexMask>(rng()));
            if (param_count(quotient(f, h), f) > 16) continue;
            bad += BigCount(filtered_self(f, h, I).size()) != restricted_self_I_size(f, h, I);
            ++s;
        }
        c.check("(b) restricted sizes vs rank-filtered enumeration", bad == 0,
                std::to_string(n + s - bad) + "/" + std::to_string(n + s));
    }
    // (c)
    {
        std::mt19937_64 rng(707);
        int n = 0, bad = 0;
        while (n < 60) {
            int m = 4 + static_cast<int>(rng() % 4);
            int r = 2 + static_cast<int>(rng() % 2);
            Monomial f = random_monomial(rng, m, r), g = random_monomial(rng, m, r);
            if (f == g || !collision_free_shape(f, g, r)) continue;
            BigCount expect = orbit_size(f) * orbit_size(g);
            if (expect > BigCount(1) << 22) continue;
            auto census = minkowski_weight_census(OrbitSpec::full(f), OrbitSpec::full(g), std::nullopt);
            bad += BigCount(census.distinct) != expect;
            ++n;
        }
        c.check("(c) no-collision Minkowski sums", bad == 0, std::to_string(n - bad) + "/" + std::to_string(n));
    }
    // (d)
    {
        std::mt19937_64 rng(808);
        int n = 0, bad = 0;
        std::vector<DecreasingSet> codes = {rm_set(3, 6), polar_half()};
        for (int k = 0; k < 12; ++k) codes.push_back(random_code(rng, 6, 3, 1 + static_cast<int>(rng() % 3)));
        for (const auto& I : codes) {
            auto t = count_type1_total(I, 3);
            auto u = ledger_union_census(I, t.ledger);
            bad += BigCount(u.distinct) != t.total || BigCount(u.case_sum) != t.total;
            ++n;
        }
        c.check("(d) case orbits disjoint, union = ledger sum", bad == 0,
                std::to_string(n - bad) + "/" + std::to_string(n) + " codes");
    }
    // (e)
    {
        long n = 0, bad = 0;
        for (int m = 1; m <= 5; ++m)
            for (IndexMask a = 0; a < (IndexMask{1} << m); ++a)
                for (IndexMask b = 0; b < (IndexMask{1} << m); ++b) {
                    Monomial f(m, a), g(m, b);
                    bad += leq(f, g) != brute_leq(f, g);
                    ++n;
                }
        c.check("(e) top alignment vs divisor search", bad == 0, std::to_string(n - bad) + "/" + std::to_string(n));
    }
    // (f)
    {
        long n = 0, bad = 0;
        for (int m = 1; m <= 8; ++m) {
            const IndexMask all = full_mask(m);
            for (IndexMask hs = 0; hs <= all; ++hs) {
                const IndexMask rest = all & ~hs;
                for (IndexMask free = rest;; free = (free - 1) & rest) {
                    Monomial h_star(m, hs);
                    bad += shift_exists(h_star, free).has_value() != shift_exists_exhaustive(h_star, free).has_value();
                    ++n;
                    if (free == 0) break;
                }
            }
        }
        c.check("(f) greedy shift vs exhaustive", bad == 0, std::to_string(n - bad) + "/" + std::to_string(n));
    }
    return "property suites";
}

std::string c7(Criterion& c) {
    std::mt19937_64 rng(909);
    std::vector<DecreasingSet> codes = {closure(6, {mono("x0x3x5", 6), mono("x1x2x5", 6), mono("x1x3x4", 6)}),
                                        closure(6, {mono("x1x3x5", 6), mono("x2x3x4", 6)}),
                                        closure(6, {mono("x2x3x4", 6), mono("x1x4x5", 6)}),
                                        closure(6, {mono("x2x3x4", 6), mono("x1x2x5", 6), mono("x0x4x5", 6)})};
    for (int k = 0; k < 40; ++k) codes.push_back(test::random_code(rng, 6, 3, 1 + static_cast<int>(rng() % 3)));
    int cases = 0, halved = 0, unhalved = 0;
    for (const auto& I : codes)
        for (const auto& t : count_type1_total(I, 3).ledger) {
            if (t.variant != CaseVariant::B1) continue;
            BigCount seen(case_census(I, t));
            if (seen == 0) continue;
            ++cases;
            halved += seen == count_B1(t.f, t.h, I, 3, B1Variant::Halved);
            unhalved += seen == count_B1(t.f, t.h, I, 3, B1Variant::Unhalved);
        }
    c.note("B1 cases with codewords: " + std::to_string(cases) + ", census equals halved count in " +
           std::to_string(halved) + ", unhalved in " + std::to_string(unhalved));
    const bool halved_wins = cases > 0 && halved == cases && unhalved == 0;
    c.note(std::string("verdict: ") + (halved_wins ? "the halved count (exponent r+mu-1) is correct"
                                                   : "census does not single out the halved count"));
    const bool default_halved = kDefaultB1Variant == B1Variant::Halved;
    c.check("shipped default matches census", halved_wins == default_halved,
            default_halved ? "default is halved" : "default is unhalved");
    return "B1 factor-2 adjudication";
}

std::string c8(Criterion& c) {
    struct Row {
        const char* f;
        std::uint64_t w15, w175;
    };
    const Row rows[] = {{"x0x4x7", 1694336, 26664960}, {"x0x5x6", 583296, 1777664},
                        {"x1x3x7", 1975680, 23224320}, {"x1x4x6", 1975680, 23224320},
                        {"x2x3x6", 1323392, 14622720}, {"x2x4x5", 1323392, 14622720}};
    for (const auto& row : rows) {
        auto p = build_profile(rmxpolar(8, mono(row.f, 8)));
        c.check(std::string("W_1.5 ") + row.f, p.entries[1].combined().value_or(-1), BigCount(row.w15));
        c.check(std::string("W_1.75 ") + row.f, p.entries[2].combined().value_or(-1), BigCount(row.w175));
    }
    auto q = closure(6, {mono("x1x3x5", 6), mono("x2x3x4", 6)});
    auto pp = build_profile(q);
    c.check("polar 0.55 K", BigCount(q.size()), BigCount(36));
    c.check("polar 0.55 W_8", pp.entries[0].combined().value_or(-1), BigCount(2456));
    c.check("polar 0.55 W_12", pp.entries[1].combined().value_or(-1), BigCount(142208));
    c.check("polar 0.55 W_14", pp.entries[2].combined().value_or(-1), BigCount(868352));
    return "stretch targets";
}

}  // namespace
}  // namespace dmc::acceptance

int main(int argc, char** argv) {
    using namespace dmc::acceptance;
    const std::map<int, std::function<std::string(Criterion&)>> all = {{1, c1}, {2, c2}, {3, c3}, {4, c4},
                                                                       {5, c5}, {6, c6}, {7, c7}, {8, c8}};
    std::vector<int> pick;
    for (int i = 1; i < argc; ++i) {
        std::string a = argv[i];
        if (a == "--criterion" && i + 1 < argc) {
            pick.push_back(std::atoi(argv[++i]));
        } else {
            std::cerr << "usage: dmc_acceptance [--criterion N]...\n";
            return 2;
        }
    }
    if (pick.empty())
        for (const auto& [n, fn] : all) pick.push_back(n);
    bool ok = true;
    for (int n : pick) {
        auto it = all.find(n);
        if (it == all.end()) {
            std::cerr << "no criterion " << n << '\n';
            return 2;
        }
        Criterion c(n);
        auto t0 = std::chrono::steady_clock::now();
        std::string title;
        try {
            title = it->second(c);
        } catch (const std::exception& e) {
            c.check("unexpected exception", false, e.what());
            title = "aborted";
        }
        double s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        ok = c.finish(title, s) && ok;
    }
    return ok ? 0 : 1;
}
