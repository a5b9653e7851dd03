#include "dmc/profile.hpp"

#include <algorithm>
#include <bit>
#include <random>
#include <stdexcept>

#include "dmc/error.hpp"
#include "dmc/parallel.hpp"
#include "dmc/vector_set.hpp"

namespace dmc {

BigCount count_min_weight(const DecreasingSet& I) {
    BigCount total = 0;
    const int r = I.r_max();
    if (r < 0) return total;
    for (const auto& f : I.stratum(r)) total += pow2(r + lambda(f).total);
    return total;
}

namespace {

void charge(std::uint64_t& used, std::uint64_t extra, std::uint64_t budget) {
    if (extra > budget || used > budget - extra)
        throw BudgetExceeded("pair-operation budget of " + std::to_string(budget) + " exceeded");
    used += extra;
}

// mu-subsets of pairwise disjoint quadratic cofactors, indices ascending.
void disjoint_tuples(const std::vector<Monomial>& qs, int mu, std::size_t start, IndexMask used,
                     std::vector<std::size_t>& cur, std::vector<std::vector<std::size_t>>& out) {
    if (static_cast<int>(cur.size()) == mu) {
        out.push_back(cur);
        return;
    }
    for (std::size_t k = start; k < qs.size(); ++k) {
        if (qs[k].mask() & used) continue;
        cur.push_back(k);
        disjoint_tuples(qs, mu, k + 1, used | qs[k].mask(), cur, out);
        cur.pop_back();
    }
}

struct HFamily {
    Monomial h;
    std::vector<Monomial> cofactors;
    std::vector<std::vector<std::size_t>> tuples;
};

VectorBlock to_block(const ShardedVectorSet& set, int m) {
    VectorBlock b;
    b.m = m;
    b.width = set.width();
    b.data.reserve(set.size() * set.width());
    set.for_each([&](const std::uint64_t* v) { b.data.insert(b.data.end(), v, v + set.width()); });
    return b;
}

BigCount size_bound(const HFamily& fam, const std::vector<std::size_t>& tuple) {
    BigCount ops = 0, prefix = 1;
    for (std::size_t k = 0; k < tuple.size(); ++k) {
        BigCount s = orbit_size(product(fam.h, fam.cofactors[tuple[k]]), fam.h);
        if (k > 0) ops += prefix * s;
        prefix *= s;
    }
    return ops;
}

}  // namespace

Type2Result count_type2_census(const DecreasingSet& I, int mu, const Type2Options& options) {
    Type2Result res;
    const int m = I.vars();
    const int r = I.r_max();
    if (mu < 1) throw std::invalid_argument("mu must be at least 1");
    if (mu == 1) {
        res.count = count_min_weight(I);
        return res;
    }
    if (r < 2 || 2 * mu > m - r + 2) {
        res.count = BigCount(0);
        return res;
    }
    const std::uint64_t target = wmu(m, r, mu);
    const std::size_t W = words_for(m);
    const CensusOptions& co = options.census;
    const unsigned workers = resolve_threads(co.threads);
    const bool locking = workers > 1;

    std::vector<HFamily> families;
    for (const auto& h : I.stratum(r - 2)) {
        HFamily fam;
        fam.h = h;
        for (const auto& q : monomials_of_degree(m, 2))
            if (!(q.mask() & h.mask()) && I.contains(product(h, q))) fam.cofactors.push_back(q);
        std::vector<std::size_t> cur;
        disjoint_tuples(fam.cofactors, mu, 0, 0, cur, fam.tuples);
        if (!fam.tuples.empty()) families.push_back(std::move(fam));
    }
    std::mt19937_64 rng(options.shuffle_seed);
    if (options.shuffle_seed) {
        std::shuffle(families.begin(), families.end(), rng);
        for (auto& fam : families) {
            std::shuffle(fam.tuples.begin(), fam.tuples.end(), rng);
            for (auto& t : fam.tuples) std::shuffle(t.begin(), t.end(), rng);
        }
    }

    BigCount bound = 0;
    for (const auto& fam : families)
        for (const auto& t : fam.tuples) {
            bound += size_bound(fam, t);
            ++res.tuples;
        }
    if (bound > co.pair_budget) {
        res.unavailable = "BudgetExceeded: " + bound.str() + " worst-case pair operations exceed the budget of " +
                          std::to_string(co.pair_budget);
        return res;
    }

    try {
        BigCount total = 0;
        std::unique_ptr<ShardedVectorSet> global;
        if (options.mode == Type2Mode::Exact)
            global = std::make_unique<ShardedVectorSet>(W, co.dedup_budget, locking);
        for (const auto& fam : families) {
            const EvalVector hv = ev(fam.h);
            const std::uint64_t* hw = hv.words().data();
            ShardedVectorSet sums(W, co.dedup_budget, locking);
            for (const auto& t : fam.tuples) {
                std::vector<VectorBlock> orbits;
                for (std::size_t k : t)
                    orbits.push_back(orbit_vectors(OrbitSpec::full(product(fam.h, fam.cofactors[k]), fam.h),
                                                   co.orbit_budget));
                VectorBlock cur = std::move(orbits[0]);
                for (std::size_t k = 1; k + 1 < orbits.size(); ++k) {
                    charge(res.pair_ops, static_cast<std::uint64_t>(cur.size()) * orbits[k].size(),
                           co.pair_budget);
                    ShardedVectorSet next(W, co.dedup_budget, locking);
                    const VectorBlock& o = orbits[k];
                    parallel_for(cur.size(), workers, [&](std::size_t i, unsigned) {
                        std::vector<std::uint64_t> tmp(W);
                        const std::uint64_t* a = cur.at(i);
                        for (std::size_t j = 0; j < o.size(); ++j) {
                            const std::uint64_t* b = o.at(j);
                            for (std::size_t x = 0; x < W; ++x) tmp[x] = a[x] ^ b[x];
                            next.insert(tmp.data());
                        }
                    });
                    cur = to_block(next, m);
                }
                const VectorBlock& last = orbits.back();
                charge(res.pair_ops, static_cast<std::uint64_t>(cur.size()) * last.size(), co.pair_budget);
                const bool exact = options.mode == Type2Mode::Exact;
                parallel_for(cur.size(), workers, [&](std::size_t i, unsigned) {
                    std::vector<std::uint64_t> tmp(W);
                    const std::uint64_t* a = cur.at(i);
                    for (std::size_t j = 0; j < last.size(); ++j) {
                        const std::uint64_t* b = last.at(j);
                        std::uint64_t w = 0;
                        for (std::size_t x = 0; x < W; ++x) {
                            tmp[x] = a[x] ^ b[x];
                            w += std::popcount(tmp[x] & hw[x]);
                        }
                        if (exact || w == target) sums.insert(tmp.data());
                    }
                });
            }
            if (options.mode == Type2Mode::Factored) {
                total += BigCount(sums.size()) * orbit_size(fam.h);
                continue;
            }
            VectorBlock hs = orbit_vectors(OrbitSpec::full(fam.h), co.orbit_budget);
            VectorBlock s = to_block(sums, m);
            charge(res.pair_ops, static_cast<std::uint64_t>(s.size()) * hs.size(), co.pair_budget);
            parallel_for(s.size(), workers, [&](std::size_t i, unsigned) {
                std::vector<std::uint64_t> tmp(W);
                const std::uint64_t* a = s.at(i);
                for (std::size_t j = 0; j < hs.size(); ++j) {
                    const std::uint64_t* b = hs.at(j);
                    for (std::size_t x = 0; x < W; ++x) tmp[x] = a[x] & b[x];
                    if (popcount_words({tmp.data(), W}) == target) global->insert(tmp.data());
                }
            });
        }
        res.count = options.mode == Type2Mode::Exact ? BigCount(global->size()) : total;
    } catch (const BudgetExceeded& e) {
        res.count.reset();
        res.unavailable = std::string("BudgetExceeded: ") + e.what();
    }
    return res;
}

std::string method_name(Method m) {
    switch (m) {
        case Method::Formula: return "formula";
        case Method::Census: return "census";
        case Method::FullEnumeration: return "full-enumeration";
        case Method::Excluded: return "excluded";
    }
    return "?";
}

std::optional<BigCount> ProfileEntry::combined() const {
    if (!type1.value || !type2.value) return std::nullopt;
    return *type1.value + *type2.value;
}

int profile_mu_limit(int m, int r) {
    if (r < 0) return 0;
    int lim = 1;
    MuRange t1 = mu_range(m, r);
    if (!t1.empty()) lim = std::max(lim, t1.hi);
    if (r >= 2) lim = std::max(lim, (m - r + 2) / 2);
    return lim;
}

WeightProfile build_profile(const DecreasingSet& I, const ProfileOptions& options) {
    WeightProfile p;
    p.m = I.vars();
    p.r = I.r_max();
    p.K = I.size();
    if (p.r < 0) return p;
    const int m = p.m, r = p.r;
    p.w_min = std::uint64_t{1} << (m - r);
    int top = profile_mu_limit(m, r);
    if (options.mu_max > 0) top = std::min(top, options.mu_max);
    const MuRange t1 = mu_range(m, r);
    for (int mu = 1; mu <= top; ++mu) {
        ProfileEntry e;
        e.mu = mu;
        e.weight = wmu(m, r, mu);
        if (t1.contains(mu)) {
            Type1Total t = count_type1_total(I, mu, options.b1);
            e.type1.value = t.total;
            e.type1.method = Method::Formula;
            for (auto& c : t.ledger) p.ledger.push_back(std::move(c));
        } else {
            e.type1.value = BigCount(0);
            e.type1.method = Method::Excluded;
        }
        if (mu == 1) {
            e.type2.value = count_min_weight(I);
            e.type2.method = Method::Formula;
        } else if (r >= 2 && 2 * mu <= m - r + 2) {
            e.type2.method = Method::Census;
            if (options.type2_census) {
                Type2Result t2 = count_type2_census(I, mu, options.type2);
                e.type2.value = t2.count;
                e.type2.unavailable = t2.unavailable;
            } else {
                e.type2.unavailable = "census disabled";
            }
        } else {
            e.type2.value = BigCount(0);
            e.type2.method = Method::Excluded;
        }
        p.entries.push_back(std::move(e));
    }
    return p;
}

bool VerifyReport::all_match() const {
    return std::all_of(lines.begin(), lines.end(), [](const VerifyLine& l) { return l.match; });
}

std::uint64_t min_weight_census(const DecreasingSet& I, const CensusOptions& options) {
    const int r = I.r_max();
    if (r < 0) return 0;
    ShardedVectorSet set(words_for(I.vars()), options.dedup_budget, false);
    for (const auto& f : I.stratum(r)) {
        VectorBlock b = orbit_vectors(OrbitSpec::full(f), options.orbit_budget);
        for (std::size_t i = 0; i < b.size(); ++i) set.insert(b.at(i));
    }
    return set.size();
}

namespace {

VerifyLine compare(std::uint64_t weight, int mu, std::string what, std::string oracle,
                   std::optional<BigCount> expected, std::optional<BigCount> observed,
                   std::string skipped_note = {}) {
    VerifyLine l;
    l.weight = weight;
    l.mu = mu;
    l.what = std::move(what);
    l.oracle = std::move(oracle);
    l.expected = std::move(expected);
    l.observed = std::move(observed);
    if (!l.expected || !l.observed) {
        l.compared = false;
        l.match = true;
        l.note = skipped_note.empty() ? "not compared" : skipped_note;
    } else {
        l.match = *l.expected == *l.observed;
    }
    return l;
}

}  // namespace

VerifyReport verify_profile(const DecreasingSet& I, Oracle oracle, const VerifyOptions& options) {
    VerifyReport report;
    WeightProfile p = build_profile(I, options.profile);
    if (p.r < 0) return report;
    const CensusOptions& co = options.profile.type2.census;

    if (oracle == Oracle::Full || oracle == Oracle::Both) {
        WeightDistribution d;
        try {
            d = full_weight_distribution(I, options.cap_K, co.threads);
        } catch (const CapExceeded& ex) {
            for (const auto& e : p.entries)
                report.lines.push_back(compare(e.weight, e.mu, "combined", "full", e.combined(), std::nullopt, ex.what()));
            d.counts.clear();
        }
        if (!d.counts.empty())
        for (const auto& e : p.entries)
            report.lines.push_back(compare(e.weight, e.mu, "combined", "full", e.combined(),
                                           d.count(e.weight),
                                           e.combined() ? "" : "type2 unavailable: " + e.type2.unavailable));
        for (const auto& [w, c] : d.counts) {
            if (w == 0 || w >= 2 * p.w_min) continue;
            bool listed = std::any_of(p.entries.begin(), p.entries.end(),
                                      [&](const ProfileEntry& e) { return e.weight == w; });
            if (listed) continue;
            VerifyLine l = compare(w, 0, "unexpected", "full", BigCount(0), c);
            l.note = "weight outside the ladder";
            report.lines.push_back(l);
        }
    }

    if (oracle == Oracle::Census || oracle == Oracle::Both) {
        const MuRange t1 = mu_range(p.m, p.r);
        for (const auto& e : p.entries) {
            if (e.mu == 1) {
                std::optional<BigCount> obs;
                std::string note;
                try {
                    obs = BigCount(min_weight_census(I, co));
                } catch (const BudgetExceeded& ex) {
                    note = ex.what();
                }
                report.lines.push_back(compare(e.weight, 1, "min-weight", "census", e.type2.value, obs, note));
                continue;
            }
            if (t1.contains(e.mu)) {
                std::optional<BigCount> obs;
                std::string note;
                try {
                    obs = BigCount(type1_census(I, e.mu, co).distinct);
                } catch (const BudgetExceeded& ex) {
                    note = ex.what();
                }
                report.lines.push_back(compare(e.weight, e.mu, "type1", "census", e.type1.value, obs, note));
            }
            if (e.type2.method == Method::Census) {
                Type2Options exact = options.profile.type2;
                exact.mode = Type2Mode::Exact;
                Type2Result t2 = count_type2_census(I, e.mu, exact);
                report.lines.push_back(compare(e.weight, e.mu, "type2", "census", e.type2.value, t2.count,
                                               t2.available() ? e.type2.unavailable : t2.unavailable));
            }
        }
    }
    return report;
}

}  // namespace dmc
