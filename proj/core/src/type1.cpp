#include "dmc/type1.hpp"

#include <algorithm>
#include <bit>
#include <stdexcept>

#include "dmc/error.hpp"
#include "dmc/parallel.hpp"
#include "dmc/vector_set.hpp"

namespace dmc {

namespace {

IndexMask lowest_bits(IndexMask mask, int count) {
    IndexMask out = 0;
    for (int k = 0; k < count && mask; ++k, mask &= mask - 1) out |= mask & (~mask + 1);
    return out;
}

// Every subset of `mask` with `count` bits, in lexicographic order of the index lists.
std::vector<IndexMask> subsets_of_size(IndexMask mask, int count) {
    std::vector<int> idx;
    for (IndexMask r = mask; r; r &= r - 1) idx.push_back(std::countr_zero(r));
    std::vector<IndexMask> out;
    const int n = static_cast<int>(idx.size());
    if (count < 0 || count > n) return out;
    std::vector<int> pick(count);
    for (int k = 0; k < count; ++k) pick[k] = k;
    while (true) {
        IndexMask s = 0;
        for (int p : pick) s |= IndexMask{1} << idx[p];
        out.push_back(s);
        int k = count - 1;
        while (k >= 0 && pick[k] == n - count + k) --k;
        if (k < 0) break;
        ++pick[k];
        for (int t = k + 1; t < count; ++t) pick[t] = pick[t - 1] + 1;
    }
    return out;
}

void require_top(const DecreasingSet& I, const Monomial& f) {
    if (!I.contains(f) || f.degree() != I.r_max())
        throw std::invalid_argument(f.to_string() + " is not a maximum-degree member of the code");
}

}  // namespace

MuRange mu_range(int m, int r) { return MuRange{3, std::min(r, m - r)}; }

std::optional<Monomial> shift_exists(const Monomial& h_star, IndexMask free) {
    const int l = h_star.degree();
    if (std::popcount(free) < l) return std::nullopt;
    IndexMask pick = lowest_bits(free, l);
    IndexMask target = h_star.mask();
    for (IndexMask s = pick, t = target; s; s &= s - 1, t &= t - 1)
        if (std::countr_zero(s) >= std::countr_zero(t)) return std::nullopt;
    return Monomial(h_star.vars(), pick);
}

std::optional<Monomial> shift_exists_exhaustive(const Monomial& h_star, IndexMask free) {
    for (IndexMask s : subsets_of_size(free, h_star.degree())) {
        Monomial cand(h_star.vars(), s);
        if (lt_sh(cand, h_star)) return cand;
    }
    return std::nullopt;
}

std::optional<Monomial> canonical_h(const Monomial& f, const Monomial& g, int mu) {
    Monomial d = gcd(f, g);
    const int need = f.degree() - mu;
    if (need < 0 || d.degree() < need) return std::nullopt;
    return Monomial(f.vars(), lowest_bits(d.mask(), need));
}

std::string variant_name(CaseVariant v) {
    switch (v) {
        case CaseVariant::A1: return "A1";
        case CaseVariant::A2: return "A2";
        case CaseVariant::B1: return "B1";
    }
    return "?";
}

BigCount count_pair_A1(const Monomial& f, const Monomial& g, const Monomial& h) {
    return orbit_size(h) * orbit_size(f, h) * orbit_size(g, h);
}

BigCount count_pair_A2(const Monomial& f, const Monomial& g, const Monomial& h, int mu) {
    if (quotient(f, h).degree() != mu || quotient(g, h).degree() != mu)
        throw std::invalid_argument("A2 count needs deg(f/h) = deg(g/h) = mu");
    BigCount c = orbit_size(h) * orbit_size(f, h) * restricted_pair_size(g, h, f);
    return f == g ? BigCount(c >> 1) : c;
}

BigCount count_B1(const Monomial& f, const Monomial& h, const DecreasingSet& I, int mu,
                  B1Variant variant) {
    if (quotient(f, h).degree() != mu) throw std::invalid_argument("B1 count needs deg(f/h) = mu");
    BigCount c = orbit_size(h) * orbit_size(f, h) * restricted_self_I_size(f, h, I);
    return variant == B1Variant::Halved ? BigCount(c >> 1) : c;
}

std::vector<Type1Case> valid_pair_splits(const DecreasingSet& I, const Monomial& f,
                                         const Monomial& g, int mu) {
    require_top(I, f);
    require_top(I, g);
    std::vector<Type1Case> out;
    const int r = f.degree();
    const int need = r - mu;
    const Monomial d = gcd(f, g);
    if (need < 0 || d.degree() < need) return out;
    if (d.degree() == need) {
        Type1Case c;
        c.variant = CaseVariant::A1;
        c.mu = mu;
        c.f = f;
        c.g = g;
        c.h = d;
        c.count = count_pair_A1(f, g, d);
        out.push_back(c);
        return out;
    }
    const IndexMask free = complement(product(f, g)).mask();
    for (IndexMask hm : subsets_of_size(d.mask(), need)) {
        Monomial h(f.vars(), hm);
        Monomial hs = quotient(d, h);
        auto w = shift_exists(hs, free);
        if (!w) continue;
        Type1Case c;
        c.variant = CaseVariant::A2;
        c.mu = mu;
        c.f = f;
        c.g = g;
        c.h = h;
        c.h_star = hs;
        c.witness = w;
        c.count = count_pair_A2(f, g, h, mu);
        out.push_back(c);
    }
    return out;
}

std::optional<Type1Case> classify_pair(const DecreasingSet& I, const Monomial& f,
                                       const Monomial& g, int mu) {
    require_top(I, f);
    require_top(I, g);
    // Order the pair so that the verdict is symmetric.
    const Monomial& a = std::min(f, g);
    const Monomial& b = std::max(f, g);
    auto h = canonical_h(a, b, mu);
    if (!h) return std::nullopt;
    const Monomial d = gcd(a, b);
    Type1Case c;
    c.mu = mu;
    c.f = a;
    c.g = b;
    c.h = *h;
    if (d == *h) {
        c.variant = CaseVariant::A1;
        c.count = count_pair_A1(a, b, *h);
        return c;
    }
    Monomial hs = quotient(d, *h);
    auto w = shift_exists(hs, complement(product(a, b)).mask());
    if (!w) return std::nullopt;
    c.variant = CaseVariant::A2;
    c.h_star = hs;
    c.witness = w;
    c.count = count_pair_A2(a, b, *h, mu);
    return c;
}

std::vector<Type1Case> valid_B1_splits(const DecreasingSet& I, const Monomial& f, int mu,
                                       B1Variant variant) {
    if (I.contains(f)) throw std::invalid_argument(f.to_string() + " belongs to the code");
    if (f.degree() != I.r_max()) throw std::invalid_argument("B1 needs deg f = r");
    std::vector<Type1Case> out;
    const int need = f.degree() - mu;
    if (need < 0) return out;
    const IndexMask free = complement(f).mask();
    for (IndexMask hm : subsets_of_size(f.mask(), need)) {
        Monomial h(f.vars(), hm);
        if (!I.contains(h)) continue;
        Monomial q = quotient(f, h);
        auto w = shift_exists(q, free);
        if (!w) continue;
        Type1Case c;
        c.variant = CaseVariant::B1;
        c.mu = mu;
        c.f = f;
        c.h = h;
        c.h_star = q;
        c.witness = w;
        c.count = count_B1(f, h, I, mu, variant);
        out.push_back(c);
    }
    return out;
}

std::optional<Type1Case> classify_B1(const DecreasingSet& I, const Monomial& f, int mu,
                                     B1Variant variant) {
    auto all = valid_B1_splits(I, f, mu, variant);
    if (all.empty()) return std::nullopt;
    return all.front();
}

Type1Total count_type1_total(const DecreasingSet& I, int mu, B1Variant variant) {
    Type1Total t;
    const int r = I.r_max();
    if (r < 0 || !mu_range(I.vars(), r).contains(mu)) return t;
    const auto top = I.stratum(r);
    for (std::size_t a = 0; a < top.size(); ++a)
        for (std::size_t b = a; b < top.size(); ++b) {
            auto cases = valid_pair_splits(I, top[a], top[b], mu);
            if (cases.size() > 1) ++t.multi_split_groups;
            for (auto& c : cases) {
                t.total += c.count;
                t.ledger.push_back(std::move(c));
            }
        }
    for (const auto& f : monomials_of_degree(I.vars(), r)) {
        if (I.contains(f)) continue;
        auto cases = valid_B1_splits(I, f, mu, variant);
        if (cases.size() > 1) ++t.multi_split_groups;
        for (auto& c : cases) {
            t.total += c.count;
            t.ledger.push_back(std::move(c));
        }
    }
    return t;
}

CodeMask::CodeMask(const DecreasingSet& I) : m_(I.vars()) {
    mask_.assign(words_for(m_), 0);
    for (const auto& f : I.monomials()) {
        std::uint64_t row = monomial_to_row(f);
        mask_[row >> 6] |= std::uint64_t{1} << (row & 63);
    }
}

bool CodeMask::contains(const std::uint64_t* v) const {
    std::vector<std::uint64_t> tmp(v, v + mask_.size());
    superset_transform(tmp, m_);
    for (std::size_t k = 0; k < tmp.size(); ++k)
        if (tmp[k] & ~mask_[k]) return false;
    return true;
}

namespace {

struct StructureBlocks {
    VectorBlock h;
    VectorBlock p;
    VectorBlock q;
};

void charge(std::uint64_t& used, std::uint64_t extra, std::uint64_t budget) {
    if (extra > budget || used > budget - extra)
        throw BudgetExceeded("pair-operation budget of " + std::to_string(budget) + " exceeded");
    used += extra;
}

// Distinct weight-target elements of H·(P+Q), optionally filtered by code membership.
// New elements are also offered to `global` when given.
std::uint64_t structure_census(const StructureBlocks& s, std::uint64_t target, const CodeMask* code,
                               ShardedVectorSet* global, const CensusOptions& options,
                               std::uint64_t& pair_ops) {
    const std::size_t W = s.p.width;
    const unsigned workers = resolve_threads(options.threads);
    const bool locking = workers > 1;
    ShardedVectorSet local(W, options.dedup_budget, locking);

    auto accept = [&](const std::uint64_t* v) {
        if (popcount_words({v, W}) != target) return;
        if (code && !code->contains(v)) return;
        if (local.insert(v) && global) global->insert(v);
    };

    charge(pair_ops, static_cast<std::uint64_t>(s.p.size()) * s.q.size(), options.pair_budget);
    if (s.h.size() == 1) {
        const std::uint64_t* H = s.h.at(0);
        parallel_for(s.p.size(), workers, [&](std::size_t i, unsigned) {
            std::vector<std::uint64_t> tmp(W);
            const std::uint64_t* a = s.p.at(i);
            for (std::size_t j = 0; j < s.q.size(); ++j) {
                const std::uint64_t* b = s.q.at(j);
                for (std::size_t k = 0; k < W; ++k) tmp[k] = (a[k] ^ b[k]) & H[k];
                accept(tmp.data());
            }
        });
        return local.size();
    }

    ShardedVectorSet sums(W, options.dedup_budget, locking);
    parallel_for(s.p.size(), workers, [&](std::size_t i, unsigned) {
        std::vector<std::uint64_t> tmp(W);
        const std::uint64_t* a = s.p.at(i);
        for (std::size_t j = 0; j < s.q.size(); ++j) {
            const std::uint64_t* b = s.q.at(j);
            for (std::size_t k = 0; k < W; ++k) tmp[k] = a[k] ^ b[k];
            sums.insert(tmp.data());
        }
    });
    VectorBlock flat;
    flat.m = s.p.m;
    flat.width = W;
    flat.data.reserve(sums.size() * W);
    sums.for_each([&](const std::uint64_t* v) { flat.data.insert(flat.data.end(), v, v + W); });
    charge(pair_ops, static_cast<std::uint64_t>(flat.size()) * s.h.size(), options.pair_budget);
    parallel_for(flat.size(), workers, [&](std::size_t i, unsigned) {
        std::vector<std::uint64_t> tmp(W);
        const std::uint64_t* a = flat.at(i);
        for (std::size_t j = 0; j < s.h.size(); ++j) {
            const std::uint64_t* H = s.h.at(j);
            for (std::size_t k = 0; k < W; ++k) tmp[k] = a[k] & H[k];
            accept(tmp.data());
        }
    });
    return local.size();
}

StructureBlocks blocks_for(const Monomial& f, const Monomial& g, const Monomial& h,
                           const CensusOptions& options) {
    StructureBlocks s;
    s.h = orbit_vectors(OrbitSpec::full(h), options.orbit_budget);
    s.p = orbit_vectors(OrbitSpec::full(f, h), options.orbit_budget);
    s.q = f == g ? s.p : orbit_vectors(OrbitSpec::full(g, h), options.orbit_budget);
    return s;
}

}  // namespace

std::uint64_t case_census(const DecreasingSet& I, const Type1Case& c, const CensusOptions& options) {
    const Monomial g = c.g ? *c.g : c.f;
    StructureBlocks s = blocks_for(c.f, g, c.h, options);
    const std::uint64_t target = wmu(I.vars(), c.f.degree(), c.mu);
    std::uint64_t ops = 0;
    if (c.variant == CaseVariant::B1) {
        CodeMask code(I);
        return structure_census(s, target, &code, nullptr, options, ops);
    }
    return structure_census(s, target, nullptr, nullptr, options, ops);
}

Type1CensusResult type1_census(const DecreasingSet& I, int mu, const CensusOptions& options) {
    Type1CensusResult res;
    const int m = I.vars();
    const int r = I.r_max();
    if (r < 0 || mu > r) return res;
    const std::uint64_t target = wmu(m, r, mu);
    const unsigned workers = resolve_threads(options.threads);
    ShardedVectorSet global(words_for(m), options.dedup_budget, workers > 1);
    CodeMask code(I);
    const auto top = I.stratum(r);
    for (std::size_t a = 0; a < top.size(); ++a)
        for (std::size_t b = a; b < top.size(); ++b) {
            const Monomial d = gcd(top[a], top[b]);
            for (IndexMask hm : subsets_of_size(d.mask(), r - mu)) {
                StructureBlocks s = blocks_for(top[a], top[b], Monomial(m, hm), options);
                res.case_sum += structure_census(s, target, &code, &global, options, res.pair_ops);
            }
        }
    for (const auto& f : monomials_of_degree(m, r)) {
        if (I.contains(f)) continue;
        for (IndexMask hm : subsets_of_size(f.mask(), r - mu)) {
            StructureBlocks s = blocks_for(f, f, Monomial(m, hm), options);
            res.case_sum += structure_census(s, target, &code, &global, options, res.pair_ops);
        }
    }
    res.distinct = global.size();
    return res;
}

Type1CensusResult ledger_union_census(const DecreasingSet& I, const std::vector<Type1Case>& cases,
                                      const CensusOptions& options) {
    Type1CensusResult res;
    const int m = I.vars();
    const unsigned workers = resolve_threads(options.threads);
    ShardedVectorSet global(words_for(m), options.dedup_budget, workers > 1);
    CodeMask code(I);
    for (const auto& c : cases) {
        const Monomial g = c.g ? *c.g : c.f;
        StructureBlocks s = blocks_for(c.f, g, c.h, options);
        const std::uint64_t target = wmu(m, c.f.degree(), c.mu);
        const CodeMask* filter = c.variant == CaseVariant::B1 ? &code : nullptr;
        res.case_sum += structure_census(s, target, filter, &global, options, res.pair_ops);
    }
    res.distinct = global.size();
    return res;
}

}  // namespace dmc
