#include "dmc/decreasing_set.hpp"

#include <algorithm>
#include <bit>
#include <deque>
#include <stdexcept>
#include <unordered_set>

#include "dmc/error.hpp"

namespace dmc {

namespace {

void normalize(int m, std::vector<Monomial>& v) {
    for (const auto& f : v)
        if (f.vars() != m)
            throw std::invalid_argument("monomial " + f.to_string() + " has m=" +
                                        std::to_string(f.vars()) + ", expected " +
                                        std::to_string(m));
    std::sort(v.begin(), v.end());
    v.erase(std::unique(v.begin(), v.end()), v.end());
}

// Next mask with the same popcount (Gosper).
std::uint64_t next_combination(std::uint64_t x) {
    std::uint64_t c = x & (~x + 1);
    std::uint64_t r = x + c;
    return (((r ^ x) >> 2) / c) | r;
}

template <class F>
void for_each_degree(int m, int d, F&& fn) {
    if (d < 0 || d > m) return;
    if (d == 0) {
        fn(IndexMask{0});
        return;
    }
    std::uint64_t limit = std::uint64_t{1} << m;
    for (std::uint64_t x = (std::uint64_t{1} << d) - 1; x < limit; x = next_combination(x))
        fn(static_cast<IndexMask>(x));
}

}  // namespace

DecreasingSet::DecreasingSet(int m, std::vector<Monomial> members, bool verified)
    : m_(m), members_(std::move(members)), verified_(verified) {}

DecreasingSet DecreasingSet::from_monomials(int m, std::vector<Monomial> monomials) {
    normalize(m, monomials);
    if (auto bad = find_violation(m, monomials)) throw NotDecreasing(bad->first, bad->second);
    return DecreasingSet(m, std::move(monomials), true);
}

DecreasingSet DecreasingSet::unchecked(int m, std::vector<Monomial> monomials) {
    normalize(m, monomials);
    bool ok = !find_violation(m, monomials).has_value();
    return DecreasingSet(m, std::move(monomials), ok);
}

bool DecreasingSet::contains(const Monomial& f) const {
    return f.vars() == m_ && std::binary_search(members_.begin(), members_.end(), f);
}

int DecreasingSet::r_max() const {
    int r = -1;
    for (const auto& f : members_) r = std::max(r, f.degree());
    return r;
}

std::vector<Monomial> DecreasingSet::stratum(int degree) const {
    std::vector<Monomial> out;
    for (const auto& f : members_)
        if (f.degree() == degree) out.push_back(f);
    return out;
}

std::vector<Monomial> monomials_of_degree(int m, int d) {
    std::vector<Monomial> out;
    for_each_degree(m, d, [&](IndexMask mask) { out.emplace_back(m, mask); });
    return out;
}

std::vector<Monomial> immediate_predecessors(const Monomial& f) {
    std::vector<Monomial> out;
    IndexMask mask = f.mask();
    for (IndexMask rest = mask; rest; rest &= rest - 1) {
        int i = std::countr_zero(rest);
        IndexMask bit = IndexMask{1} << i;
        out.emplace_back(f.vars(), mask & ~bit);
        if (i > 0 && !(mask & (bit >> 1))) out.emplace_back(f.vars(), (mask & ~bit) | (bit >> 1));
    }
    return out;
}

DecreasingSet closure(int m, const std::vector<Monomial>& generators) {
    std::unordered_set<IndexMask> seen;
    std::deque<Monomial> queue;
    for (const auto& g : generators) {
        if (g.vars() != m) throw std::invalid_argument("generator over a different m");
        if (seen.insert(g.mask()).second) queue.push_back(g);
    }
    while (!queue.empty()) {
        Monomial f = queue.front();
        queue.pop_front();
        for (const auto& p : immediate_predecessors(f))
            if (seen.insert(p.mask()).second) queue.push_back(p);
    }
    std::vector<Monomial> members;
    members.reserve(seen.size());
    for (IndexMask mask : seen) members.emplace_back(m, mask);
    return DecreasingSet::from_monomials(m, std::move(members));
}

std::optional<std::pair<Monomial, Monomial>> find_violation(int m,
                                                            const std::vector<Monomial>& monomials) {
    std::unordered_set<IndexMask> present;
    for (const auto& f : monomials) {
        if (f.vars() != m) throw std::invalid_argument("monomial over a different m");
        present.insert(f.mask());
    }
    std::vector<Monomial> sorted(monomials.begin(), monomials.end());
    std::sort(sorted.begin(), sorted.end());
    for (const auto& f : sorted)
        for (const auto& p : immediate_predecessors(f))
            if (!present.count(p.mask())) {
                // walk down to a minimal missing element for a sharper witness
                Monomial miss = p;
                bool moved = true;
                while (moved) {
                    moved = false;
                    for (const auto& q : immediate_predecessors(miss))
                        if (!present.count(q.mask())) {
                            miss = q;
                            moved = true;
                            break;
                        }
                }
                return std::make_pair(miss, f);
            }
    return std::nullopt;
}

bool is_decreasing(int m, const std::vector<Monomial>& monomials) {
    return !find_violation(m, monomials).has_value();
}

DecreasingSet rm_set(int r, int m) {
    if (m < 1 || m > kMaxVars) throw std::invalid_argument("m outside [1, 32]");
    if (r < 0 || r > m) throw std::invalid_argument("rm_set needs 0 <= r <= m");
    std::vector<Monomial> members;
    for (int d = 0; d <= r; ++d)
        for_each_degree(m, d, [&](IndexMask mask) { members.emplace_back(m, mask); });
    return DecreasingSet::from_monomials(m, std::move(members));
}

DecreasingSet rmxpolar(int m, const Monomial& f_max) {
    if (f_max.vars() != m) throw std::invalid_argument("f_max over a different m");
    if (f_max.degree() != 3) throw std::invalid_argument("rmxpolar needs deg(f_max) = 3");
    std::vector<Monomial> members;
    for (int d = 0; d <= 2; ++d)
        for_each_degree(m, d, [&](IndexMask mask) { members.emplace_back(m, mask); });
    for_each_degree(m, 3, [&](IndexMask mask) {
        Monomial g(m, mask);
        if (leq(g, f_max)) members.push_back(g);
    });
    return DecreasingSet::from_monomials(m, std::move(members));
}

Monomial row_to_monomial(int m, std::uint64_t row) {
    if (m < 1 || m > kMaxVars) throw std::invalid_argument("m outside [1, 32]");
    std::uint64_t n = std::uint64_t{1} << m;
    if (row >= n) throw std::invalid_argument("row " + std::to_string(row) + " outside [0, 2^m-1]");
    return Monomial(m, static_cast<IndexMask>((n - 1) - row));
}

std::uint64_t monomial_to_row(const Monomial& f) {
    std::uint64_t n = std::uint64_t{1} << f.vars();
    return (n - 1) - f.mask();
}

DecreasingSet from_rows(int m, const std::vector<std::uint64_t>& rows) {
    std::vector<Monomial> members;
    members.reserve(rows.size());
    for (auto row : rows) members.push_back(row_to_monomial(m, row));
    return DecreasingSet::from_monomials(m, std::move(members));
}

std::vector<std::uint64_t> to_rows(const DecreasingSet& I) {
    std::vector<std::uint64_t> rows;
    for (const auto& f : I.monomials()) rows.push_back(monomial_to_row(f));
    std::sort(rows.begin(), rows.end());
    return rows;
}

IndexMask j_set_restricted(const Monomial& f, int i, const DecreasingSet& I) {
    if (!f.contains(i))
        throw std::invalid_argument("x" + std::to_string(i) + " does not divide " + f.to_string());
    IndexMask out = 0;
    IndexMask base = f.mask() & ~(IndexMask{1} << i);
    for (IndexMask rest = j_set(f, i); rest; rest &= rest - 1) {
        int j = std::countr_zero(rest);
        if (I.contains(Monomial(f.vars(), base | (IndexMask{1} << j)))) out |= IndexMask{1} << j;
    }
    return out;
}

}  // namespace dmc
