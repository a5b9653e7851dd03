#pragma once

#include <algorithm>
#include <bit>
#include <cstdint>
#include <random>
#include <set>
#include <vector>

#include "dmc/decreasing_set.hpp"
#include "dmc/evaluation.hpp"
#include "dmc/monomial.hpp"

namespace dmc::test {

inline Monomial mono(const char* text, int m) { return Monomial::parse(text, m); }

// f ⪯ g by trying every deg(f)-subset of ind(g) as the dominating divisor.
inline bool brute_leq(const Monomial& f, const Monomial& g) {
    auto fi = f.indices();
    auto gi = g.indices();
    const int d = static_cast<int>(fi.size());
    if (d > static_cast<int>(gi.size())) return false;
    const std::uint32_t n = static_cast<std::uint32_t>(gi.size());
    for (std::uint32_t pick = 0; pick < (1U << n); ++pick) {
        if (std::popcount(pick) != d) continue;
        std::vector<int> sub;
        for (std::uint32_t k = 0; k < n; ++k)
            if (pick >> k & 1U) sub.push_back(gi[k]);
        bool ok = true;
        for (int k = 0; k < d; ++k) ok = ok && fi[k] <= sub[k];
        if (ok) return true;
    }
    return false;
}

// Value of a squarefree monomial mask at a point (bit j of point = x_j).
inline bool eval_at(IndexMask term, std::uint64_t point) { return (point & term) == term; }

// Evaluation vector built point by point from the position convention k <-> 2^m - 1 - k.
inline std::vector<bool> eval_points(const Polynomial& p) {
    const int m = p.vars();
    const std::uint64_t n = std::uint64_t{1} << m;
    std::vector<bool> out(n);
    for (std::uint64_t k = 0; k < n; ++k) {
        std::uint64_t point = n - 1 - k;
        bool v = false;
        for (IndexMask t : p.terms()) v ^= eval_at(t, point);
        out[k] = v;
    }
    return out;
}

// Plain Gaussian elimination over F2.
inline int gauss_rank(std::vector<std::uint64_t> rows) {
    int rank = 0;
    for (int col = 63; col >= 0; --col) {
        auto it = std::find_if(rows.begin() + rank, rows.end(),
                               [&](std::uint64_t r) { return (r >> col) & 1U; });
        if (it == rows.end()) continue;
        std::swap(*it, rows[rank]);
        for (std::size_t k = 0; k < rows.size(); ++k)
            if (k != static_cast<std::size_t>(rank) && ((rows[k] >> col) & 1U)) rows[k] ^= rows[rank];
        ++rank;
    }
    return rank;
}

inline std::size_t distinct(const std::vector<Polynomial>& polys) {
    std::set<std::vector<IndexMask>> seen;
    for (const auto& p : polys) seen.insert(p.terms());
    return seen.size();
}

// Closure of a few random monomials of degree <= r_max, at least one of degree r_max.
inline DecreasingSet random_code(std::mt19937_64& rng, int m, int r_max, int generators) {
    std::vector<Monomial> gens;
    auto top = monomials_of_degree(m, r_max);
    gens.push_back(top[rng() % top.size()]);
    for (int k = 1; k < generators; ++k) {
        int d = static_cast<int>(rng() % static_cast<std::uint64_t>(r_max + 1));
        auto level = monomials_of_degree(m, d);
        gens.push_back(level[rng() % level.size()]);
    }
    return closure(m, gens);
}

inline Monomial random_monomial(std::mt19937_64& rng, int m, int degree) {
    auto level = monomials_of_degree(m, degree);
    return level[rng() % level.size()];
}

}  // namespace dmc::test
