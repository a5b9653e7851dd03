#pragma once

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "dmc/monomial.hpp"

namespace dmc {

// Monomial set closed downward under ⪯. Members are kept sorted by mask.
class DecreasingSet {
public:
    DecreasingSet() = default;

    // Throws NotDecreasing with a witness unless the set is closed.
    static DecreasingSet from_monomials(int m, std::vector<Monomial> monomials);
    // No closure check; is_verified() reports false. For experimentation only.
    static DecreasingSet unchecked(int m, std::vector<Monomial> monomials);

    int vars() const { return m_; }
    std::size_t size() const { return members_.size(); }
    bool empty() const { return members_.empty(); }
    const std::vector<Monomial>& monomials() const { return members_; }
    bool contains(const Monomial& f) const;
    // -1 for the empty set.
    int r_max() const;
    std::vector<Monomial> stratum(int degree) const;
    bool is_verified() const { return verified_; }

    friend bool operator==(const DecreasingSet& a, const DecreasingSet& b) {
        return a.m_ == b.m_ && a.members_ == b.members_;
    }

private:
    DecreasingSet(int m, std::vector<Monomial> members, bool verified);

    int m_ = 0;
    std::vector<Monomial> members_;
    bool verified_ = true;
};

// All monomials of degree d in m variables, by increasing mask order of combinations.
std::vector<Monomial> monomials_of_degree(int m, int d);

// Elementary predecessors of f under ⪯: drop one variable, or move one index down by one.
std::vector<Monomial> immediate_predecessors(const Monomial& f);

DecreasingSet closure(int m, const std::vector<Monomial>& generators);
bool is_decreasing(int m, const std::vector<Monomial>& monomials);
// (missing, present) with missing ⪯ present, or nothing.
std::optional<std::pair<Monomial, Monomial>> find_violation(int m,
                                                            const std::vector<Monomial>& monomials);

DecreasingSet rm_set(int r, int m);
DecreasingSet rmxpolar(int m, const Monomial& f_max);

Monomial row_to_monomial(int m, std::uint64_t row);
std::uint64_t monomial_to_row(const Monomial& f);
DecreasingSet from_rows(int m, const std::vector<std::uint64_t>& rows);
std::vector<std::uint64_t> to_rows(const DecreasingSet& I);

// J_f^I(i) = { j < i : j not in ind(f), x_j f / x_i in I }.
IndexMask j_set_restricted(const Monomial& f, int i, const DecreasingSet& I);

}  // namespace dmc
