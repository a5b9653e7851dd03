#pragma once

#include <optional>
#include <string>
#include <vector>

#include "dmc/big_count.hpp"
#include "dmc/decreasing_set.hpp"
#include "dmc/lta.hpp"
#include "dmc/monomial.hpp"

namespace dmc {

struct MuRange {
    int lo = 3;
    int hi = 2;
    bool empty() const { return lo > hi; }
    bool contains(int mu) const { return mu >= lo && mu <= hi; }
};

// Type I weights exist for mu in [3, min(r, m - r)].
MuRange mu_range(int m, int r);

// Greedy match of the smallest free indices against ind(h_star) ascending.
std::optional<Monomial> shift_exists(const Monomial& h_star, IndexMask free);
// Reference search over every deg(h_star)-subset of the free indices.
std::optional<Monomial> shift_exists_exhaustive(const Monomial& h_star, IndexMask free);

// Smallest-index divisor of gcd(f,g) of degree deg(f) - mu.
std::optional<Monomial> canonical_h(const Monomial& f, const Monomial& g, int mu);

enum class CaseVariant { A1, A2, B1 };

struct Type1Case {
    CaseVariant variant = CaseVariant::A1;
    int mu = 0;
    Monomial f;
    std::optional<Monomial> g;        // A cases
    Monomial h;
    std::optional<Monomial> h_star;   // A2: gcd/h, B1: f/h
    std::optional<Monomial> witness;  // A2 and B1
    BigCount count;
};

std::string variant_name(CaseVariant v);

enum class B1Variant { Halved, Unhalved };

#ifdef DMC_B1_UNHALVED_DEFAULT
inline constexpr B1Variant kDefaultB1Variant = B1Variant::Unhalved;
#else
inline constexpr B1Variant kDefaultB1Variant = B1Variant::Halved;
#endif

BigCount count_pair_A1(const Monomial& f, const Monomial& g, const Monomial& h);
BigCount count_pair_A2(const Monomial& f, const Monomial& g, const Monomial& h, int mu);
BigCount count_B1(const Monomial& f, const Monomial& h, const DecreasingSet& I, int mu,
                  B1Variant variant = kDefaultB1Variant);

// Verdict for the canonical h. f and g must be maximum-degree members of I.
std::optional<Type1Case> classify_pair(const DecreasingSet& I, const Monomial& f,
                                       const Monomial& g, int mu);
// Every valid split h of the pair, canonical first.
std::vector<Type1Case> valid_pair_splits(const DecreasingSet& I, const Monomial& f,
                                         const Monomial& g, int mu);

// f of degree r outside I.
std::optional<Type1Case> classify_B1(const DecreasingSet& I, const Monomial& f, int mu,
                                     B1Variant variant = kDefaultB1Variant);
std::vector<Type1Case> valid_B1_splits(const DecreasingSet& I, const Monomial& f, int mu,
                                       B1Variant variant = kDefaultB1Variant);

struct Type1Total {
    BigCount total;
    std::vector<Type1Case> ledger;
    // Pairs (or B1 monomials) admitting more than one valid h.
    std::size_t multi_split_groups = 0;
};

Type1Total count_type1_total(const DecreasingSet& I, int mu, B1Variant variant = kDefaultB1Variant);

// Bit set over row positions of the members of I.
class CodeMask {
public:
    explicit CodeMask(const DecreasingSet& I);
    // ANF of v uses only members of I.
    bool contains(const std::uint64_t* v) const;
    int vars() const { return m_; }

private:
    int m_;
    std::vector<std::uint64_t> mask_;
};

struct Type1CensusResult {
    std::uint64_t distinct = 0;      // union over all structures
    std::uint64_t case_sum = 0;      // sum of per-structure distinct counts
    std::uint64_t pair_ops = 0;
};

// Distinct weight-w_mu codewords of C(I) in the structure of one case:
// H·(P + Q), H in the h-orbit, P in LTA_f·(f/h), Q in LTA_g·(g/h) (Q from f for B1).
std::uint64_t case_census(const DecreasingSet& I, const Type1Case& c, const CensusOptions& options = {});

// Every candidate structure, valid or not: all pairs f <= g in I_r and all f outside I of
// degree r, each with every degree r - mu divisor h. Weight-w_mu members of C(I) are
// deduplicated globally. Independent of the classification.
Type1CensusResult type1_census(const DecreasingSet& I, int mu, const CensusOptions& options = {});

// Union size of the weight-w_mu sets of the given cases, and the sum of their sizes.
Type1CensusResult ledger_union_census(const DecreasingSet& I, const std::vector<Type1Case>& cases,
                                      const CensusOptions& options = {});

}  // namespace dmc
