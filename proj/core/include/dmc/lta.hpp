#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "dmc/big_count.hpp"
#include "dmc/decreasing_set.hpp"
#include "dmc/evaluation.hpp"
#include "dmc/monomial.hpp"

namespace dmc {

// Row i of (B, eps): the linear form x_i + sum_{j in b} x_j + eps.
struct AffineRow {
    int var = 0;
    bool eps = false;
    IndexMask b = 0;
};

// Element of LTA(m,2)_ctx restricted to the rows of the acted-on monomial.
class AffineParams {
public:
    AffineParams() = default;
    // Identity element.
    AffineParams(const Monomial& acted, const Monomial& context);

    // Parameter index layout: eps bits lowest (one per row, ascending), then the b bits of
    // each row in ascending row order, each row's bits ordered by ascending column.
    static AffineParams decode(const Monomial& acted, const Monomial& context, std::uint64_t index);

    const Monomial& acted() const { return acted_; }
    const Monomial& context() const { return context_; }
    const std::vector<AffineRow>& rows() const { return rows_; }
    std::vector<AffineRow>& rows() { return rows_; }
    int parameter_count() const;
    // Throws if some b entry lies outside J_ctx(var).
    void validate() const;

private:
    Monomial acted_;
    Monomial context_;
    std::vector<AffineRow> rows_;
};

Polynomial linear_form(const AffineRow& row, int m);
// prod over i in ind(target) of the row-i linear form; target must divide acted().
Polynomial apply(const AffineParams& params, const Monomial& target);

// Rank of the rows (each at most 64 columns) over F2.
int f2_rank(std::vector<std::uint64_t> rows);

// Incremental elimination over at most 32 columns.
class F2Basis {
public:
    // False when v is zero or already in the span.
    bool insert(IndexMask v);
    int rank() const { return rank_; }

private:
    IndexMask pivots_[32] = {};
    int rank_ = 0;
};

enum class OrbitKind { Full, RankRestrictedPair, RankRestrictedSelf };

// Orbit of f/h under LTA(m,2)_f, optionally rank-restricted.
struct OrbitSpec {
    OrbitKind kind = OrbitKind::Full;
    Monomial f;
    Monomial h;
    Monomial g;                        // RankRestrictedPair only
    const DecreasingSet* I = nullptr;  // RankRestrictedSelf only

    static OrbitSpec full(const Monomial& f);
    static OrbitSpec full(const Monomial& f, const Monomial& h);
    static OrbitSpec restricted_pair(const Monomial& f, const Monomial& h, const Monomial& g);
    static OrbitSpec restricted_self(const Monomial& f, const Monomial& h, const DecreasingSet& I);

    Monomial acted() const { return quotient(f, h); }
    int vars() const { return f.vars(); }
};

inline constexpr std::uint64_t kDefaultOrbitBudget = std::uint64_t{1} << 26;

// 2^{deg(f/h) + |λ_f(f/h)|}; with h = 1 this is |LTA(m,2)_f · f|.
BigCount orbit_size(const Monomial& f, const Monomial& h);
BigCount orbit_size(const Monomial& f);
BigCount restricted_pair_size(const Monomial& f, const Monomial& h, const Monomial& g);
BigCount restricted_self_I_size(const Monomial& f, const Monomial& h, const DecreasingSet& I);
BigCount closed_form_size(const OrbitSpec& spec);

// Visits every admissible parameter assignment in stream order. Returns the number visited.
std::uint64_t for_each_params(const OrbitSpec& spec, const std::function<void(const AffineParams&)>& fn,
                              std::uint64_t budget = kDefaultOrbitBudget);

std::vector<Polynomial> enumerate_orbit(const OrbitSpec& spec,
                                        std::uint64_t budget = kDefaultOrbitBudget);
std::vector<Polynomial> enumerate_restricted_pair(const Monomial& f, const Monomial& h,
                                                  const Monomial& g,
                                                  std::uint64_t budget = kDefaultOrbitBudget);
std::vector<Polynomial> enumerate_restricted_self_I(const Monomial& f, const Monomial& h,
                                                    const DecreasingSet& I,
                                                    std::uint64_t budget = kDefaultOrbitBudget);

// Evaluation vectors stored back to back, `width` words each.
struct VectorBlock {
    int m = 0;
    std::size_t width = 1;
    std::vector<std::uint64_t> data;

    std::size_t size() const { return width ? data.size() / width : 0; }
    const std::uint64_t* at(std::size_t i) const { return data.data() + i * width; }
    EvalVector vector(std::size_t i) const {
        return EvalVector::from_words(m, std::span<const std::uint64_t>(at(i), width));
    }
};

// Same stream as enumerate_orbit, materialized on the evaluation side.
VectorBlock orbit_vectors(const OrbitSpec& spec, std::uint64_t budget = kDefaultOrbitBudget);

// Rows: variables of the acted monomial. Columns: free smaller indices of the context.
std::string young_diagram(const OrbitSpec& spec);

struct CensusOptions {
    std::uint64_t pair_budget = std::uint64_t{1} << 34;
    std::uint64_t dedup_budget = std::uint64_t{1} << 27;
    std::uint64_t orbit_budget = kDefaultOrbitBudget;
    unsigned threads = 0;
};

struct WeightCensus {
    std::map<std::uint64_t, std::uint64_t> counts;  // weight -> distinct elements
    std::uint64_t distinct = 0;
    std::uint64_t pair_ops = 0;

    std::uint64_t count(std::uint64_t w) const {
        auto it = counts.find(w);
        return it == counts.end() ? 0 : it->second;
    }
};

// Distinct H·(P+Q) with P in A, Q in B, H in the h-orbit (or H = 1), keyed by evaluation vector.
WeightCensus minkowski_weight_census(const OrbitSpec& A, const std::optional<OrbitSpec>& B,
                                     const std::optional<OrbitSpec>& h_orbit,
                                     const CensusOptions& options = {});

}  // namespace dmc
