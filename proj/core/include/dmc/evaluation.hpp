#pragma once

#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "dmc/big_count.hpp"
#include "dmc/decreasing_set.hpp"
#include "dmc/monomial.hpp"

namespace dmc {

// Largest m for which 2^m-bit vectors are materialized.
inline constexpr int kMaxEvalVars = 26;

inline std::size_t words_for(int m) { return m <= 6 ? 1 : (std::size_t{1} << (m - 6)); }

// Element of R_m in ANF. Terms are monomial masks, sorted, no repeats.
class Polynomial {
public:
    Polynomial() = default;
    explicit Polynomial(int m) : m_(m) {}

    static Polynomial zero(int m) { return Polynomial(m); }
    static Polynomial one(int m);
    static Polynomial from_monomial(const Monomial& f);
    // Repeated masks cancel in pairs.
    static Polynomial from_terms(int m, std::vector<IndexMask> masks);

    int vars() const { return m_; }
    const std::vector<IndexMask>& terms() const { return terms_; }
    std::vector<Monomial> monomials() const;
    bool is_zero() const { return terms_.empty(); }
    // -1 for the zero polynomial.
    int degree() const;
    std::string to_string() const;

    friend Polynomial operator+(const Polynomial& a, const Polynomial& b);
    friend Polynomial operator*(const Polynomial& a, const Polynomial& b);
    friend bool operator==(const Polynomial&, const Polynomial&) = default;

private:
    int m_ = 0;
    std::vector<IndexMask> terms_;
};

// 2^m bits; position k holds P at the point whose binary expansion is 2^m - 1 - k,
// x_j being bit j of that point. Bit k lives in word k / 64 at bit k % 64.
class EvalVector {
public:
    EvalVector() = default;
    explicit EvalVector(int m);

    static EvalVector ones(int m);
    static EvalVector from_words(int m, std::span<const std::uint64_t> words);

    int vars() const { return m_; }
    std::uint64_t length() const { return std::uint64_t{1} << m_; }
    std::size_t word_count() const { return words_.size(); }
    std::span<const std::uint64_t> words() const { return words_; }
    std::span<std::uint64_t> words() { return words_; }

    bool bit(std::uint64_t k) const { return (words_[k >> 6] >> (k & 63)) & 1U; }
    void set(std::uint64_t k, bool v);
    std::uint64_t weight() const;
    // Position 0 first.
    std::string to_bitstring() const;

    EvalVector& operator^=(const EvalVector& o);
    EvalVector& operator&=(const EvalVector& o);
    friend EvalVector operator^(EvalVector a, const EvalVector& b) { return a ^= b; }
    friend EvalVector operator&(EvalVector a, const EvalVector& b) { return a &= b; }
    friend bool operator==(const EvalVector&, const EvalVector&) = default;

private:
    int m_ = 0;
    std::vector<std::uint64_t> words_;
};

// In place: w[k] ^= w[k | bit] for every bit of the position index. An involution;
// maps row-indexed ANF coefficients to evaluations and back.
void superset_transform(std::span<std::uint64_t> words, int m);

EvalVector ev(const Polynomial& p);
EvalVector ev(const Monomial& f);
// Pointwise evaluation, one point at a time.
EvalVector ev_naive(const Polynomial& p);
Polynomial anf(const EvalVector& v);

std::uint64_t weight(const Polynomial& p);
std::uint64_t popcount_words(std::span<const std::uint64_t> words);

// ev(P+Q) and ev(P·Q) computed on the vector side.
EvalVector ev_sum(const EvalVector& a, const EvalVector& b);
EvalVector ev_product(const EvalVector& a, const EvalVector& b);

// One row per member, ordered by row index.
std::vector<EvalVector> generator_matrix(const DecreasingSet& I);

struct WeightDistribution {
    int m = 0;
    std::size_t K = 0;
    std::map<std::uint64_t, BigCount> counts;

    BigCount count(std::uint64_t w) const;
};

inline constexpr std::size_t kDefaultCapK = 28;

// Gray-code walk over all 2^K messages. threads = 0 uses every available core.
WeightDistribution full_weight_distribution(const DecreasingSet& I,
                                            std::size_t cap_K = kDefaultCapK,
                                            unsigned threads = 0);
// Message-by-message evaluation; reference for small K.
WeightDistribution naive_weight_distribution(const DecreasingSet& I);

// 2^{m+1-r} - 2^{m+1-r-mu}.
std::uint64_t wmu(int m, int r, int mu);

}  // namespace dmc
