#include "dmc/evaluation.hpp"

#include <algorithm>
#include <bit>
#include <stdexcept>

#include "dmc/error.hpp"
#include "dmc/parallel.hpp"

namespace dmc {

namespace {

void check_eval_vars(int m) {
    if (m < 1 || m > kMaxEvalVars)
        throw std::invalid_argument("evaluation vectors need 1 <= m <= " +
                                    std::to_string(kMaxEvalVars) + ", got " + std::to_string(m));
}

std::uint64_t tail_mask(int m) {
    return m >= 6 ? ~std::uint64_t{0} : ((std::uint64_t{1} << (1U << m)) - 1);
}

constexpr std::uint64_t kLowHalf[6] = {
    0x5555555555555555ULL, 0x3333333333333333ULL, 0x0F0F0F0F0F0F0F0FULL,
    0x00FF00FF00FF00FFULL, 0x0000FFFF0000FFFFULL, 0x00000000FFFFFFFFULL,
};

}  // namespace

Polynomial Polynomial::one(int m) { return from_monomial(Monomial::one(m)); }

Polynomial Polynomial::from_monomial(const Monomial& f) {
    Polynomial p(f.vars());
    p.terms_.push_back(f.mask());
    return p;
}

Polynomial Polynomial::from_terms(int m, std::vector<IndexMask> masks) {
    for (auto t : masks)
        if (t & ~full_mask(m)) throw std::invalid_argument("term outside [0, m-1]");
    std::sort(masks.begin(), masks.end());
    Polynomial p(m);
    for (std::size_t k = 0; k < masks.size();) {
        std::size_t e = k;
        while (e < masks.size() && masks[e] == masks[k]) ++e;
        if ((e - k) & 1U) p.terms_.push_back(masks[k]);
        k = e;
    }
    return p;
}

std::vector<Monomial> Polynomial::monomials() const {
    std::vector<Monomial> out;
    for (auto t : terms_) out.emplace_back(m_, t);
    return out;
}

int Polynomial::degree() const {
    int d = -1;
    for (auto t : terms_) d = std::max(d, std::popcount(t));
    return d;
}

std::string Polynomial::to_string() const {
    if (terms_.empty()) return "0";
    std::string s;
    for (auto t : terms_) {
        if (!s.empty()) s += " + ";
        s += Monomial(m_, t).to_string();
    }
    return s;
}

Polynomial operator+(const Polynomial& a, const Polynomial& b) {
    if (a.m_ != b.m_) throw std::invalid_argument("polynomials over different m");
    Polynomial out(a.m_);
    std::set_symmetric_difference(a.terms_.begin(), a.terms_.end(), b.terms_.begin(),
                                  b.terms_.end(), std::back_inserter(out.terms_));
    return out;
}

Polynomial operator*(const Polynomial& a, const Polynomial& b) {
    if (a.m_ != b.m_) throw std::invalid_argument("polynomials over different m");
    std::vector<IndexMask> raw;
    raw.reserve(a.terms_.size() * b.terms_.size());
    for (auto s : a.terms_)
        for (auto t : b.terms_) raw.push_back(s | t);
    return Polynomial::from_terms(a.m_, std::move(raw));
}

EvalVector::EvalVector(int m) : m_(m) {
    check_eval_vars(m);
    words_.assign(words_for(m), 0);
}

EvalVector EvalVector::ones(int m) {
    EvalVector v(m);
    std::fill(v.words_.begin(), v.words_.end(), tail_mask(m));
    return v;
}

EvalVector EvalVector::from_words(int m, std::span<const std::uint64_t> words) {
    EvalVector v(m);
    if (words.size() != v.words_.size()) throw std::invalid_argument("word count mismatch");
    std::copy(words.begin(), words.end(), v.words_.begin());
    v.words_.back() &= tail_mask(m);
    return v;
}

void EvalVector::set(std::uint64_t k, bool value) {
    if (k >= length()) throw std::out_of_range("position outside the vector");
    std::uint64_t bit = std::uint64_t{1} << (k & 63);
    if (value)
        words_[k >> 6] |= bit;
    else
        words_[k >> 6] &= ~bit;
}

std::uint64_t EvalVector::weight() const { return popcount_words(words_); }

std::string EvalVector::to_bitstring() const {
    std::string s;
    s.reserve(length());
    for (std::uint64_t k = 0; k < length(); ++k) s += bit(k) ? '1' : '0';
    return s;
}

EvalVector& EvalVector::operator^=(const EvalVector& o) {
    if (m_ != o.m_) throw std::invalid_argument("vectors over different m");
    for (std::size_t i = 0; i < words_.size(); ++i) words_[i] ^= o.words_[i];
    return *this;
}

EvalVector& EvalVector::operator&=(const EvalVector& o) {
    if (m_ != o.m_) throw std::invalid_argument("vectors over different m");
    for (std::size_t i = 0; i < words_.size(); ++i) words_[i] &= o.words_[i];
    return *this;
}

void superset_transform(std::span<std::uint64_t> words, int m) {
    for (int b = 0; b < m; ++b) {
        if (b < 6) {
            const unsigned s = 1U << b;
            const std::uint64_t keep = kLowHalf[b];
            for (auto& w : words) w ^= (w >> s) & keep;
        } else {
            const std::size_t stride = std::size_t{1} << (b - 6);
            for (std::size_t base = 0; base < words.size(); base += 2 * stride)
                for (std::size_t i = base; i < base + stride; ++i) words[i] ^= words[i + stride];
        }
    }
}

EvalVector ev(const Polynomial& p) {
    const int m = p.vars();
    EvalVector v(m);
    const std::uint64_t top = (std::uint64_t{1} << m) - 1;
    for (auto t : p.terms()) {
        std::uint64_t row = top - t;
        v.words()[row >> 6] ^= std::uint64_t{1} << (row & 63);
    }
    superset_transform(v.words(), m);
    return v;
}

EvalVector ev(const Monomial& f) { return ev(Polynomial::from_monomial(f)); }

EvalVector ev_naive(const Polynomial& p) {
    const int m = p.vars();
    EvalVector v(m);
    const std::uint64_t top = (std::uint64_t{1} << m) - 1;
    for (std::uint64_t k = 0; k <= top; ++k) {
        std::uint64_t point = top - k;
        bool value = false;
        for (auto t : p.terms())
            if ((t & point) == t) value = !value;
        v.set(k, value);
    }
    return v;
}

Polynomial anf(const EvalVector& v) {
    const int m = v.vars();
    std::vector<std::uint64_t> w(v.words().begin(), v.words().end());
    superset_transform(w, m);
    const std::uint64_t top = (std::uint64_t{1} << m) - 1;
    std::vector<IndexMask> terms;
    for (std::size_t i = 0; i < w.size(); ++i)
        for (std::uint64_t rest = w[i]; rest; rest &= rest - 1) {
            std::uint64_t row = i * 64 + std::countr_zero(rest);
            terms.push_back(static_cast<IndexMask>(top - row));
        }
    return Polynomial::from_terms(m, std::move(terms));
}

std::uint64_t popcount_words(std::span<const std::uint64_t> words) {
    std::uint64_t c = 0;
    for (auto w : words) c += std::popcount(w);
    return c;
}

std::uint64_t weight(const Polynomial& p) { return ev(p).weight(); }

EvalVector ev_sum(const EvalVector& a, const EvalVector& b) { return a ^ b; }
EvalVector ev_product(const EvalVector& a, const EvalVector& b) { return a & b; }

std::vector<EvalVector> generator_matrix(const DecreasingSet& I) {
    std::vector<Monomial> order = I.monomials();
    std::sort(order.begin(), order.end(), [](const Monomial& a, const Monomial& b) {
        return monomial_to_row(a) < monomial_to_row(b);
    });
    std::vector<EvalVector> rows;
    rows.reserve(order.size());
    for (const auto& f : order) rows.push_back(ev(f));
    return rows;
}

BigCount WeightDistribution::count(std::uint64_t w) const {
    auto it = counts.find(w);
    return it == counts.end() ? BigCount(0) : it->second;
}

namespace {

void gray_walk_single(const std::vector<std::uint64_t>& rows, std::size_t low, std::uint64_t start,
                      std::vector<std::uint64_t>& hist) {
    std::uint64_t cur = start;
    ++hist[std::popcount(cur)];
    const std::uint64_t steps = std::uint64_t{1} << low;
    for (std::uint64_t i = 1; i < steps; ++i) {
        cur ^= rows[std::countr_zero(i)];
        ++hist[std::popcount(cur)];
    }
}

void gray_walk_multi(const std::vector<std::uint64_t>& rows, std::size_t W, std::size_t low,
                     std::vector<std::uint64_t> cur, std::vector<std::uint64_t>& hist) {
    ++hist[popcount_words(cur)];
    const std::uint64_t steps = std::uint64_t{1} << low;
    for (std::uint64_t i = 1; i < steps; ++i) {
        const std::uint64_t* r = rows.data() + W * std::countr_zero(i);
        std::uint64_t c = 0;
        for (std::size_t k = 0; k < W; ++k) {
            cur[k] ^= r[k];
            c += std::popcount(cur[k]);
        }
        ++hist[c];
    }
}

}  // namespace

WeightDistribution full_weight_distribution(const DecreasingSet& I, std::size_t cap_K,
                                            unsigned threads) {
    const int m = I.vars();
    check_eval_vars(m);
    const std::size_t K = I.size();
    if (K > cap_K)
        throw CapExceeded("full enumeration needs K <= " + std::to_string(cap_K) + ", got K = " +
                          std::to_string(K));
    if (K > 62) throw CapExceeded("K above 62 cannot be enumerated");
    const std::size_t W = words_for(m);
    std::vector<std::uint64_t> rows;
    rows.reserve(K * W);
    for (const auto& r : generator_matrix(I)) rows.insert(rows.end(), r.words().begin(), r.words().end());

    const unsigned workers = resolve_threads(threads);
    std::size_t prefix = 0;
    while (prefix < K && prefix < 12 && (std::size_t{1} << prefix) < 8 * std::size_t{workers}) ++prefix;
    if (K - prefix < 10) prefix = K > 10 ? K - 10 : 0;
    if (workers == 1) prefix = 0;
    const std::size_t low = K - prefix;
    const std::uint64_t N = std::uint64_t{1} << m;

    std::vector<std::vector<std::uint64_t>> hists(workers, std::vector<std::uint64_t>(N + 1, 0));
    parallel_for(std::size_t{1} << prefix, workers, [&](std::size_t task, unsigned worker) {
        std::vector<std::uint64_t> start(W, 0);
        for (std::size_t b = 0; b < prefix; ++b)
            if ((task >> b) & 1U)
                for (std::size_t k = 0; k < W; ++k) start[k] ^= rows[(low + b) * W + k];
        if (W == 1)
            gray_walk_single(rows, low, start[0], hists[worker]);
        else
            gray_walk_multi(rows, W, low, std::move(start), hists[worker]);
    });

    WeightDistribution d;
    d.m = m;
    d.K = K;
    for (std::uint64_t w = 0; w <= N; ++w) {
        std::uint64_t total = 0;
        for (const auto& h : hists) total += h[w];
        if (total) d.counts[w] = total;
    }
    return d;
}

WeightDistribution naive_weight_distribution(const DecreasingSet& I) {
    const int m = I.vars();
    const auto& members = I.monomials();
    const std::size_t K = members.size();
    if (K > 24) throw CapExceeded("naive enumeration is limited to K <= 24");
    WeightDistribution d;
    d.m = m;
    d.K = K;
    for (std::uint64_t msg = 0; msg < (std::uint64_t{1} << K); ++msg) {
        std::vector<IndexMask> terms;
        for (std::size_t k = 0; k < K; ++k)
            if ((msg >> k) & 1U) terms.push_back(members[k].mask());
        d.counts[ev_naive(Polynomial::from_terms(m, terms)).weight()] += 1;
    }
    return d;
}

std::uint64_t wmu(int m, int r, int mu) {
    if (mu < 1) throw std::invalid_argument("mu must be at least 1");
    int hi = m + 1 - r, lo = m + 1 - r - mu;
    if (lo < 0 || hi > 63) throw std::invalid_argument("w_mu outside the representable ladder");
    return (std::uint64_t{1} << hi) - (std::uint64_t{1} << lo);
}

}  // namespace dmc
