#pragma once

#include <compare>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace dmc {

// Bit i set <=> variable x_i is present.
using IndexMask = std::uint32_t;

inline constexpr int kMaxVars = 32;

// Squarefree monomial over F2[x_0, ..., x_{m-1}].
class Monomial {
public:
    Monomial() = default;
    Monomial(int m, IndexMask mask);

    static Monomial one(int m) { return Monomial(m, 0); }
    static Monomial full(int m);
    static Monomial from_indices(int m, const std::vector<int>& indices);

    // Accepts "1", "x1x3x5" or "1,3,5". Indices must be strictly increasing.
    static Monomial parse(std::string_view text, int m);

    int vars() const { return m_; }
    IndexMask mask() const { return mask_; }
    int degree() const;
    bool contains(int i) const { return i >= 0 && i < m_ && ((mask_ >> i) & 1U); }
    bool is_one() const { return mask_ == 0; }

    // Ascending.
    std::vector<int> indices() const;
    std::string to_string() const;

    friend bool operator==(const Monomial&, const Monomial&) = default;
    friend std::strong_ordering operator<=>(const Monomial& a, const Monomial& b) {
        if (auto c = a.m_ <=> b.m_; c != 0) return c;
        return a.mask_ <=> b.mask_;
    }

private:
    int m_ = 0;
    IndexMask mask_ = 0;
};

IndexMask full_mask(int m);

Monomial gcd(const Monomial& f, const Monomial& g);
Monomial complement(const Monomial& f);
// f | g, the order ⪯_w.
bool divides(const Monomial& f, const Monomial& g);
// Squarefree product, i.e. union of supports.
Monomial product(const Monomial& f, const Monomial& g);
// f / h; requires h | f.
Monomial quotient(const Monomial& f, const Monomial& h);

bool leq_sh(const Monomial& f, const Monomial& g);
bool lt_sh(const Monomial& f, const Monomial& g);
// The order ⪯: f is coordinatewise below the top deg(f) indices of g.
bool leq(const Monomial& f, const Monomial& g);

// J_ctx(i) = { j < i : j not in ind(ctx) }.
IndexMask j_set(const Monomial& context, int i);

struct LambdaProfile {
    Monomial owner;
    // One entry per index of owner, largest index first.
    std::vector<int> entries;
    int total = 0;
};

LambdaProfile lambda(const Monomial& f);

struct LambdaRestriction {
    std::vector<int> entries;  // largest index of h first
    int total = 0;
};

// |J_f(i)| for i in ind(h); h must divide f.
LambdaRestriction lambda_restrict(const Monomial& f, const Monomial& h);

// Sum of |J_ctx(i)| over i in ind(sub); sub need not divide ctx.
int lambda_total(const Monomial& context, const Monomial& sub);

}  // namespace dmc
