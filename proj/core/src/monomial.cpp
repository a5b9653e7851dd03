#include "dmc/monomial.hpp"

#include <bit>
#include <charconv>
#include <stdexcept>

namespace dmc {

namespace {

void check_same(const Monomial& f, const Monomial& g) {
    if (f.vars() != g.vars())
        throw std::invalid_argument("monomials over different variable counts (" +
                                    std::to_string(f.vars()) + " vs " +
                                    std::to_string(g.vars()) + ")");
}

int parse_index(std::string_view s, std::string_view whole) {
    int v = -1;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (s.empty() || ec != std::errc() || ptr != s.data() + s.size())
        throw std::invalid_argument("bad monomial '" + std::string(whole) + "'");
    return v;
}

}  // namespace

IndexMask full_mask(int m) {
    return m >= 32 ? ~IndexMask{0} : ((IndexMask{1} << m) - 1);
}

Monomial::Monomial(int m, IndexMask mask) : m_(m), mask_(mask) {
    if (m < 1 || m > kMaxVars)
        throw std::invalid_argument("variable count must lie in [1, 32], got " + std::to_string(m));
    if ((mask & ~full_mask(m)) != 0)
        throw std::invalid_argument("monomial index outside [0, m-1]");
}

Monomial Monomial::full(int m) { return Monomial(m, full_mask(m)); }

Monomial Monomial::from_indices(int m, const std::vector<int>& indices) {
    IndexMask mask = 0;
    for (int i : indices) {
        if (i < 0 || i >= m)
            throw std::invalid_argument("index " + std::to_string(i) + " outside [0, m-1]");
        if ((mask >> i) & 1U) throw std::invalid_argument("duplicate index " + std::to_string(i));
        mask |= IndexMask{1} << i;
    }
    return Monomial(m, mask);
}

Monomial Monomial::parse(std::string_view text, int m) {
    auto trimmed = text;
    while (!trimmed.empty() && trimmed.front() == ' ') trimmed.remove_prefix(1);
    while (!trimmed.empty() && trimmed.back() == ' ') trimmed.remove_suffix(1);
    if (trimmed.empty()) throw std::invalid_argument("empty monomial");
    if (trimmed == "1") return one(m);

    std::vector<int> idx;
    if (trimmed.front() == 'x') {
        std::size_t pos = 0;
        while (pos < trimmed.size()) {
            if (trimmed[pos] != 'x')
                throw std::invalid_argument("bad monomial '" + std::string(text) + "'");
            std::size_t end = pos + 1;
            while (end < trimmed.size() && trimmed[end] != 'x') ++end;
            idx.push_back(parse_index(trimmed.substr(pos + 1, end - pos - 1), text));
            pos = end;
        }
    } else {
        std::size_t pos = 0;
        while (true) {
            auto comma = trimmed.find(',', pos);
            auto piece = trimmed.substr(pos, comma == std::string_view::npos ? trimmed.npos : comma - pos);
            idx.push_back(parse_index(piece, text));
            if (comma == std::string_view::npos) break;
            pos = comma + 1;
        }
    }
    for (std::size_t k = 1; k < idx.size(); ++k)
        if (idx[k] <= idx[k - 1])
            throw std::invalid_argument("indices must be strictly increasing in '" +
                                        std::string(text) + "'");
    return from_indices(m, idx);
}

int Monomial::degree() const { return std::popcount(mask_); }

std::vector<int> Monomial::indices() const {
    std::vector<int> out;
    out.reserve(degree());
    for (IndexMask rest = mask_; rest; rest &= rest - 1) out.push_back(std::countr_zero(rest));
    return out;
}

std::string Monomial::to_string() const {
    if (mask_ == 0) return "1";
    std::string s;
    for (int i : indices()) s += "x" + std::to_string(i);
    return s;
}

Monomial gcd(const Monomial& f, const Monomial& g) {
    check_same(f, g);
    return Monomial(f.vars(), f.mask() & g.mask());
}

Monomial complement(const Monomial& f) {
    return Monomial(f.vars(), ~f.mask() & full_mask(f.vars()));
}

bool divides(const Monomial& f, const Monomial& g) {
    check_same(f, g);
    return (f.mask() & ~g.mask()) == 0;
}

Monomial product(const Monomial& f, const Monomial& g) {
    check_same(f, g);
    return Monomial(f.vars(), f.mask() | g.mask());
}

Monomial quotient(const Monomial& f, const Monomial& h) {
    if (!divides(h, f))
        throw std::invalid_argument(h.to_string() + " does not divide " + f.to_string());
    return Monomial(f.vars(), f.mask() & ~h.mask());
}

namespace {

// Sorted indices of f compared against the top deg(f) indices of g.
bool aligned_leq(IndexMask f, IndexMask g, bool strict) {
    int df = std::popcount(f), dg = std::popcount(g);
    if (df > dg) return false;
    // drop the smallest dg - df indices of g
    for (int k = 0; k < dg - df; ++k) g &= g - 1;
    while (f) {
        int a = std::countr_zero(f), b = std::countr_zero(g);
        if (strict ? a >= b : a > b) return false;
        f &= f - 1;
        g &= g - 1;
    }
    return true;
}

}  // namespace

bool leq_sh(const Monomial& f, const Monomial& g) {
    check_same(f, g);
    if (f.degree() != g.degree()) throw std::invalid_argument("leq_sh needs equal degrees");
    return aligned_leq(f.mask(), g.mask(), false);
}

bool lt_sh(const Monomial& f, const Monomial& g) {
    check_same(f, g);
    if (f.degree() != g.degree()) throw std::invalid_argument("lt_sh needs equal degrees");
    return aligned_leq(f.mask(), g.mask(), true);
}

bool leq(const Monomial& f, const Monomial& g) {
    check_same(f, g);
    return aligned_leq(f.mask(), g.mask(), false);
}

IndexMask j_set(const Monomial& context, int i) {
    if (i < 0 || i >= context.vars()) throw std::invalid_argument("index outside [0, m-1]");
    IndexMask below = (IndexMask{1} << i) - 1;
    return below & ~context.mask();
}

LambdaProfile lambda(const Monomial& f) {
    LambdaProfile p;
    p.owner = f;
    auto idx = f.indices();
    for (std::size_t k = idx.size(); k-- > 0;) {
        int v = idx[k] - static_cast<int>(k);
        p.entries.push_back(v);
        p.total += v;
    }
    return p;
}

LambdaRestriction lambda_restrict(const Monomial& f, const Monomial& h) {
    if (!divides(h, f))
        throw std::invalid_argument(h.to_string() + " does not divide " + f.to_string());
    LambdaRestriction r;
    auto idx = h.indices();
    for (std::size_t k = idx.size(); k-- > 0;) {
        int v = std::popcount(j_set(f, idx[k]));
        r.entries.push_back(v);
        r.total += v;
    }
    return r;
}

int lambda_total(const Monomial& context, const Monomial& sub) {
    check_same(context, sub);
    int t = 0;
    for (IndexMask rest = sub.mask(); rest; rest &= rest - 1)
        t += std::popcount(j_set(context, std::countr_zero(rest)));
    return t;
}

}  // namespace dmc
