#include "dmc/lta.hpp"

#include <algorithm>
#include <bit>
#include <sstream>
#include <stdexcept>

#include "dmc/error.hpp"
#include "dmc/parallel.hpp"
#include "dmc/vector_set.hpp"

namespace dmc {

namespace {

IndexMask deposit(std::uint64_t code, IndexMask allowed) {
    IndexMask out = 0;
    for (int k = 0; allowed; ++k, allowed &= allowed - 1)
        if ((code >> k) & 1U) out |= allowed & (~allowed + 1);
    return out;
}

struct RowPlan {
    int var = 0;
    IndexMask allowed = 0;
    bool constrained = false;
};

struct Plan {
    int m = 0;
    Monomial acted;
    Monomial context;
    std::vector<RowPlan> rows;
    IndexMask rank_columns = 0;
};

Plan make_plan(const OrbitSpec& spec) {
    if (!divides(spec.h, spec.f))
        throw std::invalid_argument(spec.h.to_string() + " does not divide " + spec.f.to_string());
    Plan p;
    p.m = spec.vars();
    p.acted = spec.acted();
    p.context = spec.f;
    switch (spec.kind) {
        case OrbitKind::Full:
            for (int i : p.acted.indices()) p.rows.push_back({i, j_set(spec.f, i), false});
            break;
        case OrbitKind::RankRestrictedPair: {
            Monomial hs = gcd(p.acted, spec.g);
            Monomial fg = product(spec.f, spec.g);
            auto hidx = hs.indices();
            if (!hidx.empty()) p.rank_columns = j_set(fg, hidx.back());
            for (int i : p.acted.indices()) p.rows.push_back({i, j_set(spec.f, i), hs.contains(i)});
            break;
        }
        case OrbitKind::RankRestrictedSelf: {
            if (!spec.I) throw std::invalid_argument("restricted self orbit needs a code");
            for (int i : p.acted.indices()) {
                IndexMask a = j_set_restricted(spec.f, i, *spec.I);
                p.rows.push_back({i, a, true});
                p.rank_columns |= a;
            }
            break;
        }
    }
    return p;
}

// Depth-first over rows from the highest down; eps patterns are left to the visitor.
// This yields parameter indices in ascending order, with rank-violating branches cut early.
template <class Visitor>
class Walker {
public:
    Walker(const Plan& plan, Visitor& visitor) : plan_(plan), visitor_(visitor) {
        b_.assign(plan.rows.size(), 0);
    }
    void run() { go(static_cast<int>(plan_.rows.size()) - 1, F2Basis{}); }

private:
    void go(int pos, const F2Basis& basis) {
        if (pos < 0) {
            visitor_.leaf(b_);
            return;
        }
        const RowPlan& rp = plan_.rows[pos];
        const std::uint64_t n = std::uint64_t{1} << std::popcount(rp.allowed);
        for (std::uint64_t c = 0; c < n; ++c) {
            IndexMask bm = deposit(c, rp.allowed);
            b_[pos] = bm;
            if (rp.constrained) {
                F2Basis next = basis;
                if (!next.insert(bm & plan_.rank_columns)) continue;
                visitor_.row(pos, bm);
                go(pos - 1, next);
            } else {
                visitor_.row(pos, bm);
                go(pos - 1, basis);
            }
        }
    }

    const Plan& plan_;
    Visitor& visitor_;
    std::vector<IndexMask> b_;
};

void check_budget(const OrbitSpec& spec, std::uint64_t budget) {
    BigCount size = closed_form_size(spec);
    if (size > budget)
        throw BudgetExceeded("orbit of size " + size.str() + " exceeds the enumeration budget of " +
                             std::to_string(budget));
}

struct ParamsVisitor {
    const Plan& plan;
    const std::function<void(const AffineParams&)>& fn;
    std::uint64_t visited = 0;

    void row(int, IndexMask) {}
    void leaf(const std::vector<IndexMask>& b) {
        const std::size_t d = plan.rows.size();
        AffineParams params(plan.acted, plan.context);
        for (std::size_t k = 0; k < d; ++k) params.rows()[k].b = b[k];
        for (std::uint64_t eps = 0; eps < (std::uint64_t{1} << d); ++eps) {
            for (std::size_t k = 0; k < d; ++k) params.rows()[k].eps = (eps >> k) & 1U;
            fn(params);
            ++visited;
        }
    }
};

struct VectorVisitor {
    const Plan& plan;
    std::size_t width;
    std::vector<std::uint64_t> vars;  // ev(x_j), width words each
    std::vector<std::uint64_t> base;  // current row forms without eps
    std::uint64_t ones;
    VectorBlock& out;

    VectorVisitor(const Plan& p, VectorBlock& block) : plan(p), width(words_for(p.m)), out(block) {
        ones = EvalVector::ones(p.m).words()[0];
        for (int j = 0; j < p.m; ++j) {
            EvalVector v = ev(Monomial(p.m, IndexMask{1} << j));
            vars.insert(vars.end(), v.words().begin(), v.words().end());
        }
        base.assign(plan.rows.size() * width, 0);
    }

    void row(int pos, IndexMask b) {
        std::uint64_t* dst = base.data() + pos * width;
        const std::uint64_t* x = vars.data() + plan.rows[pos].var * width;
        std::copy(x, x + width, dst);
        for (IndexMask rest = b; rest; rest &= rest - 1) {
            const std::uint64_t* y = vars.data() + std::countr_zero(rest) * width;
            for (std::size_t k = 0; k < width; ++k) dst[k] ^= y[k];
        }
    }

    void leaf(const std::vector<IndexMask>&) {
        const std::size_t d = plan.rows.size();
        for (std::uint64_t eps = 0; eps < (std::uint64_t{1} << d); ++eps) {
            std::size_t at = out.data.size();
            out.data.resize(at + width, 0);
            std::uint64_t* dst = out.data.data() + at;
            for (std::size_t k = 0; k < width; ++k) dst[k] = ones;
            for (std::size_t r = 0; r < d; ++r) {
                const std::uint64_t flip = ((eps >> r) & 1U) ? ones : 0;
                const std::uint64_t* src = base.data() + r * width;
                for (std::size_t k = 0; k < width; ++k) dst[k] &= src[k] ^ flip;
            }
        }
    }
};

}  // namespace

AffineParams::AffineParams(const Monomial& acted, const Monomial& context)
    : acted_(acted), context_(context) {
    if (!divides(acted, context))
        throw std::invalid_argument(acted.to_string() + " does not divide " + context.to_string());
    for (int i : acted.indices()) rows_.push_back({i, false, 0});
}

AffineParams AffineParams::decode(const Monomial& acted, const Monomial& context,
                                  std::uint64_t index) {
    AffineParams p(acted, context);
    const std::size_t d = p.rows_.size();
    for (std::size_t k = 0; k < d; ++k) p.rows_[k].eps = (index >> k) & 1U;
    index >>= d;
    for (auto& row : p.rows_) {
        IndexMask allowed = j_set(context, row.var);
        int bits = std::popcount(allowed);
        row.b = deposit(index & ((std::uint64_t{1} << bits) - 1), allowed);
        index >>= bits;
    }
    return p;
}

int AffineParams::parameter_count() const {
    int n = 0;
    for (const auto& row : rows_) n += 1 + std::popcount(j_set(context_, row.var));
    return n;
}

void AffineParams::validate() const {
    for (const auto& row : rows_)
        if (row.b & ~j_set(context_, row.var))
            throw std::invalid_argument("b entry outside J_ctx for row x" + std::to_string(row.var));
}

Polynomial linear_form(const AffineRow& row, int m) {
    std::vector<IndexMask> terms{IndexMask{1} << row.var};
    for (IndexMask rest = row.b; rest; rest &= rest - 1) terms.push_back(rest & (~rest + 1));
    if (row.eps) terms.push_back(0);
    return Polynomial::from_terms(m, std::move(terms));
}

Polynomial apply(const AffineParams& params, const Monomial& target) {
    if (!divides(target, params.acted()))
        throw std::invalid_argument(target.to_string() + " does not divide " +
                                    params.acted().to_string());
    const int m = target.vars();
    Polynomial out = Polynomial::one(m);
    for (const auto& row : params.rows())
        if (target.contains(row.var)) out = out * linear_form(row, m);
    return out;
}

int f2_rank(std::vector<std::uint64_t> rows) {
    int rank = 0;
    for (int col = 63; col >= 0; --col) {
        const std::uint64_t bit = std::uint64_t{1} << col;
        auto pivot = std::find_if(rows.begin() + rank, rows.end(),
                                  [&](std::uint64_t r) { return r & bit; });
        if (pivot == rows.end()) continue;
        std::iter_swap(rows.begin() + rank, pivot);
        for (std::size_t k = 0; k < rows.size(); ++k)
            if (k != static_cast<std::size_t>(rank) && (rows[k] & bit)) rows[k] ^= rows[rank];
        ++rank;
    }
    return rank;
}

bool F2Basis::insert(IndexMask v) {
    while (v) {
        int top = 31 - std::countl_zero(v);
        if (!pivots_[top]) {
            pivots_[top] = v;
            ++rank_;
            return true;
        }
        v ^= pivots_[top];
    }
    return false;
}

OrbitSpec OrbitSpec::full(const Monomial& f) { return full(f, Monomial::one(f.vars())); }

OrbitSpec OrbitSpec::full(const Monomial& f, const Monomial& h) {
    OrbitSpec s;
    s.kind = OrbitKind::Full;
    s.f = f;
    s.h = h;
    s.g = Monomial::one(f.vars());
    return s;
}

OrbitSpec OrbitSpec::restricted_pair(const Monomial& f, const Monomial& h, const Monomial& g) {
    OrbitSpec s = full(f, h);
    if (g.vars() != f.vars()) throw std::invalid_argument("g over a different m");
    s.kind = OrbitKind::RankRestrictedPair;
    s.g = g;
    return s;
}

OrbitSpec OrbitSpec::restricted_self(const Monomial& f, const Monomial& h, const DecreasingSet& I) {
    OrbitSpec s = full(f, h);
    if (I.vars() != f.vars()) throw std::invalid_argument("code over a different m");
    s.kind = OrbitKind::RankRestrictedSelf;
    s.I = &I;
    return s;
}

namespace {

// prod_j (2^{sizes[j]} - 2^{j}), zero as soon as a factor is not positive.
BigCount staircase_product(const std::vector<int>& sizes) {
    BigCount prod = 1;
    for (std::size_t j = 0; j < sizes.size(); ++j) {
        if (sizes[j] <= static_cast<int>(j)) return 0;
        prod *= pow2(sizes[j]) - pow2(static_cast<int>(j));
    }
    return prod;
}

}  // namespace

BigCount orbit_size(const Monomial& f, const Monomial& h) {
    Monomial q = quotient(f, h);
    return pow2(q.degree() + lambda_total(f, q));
}

BigCount orbit_size(const Monomial& f) { return orbit_size(f, Monomial::one(f.vars())); }

BigCount restricted_pair_size(const Monomial& f, const Monomial& h, const Monomial& g) {
    Monomial q = quotient(f, h);
    Monomial hs = gcd(q, g);
    Monomial fg = product(f, g);
    std::vector<int> sizes;
    for (int i : hs.indices()) sizes.push_back(std::popcount(j_set(fg, i)));
    BigCount prod = staircase_product(sizes);
    if (prod == 0) return 0;
    return (pow2(q.degree() + lambda_total(f, q)) >> lambda_total(fg, hs)) * prod;
}

BigCount restricted_self_I_size(const Monomial& f, const Monomial& h, const DecreasingSet& I) {
    Monomial q = quotient(f, h);
    std::vector<int> sizes;
    for (int i : q.indices()) sizes.push_back(std::popcount(j_set_restricted(f, i, I)));
    return pow2(q.degree()) * staircase_product(sizes);
}

BigCount closed_form_size(const OrbitSpec& spec) {
    switch (spec.kind) {
        case OrbitKind::Full: return orbit_size(spec.f, spec.h);
        case OrbitKind::RankRestrictedPair: return restricted_pair_size(spec.f, spec.h, spec.g);
        case OrbitKind::RankRestrictedSelf:
            if (!spec.I) throw std::invalid_argument("restricted self orbit needs a code");
            return restricted_self_I_size(spec.f, spec.h, *spec.I);
    }
    return 0;
}

std::uint64_t for_each_params(const OrbitSpec& spec,
                              const std::function<void(const AffineParams&)>& fn,
                              std::uint64_t budget) {
    check_budget(spec, budget);
    Plan plan = make_plan(spec);
    ParamsVisitor visitor{plan, fn};
    Walker<ParamsVisitor>(plan, visitor).run();
    return visitor.visited;
}

std::vector<Polynomial> enumerate_orbit(const OrbitSpec& spec, std::uint64_t budget) {
    std::vector<Polynomial> out;
    const Monomial acted = spec.acted();
    for_each_params(spec, [&](const AffineParams& p) { out.push_back(apply(p, acted)); }, budget);
    return out;
}

std::vector<Polynomial> enumerate_restricted_pair(const Monomial& f, const Monomial& h,
                                                  const Monomial& g, std::uint64_t budget) {
    return enumerate_orbit(OrbitSpec::restricted_pair(f, h, g), budget);
}

std::vector<Polynomial> enumerate_restricted_self_I(const Monomial& f, const Monomial& h,
                                                    const DecreasingSet& I, std::uint64_t budget) {
    return enumerate_orbit(OrbitSpec::restricted_self(f, h, I), budget);
}

VectorBlock orbit_vectors(const OrbitSpec& spec, std::uint64_t budget) {
    check_budget(spec, budget);
    Plan plan = make_plan(spec);
    VectorBlock block;
    block.m = plan.m;
    block.width = words_for(plan.m);
    block.data.reserve(static_cast<std::size_t>(closed_form_size(spec)) * block.width);
    VectorVisitor visitor(plan, block);
    Walker<VectorVisitor>(plan, visitor).run();
    return block;
}

namespace {

VectorBlock flatten(const ShardedVectorSet& set, int m) {
    VectorBlock block;
    block.m = m;
    block.width = set.width();
    block.data.reserve(set.size() * set.width());
    set.for_each([&](const std::uint64_t* v) { block.data.insert(block.data.end(), v, v + set.width()); });
    return block;
}

void charge(std::uint64_t& used, std::uint64_t extra, std::uint64_t budget) {
    if (extra > budget || used > budget - extra)
        throw BudgetExceeded("pair-operation budget of " + std::to_string(budget) + " exceeded");
    used += extra;
}

}  // namespace

WeightCensus minkowski_weight_census(const OrbitSpec& A, const std::optional<OrbitSpec>& B,
                                     const std::optional<OrbitSpec>& h_orbit,
                                     const CensusOptions& options) {
    const int m = A.vars();
    const std::size_t W = words_for(m);
    const unsigned workers = resolve_threads(options.threads);
    const bool locking = workers > 1;
    WeightCensus census;

    VectorBlock a = orbit_vectors(A, options.orbit_budget);
    ShardedVectorSet sums(W, options.dedup_budget, locking);
    if (B) {
        VectorBlock b = orbit_vectors(*B, options.orbit_budget);
        charge(census.pair_ops, static_cast<std::uint64_t>(a.size()) * b.size(), options.pair_budget);
        parallel_for(a.size(), workers, [&](std::size_t i, unsigned) {
            std::vector<std::uint64_t> tmp(W);
            const std::uint64_t* p = a.at(i);
            for (std::size_t j = 0; j < b.size(); ++j) {
                const std::uint64_t* q = b.at(j);
                for (std::size_t k = 0; k < W; ++k) tmp[k] = p[k] ^ q[k];
                sums.insert(tmp.data());
            }
        });
    } else {
        charge(census.pair_ops, a.size(), options.pair_budget);
        for (std::size_t i = 0; i < a.size(); ++i) sums.insert(a.at(i));
    }

    if (!h_orbit) {
        sums.for_each([&](const std::uint64_t* v) { ++census.counts[popcount_words({v, W})]; });
        census.distinct = sums.size();
        return census;
    }

    VectorBlock hs = orbit_vectors(*h_orbit, options.orbit_budget);
    VectorBlock s = flatten(sums, m);
    charge(census.pair_ops, static_cast<std::uint64_t>(s.size()) * hs.size(), options.pair_budget);
    ShardedVectorSet products(W, options.dedup_budget, locking);
    std::vector<std::map<std::uint64_t, std::uint64_t>> local(workers);
    parallel_for(s.size(), workers, [&](std::size_t i, unsigned worker) {
        std::vector<std::uint64_t> tmp(W);
        const std::uint64_t* p = s.at(i);
        for (std::size_t j = 0; j < hs.size(); ++j) {
            const std::uint64_t* q = hs.at(j);
            for (std::size_t k = 0; k < W; ++k) tmp[k] = p[k] & q[k];
            if (products.insert(tmp.data())) ++local[worker][popcount_words(tmp)];
        }
    });
    for (const auto& l : local)
        for (const auto& [w, c] : l) census.counts[w] += c;
    census.distinct = products.size();
    return census;
}

std::string young_diagram(const OrbitSpec& spec) {
    Plan plan = make_plan(spec);
    IndexMask cols = 0;
    for (const auto& rp : plan.rows) cols |= j_set(plan.context, rp.var);
    std::vector<int> columns;
    for (IndexMask rest = cols; rest; rest &= rest - 1) columns.push_back(std::countr_zero(rest));

    auto label = [](int i) { return "x" + std::to_string(i); };
    std::size_t lw = 0;
    for (const auto& rp : plan.rows) lw = std::max(lw, label(rp.var).size());
    std::size_t cw = 1;
    for (int j : columns) cw = std::max(cw, label(j).size());

    std::ostringstream out;
    out << std::string(lw, ' ');
    for (int j : columns) out << ' ' << std::string(cw - label(j).size(), ' ') << label(j);
    out << '\n';
    for (const auto& rp : plan.rows) {
        IndexMask possible = j_set(plan.context, rp.var);
        out << label(rp.var) << std::string(lw - label(rp.var).size(), ' ');
        for (int j : columns) {
            IndexMask bit = IndexMask{1} << j;
            char c = '.';
            if (rp.allowed & bit)
                c = rp.constrained && (plan.rank_columns & bit) ? 'R' : '*';
            else if (possible & bit)
                c = 'X';
            out << ' ' << std::string(cw - 1, ' ') << c;
        }
        out << '\n';
    }
    out << "* free  R rank-restricted  X fixed to 0  . unavailable\n";
    return out.str();
}

}  // namespace dmc
