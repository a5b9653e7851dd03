#include "dmc/design.hpp"

#include <algorithm>
#include <bit>
#include <map>
#include <set>
#include <sstream>
#include <stdexcept>

#include "dmc/error.hpp"
#include "dmc/parallel.hpp"

namespace dmc {

std::weak_ordering cmp_wmin(const Monomial& f, const Monomial& g) {
    if (f.degree() != g.degree())
        throw std::invalid_argument("cmp_wmin needs equal degrees: " + f.to_string() + " vs " +
                                    g.to_string());
    return lambda(f).total <=> lambda(g).total;
}

std::vector<Monomial> antichain(int m, int r, int l) {
    std::vector<Monomial> out;
    if (r < 0 || r > m || l < r * (r - 1) / 2) return out;
    for (const auto& f : monomials_of_degree(m, r)) {
        int sum = 0;
        for (int i : f.indices()) sum += i;
        if (sum == l) out.push_back(f);
    }
    std::sort(out.begin(), out.end());
    return out;
}

BigCount type1_refinement_score(const Monomial& f) {
    BigCount score = 1;
    int j = 0;
    for (int i : f.indices()) {
        int free = std::popcount(j_set(f, i));
        if (free <= j) return 0;
        score *= pow2(free) - pow2(j);
        ++j;
    }
    return score;
}

namespace {

DesignCandidate evaluate(const DecreasingSet& code, const Monomial& f_max, const ProfileOptions& po) {
    DesignCandidate c;
    c.f_max = f_max;
    c.code = code;
    int r = code.r_max();
    c.top_stratum = r < 0 ? 0 : code.stratum(r).size();
    c.lambda_total = lambda(f_max).total;
    c.score = type1_refinement_score(f_max);
    try {
        c.profile = build_profile(code, po);
    } catch (const std::exception& e) {
        c.error = e.what();
    }
    return c;
}

DesignReport finish(DesignReport report) {
    auto& cs = report.candidates;
    report.ranking.resize(cs.size());
    for (std::size_t i = 0; i < cs.size(); ++i) report.ranking[i] = i;
    auto wmin_count = [&](std::size_t i) -> BigCount {
        const auto& e = cs[i].profile.entries;
        return e.empty() ? BigCount(0) : e.front().combined().value_or(BigCount(0));
    };
    std::stable_sort(report.ranking.begin(), report.ranking.end(), [&](std::size_t a, std::size_t b) {
        const auto& x = cs[a];
        const auto& y = cs[b];
        if (x.f_max.degree() == y.f_max.degree() && x.lambda_total != y.lambda_total)
            return x.lambda_total < y.lambda_total;
        if (x.score != y.score) return x.score < y.score;
        return wmin_count(a) < wmin_count(b);
    });
    report.notes.push_back("ranking key: (|lambda(f_max)|, refinement score, W_min count), ascending");
    std::map<std::pair<int, int>, std::vector<std::size_t>> ties;
    for (std::size_t i = 0; i < cs.size(); ++i) ties[{cs[i].f_max.degree(), cs[i].lambda_total}].push_back(i);
    for (const auto& [key, members] : ties) {
        if (members.size() < 2) continue;
        std::string line = "tied at |lambda|=" + std::to_string(key.second) + ", split by score:";
        for (auto i : members) line += " " + cs[i].f_max.to_string() + "=" + to_decimal(cs[i].score);
        report.notes.push_back(line);
    }
    for (const auto& c : cs)
        if (c.score == 0)
            report.notes.push_back(c.f_max.to_string() +
                                   ": refinement score 0, its own pair contributes no Type I codewords");
    return report;
}

ProfileOptions inner_options(const DesignOptions& options, std::size_t tasks) {
    ProfileOptions po = options.profile;
    if (tasks > 1 && resolve_threads(options.threads) > 1) po.type2.census.threads = 1;
    return po;
}

}  // namespace

DesignReport design_compare(int m, const std::vector<Monomial>& candidates, const DesignOptions& options) {
    for (const auto& f : candidates) {
        if (f.vars() != m) throw std::invalid_argument("candidate " + f.to_string() + " is over a different m");
        if (f.degree() != 3) throw std::invalid_argument("candidate " + f.to_string() + " is not of degree 3");
    }
    DesignReport report;
    report.m = m;
    report.candidates.resize(candidates.size());
    ProfileOptions po = inner_options(options, candidates.size());
    parallel_for(candidates.size(), options.threads, [&](std::size_t t, unsigned) {
        report.candidates[t] = evaluate(rmxpolar(m, candidates[t]), candidates[t], po);
    });
    return finish(std::move(report));
}

DesignReport design_compare(const std::vector<DecreasingSet>& codes, const DesignOptions& options) {
    DesignReport report;
    report.m = codes.empty() ? 0 : codes.front().vars();
    report.candidates.resize(codes.size());
    ProfileOptions po = inner_options(options, codes.size());
    parallel_for(codes.size(), options.threads, [&](std::size_t t, unsigned) {
        const auto& code = codes[t];
        int r = code.r_max();
        Monomial top = r < 0 ? Monomial::one(code.vars()) : code.stratum(r).back();
        report.candidates[t] = evaluate(code, top, po);
    });
    return finish(std::move(report));
}

std::string render_cell(const ProfileEntry& e) {
    if (auto c = e.combined()) return to_decimal(*c);
    if (e.type1.value) return to_decimal(*e.type1.value) + "+?";
    return "?";
}

std::string render_design_table(const DesignReport& report) {
    std::set<std::uint64_t> weights;
    for (const auto& c : report.candidates)
        for (const auto& e : c.profile.entries) weights.insert(e.weight);

    std::vector<std::vector<std::string>> rows;
    std::vector<std::string> head{"f_max", "|I_r|", "K", "|lambda|", "score"};
    for (auto w : weights) head.push_back("W_" + std::to_string(w));
    rows.push_back(head);
    for (const auto& c : report.candidates) {
        std::vector<std::string> row{c.f_max.to_string(), std::to_string(c.top_stratum),
                                     std::to_string(c.code.size()), std::to_string(c.lambda_total),
                                     to_decimal(c.score)};
        for (auto w : weights) {
            auto it = std::find_if(c.profile.entries.begin(), c.profile.entries.end(),
                                   [&](const ProfileEntry& e) { return e.weight == w; });
            row.push_back(it == c.profile.entries.end() ? (c.error.empty() ? "-" : "error")
                                                        : render_cell(*it));
        }
        rows.push_back(row);
    }
    std::vector<std::size_t> width(head.size(), 0);
    for (const auto& row : rows)
        for (std::size_t i = 0; i < row.size(); ++i) width[i] = std::max(width[i], row[i].size());

    std::ostringstream out;
    for (const auto& row : rows) {
        for (std::size_t i = 0; i < row.size(); ++i) {
            if (i) out << "  ";
            if (i == 0)
                out << row[i] << std::string(width[i] - row[i].size(), ' ');
            else
                out << std::string(width[i] - row[i].size(), ' ') << row[i];
        }
        out << '\n';
    }
    bool marker = false;
    for (const auto& row : rows)
        for (const auto& cell : row) marker = marker || cell.ends_with("+?");
    if (marker) out << "(+? : Type II census unavailable, Type I component shown)\n";
    for (const auto& c : report.candidates)
        if (!c.error.empty()) out << c.f_max.to_string() << ": " << c.error << '\n';
    out << "ranking:";
    for (auto i : report.ranking) out << ' ' << report.candidates[i].f_max.to_string();
    out << '\n';
    for (const auto& n : report.notes) out << "note: " << n << '\n';
    return out.str();
}

}  // namespace dmc
