#pragma once

#include <compare>
#include <string>
#include <vector>

#include "dmc/big_count.hpp"
#include "dmc/decreasing_set.hpp"
#include "dmc/monomial.hpp"
#include "dmc/profile.hpp"

namespace dmc {

// Compares |λ_f| and |λ_g|. Equal degrees required. Equivalent means tied.
std::weak_ordering cmp_wmin(const Monomial& f, const Monomial& g);

// Degree-r monomials in m variables whose indices sum to l, in mask order.
std::vector<Monomial> antichain(int m, int r, int l);

// prod_j (2^{|J_f(i_j)|} - 2^{j-1}) over ind(f) ascending, clamped to zero.
// Multiplying by 2^{deg f} gives the rank-restricted self orbit of f inside the full set.
BigCount type1_refinement_score(const Monomial& f);

struct DesignCandidate {
    Monomial f_max;
    DecreasingSet code;
    std::size_t top_stratum = 0;  // |I_r|
    int lambda_total = 0;
    BigCount score;
    WeightProfile profile;
    std::string error;  // set when the profile could not be built
};

struct DesignReport {
    int m = 0;
    std::vector<DesignCandidate> candidates;  // input order
    std::vector<std::size_t> ranking;         // indices, best first
    std::vector<std::string> notes;
};

struct DesignOptions {
    ProfileOptions profile;
    unsigned threads = 0;
};

// One rmxpolar code per degree-3 candidate.
DesignReport design_compare(int m, const std::vector<Monomial>& candidates, const DesignOptions& options = {});
// Caller-supplied codes; f_max is the largest-mask member of each top stratum.
DesignReport design_compare(const std::vector<DecreasingSet>& codes, const DesignOptions& options = {});

// Cell text: the combined count, or "<type I>+?" when Type II is unavailable.
std::string render_cell(const ProfileEntry& e);
std::string render_design_table(const DesignReport& report);

}  // namespace dmc
