#include "dmc_cli/cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <fstream>
#include <iostream>
#include <iterator>
#include <map>
#include <sstream>

#include "dmc/decreasing_set.hpp"
#include "dmc/design.hpp"
#include "dmc/error.hpp"
#include "dmc/evaluation.hpp"
#include "dmc/io.hpp"
#include "dmc/lta.hpp"
#include "dmc/profile.hpp"

namespace dmc::cli {

namespace {

struct Budgets {
    std::uint64_t pairs = CensusOptions{}.pair_budget;
    std::uint64_t dedup = CensusOptions{}.dedup_budget;
    std::uint64_t orbit = kDefaultOrbitBudget;
    std::size_t cap_k = kDefaultCapK;
    unsigned threads = 0;
    bool strict = false;
    bool b1_unhalved = false;

    CensusOptions census() const {
        CensusOptions c;
        c.pair_budget = pairs;
        c.dedup_budget = dedup;
        c.orbit_budget = orbit;
        c.threads = threads;
        return c;
    }
};

struct Io {
    std::istream& in;
    std::ostream& out;
    std::ostream& err;
};

class UsageError : public Error {
public:
    using Error::Error;
};

std::string slurp(const std::string& path, Io& io) {
    if (path == "-") return std::string(std::istreambuf_iterator<char>(io.in), {});
    std::ifstream f(path);
    if (!f) throw UsageError("cannot open " + path);
    return std::string(std::istreambuf_iterator<char>(f), {});
}

void emit(const std::string& path, const std::string& text, Io& io) {
    if (path.empty() || path == "-") {
        io.out << text;
        io.out.flush();
        return;
    }
    std::ofstream f(path);
    if (!f) throw UsageError("cannot write " + path);
    f << text;
}

DecreasingSet load_code(const std::string& path, bool allow, Io& io) {
    CodeSpecRead r = read_code_spec(slurp(path, io), allow);
    if (r.warning) io.err << "warning: " << *r.warning << '\n';
    return r.code;
}

// Items may hold several monomials: "x1x3x4,x0x2x5" or "1,3,5;0,2,5".
std::vector<Monomial> parse_list(const std::vector<std::string>& items, int m) {
    std::vector<Monomial> out;
    for (const auto& item : items) {
        std::string s = item;
        std::replace(s.begin(), s.end(), ';', ' ');
        std::istringstream words(s);
        std::string piece;
        while (words >> piece) {
            if (piece.find('x') == std::string::npos) {
                out.push_back(Monomial::parse(piece, m));
                continue;
            }
            std::istringstream parts(piece);
            std::string one;
            while (std::getline(parts, one, ','))
                if (!one.empty()) out.push_back(Monomial::parse(one, m));
        }
    }
    return out;
}

std::vector<std::uint64_t> parse_rows(const std::string& text) {
    std::string s = text;
    std::replace(s.begin(), s.end(), ',', ' ');
    std::istringstream in(s);
    std::vector<std::uint64_t> rows;
    std::string tok;
    while (in >> tok) {
        std::size_t used = 0;
        std::uint64_t v = 0;
        try {
            v = std::stoull(tok, &used);
        } catch (const std::exception&) {
            used = 0;
        }
        if (used != tok.size() || tok.front() == '-') throw FormatError("bad row index '" + tok + "'");
        rows.push_back(v);
    }
    return rows;
}

void add_budget_options(CLI::App* sub, Budgets& b, bool census, bool cap) {
    sub->add_option("--threads", b.threads, "Worker threads (0: all cores)");
    if (census) {
        sub->add_option("--budget-pairs", b.pairs, "Pair-operation budget")->check(CLI::PositiveNumber);
        sub->add_option("--budget-dedup", b.dedup, "Distinct-vector budget")->check(CLI::PositiveNumber);
        sub->add_option("--budget-orbit", b.orbit, "Orbit enumeration budget")->check(CLI::PositiveNumber);
    }
    if (cap) sub->add_option("--cap-k", b.cap_k, "Largest K for full enumeration")->check(CLI::PositiveNumber);
    sub->add_flag("--strict", b.strict, "Exit 3 when a budget stops a result");
}

ProfileOptions profile_options(const Budgets& b, int mu_max, bool census, const std::string& mode) {
    ProfileOptions po;
    po.type2.census = b.census();
    po.type2.mode = mode == "exact" ? Type2Mode::Exact : Type2Mode::Factored;
    po.b1 = b.b1_unhalved ? B1Variant::Unhalved : kDefaultB1Variant;
    po.mu_max = mu_max;
    po.type2_census = census;
    return po;
}

bool budget_hit(const WeightProfile& p) {
    return std::any_of(p.entries.begin(), p.entries.end(), [](const ProfileEntry& e) {
        return !e.type2.available() && e.type2.unavailable.rfind("BudgetExceeded", 0) == 0;
    });
}

std::string opt(const std::optional<BigCount>& v) { return v ? to_decimal(*v) : "-"; }

std::string verify_text(const VerifyReport& r) {
    std::ostringstream out;
    for (const auto& l : r.lines) {
        out << (l.compared ? (l.match ? "match   " : "MISMATCH") : "skipped ") << "  w=" << l.weight
            << " mu=" << l.mu << ' ' << l.what << " vs " << l.oracle << ": expected " << opt(l.expected)
            << ", observed " << opt(l.observed);
        if (!l.note.empty()) out << " (" << l.note << ')';
        out << '\n';
    }
    out << (r.all_match() ? "all entries agree\n" : "mismatches found\n");
    return out.str();
}

}  // namespace

int run(const std::vector<std::string>& args, std::istream& in, std::ostream& out, std::ostream& err) {
    Io io{in, out, err};
    CLI::App app{"Weight profiles of decreasing monomial codes"};
    app.name("dmc");
    app.require_subcommand(1, 1);

    Budgets budgets;
    std::string output = "-";
    std::string format;  // per-subcommand default below
    bool allow_non_decreasing = false;
    int m = 0, r = -1, mu_max = 0, l = -1;

    // construct
    auto* construct = app.add_subcommand("construct", "Build a code spec");
    std::string type;
    std::vector<std::string> max_list;
    std::string rows_file, f_max;
    construct->add_option("--type", type, "rm | max-monomials | rows | rmxpolar")
        ->required()
        ->check(CLI::IsMember({"rm", "max-monomials", "rows", "rmxpolar"}));
    construct->add_option("--m", m, "Number of variables")->required()->check(CLI::Range(1, kMaxVars));
    construct->add_option("--r", r, "Degree (rm)");
    construct->add_option("--max", max_list, "Maximal monomials (max-monomials)");
    construct->add_option("--rows-file", rows_file, "Row indices, one file or - (rows)");
    construct->add_option("--f-max", f_max, "Maximal degree-3 monomial (rmxpolar)");
    construct->add_flag("--allow-non-decreasing", allow_non_decreasing, "Warn instead of failing (rows)");
    construct->add_option("-o", output, "Output path or -");

    // profile
    auto* profile = app.add_subcommand("profile", "Weight profile below twice the minimum weight");
    std::string spec_path = "-";
    bool ledger = false, no_census = false;
    std::string mode = "factored";
    profile->add_option("spec", spec_path, "Code spec path or -");
    profile->add_option("--mu-max", mu_max, "Largest mu")->check(CLI::NonNegativeNumber);
    profile->add_flag("--ledger", ledger, "Attach the Type I case ledger");
    profile->add_flag("--no-census", no_census, "Skip the Type II census");
    profile->add_option("--type2-mode", mode, "factored | exact")->check(CLI::IsMember({"factored", "exact"}));
    profile->add_option("--format", format, "json | csv")->check(CLI::IsMember({"json", "csv"}));
    profile->add_flag("--b1-unhalved", budgets.b1_unhalved, "Unhalved B1 count");
    profile->add_flag("--allow-non-decreasing", allow_non_decreasing, "Accept non-decreasing input");
    profile->add_option("-o", output, "Output path or -");
    add_budget_options(profile, budgets, true, false);

    // verify
    auto* verify = app.add_subcommand("verify", "Check the profile against an oracle");
    std::string oracle = "both";
    verify->add_option("spec", spec_path, "Code spec path or -");
    verify->add_option("--oracle", oracle, "full | census | both")->check(CLI::IsMember({"full", "census", "both"}));
    verify->add_option("--mu-max", mu_max, "Largest mu")->check(CLI::NonNegativeNumber);
    verify->add_option("--format", format, "text | json")->check(CLI::IsMember({"text", "json"}));
    verify->add_flag("--b1-unhalved", budgets.b1_unhalved, "Unhalved B1 count");
    verify->add_flag("--allow-non-decreasing", allow_non_decreasing, "Accept non-decreasing input");
    verify->add_option("-o", output, "Output path or -");
    add_budget_options(verify, budgets, true, true);

    // orbit
    auto* orbit = app.add_subcommand("orbit", "Inspect one LTA orbit");
    orbit->set_help_flag("--help", "Print this help message and exit");
    std::string f_text, h_text = "1", g_text, kind = "full", code_path;
    bool young = false;
    orbit->add_option("--m", m, "Number of variables")->required()->check(CLI::Range(1, kMaxVars));
    orbit->add_option("--f", f_text, "Monomial f")->required();
    orbit->add_option("--h", h_text, "Divisor h of f");
    orbit->add_option("--g", g_text, "Partner monomial (pair)");
    orbit->add_option("--kind", kind, "full | pair | self")->check(CLI::IsMember({"full", "pair", "self"}));
    orbit->add_option("--code", code_path, "Code spec (self)");
    orbit->add_flag("--young", young, "Draw the parameter diagram");
    orbit->add_option("--budget-orbit", budgets.orbit, "Enumeration budget")->check(CLI::PositiveNumber);
    orbit->add_option("-o", output, "Output path or -");

    // design
    auto* design = app.add_subcommand("design", "Antichains and design comparison");
    design->require_subcommand(1, 1);
    auto* anti = design->add_subcommand("antichain", "Degree-r monomials with index sum l");
    anti->add_option("--m", m, "Number of variables")->required()->check(CLI::Range(1, kMaxVars));
    anti->add_option("--r", r, "Degree")->required()->check(CLI::NonNegativeNumber);
    anti->add_option("--l", l, "Index sum")->required()->check(CLI::NonNegativeNumber);
    anti->add_option("--format", format, "text | json")->check(CLI::IsMember({"text", "json"}));
    anti->add_option("-o", output, "Output path or -");
    auto* compare = design->add_subcommand("compare", "Profile several candidate codes");
    std::vector<std::string> code_paths;
    std::string json_path;
    compare->add_option("--m", m, "Number of variables (rmxpolar candidates)")->check(CLI::Range(1, kMaxVars));
    compare->add_option("--max", max_list, "Degree-3 candidates f_max");
    compare->add_option("--code", code_paths, "Code spec files instead of rmxpolar candidates");
    compare->add_option("--mu-max", mu_max, "Largest mu")->check(CLI::NonNegativeNumber);
    compare->add_option("--json", json_path, "JSON sidecar path");
    compare->add_flag("--no-census", no_census, "Skip the Type II census");
    compare->add_flag("--b1-unhalved", budgets.b1_unhalved, "Unhalved B1 count");
    compare->add_option("-o", output, "Text table path or -");
    add_budget_options(compare, budgets, true, false);

    // distribution
    auto* distribution = app.add_subcommand("distribution", "Full weight distribution by Gray-code walk");
    distribution->add_option("spec", spec_path, "Code spec path or -");
    distribution->add_option("--format", format, "json | csv")->check(CLI::IsMember({"json", "csv"}));
    distribution->add_flag("--allow-non-decreasing", allow_non_decreasing, "Accept non-decreasing input");
    distribution->add_option("-o", output, "Output path or -");
    add_budget_options(distribution, budgets, false, true);

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e, out, err);
        return code == 0 ? kOk : kInputError;
    }

    try {
        if (format.empty()) format = verify->parsed() || anti->parsed() ? "text" : "json";
        if (construct->parsed()) {
            DecreasingSet code;
            if (type == "rm") {
                if (r < 0) throw UsageError("--type rm needs --r");
                code = rm_set(r, m);
            } else if (type == "max-monomials") {
                auto gens = parse_list(max_list, m);
                if (gens.empty()) throw UsageError("--type max-monomials needs --max");
                code = closure(m, gens);
            } else if (type == "rows") {
                if (rows_file.empty()) throw UsageError("--type rows needs --rows-file");
                auto rows = parse_rows(slurp(rows_file, io));
                if (allow_non_decreasing) {
                    std::vector<Monomial> members;
                    for (auto row : rows) members.push_back(row_to_monomial(m, row));
                    code = DecreasingSet::unchecked(m, std::move(members));
                    if (!code.is_verified()) {
                        auto bad = find_violation(m, code.monomials());
                        err << "warning: " << NotDecreasing(bad->first, bad->second).what() << '\n';
                    }
                } else {
                    code = from_rows(m, rows);
                }
            } else {
                if (f_max.empty()) throw UsageError("--type rmxpolar needs --f-max");
                code = rmxpolar(m, Monomial::parse(f_max, m));
            }
            emit(output, write_code_spec(code), io);
            return kOk;
        }

        if (profile->parsed()) {
            DecreasingSet code = load_code(spec_path, allow_non_decreasing, io);
            WeightProfile p = build_profile(code, profile_options(budgets, mu_max, !no_census, mode));
            std::string text;
            if (format == "csv") {
                if (ledger) throw UsageError("--ledger needs --format json");
                text = profile_csv(p);
            } else {
                text = profile_json(p, ledger);
            }
            emit(output, text, io);
            if (budgets.strict && budget_hit(p)) {
                err << "error: a Type II census exceeded its budget\n";
                return kBudget;
            }
            return kOk;
        }

        if (verify->parsed()) {
            DecreasingSet code = load_code(spec_path, allow_non_decreasing, io);
            VerifyOptions vo;
            vo.profile = profile_options(budgets, mu_max, true, "factored");
            vo.cap_K = budgets.cap_k;
            Oracle o = oracle == "full" ? Oracle::Full : oracle == "census" ? Oracle::Census : Oracle::Both;
            VerifyReport rep = verify_profile(code, o, vo);
            emit(output, format == "json" ? verify_json(rep) : verify_text(rep), io);
            if (!rep.all_match()) return kMismatch;
            bool skipped = std::any_of(rep.lines.begin(), rep.lines.end(),
                                       [](const VerifyLine& x) { return !x.compared; });
            if (budgets.strict && skipped) {
                err << "error: some entries were not compared\n";
                return kBudget;
            }
            return kOk;
        }

        if (orbit->parsed()) {
            Monomial f = Monomial::parse(f_text, m);
            Monomial h = Monomial::parse(h_text, m);
            std::optional<DecreasingSet> code;
            OrbitSpec spec;
            if (kind == "full") {
                spec = OrbitSpec::full(f, h);
            } else if (kind == "pair") {
                if (g_text.empty()) throw UsageError("--kind pair needs --g");
                spec = OrbitSpec::restricted_pair(f, h, Monomial::parse(g_text, m));
            } else {
                if (code_path.empty()) throw UsageError("--kind self needs --code");
                code = load_code(code_path, true, io);
                if (code->vars() != m) throw UsageError("--code is over a different m");
                spec = OrbitSpec::restricted_self(f, h, *code);
            }
            BigCount size = closed_form_size(spec);
            std::ostringstream o;
            o << "kind: " << kind << "\nf: " << f.to_string() << "\nh: " << h.to_string();
            if (kind == "pair") o << "\ng: " << spec.g.to_string();
            o << "\nacted: " << spec.acted().to_string() << "\nclosed-form size: " << to_decimal(size) << '\n';
            if (m > kMaxEvalVars) {
                o << "enumerated size: skipped (m above " << kMaxEvalVars << ")\n";
            } else if (size > budgets.orbit) {
                o << "enumerated size: skipped (above the orbit budget of " << budgets.orbit << ")\n";
            } else {
                VectorBlock block = orbit_vectors(spec, budgets.orbit);
                std::map<std::uint64_t, std::uint64_t> hist;
                for (std::size_t i = 0; i < block.size(); ++i)
                    ++hist[popcount_words({block.at(i), block.width})];
                o << "enumerated size: " << block.size() << "\nweights:\n";
                for (const auto& [w, c] : hist) o << "  " << w << ": " << c << '\n';
            }
            if (young) o << "diagram:\n" << young_diagram(spec);
            emit(output, o.str(), io);
            return kOk;
        }

        if (anti->parsed()) {
            auto set = antichain(m, r, l);
            std::ostringstream o;
            if (format == "json") {
                o << "[";
                for (std::size_t i = 0; i < set.size(); ++i)
                    o << (i ? ", " : "") << '"' << set[i].to_string() << '"';
                o << "]\n";
            } else {
                for (const auto& f : set)
                    o << f.to_string() << "  |lambda|=" << lambda(f).total
                      << "  score=" << to_decimal(type1_refinement_score(f)) << '\n';
                o << set.size() << " monomials\n";
            }
            emit(output, o.str(), io);
            return kOk;
        }

        if (compare->parsed()) {
            DesignOptions d;
            d.profile = profile_options(budgets, mu_max, !no_census, "factored");
            d.threads = budgets.threads;
            DesignReport rep;
            if (!code_paths.empty()) {
                if (!max_list.empty()) throw UsageError("use either --max or --code");
                std::vector<DecreasingSet> codes;
                for (const auto& p : code_paths) codes.push_back(load_code(p, false, io));
                rep = design_compare(codes, d);
            } else {
                if (m <= 0) throw UsageError("design compare needs --m with --max");
                auto cands = parse_list(max_list, m);
                if (cands.empty()) throw UsageError("design compare needs --max or --code");
                rep = design_compare(m, cands, d);
            }
            emit(output, render_design_table(rep), io);
            if (!json_path.empty()) emit(json_path, design_json(rep), io);
            bool hit = std::any_of(rep.candidates.begin(), rep.candidates.end(),
                                   [](const DesignCandidate& c) { return budget_hit(c.profile); });
            if (budgets.strict && hit) {
                err << "error: a Type II census exceeded its budget\n";
                return kBudget;
            }
            return kOk;
        }

        if (distribution->parsed()) {
            DecreasingSet code = load_code(spec_path, allow_non_decreasing, io);
            WeightDistribution d = full_weight_distribution(code, budgets.cap_k, budgets.threads);
            emit(output, format == "csv" ? distribution_csv(d) : distribution_json(d), io);
            return kOk;
        }
    } catch (const BudgetExceeded& e) {
        err << "error: " << e.what() << '\n';
        return kBudget;
    } catch (const CapExceeded& e) {
        err << "error: " << e.what() << '\n';
        return kBudget;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return kInputError;
    }
    return kInputError;
}

}  // namespace dmc::cli
