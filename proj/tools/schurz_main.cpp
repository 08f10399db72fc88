// Command-line front end: evaluate, convert, dualize, enumerate, verify,
// render. Exit codes: 0 success, 2 parse error, 3 admissibility error,
// 4 cap exceeded, 1 anything else (including failed verification).

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "schurz/schurz.hpp"

namespace {

using namespace schurz;

struct CliOptions {
    RunConfig cfg;
    bool json = false;
};

Rational parse_rational(const std::string& text) {
    if (text.find('/') != std::string::npos) {
        Rational q;
        if (q.set_str(text, 10) != 0 || q.get_den() == 0)
            throw parse_error("bad rational: " + text);
        q.canonicalize();
        return q;
    }
    if (text.find('.') != std::string::npos) {
        const std::size_t dot = text.find('.');
        const std::string digits = text.substr(0, dot) + text.substr(dot + 1);
        Rational num(digits, 10);
        Rational den(1);
        for (std::size_t i = dot + 1; i < text.size(); ++i) den *= 10;
        Rational q = num / den;
        q.canonicalize();
        return q;
    }
    return Rational(text, 10);
}

std::vector<Rational> parse_rational_list(const std::string& text) {
    std::vector<Rational> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (item.empty()) throw parse_error("empty list entry");
        out.push_back(parse_rational(item));
    }
    if (out.empty()) throw parse_error("empty list");
    return out;
}

std::vector<long> parse_long_list(const std::string& text) {
    std::vector<long> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) out.push_back(std::stol(item));
    if (out.empty()) throw parse_error("empty list");
    return out;
}

std::string fmt_double(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.12g", v);
    return buf;
}

json load_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw parse_error("cannot open file: " + path);
    try {
        return json::parse(in);
    } catch (const json::exception& e) {
        throw parse_error(std::string("bad JSON in ") + path + ": " + e.what());
    }
}

void print_eval(const CliOptions& opt, const EvalResult& r,
                const json* extra = nullptr) {
    if (opt.json) {
        json j = eval_result_to_json(r);
        if (extra) j["integral_check"] = *extra;
        std::cout << j.dump(2) << "\n";
        return;
    }
    if (r.mode == EvalMode::Rational)
        std::cout << "value          " << r.exact.get_str() << "\n";
    else
        std::cout << "value          " << fmt_double(r.value) << "\n";
    std::cout << "N              " << r.n << "\n";
    std::cout << "error_estimate " << fmt_double(r.error_estimate) << "\n";
    std::cout << "mode           "
              << (r.mode == EvalMode::Rational ? "rational" : "float") << "\n";
    if (extra) {
        std::cout << "integral_value " << fmt_double((*extra)["value"].get<double>())
                  << "\n";
        std::cout << "discrepancy    "
                  << fmt_double((*extra)["abs_diff"].get<double>()) << "\n";
    }
}

int cmd_eval(const CliOptions& opt, const std::string& seq_text,
             const std::string& tableau_file, bool check_integral) {
    EvalResult r;
    SeqIndex seq;
    bool have_seq = false;
    if (!tableau_file.empty()) {
        GeneralTableau t = tableau_from_json(load_json_file(tableau_file));
        r = eval_ssyt_series(t, opt.cfg.n, opt.cfg.mode, opt.cfg.caps.loop_budget);
        if (check_integral) {
            seq = tableau_to_sequence(diagonal_tableau_from_json(
                load_json_file(tableau_file)));
            have_seq = true;
        }
    } else {
        seq = parse_sequence(seq_text);
        have_seq = true;
        r = eval_schur_series(seq, opt.cfg.n, opt.cfg.mode,
                              SeriesCaps{opt.cfg.caps.loop_budget});
    }
    if (check_integral && have_seq) {
        TwoLabeledPoset p = build_poset(theta(seq));
        EvalResult ri = eval_via_extensions(
            p, opt.cfg.n, opt.cfg.mode,
            static_cast<std::size_t>(opt.cfg.caps.poset_elements));
        json extra{{"value", ri.value},
                   {"abs_diff", std::fabs(ri.value - r.value)},
                   {"error_budget", r.error_estimate + ri.error_estimate}};
        print_eval(opt, r, &extra);
        return 0;
    }
    print_eval(opt, r);
    return 0;
}

int cmd_convert(const CliOptions& opt, const std::string& direction,
                const std::string& input) {
    if (direction == "seq2tab") {
        DiagonalTableau t = sequence_to_tableau(parse_sequence(input));
        std::cout << tableau_to_json(t.to_general()).dump(2) << "\n";
        return 0;
    }
    DiagonalTableau t = diagonal_tableau_from_json(load_json_file(input));
    const std::string text = format_sequence(tableau_to_sequence(t));
    if (opt.json) std::cout << json{{"sequence", text}}.dump(2) << "\n";
    else std::cout << text << "\n";
    return 0;
}

int cmd_dual(const CliOptions& opt, const std::string& kind,
             const std::string& seq_text) {
    SeqIndex s = parse_sequence(seq_text);
    SeqIndex d = (kind == "lr") ? dual_lr(s) : dual_tau(s);
    const std::string text = format_sequence(d);
    if (opt.json)
        std::cout << json{{"kind", kind},
                          {"input", format_sequence(s)},
                          {"dual", text},
                          {"self_dual", text == format_sequence(s)}}
                         .dump(2)
                  << "\n";
    else std::cout << text << "\n";
    return 0;
}

int cmd_relations(const CliOptions& opt, const std::string& kind,
                  int weight_max, bool verify) {
    const DualityKind k = (kind == "lr") ? DualityKind::LR : DualityKind::Tau;
    auto pairs = enumerate_relations(weight_max, k, opt.cfg.caps.enum_weight);
    std::vector<VerifiedPair> rows;
    bool all_ok = true;
    for (const auto& pr : pairs) {
        VerifiedPair vp;
        vp.pair = pr;
        if (verify && !pr.self_dual) {
            EvalResult a = eval_schur_series(pr.lhs, opt.cfg.n, EvalMode::Float,
                                             SeriesCaps{opt.cfg.caps.loop_budget});
            EvalResult b = eval_schur_series(pr.rhs, opt.cfg.n, EvalMode::Float,
                                             SeriesCaps{opt.cfg.caps.loop_budget});
            vp.verified = true;
            vp.n = opt.cfg.n;
            vp.abs_diff = std::fabs(a.value - b.value);
            if (vp.abs_diff > a.error_estimate + b.error_estimate)
                all_ok = false;
        }
        rows.push_back(vp);
    }
    if (opt.json) {
        std::cout << relations_to_json(k, weight_max, rows).dump(2) << "\n";
    } else {
        for (const auto& vp : rows) {
            std::cout << format_sequence(vp.pair.lhs) << " = "
                      << format_sequence(vp.pair.rhs);
            if (vp.pair.self_dual) std::cout << "  (self-dual)";
            if (vp.verified)
                std::cout << "  |diff| = " << fmt_double(vp.abs_diff) << " at N=" << vp.n;
            std::cout << "\n";
        }
        std::cout << rows.size() << " pairs\n";
    }
    return all_ok ? 0 : 1;
}

int cmd_poset(const CliOptions& opt, const std::string& seq_text, bool dot) {
    SeqIndex s = parse_sequence(seq_text);
    TwoLabeledPoset p = build_poset(theta(s));
    if (dot) {
        std::cout << to_dot(p);
        return 0;
    }
    if (opt.json) {
        std::cout << poset_to_json(p).dump(2) << "\n";
        return 0;
    }
    std::cout << "elements   " << p.size() << "\n";
    std::cout << "covers     " << p.covers().size() << "\n";
    std::cout << "admissible " << (is_admissible_poset(p) ? "yes" : "no")
              << "\n";
    return 0;
}

void print_report(const CliOptions& opt, const VerifyReport& rep) {
    if (opt.json) {
        std::cout << verify_report_to_json(rep).dump(2) << "\n";
        return;
    }
    std::cout << rep.name << ": lhs=" << fmt_double(rep.lhs)
              << " rhs=" << fmt_double(rep.rhs)
              << " |diff|=" << fmt_double(rep.abs_diff)
              << " tol=" << fmt_double(rep.tolerance)
              << (rep.pass ? "  PASS" : "  FAIL") << "\n";
}

int cmd_verify_main2(const CliOptions& opt, int weight_max) {
    auto all = enumerate_H(weight_max, opt.cfg.caps.enum_weight);
    long failures = 0;
    double worst = 0.0;
    std::string worst_word;
    for (const SeqIndex& s : all) {
        EvalResult lhs = eval_schur_series(s, opt.cfg.n, EvalMode::Float,
                                           SeriesCaps{opt.cfg.caps.loop_budget});
        EvalResult rhs = eval_via_extensions(
            build_poset(theta(s)), opt.cfg.n, EvalMode::Float,
            static_cast<std::size_t>(opt.cfg.caps.poset_elements));
        const double diff = std::fabs(lhs.value - rhs.value);
        const double tol = lhs.error_estimate + rhs.error_estimate + 1e-9;
        const double margin = diff - tol;
        if (margin > worst) {
            worst = margin;
            worst_word = format_sequence(s);
        }
        if (diff > tol) {
            ++failures;
            if (!opt.json)
                std::cout << "FAIL " << format_sequence(s)
                          << " |diff|=" << fmt_double(diff)
                          << " tol=" << fmt_double(tol) << "\n";
        }
    }
    if (opt.json) {
        std::cout << json{{"target", "main2"},
                          {"weight_max", weight_max},
                          {"N", opt.cfg.n},
                          {"indices", all.size()},
                          {"failures", failures},
                          {"pass", failures == 0}}
                         .dump(2)
                  << "\n";
    } else {
        std::cout << "main2: " << all.size() << " indices at N=" << opt.cfg.n
                  << ", failures " << failures
                  << (failures == 0 ? "  PASS" : "  FAIL") << "\n";
    }
    return failures == 0 ? 0 : 1;
}

int cmd_verify_duality(const CliOptions& opt, const std::string& kind,
                       int weight_max) {
    const DualityKind k = (kind == "lr") ? DualityKind::LR : DualityKind::Tau;
    auto pairs = enumerate_relations(weight_max, k, opt.cfg.caps.enum_weight);
    long failures = 0, checked = 0;
    for (const auto& pr : pairs) {
        if (pr.self_dual) continue;
        ++checked;
        EvalResult a = eval_schur_series(pr.lhs, opt.cfg.n, EvalMode::Float,
                                         SeriesCaps{opt.cfg.caps.loop_budget});
        EvalResult b = eval_schur_series(pr.rhs, opt.cfg.n, EvalMode::Float,
                                         SeriesCaps{opt.cfg.caps.loop_budget});
        const double diff = std::fabs(a.value - b.value);
        if (diff > a.error_estimate + b.error_estimate) {
            ++failures;
            if (!opt.json)
                std::cout << "FAIL " << format_sequence(pr.lhs) << " vs "
                          << format_sequence(pr.rhs)
                          << " |diff|=" << fmt_double(diff) << "\n";
        }
    }
    if (opt.json) {
        std::cout << json{{"target", "duality"},
                          {"kind", kind},
                          {"weight_max", weight_max},
                          {"N", opt.cfg.n},
                          {"pairs", pairs.size()},
                          {"checked", checked},
                          {"failures", failures},
                          {"pass", failures == 0}}
                         .dump(2)
                  << "\n";
    } else {
        std::cout << "duality(" << kind << "): " << pairs.size()
                  << " pairs, checked " << checked << " at N=" << opt.cfg.n
                  << ", failures " << failures
                  << (failures == 0 ? "  PASS" : "  FAIL") << "\n";
    }
    return failures == 0 ? 0 : 1;
}

int cmd_verify_mc(const CliOptions& opt, const std::string& seq_text) {
    SeqIndex s = parse_sequence(seq_text);
    TwoLabeledPoset p = build_poset(theta(s));
    McEstimate est = mc_integral(p, IntervalAssignment::full(p.size()),
                                 opt.cfg.mc_samples, opt.cfg.seed);
    EvalResult series = eval_schur_series(s, opt.cfg.n, EvalMode::Float,
                                          SeriesCaps{opt.cfg.caps.loop_budget});
    const double diff = std::fabs(est.mean - series.value);
    const bool pass = diff <= 5.0 * est.stderr_ + series.error_estimate;
    if (opt.json) {
        json j = mc_estimate_to_json(est);
        j["series_value"] = series.value;
        j["abs_diff"] = diff;
        j["pass"] = pass;
        std::cout << j.dump(2) << "\n";
    } else {
        std::cout << "mc mean " << fmt_double(est.mean) << " +- "
                  << fmt_double(est.stderr_) << " (" << est.samples
                  << " samples, seed " << est.seed << ", " << est.rng << ")\n"
                  << "series  " << fmt_double(series.value) << " at N="
                  << series.n << "\n"
                  << (pass ? "PASS" : "FAIL") << " |diff|=" << fmt_double(diff)
                  << " band=" << fmt_double(5.0 * est.stderr_) << "\n";
    }
    return pass ? 0 : 1;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Schur multiple zeta values: series evaluation, 2-labeled "
                 "poset integrals, and duality relations"};
    app.fallthrough(true);
    app.require_subcommand(1);

    CliOptions opt;
    std::string mode_name = "float";
    app.add_option("--N", opt.cfg.n, "truncation bound")->envname("SCHURZ_N");
    app.add_option("--mode", mode_name, "rational|float")
        ->check(CLI::IsMember({"rational", "float"}))
        ->envname("SCHURZ_MODE");
    app.add_option("--quad-tol", opt.cfg.quad_tol, "quadrature tolerance")
        ->envname("SCHURZ_QUAD_TOL");
    app.add_option("--mc-samples", opt.cfg.mc_samples, "Monte Carlo samples")
        ->envname("SCHURZ_MC_SAMPLES");
    app.add_option("--seed", opt.cfg.seed, "PRNG seed")->envname("SCHURZ_SEED");
    app.add_option("--poset-cap", opt.cfg.caps.poset_elements,
                   "max poset elements for extension enumeration")
        ->envname("SCHURZ_POSET_CAP");
    app.add_option("--enum-cap", opt.cfg.caps.enum_weight,
                   "max enumeration weight")
        ->envname("SCHURZ_ENUM_CAP");
    app.add_option("--loop-budget", opt.cfg.caps.loop_budget,
                   "series enumeration budget")
        ->envname("SCHURZ_LOOP_BUDGET");
    app.add_flag("--json", opt.json, "JSON output")->envname("SCHURZ_JSON");

    // eval
    std::string seq_text, tableau_file;
    bool check_integral = false;
    CLI::App* eval = app.add_subcommand("eval", "evaluate a truncated series");
    eval->add_option("seq", seq_text, "sequence index, e.g. \"2u4(2)3(2)1\"");
    eval->add_option("--tableau", tableau_file, "tableau JSON file");
    eval->add_flag("--check-integral", check_integral,
                   "also evaluate through linear extensions");

    // convert
    std::string conv_dir, conv_input;
    CLI::App* conv = app.add_subcommand("convert", "tableau <-> sequence");
    conv->add_option("direction", conv_dir, "seq2tab|tab2seq")
        ->required()
        ->check(CLI::IsMember({"seq2tab", "tab2seq"}));
    conv->add_option("input", conv_input, "sequence text or tableau file")
        ->required();

    // dual
    std::string dual_kind, dual_seq;
    CLI::App* dual = app.add_subcommand("dual", "dual index");
    dual->add_option("kind", dual_kind, "lr|tau")
        ->required()
        ->check(CLI::IsMember({"lr", "tau"}));
    dual->add_option("seq", dual_seq)->required();

    // relations
    std::string rel_kind;
    int rel_weight = 6;
    bool rel_verify = false;
    CLI::App* rel = app.add_subcommand("relations", "enumerate duality pairs");
    rel->add_option("kind", rel_kind, "lr|tau")
        ->required()
        ->check(CLI::IsMember({"lr", "tau"}));
    rel->add_option("--weight-max", rel_weight, "maximal weight")
        ->envname("SCHURZ_WEIGHT_MAX");
    rel->add_flag("--verify", rel_verify, "numerically certify each pair");

    // poset
    std::string poset_seq;
    bool poset_dot = false;
    CLI::App* poset = app.add_subcommand("poset", "2-labeled poset of theta(seq)");
    poset->add_option("seq", poset_seq)->required();
    poset->add_flag("--dot", poset_dot, "emit DOT");

    // verify
    CLI::App* verify = app.add_subcommand("verify", "check paper identities");
    verify->require_subcommand(1);
    std::string l1_case = "I", l1_u, l1_n;
    CLI::App* vl1 = verify->add_subcommand("lemma1", "determinant lemma");
    vl1->add_option("--case", l1_case, "I|II|III")
        ->check(CLI::IsMember({"I", "II", "III"}));
    vl1->add_option("--u", l1_u, "comma separated u values")->required();
    vl1->add_option("--n", l1_n, "comma separated exponents")->required();

    std::string r2_base, r2_append = "plus1", r2_u;
    CLI::App* vr2 = verify->add_subcommand("relation2", "recursive relation");
    vr2->add_option("--base", r2_base, "base sequence")->required();
    vr2->add_option("--append", r2_append, "plus1|open1|up1|down1|close1")
        ->check(CLI::IsMember({"plus1", "open1", "up1", "down1", "close1"}));
    vr2->add_option("--u", r2_u, "comma separated u values")->required();

    int m2_weight = 5;
    CLI::App* vm2 = verify->add_subcommand("main2", "series vs extensions");
    vm2->add_option("--weight-max", m2_weight)->envname("SCHURZ_WEIGHT_MAX");

    std::string vd_kind = "lr";
    int vd_weight = 6;
    CLI::App* vdu = verify->add_subcommand("duality", "certify duality pairs");
    vdu->add_option("--kind", vd_kind, "lr|tau")
        ->check(CLI::IsMember({"lr", "tau"}));
    vdu->add_option("--weight-max", vd_weight)->envname("SCHURZ_WEIGHT_MAX");

    std::string mc_seq;
    CLI::App* vmc = verify->add_subcommand("mc", "Monte Carlo diagnostic");
    vmc->add_option("seq", mc_seq)->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    opt.cfg.mode = (mode_name == "rational") ? EvalMode::Rational : EvalMode::Float;

    try {
        opt.cfg.validate();
        if (eval->parsed()) {
            if (seq_text.empty() && tableau_file.empty())
                throw parse_error("eval needs a sequence or --tableau FILE");
            return cmd_eval(opt, seq_text, tableau_file, check_integral);
        }
        if (conv->parsed()) return cmd_convert(opt, conv_dir, conv_input);
        if (dual->parsed()) return cmd_dual(opt, dual_kind, dual_seq);
        if (rel->parsed())
            return cmd_relations(opt, rel_kind, rel_weight, rel_verify);
        if (poset->parsed()) return cmd_poset(opt, poset_seq, poset_dot);
        if (verify->parsed()) {
            if (vl1->parsed()) {
                auto u = parse_rational_list(l1_u);
                auto n = parse_long_list(l1_n);
                VerifyReport rep;
                if (l1_case == "I") {
                    rep = verify_lemma1_case1(u, n);
                } else {
                    std::vector<double> ud;
                    for (auto& q : u) ud.push_back(q.get_d());
                    rep = verify_lemma1_case23(
                        l1_case == "II" ? Lemma1Case::II : Lemma1Case::III, ud,
                        n, opt.cfg.n, opt.cfg.quad_tol);
                }
                print_report(opt, rep);
                return rep.pass ? 0 : 1;
            }
            if (vr2->parsed()) {
                Relation2Append a = Relation2Append::PlusOne;
                if (r2_append == "open1") a = Relation2Append::Open1;
                else if (r2_append == "up1") a = Relation2Append::Up1;
                else if (r2_append == "down1") a = Relation2Append::Down1;
                else if (r2_append == "close1") a = Relation2Append::Close1;
                std::vector<double> ud;
                for (auto& q : parse_rational_list(r2_u)) ud.push_back(q.get_d());
                VerifyReport rep = verify_relation2(
                    parse_sequence(r2_base), a, ud, opt.cfg.n, opt.cfg.quad_tol,
                    SeriesCaps{opt.cfg.caps.loop_budget});
                print_report(opt, rep);
                return rep.pass ? 0 : 1;
            }
            if (vm2->parsed()) return cmd_verify_main2(opt, m2_weight);
            if (vdu->parsed()) return cmd_verify_duality(opt, vd_kind, vd_weight);
            if (vmc->parsed()) return cmd_verify_mc(opt, mc_seq);
        }
        throw parse_error("no subcommand given");
    } catch (const parse_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const admissibility_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    } catch (const cap_exceeded& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 4;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
