#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "betaforge/errors.hpp"
#include "betaforge/paper_checks.hpp"
#include "betaforge/serialize.hpp"
#include "betaforge/treepair.hpp"

using namespace betaforge;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitFail = 1;
constexpr int kExitUsage = 2;
constexpr int kExitImpossible = 3;
constexpr int kExitInconclusive = 4;

unsigned long default_max_n() {
    if (const char* env = std::getenv("BETAFORGE_MAXN")) {
        try {
            return std::stoul(env);
        } catch (...) {
            throw parse_error(std::string("BETAFORGE_MAXN is not a number: ") + env);
        }
    }
    return kDefaultMaxIterations;
}

std::vector<BigInt> parse_int_list(const std::vector<std::string>& words) {
    std::vector<BigInt> out;
    for (const auto& w : words) {
        std::stringstream ss(w);
        std::string item;
        while (std::getline(ss, item, ','))
            if (!item.empty())
                out.push_back(parse_integer(item));
    }
    return out;
}

json read_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in)
        throw parse_error("cannot read " + path);
    json j;
    try {
        in >> j;
    } catch (const nlohmann::json::exception& e) {
        throw parse_error("invalid JSON in " + path + ": " + e.what());
    }
    return j;
}

void emit(const std::string& text, const std::string& out_path) {
    if (out_path.empty())
        std::cout << text;
    else
        write_file_atomic(out_path, text);
}

ContextPtr context_from_args(const std::vector<std::string>& coeff_args) {
    return BetaContext::create(parse_int_list(coeff_args));
}

int cmd_group(const std::vector<std::string>& coeff_args) {
    ContextPtr ctx = context_from_args(coeff_args);
    const auto& sub = ctx->subdivision();
    std::cout << "polynomial: " << sub.to_string() << "\n";
    std::cout << "valid subdivision polynomial (degree " << sub.degree() << ")\n";
    RootInterval iv = ctx->refine(ctx->root_interval(), make_rational(1, 100000000));
    std::cout << "root interval: (" << format_rational(iv.lo) << ", " << format_rational(iv.hi)
              << ")  ~ " << to_double(iv.midpoint()) << "\n";
    std::cout << "reciprocal relation: lambda";
    if (sub.degree() > 1)
        std::cout << "^" << sub.degree();
    std::cout << " =";
    bool first = true;
    const auto& rel = ctx->reciprocal_relation();
    for (size_t i = 0; i < rel.size(); ++i) {
        if (rel[i] == 0)
            continue;
        std::cout << (first ? " " : " + ");
        first = false;
        if (rel[i] != 1 || i + 1 == rel.size())
            std::cout << rel[i].get_str();
        size_t pow = rel.size() - 1 - i;
        if (pow >= 1) {
            if (rel[i] != 1)
                std::cout << "*";
            std::cout << "lambda";
            if (pow > 1)
                std::cout << "^" << pow;
        }
    }
    std::cout << "\n";
    try {
        BigInt count = caret_count(sub);
        std::cout << "caret shapes: " << count.get_str() << "\n";
        if (count <= 24) {
            for (const auto& shape : enumerate_carets(*ctx))
                std::cout << "  " << shape.to_string() << "\n";
        }
    } catch (const enumeration_cap_error&) {
        std::cout << "caret shapes: beyond counting range\n";
    }
    return kExitOk;
}

int cmd_carets(const std::vector<std::string>& coeff_args, size_t cap, const std::string& format) {
    ContextPtr ctx = context_from_args(coeff_args);
    auto shapes = enumerate_carets(*ctx, cap);
    if (format == "json") {
        json arr = json::array();
        for (const auto& s : shapes) {
            json legs = json::array();
            for (unsigned leg : s.legs)
                legs.push_back(std::to_string(leg));
            arr.push_back(legs);
        }
        std::cout << arr.dump(2) << "\n";
    } else {
        for (const auto& s : shapes)
            std::cout << s.to_string() << "\n";
    }
    return kExitOk;
}

int cmd_obstruct(const std::vector<std::string>& coeff_args,
                 const std::vector<std::string>& vec_args, unsigned long max_n,
                 const std::string& out_path) {
    ContextPtr ctx = context_from_args(coeff_args);
    CoeffVector p = parse_int_list(vec_args);
    Certificate cert = decide_nonneg(ctx, p, max_n);
    std::string text = certificate_to_json(ctx, p, cert).dump(2) + "\n";
    emit(text, out_path);
    switch (cert.kind) {
    case Certificate::Kind::witness:
        std::cerr << "witness at N = " << cert.witness_n << "\n";
        return kExitOk;
    case Certificate::Kind::impossible:
        std::cerr << "impossible: support cycle of period " << cert.cycle_length
                  << " from N = " << cert.cycle_start << "\n";
        return kExitImpossible;
    case Certificate::Kind::inconclusive:
        std::cerr << "inconclusive within N <= " << cert.bound << "\n";
        return kExitInconclusive;
    }
    return kExitUsage;
}

int cmd_verify_cert(const std::string& cert_path) {
    CertificateBundle b = certificate_from_json(read_json_file(cert_path));
    bool ok = verify_certificate(b.ctx, b.vector, b.cert);
    std::cout << (ok ? "certificate verified" : "certificate REJECTED") << "\n";
    return ok ? kExitOk : kExitFail;
}

int cmd_plmap_compose(const std::string& a, const std::string& b, const std::string& out) {
    PLMap f = plmap_from_json(read_json_file(a));
    PLMap g = plmap_from_json(read_json_file(b));
    emit(plmap_to_json(compose(f, g)).dump(2) + "\n", out);
    return kExitOk;
}

int cmd_plmap_invert(const std::string& a, const std::string& out) {
    PLMap f = plmap_from_json(read_json_file(a));
    emit(plmap_to_json(f.inverse()).dump(2) + "\n", out);
    return kExitOk;
}

int cmd_plmap_eval(const std::string& a, const std::string& at, const std::string& width) {
    PLMap f = plmap_from_json(read_json_file(a));
    FieldElem t = FieldElem::rational(f.ctx(), parse_rational(at));
    FieldElem v = f.eval(t);
    RootInterval enc = v.approx(parse_rational(width));
    std::cout << "value in [" << format_rational(enc.lo) << ", " << format_rational(enc.hi)
              << "]  ~ " << to_double(enc.midpoint()) << "\n";
    return kExitOk;
}

int cmd_plmap_validate(const std::string& a, const std::string& group, long window) {
    PLMap f = plmap_from_json(read_json_file(a));
    MembershipTarget target = group == "square-base" ? MembershipTarget::square_root_base
                                                     : MembershipTarget::own_group;
    MembershipReport rep = validate_membership(f, target, window);
    for (const auto& s : rep.slopes) {
        std::cout << "slope " << s.slope.to_string() << ": ";
        if (s.exponent)
            std::cout << "root^" << *s.exponent;
        else
            std::cout << "not a power of the root";
        std::cout << (s.ok ? "" : "  [REJECTED]") << "\n";
    }
    for (const auto& b : rep.breakpoints)
        std::cout << "breakpoint " << b.point.to_string() << (b.ok ? ": ok" : ": NOT in subring")
                  << "\n";
    std::cout << "verdict: " << (rep.verdict ? "member" : "not a member") << "\n";
    return rep.verdict ? kExitOk : kExitFail;
}

int cmd_treepair_compose(const std::string& a, const std::string& b, size_t budget,
                         const std::string& out) {
    TreePair ta = treepair_from_json(read_json_file(a));
    TreePair tb = treepair_from_json(read_json_file(b));
    emit(treepair_to_json(compose_pairs(ta, tb, budget)).dump(2) + "\n", out);
    return kExitOk;
}

int cmd_treepair_reduce(const std::string& a, const std::string& out) {
    TreePair tp = treepair_from_json(read_json_file(a));
    emit(treepair_to_json(reduce(tp)).dump(2) + "\n", out);
    return kExitOk;
}

int cmd_treepair_equiv(const std::string& a, const std::string& b) {
    TreePair ta = treepair_from_json(read_json_file(a));
    TreePair tb = treepair_from_json(read_json_file(b));
    bool eq = equivalent(ta, tb);
    std::cout << (eq ? "equivalent" : "not equivalent") << "\n";
    return eq ? kExitOk : kExitFail;
}

int cmd_treepair_render(const std::string& a, const std::string& format,
                        const std::string& out) {
    TreePair tp = treepair_from_json(read_json_file(a));
    if (format == "json") {
        emit(treepair_to_json(tp).dump(2) + "\n", out);
    } else if (format == "text") {
        std::ostringstream text;
        auto depths = [](const Tree& t) {
            std::string s;
            for (unsigned d : leaf_depths(t))
                s += (s.empty() ? "" : ",") + std::to_string(d);
            return s;
        };
        text << "left leaf depths:  " << depths(tp.left) << "\n";
        text << "right leaf depths: " << depths(tp.right) << "\n";
        emit(text.str(), out);
    } else {
        emit(treepair_to_dot(tp), out);
    }
    return kExitOk;
}

int cmd_presentation(const std::string& a, const std::string& b, unsigned max_index,
                     const std::string& format, const std::string& out) {
    std::vector<Relation> rels = emit_presentation(parse_integer(a), parse_integer(b), max_index);
    std::ostringstream text;
    if (format == "json") {
        json arr = json::array();
        for (const auto& r : rels)
            arr.push_back(r.to_string());
        text << arr.dump(2) << "\n";
    } else {
        for (const auto& r : rels)
            text << r.to_string() << "\n";
    }
    emit(text.str(), out);
    return kExitOk;
}

int cmd_counterexample(const std::string& a, const std::string& b, const std::string& domain,
                       const std::string& codomain, const std::string& out) {
    BigInt ai = parse_integer(a), bi = parse_integer(b);
    PLMap f = [&] {
        if (domain.empty() && codomain.empty())
            return counterexample_map(ai, bi);
        CellArrangement arr;
        auto parse_cells = [](const std::string& text) {
            std::vector<int> cells;
            std::stringstream ss(text);
            std::string item;
            while (std::getline(ss, item, ','))
                if (!item.empty())
                    cells.push_back(std::stoi(item));
            return cells;
        };
        arr.domain = parse_cells(domain);
        arr.codomain = parse_cells(codomain);
        return counterexample_map(ai, bi, arr);
    }();
    emit(plmap_to_json(f).dump(2) + "\n", out);
    return kExitOk;
}

int cmd_verify_paper(unsigned long max_n, bool corrupt) {
    paper::CheckOptions opts;
    opts.max_n = max_n;
    opts.corrupt_matrix = corrupt;
    auto results = paper::run_paper_checks(opts);
    size_t passed = 0;
    for (const auto& r : results) {
        std::cout << (r.pass ? "PASS" : "FAIL") << "  " << r.id << "  " << r.name;
        if (!r.pass)
            std::cout << "  -- " << r.detail;
        std::cout << "\n";
        passed += r.pass;
    }
    std::cout << passed << "/" << results.size() << " checks passed\n";
    return paper::all_passed(results) ? kExitOk : kExitFail;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact arithmetic for algebraic Bieri-Strebel groups: subdivision "
                 "polynomials, tree pairs, PL maps and representability certificates"};
    app.require_subcommand(1);

    // group
    std::vector<std::string> group_coeffs;
    auto* group = app.add_subcommand("group", "validate a subdivision polynomial and report "
                                              "root, reciprocal relation and carets");
    group->add_option("coeffs", group_coeffs, "coefficients a_1 a_2 ... of sum a_i x^i - 1")
        ->required();

    // carets
    std::vector<std::string> caret_coeffs;
    size_t caret_cap = kDefaultCaretCap;
    std::string caret_format = "text";
    auto* carets = app.add_subcommand("carets", "enumerate caret shapes");
    carets->add_option("coeffs", caret_coeffs)->required();
    carets->add_option("--cap", caret_cap, "enumeration cap");
    carets->add_option("--format", caret_format)->check(CLI::IsMember({"text", "json"}));

    // obstruct
    std::vector<std::string> ob_coeffs, ob_vec;
    std::string ob_out;
    unsigned long ob_maxn = 0;
    auto* obstruct = app.add_subcommand(
        "obstruct", "decide nonnegative representability of a coefficient vector");
    obstruct->add_option("coeffs", ob_coeffs)->required();
    obstruct->add_option("--vec", ob_vec, "vector entries, descending powers of lambda")
        ->required();
    obstruct->add_option("--maxn", ob_maxn, "iteration bound (default 256 or BETAFORGE_MAXN)");
    obstruct->add_option("--out", ob_out, "write the certificate JSON here");

    // verify-cert
    std::string vc_path;
    auto* verify_cert = app.add_subcommand("verify-cert", "re-check a serialized certificate");
    verify_cert->add_option("certificate", vc_path)->required();

    // plmap
    auto* plmap = app.add_subcommand("plmap", "piecewise-linear map operations");
    plmap->require_subcommand(1);
    std::string pm_a, pm_b, pm_out, pm_at, pm_width = "1/1000000", pm_group = "own";
    long pm_window = kDefaultExponentWindow;
    auto* pm_compose = plmap->add_subcommand("compose", "compose two maps, left then right");
    pm_compose->add_option("first", pm_a)->required();
    pm_compose->add_option("second", pm_b)->required();
    pm_compose->add_option("--out", pm_out);
    auto* pm_invert = plmap->add_subcommand("invert", "invert a map");
    pm_invert->add_option("map", pm_a)->required();
    pm_invert->add_option("--out", pm_out);
    auto* pm_eval = plmap->add_subcommand("eval", "evaluate at a rational point");
    pm_eval->add_option("map", pm_a)->required();
    pm_eval->add_option("--at", pm_at, "rational evaluation point")->required();
    pm_eval->add_option("--width", pm_width, "enclosure width (rational)");
    auto* pm_validate = plmap->add_subcommand("validate", "test group membership");
    pm_validate->add_option("map", pm_a)->required();
    pm_validate->add_option("--group", pm_group, "own or square-base")
        ->check(CLI::IsMember({"own", "square-base"}));
    pm_validate->add_option("--window", pm_window, "slope exponent search window");

    // treepair
    auto* treepair = app.add_subcommand("treepair", "tree-pair diagram operations");
    treepair->require_subcommand(1);
    std::string tp_a, tp_b, tp_out, tp_format = "dot";
    size_t tp_budget = kDefaultRefinementBudget;
    auto* tp_compose = treepair->add_subcommand("compose", "compose two pairs");
    tp_compose->add_option("first", tp_a)->required();
    tp_compose->add_option("second", tp_b)->required();
    tp_compose->add_option("--budget", tp_budget, "caret insertion budget");
    tp_compose->add_option("--out", tp_out);
    auto* tp_reduce = treepair->add_subcommand("reduce", "remove redundant caret pairs");
    tp_reduce->add_option("pair", tp_a)->required();
    tp_reduce->add_option("--out", tp_out);
    auto* tp_equiv = treepair->add_subcommand("equiv", "decide equivalence of two pairs");
    tp_equiv->add_option("first", tp_a)->required();
    tp_equiv->add_option("second", tp_b)->required();
    auto* tp_render = treepair->add_subcommand("render", "render a pair");
    tp_render->add_option("pair", tp_a)->required();
    tp_render->add_option("--format", tp_format)->check(CLI::IsMember({"dot", "json", "text"}));
    tp_render->add_option("--out", tp_out);

    // presentation
    std::string pr_a, pr_b, pr_out, pr_format = "text";
    unsigned pr_max = 3;
    auto* presentation =
        app.add_subcommand("presentation", "emit R1/R2 relations for ax^2+bx-1 with a <= b");
    presentation->add_option("a", pr_a)->required();
    presentation->add_option("b", pr_b)->required();
    presentation->add_option("max_index", pr_max)->required();
    presentation->add_option("--format", pr_format)->check(CLI::IsMember({"text", "json"}));
    presentation->add_option("--out", pr_out);

    // counterexample
    std::string ce_a, ce_b, ce_domain, ce_codomain, ce_out;
    auto* counterexample = app.add_subcommand(
        "counterexample", "build the sqrt-breakpoint map for ax^2+bx-1 in its sqrt context");
    counterexample->add_option("a", ce_a)->required();
    counterexample->add_option("b", ce_b)->required();
    counterexample->add_option("--domain", ce_domain, "cells, e.g. 3,5,0 (0 = tail cell)");
    counterexample->add_option("--codomain", ce_codomain);
    counterexample->add_option("--out", ce_out);

    // verify-paper
    unsigned long vp_maxn = 0;
    bool vp_corrupt = false;
    auto* verify_paper =
        app.add_subcommand("verify-paper", "run the full verification battery");
    verify_paper->add_option("--maxn", vp_maxn, "iteration bound for the certificate checks");
    verify_paper
        ->add_flag("--self-test-corrupt-matrix", vp_corrupt,
                   "deliberately corrupt a matrix constant to prove the suite can fail")
        ->group(""); // hidden

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? kExitOk : kExitUsage;
    }

    try {
        if (*group)
            return cmd_group(group_coeffs);
        if (*carets)
            return cmd_carets(caret_coeffs, caret_cap, caret_format);
        if (*obstruct)
            return cmd_obstruct(ob_coeffs, ob_vec, ob_maxn ? ob_maxn : default_max_n(), ob_out);
        if (*verify_cert)
            return cmd_verify_cert(vc_path);
        if (*plmap) {
            if (*pm_compose)
                return cmd_plmap_compose(pm_a, pm_b, pm_out);
            if (*pm_invert)
                return cmd_plmap_invert(pm_a, pm_out);
            if (*pm_eval)
                return cmd_plmap_eval(pm_a, pm_at, pm_width);
            if (*pm_validate)
                return cmd_plmap_validate(pm_a, pm_group, pm_window);
        }
        if (*treepair) {
            if (*tp_compose)
                return cmd_treepair_compose(tp_a, tp_b, tp_budget, tp_out);
            if (*tp_reduce)
                return cmd_treepair_reduce(tp_a, tp_out);
            if (*tp_equiv)
                return cmd_treepair_equiv(tp_a, tp_b);
            if (*tp_render)
                return cmd_treepair_render(tp_a, tp_format, tp_out);
        }
        if (*presentation)
            return cmd_presentation(pr_a, pr_b, pr_max, pr_format, pr_out);
        if (*counterexample)
            return cmd_counterexample(ce_a, ce_b, ce_domain, ce_codomain, ce_out);
        if (*verify_paper)
            return cmd_verify_paper(vp_maxn ? vp_maxn : default_max_n(), vp_corrupt);
    } catch (const not_tree_pair_definable_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    }
    return kExitUsage;
}
