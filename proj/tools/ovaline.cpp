// ovaline: exact verification and search for hyperovals in PG(2, 2^m),
// working with g-function tables, coefficient vectors, rho-polynomials,
// o-polynomial graphs and raw point sets.
//
// Exit codes for `verify`: 0 hyperoval, 1 not a hyperoval, 2 invalid input,
// 3 internal defect (verifiers disagreeing). Other subcommands use 0/2/3.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "json.hpp"
#include "ovaline/criteria.hpp"
#include "ovaline/fixtures.hpp"
#include "ovaline/gpoly.hpp"
#include "ovaline/gram.hpp"
#include "ovaline/search.hpp"
#include "ovaline/serial.hpp"

using namespace ovaline;

namespace {

struct FieldFlags {
    std::optional<unsigned> m;
    std::string fpoly_hex;
    std::string delta_hex;

    FieldSpec spec() const {
        FieldSpec s;
        s.m = m;
        if (!fpoly_hex.empty()) s.f_poly = parse_hex(fpoly_hex);
        if (!delta_hex.empty()) s.delta = parse_hex(delta_hex);
        return s;
    }
};

json load_json(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open " + path);
    json j;
    in >> j;
    return j;
}

void emit(const std::string& out_path, const std::string& text) {
    if (out_path.empty()) {
        std::cout << text;
        if (!text.empty() && text.back() != '\n') std::cout << '\n';
    } else {
        std::ofstream out(out_path, std::ios::trunc);
        if (!out) throw std::invalid_argument("cannot write " + out_path);
        out << text;
        if (!text.empty() && text.back() != '\n') out << '\n';
    }
}

FieldCtx context_for(const json& input, const FieldFlags& flags) {
    FieldSpec spec;
    if (input.contains("field")) spec = field_spec_from_json(input.at("field"));
    spec.merge_from(flags.spec());
    return make_ctx(spec);
}

// Uniform view of any input: always a point set, plus the value table when
// the input determines one directly.
struct LoadedInput {
    std::optional<GFunctionTable> table;
    std::optional<PointSet> points;
};

LoadedInput realize(const FieldCtx& ctx, const InputPayload& payload) {
    LoadedInput li;
    if (const auto* t = std::get_if<GFunctionTable>(&payload)) {
        li.table = *t;
    } else if (const auto* g = std::get_if<GCoeffs>(&payload)) {
        li.table = g_coeffs_to_table(ctx, *g);
    } else if (const auto* r = std::get_if<RhoValues>(&payload)) {
        GFunctionTable t;
        for (const FElem& v : r->v) {
            if (v == F_ZERO) throw std::invalid_argument("rho values must be nonzero (g = 1/rho)");
            t.values.push_back(ctx.f_inv(v));
        }
        li.table = std::move(t);
    } else if (const auto* p = std::get_if<PointSet>(&payload)) {
        li.points = *p;
    } else if (const auto* h = std::get_if<std::vector<ProjPointH>>(&payload)) {
        li.points = points_h_to_k(ctx, *h);
    } else {
        const auto& o = std::get<OPolyCoeffs>(payload);
        li.points = points_h_to_k(ctx, opoly_points(ctx, o.c));
    }
    if (!li.points) li.points = points_from_g(ctx, *li.table);
    return li;
}

int cmd_dset(std::uint32_t q, const std::string& format, const std::string& out_path) {
    const ExponentSets es = compute_exponent_sets(q);
    if (format == "csv") {
        emit(out_path, dset_csv(es));
    } else if (format == "json") {
        emit(out_path, dset_json(es).dump(2));
    } else if (format == "latex") {
        emit(out_path, dset_latex(es));
    } else {
        throw std::invalid_argument("unknown format: " + format);
    }
    return 0;
}

int cmd_verify(const std::string& input_path, const std::string& method, const FieldFlags& flags) {
    const json j = load_json(input_path);
    const FieldCtx ctx = context_for(j, flags);
    const LoadedInput li = realize(ctx, input_from_json(ctx, j));

    if (method == "all") {
        VerifyOutcome out;
        if (li.table) {
            out.report = verify_all(ctx, *li.table, VerifyOptions{true});
        } else {
            out = verify_point_set(ctx, *li.points, VerifyOptions{true});
        }
        std::cout << outcome_to_json(ctx, out).dump(2) << "\n";
        if (!out.report.unanimous) return 3;
        return out.report.verdict ? 0 : 1;
    }

    if (method == "geometric") {
        const CriterionReport r = check_geometric(ctx, *li.points);
        std::cout << report_to_json(ctx, r).dump(2) << "\n";
        return r.verdict ? 0 : 1;
    }

    // the remaining methods need the nonvanishing g-form
    GFunctionTable table;
    if (li.table) {
        table = *li.table;
    } else {
        PointSet working = *li.points;
        if (!contains_zero(working)) {
            std::optional<KElem> shift;
            for (const ProjPointK& p : working.pts)
                if (!p.infinite && (!shift || ctx.k_encode(p.z) < ctx.k_encode(*shift))) shift = p.z;
            if (!shift) throw std::invalid_argument("point set has no affine point");
            working = translate(ctx, working, *shift);
        }
        const ExtractResult er = extract_g(ctx, working);
        if (!er.ok()) {
            Method label = Method::power_sum_d;
            if (method == "evensol") label = Method::even_solution;
            else if (method == "coeff") label = Method::coeff;
            else if (method == "gram") label = Method::gram;
            else if (method == "bracket") label = Method::bracket_power_sum;
            const CriterionReport r{label, false, Witness{*er.collision}};
            std::cout << report_to_json(ctx, r).dump(2) << "\n";
            return 1;
        }
        table = *er.table;
    }
    const NormalizeResult norm = normalize_g(ctx, table);
    if (!norm.found) {
        CriterionReport r{Method::even_solution, false,
                          Witness{WitnessMessage{"no normalizer: all affine points collinear"}}};
        std::cout << report_to_json(ctx, r).dump(2) << "\n";
        return 1;
    }

    CriterionReport r;
    if (method == "powersum") {
        r = check_power_sum(ctx, points_from_g(ctx, norm.table));
    } else if (method == "evensol") {
        r = check_even_solution(ctx, norm.table);
    } else if (method == "coeff") {
        r = check_coeff_criterion(ctx, g_table_to_coeffs(ctx, norm.table));
    } else if (method == "gram") {
        r = check_gram_criterion(ctx, points_from_g(ctx, norm.table));
    } else if (method == "bracket") {
        r = check_bracket_power_sum(ctx, norm.table);
    } else {
        throw std::invalid_argument("unknown method: " + method);
    }
    std::cout << report_to_json(ctx, r).dump(2) << "\n";
    return r.verdict ? 0 : 1;
}

int cmd_convert(const std::string& input_path, const std::string& target,
                const std::string& translate_hex, const std::string& out_path,
                const FieldFlags& flags) {
    const json j = load_json(input_path);
    const FieldCtx ctx = context_for(j, flags);
    const InputPayload payload = input_from_json(ctx, j);
    LoadedInput li = realize(ctx, payload);

    if (!translate_hex.empty()) {
        const auto comma = translate_hex.find(',');
        if (comma == std::string::npos)
            throw std::invalid_argument("--translate-first wants \"0x<re>,0x<im>\"");
        const KElem b{FElem{parse_hex(translate_hex.substr(0, comma))},
                      FElem{parse_hex(translate_hex.substr(comma + 1))}};
        li.points = translate(ctx, *li.points, b);
        li.table.reset();
    }

    auto require_table = [&]() -> GFunctionTable {
        if (li.table) return *li.table;
        if (!contains_zero(*li.points)) {
            std::optional<KElem> hint;
            for (const ProjPointK& p : li.points->pts)
                if (!p.infinite && (!hint || ctx.k_encode(p.z) < ctx.k_encode(*hint))) hint = p.z;
            std::string msg = "0 is not in the set";
            if (hint)
                msg += "; try --translate-first " + to_hex(hint->re.bits) + "," + to_hex(hint->im.bits);
            throw std::invalid_argument(msg);
        }
        const ExtractResult er = extract_g(ctx, *li.points);
        if (!er.ok()) {
            throw std::invalid_argument(
                "direction collision: two points on one line through 0 (not a {u/g(u)} set); "
                "witness direction " + to_hex(ctx.k_encode(er.collision->direction)));
        }
        return *er.table;
    };

    json out;
    if (target == "g") {
        out = table_to_json(ctx, require_table());
    } else if (target == "g-coeffs") {
        out = gcoeffs_to_json(ctx, g_table_to_coeffs(ctx, require_table()));
    } else if (target == "rho") {
        const GFunctionTable t = require_table();
        RhoValues r;
        for (const FElem& v : t.values) {
            if (v == F_ZERO)
                throw std::invalid_argument("g vanishes somewhere; rho = 1/g undefined (normalize first)");
            r.v.push_back(ctx.f_inv(v));
        }
        out = input_to_json(ctx, r);
    } else if (target == "points") {
        out = points_to_json(ctx, *li.points);
    } else if (target == "opoly-frame-points") {
        std::vector<ProjPointH> hs;
        for (const ProjPointK& p : li.points->pts) hs.push_back(k_to_homog(ctx, p));
        out = json{{"type", "points_h"}, {"field", field_to_json(ctx)}, {"points", points_h_to_json(hs)}};
    } else {
        throw std::invalid_argument("unknown conversion target: " + target);
    }
    emit(out_path, out.dump(2));
    return 0;
}

int cmd_search(const std::string& config_path, std::optional<std::uint32_t> threads,
               std::optional<std::uint64_t> seed, const std::string& checkpoint,
               const std::string& out_path, const FieldFlags& flags) {
    const json j = load_json(config_path);
    FieldSpec spec;
    if (j.contains("field")) spec = field_spec_from_json(j.at("field"));
    spec.merge_from(flags.spec());
    if (!spec.m) {
        // derive m from the configured q
        const std::uint32_t q = j.at("q").get<std::uint32_t>();
        unsigned m = 0;
        for (std::uint32_t v = q; v > 1; v >>= 1) ++m;
        spec.m = m;
    }
    const FieldCtx ctx = make_ctx(spec);
    SearchConfig cfg = search_config_from_json(ctx, j);
    if (threads) cfg.threads = *threads;
    if (seed) cfg.seed = *seed;
    const SearchOutcome out = run_search(ctx, cfg, checkpoint);
    emit(out_path, search_outcome_to_json(ctx, cfg, out).dump(2));
    return 0;
}

int cmd_gram(const std::string& input_path, const FieldFlags& flags) {
    const json j = load_json(input_path);
    const FieldCtx ctx = context_for(j, flags);
    const LoadedInput li = realize(ctx, input_from_json(ctx, j));

    const VerifyOutcome out = li.table ? VerifyOutcome{verify_all(ctx, *li.table), {}, {}}
                                       : verify_point_set(ctx, *li.points);
    if (!out.report.verdict) {
        std::cout << outcome_to_json(ctx, out).dump(2) << "\n";
        std::cerr << "not a hyperoval; no spectrum to report\n";
        return 1;
    }
    // rebuild the all-affine normalized set the verifiers used
    GFunctionTable table;
    if (li.table) {
        table = *li.table;
    } else {
        PointSet working = *li.points;
        if (out.translated_by) working = translate(ctx, working, *out.translated_by);
        table = *extract_g(ctx, working).table;
    }
    const NormalizeResult norm = normalize_g(ctx, table);
    const SpectrumReport rep = gram_spectrum_report(ctx, points_from_g(ctx, norm.table));
    std::cout << spectrum_to_json(rep).dump(2) << "\n";
    return 0;
}

int cmd_fixtures(bool list, bool check) {
    std::vector<Fixture> all = builtin_fixtures();
    if (const char* dir = std::getenv("OVALINE_FIXTURES")) {
        for (Fixture& f : fixtures_from_directory(dir)) all.push_back(std::move(f));
    }
    if (list) {
        for (const Fixture& f : all) {
            std::cout << f.name << "  q=" << f.q << "  source=\"" << f.source << "\"  expected="
                      << (f.expected_verdict ? "hyperoval" : "not-hyperoval") << "\n";
        }
        return 0;
    }
    if (check) {
        bool all_ok = true;
        for (const Fixture& f : all) {
            const FixtureCheck r = check_fixture(f);
            std::cout << (r.ok ? "ok      " : "MISMATCH") << "  " << f.name << "  expected="
                      << r.expected << " actual=" << r.actual << "\n";
            all_ok = all_ok && r.ok;
        }
        return all_ok ? 0 : 1;
    }
    std::cerr << "fixtures: pass --list or --check\n";
    return 2;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact hyperoval verification and search in PG(2, 2^m)"};
    app.require_subcommand(1);
    app.fallthrough();

    FieldFlags flags;
    app.add_option("--m", flags.m, "field degree m (F = GF(2^m))");
    app.add_option("--fpoly", flags.fpoly_hex, "modulus polynomial, hex bit vector");
    app.add_option("--delta", flags.delta_hex, "trace-1 element defining i^2 = i + delta, hex");

    std::string out_path;
    app.add_option("-o,--output", out_path, "write output to a file instead of stdout");

    auto* dset = app.add_subcommand("dset", "emit the canonical power-sum exponent table");
    std::uint32_t dset_q = 0;
    std::string dset_format = "csv";
    dset->add_option("--q", dset_q, "field order (power of two, 4..4096)")->required();
    dset->add_option("--format", dset_format, "csv | json | latex");

    auto* verify = app.add_subcommand("verify", "run hyperoval verifiers on an input file");
    std::string verify_input, verify_method = "all";
    verify->add_option("input", verify_input, "JSON input")->required();
    verify->add_option("--method", verify_method,
                       "all | geometric | powersum | evensol | coeff | gram | bracket");

    auto* convert = app.add_subcommand("convert", "convert between representations");
    std::string convert_input, convert_to, convert_translate;
    convert->add_option("input", convert_input, "JSON input")->required();
    convert->add_option("--to", convert_to, "g | g-coeffs | rho | points | opoly-frame-points")
        ->required();
    convert->add_option("--translate-first", convert_translate,
                        "translate affine points by 0x<re>,0x<im> before converting");

    auto* search = app.add_subcommand("search", "pruned candidate search from a config file");
    std::string search_config, search_checkpoint;
    std::optional<std::uint32_t> search_threads;
    std::optional<std::uint64_t> search_seed;
    search->add_option("config", search_config, "search config JSON")->required();
    search->add_option("--threads", search_threads, "worker threads for shards");
    search->add_option("--seed", search_seed, "override the random-mode seed");
    search->add_option("--checkpoint", search_checkpoint, "checkpoint file for resumable shards");

    auto* gram = app.add_subcommand("gram", "Gram-matrix spectrum report for a hyperoval");
    std::string gram_input;
    gram->add_option("input", gram_input, "JSON input")->required();

    auto* fixtures = app.add_subcommand("fixtures", "list or re-verify the fixture corpus");
    bool fx_list = false, fx_check = false;
    fixtures->add_flag("--list", fx_list, "list fixtures");
    fixtures->add_flag("--check", fx_check, "re-verify fixtures against expected verdicts");

    CLI11_PARSE(app, argc, argv);

    try {
        if (*dset) return cmd_dset(dset_q, dset_format, out_path);
        if (*verify) return cmd_verify(verify_input, verify_method, flags);
        if (*convert) return cmd_convert(convert_input, convert_to, convert_translate, out_path, flags);
        if (*search)
            return cmd_search(search_config, search_threads, search_seed, search_checkpoint,
                              out_path, flags);
        if (*gram) return cmd_gram(gram_input, flags);
        if (*fixtures) return cmd_fixtures(fx_list, fx_check);
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::logic_error& e) {
        std::cerr << "defect: " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 2;
}
